#include "cavdw/io.hpp"

#include "cavdw/error.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <initializer_list>
#include <sstream>

namespace cavdw::io {

using nlohmann::json;
using experiments::GeneratorKind;
using experiments::GeneratorSpec;
using experiments::GridScale;
using experiments::ScanKind;
using experiments::ScanSpec;
using experiments::SlabKernel;

namespace {

[[noreturn]] void parse_fail(const std::string& path, const std::string& msg) {
  throw Error(ErrorKind::ParseError, path.empty() ? "<root>" : path, msg);
}

std::string join(const std::string& path, std::string_view key) {
  return path.empty() ? std::string(key) : path + "." + std::string(key);
}

// Typed, path-tracking view over one JSON object.
class Node {
 public:
  Node(const json& j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j_.is_object()) parse_fail(path_, "expected an object");
  }

  const std::string& path() const { return path_; }
  bool has(std::string_view key) const { return j_.contains(std::string(key)); }

  void allow_only(std::initializer_list<std::string_view> keys) const {
    for (const auto& [key, value] : j_.items()) {
      bool known = false;
      for (auto k : keys) known = known || (k == key);
      if (!known) parse_fail(join(path_, key), "unknown key");
    }
  }

  const json& raw(std::string_view key) const {
    if (!has(key)) parse_fail(join(path_, key), "missing required key");
    return j_.at(std::string(key));
  }

  Node object(std::string_view key) const { return Node(raw(key), join(path_, key)); }

  double number(std::string_view key) const {
    const json& v = raw(key);
    if (!v.is_number()) parse_fail(join(path_, key), "expected a number");
    return v.get<double>();
  }
  double number(std::string_view key, double fallback) const {
    return has(key) ? number(key) : fallback;
  }

  long long integer(std::string_view key) const {
    const json& v = raw(key);
    if (!v.is_number_integer()) parse_fail(join(path_, key), "expected an integer");
    return v.get<long long>();
  }
  long long integer(std::string_view key, long long fallback) const {
    return has(key) ? integer(key) : fallback;
  }

  std::uint64_t unsigned_integer(std::string_view key, std::uint64_t fallback) const {
    if (!has(key)) return fallback;
    const json& v = raw(key);
    if (v.is_number_unsigned()) return v.get<std::uint64_t>();
    if (v.is_number_integer() && v.get<long long>() >= 0) return static_cast<std::uint64_t>(v.get<long long>());
    parse_fail(join(path_, key), "expected a non-negative integer");
  }

  bool boolean(std::string_view key, bool fallback) const {
    if (!has(key)) return fallback;
    const json& v = raw(key);
    if (!v.is_boolean()) parse_fail(join(path_, key), "expected true or false");
    return v.get<bool>();
  }

  std::string string(std::string_view key) const {
    const json& v = raw(key);
    if (!v.is_string()) parse_fail(join(path_, key), "expected a string");
    return v.get<std::string>();
  }
  std::string string(std::string_view key, std::string fallback) const {
    return has(key) ? string(key) : fallback;
  }

  Vec3 vec3(std::string_view key) const {
    const json& v = raw(key);
    if (!v.is_array() || v.size() != 3) parse_fail(join(path_, key), "expected [x, y, z]");
    Vec3 out;
    for (int i = 0; i < 3; ++i) {
      if (!v[static_cast<std::size_t>(i)].is_number()) parse_fail(join(path_, key), "expected numbers");
      out(i) = v[static_cast<std::size_t>(i)].get<double>();
    }
    return out;
  }
  Vec3 vec3(std::string_view key, const Vec3& fallback) const { return has(key) ? vec3(key) : fallback; }

 private:
  const json& j_;
  std::string path_;
};

int checked_int(long long v, const std::string& path) {
  if (v < std::numeric_limits<int>::min() || v > std::numeric_limits<int>::max()) {
    parse_fail(path, "integer out of range");
  }
  return static_cast<int>(v);
}

geometry::MoleculeTemplate parse_template(const Node& n) {
  n.allow_only({"orientation", "mu", "omega_m"});
  geometry::MoleculeTemplate t;
  t.orientation = n.vec3("orientation", Vec3::UnitZ());
  t.mu = n.number("mu");
  t.omega_m = n.number("omega_m");
  return t;
}

Molecule parse_molecule(const Node& n) {
  n.allow_only({"position", "orientation", "mu", "omega_m"});
  Molecule m;
  m.position = n.vec3("position");
  m.orientation = n.vec3("orientation", Vec3::UnitZ());
  m.mu = n.number("mu");
  m.omega_m = n.number("omega_m");
  return m;
}

GeneratorSpec parse_ensemble(const Node& n) {
  GeneratorSpec g;
  const std::string kind = n.string("generator");
  const std::string p = n.path();
  if (kind == "explicit") {
    n.allow_only({"generator", "molecules"});
    g.kind = GeneratorKind::Explicit;
    const json& list = n.raw("molecules");
    if (!list.is_array()) parse_fail(join(p, "molecules"), "expected an array");
    for (std::size_t i = 0; i < list.size(); ++i) {
      g.molecules.push_back(parse_molecule(Node(list[i], join(p, "molecules") + "[" + std::to_string(i) + "]")));
    }
  } else if (kind == "chain") {
    n.allow_only({"generator", "n", "spacing", "molecule"});
    g.kind = GeneratorKind::Chain;
    g.n = checked_int(n.integer("n"), join(p, "n"));
    g.spacing = n.number("spacing");
    g.molecule = parse_template(n.object("molecule"));
  } else if (kind == "random_gas") {
    n.allow_only({"generator", "n", "box_side", "min_separation", "molecule"});
    g.kind = GeneratorKind::RandomGas;
    g.n = checked_int(n.integer("n"), join(p, "n"));
    g.box_side = n.number("box_side");
    if (n.has("min_separation")) g.min_separation = n.number("min_separation");
    g.molecule = parse_template(n.object("molecule"));
  } else if (kind == "slab") {
    n.allow_only({"generator", "lattice_constant", "half_width", "z0", "molecule"});
    g.kind = GeneratorKind::Slab;
    g.slab.lattice_constant = n.number("lattice_constant");
    g.slab.half_width = checked_int(n.integer("half_width"), join(p, "half_width"));
    g.slab.z0 = n.number("z0");
    g.molecule = parse_template(n.object("molecule"));
  } else {
    parse_fail(join(p, "generator"), "unknown generator '" + kind + "'");
  }
  return g;
}

ScanSpec parse_scan(const Node& n) {
  ScanSpec s;
  const std::string kind = n.string("kind");
  const auto k = experiments::scan_kind_from_string(kind);
  if (!k) parse_fail(join(n.path(), "kind"), "unknown scan kind '" + kind + "'");
  s.kind = *k;
  switch (s.kind) {
    case ScanKind::Density:
      n.allow_only({"kind", "start", "stop", "points", "scale", "oracle", "include_i_equals_k", "threads", "prefactor_c"});
      break;
    case ScanKind::Slab:
      n.allow_only({"kind", "start", "stop", "points", "scale", "oracle", "include_i_equals_k", "threads", "kernel",
                    "tail_correction"});
      break;
    case ScanKind::Alignment:
      n.allow_only({"kind", "start", "stop", "points", "scale", "oracle", "include_i_equals_k", "threads",
                    "rotate_positions", "rotation_axis"});
      break;
    case ScanKind::Detuning:
    case ScanKind::Validate:
      n.allow_only({"kind", "start", "stop", "points", "scale", "oracle", "include_i_equals_k", "threads"});
      break;
  }
  s.grid.start = n.number("start");
  s.grid.stop = n.number("stop");
  s.grid.points = checked_int(n.integer("points"), join(n.path(), "points"));
  const std::string scale = n.string("scale", "linear");
  if (scale == "linear") {
    s.grid.scale = GridScale::Linear;
  } else if (scale == "log") {
    s.grid.scale = GridScale::Log;
  } else {
    parse_fail(join(n.path(), "scale"), "expected \"linear\" or \"log\"");
  }
  s.oracle_enabled = n.boolean("oracle", false);
  s.convention.include_i_equals_k = n.boolean("include_i_equals_k", false);
  s.threads = checked_int(n.integer("threads", 0), join(n.path(), "threads"));
  s.prefactor_c = n.number("prefactor_c", 0.25);
  const std::string kernel = n.string("kernel", "scalar");
  if (kernel == "scalar") {
    s.slab_kernel = SlabKernel::Scalar;
  } else if (kernel == "projected") {
    s.slab_kernel = SlabKernel::Projected;
  } else {
    parse_fail(join(n.path(), "kernel"), "expected \"scalar\" or \"projected\"");
  }
  s.tail_correction = n.boolean("tail_correction", true);
  s.rotate_positions = n.boolean("rotate_positions", false);
  s.rotation_axis = n.vec3("rotation_axis", Vec3::UnitY());
  return s;
}

// Copies the shared ensemble recipe, seed and tolerances into the scan.
void sync_scan(RunConfig& c) {
  c.ensemble.seed = c.seed;
  if (!c.scan) return;
  c.scan->base = c.ensemble;
  c.scan->pole_epsilon = c.tolerances.pole_epsilon;
  c.scan->solver.tolerance = c.tolerances.ed_tolerance;
  c.scan->solver.max_dimension = c.tolerances.max_dimension;
}

std::string validation_field(const std::string& field) {
  if (field.rfind("cavity.", 0) == 0 || field.rfind("scan.", 0) == 0 || field == "polarization_axis") {
    return field;
  }
  for (std::string_view prefix : {"chain.", "random_gas.", "slab."}) {
    if (field.rfind(prefix, 0) == 0) return "ensemble." + field.substr(prefix.size());
  }
  return field.empty() ? "ensemble" : "ensemble." + field;
}

void validate_config(const RunConfig& c) {
  auto fail = [](const std::string& field, const std::string& msg) {
    throw Error(ErrorKind::ValidationError, field, msg);
  };
  if (!(c.tolerances.pole_epsilon > 0.0 && c.tolerances.pole_epsilon < 1.0)) {
    fail("tolerances.pole_epsilon", "must lie in (0, 1)");
  }
  if (!(c.tolerances.ed_tolerance > 0.0)) fail("tolerances.ed_tolerance", "must be > 0");
  if (c.tolerances.max_dimension < 2) fail("tolerances.max_dimension", "must be >= 2");
  try {
    c.ensemble.build();
  } catch (const Error& e) {
    fail(validation_field(e.field()), e.what());
  }
  if (c.scan) {
    try {
      c.scan->grid.values();
    } catch (const Error& e) {
      fail(e.field().empty() ? "scan" : e.field(), e.what());
    }
    if (c.scan->kind == ScanKind::Slab && c.ensemble.kind != GeneratorKind::Slab) {
      fail("scan.kind", "a slab scan needs ensemble.generator = \"slab\"");
    }
    if (c.scan->threads < 0) fail("scan.threads", "must be >= 0");
    if (std::abs(c.scan->rotation_axis.norm() - 1.0) > kOrientationTolerance) {
      fail("scan.rotation_axis", "must be a unit vector");
    }
  }
}

}  // namespace

RunConfig parse_config(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    parse_fail("<root>", e.what());
  }
  const Node root(doc, "");
  root.allow_only({"cavity", "polarization_axis", "ensemble", "scan", "seed", "output", "tolerances"});

  RunConfig c;
  const Node cav = root.object("cavity");
  cav.allow_only({"omega_c", "g0", "photon_cutoff"});
  c.ensemble = parse_ensemble(root.object("ensemble"));
  c.ensemble.cavity.omega_c = cav.number("omega_c");
  c.ensemble.cavity.g0 = cav.number("g0");
  c.ensemble.cavity.photon_cutoff = checked_int(cav.integer("photon_cutoff", kDefaultPhotonCutoff), "cavity.photon_cutoff");
  c.ensemble.polarization_axis = root.vec3("polarization_axis", Vec3::UnitZ());

  if (root.has("scan")) c.scan = parse_scan(root.object("scan"));
  c.seed = root.unsigned_integer("seed", 0);
  c.output = root.string("output", "");
  if (root.has("tolerances")) {
    const Node tol = root.object("tolerances");
    tol.allow_only({"pole_epsilon", "ed_tolerance", "max_dimension"});
    c.tolerances.pole_epsilon = tol.number("pole_epsilon", kDefaultPoleEpsilon);
    c.tolerances.ed_tolerance = tol.number("ed_tolerance", ed::kDefaultTolerance);
    const long long cap = tol.integer("max_dimension", static_cast<long long>(ed::kDefaultMaxDimension));
    if (cap < 0) parse_fail("tolerances.max_dimension", "must be non-negative");
    c.tolerances.max_dimension = static_cast<std::size_t>(cap);
  }
  sync_scan(c);
  validate_config(c);
  return c;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::IoError, path, "cannot open config file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

namespace {

json vec_json(const Vec3& v) { return json::array({v.x(), v.y(), v.z()}); }

json template_json(const geometry::MoleculeTemplate& t) {
  return json{{"orientation", vec_json(t.orientation)}, {"mu", t.mu}, {"omega_m", t.omega_m}};
}

json ensemble_json(const GeneratorSpec& g) {
  json j;
  switch (g.kind) {
    case GeneratorKind::Explicit: {
      j["generator"] = "explicit";
      json list = json::array();
      for (const auto& m : g.molecules) {
        list.push_back(json{{"position", vec_json(m.position)},
                            {"orientation", vec_json(m.orientation)},
                            {"mu", m.mu},
                            {"omega_m", m.omega_m}});
      }
      j["molecules"] = list;
      break;
    }
    case GeneratorKind::Chain:
      j = json{{"generator", "chain"}, {"n", g.n}, {"spacing", g.spacing}, {"molecule", template_json(g.molecule)}};
      break;
    case GeneratorKind::RandomGas:
      j = json{{"generator", "random_gas"}, {"n", g.n}, {"box_side", g.box_side}, {"molecule", template_json(g.molecule)}};
      if (g.min_separation) j["min_separation"] = *g.min_separation;
      break;
    case GeneratorKind::Slab:
      j = json{{"generator", "slab"},
               {"lattice_constant", g.slab.lattice_constant},
               {"half_width", g.slab.half_width},
               {"z0", g.slab.z0},
               {"molecule", template_json(g.molecule)}};
      break;
  }
  return j;
}

json scan_json(const ScanSpec& s) {
  json j{{"kind", std::string(experiments::to_string(s.kind))},
         {"start", s.grid.start},
         {"stop", s.grid.stop},
         {"points", s.grid.points},
         {"scale", s.grid.scale == GridScale::Log ? "log" : "linear"},
         {"oracle", s.oracle_enabled},
         {"include_i_equals_k", s.convention.include_i_equals_k},
         {"threads", s.threads}};
  switch (s.kind) {
    case ScanKind::Density: j["prefactor_c"] = s.prefactor_c; break;
    case ScanKind::Slab:
      j["kernel"] = s.slab_kernel == SlabKernel::Scalar ? "scalar" : "projected";
      j["tail_correction"] = s.tail_correction;
      break;
    case ScanKind::Alignment:
      j["rotate_positions"] = s.rotate_positions;
      j["rotation_axis"] = vec_json(s.rotation_axis);
      break;
    default: break;
  }
  return j;
}

}  // namespace

std::string render_config(const RunConfig& c) {
  json j;
  j["cavity"] = json{{"omega_c", c.ensemble.cavity.omega_c},
                     {"g0", c.ensemble.cavity.g0},
                     {"photon_cutoff", c.ensemble.cavity.photon_cutoff}};
  j["polarization_axis"] = vec_json(c.ensemble.polarization_axis);
  j["ensemble"] = ensemble_json(c.ensemble);
  if (c.scan) j["scan"] = scan_json(*c.scan);
  j["seed"] = c.seed;
  if (!c.output.empty()) j["output"] = c.output;
  j["tolerances"] = json{{"pole_epsilon", c.tolerances.pole_epsilon},
                         {"ed_tolerance", c.tolerances.ed_tolerance},
                         {"max_dimension", c.tolerances.max_dimension}};
  return j.dump(2) + "\n";
}

void apply_overrides(RunConfig& c, std::optional<std::uint64_t> seed, std::optional<bool> oracle,
                     std::optional<std::string> output) {
  if (seed) c.seed = *seed;
  if (output) c.output = *output;
  if (oracle && c.scan) c.scan->oracle_enabled = *oracle;
  sync_scan(c);
}

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string format_scan_csv(const experiments::ScanResult& r) {
  std::string out;
  for (std::size_t i = 0; i < r.columns.size(); ++i) {
    if (i) out += ',';
    out += r.columns[i];
  }
  out += '\n';
  for (const auto& row : r.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      if (const double* d = std::get_if<double>(&row[i])) {
        out += format_double(*d);
      } else {
        out += std::get<std::string>(row[i]);
      }
    }
    out += '\n';
  }
  for (const auto& s : r.summary) {
    out += "# " + s.key + " = ";
    if (const double* d = std::get_if<double>(&s.value)) {
      out += format_double(*d);
    } else {
      out += std::get<std::string>(s.value);
    }
    out += '\n';
  }
  return out;
}

void write_scan_csv(const experiments::ScanResult& r, const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::IoError, path, "cannot open '" + path + "' for writing");
  const std::string text = format_scan_csv(r);
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw Error(ErrorKind::IoError, path, "write to '" + path + "' failed");
}

}  // namespace cavdw::io
