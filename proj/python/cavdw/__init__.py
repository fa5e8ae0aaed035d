"""Cavity-modified van der Waals energies with an exact-diagonalization oracle."""

from ._cavdw import (
    CavdwError,
    CavityParams,
    EnergyBreakdown,
    Ensemble,
    HamiltonianSpec,
    Molecule,
    PerturbationInputs,
    SlabSpec,
    cli_main,
    converged_ground_energy,
    coupling_matrix,
    crossover_detuning,
    de_p1,
    de_p2,
    de_p2_detuned,
    density_prefactor,
    e_crw1,
    e_crw2,
    e_dse1,
    e_dse2,
    e_vdw,
    effective_rabi,
    ground_energy,
    isolate_term,
    make_chain,
    make_random_gas,
    make_slab_with_probe,
    parse_config,
    projected_coupling_strengths,
    projected_dipole_coupling,
    run_config_scan,
    three_body_sum,
    total_breakdown,
    validate_ensemble,
)

__all__ = [name for name in dir() if not name.startswith("_")]
