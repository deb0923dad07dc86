"""Finite lattices, rank functions (lattice polymatroids) and weighted lattices
of cyclic flats, with exact checkers for each axiom system."""

from .axioms import (
    CyclicFlatSystem,
    build_polymatroid,
    check_all_axioms,
    check_Z1,
    check_Z2,
    check_Z3,
    check_Z4,
    check_Z5,
    check_Z6,
    cyclic_flat_system,
    minimizing_flats,
    rho,
    rho_all,
    rho_component,
    roundtrip_check,
    system_from_rank,
)
from .builders import (
    boolean_lattice,
    chain_lattice,
    m3_lattice,
    n5_lattice,
    product_lattice,
    subspace_lattice,
)
from .cyclic import (
    AtomWeighting,
    CyclicFlatLattice,
    atom_ranks,
    atom_weighting,
    cl,
    cl_atoms,
    cyc,
    cyclic_flat_lattice,
    cyclic_flats,
    is_cyclic,
    is_flat,
    is_quasi_modular,
    mu_bruteforce,
    mu_greedy,
    mu_table,
    reconstruct_rank,
)
from .errors import *  # noqa: F401,F403
from .io import LatticeDocument, document_from, parse_document, write_document, write_dot
from .lattice import (
    FiniteLattice,
    Interval,
    Layering,
    atom_bases,
    build_lattice,
    complements,
    decomposing_complements,
    is_complemented,
    is_modular,
    layering,
)
from .polymatroid import (
    CoverWeighting,
    RankFunction,
    check_cover_weight_axioms,
    check_interval_weight_axioms,
    check_rank_axioms,
    check_rank_axioms_length2,
    cover_weighting,
    is_integer_unit,
    rank_from_weight,
    rank_function,
    sample_random_polymatroid,
    weight_from_rank,
)
from .report import Report

__version__ = "0.1.0"
