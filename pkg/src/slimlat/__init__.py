"""Slim semimodular lattices: diagrams, forks and corners, patch lattices,
congruences, homomorphism search and isomorph-free enumeration."""

__version__ = "0.1.0"

from .builders import (
    ExtensionWitness,
    ForkRecord,
    add_corner,
    add_fork,
    chain_diagram,
    grid,
    proper_extension_witness,
    remove_corner,
    remove_doubly_irreducible,
    remove_fork_once,
)
from .classify import (
    ClassReport,
    GridCertificate,
    classify,
    grid_certificate,
    is_patch,
    is_rectangular,
    replay,
    weak_corners,
)
from .congruence import (
    Congruence,
    all_congruences,
    boolean_retraction,
    chain_determination_check,
    principal_congruence,
    prime_ideal_congruence,
    quotient,
    two_block_retraction,
)
from .diagram import (
    FourCell,
    PlanarDiagram,
    all_diagrams,
    attach_diagram,
    boundary_chains,
    cell_at_edge,
    four_cells,
    infer_diagram,
    to_dot,
)
from .enumerate import Universe, brute_force_universe, canonical_form, generate_universe
from .equations import EquationSampler, EquationSystem, algebraic_closedness_verdict, solve_equations
from .errors import SlimLatError
from .fixtures import b4, chain, g23, s7
from .lattice import (
    FiniteLattice,
    build_lattice,
    doubly_irreducibles,
    is_semimodular,
    is_slim,
    is_slim_semimodular,
    join_irreducibles,
    meet_irreducibles,
)
from .maps import Category, LatticeMap, check_morphism
from .morphism import (
    absolute_retract_verdict,
    embeddings,
    enumerate_homs,
    find_retraction,
    maximality_verdict,
)

__all__ = [
    "b4", "chain", "g23", "s7",
    "Category", "ClassReport", "Congruence", "EquationSampler", "EquationSystem",
    "ExtensionWitness", "FiniteLattice", "ForkRecord", "FourCell", "GridCertificate",
    "LatticeMap", "PlanarDiagram", "SlimLatError", "Universe", "absolute_retract_verdict",
    "add_corner", "add_fork", "algebraic_closedness_verdict", "all_congruences", "all_diagrams",
    "attach_diagram", "boolean_retraction", "boundary_chains", "brute_force_universe",
    "build_lattice", "canonical_form", "cell_at_edge", "chain_determination_check",
    "chain_diagram", "check_morphism", "classify", "doubly_irreducibles", "embeddings",
    "enumerate_homs", "find_retraction", "four_cells", "generate_universe", "grid",
    "grid_certificate", "infer_diagram", "is_patch", "is_rectangular", "is_semimodular",
    "is_slim", "is_slim_semimodular", "join_irreducibles", "maximality_verdict",
    "meet_irreducibles", "prime_ideal_congruence", "principal_congruence",
    "proper_extension_witness", "quotient", "remove_corner", "remove_doubly_irreducible",
    "remove_fork_once", "replay", "solve_equations", "to_dot", "two_block_retraction",
    "weak_corners", "__version__",
]
