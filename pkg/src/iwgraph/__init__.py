"""Jacobians of cyclic voltage p-towers of graphs and their Iwasawa invariants."""

from .graph import (
    DisconnectedGraphError,
    Divisor,
    Graph,
    InvariantFactors,
    brute_force_tree_count,
    is_connected,
    jacobian,
    laplacian,
    p_sylow,
    reduced_laplacian,
    spanning_tree_count,
)
from .iwasawa import (
    FitError,
    IwasawaFit,
    StickelbergerReport,
    example1_expected,
    fit_invariants,
    rank_trajectory_check,
    stickelberger,
    verify_example1,
)
from .laurent import GroupRingElement
from .snf import SnfResult, smith_normal_form
from .tower import LevelRecord, TowerReport, TowerSpec, analyze_tower, level_graph
from .voltage import (
    DerivedGraph,
    SizeGuardError,
    VoltageAssignment,
    derive,
    galois_action,
    intermediate_cover,
    voltage_laplacian,
)

__version__ = "0.1.0"
