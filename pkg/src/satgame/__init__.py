"""Saturation games on small graphs: engine, strategies, exact solver,
classifiers and bound checks."""

from .graph import (
    Graph,
    ComponentView,
    everywhere_traceable,
    hamiltonian_path,
    from_graph6,
    to_graph6,
    from_edge_text,
    to_edge_text,
    norm_edge,
)
from .families import (
    ExplicitFamily,
    ForbiddenFamily,
    PathFamily,
    StarFamily,
    TreeFamily,
    contains_subgraph,
    creates_forbidden,
    family_name,
    is_free,
    legal_moves,
    parse_family,
)
from .engine import (
    PASS,
    Action,
    GameRecord,
    GameState,
    IllegalMoveError,
    IllegalStrategyActionError,
    Player,
    Variant,
    apply_action,
    initial_state,
    is_terminal,
    play,
)
from .strategies import STRATEGY_NAMES, Strategy, make_strategy
from .solver import (
    BudgetExceeded,
    CapExceeded,
    SolveResult,
    best_action,
    best_response,
    solve,
)
from .analysis import (
    BoundReport,
    SaturatedClass,
    TraceStats,
    all_graphs,
    bound,
    classify_p4_saturated,
    classify_p5_saturated,
    degree_sum_bound,
    enumerate_saturated,
    f_closed,
    f_sequence,
    free_graphs,
    minimizing_delta,
    saturated_graphs,
    trace_stats,
    tree_score_formula,
)

__version__ = "0.1.0"
