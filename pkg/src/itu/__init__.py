"""Workbench for the algebraic intersection type unification problem:
BCD subtyping with constants, equational axioms, constraint systems,
matching via 3-SAT, two-player spiral tiling games, the tiling-to-types
lower-bound pipeline, and rank-1 unification via set constraints."""

from .types import (
    OMEGA,
    Arrow,
    Const,
    Inter,
    Path,
    Type,
    TypeSyntaxError,
    Var,
    arrow,
    arrows,
    components,
    const,
    contains_omega,
    inter,
    is_atom,
    is_omega_equal,
    is_organized,
    is_path,
    omega_collapse,
    organize,
    parse_type,
    path_split,
    print_type,
    size,
    type_constants,
    type_vars,
    var,
)
from .subtyping import JoinError, join_arrows, subtype, type_equal
from .axioms import (
    ALL_AXIOMS,
    AxiomError,
    AxiomSchema,
    BASE_AXIOMS,
    JOIN_AXIOMS,
    check_axiom_soundness,
    instantiate_axiom,
)
from .constraints import (
    Constraint,
    ConstraintSet,
    FreshVars,
    Substitution,
    apply,
    encode_constants_unary,
    eq,
    format_constraints,
    format_substitution,
    is_ground,
    is_matching_instance,
    leq,
    pack_single,
    parse_constraints,
    parse_substitution,
    sat_to_unif,
    typability_constraints,
    unary_tower,
    unif_to_sat,
    verify,
)
from .matching import (
    MatchBudget,
    Sat3Instance,
    extract_valuation,
    parse_dimacs,
    sat3_to_matching,
    sat_brute_force,
    solve_matching_bounded,
)
from .tiling import (
    INFINITY,
    SPOILER,
    StrategyTree,
    TilingSystem,
    all_playouts,
    corridor_to_spiral,
    enumerate_systems,
    format_strategy,
    format_tiling,
    game_values,
    make_system,
    parse_strategy,
    parse_tiling,
    replay_strategy,
    solve_spiral_game,
    validate_corridor,
    validate_spiral,
    validate_strategy,
)
from .reduction import (
    ExtractionError,
    PlayOutcome,
    build_CT,
    build_CT_prime,
    compile_strategy,
    extend_ct_prime,
    extract_play,
    word_type,
)
from .rank1 import (
    SetConstraintSystem,
    assignment_to_substitution,
    deep_organize,
    find_arrow_index_set,
    format_set_system,
    is_simple,
    iter_set_solutions,
    parse_set_system,
    rank1_transform,
    solve_rank1,
    solve_set_constraints,
)

__version__ = "0.1.0"
