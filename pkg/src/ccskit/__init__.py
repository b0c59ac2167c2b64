"""CCS process-algebra toolkit: terms, transition systems, bisimilarity
checkers, algebraic-law harness, and coarsest-congruence machinery."""

from .congruence import (
    HOLE,
    CongruenceReport,
    Context,
    Hole,
    ParL,
    ParR,
    PrefixC,
    RelabC,
    RestrC,
    SumL,
    SumR,
    apply_context,
    compose_contexts,
    congruence_check,
    enumerate_contexts,
    print_context,
)
from .equivalence import (
    DistinguishingMove,
    Partition,
    Verdict,
    is_weak_bisimulation,
    obs_congr,
    strong_bisim_partition,
    strong_equiv,
    weak_bisim_partition,
    weak_equiv,
)
from .errors import (
    CcsError,
    CcsSyntaxError,
    ExceedsCap,
    IncompleteLts,
    KlopIndexExceeded,
    NotWeaklyEquivalent,
    UnboundConstant,
    UnguardedRecursion,
    UnknownLaw,
)
from .klop import (
    CoarsestReport,
    KlopWitness,
    coarsest_congr_crosscheck,
    coarsest_congr_decide,
    free_action,
    klop,
    klop_witness,
)
from .laws import (
    LAW_IDS,
    DengOutcome,
    HennessyOutcome,
    LawInstance,
    LawReport,
    check_law,
    deng_classify,
    generate_terms,
    hennessy_classify,
)
from .parser import (
    SourceSpan,
    action_text,
    parse_term,
    parse_workspace,
    print_term,
    print_workspace,
)
from .semantics import (
    DEFAULT_MAX_STATES,
    DEFAULT_MAX_STEPS,
    Lts,
    Transition,
    explore,
    is_finite_state,
    stable,
    successors,
)
from .syntax import (
    NIL,
    TAU,
    Action,
    Const,
    Environment,
    Label,
    Nil,
    Par,
    Prefix,
    ProcessTerm,
    Relab,
    Relabeling,
    Restr,
    Sum,
    apply_relabeling,
    complement,
    free_labels,
    term_from_dict,
    term_from_json,
    term_to_dict,
    term_to_json,
    visible,
)
from .weak import SaturatedLts, eps_closure, saturate, weak_successors

__version__ = "0.1.0"
