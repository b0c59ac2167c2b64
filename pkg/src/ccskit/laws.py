"""Named algebraic laws, the Deng/Hennessy classifiers, and the term corpus
generator used by the randomized suites.

The catalog holds two kinds of entries: equational laws checked by building
both sides and running the stated checker, and implication lemmas about the
lifting of weak transitions over binary sums.
"""
from __future__ import annotations

import random
from dataclasses import dataclass

from .equivalence import (
    Verdict,
    _explore_pair,
    _rooted_condition,
    obs_congr,
    weak_bisim_partition,
    weak_equiv,
)
from .errors import ExceedsCap, NotWeaklyEquivalent, UnknownLaw
from .parser import action_text, print_term
from .semantics import DEFAULT_MAX_STATES, DEFAULT_MAX_STEPS, explore
from .syntax import (
    NIL,
    TAU,
    Action,
    Environment,
    Label,
    Prefix,
    ProcessTerm,
    Relab,
    Relabeling,
    Restr,
    Sum,
    Par,
)
from .weak import saturate


@dataclass(frozen=True)
class _Equation:
    law_id: str
    relation: str  # "weak" | "obscongr"
    metavars: tuple[str, ...]
    lhs: callable
    rhs: callable


@dataclass(frozen=True)
class _SumLifting:
    """Weak transitions of one summand lift to the sum."""

    law_id: str
    metavars: tuple[str, ...] = ("E", "E2")
    summand_left: bool = True


_CATALOG: dict[str, object] = {}
for entry in (
    _Equation(
        "TAU_WEAK",
        "weak",
        ("E",),
        lambda b: Prefix(TAU, b["E"]),
        lambda b: b["E"],
    ),
    _Equation(
        "TAU1",
        "obscongr",
        ("u", "E"),
        lambda b: Prefix(b["u"], Prefix(TAU, b["E"])),
        lambda b: Prefix(b["u"], b["E"]),
    ),
    _Equation(
        "TAU2",
        "obscongr",
        ("E",),
        lambda b: Sum(b["E"], Prefix(TAU, b["E"])),
        lambda b: Prefix(TAU, b["E"]),
    ),
    _Equation(
        "TAU3",
        "obscongr",
        ("u", "E", "E2"),
        lambda b: Sum(
            Prefix(b["u"], Sum(b["E"], Prefix(TAU, b["E2"]))),
            Prefix(b["u"], b["E2"]),
        ),
        lambda b: Prefix(b["u"], Sum(b["E"], Prefix(TAU, b["E2"]))),
    ),
    _Equation(
        "TAU_STRAT",
        "obscongr",
        ("E", "E2"),
        lambda b: Sum(b["E"], Prefix(TAU, Sum(b["E2"], b["E"]))),
        lambda b: Prefix(TAU, Sum(b["E2"], b["E"])),
    ),
    _SumLifting("WEAK_SUM1", summand_left=True),
    _SumLifting("WEAK_SUM2", summand_left=False),
):
    _CATALOG[entry.law_id] = entry

LAW_IDS = tuple(_CATALOG)


@dataclass(frozen=True)
class LawInstance:
    law_id: str
    bindings: dict  # metavariable -> ProcessTerm, or Action for "u"


@dataclass(frozen=True)
class LawReport:
    law_id: str
    expected: str  # "Holds" | "ImplicationHolds"
    passed: bool
    bindings: dict  # metavariable -> printed text
    lhs: str | None = None
    rhs: str | None = None
    verdict: Verdict | None = None

    def to_json_dict(self) -> dict:
        return {
            "law": self.law_id,
            "expected": self.expected,
            "passed": self.passed,
            "bindings": dict(self.bindings),
            "lhs": self.lhs,
            "rhs": self.rhs,
            "verdict": self.verdict.to_json_dict() if self.verdict else None,
        }


def _binding_text(value) -> str:
    if isinstance(value, Action):
        return action_text(value)
    return print_term(value)


def check_law(
    env: Environment,
    inst: LawInstance,
    max_states: int = DEFAULT_MAX_STATES,
    max_steps: int = DEFAULT_MAX_STEPS,
) -> LawReport:
    law = _CATALOG.get(inst.law_id)
    if law is None:
        raise UnknownLaw(inst.law_id)
    missing = [v for v in law.metavars if v not in inst.bindings]
    if missing:
        raise ValueError(f"law {inst.law_id} needs bindings for {missing}")
    shown = {v: _binding_text(inst.bindings[v]) for v in law.metavars}

    if isinstance(law, _Equation):
        lhs = law.lhs(inst.bindings)
        rhs = law.rhs(inst.bindings)
        checker = weak_equiv if law.relation == "weak" else obs_congr
        verdict = checker(env, lhs, rhs, max_states=max_states, max_steps=max_steps)
        return LawReport(
            inst.law_id,
            "Holds",
            verdict.related,
            shown,
            print_term(lhs),
            print_term(rhs),
            verdict,
        )

    summand, other = inst.bindings["E"], inst.bindings["E2"]
    summed = Sum(summand, other) if law.summand_left else Sum(other, summand)
    lts = explore(env, [summed, summand], max_states=max_states, max_steps=max_steps)
    if not lts.complete:
        raise ExceedsCap("state space exceeds caps while checking sum lifting")
    sat = saturate(lts)
    sum_root, summand_root = lts.roots
    passed = all(
        sat.weak_successors(summand_root, action)
        <= sat.weak_successors(sum_root, action)
        for action in sat.weak[summand_root]
    )
    return LawReport(
        inst.law_id,
        "ImplicationHolds",
        passed,
        shown,
        print_term(summed),
        print_term(summand),
        None,
    )


@dataclass(frozen=True)
class DengOutcome:
    """All holding cases of the tau-step/congruence trichotomy for a weakly
    bisimilar pair."""

    case1_witness: ProcessTerm | None  # p --tau-> p' with p' weakly bisimilar to q
    case2_witness: ProcessTerm | None  # q --tau-> q' with p weakly bisimilar to q'
    case3: bool  # p and q observation congruent

    @property
    def holding_cases(self) -> tuple[str, ...]:
        cases = []
        if self.case1_witness is not None:
            cases.append("case1")
        if self.case2_witness is not None:
            cases.append("case2")
        if self.case3:
            cases.append("case3")
        return tuple(cases)

    def to_json_dict(self) -> dict:
        return {
            "case1_witness": (
                print_term(self.case1_witness) if self.case1_witness else None
            ),
            "case2_witness": (
                print_term(self.case2_witness) if self.case2_witness else None
            ),
            "case3": self.case3,
            "holding": list(self.holding_cases),
        }


def deng_classify(
    env: Environment,
    p: ProcessTerm,
    q: ProcessTerm,
    max_states: int = DEFAULT_MAX_STATES,
    max_steps: int = DEFAULT_MAX_STEPS,
) -> DengOutcome:
    lts, r1, r2 = _explore_pair(env, p, q, max_states, max_steps)
    sat = saturate(lts)
    part = weak_bisim_partition(sat)
    if not part.same_class(r1, r2):
        raise NotWeaklyEquivalent(
            f"{print_term(p)} and {print_term(q)} are not weakly bisimilar"
        )
    case1 = None
    for action, t in lts.successors_of(r1):
        if action.is_tau and part.same_class(t, r2):
            case1 = lts.states[t]
            break
    case2 = None
    for action, t in lts.successors_of(r2):
        if action.is_tau and part.same_class(t, r1):
            case2 = lts.states[t]
            break
    case3 = _rooted_condition(lts, sat, part, r1, r2) is None
    return DengOutcome(case1, case2, case3)


@dataclass(frozen=True)
class HennessyOutcome:
    congruent: bool  # p and q observation congruent
    congruent_to_delayed: bool  # p congruent to tau-prefixed q
    delayed_congruent: bool  # tau-prefixed p congruent to q
    weakly_equivalent: bool

    @property
    def any_flag(self) -> bool:
        return self.congruent or self.congruent_to_delayed or self.delayed_congruent

    def to_json_dict(self) -> dict:
        return {
            "p_congr_q": self.congruent,
            "p_congr_tau_q": self.congruent_to_delayed,
            "tau_p_congr_q": self.delayed_congruent,
            "weakly_equivalent": self.weakly_equivalent,
        }


def hennessy_classify(
    env: Environment,
    p: ProcessTerm,
    q: ProcessTerm,
    max_states: int = DEFAULT_MAX_STATES,
    max_steps: int = DEFAULT_MAX_STEPS,
) -> HennessyOutcome:
    caps = {"max_states": max_states, "max_steps": max_steps}
    outcome = HennessyOutcome(
        obs_congr(env, p, q, **caps).related,
        obs_congr(env, p, Prefix(TAU, q), **caps).related,
        obs_congr(env, Prefix(TAU, p), q, **caps).related,
        weak_equiv(env, p, q, **caps).related,
    )
    assert outcome.any_flag == outcome.weakly_equivalent, (
        "classification disagrees with weak bisimilarity; checker bug"
    )
    return outcome


# --- term corpus -------------------------------------------------------------

def generate_terms(alphabet, max_depth: int, seed: int):
    """Endless deterministic stream of closed terms over the alphabet.

    No constants are used, so every generated term is finite-state.  Depth
    zero yields only the inactive process.
    """
    rng = random.Random(seed)
    alphabet = tuple(alphabet)
    while True:
        yield _random_term(rng, alphabet, max_depth)


def _random_action(rng: random.Random, alphabet) -> Action:
    if not alphabet or rng.random() < 0.25:
        return TAU
    return Action(Label(rng.choice(alphabet), rng.random() < 0.4))


def _random_term(rng: random.Random, alphabet, depth: int) -> ProcessTerm:
    if depth <= 0:
        return NIL
    kinds = ["nil", "prefix", "prefix", "prefix", "sum", "sum", "par"]
    if alphabet:
        kinds += ["restr", "relab"]
    kind = rng.choice(kinds)
    if kind == "nil":
        return NIL
    if kind == "prefix":
        return Prefix(_random_action(rng, alphabet), _random_term(rng, alphabet, depth - 1))
    if kind == "sum":
        return Sum(
            _random_term(rng, alphabet, depth - 1),
            _random_term(rng, alphabet, depth - 1),
        )
    if kind == "par":
        return Par(
            _random_term(rng, alphabet, depth - 1),
            _random_term(rng, alphabet, depth - 1),
        )
    if kind == "restr":
        hidden = frozenset(rng.sample(alphabet, rng.randint(1, min(2, len(alphabet)))))
        return Restr(hidden, _random_term(rng, alphabet, depth - 1))
    src = rng.choice(alphabet)
    dst = rng.choice(alphabet)
    return Relab(
        _random_term(rng, alphabet, depth - 1), Relabeling(((src, dst),))
    )
