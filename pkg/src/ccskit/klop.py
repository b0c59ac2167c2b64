"""The ladder family of pairwise non-bisimilar stable processes, and the
coarsest-congruence decision for finite-state processes built on it.

The family is defined by k(a, 0) = 0 and k(a, n+1) = k(a, n) + a.k(a, n).
Members are stable and pairwise non-equivalent, so for two finite-state
processes a member outside every reachable equivalence class always exists
within node-count-plus-one candidates; summing a fresh guard onto both sides
then turns observation congruence into a plain weak-bisimilarity question.
"""
from __future__ import annotations

from dataclasses import dataclass

from .equivalence import (
    Verdict,
    _explore_pair,
    obs_congr,
    weak_bisim_partition,
    weak_equiv,
)
from .errors import ExceedsCap, KlopIndexExceeded
from .laws import generate_terms
from .parser import print_term
from .semantics import DEFAULT_MAX_STATES, DEFAULT_MAX_STEPS, explore
from .syntax import (
    NIL,
    Action,
    Environment,
    Label,
    Prefix,
    ProcessTerm,
    Sum,
)
from .weak import saturate

KLOP_INDEX_CAP = 12


def klop(base: str, n: int) -> ProcessTerm:
    """The n-th ladder process over the given label; subterms are shared, so
    construction is linear even though the tree reading is exponential."""
    if n < 0:
        raise ValueError("index must be non-negative")
    if n > KLOP_INDEX_CAP:
        raise KlopIndexExceeded(
            f"ladder index {n} exceeds the materialization cap {KLOP_INDEX_CAP}"
        )
    term = NIL
    action = Action(Label(base, False))
    for _ in range(n):
        term = Sum(term, Prefix(action, term))
    return term


def free_action(
    env: Environment,
    term: ProcessTerm,
    max_states: int = DEFAULT_MAX_STATES,
    max_steps: int = DEFAULT_MAX_STEPS,
) -> str | None:
    """First declared alphabet label with no one-step weak transition from
    the root, or None when every label is weakly performable."""
    lts = explore(env, [term], max_states=max_states, max_steps=max_steps)
    if not lts.complete:
        raise ExceedsCap("state space exceeds caps while searching free actions")
    sat = saturate(lts)
    root = lts.roots[0]
    for base in env.alphabet:
        if not sat.weak_successors(root, Action(Label(base, False))):
            return base
    return None


@dataclass(frozen=True)
class KlopWitness:
    action: str
    index: int
    term: ProcessTerm
    excluded_nodes: int  # states of the two input processes that were checked

    def to_json_dict(self) -> dict:
        return {
            "action": self.action,
            "index": self.index,
            "term": print_term(self.term),
            "excluded_nodes": self.excluded_nodes,
        }


def klop_witness(
    env: Environment,
    p: ProcessTerm,
    q: ProcessTerm,
    base: str,
    max_states: int = DEFAULT_MAX_STATES,
    max_steps: int = DEFAULT_MAX_STEPS,
) -> KlopWitness:
    """Smallest ladder process not weakly bisimilar to any state reachable
    from p or q.  The pigeonhole over pairwise distinct ladder classes
    guarantees a hit among the first node-count-plus-one candidates."""
    joint, _, _ = _explore_pair(env, p, q, max_states, max_steps)
    reachable = set(joint.states)
    bound = len(reachable)
    for n in range(bound + 1):
        candidate = klop(base, n)
        lts = explore(
            env, [p, q, candidate], max_states=max_states, max_steps=max_steps
        )
        if not lts.complete:
            raise ExceedsCap("state space exceeds caps during witness search")
        part = weak_bisim_partition(saturate(lts))
        k_root = lts.roots[2]
        k_class = part.class_of[k_root]
        if all(
            part.class_of[i] != k_class
            for i, state in enumerate(lts.states)
            if state in reachable
        ):
            return KlopWitness(base, n, candidate, bound)
    raise AssertionError("pigeonhole violated: no ladder witness found")


def coarsest_congr_decide(
    env: Environment,
    p: ProcessTerm,
    q: ProcessTerm,
    max_states: int = DEFAULT_MAX_STATES,
    max_steps: int = DEFAULT_MAX_STEPS,
) -> Verdict:
    """Decide observation congruence of finite-state processes via the sum
    characterization: guard a distinguishing ladder process with the first
    alphabet label, add it to both sides, and test weak bisimilarity.

    The verdict's witness, when present, talks about the summed processes.
    """
    base = env.alphabet[0] if env.alphabet else "a"
    env = env if base in env.alphabet else env.extended([base])
    witness = klop_witness(
        env, p, q, base, max_states=max_states, max_steps=max_steps
    )
    guard = Prefix(Action(Label(base, False)), witness.term)
    inner = weak_equiv(
        env,
        Sum(p, guard),
        Sum(q, guard),
        max_states=max_states,
        max_steps=max_steps,
    )
    return Verdict(
        inner.related, "obscongr", inner.witness, inner.states, inner.classes
    )


@dataclass(frozen=True)
class CoarsestReport:
    decide: bool
    obs_congr: bool
    samples: int
    failing_samples: tuple[str, ...]  # printed r with p + r not weakly bisim q + r
    consistent: bool

    def to_json_dict(self) -> dict:
        return {
            "decide": self.decide,
            "obs_congr": self.obs_congr,
            "samples": self.samples,
            "failing_samples": list(self.failing_samples),
            "consistent": self.consistent,
        }


def coarsest_congr_crosscheck(
    env: Environment,
    p: ProcessTerm,
    q: ProcessTerm,
    samples: int = 25,
    seed: int = 0,
    max_states: int = DEFAULT_MAX_STATES,
    max_steps: int = DEFAULT_MAX_STEPS,
) -> CoarsestReport:
    """Sample random summands r and compare p + r against q + r.

    Consistency demands: congruent processes never produce a failing sample,
    and the sum-characterization decision agrees with the direct check.
    """
    caps = {"max_states": max_states, "max_steps": max_steps}
    oc = obs_congr(env, p, q, **caps).related
    decide = coarsest_congr_decide(env, p, q, **caps).related
    failing = []
    stream = generate_terms(env.alphabet or ("a",), max_depth=2, seed=seed)
    for _ in range(samples):
        r = next(stream)
        verdict = weak_equiv(env, Sum(p, r), Sum(q, r), **caps)
        if not verdict.related:
            failing.append(print_term(r))
    consistent = (decide == oc) and not (oc and failing)
    return CoarsestReport(decide, oc, samples, tuple(failing), consistent)
