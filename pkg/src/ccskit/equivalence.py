"""Deciders for strong bisimilarity, weak bisimilarity, and observation
congruence on finite transition systems.

Strong bisimilarity is computed by signature refinement.  Weak bisimilarity
uses splitter-based refinement where challenges come from strong edges and
responses from the saturated relation (weak edges for visible actions, the
tau-closure for internal challenges); a block splits off the states that
cannot answer a challenge into the splitter class.  Observation congruence
adds the rooted condition on the two roots only: internal first steps must
be answered with at least one internal step.
"""
from __future__ import annotations

from dataclasses import dataclass

from .errors import ExceedsCap, IncompleteLts
from .parser import action_text, print_term
from .semantics import (
    DEFAULT_MAX_STATES,
    DEFAULT_MAX_STEPS,
    Lts,
    explore,
)
from .syntax import Action, Environment, ProcessTerm, action_sort_key
from .weak import SaturatedLts, saturate


@dataclass(frozen=True)
class Partition:
    """Equivalence classes over the states of one LTS.

    Class ids are normalized so that classes appear in ascending order of
    their smallest state index.
    """

    class_of: tuple[int, ...]
    classes: tuple[frozenset[int], ...]

    @classmethod
    def from_class_of(cls, class_of) -> "Partition":
        remap: dict[int, int] = {}
        for old in class_of:
            if old not in remap:
                remap[old] = len(remap)
        normalized = tuple(remap[old] for old in class_of)
        blocks: list[set[int]] = [set() for _ in range(len(remap))]
        for state, cid in enumerate(normalized):
            blocks[cid].add(state)
        return cls(normalized, tuple(frozenset(b) for b in blocks))

    @classmethod
    def from_blocks(cls, blocks, n: int) -> "Partition":
        class_of = [-1] * n
        for cid, block in enumerate(sorted(blocks, key=min)):
            for state in block:
                class_of[state] = cid
        return cls(tuple(class_of), tuple(
            frozenset(b) for b in sorted(blocks, key=min)
        ))

    @property
    def num_classes(self) -> int:
        return len(self.classes)

    def same_class(self, i: int, j: int) -> bool:
        return self.class_of[i] == self.class_of[j]

    def as_relation(self) -> frozenset[tuple[int, int]]:
        pairs = set()
        for block in self.classes:
            for i in block:
                for j in block:
                    pairs.add((i, j))
        return frozenset(pairs)


@dataclass(frozen=True)
class DistinguishingMove:
    """A first challenge one side cannot answer.

    `state` owns the unmatched move; `side` names the process that failed
    to respond.
    """

    state: str
    action: str
    side: str  # "left" | "right"

    def to_json_dict(self) -> dict:
        return {"state": self.state, "action": self.action, "side": self.side}


@dataclass(frozen=True)
class Verdict:
    related: bool
    relation_kind: str  # "strong" | "weak" | "obscongr"
    witness: DistinguishingMove | None
    states: int
    classes: int

    def to_json_dict(self) -> dict:
        return {
            "related": self.related,
            "kind": self.relation_kind,
            "witness": self.witness.to_json_dict() if self.witness else None,
            "states": self.states,
            "classes": self.classes,
        }


def _strong_map(lts: Lts) -> list[dict[Action, frozenset[int]]]:
    table = []
    for s in range(len(lts)):
        row: dict[Action, set[int]] = {}
        for action, t in lts.successors_of(s):
            row.setdefault(action, set()).add(t)
        table.append({a: frozenset(ts) for a, ts in row.items()})
    return table


def strong_bisim_partition(lts: Lts) -> Partition:
    """Coarsest partition whose classes match every strong step classwise."""
    if not lts.complete:
        raise IncompleteLts("strong bisimilarity needs a complete system")
    n = len(lts)
    class_of = [0] * n
    while True:
        ids: dict[tuple, int] = {}
        fresh = [0] * n
        for s in range(n):
            sig = (
                class_of[s],
                frozenset(
                    (action, class_of[t]) for action, t in lts.successors_of(s)
                ),
            )
            if sig not in ids:
                ids[sig] = len(ids)
            fresh[s] = ids[sig]
        if len(ids) == len(set(class_of)):
            return Partition.from_class_of(class_of)
        class_of = fresh


def weak_bisim_partition(sat: SaturatedLts) -> Partition:
    """Coarsest partition where strong visible steps are matched by weak
    steps into the same class and strong internal steps by tau-closure moves.
    """
    lts = sat.base
    n = len(lts)
    if n == 0:
        return Partition((), ())
    strong = _strong_map(lts)
    actions = sorted({a for _, a, _ in lts.edges}, key=action_sort_key)
    blocks: list[set[int]] = [set(range(n))]
    while True:
        changed = False
        splitters = [frozenset(b) for b in blocks]
        for klass in splitters:
            for action in actions:
                bi = 0
                while bi < len(blocks):
                    block = blocks[bi]
                    bi += 1
                    if len(block) <= 1:
                        continue
                    if not any(
                        strong[s].get(action, frozenset()) & klass for s in block
                    ):
                        continue
                    if action.is_tau:
                        responders = {s for s in block if sat.eps[s] & klass}
                    else:
                        responders = {
                            s
                            for s in block
                            if sat.weak_successors(s, action) & klass
                        }
                    if len(responders) < len(block):
                        blocks[bi - 1] = responders
                        blocks.append(block - responders)
                        changed = True
        if not changed:
            return Partition.from_blocks(blocks, n)


def is_weak_bisimulation(sat: SaturatedLts, rel) -> bool:
    """Check the four matching clauses of a weak bisimulation literally, for
    every ordered pair of the candidate relation."""
    rel = set(rel)
    strong = _strong_map(sat.base)
    for left, right in rel:
        for action, targets in strong[left].items():
            resp = (
                sat.eps[right]
                if action.is_tau
                else sat.weak_successors(right, action)
            )
            for t in targets:
                if not any((t, t2) in rel for t2 in resp):
                    return False
        for action, targets in strong[right].items():
            resp = (
                sat.eps[left]
                if action.is_tau
                else sat.weak_successors(left, action)
            )
            for t2 in targets:
                if not any((t1, t2) in rel for t1 in resp):
                    return False
    return True


def _explore_pair(env, p, q, max_states, max_steps):
    lts = explore(env, [p, q], max_states=max_states, max_steps=max_steps)
    if not lts.complete:
        raise ExceedsCap(
            f"state space exceeds caps (max_states={max_states}, "
            f"max_steps={max_steps})"
        )
    return lts, lts.roots[0], lts.roots[1]


def _first_unmatched(lts, left, right, responses, partition):
    """First strong challenge from either root that the other root cannot
    answer; `responses(state, action)` yields the candidate targets."""
    for side_of_failure, challenger, responder in (
        ("right", left, right),
        ("left", right, left),
    ):
        for action, target in lts.successors_of(challenger):
            klass = partition.classes[partition.class_of[target]]
            if not (responses(responder, action) & klass):
                return DistinguishingMove(
                    print_term(lts.states[challenger]),
                    action_text(action),
                    side_of_failure,
                )
    return None


def strong_equiv(
    env: Environment,
    p: ProcessTerm,
    q: ProcessTerm,
    max_states: int = DEFAULT_MAX_STATES,
    max_steps: int = DEFAULT_MAX_STEPS,
) -> Verdict:
    lts, r1, r2 = _explore_pair(env, p, q, max_states, max_steps)
    part = strong_bisim_partition(lts)
    related = part.same_class(r1, r2)
    witness = None
    if not related:
        strong = _strong_map(lts)

        def responses(state, action):
            return strong[state].get(action, frozenset())

        witness = _first_unmatched(lts, r1, r2, responses, part)
        assert witness is not None
    return Verdict(related, "strong", witness, len(lts), part.num_classes)


def weak_equiv(
    env: Environment,
    p: ProcessTerm,
    q: ProcessTerm,
    max_states: int = DEFAULT_MAX_STATES,
    max_steps: int = DEFAULT_MAX_STEPS,
) -> Verdict:
    lts, r1, r2 = _explore_pair(env, p, q, max_states, max_steps)
    sat = saturate(lts)
    part = weak_bisim_partition(sat)
    related = part.same_class(r1, r2)
    witness = None
    if not related:

        def responses(state, action):
            if action.is_tau:
                return sat.eps[state]
            return sat.weak_successors(state, action)

        witness = _first_unmatched(lts, r1, r2, responses, part)
        assert witness is not None
    return Verdict(related, "weak", witness, len(lts), part.num_classes)


def _rooted_condition(lts, sat, part, r1, r2):
    """Both directions of the root condition: every strong first step is
    answered by a weak transition (at least one internal step for internal
    challenges) into the same weak class."""

    def responses(state, action):
        return sat.weak_successors(state, action)

    return _first_unmatched(lts, r1, r2, responses, part)


def obs_congr(
    env: Environment,
    p: ProcessTerm,
    q: ProcessTerm,
    max_states: int = DEFAULT_MAX_STATES,
    max_steps: int = DEFAULT_MAX_STEPS,
) -> Verdict:
    lts, r1, r2 = _explore_pair(env, p, q, max_states, max_steps)
    sat = saturate(lts)
    part = weak_bisim_partition(sat)
    witness = _rooted_condition(lts, sat, part, r1, r2)
    return Verdict(witness is None, "obscongr", witness, len(lts), part.num_classes)
