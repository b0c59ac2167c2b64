"""Tau-closure and weak (double-arrow) transitions over a finite LTS.

The tau-closure of a state is the set reachable by zero or more internal
steps.  A weak transition composes that closure around one strong step; for
the internal action this means at least one internal step, which is strictly
stronger than plain closure membership.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .errors import IncompleteLts
from .semantics import Lts
from .syntax import TAU, Action, action_sort_key


def eps_closure(lts: Lts, state: int) -> frozenset[int]:
    """States reachable from `state` by zero or more internal steps."""
    if not lts.complete:
        raise IncompleteLts("tau-closure needs a fully explored system")
    seen = {state}
    queue = deque([state])
    while queue:
        s = queue.popleft()
        for action, t in lts.successors_of(s):
            if action.is_tau and t not in seen:
                seen.add(t)
                queue.append(t)
    return frozenset(seen)


@dataclass(eq=False)
class SaturatedLts:
    """An LTS together with its materialized weak-transition relation.

    `eps[s]` is the tau-closure of s (reflexive, transitively closed).
    `weak[s][u]` holds every t with closure-step-closure from s to t on u;
    the entry for the internal action requires at least one internal step.
    """

    base: Lts
    eps: tuple[frozenset[int], ...]
    weak: tuple[dict[Action, frozenset[int]], ...]

    def weak_successors(self, state: int, action: Action) -> frozenset[int]:
        return self.weak[state].get(action, frozenset())

    def weak_edges(self):
        for s, table in enumerate(self.weak):
            for action in sorted(table, key=action_sort_key):
                for t in sorted(table[action]):
                    yield (s, action, t)

    def to_json_dict(self) -> dict:
        from .syntax import action_to_dict

        return {
            "eps": {str(s): sorted(closure) for s, closure in enumerate(self.eps)},
            "weak_edges": [
                {"src": s, "action": action_to_dict(a), "dst": t}
                for s, a, t in self.weak_edges()
            ],
        }


def saturate(lts: Lts) -> SaturatedLts:
    if not lts.complete:
        raise IncompleteLts("saturation needs a fully explored system")
    n = len(lts)
    eps = tuple(eps_closure(lts, s) for s in range(n))
    weak: list[dict[Action, frozenset[int]]] = []
    for s in range(n):
        table: dict[Action, set[int]] = {}
        for mid in eps[s]:
            for action, t1 in lts.successors_of(mid):
                table.setdefault(action, set()).update(eps[t1])
        weak.append({a: frozenset(ts) for a, ts in table.items()})
    return SaturatedLts(lts, eps, tuple(weak))


def weak_successors(sat: SaturatedLts, state: int, action: Action) -> frozenset[int]:
    """Weak targets of `state` on `action`; for the internal action this is
    the at-least-one-step relation, not the closure."""
    return sat.weak_successors(state, action)
