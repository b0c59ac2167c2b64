"""Single-step transition relation and bounded state-space exploration."""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

from .errors import UnguardedRecursion
from .parser import action_text, print_term
from .syntax import (
    TAU,
    Action,
    Const,
    Environment,
    Nil,
    Par,
    Prefix,
    ProcessTerm,
    Relab,
    Restr,
    Sum,
    action_sort_key,
    complement,
)

DEFAULT_MAX_STATES = 10_000
DEFAULT_MAX_STEPS = 1_000_000


@dataclass(frozen=True)
class Transition:
    source: ProcessTerm
    action: Action
    target: ProcessTerm


def successors(
    env: Environment,
    term: ProcessTerm,
    _unfolding: frozenset[str] = frozenset(),
) -> set[tuple[Action, ProcessTerm]]:
    """All (action, target) pairs derivable from the term by one step.

    Constants unfold lazily through their defining equation.  Re-entering a
    constant while it is already being unfolded means the occurrence is not
    guarded by a prefix, so the derivation would never bottom out; that
    raises UnguardedRecursion rather than silently under-approximating.
    """
    if isinstance(term, Nil):
        return set()
    if isinstance(term, Prefix):
        return {(term.action, term.body)}
    if isinstance(term, Sum):
        return successors(env, term.left, _unfolding) | successors(
            env, term.right, _unfolding
        )
    if isinstance(term, Par):
        left = successors(env, term.left, _unfolding)
        right = successors(env, term.right, _unfolding)
        out = {(u, Par(target, term.right)) for u, target in left}
        out |= {(u, Par(term.left, target)) for u, target in right}
        for u, lt in left:
            if u.label is None:
                continue
            comp = complement(u.label)
            for v, rt in right:
                if v.label == comp:
                    out.add((TAU, Par(lt, rt)))
        return out
    if isinstance(term, Restr):
        return {
            (u, Restr(term.hidden, target))
            for u, target in successors(env, term.body, _unfolding)
            if u.label is None or u.label.base not in term.hidden
        }
    if isinstance(term, Relab):
        return {
            (term.rf.apply(u), Relab(target, term.rf))
            for u, target in successors(env, term.body, _unfolding)
        }
    if isinstance(term, Const):
        if term.name in _unfolding:
            raise UnguardedRecursion(term.name)
        return successors(env, env.lookup(term.name), _unfolding | {term.name})
    raise TypeError(f"not a process term: {term!r}")


def stable(env: Environment, term: ProcessTerm) -> bool:
    """True iff no first step of the term is the internal action."""
    return all(u.label is not None for u, _ in successors(env, term))


@dataclass(eq=False)
class Lts:
    """Explored transition system.

    States are terms indexed in BFS discovery order (roots first); edges are
    (source index, action, target index).  `complete` is True iff the
    frontier was exhausted within the exploration caps, in which case the
    states are exactly the terms reachable from the roots.
    """

    states: tuple[ProcessTerm, ...]
    edges: tuple[tuple[int, Action, int], ...]
    roots: tuple[int, ...]
    complete: bool
    _index: dict = field(repr=False, default=None)
    _out: tuple = field(repr=False, default=None)

    def __post_init__(self):
        object.__setattr__(self, "_index", {t: i for i, t in enumerate(self.states)})
        out = [[] for _ in self.states]
        for src, action, dst in self.edges:
            out[src].append((action, dst))
        object.__setattr__(
            self,
            "_out",
            tuple(
                tuple(sorted(row, key=lambda e: (action_sort_key(e[0]), e[1])))
                for row in out
            ),
        )

    def __len__(self):
        return len(self.states)

    def index_of(self, term: ProcessTerm) -> int:
        return self._index[term]

    def successors_of(self, state: int) -> tuple[tuple[Action, int], ...]:
        return self._out[state]

    def to_json_dict(self) -> dict:
        from .syntax import action_to_dict

        return {
            "states": [print_term(t) for t in self.states],
            "roots": list(self.roots),
            "complete": self.complete,
            "edges": [
                {"src": s, "action": action_to_dict(a), "dst": d}
                for s, a, d in self.edges
            ],
        }

    def to_dot(self) -> str:
        lines = ["digraph lts {", "  rankdir=LR;"]
        for i, term in enumerate(self.states):
            label = print_term(term).replace("\\", "\\\\").replace('"', '\\"')
            shape = ", peripheries=2" if i in self.roots else ""
            lines.append(f'  {i} [label="{label}"{shape}];')
        for src, action, dst in self.edges:
            style = ", style=dashed" if action.is_tau else ""
            lines.append(f'  {src} -> {dst} [label="{action_text(action)}"{style}];')
        lines.append("}")
        return "\n".join(lines) + "\n"


def explore(
    env: Environment,
    roots,
    max_states: int = DEFAULT_MAX_STATES,
    max_steps: int = DEFAULT_MAX_STEPS,
) -> Lts:
    """Breadth-first exploration from the roots, deduplicating states by
    structural equality.  Hitting a cap is not an error: complete=False.
    """
    roots = list(roots)
    if max_states < 1:
        raise ValueError("max_states must be at least 1")
    if len({*roots}) > max_states:
        raise ValueError("max_states too small to hold the roots")
    states: list[ProcessTerm] = []
    index: dict[ProcessTerm, int] = {}
    root_idx = []
    for term in roots:
        if term not in index:
            index[term] = len(states)
            states.append(term)
        root_idx.append(index[term])
    edges: set[tuple[int, Action, int]] = set()
    queue = deque(range(len(states)))
    complete = True
    steps = 0
    while queue:
        src = queue.popleft()
        succ = sorted(
            successors(env, states[src]),
            key=lambda at: (action_sort_key(at[0]), print_term(at[1])),
        )
        for action, target in succ:
            steps += 1
            if steps > max_steps:
                complete = False
                queue.clear()
                break
            dst = index.get(target)
            if dst is None:
                if len(states) >= max_states:
                    complete = False
                    continue
                dst = len(states)
                index[target] = dst
                states.append(target)
                queue.append(dst)
            edges.add((src, action, dst))
    ordered = tuple(
        sorted(edges, key=lambda e: (e[0], action_sort_key(e[1]), e[2]))
    )
    return Lts(tuple(states), ordered, tuple(root_idx), complete)


def is_finite_state(
    env: Environment,
    term: ProcessTerm,
    cap: int = DEFAULT_MAX_STATES,
) -> int | None:
    """Number of reachable states if exploration completes under the cap,
    None otherwise (a semi-decision)."""
    lts = explore(env, [term], max_states=cap)
    return len(lts) if lts.complete else None
