"""One-hole contexts and bounded-depth congruence checking.

A context is a term with exactly one hole along its spine.  Filling the hole
with a term yields a term; a relation is a congruence when it is preserved
by every such filling.  The enumeration bounds the spine depth and draws
non-hole slots from a fixed pool, so a failed check yields a concrete
counterexample while a passed check only certifies up to the bound.
"""
from __future__ import annotations

from dataclasses import dataclass

from .equivalence import Verdict, obs_congr, strong_equiv, weak_equiv
from .parser import print_term
from .semantics import DEFAULT_MAX_STATES, DEFAULT_MAX_STEPS
from .syntax import (
    TAU,
    Action,
    Const,
    Environment,
    Label,
    Par,
    Prefix,
    ProcessTerm,
    Relab,
    Relabeling,
    Restr,
    Sum,
    action_sort_key,
)


class Context:
    """Base class of context nodes; every concrete node is frozen."""

    _hash: int

    def __hash__(self):
        return self._hash


def _seal(node: Context, *key) -> None:
    object.__setattr__(node, "_hash", hash(key))


@dataclass(frozen=True)
class Hole(Context):
    def __post_init__(self):
        _seal(self, "hole")


@dataclass(frozen=True)
class PrefixC(Context):
    action: Action
    body: Context

    def __post_init__(self):
        _seal(self, "prefixc", self.action, self.body)


@dataclass(frozen=True)
class SumL(Context):
    body: Context
    right: ProcessTerm

    def __post_init__(self):
        _seal(self, "suml", self.body, self.right)


@dataclass(frozen=True)
class SumR(Context):
    left: ProcessTerm
    body: Context

    def __post_init__(self):
        _seal(self, "sumr", self.left, self.body)


@dataclass(frozen=True)
class ParL(Context):
    body: Context
    right: ProcessTerm

    def __post_init__(self):
        _seal(self, "parl", self.body, self.right)


@dataclass(frozen=True)
class ParR(Context):
    left: ProcessTerm
    body: Context

    def __post_init__(self):
        _seal(self, "parr", self.left, self.body)


@dataclass(frozen=True)
class RestrC(Context):
    hidden: frozenset[str]
    body: Context

    def __post_init__(self):
        object.__setattr__(self, "hidden", frozenset(self.hidden))
        _seal(self, "restrc", tuple(sorted(self.hidden)), self.body)


@dataclass(frozen=True)
class RelabC(Context):
    body: Context
    rf: Relabeling

    def __post_init__(self):
        _seal(self, "relabc", self.body, self.rf)


HOLE = Hole()


def apply_context(ctx: Context, term: ProcessTerm) -> ProcessTerm:
    """Substitute the term for the hole."""
    if isinstance(ctx, Hole):
        return term
    if isinstance(ctx, PrefixC):
        return Prefix(ctx.action, apply_context(ctx.body, term))
    if isinstance(ctx, SumL):
        return Sum(apply_context(ctx.body, term), ctx.right)
    if isinstance(ctx, SumR):
        return Sum(ctx.left, apply_context(ctx.body, term))
    if isinstance(ctx, ParL):
        return Par(apply_context(ctx.body, term), ctx.right)
    if isinstance(ctx, ParR):
        return Par(ctx.left, apply_context(ctx.body, term))
    if isinstance(ctx, RestrC):
        return Restr(ctx.hidden, apply_context(ctx.body, term))
    if isinstance(ctx, RelabC):
        return Relab(apply_context(ctx.body, term), ctx.rf)
    raise TypeError(f"not a context: {ctx!r}")


def compose_contexts(outer: Context, inner: Context) -> Context:
    """Graft `inner` at the hole of `outer`; applying the result equals
    applying `outer` after `inner`."""
    if isinstance(outer, Hole):
        return inner
    if isinstance(outer, PrefixC):
        return PrefixC(outer.action, compose_contexts(outer.body, inner))
    if isinstance(outer, SumL):
        return SumL(compose_contexts(outer.body, inner), outer.right)
    if isinstance(outer, SumR):
        return SumR(outer.left, compose_contexts(outer.body, inner))
    if isinstance(outer, ParL):
        return ParL(compose_contexts(outer.body, inner), outer.right)
    if isinstance(outer, ParR):
        return ParR(outer.left, compose_contexts(outer.body, inner))
    if isinstance(outer, RestrC):
        return RestrC(outer.hidden, compose_contexts(outer.body, inner))
    if isinstance(outer, RelabC):
        return RelabC(compose_contexts(outer.body, inner), outer.rf)
    raise TypeError(f"not a context: {outer!r}")


def print_context(ctx: Context) -> str:
    return print_term(apply_context(ctx, Const("_")))


def _wrappers(alphabet, fill_terms):
    actions = [TAU]
    for base in sorted(alphabet):
        actions.append(Action(Label(base, False)))
        actions.append(Action(Label(base, True)))
    actions.sort(key=action_sort_key)
    wrappers = [lambda c, a=a: PrefixC(a, c) for a in actions]
    wrappers += [lambda c, t=t: SumL(c, t) for t in fill_terms]
    wrappers += [lambda c, t=t: SumR(t, c) for t in fill_terms]
    wrappers += [lambda c, t=t: ParL(c, t) for t in fill_terms]
    wrappers += [lambda c, t=t: ParR(t, c) for t in fill_terms]
    wrappers += [
        lambda c, b=b: RestrC(frozenset({b}), c) for b in sorted(alphabet)
    ]
    wrappers += [
        lambda c, s=s, d=d: RelabC(c, Relabeling(((s, d),)))
        for s in sorted(alphabet)
        for d in sorted(alphabet)
    ]
    return wrappers


def enumerate_contexts(alphabet, max_depth: int, fill_terms) -> list[Context]:
    """All contexts of spine depth at most max_depth whose term slots come
    from fill_terms, duplicate-free, in deterministic generation order."""
    if max_depth < 0:
        raise ValueError("max_depth must be non-negative")
    wrappers = _wrappers(alphabet, list(fill_terms))
    out: list[Context] = [HOLE]
    seen: set[Context] = {HOLE}
    frontier: list[Context] = [HOLE]
    for _ in range(max_depth):
        fresh = []
        for ctx in frontier:
            for wrap in wrappers:
                new = wrap(ctx)
                if new not in seen:
                    seen.add(new)
                    fresh.append(new)
        out.extend(fresh)
        frontier = fresh
    return out


@dataclass(frozen=True)
class CongruenceReport:
    relation_kind: str
    depth: int
    pairs_checked: int
    all_contexts_pass: bool
    counterexample: tuple[Context, Verdict] | None

    def to_json_dict(self) -> dict:
        ce = None
        if self.counterexample is not None:
            ctx, verdict = self.counterexample
            ce = {"context": print_context(ctx), "verdict": verdict.to_json_dict()}
        return {
            "kind": self.relation_kind,
            "depth": self.depth,
            "pairs_checked": self.pairs_checked,
            "all_contexts_pass": self.all_contexts_pass,
            "counterexample": ce,
        }


_CHECKERS = {"strong": strong_equiv, "weak": weak_equiv, "obscongr": obs_congr}


def congruence_check(
    env: Environment,
    relation_kind: str,
    pairs,
    max_depth: int,
    fill_terms,
    max_states: int = DEFAULT_MAX_STATES,
    max_steps: int = DEFAULT_MAX_STEPS,
) -> CongruenceReport:
    """Check that every enumerated context preserves the relation on every
    given pair; refutation-complete at the given depth, verification is only
    up-to-depth."""
    checker = _CHECKERS[relation_kind]
    contexts = enumerate_contexts(env.alphabet, max_depth, fill_terms)
    checked = 0
    for ctx in contexts:
        for x, y in pairs:
            verdict = checker(
                env,
                apply_context(ctx, x),
                apply_context(ctx, y),
                max_states=max_states,
                max_steps=max_steps,
            )
            checked += 1
            if not verdict.related:
                return CongruenceReport(
                    relation_kind, max_depth, checked, False, (ctx, verdict)
                )
    return CongruenceReport(relation_kind, max_depth, checked, True, None)
