"""Core CCS term language: labels, actions, relabellings, terms, environments.

Terms are immutable trees compared structurally; structural equality is the
state identity used by every downstream layer.  Node hashes are cached at
construction so that terms sharing subtrees (DAGs, e.g. the Klop family)
hash in time linear in the number of distinct nodes.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field

from .errors import UnboundConstant


@dataclass(frozen=True)
class Label:
    """A visible label: a base name plus a polarity (name or co-name)."""

    base: str
    co: bool = False

    def __post_init__(self):
        if not self.base:
            raise ValueError("label base must be non-empty")


def complement(label: Label) -> Label:
    """Flip polarity, preserve the base name (an involution)."""
    return Label(label.base, not label.co)


@dataclass(frozen=True)
class Action:
    """Either the invisible internal action (label is None) or a visible label."""

    label: Label | None = None

    @property
    def is_tau(self) -> bool:
        return self.label is None


TAU = Action()


def visible(base: str, co: bool = False) -> Action:
    return Action(Label(base, co))


def action_sort_key(action: Action):
    """Total order on actions: tau first, then (base, polarity)."""
    if action.label is None:
        return (0, "", False)
    return (1, action.label.base, action.label.co)


@dataclass(frozen=True)
class Relabeling:
    """Finite base-name renaming, extended homomorphically to actions.

    Identity outside the stored domain; polarity is preserved and the
    internal action is never renamed.
    """

    pairs: tuple[tuple[str, str], ...] = ()

    def __post_init__(self):
        pairs = tuple(sorted(self.pairs))
        sources = [src for src, _ in pairs]
        if len(set(sources)) != len(sources):
            raise ValueError("relabeling maps a source name twice")
        object.__setattr__(self, "pairs", pairs)

    @classmethod
    def of(cls, mapping) -> "Relabeling":
        return cls(tuple(mapping.items()))

    def lookup(self, base: str) -> str:
        for src, dst in self.pairs:
            if src == base:
                return dst
        return base

    def apply(self, action: Action) -> Action:
        if action.label is None:
            return action
        return Action(Label(self.lookup(action.label.base), action.label.co))


def apply_relabeling(rf: Relabeling, action: Action) -> Action:
    return rf.apply(action)


class ProcessTerm:
    """Base class of term nodes; every concrete node is a frozen dataclass."""

    _hash: int

    def __hash__(self):
        return self._hash


def _seal(node: ProcessTerm, *key) -> None:
    object.__setattr__(node, "_hash", hash(key))


@dataclass(frozen=True)
class Nil(ProcessTerm):
    def __post_init__(self):
        _seal(self, "nil")


@dataclass(frozen=True)
class Prefix(ProcessTerm):
    action: Action
    body: ProcessTerm

    def __post_init__(self):
        _seal(self, "prefix", self.action, self.body)


@dataclass(frozen=True)
class Sum(ProcessTerm):
    left: ProcessTerm
    right: ProcessTerm

    def __post_init__(self):
        _seal(self, "sum", self.left, self.right)


@dataclass(frozen=True)
class Par(ProcessTerm):
    left: ProcessTerm
    right: ProcessTerm

    def __post_init__(self):
        _seal(self, "par", self.left, self.right)


@dataclass(frozen=True)
class Restr(ProcessTerm):
    """Restriction over base names: hides both polarities of each name."""

    hidden: frozenset[str]
    body: ProcessTerm

    def __post_init__(self):
        object.__setattr__(self, "hidden", frozenset(self.hidden))
        _seal(self, "restr", tuple(sorted(self.hidden)), self.body)


@dataclass(frozen=True)
class Relab(ProcessTerm):
    body: ProcessTerm
    rf: Relabeling

    def __post_init__(self):
        _seal(self, "relab", self.body, self.rf)


@dataclass(frozen=True)
class Const(ProcessTerm):
    name: str

    def __post_init__(self):
        _seal(self, "const", self.name)


NIL = Nil()


def _iter_children(term: ProcessTerm):
    if isinstance(term, Prefix):
        yield term.body
    elif isinstance(term, (Sum, Par)):
        yield term.left
        yield term.right
    elif isinstance(term, (Restr, Relab)):
        yield term.body


def constants_of(term: ProcessTerm) -> frozenset[str]:
    """Names of all constants occurring syntactically in the term."""
    out, stack = set(), [term]
    while stack:
        t = stack.pop()
        if isinstance(t, Const):
            out.add(t.name)
        else:
            stack.extend(_iter_children(t))
    return frozenset(out)


def labels_of(term: ProcessTerm) -> frozenset[str]:
    """Every base name appearing anywhere in the term.

    Unlike `free_labels` this also collects restriction sets and both sides
    of relabelling maps, so it is the right notion for alphabet inference.
    """
    out, stack = set(), [term]
    while stack:
        t = stack.pop()
        if isinstance(t, Prefix) and t.action.label is not None:
            out.add(t.action.label.base)
        elif isinstance(t, Restr):
            out.update(t.hidden)
        elif isinstance(t, Relab):
            for src, dst in t.rf.pairs:
                out.add(src)
                out.add(dst)
        stack.extend(_iter_children(t))
    return frozenset(out)


@dataclass(frozen=True, eq=False)
class Environment:
    """Defining equations for constants plus the declared label alphabet."""

    defs: dict[str, ProcessTerm] = field(default_factory=dict)
    alphabet: tuple[str, ...] = ()

    def __post_init__(self):
        seen, ordered = set(), []
        for base in self.alphabet:
            if base not in seen:
                seen.add(base)
                ordered.append(base)
        object.__setattr__(self, "alphabet", tuple(ordered))
        for name, body in self.defs.items():
            for used in constants_of(body):
                if used not in self.defs:
                    raise UnboundConstant(used)
            missing = labels_of(body) - seen
            if missing:
                raise ValueError(
                    f"agent {name!r} uses labels outside the alphabet: "
                    f"{sorted(missing)}"
                )

    def lookup(self, name: str) -> ProcessTerm:
        try:
            return self.defs[name]
        except KeyError:
            raise UnboundConstant(name) from None

    def extended(self, labels=(), defs=None) -> "Environment":
        merged = dict(self.defs)
        if defs:
            merged.update(defs)
        return Environment(merged, self.alphabet + tuple(labels))

    @classmethod
    def for_terms(cls, terms, defs=None, alphabet=()) -> "Environment":
        """Environment whose alphabet covers the given terms (sorted order)."""
        bases = set(alphabet)
        for term in terms:
            bases |= labels_of(term)
        for body in (defs or {}).values():
            bases |= labels_of(body)
        return cls(dict(defs or {}), tuple(alphabet) + tuple(sorted(bases)))

    @property
    def action_count(self) -> int:
        # tau plus both polarities of every declared base name
        return 2 * len(self.alphabet) + 1


def free_labels(env: Environment, term: ProcessTerm) -> frozenset[str]:
    """Base names occurring in a prefix of the term or of any constant
    definition reachable from it.

    A syntactic over-approximation: restriction does not remove names.
    """
    out: set[str] = set()
    seen_consts: set[str] = set()
    stack = [term]
    while stack:
        t = stack.pop()
        if isinstance(t, Prefix):
            if t.action.label is not None:
                out.add(t.action.label.base)
            stack.append(t.body)
        elif isinstance(t, Const):
            if t.name not in seen_consts:
                seen_consts.add(t.name)
                stack.append(env.lookup(t.name))
        else:
            stack.extend(_iter_children(t))
    return frozenset(out)


# --- canonical JSON form ---------------------------------------------------

def action_to_dict(action: Action) -> dict:
    if action.label is None:
        return {"tau": True}
    return {"name": action.label.base, "co": action.label.co}


def action_from_dict(data: dict) -> Action:
    if data.get("tau"):
        return TAU
    return Action(Label(data["name"], bool(data["co"])))


def term_to_dict(term: ProcessTerm) -> dict:
    if isinstance(term, Nil):
        return {"kind": "nil"}
    if isinstance(term, Prefix):
        return {
            "kind": "prefix",
            "action": action_to_dict(term.action),
            "body": term_to_dict(term.body),
        }
    if isinstance(term, Sum):
        return {
            "kind": "sum",
            "left": term_to_dict(term.left),
            "right": term_to_dict(term.right),
        }
    if isinstance(term, Par):
        return {
            "kind": "par",
            "left": term_to_dict(term.left),
            "right": term_to_dict(term.right),
        }
    if isinstance(term, Restr):
        return {
            "kind": "restr",
            "hidden": sorted(term.hidden),
            "body": term_to_dict(term.body),
        }
    if isinstance(term, Relab):
        return {
            "kind": "relab",
            "map": {src: dst for src, dst in term.rf.pairs},
            "body": term_to_dict(term.body),
        }
    if isinstance(term, Const):
        return {"kind": "const", "name": term.name}
    raise TypeError(f"not a process term: {term!r}")


def term_from_dict(data: dict) -> ProcessTerm:
    kind = data["kind"]
    if kind == "nil":
        return NIL
    if kind == "prefix":
        return Prefix(action_from_dict(data["action"]), term_from_dict(data["body"]))
    if kind == "sum":
        return Sum(term_from_dict(data["left"]), term_from_dict(data["right"]))
    if kind == "par":
        return Par(term_from_dict(data["left"]), term_from_dict(data["right"]))
    if kind == "restr":
        return Restr(frozenset(data["hidden"]), term_from_dict(data["body"]))
    if kind == "relab":
        return Relab(term_from_dict(data["body"]), Relabeling.of(data["map"]))
    if kind == "const":
        return Const(data["name"])
    raise ValueError(f"unknown term kind {kind!r}")


def term_to_json(term: ProcessTerm) -> str:
    return json.dumps(term_to_dict(term), sort_keys=True, separators=(",", ":"))


def term_from_json(text: str) -> ProcessTerm:
    return term_from_dict(json.loads(text))
