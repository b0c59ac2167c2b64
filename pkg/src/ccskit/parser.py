"""Concrete syntax for CCS terms and `.ccs` workspaces.

Grammar, loosest binding first:

    term    := par ('+' par)*                 sums are left-associative
    par     := restr ('|' restr)*             parallel is left-associative
    restr   := 'new' '{' names '}' restr
             | '(' '\\' '{' names '}' ')' restr
             | relab
    relab   := prefix ('[' a->b, ... ']')*
    prefix  := action '.' prefix | atom       prefix is right-associative
    atom    := '0' | CONST | '(' term ')'

Actions are `tau`, a lower-case name `a`, or a co-name `'a`.  Constants are
bare identifiers starting with an upper-case letter.  `#` starts a comment.

Workspace files hold one optional `alphabet a, b;` header followed by
`agent NAME = TERM;` definitions.
"""
from __future__ import annotations

import re
from dataclasses import dataclass

from .errors import CcsSyntaxError
from .syntax import (
    TAU,
    Action,
    Const,
    Environment,
    Label,
    Nil,
    NIL,
    Par,
    Prefix,
    ProcessTerm,
    Relab,
    Relabeling,
    Restr,
    Sum,
    labels_of,
)


@dataclass(frozen=True)
class SourceSpan:
    line: int
    column: int
    length: int = 1

    def __post_init__(self):
        if self.line < 1 or self.column < 1:
            raise ValueError("source positions are 1-based")


_KEYWORDS = {"tau", "new", "agent", "alphabet"}

_TOKEN_RE = re.compile(
    r"""
      (?P<ws>\s+)
    | (?P<comment>\#[^\n]*)
    | (?P<arrow>->)
    | (?P<coname>'[A-Za-z_][A-Za-z0-9_]*)
    | (?P<word>[A-Za-z_][A-Za-z0-9_]*)
    | (?P<zero>0)
    | (?P<sym>[+|.(){}\[\],;\\=])
    """,
    re.VERBOSE,
)


@dataclass(frozen=True)
class _Token:
    kind: str  # 'zero', 'const', 'name', 'coname', keyword text, symbol text, 'eof'
    text: str
    span: SourceSpan


def _tokenize(src: str) -> list[_Token]:
    tokens = []
    line, col = 1, 1
    pos = 0
    while pos < len(src):
        m = _TOKEN_RE.match(src, pos)
        if m is None:
            raise CcsSyntaxError(
                f"unexpected character {src[pos]!r}", SourceSpan(line, col, 1)
            )
        text = m.group(0)
        kind = m.lastgroup
        span = SourceSpan(line, col, len(text))
        if kind == "ws":
            nl = text.count("\n")
            if nl:
                line += nl
                col = len(text) - text.rfind("\n")
            else:
                col += len(text)
        elif kind == "comment":
            col += len(text)
        else:
            if kind == "word":
                if text in _KEYWORDS:
                    kind = text
                elif text[0].isupper():
                    kind = "const"
                else:
                    kind = "name"
            elif kind == "coname":
                pass
            elif kind == "sym":
                kind = text
            elif kind == "arrow":
                kind = "->"
            tokens.append(_Token(kind, text, span))
            col += len(text)
        pos = m.end()
    tokens.append(_Token("eof", "", SourceSpan(line, col, 0)))
    return tokens


class _Parser:
    def __init__(self, tokens: list[_Token]):
        self.tokens = tokens
        self.pos = 0

    def peek(self, ahead: int = 0) -> _Token:
        return self.tokens[min(self.pos + ahead, len(self.tokens) - 1)]

    def advance(self) -> _Token:
        tok = self.tokens[self.pos]
        if tok.kind != "eof":
            self.pos += 1
        return tok

    def expect(self, kind: str, what: str | None = None) -> _Token:
        tok = self.peek()
        if tok.kind != kind:
            self.fail(f"expected {what or kind!r}", tok)
        return self.advance()

    def fail(self, message: str, tok: _Token | None = None):
        tok = tok or self.peek()
        found = repr(tok.text) if tok.kind != "eof" else "end of input"
        raise CcsSyntaxError(f"{message}, found {found}", tok.span)

    # term := sum
    def term(self) -> ProcessTerm:
        node = self.par()
        while self.peek().kind == "+":
            self.advance()
            node = Sum(node, self.par())
        return node

    def par(self) -> ProcessTerm:
        node = self.restr()
        while self.peek().kind == "|":
            self.advance()
            node = Par(node, self.restr())
        return node

    def restr(self) -> ProcessTerm:
        tok = self.peek()
        if tok.kind == "new":
            self.advance()
            hidden = self.name_set()
            return Restr(hidden, self.restr())
        if tok.kind == "(" and self.peek(1).kind == "\\":
            self.advance()
            self.advance()
            hidden = self.name_set()
            self.expect(")")
            return Restr(hidden, self.restr())
        return self.relab()

    def name_set(self) -> frozenset[str]:
        self.expect("{")
        names = []
        if self.peek().kind != "}":
            names.append(self.expect("name", "a label name").text)
            while self.peek().kind == ",":
                self.advance()
                names.append(self.expect("name", "a label name").text)
        self.expect("}")
        return frozenset(names)

    def relab(self) -> ProcessTerm:
        node = self.prefix()
        while self.peek().kind == "[":
            self.advance()
            pairs = []
            if self.peek().kind != "]":
                pairs.append(self.rename())
                while self.peek().kind == ",":
                    self.advance()
                    pairs.append(self.rename())
            self.expect("]")
            node = Relab(node, Relabeling(tuple(pairs)))
        return node

    def rename(self) -> tuple[str, str]:
        src = self.expect("name", "a label name").text
        self.expect("->")
        dst = self.expect("name", "a label name").text
        return (src, dst)

    def prefix(self) -> ProcessTerm:
        tok = self.peek()
        if tok.kind in ("tau", "name", "coname") and self.peek(1).kind == ".":
            action = self.action()
            self.expect(".")
            return Prefix(action, self.prefix())
        return self.atom()

    def action(self) -> Action:
        tok = self.advance()
        if tok.kind == "tau":
            return TAU
        if tok.kind == "name":
            return Action(Label(tok.text, False))
        if tok.kind == "coname":
            return Action(Label(tok.text[1:], True))
        self.fail("expected an action", tok)

    def atom(self) -> ProcessTerm:
        tok = self.peek()
        if tok.kind == "zero":
            self.advance()
            return NIL
        if tok.kind == "const":
            self.advance()
            return Const(tok.text)
        if tok.kind == "(":
            self.advance()
            node = self.term()
            self.expect(")")
            return node
        if tok.kind in ("tau", "name", "coname"):
            self.fail("expected '.' after action", self.peek(1))
        self.fail("expected a process term", tok)


def parse_term(src: str) -> ProcessTerm:
    parser = _Parser(_tokenize(src))
    node = parser.term()
    if parser.peek().kind != "eof":
        parser.fail("trailing input after term")
    return node


def parse_workspace(src: str) -> Environment:
    """Parse a `.ccs` workspace into an Environment.

    The alphabet header, when present, must come first and fixes the label
    declaration order; otherwise the alphabet is inferred (sorted).
    """
    parser = _Parser(_tokenize(src))
    alphabet: list[str] | None = None
    defs: dict[str, ProcessTerm] = {}
    while parser.peek().kind != "eof":
        tok = parser.peek()
        if tok.kind == "alphabet":
            if alphabet is not None or defs:
                parser.fail("alphabet must be declared once, before any agent")
            parser.advance()
            alphabet = [parser.expect("name", "a label name").text]
            while parser.peek().kind == ",":
                parser.advance()
                alphabet.append(parser.expect("name", "a label name").text)
            parser.expect(";")
        elif tok.kind == "agent":
            parser.advance()
            name_tok = parser.expect("const", "an agent name")
            if name_tok.text in defs:
                parser.fail(f"agent {name_tok.text!r} defined twice", name_tok)
            parser.expect("=")
            body = parser.term()
            parser.expect(";")
            defs[name_tok.text] = body
        else:
            parser.fail("expected 'agent' or 'alphabet'")
    if alphabet is None:
        bases: set[str] = set()
        for body in defs.values():
            bases |= labels_of(body)
        alphabet = sorted(bases)
    return Environment(defs, tuple(alphabet))


# --- printing ---------------------------------------------------------------

_SUM, _PAR, _RESTR, _PREFIX, _ATOM = range(5)


def action_text(action: Action) -> str:
    if action.label is None:
        return "tau"
    return ("'" if action.label.co else "") + action.label.base


def _print(term: ProcessTerm, required: int) -> str:
    if isinstance(term, Nil):
        return "0"
    if isinstance(term, Const):
        return term.name
    if isinstance(term, Prefix):
        text = f"{action_text(term.action)}.{_print(term.body, _PREFIX)}"
        level = _PREFIX
    elif isinstance(term, Sum):
        text = f"{_print(term.left, _SUM)} + {_print(term.right, _PAR)}"
        level = _SUM
    elif isinstance(term, Par):
        text = f"{_print(term.left, _PAR)} | {_print(term.right, _RESTR)}"
        level = _PAR
    elif isinstance(term, Restr):
        names = ", ".join(sorted(term.hidden))
        text = f"new {{{names}}} {_print(term.body, _RESTR)}"
        level = _RESTR
    elif isinstance(term, Relab):
        pairs = ", ".join(f"{src}->{dst}" for src, dst in term.rf.pairs)
        text = f"{_print(term.body, _PREFIX)}[{pairs}]"
        level = _RESTR
    else:
        raise TypeError(f"not a process term: {term!r}")
    if level < required:
        return f"({text})"
    return text


def print_term(term: ProcessTerm) -> str:
    """Canonical text form; parse_term(print_term(p)) structurally equals p."""
    return _print(term, _SUM)


def print_workspace(env: Environment) -> str:
    lines = []
    if env.alphabet:
        lines.append("alphabet " + ", ".join(env.alphabet) + ";")
    for name, body in env.defs.items():
        lines.append(f"agent {name} = {print_term(body)};")
    return "\n".join(lines) + "\n"
