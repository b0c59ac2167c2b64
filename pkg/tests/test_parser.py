import pytest
from hypothesis import given, strategies as st

from ccskit import (
    NIL,
    TAU,
    CcsSyntaxError,
    Const,
    Par,
    Prefix,
    Relab,
    Relabeling,
    Restr,
    Sum,
    parse_term,
    parse_workspace,
    print_term,
    print_workspace,
    visible,
)

labels = st.sampled_from(["a", "b", "c"])
actions = st.one_of(st.just(TAU), st.builds(visible, labels, st.booleans()))
terms = st.recursive(
    st.just(NIL) | st.builds(Const, st.sampled_from(["P", "Q2"])),
    lambda child: st.one_of(
        st.builds(Prefix, actions, child),
        st.builds(Sum, child, child),
        st.builds(Par, child, child),
        st.builds(
            lambda hidden, body: Restr(frozenset(hidden), body),
            st.sets(labels, min_size=1, max_size=2),
            child,
        ),
        st.builds(
            lambda body, mapping: Relab(body, Relabeling.of(mapping)),
            child,
            st.dictionaries(labels, labels, min_size=1, max_size=2),
        ),
    ),
    max_leaves=25,
)


def test_single_prefix():
    assert parse_term("a.0") == Prefix(visible("a"), NIL)


def test_sum_binds_looser_than_prefix():
    assert parse_term("tau.a.0 + b.0") == Sum(
        Prefix(TAU, Prefix(visible("a"), NIL)),
        Prefix(visible("b"), NIL),
    )


def test_restriction_over_parallel():
    assert parse_term("new {a} (a.0 | 'a.0)") == Restr(
        frozenset({"a"}),
        Par(Prefix(visible("a"), NIL), Prefix(visible("a", co=True), NIL)),
    )


def test_backslash_restriction_spelling():
    assert parse_term(r"(\{a,b}) a.0") == parse_term("new {a, b} a.0")


def test_parallel_binds_tighter_than_sum():
    term = parse_term("a.0 | b.0 + c.0")
    assert isinstance(term, Sum)
    assert isinstance(term.left, Par)


def test_sum_and_parallel_left_associative():
    assert parse_term("a.0 + b.0 + c.0") == Sum(
        Sum(parse_term("a.0"), parse_term("b.0")), parse_term("c.0")
    )
    assert parse_term("a.0 | b.0 | c.0") == Par(
        Par(parse_term("a.0"), parse_term("b.0")), parse_term("c.0")
    )


def test_relabel_postfix():
    term = parse_term("a.0[a->b]")
    assert term == Relab(parse_term("a.0"), Relabeling.of({"a": "b"}))
    stacked = parse_term("a.0[a->b][b->c]")
    assert isinstance(stacked, Relab) and isinstance(stacked.body, Relab)


def test_constants_are_uppercase_atoms():
    assert parse_term("Buf") == Const("Buf")
    assert parse_term("a.Buf") == Prefix(visible("a"), Const("Buf"))


def test_print_examples():
    assert print_term(NIL) == "0"
    assert print_term(Prefix(TAU, NIL)) == "tau.0"
    assert print_term(parse_term("a.0 + b.0")) == "a.0 + b.0"
    assert print_term(parse_term("a.(b.0 + c.0)")) == "a.(b.0 + c.0)"
    assert print_term(parse_term("new {b, a} 0")) == "new {a, b} 0"
    assert print_term(parse_term("(a.0 + b.0) | c.0")) == "(a.0 + b.0) | c.0"


@given(terms)
def test_round_trip(term):
    assert parse_term(print_term(term)) == term


def _span_in_bounds(src, span):
    lines = src.split("\n")
    assert 1 <= span.line <= len(lines)
    assert 1 <= span.column <= len(lines[span.line - 1]) + 1


@pytest.mark.parametrize(
    "src",
    ["", "a.", "a.0 +", "new a.0", "(a.0", "a.0)", "0 0", "a", "'a", "[a->b]",
     "a.0[a->]", "new {A} 0", "a.0 + \n (b.0 | )"],
)
def test_errors_carry_spans(src):
    with pytest.raises(CcsSyntaxError) as err:
        parse_term(src)
    _span_in_bounds(src, err.value.span)


def test_workspace_parse_and_print():
    src = (
        "alphabet a, b;\n"
        "agent Buf = a.'b.Buf;\n"
        "agent Pair = Buf | Buf;\n"
    )
    env = parse_workspace(src)
    assert env.alphabet == ("a", "b")
    assert set(env.defs) == {"Buf", "Pair"}
    assert print_workspace(env) == src


def test_workspace_comments_and_inferred_alphabet():
    env = parse_workspace("# a demo\nagent A = b.a.0;\n")
    assert env.alphabet == ("a", "b")


def test_workspace_rejects_duplicate_agent():
    with pytest.raises(CcsSyntaxError):
        parse_workspace("agent A = a.0;\nagent A = b.0;\n")


def test_workspace_rejects_late_alphabet():
    with pytest.raises(CcsSyntaxError):
        parse_workspace("agent A = a.0;\nalphabet a;\n")
