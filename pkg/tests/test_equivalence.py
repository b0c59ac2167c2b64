"""The bisimilarity deciders: examples, oracle agreement, equivalence-law
and substitutivity properties, and the implication chain."""
import random

import pytest

import genpairs
import oracles
from ccskit import (
    Environment,
    ExceedsCap,
    Partition,
    Prefix,
    Relabeling,
    Restr,
    Relab,
    Sum,
    Par,
    TAU,
    explore,
    is_weak_bisimulation,
    obs_congr,
    parse_term,
    saturate,
    stable,
    strong_bisim_partition,
    strong_equiv,
    weak_bisim_partition,
    weak_equiv,
)

ENV = Environment({}, ("a", "b", "c"))


def joint(*texts):
    terms = [parse_term(t) for t in texts]
    lts = explore(ENV, terms)
    return lts, [lts.index_of(t) for t in terms]


# --- strong bisimilarity -----------------------------------------------------

def test_strong_partition_merges_duplicate_sum():
    lts, (r1, r2) = joint("a.0 + a.0", "a.0")
    part = strong_bisim_partition(lts)
    assert part.class_of[r1] == part.class_of[r2]


def test_strong_partition_distinct_actions():
    lts, (r1, r2) = joint("a.0", "b.0")
    part = strong_bisim_partition(lts)
    assert part.class_of[r1] != part.class_of[r2]


def test_strong_partition_sees_tau():
    lts, (r1, r2) = joint("a.tau.0", "a.0")
    part = strong_bisim_partition(lts)
    assert part.class_of[r1] != part.class_of[r2]


def test_strong_partition_matches_gfp_oracle(small_env):
    env, stream = small_env
    for _ in range(40):
        lts = explore(env, [next(stream), next(stream)], max_states=300)
        assert lts.complete
        part = strong_bisim_partition(lts)
        assert part.as_relation() == frozenset(oracles.strong_gfp_pairs(lts))


# --- weak bisimilarity -------------------------------------------------------

def test_weak_partition_examples():
    lts, (r1, r2) = joint("tau.b.0", "b.0")
    part = weak_bisim_partition(saturate(lts))
    assert part.class_of[r1] == part.class_of[r2]

    lts, (r1, r2) = joint("a.tau.0", "a.0")
    part = weak_bisim_partition(saturate(lts))
    assert part.class_of[r1] == part.class_of[r2]

    lts, (r1, r2) = joint("tau.a.0 + b.0", "a.0 + b.0")
    part = weak_bisim_partition(saturate(lts))
    assert part.class_of[r1] != part.class_of[r2]


def test_weak_partition_matches_gfp_oracle(small_env):
    env, stream = small_env
    for _ in range(60):
        lts = explore(env, [next(stream), next(stream)], max_states=300)
        assert lts.complete
        part = weak_bisim_partition(saturate(lts))
        assert part.as_relation() == frozenset(oracles.weak_gfp_pairs(lts))


def test_partition_classes_are_consistent(small_env):
    env, stream = small_env
    lts = explore(env, [next(stream) for _ in range(3)], max_states=300)
    part = weak_bisim_partition(saturate(lts))
    seen = set()
    for cid, block in enumerate(part.classes):
        assert block
        assert not (block & seen)
        seen |= block
        for state in block:
            assert part.class_of[state] == cid
    assert seen == set(range(len(lts)))


# --- candidate relation validation -------------------------------------------

def test_identity_is_weak_bisimulation(small_env):
    env, stream = small_env
    lts = explore(env, [next(stream)], max_states=300)
    sat = saturate(lts)
    identity = {(s, s) for s in range(len(lts))}
    assert is_weak_bisimulation(sat, identity)


def test_empty_relation_is_weak_bisimulation():
    lts, _ = joint("a.0")
    assert is_weak_bisimulation(saturate(lts), set())


def test_union_of_weak_bisimulations(small_env):
    env, stream = small_env
    lts = explore(env, [next(stream), next(stream)], max_states=300)
    sat = saturate(lts)
    identity = {(s, s) for s in range(len(lts))}
    greatest = set(weak_bisim_partition(sat).as_relation())
    assert is_weak_bisimulation(sat, identity)
    assert is_weak_bisimulation(sat, greatest)
    assert is_weak_bisimulation(sat, identity | greatest)


def test_violating_relation_is_rejected():
    lts, (r1, r2) = joint("a.0", "b.0")
    sat = saturate(lts)
    assert not is_weak_bisimulation(sat, {(r1, r2)})


# --- verdicts ----------------------------------------------------------------

def test_weak_equiv_reflexive():
    term = parse_term("a.(b.0 + tau.0)")
    assert weak_equiv(ENV, term, term).related


def test_weak_equiv_examples():
    assert weak_equiv(ENV, parse_term("tau.a.0"), parse_term("a.0")).related
    verdict = weak_equiv(ENV, parse_term("a.0"), parse_term("b.0"))
    assert not verdict.related
    assert verdict.witness is not None
    assert verdict.witness.action in ("a", "b")


def test_weak_equiv_witness_on_unrelated():
    verdict = weak_equiv(ENV, parse_term("tau.a.0 + b.0"), parse_term("a.0 + b.0"))
    assert not verdict.related
    assert verdict.witness.action == "tau"


def test_obs_congr_examples():
    term = parse_term("a.(tau.0 + b.0)")
    assert obs_congr(ENV, term, term).related
    assert obs_congr(ENV, parse_term("a.tau.0"), parse_term("a.0")).related
    assert not obs_congr(ENV, parse_term("tau.a.0"), parse_term("a.0")).related


def test_exceeds_cap_raises():
    env = Environment({"B": parse_term("b.(B | B)")}, ("b",))
    from ccskit import Const

    with pytest.raises(ExceedsCap):
        weak_equiv(env, Const("B"), parse_term("b.0"), max_states=20)


# --- relation laws over generated corpora ------------------------------------

def test_implication_chain():
    for p, q in genpairs.mixed_pairs(seed=5, n=60):
        s = strong_equiv(ENV, p, q).related
        oc = obs_congr(ENV, p, q).related
        w = weak_equiv(ENV, p, q).related
        if s:
            assert oc, (p, q)
        if oc:
            assert w, (p, q)


def test_weak_equiv_is_equivalence_relation():
    pairs = genpairs.mixed_pairs(seed=6, n=30)
    terms = [p for p, _ in pairs] + [q for _, q in pairs]
    rng = random.Random(1)
    for _ in range(40):
        x, y, z = rng.sample(terms, 3)
        assert weak_equiv(ENV, x, x).related
        xy = weak_equiv(ENV, x, y).related
        assert xy == weak_equiv(ENV, y, x).related
        if xy and weak_equiv(ENV, y, z).related:
            assert weak_equiv(ENV, x, z).related


def test_obs_congr_is_equivalence_relation():
    pairs = genpairs.mixed_pairs(seed=7, n=30)
    terms = [p for p, _ in pairs] + [q for _, q in pairs]
    rng = random.Random(2)
    for _ in range(40):
        x, y, z = rng.sample(terms, 3)
        assert obs_congr(ENV, x, x).related
        xy = obs_congr(ENV, x, y).related
        assert xy == obs_congr(ENV, y, x).related
        if xy and obs_congr(ENV, y, z).related:
            assert obs_congr(ENV, x, z).related


def test_stability_upgrades_weak_to_congruent():
    for p, q in genpairs.stable_pairs(ENV, seed=8, n=40):
        assert stable(ENV, p) and stable(ENV, q)
        if weak_equiv(ENV, p, q).related:
            assert obs_congr(ENV, p, q).related


def test_congruent_eps_lifting():
    # congruent pairs answer closure moves with closure moves into weakly
    # bisimilar states, and weak transitions with weak transitions
    for p, q in genpairs.congruent_pairs(seed=9, n=25):
        if not obs_congr(ENV, p, q).related:
            continue
        lts = explore(ENV, [p, q], max_states=400)
        sat = saturate(lts)
        part = weak_bisim_partition(sat)
        r1, r2 = lts.roots
        for t in sat.eps[r1]:
            assert any(
                part.same_class(t, t2) for t2 in sat.eps[r2]
            )
        for action, targets in sat.weak[r1].items():
            responses = sat.weak[r2].get(action, frozenset())
            for t in targets:
                assert any(part.same_class(t, t2) for t2 in responses)


# --- substitutivity -----------------------------------------------------------

def _weakly_related_pairs(n, seed):
    return [
        (p, q)
        for p, q in genpairs.weak_pairs(seed=seed, n=n)
        if weak_equiv(ENV, p, q).related
    ]


def test_weak_equiv_substitutive_under_prefix():
    rng = random.Random(11)
    for p, q in _weakly_related_pairs(25, seed=11):
        action = rng.choice([TAU, parse_term("a.0").action, parse_term("'b.0").action])
        assert weak_equiv(ENV, Prefix(action, p), Prefix(action, q)).related


def test_weak_equiv_substitutive_under_restriction_and_relabelling():
    for p, q in _weakly_related_pairs(20, seed=12):
        assert weak_equiv(ENV, Restr(frozenset({"a"}), p),
                          Restr(frozenset({"a"}), q)).related
        rf = Relabeling.of({"a": "b"})
        assert weak_equiv(ENV, Relab(p, rf), Relab(q, rf)).related


def test_weak_equiv_preserved_by_parallel():
    pairs = _weakly_related_pairs(16, seed=13)
    for (p, q), (r, s) in zip(pairs[::2], pairs[1::2]):
        assert weak_equiv(ENV, Par(p, r), Par(q, s), max_states=4000).related


def test_weak_equiv_preserved_by_sum_under_stability():
    pairs = [
        (p, q)
        for p, q in genpairs.stable_pairs(ENV, seed=14, n=30)
        if weak_equiv(ENV, p, q).related
    ]
    for (p, q), (r, s) in zip(pairs[::2], pairs[1::2]):
        assert weak_equiv(ENV, Sum(p, r), Sum(q, s)).related


def _congruent_pairs(n, seed):
    return [
        (p, q)
        for p, q in genpairs.congruent_pairs(seed=seed, n=n)
        if obs_congr(ENV, p, q).related
    ]


def test_obs_congr_substitutive_under_operators():
    rng = random.Random(15)
    pairs = _congruent_pairs(20, seed=15)
    for p, q in pairs:
        action = rng.choice([TAU, parse_term("a.0").action])
        assert obs_congr(ENV, Prefix(action, p), Prefix(action, q)).related
        assert obs_congr(ENV, Restr(frozenset({"b"}), p),
                         Restr(frozenset({"b"}), q)).related
        rf = Relabeling.of({"b": "c"})
        assert obs_congr(ENV, Relab(p, rf), Relab(q, rf)).related


def test_obs_congr_preserved_by_sum_and_parallel():
    pairs = _congruent_pairs(16, seed=16)
    for (p, q), (r, s) in zip(pairs[::2], pairs[1::2]):
        assert obs_congr(ENV, Sum(p, r), Sum(q, s)).related
        assert obs_congr(ENV, Par(p, r), Par(q, s), max_states=4000).related


def test_tau_prefix_always_weakly_equivalent():
    for p, _ in genpairs.random_pairs(seed=17, n=25):
        assert weak_equiv(ENV, Prefix(TAU, p), p).related


def test_verdict_json_schema():
    verdict = weak_equiv(ENV, parse_term("a.0"), parse_term("b.0"))
    blob = verdict.to_json_dict()
    assert set(blob) == {"related", "kind", "witness", "states", "classes"}
    assert blob["kind"] == "weak"
    assert set(blob["witness"]) == {"state", "action", "side"}
