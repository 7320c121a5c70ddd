import itertools

import pytest
from hypothesis import given, settings, strategies as st

from fimrank import presented_monoid as pm
from fimrank.exact_linalg import rat
from fimrank.presented_monoid import MWord, parse_word, word


def W(text):
    return parse_word(text)


gen_syms = [(n, i) for n in "xyz" for i in range(4)] + [("a", i) for i in range(1, 4)]
m_words = st.lists(st.sampled_from(gen_syms), max_size=5).map(lambda syms: MWord.of(*syms))


def test_word_text_and_json():
    w = W("x0 + 2y3 + a1")
    assert str(w) == "a1 + x0 + 2y3"
    assert MWord.from_json(w.to_json()) == w
    assert W("0") == MWord.of()
    assert (2 * W("y1")) == W("y1 + y1")
    with pytest.raises(ValueError):
        W("x0 +")
    with pytest.raises(ValueError):
        pm.canonicalize_M(W("q3"))


@pytest.mark.parametrize("a, b, equal", [
    ("x0 + y0", "x0 + z0", True),
    ("y1 + a1", "y0", True),
    ("z2 + a2 + a1", "z0", True),
    ("x1 + y1", "x0", True),
    ("x1 + z1", "x0", True),
    ("y0", "z0", False),
    ("x0", "y0", False),
    ("2x1 + y1", "x0 + x1", True),
    ("a1", "a2", False),
    ("x0 + y0", "x0", False),
])
def test_equals_against_oracle(a, b, equal):
    assert pm.equals_M(W(a), W(b)) is equal
    verdict = pm.oracle_equiv(pm.presentation_M(4), W(a), W(b), 8, 4)
    assert (verdict == "equal") is equal


def test_canonical_examples():
    c = pm.canonicalize_M(W("x0 + z0"))
    assert (c.N, c.p, c.q, c.r) == (0, 1, 1, 0)
    assert pm.canonicalize_M(W("y1 + a1")) == pm.canonicalize_M(W("y0"))
    c = pm.canonicalize_M(W("y0 + y3"))
    assert (c.N, c.p, c.q, c.r) == (3, 0, 2, 0) and dict(c.alpha) == {1: 1, 2: 1, 3: 1}


@settings(max_examples=200, deadline=None)
@given(m_words)
def test_canonical_word_is_equivalent_and_idempotent(w):
    c = pm.canonicalize_M(w)
    assert pm.canonicalize_M(c.to_word()) == c
    assert pm.congruence_invariant(c.to_word()) == pm.congruence_invariant(w)
    assert pm.state_value(c.to_word()) == pm.state_value(w)


@settings(max_examples=200, deadline=None)
@given(m_words, m_words, m_words)
def test_addition_is_a_commutative_monoid(a, b, c):
    ca, cb, cc = (pm.canonicalize_M(x) for x in (a, b, c))
    assert pm.add_M(ca, cb) == pm.add_M(cb, ca) == pm.canonicalize_M(a + b)
    assert pm.add_M(pm.add_M(ca, cb), cc) == pm.add_M(ca, pm.add_M(cb, cc))


def test_conical():
    for w in itertools.islice(pm._all_words(pm.presentation_M(2).generators, 2), 200):
        if w.size():
            assert not pm.equals_M(w, W("0"))


def test_oracle_agreement_small():
    r = pm.oracle_agreement(max_size=3, max_index=2, oracle_size=7, oracle_index=3)
    assert r["ok"] and not r["violations"]
    assert r["components"] == r["canonical_classes"]


def test_oracle_resource_error():
    with pytest.raises(pm.OracleResourceError):
        pm.oracle_equiv(pm.presentation_M(4), W("x0 + y0"), W("a1"), 12, 4, max_states=5)


def test_invariant_respects_relations():
    pres = pm.presentation_M(5)
    for lhs, rhs in pres.relations:
        assert pm.congruence_invariant(lhs) == pm.congruence_invariant(rhs)


def test_state():
    assert pm.state_value(W("x2")) == rat("1/4")
    assert pm.state_value(W("x0 + y0")) == 2


def test_order_and_refinement():
    verdict, wit = pm.le_bounded(W("y1"), W("y0"))
    assert verdict == "yes" and wit == W("a1")
    u = W("x0 + y0")
    for n in range(1, 4):
        assert pm.le_bounded(n * W(f"a{n}"), u)[0] == "yes"
        assert pm.le_bounded((n + 1) * W(f"a{n}"), u)[0] == "not-found"
    grid = pm.refine_bounded(W("x0"), W("y0"), W("x0"), W("z0"))
    assert grid is not None
    assert pm.equals_M(grid[0][0] + grid[0][1], W("x0")) and pm.equals_M(grid[1][0] + grid[1][1], W("y0"))
    assert pm.equals_M(grid[0][0] + grid[1][0], W("x0")) and pm.equals_M(grid[0][1] + grid[1][1], W("z0"))
    assert pm.refine_bounded(W("a1"), W("a2"), W("a1"), W("a2")) == [[W("a1"), W("0")], [W("0"), W("a2")]]
    with pytest.raises(ValueError):
        pm.refine_bounded(W("a1"), W("a2"), W("a1"), W("a1"))


def test_property_battery():
    r = pm.property_battery_M(max_size=2, max_index=2)
    assert r["ok"], r.get("counterexamples")


def test_mbar():
    c = pm.mbar_project(W("x1 + a7"))
    assert (c.r, c.n, c.s, c.t) == (1, 1, 0, 0)
    pres = pm.presentation_Mbar(3)
    assert pm.oracle_equiv(pres, W("x1 + y0 + y0"), W("x0 + y0"), 6, 3) == "equal"
    for a, b in [("x1 + y0", "x1 + z0"), ("x2 + y0", "x1")]:
        same = pm.mbar_project(W(a)) == pm.mbar_project(W(b))
        assert same == (pm.oracle_equiv(pres, W(a), W(b), 7, 3) == "equal")


def test_graph_presentation():
    data = {"vertices": ["v", "w"], "edges": [["v", "w"], ["v", "w"], ["v", "v"]],
            "partition": {"v": [[0, 1], [2]]}}
    pres = pm.graph_presentation(data)
    v, w = MWord.of(("v", None)), MWord.of(("w", None))
    assert pm.oracle_equiv(pres, v, w + w, 4, 0) == "equal"
    assert pm.oracle_equiv(pres, v, w, 4, 0) == "not-found"
    with pytest.raises(ValueError):
        pm.graph_presentation({"vertices": ["v"], "edges": [["v", "u"]], "partition": {}})
