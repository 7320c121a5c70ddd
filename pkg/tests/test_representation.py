import random

import pytest
from hypothesis import given, settings, strategies as st

from fimrank import free_inverse_monoid as fim
from fimrank import representation as rep
from fimrank import semigroup_algebra as alg
from fimrank.exact_linalg import Matrix, rat
from oracles import gauss_rank, walk_matrix


@settings(max_examples=150, deadline=None)
@given(st.text(alphabet="sS", max_size=8), st.integers(0, 7))
def test_triple_matrix_matches_shift_products(word, n):
    t = fim.evaluate(word)
    assert rep.triple_matrix(t, n).to_dense() == walk_matrix(word, n)


def random_elem(rng, terms=4, length=5):
    out = alg.ZERO
    for _ in range(rng.randint(1, terms)):
        w = "".join(rng.choice("sS") for _ in range(rng.randint(0, length)))
        out = out + alg.AlgebraElem.of(fim.evaluate(w), rng.randint(-2, 2))
    return out


def test_rank_sequence_matches_fraction_elimination():
    rng = random.Random(7)
    for _ in range(40):
        a = random_elem(rng)
        r = rep.represent(a, 9)
        assert rep.rank_sequence(r) == [gauss_rank(c.to_dense()) for c in r.comps]


def test_row_growth_bounds_rank_jumps():
    rng = random.Random(11)
    for _ in range(200):
        a = random_elem(rng)
        ranks = rep.rank_sequence(rep.represent(a, 30))
        c = rep.row_growth(a)
        assert all(abs(ranks[n + 1] - ranks[n]) <= c for n in range(30))


def test_consecutive_components_differ_in_growth_rows():
    rng = random.Random(5)
    for _ in range(50):
        a = random_elem(rng)
        lows = {t.lo for t in a.terms}
        for n in range(1, 12):
            big = rep.represent(a, n + 1).comps[n + 1]
            small = rep.represent(a, n).comps[n]
            padded = Matrix.from_entries(n + 2, n + 2, dict(small.entries()))
            diff_rows = {i for (i, j), _ in (big - padded).entries()}
            assert diff_rows <= {n + 1 + lo for lo in lows}


def test_growth_tail_encloses_true_tail():
    rng = random.Random(3)
    for _ in range(40):
        a = random_elem(rng)
        T = 12
        ranks = rep.rank_sequence(rep.represent(a, 60))
        lo, hi = rep.growth_tail(ranks[T], T, rep.row_growth(a))
        seen = sum((ranks[n] * rep.weight(n) for n in range(T + 1, 61)), rat(0))
        # beyond 60 the remaining weight is at most tail_bound(60)
        assert lo <= seen + rep.tail_bound(60) and seen <= hi


@pytest.mark.parametrize("a, want", [
    (alg.s_star * alg.s, "1/2"),
    (alg.s * alg.s_star, "1/2"),
    (alg.ONE, "1"),
    (alg.ZERO, "0"),
    (alg.s, "1/2"),
    (alg.s + alg.s_star, "2/3"),
    (alg.h_proj(2), "3/16"),
    (alg.q_proj(1, 1), "1/16"),
])
def test_exact_ranks(a, want):
    res = rep.algebra_rank(a, 64)
    assert res.exact == rat(want)
    assert res.lower <= res.exact <= res.upper
    plain = rep.vn_rank(rep.represent(a, 32))
    assert plain.exact == rat(want)


def test_headline_width():
    res = rep.algebra_rank(alg.s + alg.s_star, 64)
    assert res.width < rat(1) / 2 ** 60
    assert rep.vn_rank(rep.represent(alg.s + alg.s_star, 64)).width == rep.tail_bound(64)


def test_pattern_rejected_outside_enclosure():
    # a sequence that looks periodic early then changes is not certified by the pattern
    ranks = [n + 1 if n < 40 else 0 for n in range(41)]
    res = rep.vn_rank(ranks)
    assert res.exact is None or res.partial <= res.exact <= res.partial + res.tail


def test_localize_and_adjoint_inverse():
    T = 12
    for f in [(1, -1), (1, 2, 3), (1, 0, -1)]:
        one = rep.TruncatedRep.identity(T)
        assert rep.poly_rep(f, T) * rep.localize_inverse(f, T) == one
        assert rep.poly_rep(f, T, adjoint=True) * rep.adjoint_inverse(f, T) == one
    with pytest.raises(ValueError):
        rep.localize_inverse((2, 1), T)


@pytest.mark.parametrize("f", [(1, -1), (1, 1), (1, 0, 1), (1, -1, 1), (1, 2), (1, -2, 1),
                               (1, 0, 0, 1), (1, 3, -2), (1, 1, 1, 1), (1, rat("1/2"), 0, rat("-1/3"))])
def test_inverse_formula(f):
    r = rep.verify_inverse_formula(f, 32)
    assert r["ok"] and r["agree_from"] <= r["degree"]


def test_basis_probe_and_monomials():
    samples = [(0, 0, 0, (1, -1)), (1, 2, 0, (1, 1)), (2, 0, 3, (1, 0, 1))]
    assert rep.basis_independence_probe(samples, 10)["ok"]
    m = rep.monomial_independence(3, 8)
    assert m["rank"] == m["count"]


def test_singular_inverse():
    with pytest.raises(rep.SingularComponentError):
        rep.shift_rep(3).inv()


def test_represent_matrix_blocks():
    grid = [[alg.s, alg.ZERO], [alg.ZERO, alg.s_star]]
    r = rep.represent_matrix(grid, 5)
    assert r.d == 2
    assert rep.rank_sequence(r) == [2 * n for n in range(6)]
