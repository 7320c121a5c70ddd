"""One test per acceptance criterion; each prints a single PASS/FAIL line."""

import random

from acceptance_log import Criterion

from fimrank import closure_calculus as cc
from fimrank import free_inverse_monoid as fim
from fimrank import lamplighter as lamp
from fimrank import presented_monoid as pm
from fimrank import rational_series as rs
from fimrank import representation as rep
from fimrank import semigroup_algebra as alg
from fimrank import skew_construction as sk
from fimrank import suites
from fimrank.exact_linalg import is_dyadic, rat
from fimrank.expr_parser import parse_expression

TWO_TO_MINUS_60 = rat(1) / 2 ** 60


def test_01_headline_rank():
    with Criterion(1, "rank of s + s* is exactly 2/3 with width < 2^-60 at T = 64", 10) as c:
        res = rep.algebra_rank(alg.s + alg.s_star, 64)
        c.check(res.exact == rat("2/3"), "exact value 2/3")
        c.check(res.width < TWO_TO_MINUS_60, "enclosure width below 2^-60")
        c.check(res.lower <= res.exact <= res.upper, "value inside the enclosure")
        # the same number through the expression route
        via_text = cc.expression_rank(parse_expression("s + adj(s)"), 64)
        c.check(via_text.exact == res.exact and via_text.width == res.width, "parser route agrees")
    c.verdict()


def test_02_example_decomposition():
    with Criterion(2, "decomposition of s + s*: alpha, beta identities and ranks 1/2, 1/6", 30) as c:
        r = cc.example_suite_s_plus_sstar(32)
        for chk in r["checks"]:
            c.check(chk["ok"], chk["check"])
        exact = {chk["check"]: chk.get("exact") for chk in r["checks"]}
        c.check(exact.get("rank of s*s") == "1/2", "rank(s*s) = 1/2")
        c.check(exact.get("rank of g2(1-s*s)ss*") == "1/6", "rank(g2(1-s*s)ss*) = 1/6")
    c.verdict()


def test_03_trace_table():
    with Criterion(3, "lamplighter traces of q(i,j), h_n match closed forms and weighted ranks", 30) as c:
        r = lamp.verify_embedding_suite(bound=10, h_bound=12)
        c.check(r["ok"], "embedding suite")
        for total in range(11):
            for i in range(total + 1):
                q = alg.q_proj(i, total - i)
                tr = lamp.trace(lamp.embed_A(q))
                want = rat(1) / 2 ** (total + 2)
                c.check(tr == want, f"trace q({i},{total - i})")
                c.check(rep.vn_rank(rep.represent(q, 32)).exact == tr, f"rank q({i},{total - i})")
        for n in range(13):
            h = alg.h_proj(n)
            tr = sum((cf * lamp.trace_of_triple(t) for t, cf in h.terms.items()), rat(0))
            c.check(tr == rat(n + 1) / 2 ** (n + 2), f"trace h_{n}")
            c.check(rep.vn_rank(rep.represent(h, 32)).exact == tr, f"rank h_{n}")
    c.verdict()


def test_04_equivalence_identities():
    with Criterion(4, "corner identities and u v = v u = 1 in every component n <= 64", 10) as c:
        r = cc.verify_equivalence_identities(64)
        for chk in r["checks"]:
            c.check(chk["ok"], chk["check"])
    c.verdict()


def test_05_hadamard_identity():
    with Criterion(5, "Hadamard corner identity and its mirror for 10 series pairs at T = 32", 60) as c:
        families = {"1 + 2x - x^3", "1 - x + 3x^2", "2 + x", "1/(1-x)", "1/(1-2x)", "1/(1-x^2)"}
        c.check(len(suites.HADAMARD_PAIRS) == 10, "ten pairs")
        for a, b in suites.HADAMARD_PAIRS:
            c.check(a in families and b in families, f"pair {a}, {b} drawn from the families")
            r = cc.verify_hadamard_identity(rs.parse_series(a), rs.parse_series(b), 32)
            c.check(r["ok"], f"pair {a}, {b}")
    c.verdict()


def test_06_adjoint_inverse():
    with Criterion(6, "adjoint-inverse congruence on components m >= deg f for 10 f at T = 32", 60) as c:
        c.check(len(suites.INVERSE_FORMULA_POLYS) == 10, "ten polynomials")
        for f in suites.INVERSE_FORMULA_POLYS:
            r = rep.verify_inverse_formula(f, 32)
            c.check(r["agree_from"] <= r["degree"], f"f = {r['f']}")
    c.verdict()


def test_07_monoid_oracle():
    with Criterion(7, "canonical forms agree with the bounded oracle (size 6, index 4; bounds 12, 6)", 600) as c:
        r = pm.oracle_agreement(max_size=6, max_index=4, oracle_size=12, oracle_index=6)
        c.check(not r["violations"], "zero disagreements")
        c.check(r["ok"], "agreement report")
        c.check(r["components"] == r["canonical_classes"], "every canonical class is one component")
    c.verdict()


def test_08_free_inverse_monoid():
    with Criterion(8, "walk triples match the letter walk (len <= 10) and the rewriting partition (len <= 8)", 60) as c:
        r = suites.free_inverse_monoid(suites.SuiteOptions())
        c.check(not r["mismatches"], "walk oracle")
        c.check(not r["labels_with_several_triples"], "no rewriting class splits")
        c.check(not r["triples_with_several_labels"], "no triple spans two classes")
        c.check(r["words_checked"] == 2 ** 11 - 1, "all words of length <= 10")
    c.verdict()


def test_09_faithfulness():
    with Criterion(9, "images of s^k s*^l s^m with l <= 6 independent at T = 16", 60) as c:
        r = rep.monomial_independence(6, 16)
        c.check(r["count"] == sum((l + 1) ** 2 for l in range(7)), "all normal words")
        c.check(r["rank"] == r["count"], "full rank")
    c.verdict()


def test_10_skew_suite():
    with Criterion(10, "skew lemma (a)-(f), exponents <= 5, and stabilization i,j <= 4 for n <= 200", 300) as c:
        for sched in suites.DEFAULT_SCHEDULES:
            r = sk.verify_wn_lemma(sched, exponent_bound=5, n_range=range(1, 201))
            for part, rows in r["parts"].items():
                c.check(all(row["ok"] for row in rows), f"{sched!r} part {part}")
            for i in range(1, 5):
                for j in range(1, 5):
                    st = sk.verify_stabilization(sched, i, j, range(1, 201))
                    c.check(st["stabilized"], f"{sched!r} stabilizes for ({i},{j})")
                    c.check(st["sufficient"], f"{sched!r} threshold sufficient for ({i},{j})")
    c.verdict()


def test_11_tau_ranks():
    with Criterion(11, "rank identities of the generator images with schedule {1+x}, n <= 4", 120) as c:
        r = sk.tau_rank_identities(sk.SigmaSchedule([(1, 1)]), n_max=4)
        c.check(len(r["K"]) == 4, "K_1..K_4 computed")
        c.check(r["ok"], f"{r['checks']} rank checks")
    c.verdict()


def test_12_rational_series():
    with Criterion(12, "Hadamard products, certified zero set of 1/(1-x^2), quasi-inverse axioms", 60) as c:
        rng = random.Random(12)
        for k in range(20):
            pair = []
            for _ in range(2):
                d = rng.randint(1, 4)
                den = [1] + [rng.randint(-3, 3) for _ in range(d - 1)] + [rng.choice([-2, -1, 1, 2])]
                num = [rng.randint(-3, 3) for _ in range(rng.randint(1, d))]
                pair.append(rs.RationalSeries(num, den))
            a, b = pair
            h = rs.hadamard(a, b)
            c.check(all(h.coeff(n) == a.coeff(n) * b.coeff(n) for n in range(100)), f"pair {k}")
        zs = rs.zero_set(rs.parse_series("1/(1-x^2)"))
        c.check(zs.members(200) == list(range(1, 200, 2)), "zeros are the odd indices")
        c.check(zs.period == 2 and zs.residues == frozenset({1}) and not zs.finite, "quasi-periodic form")
        c.check(zs.certificate["zero_classes"][1]["consecutive_zeros_checked"] >= zs.certificate["recurrence_order"],
                "recurrence certificate for the zero class")
        c.check(rs.nonzero_fully_certified(zs), "mod-p certificate for the nonzero class")
        samples = ["1/(1-x^2)", "x/(1-x^2)", "1/(1-x-x^2)", "(1-x)/(1-x^3)", "x^3/(1-2x)",
                   "1 + x", "(1 + x)/(1 - x^4)", "1/(1-x)^2", "x^2 - x^5", "(3 - x)/(1 - x^2)"]
        for text in samples:
            p = rs.QFraction(rs.parse_series(text))
            q = rs.q_quasi_inverse(p)
            c.check(rs.q_equal(rs.q_mul(rs.q_mul(p, q), p), p), f"p q p = p for {text}")
            c.check(rs.q_equal(rs.q_mul(rs.q_mul(q, p), q), q), f"q p q = q for {text}")
    c.verdict()


def test_13_idempotent_ranks():
    with Criterion(13, "catalog idempotents have dyadic exact ranks; psi-projections rational", 60) as c:
        catalog = lamp.projection_catalog(6) + suites.tau_image_catalog(6)
        for name, e in catalog:
            c.check(e * e == e, f"{name} idempotent")
            res = rep.vn_rank(rep.represent(e, 32))
            c.check(res.exact is not None and is_dyadic(res.exact), f"{name} dyadic")
        tau = suites.tau_image_catalog(6)
        for k, (name, e) in enumerate(tau):
            n, slot = divmod(k, 4)
            want = rat(1) / 2 ** (n + 1 + (slot == 3))
            c.check(rep.vn_rank(rep.represent(e, 32)).exact == want, f"rank {name}")
        r = cc.psi_idempotent_ranks(suites.PSI_IDEMPOTENTS, 32)
        for row in r["results"]:
            c.check(row["ok"] and row["central"] is not None and row["corner"] is not None,
                    f"psi({row['series']})")
    c.verdict()


if __name__ == "__main__":
    import sys

    failures = 0
    for name, fn in sorted(globals().items()):
        if name.startswith("test_") and callable(fn):
            try:
                fn()
            except AssertionError:
                failures += 1
    sys.exit(1 if failures else 0)
