"""Skew shift pairs (w_n, w_n*) in M_n(Q) and their finite identities.

A schedule is a finite list f_1, ..., f_m of polynomials with constant term
1.  Products F_k = f_1 ... f_k (F_0 = 1) have coefficient rows
(1, a_k1, ..., a_kN(k)), and the thresholds are
M(k) = max(M(k-1) + 1, 2 (k+1) N(k)) with M(0) = 1.  Past the given prefix
the schedule continues with f = 1, so every size n is classified.

Below M(1) the pair is the plain lower/upper shift.  For M(k) <= n < M(k+1)
the upper shift is corrected by the coefficients of F_k in the first column
and the last row, which makes 1 - w w* a rank-one idempotent supported on the
first column.
"""

import json
from dataclasses import dataclass
from functools import lru_cache

from .exact_linalg import Matrix, lower_shift, rank, rat, upper_shift
from .rational_series import RationalSeries, pdeg, pdivmod, pmul, ptrim, poly_text

PARTS = ("a", "b", "c", "d", "e", "f")


class ScheduleError(ValueError):
    pass


class SigmaSchedule:
    def __init__(self, polys, pad=True):
        clean = []
        for f in polys:
            f = ptrim(f)
            if not f or f[0] != 1:
                raise ScheduleError(f"polynomial {poly_text(f)} does not have constant term 1")
            clean.append(f)
        self.polys = tuple(clean)
        self.pad = pad
        self._F = [(rat(1),)]
        self._M = [1]

    def f(self, k):
        if k == 0:
            return (rat(1),)
        if k <= len(self.polys):
            return self.polys[k - 1]
        if self.pad:
            return (rat(1),)
        raise ScheduleError(f"schedule has only {len(self.polys)} entries")

    def F(self, k):
        while len(self._F) <= k:
            self._F.append(pmul(self._F[-1], self.f(len(self._F))))
        return self._F[k]

    def N(self, k):
        return pdeg(self.F(k))

    def coeffs(self, k):
        """(a_k1, ..., a_kN(k))."""
        return self.F(k)[1:]

    def M(self, k):
        while len(self._M) <= k:
            j = len(self._M)
            self._M.append(max(self._M[-1] + 1, 2 * (j + 1) * self.N(j)))
        return self._M[k]

    def regime(self, n):
        """The k with M(k) <= n < M(k+1), or 0 below M(1)."""
        if n < 1:
            raise ValueError("sizes start at 1")
        if not self.pad and n > self.M(len(self.polys)):
            raise ScheduleError(f"size {n} is beyond the schedule (last threshold "
                                f"{self.M(len(self.polys))})")
        k = 0
        while self.M(k + 1) <= n:
            k += 1
        return k

    def first_k(self, pred, k_min=1):
        k = k_min
        while not pred(k):
            k += 1
            if k > 10_000:
                raise ScheduleError("no threshold satisfies the condition")
        return k

    def threshold_above(self, bound, k_min=1):
        """M(k0) for the least k0 >= k_min with M(k0) > bound."""
        return self.M(self.first_k(lambda k: self.M(k) > bound, k_min))

    def divides_at(self, g):
        """Least k with g | F_k, or None when no prefix product is divisible."""
        g = ptrim(g)
        last = len(self.polys)
        for k in range(last + 1):
            if not pdivmod(self.F(k), g)[1]:
                return k
        return None

    def to_json(self):
        return [[str(c) for c in f] for f in self.polys]

    @classmethod
    def from_json(cls, data):
        if isinstance(data, str):
            data = json.loads(data)
        return cls([[rat(c) for c in f] for f in data])

    def __repr__(self):
        return "SigmaSchedule([" + ", ".join(poly_text(f) for f in self.polys) + "])"


@dataclass(frozen=True)
class SkewPair:
    n: int
    k: int
    w: Matrix
    wstar: Matrix

    @property
    def one_minus_wws(self):
        return Matrix.identity(self.n) - self.w * self.wstar

    @property
    def one_minus_wsw(self):
        return Matrix.identity(self.n) - self.wstar * self.w


def build_pair(n, sched):
    k = sched.regime(n)
    if n == 1:
        z = Matrix.zeros(1)
        return SkewPair(1, k, z, z)
    w = lower_shift(n)
    ws = upper_shift(n)
    if k >= 1:
        corr = {}
        for j, a in enumerate(sched.coeffs(k), start=1):
            if a:
                # e_{j,1} and e_{n,n-j+1}, 1-based
                corr[(j - 1, 0)] = corr.get((j - 1, 0), 0) + a
                corr[(n - 1, n - j)] = corr.get((n - 1, n - j), 0) + a
        ws = ws - Matrix.from_entries(n, n, corr)
    return SkewPair(n, k, w, ws)


class _Powers:
    """Cached powers and idempotents of one pair."""

    def __init__(self, pair):
        self.pair = pair
        self.n = pair.n
        self.I = Matrix.identity(pair.n)
        self._w = [self.I]
        self._ws = [self.I]
        self.E1 = pair.one_minus_wws
        self.E2 = pair.one_minus_wsw
        self._inv = {}

    def w(self, i):
        while len(self._w) <= i:
            self._w.append(self._w[-1] * self.pair.w)
        return self._w[i]

    def inv(self, g):
        """g(w)^-1; w is the lower shift, so this is Toeplitz in the
        coefficients of the series 1/g."""
        g = tuple(ptrim(g))
        if g not in self._inv:
            if not g or g[0] != 1:
                raise ValueError("constant term must be 1")
            b = RationalSeries((1,), g).coeffs(self.n)
            self._inv[g] = Matrix.from_entries(self.n, self.n, {
                (i, j): b[i - j] for i in range(self.n) for j in range(i + 1) if b[i - j]})
        return self._inv[g]

    def ws(self, i):
        while len(self._ws) <= i:
            self._ws.append(self._ws[-1] * self.pair.wstar)
        return self._ws[i]


@lru_cache(maxsize=4096)
def _powers(n, sched_key, sched):
    return _Powers(build_pair(n, sched))


def _pw(n, sched):
    return _powers(n, (sched.polys, sched.pad), sched)


def _least_from(holds, ns):
    """Least n in ns from which holds[n] is true to the end, or None."""
    start = None
    for n in sorted(ns, reverse=True):
        if holds[n]:
            start = n
        else:
            break
    return start


def _wn_cases(part, E):
    if part in ("c", "e"):
        return [(x, y) for y in range(E + 1) for x in range(y + 1)]
    if part in ("d", "f"):
        return [(x, y) for y in range(1, E + 1) for x in range(y)]
    return [()]


def _wn_identity(part, args, P):
    """(lhs, rhs) for one instance of a lemma part."""
    if part == "c":
        l, i = args
        return P.ws(l) * P.w(i) * P.E1, P.w(i - l) * P.E1
    if part == "d":
        i, l = args
        return P.ws(l) * P.w(i) * P.E1, Matrix.zeros(P.n)
    if part == "e":
        l, j = args
        return P.E1 * P.ws(j) * P.w(l), P.E1 * P.ws(j - l)
    if part == "f":
        j, l = args
        return P.E1 * P.ws(j) * P.w(l), Matrix.zeros(P.n)
    raise ValueError(part)


def _wn_threshold(part, args, sched):
    """Size from which the proof guarantees the identity."""
    if part in ("c", "e"):
        small, big = args
        if small == 0:
            return 1
        return sched.threshold_above(2 * big)
    if part in ("d", "f"):
        low, _ = args
        return sched.threshold_above(2 * low)
    return 1


def verify_wn_lemma(sched, parts=PARTS, exponent_bound=5, n_range=range(1, 201)):
    """Check the identities of parts (a)-(f) on every n in n_range.

    (a) w w* w = w and w* w w* = w*;
    (b) 1 - w w* and 1 - w* w are rank-one idempotents, orthogonal for n >= 2;
    (c) (w*)^l w^i (1 - w w*) = w^(i-l) (1 - w w*) for l <= i;
    (d) (w*)^l w^i (1 - w w*) = 0 for i < l;
    (e) (1 - w w*) (w*)^j w^l = (1 - w w*) (w*)^(j-l) for l <= j;
    (f) (1 - w w*) (w*)^j w^l = 0 for j < l.

    For (c)-(f) each exponent choice gets the least n from which it holds
    through the end of the range and the sufficient threshold M(k0) from the
    argument (M(k0) > 2 * exponent); the instance passes when the identity
    holds from that threshold on.
    """
    ns = list(n_range)
    report = {"schedule": sched.to_json(), "n_min": ns[0], "n_max": ns[-1], "parts": {}}
    ok_all = True
    for part in parts:
        if part not in PARTS:
            raise ValueError(f"unknown part {part!r}")
        rows = []
        for args in _wn_cases(part, exponent_bound):
            holds = {}
            for n in ns:
                P = _pw(n, sched)
                if part == "a":
                    p = P.pair
                    holds[n] = (p.w * p.wstar * p.w == p.w and p.wstar * p.w * p.wstar == p.wstar)
                elif part == "b":
                    E1, E2 = P.E1, P.E2
                    good = E1 * E1 == E1 and E2 * E2 == E2 and rank(E1) == 1 and rank(E2) == 1
                    if n >= 2:
                        good = good and (E1 * E2).is_zero() and (E2 * E1).is_zero()
                    holds[n] = good
                else:
                    lhs, rhs = _wn_identity(part, args, P)
                    holds[n] = lhs == rhs
            least = _least_from(holds, ns)
            thr = _wn_threshold(part, args, sched)
            ok = least is not None and all(holds[n] for n in ns if n >= thr)
            ok_all &= ok
            rows.append({"exponents": list(args), "holds_from": least, "threshold": thr,
                         "tight": least == thr if least is not None else None, "ok": ok})
        report["parts"][part] = rows
    report["ok"] = ok_all
    return report


def verify_stabilization(sched, i, j, n_range=range(1, 201)):
    """Least n0 with (1 - w^i w*^i)(1 - w*^j w^j) = 0 and the reverse product
    = 0 for every tested n >= n0.  The argument guarantees vanishing from
    M(k0) with M(k0) > 2 (i + j - 1)."""
    if i < 1 or j < 1:
        raise ValueError("exponents must be at least 1")
    ns = list(n_range)
    holds = {}
    for n in ns:
        P = _pw(n, sched)
        A = P.I - P.w(i) * P.ws(i)
        B = P.I - P.ws(j) * P.w(j)
        holds[n] = (A * B).is_zero() and (B * A).is_zero()
    least = _least_from(holds, ns)
    thr = sched.threshold_above(2 * (i + j - 1))
    return {
        "i": i, "j": j,
        "stabilized": least is not None,
        "index": least,
        "threshold": thr,
        "sufficient": least is not None and all(holds[n] for n in ns if n >= thr),
        "tight": least == thr if least is not None else None,
    }


# -- corner support -----------------------------------------------------------

def m1_sample(l, i, g, j):
    """Token recipe for (w*)^l w^i g(w)^-1 (1 - w w*) (w*)^j."""
    return ["w*"] * l + ["w"] * i + [("inv", tuple(g))] + ["1-ww*"] + ["w*"] * j


def m2_sample(l, i, g, j):
    """Mirror image (w*)^j (1 - w* w) g(w)^-1 w^i (w*)^l of m1_sample."""
    return ["w*"] * j + ["1-w*w"] + [("inv", tuple(g))] + ["w"] * i + ["w*"] * l


def _recipe_matrix(recipe, P, sched):
    out = P.I
    for tok in recipe:
        if tok == "w":
            m = P.pair.w
        elif tok == "w*":
            m = P.pair.wstar
        elif tok == "1-ww*":
            m = P.E1
        elif tok == "1-w*w":
            m = P.E2
        elif isinstance(tok, (tuple, list)) and tok[0] == "inv":
            m = P.inv(tok[1])
        else:
            raise ValueError(f"unknown recipe token {tok!r}")
        out = out * m
    return out


def _recipe_kind(recipe):
    has1 = "1-ww*" in recipe
    has2 = "1-w*w" in recipe
    if has1 and has2:
        return "soc"
    if has1:
        return "M1"
    if has2:
        return "M2"
    return "other"


def _upper_left(z, n):
    return all(2 * (max(i, j) + 1) < n for (i, j), _ in z.entries())


def _lower_right(z, n):
    return all(2 * (n - min(i, j)) < n for (i, j), _ in z.entries())


def recipe_threshold(recipe, sched):
    """M(k0) with k0 >= 6, M(k0) > 14 * (largest w or w* count) and every
    inverted polynomial dividing F_k0; None if some polynomial divides none."""
    nw = sum(1 for t in recipe if t == "w")
    ns = sum(1 for t in recipe if t == "w*")
    k0 = 6
    for tok in recipe:
        if isinstance(tok, (tuple, list)) and tok[0] == "inv":
            k = sched.divides_at(tok[1])
            if k is None:
                return None
            k0 = max(k0, k)
    k0 = sched.first_k(lambda k: sched.M(k) > 14 * max(nw, ns), k0)
    return sched.M(k0)


def corner_support_probe(sched, recipe, n_range=range(1, 201)):
    """Check where the entries of the element built from recipe live.

    M1 elements (containing 1 - w w*) must sit in an upper-left corner of
    size below n/2, M2 elements in a lower-right one, and elements of both
    must vanish.
    """
    kind = _recipe_kind(recipe)
    cond = {"M1": _upper_left, "M2": _lower_right,
            "soc": lambda z, n: z.is_zero(), "other": lambda z, n: True}[kind]
    ns = list(n_range)
    holds = {}
    for n in ns:
        P = _pw(n, sched)
        holds[n] = cond(_recipe_matrix(recipe, P, sched), n)
    least = _least_from(holds, ns)
    thr = recipe_threshold(recipe, sched)
    ok = least is not None and (thr is None or all(holds[n] for n in ns if n >= thr))
    return {"recipe": [t if isinstance(t, str) else ["inv", [str(c) for c in t[1]]] for t in recipe],
            "kind": kind, "holds_from": least, "threshold": thr,
            "applicable": thr is not None, "ok": ok}


# -- standard decomposition ----------------------------------------------------

def standdecom_check(a, astar, n):
    """Hypotheses and conclusions of the standard decomposition for (a, a*).

    Hypotheses: a a* a = a, a* a a* = a*, and for 1 <= i <= n both products
    of 1 - a^i a*^i and 1 - a*^i a^i vanish.  Conclusions: the range and
    source idempotents commute and form decreasing chains, and
    f_k = a^k (1 - a a*) a*^k, g_k = a*^k (1 - a* a) a^k (k < n) are pairwise
    orthogonal idempotents linked by a and a*.
    """
    size = a.rows
    I = Matrix.identity(size)
    A = [I]
    S = [I]
    for _ in range(n):
        A.append(A[-1] * a)
        S.append(S[-1] * astar)
    fail = []

    def need(cond, label):
        if not cond:
            fail.append(label)

    need(a * astar * a == a, "a a* a = a")
    need(astar * a * astar == astar, "a* a a* = a*")
    for i in range(1, n + 1):
        p = I - A[i] * S[i]
        q = I - S[i] * A[i]
        need((p * q).is_zero(), f"(1 - a^{i} a*^{i})(1 - a*^{i} a^{i}) = 0")
        need((q * p).is_zero(), f"(1 - a*^{i} a^{i})(1 - a^{i} a*^{i}) = 0")
    if fail:
        return {"hypotheses": False, "failed": fail, "ok": False}

    rng = [A[i] * S[i] for i in range(n + 1)]
    src = [S[i] * A[i] for i in range(n + 1)]
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            need(rng[i] * src[j] == src[j] * rng[i], f"[a^{i} a*^{i}, a*^{j} a^{j}] = 0")
        need(A[i] * S[i] * A[i] == A[i], f"a^{i} a*^{i} a^{i} = a^{i}")
        need(S[i] * A[i] * S[i] == S[i], f"a*^{i} a^{i} a*^{i} = a*^{i}")
        if i < n:
            need(rng[i + 1] * rng[i] == rng[i + 1] == rng[i] * rng[i + 1], f"range chain at {i}")
            need(src[i + 1] * src[i] == src[i + 1] == src[i] * src[i + 1], f"source chain at {i}")
    e1 = I - a * astar
    e2 = I - astar * a
    f = [A[k] * e1 * S[k] for k in range(n)]
    g = [S[k] * e2 * A[k] for k in range(n)]
    idem = f + g
    for x, e in enumerate(idem):
        need(e * e == e, f"idempotent {x}")
        for y in range(x + 1, len(idem)):
            need((e * idem[y]).is_zero() and (idem[y] * e).is_zero(), f"orthogonal {x},{y}")
    for j in range(n - 1):
        need(a * f[j] * astar == f[j + 1], f"a f_{j} a* = f_{j + 1}")
        need(astar * g[j] * a == g[j + 1], f"a* g_{j} a = g_{j + 1}")
    for j in range(1, n):
        need(astar * f[j] * a == f[j - 1], f"a* f_{j} a = f_{j - 1}")
        need(a * g[j] * astar == g[j - 1], f"a g_{j} a* = g_{j - 1}")
        u = f[j] * a
        need(astar * u == f[j - 1] and u * astar == f[j], f"f_{j - 1} ~ f_{j}")
        v = g[j] * astar
        need(a * v == g[j - 1] and v * a == g[j], f"g_{j - 1} ~ g_{j}")
    return {"hypotheses": True, "failed": fail, "ok": not fail}


# -- rank bookkeeping for the generator images --------------------------------

def compute_K(sched, n_max, horizon):
    """K_1 < ... < K_n_max: K_n is the least K > K_(n-1), K >= 2, with both
    products of 1 - w^i w*^i and 1 - w*^i w^i vanishing for all
    i <= n + 1 and every size t in (K, horizon]."""
    Ks = []
    prev = 1
    for n in range(1, n_max + 1):
        last_bad = 0
        for t in range(1, horizon + 1):
            P = _pw(t, sched)
            for i in range(1, n + 2):
                A = P.I - P.w(i) * P.ws(i)
                B = P.I - P.ws(i) * P.w(i)
                if not ((A * B).is_zero() and (B * A).is_zero()):
                    last_bad = t
                    break
        K = max(prev + 1, 2, last_bad)
        if K >= horizon:
            raise ScheduleError(f"K_{n} does not settle below the horizon {horizon}")
        Ks.append(K)
        prev = K
    return Ks


def _g_rank(n, t, Ks):
    """rank of (g_n)_t for the diagonal choice e_22 + ... + e_(t-n),(t-n)."""
    if n >= 1 and n + 1 <= t <= Ks[n - 1]:
        return t - n - 1
    return 0


def g_component(n, t, Ks):
    m = _g_rank(n, t, Ks)
    return Matrix(t, t, {r: {r: 1} for r in range(1, 1 + m)})


def tau_rank_identities(sched, n_max=4, horizon=None):
    """Verify the rank identities behind the generator images, size by size.

    In each size t an idempotent class is its rank, so a relation between the
    images holds in the product exactly when it holds for the ranks in every
    size t.  Images (rank in size t):
      a_n -> p_n = e_11 in size n only
      x_0 -> w w* (equivalently w* w), y_0 -> 1 - w w*, z_0 -> 1 - w* w
      x_n -> (g_n)_t for t <= K_n, w^(n+1) w*^(n+1) beyond
      y_n -> p_t for n+1 <= t <= K_n, w^n w*^n - w^(n+1) w*^(n+1) beyond
      z_n -> the same with w* w in place of w w*.
    """
    if horizon is None:
        horizon = 4 * sched.M(n_max + 2)
    Ks = compute_K(sched, n_max, horizon)
    checks = []
    bad = []

    def record(label, ok, detail=None):
        checks.append(label)
        if not ok:
            bad.append({"check": label, "detail": detail})

    rk_cache = {}

    def rk(t, key, build):
        if (t, key) not in rk_cache:
            m = build()
            if m * m != m:
                bad.append({"check": f"idempotent {key} at t={t}", "detail": None})
            rk_cache[(t, key)] = rank(m)
        return rk_cache[(t, key)]

    def R(t, i):  # rank of w^i w*^i
        P = _pw(t, sched)
        return rk(t, ("R", i), lambda: P.w(i) * P.ws(i))

    def S(t, i):  # rank of w*^i w^i
        P = _pw(t, sched)
        return rk(t, ("S", i), lambda: P.ws(i) * P.w(i))

    def Rd(t, i):
        P = _pw(t, sched)
        return rk(t, ("Rd", i), lambda: P.w(i) * P.ws(i) - P.w(i + 1) * P.ws(i + 1))

    def Sd(t, i):
        P = _pw(t, sched)
        return rk(t, ("Sd", i), lambda: P.ws(i) * P.w(i) - P.ws(i + 1) * P.w(i + 1))

    def x_img(n, t):
        if n == 0:
            return R(t, 1)
        return _g_rank(n, t, Ks) if t <= Ks[n - 1] else R(t, n + 1)

    def x_img_src(n, t):
        if n == 0:
            return S(t, 1)
        return _g_rank(n, t, Ks) if t <= Ks[n - 1] else S(t, n + 1)

    def y_img(n, t, diff):
        if n == 0:
            return t - R(t, 1) if diff is Rd else t - S(t, 1)
        if t <= Ks[n - 1]:
            return 1 if t >= n + 1 else 0
        return diff(t, n)

    def a_img(n, t):
        return 1 if t == n else 0

    ts = range(1, horizon + 1)
    for n in range(0, n_max + 1):
        for t in ts:
            if n == 0:
                record(f"x0 = [ww*] = [w*w] at t={t}", R(t, 1) == S(t, 1))
                record(f"x0 + y0 = 1 at t={t}", x_img(0, t) + y_img(0, t, Rd) == t)
                record(f"x0 + z0 = 1 at t={t}", x_img(0, t) + y_img(0, t, Sd) == t)
                continue
            record(f"x{n} images agree at t={t}", x_img(n, t) == x_img_src(n, t))
            record(f"x{n} + y{n} = x{n - 1} at t={t}",
                   x_img(n, t) + y_img(n, t, Rd) == x_img(n - 1, t),
                   [x_img(n, t), y_img(n, t, Rd), x_img(n - 1, t)])
            record(f"x{n} + z{n} = x{n - 1} at t={t}",
                   x_img_src(n, t) + y_img(n, t, Sd) == x_img_src(n - 1, t))
            record(f"y{n} + a{n} = y{n - 1} at t={t}",
                   y_img(n, t, Rd) + a_img(n, t) == y_img(n - 1, t, Rd))
            record(f"z{n} + a{n} = z{n - 1} at t={t}",
                   y_img(n, t, Sd) + a_img(n, t) == y_img(n - 1, t, Sd))
        if n == 0:
            continue
        K = Ks[n - 1]
        for t in range(K + 1, horizon + 1):
            for i in range(0, n + 1):
                record(f"rank(w^{i}w*^{i} - w^{i + 1}w*^{i + 1}) = 1 at t={t}", Rd(t, i) == 1)
                record(f"rank(w*^{i}w^{i} - w*^{i + 1}w^{i + 1}) = 1 at t={t}", Sd(t, i) == 1)
            record(f"rank(1 - w^{n + 1}w*^{n + 1}) = {n + 1} at t={t}", t - R(t, n + 1) == n + 1)
            record(f"rank(1 - w*^{n + 1}w^{n + 1}) = {n + 1} at t={t}", t - S(t, n + 1) == n + 1)
            record(f"rank(w^{n + 1}w*^{n + 1}) = t-{n + 1} at t={t}", R(t, n + 1) == t - n - 1)
        for t in range(n + 1, K + 1):
            g = g_component(n, t, Ks)
            p = Matrix.unit(t, 0, 0)
            pg = p + g
            record(f"p + g{n} idempotent at t={t}", pg * pg == pg and (p * g).is_zero())
            r = rank(pg)
            record(f"rank(p + g{n}) = t-{n} at t={t}", r == t - n)
            if n == 1:
                record(f"rank(p + g1) = rank(ww*) at t={t}", r == R(t, 1))
            elif t <= Ks[n - 2]:
                record(f"rank(p + g{n}) = rank(g{n - 1}) at t={t}", r == _g_rank(n - 1, t, Ks))
            else:
                record(f"rank(p + g{n}) = rank(w^{n}w*^{n}) at t={t}", r == R(t, n))
    return {"K": Ks[:n_max], "horizon": horizon, "checks": len(checks),
            "failures": bad[:20], "ok": not bad}
