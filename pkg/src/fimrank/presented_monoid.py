"""Finitely presented commutative monoids, with fast canonical forms for the
monoid M (generators x_n, y_n, z_n, a_n) and its quotient Mbar.

Words are multisets of symbols ``(name, index)``.  The generic oracle explores
the congruence graph of a presentation breadth first inside explicit size and
index bounds; it is independent of the canonical-form code and is used to
audit it.
"""

from collections import Counter, deque
from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from .exact_linalg import rat

__all__ = [
    "MWord", "MonoidPresentation", "CanonicalM", "CanonicalMbar",
    "presentation_M", "presentation_M0", "presentation_Mbar", "graph_presentation",
    "canonicalize_M", "equals_M", "add_M", "state_value", "mbar_project",
    "oracle_equiv", "oracle_agreement", "congruence_invariant", "le_bounded", "refine_bounded",
    "property_battery_M", "OracleResourceError", "word", "parse_word",
]


class OracleResourceError(RuntimeError):
    """The oracle visited more states than it was allowed to."""


class MWord:
    """A finite multiset of generator symbols, written additively."""

    __slots__ = ("_items",)

    def __init__(self, counts=None):
        clean = {}
        for sym, m in dict(counts or {}).items():
            if m < 0:
                raise ValueError(f"negative multiplicity for {sym}")
            if m:
                clean[_sym(sym)] = int(m)
        self._items = tuple(sorted(clean.items(), key=lambda kv: _sort_key(kv[0])))

    @classmethod
    def of(cls, *syms):
        return cls(Counter(_sym(s) for s in syms))

    @property
    def counts(self):
        return dict(self._items)

    def size(self):
        return sum(m for _, m in self._items)

    def max_index(self):
        return max((s[1] for s, _ in self._items if s[1] is not None), default=0)

    def __add__(self, other):
        c = Counter(self.counts)
        c.update(other.counts)
        return MWord(c)

    def __rmul__(self, k):
        return MWord({s: k * m for s, m in self._items})

    def __eq__(self, other):
        return isinstance(other, MWord) and self._items == other._items

    def __hash__(self):
        return hash(self._items)

    def __bool__(self):
        return bool(self._items)

    def __iter__(self):
        return iter(self._items)

    def __str__(self):
        if not self._items:
            return "0"
        parts = []
        for (name, idx), m in self._items:
            g = name if idx is None else f"{name}{idx}"
            parts.append(g if m == 1 else f"{m}{g}")
        return " + ".join(parts)

    __repr__ = __str__

    def to_json(self):
        return [[name, idx, m] for (name, idx), m in self._items]

    @classmethod
    def from_json(cls, data):
        c = Counter()
        for name, idx, m in data:
            c[(str(name), None if idx is None else int(idx))] += int(m)
        return cls(c)


def _sym(s):
    if isinstance(s, str):
        return parse_word(s)._items[0][0]
    name, idx = s
    return (str(name), None if idx is None else int(idx))


def _sort_key(sym):
    name, idx = sym
    return (name, -1 if idx is None else idx)


def parse_word(text):
    """Parse words like ``"x0 + 2y3 + a1"``; ``"0"`` is the empty word."""
    text = text.strip()
    c = Counter()
    if text in ("", "0"):
        return MWord()
    for part in text.split("+"):
        part = part.strip()
        i = 0
        while i < len(part) and part[i].isdigit():
            i += 1
        mult = int(part[:i]) if i else 1
        rest = part[i:]
        j = len(rest)
        while j > 0 and rest[j - 1].isdigit():
            j -= 1
        name, idx = rest[:j], rest[j:]
        if not name:
            raise ValueError(f"bad generator {part!r}")
        c[(name, int(idx) if idx else None)] += mult
    return MWord(c)


def word(*parts):
    """word("x0", "y0") or word("x0 + y0")."""
    out = MWord()
    for p in parts:
        out = out + parse_word(p)
    return out


# -- presentations ----------------------------------------------------------

@dataclass(frozen=True)
class MonoidPresentation:
    generators: tuple
    relations: tuple  # pairs of MWords
    index_bound: int = 0

    def __post_init__(self):
        gens = set(self.generators)
        for lhs, rhs in self.relations:
            for w in (lhs, rhs):
                for sym, _ in w:
                    if sym not in gens:
                        raise ValueError(f"relation uses unknown generator {sym}")
                    if sym[1] is not None and sym[1] > self.index_bound:
                        raise ValueError(f"relation exceeds index bound: {sym}")


def _g(name, idx):
    return (name, idx)


def presentation_M(index_bound):
    gens = [_g("x", 0), _g("y", 0), _g("z", 0)]
    rels = [(word("x0 + y0"), word("x0 + z0"))]
    for l in range(index_bound):
        n = l + 1
        gens += [_g("a", n), _g("x", n), _g("y", n), _g("z", n)]
        rels += [
            (MWord.of(("y", l)), MWord.of(("y", n), ("a", n))),
            (MWord.of(("z", l)), MWord.of(("z", n), ("a", n))),
            (MWord.of(("x", l)), MWord.of(("x", n), ("y", n))),
            (MWord.of(("x", l)), MWord.of(("x", n), ("z", n))),
        ]
    return MonoidPresentation(tuple(gens), tuple(rels), index_bound)


def presentation_M0():
    return MonoidPresentation((_g("x", 0), _g("y", 0), _g("z", 0)),
                              ((word("x0 + y0"), word("x0 + z0")),), 0)


def presentation_Mbar(index_bound):
    """Reduced generators x_n (n <= index_bound), y = y0, z = z0."""
    gens = [_g("x", 0), _g("y", 0), _g("z", 0)]
    rels = [(word("x0 + y0"), word("x0 + z0"))]
    for l in range(index_bound):
        n = l + 1
        gens.append(_g("x", n))
        rels += [
            (MWord.of(("x", l)), MWord.of(("x", n), ("y", 0))),
            (MWord.of(("x", l)), MWord.of(("x", n), ("z", 0))),
        ]
    return MonoidPresentation(tuple(gens), tuple(rels), index_bound)


def graph_presentation(data):
    """Graph monoid of a finitely separated graph.

    ``data`` = {"vertices": [...], "edges": [[source, range], ...],
    "partition": {vertex: [[edge id, ...], ...]}}.  One relation
    v = sum of r(e) over e in X for every group X at v.
    """
    verts = [str(v) for v in data["vertices"]]
    edges = [(str(s), str(r)) for s, r in data["edges"]]
    vset = set(verts)
    for s, r in edges:
        if s not in vset or r not in vset:
            raise ValueError(f"edge ({s}, {r}) uses an unknown vertex")
    rels = []
    for v, groups in data.get("partition", {}).items():
        v = str(v)
        seen = set()
        for grp in groups:
            if not grp:
                raise ValueError("partition groups must be nonempty")
            c = Counter()
            for e in grp:
                s, r = edges[int(e)]
                if s != v:
                    raise ValueError(f"edge {e} does not start at {v}")
                if e in seen:
                    raise ValueError(f"edge {e} appears in two groups")
                seen.add(e)
                c[(r, None)] += 1
            rels.append((MWord({(v, None): 1}), MWord(c)))
        out_edges = {i for i, (s, _) in enumerate(edges) if s == v}
        if seen != out_edges:
            raise ValueError(f"partition at {v} does not cover its edges")
    return MonoidPresentation(tuple((v, None) for v in verts), tuple(rels), 0)


# -- the generic oracle -----------------------------------------------------

class _Graph:
    """Relations compiled to count-vector moves."""

    def __init__(self, pres, max_index):
        gens = [g for g in pres.generators if g[1] is None or g[1] <= max_index]
        self.index = {g: i for i, g in enumerate(gens)}
        self.size = len(gens)
        moves = []
        for lhs, rhs in pres.relations:
            if not all(s in self.index for w in (lhs, rhs) for s, _ in w):
                continue
            a = [(self.index[s], m) for s, m in lhs]
            b = [(self.index[s], m) for s, m in rhs]
            moves.append((a, b, rhs.size() - lhs.size()))
            moves.append((b, a, lhs.size() - rhs.size()))
        self.moves = moves

    def encode(self, w):
        v = [0] * self.size
        for s, m in w:
            if s not in self.index:
                return None
            v[self.index[s]] += m
        return tuple(v)

    def neighbours(self, state, size, max_size):
        for take, give, delta in self.moves:
            if size + delta > max_size:
                continue
            if all(state[i] >= m for i, m in take):
                v = list(state)
                for i, m in take:
                    v[i] -= m
                for i, m in give:
                    v[i] += m
                yield tuple(v), size + delta


def oracle_equiv(pres, w1, w2, max_size, max_index, max_states=2_000_000):
    """Return "equal" or "not-found" by breadth-first search.

    "equal" is a proof.  "not-found" only says no chain of relations through
    words of size <= max_size and index <= max_index connects the two words.
    """
    if max_size <= 0 or max_index < 0:
        raise ValueError("bounds must be positive")
    if w1 == w2:
        return "equal"
    g = _Graph(pres, max_index)
    a, b = g.encode(w1), g.encode(w2)
    if a is None or b is None or max(w1.size(), w2.size()) > max_size:
        return "not-found"
    seen = {a}
    queue = deque([(a, w1.size())])
    while queue:
        st, sz = queue.popleft()
        for nxt, nsz in g.neighbours(st, sz, max_size):
            if nxt == b:
                return "equal"
            if nxt not in seen:
                seen.add(nxt)
                if len(seen) > max_states:
                    raise OracleResourceError(f"more than {max_states} states")
                queue.append((nxt, nsz))
    return "not-found"


def _all_words(gens, max_size):
    gens = list(gens)
    for size in range(max_size + 1):
        for combo in _multisets(len(gens), size):
            yield MWord({gens[i]: m for i, m in combo})


def _multisets(n, size, start=0):
    """Sparse multisets of {start..n-1} of the given size, as (index, mult)."""
    if size == 0:
        yield ()
        return
    for i in range(start, n):
        for m in range(size, 0, -1):
            for rest in _multisets(n, size - m, i + 1):
                yield ((i, m),) + rest


def congruence_invariant(w):
    """A cheap invariant of the congruence of M, independent of canonical forms.

    The first part is the image in the Grothendieck group, written in the
    free basis x0, y0, y1, ...: x_n -> x0 - y1 - ... - yn, y_n and z_n -> y_n,
    a_n -> y_{n-1} - y_n.  The second part records whether some x occurs and,
    when none does, the numbers of y's and z's; only the y/z splitting
    relations act on x-free words and they keep both counts.
    """
    top = max((i for (_, i), _ in w), default=0)
    v = [0] * (top + 2)
    has_x, ny, nz = False, 0, 0
    for (name, i), m in w:
        if name == "x":
            has_x = True
            v[0] += m
            for k in range(1, i + 1):
                v[1 + k] -= m
        elif name == "a":
            v[i] += m
            v[1 + i] -= m
        else:
            v[1 + i] += m
            if name == "y":
                ny += m
            else:
                nz += m
    while len(v) > 1 and v[-1] == 0:
        v.pop()
    return tuple(v), (True,) if has_x else (False, ny, nz)


def _check_invariant(pres):
    for lhs, rhs in pres.relations:
        g1, j1 = congruence_invariant(lhs)
        g2, j2 = congruence_invariant(rhs)
        if g1 != g2 or j1[0] != j2[0] or (not j1[0] and j1 != j2):
            raise AssertionError(f"relation {lhs} = {rhs} breaks the invariant")


def oracle_agreement(max_size=6, max_index=4, oracle_size=12, oracle_index=6,
                     max_states=20_000_000):
    """Compare equals_M with the bounded oracle on every small word of M.

    The words of size <= max_size and index <= max_index are split into the
    connected components of the congruence graph restricted to words of size
    <= oracle_size and index <= oracle_index; two words are oracle-equal
    exactly when they share a component.  The canonical form must be constant
    on each component.

    Each search stops once it has reached every start word with the same
    congruence_invariant, since no edge changes the invariant.  Otherwise it
    runs until its component is exhausted, so the components are exact.
    """
    pres = presentation_M(oracle_index)
    _check_invariant(pres)
    g = _Graph(pres, oracle_index)
    small = [s for s in pres.generators if s[1] <= max_index]
    by_inv = {}
    words = 0
    for w in _all_words(small, max_size):
        words += 1
        by_inv.setdefault(congruence_invariant(w), []).append(w)
    explored = 0
    components = []
    for members in by_inv.values():
        todo = {g.encode(w): w for w in members}
        while todo:
            st, w = next(iter(todo.items()))
            found = [w]
            del todo[st]
            seen = {st}
            # smallest words first: every target has size <= max_size
            buckets = [[] for _ in range(oracle_size + 1)]
            buckets[w.size()].append(st)
            low = w.size()
            while todo:
                while low <= oracle_size and not buckets[low]:
                    low += 1
                if low > oracle_size:
                    break
                cur = buckets[low].pop()
                for nxt, nsz in g.neighbours(cur, low, oracle_size):
                    if nxt in seen:
                        continue
                    seen.add(nxt)
                    buckets[nsz].append(nxt)
                    low = min(low, nsz)
                    hit = todo.pop(nxt, None)
                    if hit is not None:
                        found.append(hit)
                if len(seen) > max_states:
                    raise OracleResourceError(f"more than {max_states} states")
            explored += len(seen)
            components.append(found)
    violations = []
    canon_classes = {}
    resolved = 0
    for k, comp in enumerate(components):
        forms = {canonicalize_M(w) for w in comp}
        resolved += len(comp) * (len(comp) - 1) // 2
        if len(forms) > 1 and len(violations) < 20:
            violations.append([str(w) for w in comp[:4]])
        for c in forms:
            canon_classes.setdefault(c, []).append(k)
    split = sum(1 for ks in canon_classes.values() if len(ks) > 1)
    return {
        "words": words,
        "states_explored": explored,
        "components": len(components),
        "canonical_classes": len(canon_classes),
        "equal_pairs_resolved": resolved,
        "canonical_classes_not_connected": split,
        "violations": violations,
        "ok": not violations,
    }


# -- canonical forms for M --------------------------------------------------

@dataclass(frozen=True, order=True)
class CanonicalM:
    N: int
    p: int
    q: int
    r: int
    alpha: tuple = ()  # sorted (index, multiplicity) pairs

    def __post_init__(self):
        if min(self.N, self.p, self.q, self.r) < 0:
            raise ValueError("negative entry")

    @property
    def a(self):
        return dict(self.alpha)

    def to_word(self):
        c = Counter()
        if self.p:
            c[("x", self.N)] = self.p
        if self.q:
            c[("y", self.N)] = self.q
        if self.r:
            c[("z", self.N)] = self.r
        for i, m in self.alpha:
            c[("a", i)] += m
        return MWord(c)

    def __str__(self):
        return f"(N={self.N}, p={self.p}, q={self.q}, r={self.r}, a={self.a})"

    def to_json(self):
        return {"N": self.N, "p": self.p, "q": self.q, "r": self.r,
                "alpha": [[i, m] for i, m in self.alpha]}


_ZERO_M = CanonicalM(0, 0, 0, 0, ())


def _check_M_word(w):
    for (name, idx), _ in w:
        if name not in "xyza" or len(name) != 1 or idx is None:
            raise ValueError(f"not a generator of M: {name}{idx}")
        if name == "a" and idx < 1:
            raise ValueError("a-generators start at index 1")


def _raised(w, N):
    """Counts (p, q, r, alpha) of w rewritten at level N >= every x/y/z index."""
    X, Y, Z = Counter(), Counter(), Counter()
    alpha = Counter()
    for (name, idx), m in w:
        {"x": X, "y": Y, "z": Z, "a": alpha}[name][idx] += m
    for l in range(N):
        if X[l]:
            X[l + 1] += X[l]
            Y[l + 1] += X[l]
        if Y[l]:
            Y[l + 1] += Y[l]
            alpha[l + 1] += Y[l]
        if Z[l]:
            Z[l + 1] += Z[l]
            alpha[l + 1] += Z[l]
    return X[N], Y[N], Z[N], alpha


def _lower(N, p, q, r, alpha):
    if p:
        q, r = q + r, 0
    while N > 0:
        need = q - p + r
        if q < p or alpha.get(N, 0) < need:
            break
        if need:
            alpha[N] -= need
        q -= p
        N -= 1
    alpha = tuple(sorted((i, m) for i, m in alpha.items() if m))
    return CanonicalM(N, p, q, r, alpha)


def canonicalize_M(w):
    _check_M_word(w)
    N = max((idx for (name, idx), _ in w if name != "a"), default=0)
    p, q, r, alpha = _raised(w, N)
    return _lower(N, p, q, r, alpha)


def equals_M(w1, w2):
    return canonicalize_M(w1) == canonicalize_M(w2)


def add_M(c1, c2):
    N = max(c1.N, c2.N)
    p1, q1, r1, a1 = _raised(c1.to_word(), N)
    p2, q2, r2, a2 = _raised(c2.to_word(), N)
    return _lower(N, p1 + p2, q1 + q2, r1 + r2, a1 + a2)


def state_value(w):
    """The additive state with every generator of index n worth 2^-n."""
    total = Fraction(0)
    for (name, idx), m in w:
        if idx is None:
            raise ValueError("state is defined on words of M only")
        total += Fraction(m, 2 ** idx)
    return rat(total)


# -- Mbar -------------------------------------------------------------------

@dataclass(frozen=True, order=True)
class CanonicalMbar:
    """r x_n + s y + t z."""
    r: int
    n: int
    s: int
    t: int

    def __post_init__(self):
        if min(self.r, self.n, self.s, self.t) < 0:
            raise ValueError("negative entry")
        if self.r >= 1 and self.t:
            raise ValueError("z must be absorbed when x is present")
        if self.r >= 1 and self.n >= 1 and self.s >= self.r:
            raise ValueError("level can still be lowered")
        if self.r == 0 and self.n:
            raise ValueError("level must be 0 without x")

    def to_word(self):
        c = Counter()
        if self.r:
            c[("x", self.n)] = self.r
        if self.s:
            c[("y", 0)] = self.s
        if self.t:
            c[("z", 0)] = self.t
        return MWord(c)

    def __str__(self):
        return f"(r={self.r}, n={self.n}, s={self.s}, t={self.t})"


def canonical_Mbar(r, n, s, t):
    """Normalize r x_n + s y + t z."""
    if r == 0:
        return CanonicalMbar(0, 0, s, t)
    s, t = s + t, 0
    while n >= 1 and s >= r:
        s -= r
        n -= 1
    return CanonicalMbar(r, n, s, 0)


def add_Mbar(c1, c2):
    if not c1.r or not c2.r:
        n = c1.n if c1.r else c2.n
        return canonical_Mbar(c1.r + c2.r, n, c1.s + c2.s, c1.t + c2.t)
    n = max(c1.n, c2.n)
    # x_l = x_{l+1} + y, so raising r x_l by k levels adds k r copies of y
    s = c1.s + c2.s + c1.r * (n - c1.n) + c2.r * (n - c2.n)
    return canonical_Mbar(c1.r + c2.r, n, s, c1.t + c2.t)


def mbar_project(w):
    """The quotient map M -> Mbar: a_n goes to 0, y_n to y, z_n to z."""
    _check_M_word(w)
    out = CanonicalMbar(0, 0, 0, 0)
    for (name, idx), m in w:
        if name == "x":
            term = canonical_Mbar(m, idx, 0, 0)
        elif name == "y":
            term = CanonicalMbar(0, 0, m, 0)
        elif name == "z":
            term = CanonicalMbar(0, 0, 0, m)
        else:
            continue
        out = add_Mbar(out, term)
    return out


# -- bounded order and refinement -------------------------------------------

def _level_form(c, N):
    """Counts of the canonical element c rewritten at level N >= c.N."""
    return _raised(c.to_word(), N)


def complements(w1, w2, level_bound):
    """Yield the distinct d (as CanonicalM) with w1 + d = w2 in M.

    A candidate is read off the level-M rewriting of w2 minus that of w1 for
    every level M up to level_bound; each one is confirmed with equals_M.
    """
    c1, c2 = canonicalize_M(w1), canonicalize_M(w2)
    if state_value(w1) > state_value(w2):
        return
    seen = set()
    for M in range(max(c1.N, c2.N), max(level_bound, c1.N, c2.N) + 1):
        p1, q1, r1, a1 = _level_form(c1, M)
        P, Q, R, B = _level_form(c2, M)
        alpha = B.copy()
        alpha.subtract(a1)
        if any(v < 0 for v in alpha.values()) or P < p1:
            continue
        p = P - p1
        if P:
            rest = Q + R - q1 - r1
            if rest < 0:
                continue
            splits = [(rest, 0)] if p else [(rest - k, k) for k in range(rest + 1)]
        else:
            if Q < q1 or R < r1:
                continue
            splits = [(Q - q1, R - r1)]
        for q, r in splits:
            d = _lower(M, p, q, r, +alpha)
            if d in seen:
                continue
            seen.add(d)
            if add_M(c1, d) == c2:
                yield d


def le_bounded(w1, w2, level_bound=6):
    """Search for d with w1 + d = w2; returns ("yes", d word) or ("not-found", None)."""
    for d in complements(w1, w2, level_bound):
        return "yes", d.to_word()
    return "not-found", None


def _lower_bounds(w, level_bound):
    """Distinct e <= w, found among level-M sub-tuples of w for M <= level_bound."""
    c = canonicalize_M(w)
    seen = set()
    for M in range(c.N, max(level_bound, c.N) + 1):
        P, Q, R, B = _level_form(c, M)
        a_ranges = [range(m + 1) for _, m in sorted(B.items())]
        keys = sorted(B)
        for p in range(P, -1, -1):
            for q in range(Q + R, -1, -1):
                for r in range(0 if p else Q + R - q, -1, -1):
                    if q + r > Q + R:
                        continue
                    for choice in product(*a_ranges):
                        e = _lower(M, p, q, r, Counter(dict(zip(keys, choice))))
                        if e not in seen:
                            seen.add(e)
                            yield e


def refine_bounded(w1a, w1b, w2a, w2b, level_bound=3):
    """Find a 2x2 matrix z with row sums (w1a, w1b) and column sums (w2a, w2b).

    Returns [[z11, z12], [z21, z22]] as MWords, or None if nothing was found
    within the level bound.
    """
    if not equals_M(w1a + w1b, w2a + w2b):
        raise ValueError("the two sums differ in M")
    for z11 in _lower_bounds(w1a, level_bound):
        for z12 in complements(z11.to_word(), w1a, level_bound):
            for z21 in complements(z11.to_word(), w2a, level_bound):
                for z22 in complements(z21.to_word(), w1b, level_bound):
                    if equals_M(z12.to_word() + z22.to_word(), w2b):
                        return [[z11.to_word(), z12.to_word()],
                                [z21.to_word(), z22.to_word()]]
    return None


def _pedestal_words(max_size, max_index):
    gens = [("a", i) for i in range(1, max_index + 1)]
    return list(_all_words(gens, max_size))


def _disjoint(s, t):
    return not (set(s.counts) & set(t.counts))


def property_battery_M(max_size=3, max_index=2, pedestal_size=2, level_bound=None):
    """Check three order properties of M on every small instance.

    (1) a + v = b + v with v in the pedestal forces a = b;
    (2) a + v = b + t with pedestal v, t sharing no a_i gives a = c + t and
        b = c + v for some c;
    (3) for c and pedestal v there are d and pedestal w with c = d + w and no
        a_i of v + w below d.
    """
    if level_bound is None:
        level_bound = max_index + 2
    gens = [g for g in presentation_M(max_index).generators]
    words = list(_all_words(gens, max_size))
    ped = _pedestal_words(pedestal_size, max_index)
    report = {"words": len(words), "pedestal": len(ped), "counterexamples": []}
    bad = report["counterexamples"]

    # (1) cancellation: grouping by the class of a + v must refine the class of a
    checked = 0
    for v in ped:
        cls = {}
        for a in words:
            key = canonicalize_M(a + v)
            prev = cls.setdefault(key, (canonicalize_M(a), a))
            checked += 1
            if prev[0] != canonicalize_M(a):
                bad.append({"property": 1, "a": str(prev[1]), "b": str(a), "v": str(v)})
    report["cancellation_checked"] = checked

    # (2) decomposition
    by_class = {}
    for b in words:
        by_class.setdefault(canonicalize_M(b), []).append(b)
    checked = 0
    for v in ped:
        for t in ped:
            if not (v or t) or not _disjoint(v, t):
                continue
            tclass = {}
            for b in words:
                tclass.setdefault(canonicalize_M(b + t), []).append(b)
            for a in words:
                bs = tclass.get(canonicalize_M(a + v), [])
                for b in bs:
                    checked += 1
                    ok = False
                    for c in complements(t, a, level_bound):
                        if equals_M(c.to_word() + v, b):
                            ok = True
                            break
                    if not ok:
                        bad.append({"property": 2, "a": str(a), "b": str(b),
                                    "v": str(v), "t": str(t)})
    report["decomposition_checked"] = checked

    # (3) splitting off a maximal pedestal part
    checked = 0
    for c in words:
        for v in ped:
            n = max((i for (_, i), _ in v), default=0)
            w = MWord()
            for i in range(1, n + 1):
                k = 0
                while le_bounded((k + 1) * MWord.of(("a", i)), c, level_bound)[0] == "yes":
                    k += 1
                w = w + k * MWord.of(("a", i))
            found, d = le_bounded(w, c, level_bound)
            checked += 1
            if found != "yes":
                bad.append({"property": 3, "c": str(c), "v": str(v), "reason": "no d"})
                continue
            for i in range(1, n + 1):
                if le_bounded(MWord.of(("a", i)), d, level_bound)[0] == "yes":
                    bad.append({"property": 3, "c": str(c), "v": str(v),
                                "d": str(d), "reason": f"a{i} <= d"})
                    break
    report["splitting_checked"] = checked
    report["ok"] = not bad
    return report
