"""The monogenic free inverse monoid as walk triples.

An element is recorded by the walk its word traces on the integer line:
``(lo, hi, end)`` are the minimum, maximum and final position, starting at 0.
The letter ``s`` steps up and ``S`` (for s*) steps down.  Every element has a
unique normal word ``s^k (s*)^l s^m`` with ``l >= k`` and ``l >= m``.
"""

from dataclasses import dataclass
from itertools import product


@dataclass(frozen=True, order=True)
class MunnTriple:
    lo: int
    hi: int
    end: int

    def __post_init__(self):
        if not (self.lo <= 0 <= self.hi and self.lo <= self.end <= self.hi):
            raise ValueError(f"invalid walk triple {self.as_tuple()}")

    def as_tuple(self):
        return (self.lo, self.hi, self.end)

    def __mul__(self, other):
        return mul(self, other)

    def is_idempotent(self):
        return self.end == 0

    def __str__(self):
        return normal_text(self)


ONE = MunnTriple(0, 0, 0)
S = MunnTriple(0, 1, 1)
S_STAR = MunnTriple(-1, 0, -1)


@dataclass(frozen=True)
class NormalWord:
    k: int
    l: int
    m: int

    def __post_init__(self):
        if not (self.l >= self.k >= 0 and self.l >= self.m >= 0):
            raise ValueError(f"invalid normal word {(self.k, self.l, self.m)}")


def mul(a, b):
    e = a.end
    return MunnTriple(min(a.lo, e + b.lo), max(a.hi, e + b.hi), e + b.end)


def star(a):
    return MunnTriple(a.lo - a.end, a.hi - a.end, -a.end)


def to_normal(a):
    return NormalWord(a.hi, a.hi - a.lo, a.end - a.lo)


def from_normal(w):
    # walk up k, down l, up m
    return MunnTriple(w.k - w.l, w.k, w.k - w.l + w.m)


def normal_letters(a):
    w = to_normal(a)
    return "s" * w.k + "S" * w.l + "s" * w.m


def normal_text(a):
    w = to_normal(a)
    parts = []
    if w.k:
        parts.append("s" if w.k == 1 else f"s^{w.k}")
    if w.l:
        parts.append("s*" if w.l == 1 else f"s*^{w.l}")
    if w.m:
        parts.append("s" if w.m == 1 else f"s^{w.m}")
    return " ".join(parts) or "1"


def power(a, n):
    out = ONE
    for _ in range(n):
        out = mul(out, a)
    return out


def word_oracle(letters):
    """Walk the letters directly and record (min, max, end)."""
    pos = lo = hi = 0
    for ch in letters:
        if ch == "s":
            pos += 1
        elif ch in "S*":
            pos -= 1
        else:
            raise ValueError(f"unknown letter {ch!r}")
        lo = min(lo, pos)
        hi = max(hi, pos)
    return MunnTriple(lo, hi, pos)


def evaluate(letters):
    """Fold mul over the letters; the Munn-model evaluation of a word."""
    out = ONE
    for ch in letters:
        out = mul(out, S if ch == "s" else S_STAR)
    return out


def triples(bound):
    """All triples with -bound <= lo and hi <= bound."""
    for lo in range(-bound, 1):
        for hi in range(0, bound + 1):
            for end in range(lo, hi + 1):
                yield MunnTriple(lo, hi, end)


def words(max_len, alphabet="sS"):
    for n in range(max_len + 1):
        for w in product(alphabet, repeat=n):
            yield "".join(w)


def _idempotent_words(bound):
    ups = ["s" * i + "S" * i for i in range(1, bound + 1)]
    downs = ["S" * j + "s" * j for j in range(1, bound + 1)]
    return ups + downs


def rewriting_classes(max_len, slack=4):
    """Partition words of length <= max_len by the defining relations.

    The relations s s* s = s, s* s s* = s*, and pq = qp for the idempotent
    words p, q in {s^i s*^i, s*^j s^j} are applied in both directions inside
    the set of words of length <= max_len + slack.  No walk data is used.
    Returns a dict from each short word to a class label.
    """
    bound = max_len + slack
    rules = [("sSs", "s"), ("SsS", "S")]
    idem = _idempotent_words(bound // 2)
    for p in idem:
        for q in idem:
            if p < q and len(p) + len(q) <= bound:
                rules.append((p + q, q + p))
    parent = {}

    def find(x):
        root = x
        while parent.get(root, root) != root:
            root = parent[root]
        while parent.get(x, x) != root:
            parent[x], x = root, parent[x]
        return root

    def union(a, b):
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[max(ra, rb, key=lambda w: (len(w), w))] = min(ra, rb, key=lambda w: (len(w), w))

    for w in words(bound):
        for lhs, rhs in rules:
            start = w.find(lhs)
            while start != -1:
                image = w[:start] + rhs + w[start + len(lhs):]
                if len(image) <= bound:
                    union(w, image)
                start = w.find(lhs, start + 1)
            # the reverse direction is covered when the image word is visited
    return {w: find(w) for w in words(max_len)}


def to_json(a):
    return [a.lo, a.hi, a.end]


def from_json(data):
    lo, hi, end = data
    return MunnTriple(int(lo), int(hi), int(end))
