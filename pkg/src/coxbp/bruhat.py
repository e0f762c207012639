"""Bruhat order, interval enumeration, Poincare polynomials, rational smoothness.

Lower intervals [e, w] are enumerated through the subword property: running
over one fixed reduced word of w and closing the element set under taking
subword products gives exactly [e, w], with the set never exceeding the
interval's final size.  Quotient intervals [e, w]^J are the full interval
filtered to elements with no right descent in J.  Finite systems with a
built cache use bitmask down-sets instead.

Rational smoothness is decided by palindromicity of the Poincare polynomial
of [e, w]^J (the Kazhdan-Lusztig characterization is out of scope).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable

from .coxeter import GroupElement, ResourceCapError, UsageError

__all__ = [
    "PoincarePolynomial",
    "BruhatInterval",
    "bruhat_leq",
    "interval",
    "poincare",
    "is_rationally_smooth",
    "q_integer",
    "q_integer_product",
    "classical_degrees",
]

DEFAULT_LENGTH_CAP = 22


@dataclass(frozen=True)
class PoincarePolynomial:
    """Rank generating function of a lower Bruhat interval."""

    coeffs: tuple

    def __post_init__(self):
        if not self.coeffs:
            raise ValueError("a Poincare polynomial has at least one coefficient")

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def total(self) -> int:
        return sum(self.coeffs)

    def is_palindromic(self) -> bool:
        return self.coeffs == self.coeffs[::-1]

    def __mul__(self, other: "PoincarePolynomial") -> "PoincarePolynomial":
        out = [0] * (self.degree + other.degree + 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return PoincarePolynomial(tuple(out))

    def __str__(self):
        terms = []
        for k, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if k == 0:
                terms.append(str(c))
            elif k == 1:
                terms.append(f"{c}q" if c != 1 else "q")
            else:
                terms.append(f"{c}q^{k}" if c != 1 else f"q^{k}")
        return " + ".join(terms) if terms else "0"


def q_integer(d: int) -> PoincarePolynomial:
    """[d]_q = 1 + q + ... + q^(d-1)."""
    if d < 1:
        raise ValueError("q-integer needs d >= 1")
    return PoincarePolynomial((1,) * d)


def q_integer_product(degrees: Iterable[int]) -> PoincarePolynomial:
    out = PoincarePolynomial((1,))
    for d in degrees:
        out = out * q_integer(d)
    return out


#: Degrees d_1..d_r of the finite irreducible Coxeter groups, so that the
#: Poincare polynomial of the longest element is the product of [d_i]_q.
_DEGREES = {
    "A": lambda n: tuple(range(2, n + 2)),
    "B": lambda n: tuple(range(2, 2 * n + 1, 2)),
    "C": lambda n: tuple(range(2, 2 * n + 1, 2)),
    "D": lambda n: tuple(range(2, 2 * n - 1, 2)) + (n,),
    "E": lambda n: {6: (2, 5, 6, 8, 9, 12),
                    7: (2, 6, 8, 10, 12, 14, 18),
                    8: (2, 8, 12, 14, 18, 20, 24, 30)}[n],
    "F": lambda n: (2, 6, 8, 12),
    "G": lambda n: (2, 6),
    "H": lambda n: {3: (2, 6, 10), 4: (2, 12, 20, 30)}[n],
    "I2": lambda m: (2, m),
}


def classical_degrees(family: str, rank: int) -> tuple:
    try:
        return _DEGREES[family](rank)
    except KeyError:
        raise UsageError(f"no degree table for {family}{rank}") from None


# ---------------------------------------------------------------------------
# Bruhat comparison


def bruhat_leq(u: GroupElement, w: GroupElement) -> bool:
    """u <= w in Bruhat order, by the descent recursion with memoization."""
    sys = u.system
    if w.system is not sys:
        raise UsageError("elements belong to different Coxeter systems")
    if u.length > w.length:
        return False
    if u.length == 0:
        return True
    if u.length == w.length:
        return u.word == w.word
    return _leq_rec(u, w, sys._leq_memo)


def _leq_rec(u: GroupElement, w: GroupElement, memo) -> bool:
    if u.length > w.length:
        return False
    if u.length == 0:
        return True
    if u.length == w.length:
        return u.word == w.word
    key = (u.word, w.word)
    cached = memo.get(key)
    if cached is not None:
        return cached
    sys = u.system
    i = w.word[0]  # first letter of the normal form is a left descent
    s = sys.generator(i)
    sw = sys.multiply(s, w)
    if i in u.left_descents():
        result = _leq_rec(sys.multiply(s, u), sw, memo)
    else:
        result = _leq_rec(u, sw, memo)
    memo[key] = result
    return result


# ---------------------------------------------------------------------------
# intervals


class BruhatInterval:
    """The enumerated lower interval [e, w] (or quotient interval [e, w]^J).

    Elements are stratified by length; ``covers`` gives the Hasse diagram on
    the flattened (rank-major, word-minor) indexing.  Immutable once built.
    """

    def __init__(self, top: GroupElement, J: frozenset, ranks: tuple):
        self.top = top
        self.J = J
        self.ranks = ranks
        self.elements: tuple = tuple(x for rank in ranks for x in rank)
        self.index = {w: i for i, w in enumerate(self.elements)}
        self.size = len(self.elements)

    def __repr__(self):
        jpart = f", J={sorted(self.J)}" if self.J else ""
        return f"BruhatInterval(top={self.top}{jpart}, size={self.size})"

    def poincare(self) -> PoincarePolynomial:
        return PoincarePolynomial(tuple(len(r) for r in self.ranks))

    @cached_property
    def covers(self) -> tuple:
        """Pairs (lower, upper) of flattened indices with a covering relation.

        Coatoms inside a quotient interval are exactly the global coatoms
        that lie in W^J, so filtering the global covering relation is sound.
        """
        sys = self.top.system
        cache = sys._cache
        out = []
        if cache is not None:
            for hi, w in enumerate(self.elements):
                for c in cache.covers_of(cache.index_of(w)):
                    lo = self.index.get(cache.element(c))
                    if lo is not None:
                        out.append((lo, hi))
            return tuple(sorted(out))
        for hi, w in enumerate(self.elements):
            ell = w.length
            if ell == 0:
                continue
            word = w.word
            seen = set()
            for cut in range(len(word)):
                u = sys.from_word(word[:cut] + word[cut + 1:])
                if u.length == ell - 1 and u not in seen:
                    seen.add(u)
                    lo = self.index.get(u)
                    if lo is not None:
                        out.append((lo, hi))
        return tuple(sorted(out))

    @cached_property
    def down_masks(self) -> tuple:
        """down_masks[i] = bitmask of indices j with element_j <= element_i."""
        masks = [0] * self.size
        ups = [[] for _ in range(self.size)]
        for lo, hi in self.covers:
            ups[hi].append(lo)
        for i in range(self.size):  # flattened order is rank-ascending
            m = 1 << i
            for lo in ups[i]:
                m |= masks[lo]
            masks[i] = m
        return tuple(masks)

    def leq(self, i: int, j: int) -> bool:
        return bool(self.down_masks[j] >> i & 1)

    def leq_elements(self, u: GroupElement, v: GroupElement) -> bool:
        return self.leq(self.index[u], self.index[v])


def _interval_keys(w: GroupElement) -> set:
    eng = w.system.engine
    keys = {eng.identity_key}
    for i in w.word:
        keys |= {eng.right_mult(k, i) for k in keys}
    return keys


def interval(w: GroupElement, J: Iterable[int] = (),
             cap_length: int = DEFAULT_LENGTH_CAP) -> BruhatInterval:
    """Enumerate [e, w]^J completely (J empty gives the full interval).

    Requires w in W^J when J is nonempty.  Raises ``ResourceCapError`` when
    l(w) exceeds ``cap_length`` -- never a silent truncation.
    """
    sys = w.system
    J = sys.check_subset(J)
    if J and not sys.minimal_in_quotient(w, J):
        raise UsageError(f"top element {w} is not minimal in its coset W_J, J={sorted(J)}")
    if w.length > cap_length:
        raise ResourceCapError(
            f"interval top has length {w.length} > cap {cap_length}; "
            "raise cap_length explicitly to proceed")
    cache = sys._cache
    if cache is not None and cache.size <= 20000:
        down = cache.downsets()
        mask = down[cache.index_of(w)]
        if J:
            mask &= cache.quotient_mask(J)
        members = []
        while mask:
            low = mask & -mask
            members.append(cache.element(low.bit_length() - 1))
            mask ^= low
    else:
        eng = sys.engine
        members = [sys._element_from_key(k) for k in _interval_keys(w)]
        if J:
            members = [v for v in members if sys.minimal_in_quotient(v, J)]
    by_rank: dict = {}
    for v in members:
        by_rank.setdefault(v.length, []).append(v)
    ranks = tuple(tuple(sorted(by_rank.get(k, ()), key=lambda x: x.word))
                  for k in range(w.length + 1))
    return BruhatInterval(w, J, ranks)


def poincare(w: GroupElement, J: Iterable[int] = (),
             cap_length: int = DEFAULT_LENGTH_CAP) -> PoincarePolynomial:
    """The length generating function of [e, w]^J."""
    sys = w.system
    J = sys.check_subset(J)
    if J and not sys.minimal_in_quotient(w, J):
        raise UsageError(f"{w} is not in W^J for J={sorted(J)}")
    cache = sys._cache
    if cache is not None and cache.size <= 20000:
        down = cache.downsets()
        mask = down[cache.index_of(w)]
        if J:
            mask &= cache.quotient_mask(J)
        profile = cache.rank_profile(mask)
        return PoincarePolynomial(profile)
    return interval(w, J, cap_length).poincare()


def is_rationally_smooth(w: GroupElement, J: Iterable[int] = (),
                         cap_length: int = DEFAULT_LENGTH_CAP) -> bool:
    """True iff the Poincare polynomial of [e, w]^J is palindromic."""
    return poincare(w, J, cap_length).is_palindromic()
