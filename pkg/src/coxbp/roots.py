"""Exact crystallographic root systems in simple-root coordinates.

Positive roots are integer coefficient vectors in the basis of simple
roots, generated by closing the simple roots under the simple reflections
(Cartan-integer arithmetic only).  A vector is a positive root iff all its
coordinates are >= 0; the root poset order beta <= gamma holds iff
gamma - beta has nonnegative coordinates.

For the classical families the resulting coordinate vectors correspond to
the usual ambient descriptions (A: e_i - e_j; B: e_i +- e_j, e_i;
C: e_i +- e_j, 2e_i; D: e_i +- e_j); ``ambient_positive_roots`` makes the
correspondence explicit and the tests check it.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Optional

from .coxeter import ConstructionError, GroupElement, UnsupportedCapabilityError

__all__ = [
    "Root",
    "RootSystem",
    "build_root_system",
    "inversion_set",
    "is_biclosed",
    "phi_J_plus",
]


@dataclass(frozen=True)
class Root:
    """A root as an integer coordinate vector in the simple-root basis."""

    coords: tuple

    @property
    def support(self) -> frozenset:
        return frozenset(i + 1 for i, c in enumerate(self.coords) if c != 0)

    @property
    def is_positive(self) -> bool:
        return all(c >= 0 for c in self.coords) and any(self.coords)

    @property
    def is_negative(self) -> bool:
        return all(c <= 0 for c in self.coords) and any(self.coords)

    @property
    def height(self) -> int:
        return sum(self.coords)

    def __add__(self, other: "Root") -> "Root":
        return Root(tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other: "Root") -> "Root":
        return Root(tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __neg__(self) -> "Root":
        return Root(tuple(-a for a in self.coords))

    def scaled(self, c: int) -> "Root":
        return Root(tuple(c * a for a in self.coords))

    def leq(self, other: "Root") -> bool:
        """Root poset order: other - self is a nonnegative combination."""
        return all(a <= b for a, b in zip(self.coords, other.coords))

    def supported_on(self, i: int) -> bool:
        return self.coords[i - 1] != 0

    def __repr__(self):
        return "Root" + str(self.coords)


class RootSystem:
    """Positive roots of a finite crystallographic root system."""

    def __init__(self, family: str, rank: int, cartan):
        self.family = family
        self.rank = rank
        self.cartan = cartan
        simples = [Root(tuple(1 if j == i else 0 for j in range(rank)))
                   for i in range(rank)]
        positives = set(simples)
        frontier = list(simples)
        while frontier:
            new = []
            for beta in frontier:
                for i in range(1, rank + 1):
                    img = self.reflect(i, beta)
                    if img.is_positive and img not in positives:
                        positives.add(img)
                        new.append(img)
            frontier = new
        rest = sorted(positives - set(simples),
                      key=lambda r: (r.height, r.coords))
        self.positive_roots = tuple(simples + rest)
        self._index = {r.coords: i for i, r in enumerate(self.positive_roots)}
        self._tables: Optional[list] = None
        self._phi_j: dict = {}

    @property
    def num_positive(self) -> int:
        return len(self.positive_roots)

    def __repr__(self):
        return f"RootSystem({self.family}{self.rank}, {self.num_positive} positive roots)"

    def simple_root(self, i: int) -> Root:
        return self.positive_roots[i - 1]

    def simple_index(self, i: int) -> int:
        return i - 1

    def index(self, root: Root) -> int:
        return self._index[root.coords]

    def contains(self, root: Root) -> bool:
        return root.coords in self._index

    def reflect(self, i: int, root: Root) -> Root:
        """Apply the simple reflection s_i: subtract the alpha_i^vee pairing."""
        row = self.cartan[i]
        pairing = sum(row[j + 1] * c for j, c in enumerate(root.coords) if c)
        coords = list(root.coords)
        coords[i - 1] -= pairing
        return Root(tuple(coords))

    def act_word(self, word: Iterable[int], root: Root) -> Root:
        """Apply w = s_{i_1}...s_{i_k} to a root (rightmost letter first)."""
        for i in reversed(tuple(word)):
            root = self.reflect(i, root)
        return root

    def simple_action_tables(self) -> list:
        """tables[i][k] = index of s_i(beta_k) for beta_k != alpha_i.

        By convention the alpha_i slot maps to itself (s_i negates it);
        callers that permute subsets of Phi+ \\ {alpha_i} never hit it.
        """
        if self._tables is None:
            tables = [None] * (self.rank + 1)
            for i in range(1, self.rank + 1):
                tab = []
                for k, beta in enumerate(self.positive_roots):
                    if k == i - 1:
                        tab.append(k)
                        continue
                    img = self.reflect(i, beta)
                    j = self._index.get(img.coords)
                    if j is None:
                        raise ConstructionError(
                            f"{self.family}{self.rank}: not closed under s_{i}")
                    tab.append(j)
                tables[i] = tab
            self._tables = tables
        return self._tables

    # -- subsets --------------------------------------------------------------

    def phi_plus_indices(self, J: Iterable[int]) -> frozenset:
        """Indices of positive roots supported only on Delta_J."""
        J = frozenset(J)
        cached = self._phi_j.get(J)
        if cached is None:
            cached = frozenset(k for k, r in enumerate(self.positive_roots)
                               if r.support <= J)
            self._phi_j[J] = cached
        return cached

    def roots_at(self, indices: Iterable[int]) -> frozenset:
        return frozenset(self.positive_roots[k] for k in indices)


_KNOWN_COUNTS = {
    "A": lambda n: n * (n + 1) // 2,
    "B": lambda n: n * n,
    "C": lambda n: n * n,
    "D": lambda n: n * (n - 1),
    "E": lambda n: {6: 36, 7: 63, 8: 120}[n],
    "F": lambda n: 24,
    "G": lambda n: 6,
}


@lru_cache(maxsize=None)
def build_root_system(type_tag: str, rank: Optional[int] = None) -> RootSystem:
    """Build the positive-root list for a crystallographic finite type.

    Accepts family letters with an explicit rank ('B', 4) or compact tags
    ('E8', 'F4', 'G2').  Non-crystallographic tags raise.
    """
    tag = type_tag
    if len(tag) > 1 and tag[1:].isdigit():
        tag, rank = tag[0], int(tag[1:])
    if tag in ("H", "I"):
        raise UnsupportedCapabilityError(
            "H and I2 types have no crystallographic root system here")
    if tag not in _KNOWN_COUNTS:
        raise ConstructionError(f"unsupported root system tag {type_tag!r}")
    if rank is None:
        raise ConstructionError("rank required")
    from .coxeter import family_cartan
    rs = RootSystem(tag, rank, family_cartan(tag, rank))
    expected = _KNOWN_COUNTS[tag](rank)
    if rs.num_positive != expected:
        raise ConstructionError(
            f"{tag}{rank}: built {rs.num_positive} positive roots, expected {expected}")
    rs.simple_action_tables()  # validates closure under simple reflections
    return rs


def _system_root_system(w: GroupElement) -> RootSystem:
    rs = w.system.root_system()
    return rs


def inversion_indices(w: GroupElement, rs: Optional[RootSystem] = None) -> frozenset:
    """Indices of the right inversion set I(w) = {beta > 0 : w(beta) < 0}."""
    if rs is None:
        rs = _system_root_system(w)
    tables = rs.simple_action_tables()
    inv: set = set()
    for i in w.word:
        inv = {tables[i][x] for x in inv}
        inv.add(rs.simple_index(i))
    return frozenset(inv)


def inversion_set(w: GroupElement, rs: Optional[RootSystem] = None) -> frozenset:
    """The right inversion set of w as a set of positive roots; |I(w)| = l(w)."""
    if rs is None:
        rs = _system_root_system(w)
    return rs.roots_at(inversion_indices(w, rs))


def phi_J_plus(rs: RootSystem, J: Iterable[int]) -> frozenset:
    """Positive roots supported only on the simple roots indexed by J."""
    return rs.roots_at(rs.phi_plus_indices(J))


def is_biclosed(R: Iterable[Root], rs: RootSystem) -> bool:
    """True iff R and its complement in Phi+ are both closed under addition."""
    R = frozenset(R)
    inside = {r.coords for r in R}
    for r in R:
        if r.coords not in rs._index:
            raise ValueError(f"{r} is not a positive root of {rs}")
    complement = [r for r in rs.positive_roots if r.coords not in inside]
    items = list(R)
    for a in range(len(items)):
        for b in range(a + 1, len(items)):
            s = items[a] + items[b]
            if s.coords in rs._index and s.coords not in inside:
                return False
    for a in range(len(complement)):
        for b in range(a + 1, len(complement)):
            s = complement[a] + complement[b]
            if s.coords in rs._index and s.coords in inside:
                return False
    return True


# -- ambient coordinates for the classical families -------------------------


def ambient_simple_roots(family: str, rank: int) -> list:
    """Simple roots as integer vectors in the standard ambient basis.

    A_(n): inside R^(n+1); B/C/D_n: inside R^n.  Used to cross-check the
    simple-root-basis construction against the classical descriptions.
    """
    def e(i, dim):
        v = [0] * dim
        v[i - 1] = 1
        return v

    def minus(u, v):
        return [a - b for a, b in zip(u, v)]

    def plus(u, v):
        return [a + b for a, b in zip(u, v)]

    if family == "A":
        dim = rank + 1
        return [minus(e(i, dim), e(i + 1, dim)) for i in range(1, rank + 1)]
    if family == "B":
        out = [minus(e(i, rank), e(i + 1, rank)) for i in range(1, rank)]
        out.append(e(rank, rank))
        return out
    if family == "C":
        out = [minus(e(i, rank), e(i + 1, rank)) for i in range(1, rank)]
        out.append([2 * c for c in e(rank, rank)])
        return out
    if family == "D":
        out = [minus(e(i, rank), e(i + 1, rank)) for i in range(1, rank)]
        out.append(plus(e(rank - 1, rank), e(rank, rank)))
        return out
    raise ConstructionError(f"no ambient coordinates for family {family!r}")


def ambient_positive_roots(rs: RootSystem) -> list:
    """Positive roots as ambient integer vectors (classical families only)."""
    simples = ambient_simple_roots(rs.family, rs.rank)
    dim = len(simples[0])
    out = []
    for root in rs.positive_roots:
        v = [0] * dim
        for c, simple in zip(root.coords, simples):
            if c:
                for k in range(dim):
                    v[k] += c * simple[k]
        out.append(v)
    return out
