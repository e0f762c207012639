"""Coxeter systems with exact reduced-word arithmetic.

Elements are kept in a canonical normal form, the lexicographically least
reduced word.  All word arithmetic goes through an exact reflection
representation: integer Cartan data for crystallographic systems (finite
Weyl types and generalized Cartan matrices for affine/indefinite rank-3
systems), the golden-ratio ring Z[phi] for H3/H4, and a closed dihedral
normal form for I2(m) that bypasses any representation.

A generator append increases length iff the image of its simple root is a
positive vector; this is the standard geometric-representation criterion
and is what every normal-form and descent computation here reduces to.

Generator indices are 1-based throughout the public API, matching the
Coxeter-diagram numbering used for the finite irreducible types.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Iterator, Optional, Sequence

from .golden import GoldenInt, PHI

__all__ = [
    "INFINITY",
    "ConstructionError",
    "UsageError",
    "ResourceCapError",
    "UnsupportedCapabilityError",
    "GroupElement",
    "ParabolicDecomposition",
    "CoxeterSystem",
    "GroupCache",
    "build_system",
    "coxeter_matrix_from_graph",
]

# Coxeter-matrix entry standing for m(s,t) = infinity.
INFINITY = 0


class ConstructionError(ValueError):
    """Unsupported type/rank or invalid Coxeter data."""


class UsageError(ValueError):
    """Invalid arguments: mixed systems, bad generator subsets, etc."""


class ResourceCapError(RuntimeError):
    """An explicit resource cap was exceeded (never a silent truncation)."""


class UnsupportedCapabilityError(RuntimeError):
    """Operation requires structure this system does not carry (e.g. roots)."""


def _sign(x) -> int:
    if isinstance(x, int):
        return 0 if x == 0 else (1 if x > 0 else -1)
    return x.sign()


def _vec_is_positive(col) -> bool:
    # Root vectors have uniform coordinate signs; first nonzero decides.
    for e in col:
        s = _sign(e)
        if s:
            return s > 0
    return False


# ---------------------------------------------------------------------------
# engines


class _MatrixEngine:
    """Reflection representation engine over an exact scalar ring.

    ``cartan[i][j]`` (1-based) is the pairing <alpha_j, alpha_i^vee>, so
    s_i(alpha_j) = alpha_j - cartan[i][j] * alpha_i.  Keys are pairs
    (M, Minv) of matrices stored as tuples of columns; column j of M is the
    coordinate vector of w(alpha_j) in the simple-root basis.
    """

    def __init__(self, cartan):
        r = len(cartan) - 1  # row 0 unused
        self.rank = r
        self.cartan = cartan
        # nonzero off-diagonal support of each row, for sparse updates
        self.row_support = [()] + [
            tuple((j, cartan[i][j]) for j in range(1, r + 1)
                  if j != i and _sign(cartan[i][j]) != 0)
            for i in range(1, r + 1)
        ]
        zero = cartan[1][1] - cartan[1][1]  # ring zero
        cols = []
        for j in range(r):
            col = [zero] * r
            col[j] = col[j] + 1
            cols.append(tuple(col))
        ident = tuple(cols)
        self.identity_key = (ident, ident)
        self._ident = ident

    def _apply_left(self, i, mat):
        # S_i . mat : reflect every column
        sup = self.row_support[i]
        i0 = i - 1
        new_cols = []
        for col in mat:
            acc = col[i0] + col[i0]
            for j, c in sup:
                acc = acc + c * col[j - 1]
            new_col = list(col)
            new_col[i0] = col[i0] - acc
            new_cols.append(tuple(new_col))
        return tuple(new_cols)

    def _apply_right(self, i, mat):
        # mat . S_i : col_j -= cartan[i][j] * col_i, col_i negated
        i0 = i - 1
        ci = mat[i0]
        new_cols = list(mat)
        for j, c in self.row_support[i]:
            colj = mat[j - 1]
            new_cols[j - 1] = tuple(colj[k] - c * ci[k] for k in range(self.rank))
        new_cols[i0] = tuple(-e for e in ci)
        return tuple(new_cols)

    def right_mult(self, key, i):
        m, minv = key
        return (self._apply_right(i, m), self._apply_left(i, minv))

    def left_mult(self, i, key):
        m, minv = key
        return (self._apply_left(i, m), self._apply_right(i, minv))

    def inverse_key(self, key):
        m, minv = key
        return (minv, m)

    def is_right_ascent(self, key, i) -> bool:
        return _vec_is_positive(key[0][i - 1])

    def is_left_ascent(self, key, i) -> bool:
        return _vec_is_positive(key[1][i - 1])

    def key_of_word(self, word):
        key = self.identity_key
        for i in word:
            key = self.right_mult(key, i)
        return key

    def canonical_word(self, key):
        # Greedy least left descent; yields the lex-least reduced word.
        m, minv = key
        ident = self._ident
        word = []
        while m != ident:
            for i in range(1, self.rank + 1):
                if not _vec_is_positive(minv[i - 1]):
                    break
            word.append(i)
            m = self._apply_left(i, m)
            minv = self._apply_right(i, minv)
        return tuple(word)


class _PermEngine:
    """Type A_(n-1) engine on one-line permutation tuples of 1..n."""

    def __init__(self, n: int):
        self.n = n
        self.rank = n - 1
        self.identity_key = tuple(range(1, n + 1))

    def right_mult(self, key, i):
        lst = list(key)
        lst[i - 1], lst[i] = lst[i], lst[i - 1]
        return tuple(lst)

    def left_mult(self, i, key):
        # swap values i, i+1
        a = key.index(i)
        b = key.index(i + 1)
        lst = list(key)
        lst[a], lst[b] = lst[b], lst[a]
        return tuple(lst)

    def inverse_key(self, key):
        inv = [0] * self.n
        for pos, val in enumerate(key):
            inv[val - 1] = pos + 1
        return tuple(inv)

    def is_right_ascent(self, key, i) -> bool:
        return key[i - 1] < key[i]

    def is_left_ascent(self, key, i) -> bool:
        return key.index(i) < key.index(i + 1)

    def key_of_word(self, word):
        key = self.identity_key
        for i in word:
            key = self.right_mult(key, i)
        return key

    def canonical_word(self, key):
        perm = list(key)
        pos = [0] * (self.n + 1)
        for p, v in enumerate(perm):
            pos[v] = p
        word = []
        ident = list(range(1, self.n + 1))
        while perm != ident:
            for i in range(1, self.n):
                if pos[i] > pos[i + 1]:
                    break
            word.append(i)
            pa, pb = pos[i], pos[i + 1]
            perm[pa], perm[pb] = perm[pb], perm[pa]
            pos[i], pos[i + 1] = pb, pa
        return tuple(word)


class _DihedralEngine:
    """I2(m) engine via the closed dihedral normal form (m = 0 means infinity).

    Keys are (eps, k) standing for s^eps * r^k with r = s1*s2; products use
    r*s = s*r^(-1).  Lengths and alternating normal words are closed-form.
    """

    def __init__(self, m: int):
        self.m = m
        self.rank = 2
        self.identity_key = (0, 0)

    def _norm(self, k):
        return k % self.m if self.m else k

    def length(self, key) -> int:
        eps, k = key
        m = self.m
        if eps == 0:
            if m:
                return min(2 * k, 2 * (m - k))
            return 2 * abs(k)
        if k == 0:
            return 1
        if m:
            return min(2 * k - 1, 2 * (m - k) + 1)
        return 2 * k - 1 if k > 0 else 2 * (-k) + 1

    def _mult(self, key1, key2):
        e1, k1 = key1
        e2, k2 = key2
        k = (-k1 if e2 else k1) + k2
        return (e1 ^ e2, self._norm(k))

    def right_mult(self, key, i):
        return self._mult(key, (1, i - 1))

    def left_mult(self, i, key):
        return self._mult((1, i - 1), key)

    def inverse_key(self, key):
        eps, k = key
        return key if eps else (0, self._norm(-k))

    def is_right_ascent(self, key, i) -> bool:
        return self.length(self.right_mult(key, i)) > self.length(key)

    def is_left_ascent(self, key, i) -> bool:
        return self.length(self.left_mult(i, key)) > self.length(key)

    def key_of_word(self, word):
        key = self.identity_key
        for i in word:
            key = self.right_mult(key, i)
        return key

    def canonical_word(self, key):
        eps, k = key
        m = self.m

        def alternating(first, length):
            other = 3 - first
            return tuple(first if t % 2 == 0 else other for t in range(length))

        if eps == 0:
            if k == 0:
                return ()
            if m and 2 * (m - k) < 2 * k:
                return alternating(2, 2 * (m - k))
            if not m and k < 0:
                return alternating(2, 2 * (-k))
            return alternating(1, 2 * k)
        if k == 0:
            return (1,)
        if m:
            la, lb = 2 * k - 1, 2 * (m - k) + 1
            if lb <= la:
                return alternating(1, lb)
            return alternating(2, la)
        if k > 0:
            return alternating(2, 2 * k - 1)
        return alternating(1, 2 * (-k) + 1)


# ---------------------------------------------------------------------------
# elements


class GroupElement:
    """A group element in canonical reduced-word normal form.

    ``word`` is the lexicographically least reduced word (1-based generator
    indices).  Two elements are equal iff their systems coincide and their
    normal forms agree.  Instances are immutable.
    """

    __slots__ = ("system", "word", "_key")

    def __init__(self, system: "CoxeterSystem", word: tuple, key):
        self.system = system
        self.word = word
        self._key = key

    @property
    def length(self) -> int:
        return len(self.word)

    @property
    def is_identity(self) -> bool:
        return not self.word

    @property
    def support(self) -> frozenset:
        return frozenset(self.word)

    def __mul__(self, other: "GroupElement") -> "GroupElement":
        if not isinstance(other, GroupElement):
            return NotImplemented
        return self.system.multiply(self, other)

    def inverse(self) -> "GroupElement":
        key = self.system.engine.inverse_key(self._key)
        return self.system._element_from_key(key)

    def left_descents(self) -> frozenset:
        sys = self.system
        return frozenset(i for i in range(1, sys.rank + 1)
                         if not sys.engine.is_left_ascent(self._key, i))

    def right_descents(self) -> frozenset:
        sys = self.system
        return frozenset(i for i in range(1, sys.rank + 1)
                         if not sys.engine.is_right_ascent(self._key, i))

    def __eq__(self, other):
        if not isinstance(other, GroupElement):
            return NotImplemented
        return self.system is other.system and self.word == other.word

    def __hash__(self):
        return hash((id(self.system), self.word))

    def __repr__(self):
        return f"<{self.system.short_name}: {self}>"

    def __str__(self):
        if not self.word:
            return "e"
        labels = self.system.labels
        parts = [labels[i - 1] for i in self.word]
        if all(len(p) == 1 for p in parts):
            return "".join(parts)
        return "*".join(parts)


@dataclass(frozen=True)
class ParabolicDecomposition:
    """w = quotient * parabolic (side='right') or parabolic * quotient (side='left').

    The parabolic part lies in W_J; the quotient part has no right (resp.
    left) descent in J; lengths are additive.
    """

    side: str
    J: frozenset
    quotient: GroupElement
    parabolic: GroupElement

    def product(self) -> GroupElement:
        if self.side == "right":
            return self.quotient * self.parabolic
        return self.parabolic * self.quotient


# ---------------------------------------------------------------------------
# finite-type classification of a Coxeter diagram component


def _component_is_finite(verts: Sequence[int], matrix) -> bool:
    n = len(verts)
    if n == 1:
        return True
    idx = {v: t for t, v in enumerate(verts)}
    adj = [[] for _ in range(n)]
    edges = []
    for a, b in combinations(verts, 2):
        m = matrix[a - 1][b - 1]
        if m == INFINITY:
            return False
        if m >= 3:
            adj[idx[a]].append(idx[b])
            adj[idx[b]].append(idx[a])
            edges.append((idx[a], idx[b], m))
    if len(edges) != n - 1:
        return False  # a cycle (or disconnected input); no finite diagram has one
    degs = [len(a) for a in adj]
    big = [(a, b, m) for a, b, m in edges if m > 3]
    if not big:
        branch = [v for v in range(n) if degs[v] >= 3]
        if not branch:
            return True  # type A path
        if len(branch) > 1 or degs[branch[0]] > 3:
            return False
        arms = []
        b = branch[0]
        for start in adj[b]:
            ln, prev, cur = 1, b, start
            while degs[cur] == 2:
                nxt = next(u for u in adj[cur] if u != prev)
                prev, cur, ln = cur, nxt, ln + 1
            arms.append(ln)
        a1, a2, a3 = sorted(arms)
        if a1 == 1 and a2 == 1:
            return True  # type D
        return a1 == 1 and a2 == 2 and a3 <= 4  # E6, E7, E8
    if len(big) > 1 or any(d >= 3 for d in degs):
        return False
    u, v, m = big[0]
    if n == 2:
        return True  # I2(m)
    at_end = degs[u] == 1 or degs[v] == 1
    if m == 4:
        if at_end:
            return True  # B/C
        # middle 4-edge: only F4 (path of 4 vertices, 4-label in the middle)
        return n == 4 and degs[u] == 2 and degs[v] == 2
    if m == 5:
        return at_end and n <= 4  # H3, H4
    return False


# ---------------------------------------------------------------------------
# the system


class CoxeterSystem:
    """A Coxeter system (W, S) with an exact arithmetic engine attached.

    Immutable after construction.  Elements belong to exactly one system
    instance; mixing instances raises ``UsageError`` even when the abstract
    groups agree.
    """

    def __init__(self, labels, matrix, kind, engine, family=None,
                 family_rank=None, root_family=None):
        self.labels = tuple(labels)
        self.rank = len(self.labels)
        self.matrix = tuple(tuple(row) for row in matrix)
        self.kind = kind
        self.engine = engine
        self.family = family or kind
        self.family_rank = family_rank
        self.root_family = root_family  # 'A'..'G2' when crystallographic finite
        _validate_matrix(self.matrix)
        self.identity = GroupElement(self, (), engine.identity_key)
        self._cache: Optional[GroupCache] = None
        self._leq_memo: dict = {}
        self._root_system = None
        self._label_index = {lab: i + 1 for i, lab in enumerate(self.labels)}

    # -- basics ------------------------------------------------------------

    @property
    def short_name(self) -> str:
        if self.family_rank is not None:
            return f"{self.family}{self.family_rank}"
        return self.family

    def __repr__(self):
        return f"CoxeterSystem({self.short_name}, rank={self.rank})"

    def generators(self) -> tuple:
        return tuple(self.generator(i) for i in range(1, self.rank + 1))

    def generator(self, i: int) -> GroupElement:
        self._check_gen(i)
        return GroupElement(self, (i,), self.engine.key_of_word((i,)))

    def generator_index(self, label: str) -> int:
        try:
            return self._label_index[label]
        except KeyError:
            raise UsageError(f"unknown generator label {label!r}") from None

    def _check_gen(self, i):
        if not (isinstance(i, int) and 1 <= i <= self.rank):
            raise UsageError(f"generator index {i!r} out of range 1..{self.rank}")

    def check_subset(self, J: Iterable[int]) -> frozenset:
        J = frozenset(J)
        for i in J:
            self._check_gen(i)
        return J

    def _element_from_key(self, key) -> GroupElement:
        word = self.engine.canonical_word(key)
        return GroupElement(self, word, key)

    def from_word(self, word: Iterable[int]) -> GroupElement:
        word = tuple(word)
        for i in word:
            self._check_gen(i)
        return self._element_from_key(self.engine.key_of_word(word))

    def from_letters(self, s: str) -> GroupElement:
        """Parse a generator-letter string like "srstrsr" (1-char labels only)."""
        if any(len(lab) != 1 for lab in self.labels):
            raise UsageError("letter parsing needs single-character labels")
        return self.from_word(self.generator_index(c) for c in s)

    def multiply(self, w: GroupElement, v: GroupElement) -> GroupElement:
        if w.system is not self or v.system is not self:
            raise UsageError("elements belong to different Coxeter systems")
        key = w._key
        rm = self.engine.right_mult
        for i in v.word:
            key = rm(key, i)
        return self._element_from_key(key)

    # -- diagram combinatorics ----------------------------------------------

    def m(self, i: int, j: int) -> int:
        return self.matrix[i - 1][j - 1]

    def diagram_edges(self) -> tuple:
        return tuple((i, j, self.m(i, j))
                     for i in range(1, self.rank + 1)
                     for j in range(i + 1, self.rank + 1)
                     if self.m(i, j) != 2)

    def diagram_leaves(self) -> frozenset:
        deg = [0] * (self.rank + 1)
        for i, j, _ in self.diagram_edges():
            deg[i] += 1
            deg[j] += 1
        return frozenset(i for i in range(1, self.rank + 1) if deg[i] <= 1)

    def connected_components(self, J: Iterable[int]) -> list:
        J = self.check_subset(J)
        remaining = set(J)
        comps = []
        while remaining:
            seed = min(remaining)
            comp = {seed}
            frontier = [seed]
            while frontier:
                a = frontier.pop()
                for b in remaining - comp:
                    if self.m(a, b) != 2:
                        comp.add(b)
                        frontier.append(b)
            comps.append(frozenset(comp))
            remaining -= comp
        return comps

    def is_connected(self, J: Iterable[int]) -> bool:
        J = self.check_subset(J)
        return len(J) > 0 and len(self.connected_components(J)) == 1

    def totally_disconnected(self, J: Iterable[int], K: Iterable[int]) -> bool:
        J, K = self.check_subset(J), self.check_subset(K)
        if J & K:
            return False
        return all(self.m(a, b) == 2 for a in J for b in K)

    def parabolic_is_finite(self, J: Iterable[int]) -> bool:
        J = self.check_subset(J)
        return all(_component_is_finite(sorted(comp), self.matrix)
                   for comp in self.connected_components(J))

    @property
    def is_finite(self) -> bool:
        return self.parabolic_is_finite(range(1, self.rank + 1))

    # -- parabolic machinery -------------------------------------------------

    def parabolic_decompose(self, w: GroupElement, J: Iterable[int],
                            side: str = "right") -> ParabolicDecomposition:
        """Unique length-additive factorization across the parabolic W_J."""
        if w.system is not self:
            raise UsageError("element belongs to a different system")
        J = self.check_subset(J)
        if side not in ("right", "left"):
            raise UsageError("side must be 'right' or 'left'")
        eng = self.engine
        key = w._key
        peeled = []
        if side == "right":
            while True:
                for i in J:
                    if not eng.is_right_ascent(key, i):
                        key = eng.right_mult(key, i)
                        peeled.append(i)
                        break
                else:
                    break
            quotient = self._element_from_key(key)
            parabolic = self.from_word(reversed(peeled))
        else:
            while True:
                for i in J:
                    if not eng.is_left_ascent(key, i):
                        key = eng.left_mult(i, key)
                        peeled.append(i)
                        break
                else:
                    break
            quotient = self._element_from_key(key)
            parabolic = self.from_word(peeled)
        return ParabolicDecomposition(side, J, quotient, parabolic)

    def minimal_in_quotient(self, w: GroupElement, J: Iterable[int]) -> bool:
        """True iff w has no right descent in J, i.e. w is in W^J."""
        J = self.check_subset(J)
        return all(self.engine.is_right_ascent(w._key, i) for i in J)

    def longest_element(self, J: Optional[Iterable[int]] = None) -> GroupElement:
        """The longest element w_0(J) of the parabolic W_J (W_J must be finite)."""
        if J is None:
            J = range(1, self.rank + 1)
        J = self.check_subset(J)
        if not self.parabolic_is_finite(J):
            raise UsageError(f"W_J is infinite for J={sorted(J)}")
        eng = self.engine
        key = eng.identity_key
        word = []
        while True:
            for i in sorted(J):
                if eng.is_right_ascent(key, i):
                    key = eng.right_mult(key, i)
                    word.append(i)
                    break
            else:
                break
        return self._element_from_key(key)

    # -- enumeration ----------------------------------------------------------

    def elements_up_to_length(self, max_length: int) -> Iterator[GroupElement]:
        """All elements of length <= max_length, by length then word order."""
        eng = self.engine
        layer = {eng.identity_key}
        seen = {eng.identity_key}
        for ell in range(max_length + 1):
            elems = sorted((self._element_from_key(k) for k in layer),
                           key=lambda w: w.word)
            yield from elems
            if ell == max_length:
                break
            nxt = set()
            for k in layer:
                for i in range(1, self.rank + 1):
                    if eng.is_right_ascent(k, i):
                        k2 = eng.right_mult(k, i)
                        if k2 not in seen:
                            seen.add(k2)
                            nxt.add(k2)
            layer = nxt
            if not layer:
                break

    def cache(self, max_order: int = 10 ** 6) -> "GroupCache":
        """Full element table for a finite system (built lazily, kept)."""
        if self._cache is None:
            if not self.is_finite:
                raise UsageError("cannot cache an infinite Coxeter system")
            self._cache = GroupCache(self, max_order)
        return self._cache

    def order(self) -> Optional[int]:
        if not self.is_finite:
            return None
        return self.cache().size

    def elements(self) -> list:
        return [self.cache().element(i) for i in range(self.cache().size)]

    # -- attachments ------------------------------------------------------------

    def root_system(self):
        """The attached crystallographic root system (error for H/I kinds)."""
        from .roots import build_root_system
        if self._root_system is None:
            if self.root_family is None:
                raise UnsupportedCapabilityError(
                    f"{self.short_name} has no crystallographic root system here")
            self._root_system = build_root_system(self.root_family,
                                                  self.family_rank or self.rank)
        return self._root_system

    def to_json(self) -> dict:
        return {
            "type": self.family,
            "rank": self.rank,
            "coxeter_matrix": [list(row) for row in self.matrix],
        }


def _validate_matrix(matrix):
    r = len(matrix)
    for row in matrix:
        if len(row) != r:
            raise ConstructionError("Coxeter matrix must be square")
    for i in range(r):
        if matrix[i][i] != 1:
            raise ConstructionError("Coxeter matrix diagonal must be all 1")
        for j in range(r):
            if matrix[i][j] != matrix[j][i]:
                raise ConstructionError("Coxeter matrix must be symmetric")
            if i != j and matrix[i][j] != INFINITY and matrix[i][j] < 2:
                raise ConstructionError("off-diagonal entries must be >= 2 (or 0 for infinity)")


# ---------------------------------------------------------------------------
# full element table for finite systems


class GroupCache:
    """BFS table of a finite Coxeter group: Cayley graph, lengths, descents.

    Bruhat down-sets are materialized on demand as integer bitmasks (one bit
    per element), which makes interval rank profiles popcount-cheap.  All
    tables are append-once; reads are safe to share.
    """

    def __init__(self, system: CoxeterSystem, max_order: int = 10 ** 6):
        self.system = system
        eng = system.engine
        r = system.rank
        keys = [eng.identity_key]
        index = {eng.identity_key: 0}
        length = [0]
        rmult_rows = []
        head = 0
        while head < len(keys):
            key = keys[head]
            row = [0] * (r + 1)
            for i in range(1, r + 1):
                k2 = eng.right_mult(key, i)
                j = index.get(k2)
                if j is None:
                    j = len(keys)
                    if j > max_order:
                        raise ResourceCapError(
                            f"group order exceeds cache cap {max_order}")
                    index[k2] = j
                    keys.append(k2)
                    length.append(length[head] + 1)
                row[i] = j
            rmult_rows.append(row)
            head += 1
        self.keys = keys
        self.index = index
        self.length = length
        self.size = len(keys)
        self._rmult = rmult_rows
        self._elements: list = [None] * self.size
        self._rdesc: Optional[list] = None
        self._downsets: Optional[list] = None
        self._rank_masks: Optional[list] = None
        self._quotient_masks: dict = {}
        self._inv_masks: Optional[list] = None
        self._covers: Optional[list] = None
        self.max_length = max(length)

    def rmult(self, idx: int, i: int) -> int:
        return self._rmult[idx][i]

    def element(self, idx: int) -> GroupElement:
        el = self._elements[idx]
        if el is None:
            el = self.system._element_from_key(self.keys[idx])
            self._elements[idx] = el
        return el

    def index_of(self, w: GroupElement) -> int:
        return self.index[w._key]

    def right_descent_mask(self, idx: int) -> int:
        if self._rdesc is None:
            eng = self.system.engine
            r = self.system.rank
            self._rdesc = [
                sum(1 << i for i in range(1, r + 1)
                    if not eng.is_right_ascent(key, i))
                for key in self.keys
            ]
        return self._rdesc[idx]

    # -- Bruhat structure ---------------------------------------------------

    def covers_of(self, idx: int) -> tuple:
        """Indices of elements covered by idx (length drops by one)."""
        if self._covers is None:
            self._covers = [None] * self.size
        cached = self._covers[idx]
        if cached is not None:
            return cached
        word = self.element(idx).word
        ell = self.length[idx]
        found = set()
        for cut in range(len(word)):
            sub = word[:cut] + word[cut + 1:]
            j = 0
            for i in sub:
                j = self._rmult[j][i]
            if self.length[j] == ell - 1:
                found.add(j)
        result = tuple(sorted(found))
        self._covers[idx] = result
        return result

    def downsets(self, max_size: int = 20000) -> list:
        """Bitmask down-sets for the whole group, built rank by rank."""
        if self._downsets is None:
            if self.size > max_size:
                raise ResourceCapError(
                    f"down-set table disabled for |W|={self.size} > {max_size}")
            order = sorted(range(self.size), key=lambda t: self.length[t])
            down = [0] * self.size
            for idx in order:
                mask = 1 << idx
                for c in self.covers_of(idx):
                    mask |= down[c]
                down[idx] = mask
            self._downsets = down
        return self._downsets

    def rank_mask(self, k: int) -> int:
        if self._rank_masks is None:
            masks = [0] * (self.max_length + 1)
            for idx in range(self.size):
                masks[self.length[idx]] |= 1 << idx
            self._rank_masks = masks
        if 0 <= k <= self.max_length:
            return self._rank_masks[k]
        return 0

    def quotient_mask(self, J: frozenset) -> int:
        """Mask of elements with no right descent in J (the set W^J)."""
        J = frozenset(J)
        mask = self._quotient_masks.get(J)
        if mask is None:
            jbits = sum(1 << i for i in J)
            mask = 0
            for idx in range(self.size):
                if not (self.right_descent_mask(idx) & jbits):
                    mask |= 1 << idx
            self._quotient_masks[J] = mask
        return mask

    def rank_profile(self, mask: int) -> tuple:
        """Coefficients of the length generating function of a bitmask set."""
        profile = []
        for k in range(self.max_length + 1):
            profile.append((mask & self.rank_mask(k)).bit_count())
        while profile and profile[-1] == 0:
            profile.pop()
        return tuple(profile)

    def inversion_masks(self) -> list:
        """Right inversion sets as bitmasks over positive-root indices."""
        if self._inv_masks is None:
            rs = self.system.root_system()
            tables = rs.simple_action_tables()
            masks = [0] * self.size
            done = [False] * self.size
            done[0] = True
            order = sorted(range(self.size), key=lambda t: self.length[t])
            for idx in order:
                if done[idx]:
                    continue
                # find a descent i: idx = parent * s_i with parent shorter
                for i in range(1, self.system.rank + 1):
                    p = self._rmult[idx][i]
                    if self.length[p] < self.length[idx]:
                        break
                perm = tables[i]
                m = masks[p]
                acc = 1 << rs.simple_index(i)
                while m:
                    low = m & -m
                    acc |= 1 << perm[low.bit_length() - 1]
                    m ^= low
                masks[idx] = acc
                done[idx] = True
            self._inv_masks = masks
        return self._inv_masks


# ---------------------------------------------------------------------------
# constructors


def coxeter_matrix_from_graph(rank: int, edges: dict) -> list:
    """Coxeter matrix from {(i, j): m} labels; unlisted pairs commute."""
    mat = [[2] * rank for _ in range(rank)]
    for i in range(rank):
        mat[i][i] = 1
    for (i, j), m in edges.items():
        mat[i - 1][j - 1] = m
        mat[j - 1][i - 1] = m
    return mat


def _cartan_matrix(rank: int, entries: dict):
    """1-based Cartan matrix rows from {(i, j): <alpha_j, alpha_i^vee>}."""
    cart = [[0] * (rank + 1) for _ in range(rank + 1)]
    for i in range(1, rank + 1):
        cart[i][i] = 2
    for (i, j), a in entries.items():
        cart[i][j] = a
    return cart


def family_cartan(tag: str, rank: int):
    """1-based integer Cartan matrix for a crystallographic finite family.

    ``cartan[i][j]`` is <alpha_j, alpha_i^vee>.  Numbering follows the same
    diagrams as ``build_system``.
    """
    if tag == "A":
        entries = {}
        for i in range(1, rank):
            entries[(i, i + 1)] = entries[(i + 1, i)] = -1
        return _cartan_matrix(rank, entries)
    if tag in ("B", "C"):
        entries = {}
        for i in range(1, rank):
            entries[(i, i + 1)] = entries[(i + 1, i)] = -1
        if tag == "B":
            entries[(rank, rank - 1)] = -2
        else:
            entries[(rank - 1, rank)] = -2
        return _cartan_matrix(rank, entries)
    if tag == "D":
        entries = {}
        for i in range(1, rank - 1):
            entries[(i, i + 1)] = entries[(i + 1, i)] = -1
        entries[(rank - 2, rank)] = entries[(rank, rank - 2)] = -1
        return _cartan_matrix(rank, entries)
    if tag == "E":
        branch = {6: 3, 7: 3, 8: 5}[rank]
        entries = {}
        for i in range(1, rank - 1):
            entries[(i, i + 1)] = entries[(i + 1, i)] = -1
        entries[(branch, rank)] = entries[(rank, branch)] = -1
        return _cartan_matrix(rank, entries)
    if tag == "F":
        return _cartan_matrix(4, {(1, 2): -1, (2, 1): -1, (2, 3): -1,
                                  (3, 2): -2, (3, 4): -1, (4, 3): -1})
    if tag == "G":
        return _cartan_matrix(2, {(1, 2): -3, (2, 1): -1})
    raise ConstructionError(f"no Cartan data for family {tag!r}")


_GCM_PAIRS = {3: (-1, -1), 4: (-1, -2), 6: (-1, -3), INFINITY: (-2, -2)}


def _gcm_from_coxeter(matrix) -> Optional[list]:
    """Integer generalized Cartan matrix realizing the Coxeter matrix, if any."""
    r = len(matrix)
    entries = {}
    for i in range(1, r + 1):
        for j in range(i + 1, r + 1):
            m = matrix[i - 1][j - 1]
            if m == 2:
                continue
            pair = _GCM_PAIRS.get(m)
            if pair is None:
                return None
            entries[(i, j)], entries[(j, i)] = pair
    return _cartan_matrix(r, entries)


def _golden_cartan_from_coxeter(matrix) -> Optional[list]:
    """Symmetric Z[phi] Cartan data (-2cos(pi/m)) for m in {2, 3, 5}."""
    r = len(matrix)
    vals = {2: GoldenInt(0), 3: GoldenInt(-1), 5: -PHI}
    entries = {}
    for i in range(1, r + 1):
        for j in range(i + 1, r + 1):
            m = matrix[i - 1][j - 1]
            if m not in vals:
                return None
            entries[(i, j)] = entries[(j, i)] = vals[m]
    cart = _cartan_matrix(r, entries)
    for i in range(1, r + 1):
        cart[i][i] = GoldenInt(2)
        for j in range(1, r + 1):
            if not isinstance(cart[i][j], GoldenInt):
                cart[i][j] = GoldenInt(cart[i][j])
    return cart


def _labels(rank: int) -> list:
    return [f"s{i}" for i in range(1, rank + 1)]


def _path_edges(rank: int, labels_m: dict = None) -> dict:
    edges = {(i, i + 1): 3 for i in range(1, rank)}
    if labels_m:
        edges.update(labels_m)
    return edges


def build_system(type_tag: str, rank: Optional[int] = None) -> CoxeterSystem:
    """Construct a validated Coxeter system for a named family.

    Supported tags: A, B, C, D, E6, E7, E8, F4, G2, H3, H4, I2, affineC2.
    ``rank`` is the family rank (for I2 it is the edge label m).  Generator
    numbering follows the usual Coxeter diagrams for the finite irreducible
    types; affineC2 has S = {r, s, t} with m(r,s) = m(s,t) = 4, m(r,t) = 2.
    """
    tag = type_tag
    if tag == "A":
        if rank is None or rank < 1:
            raise ConstructionError("type A needs rank >= 1")
        matrix = coxeter_matrix_from_graph(rank, _path_edges(rank))
        return CoxeterSystem(_labels(rank), matrix, "A", _PermEngine(rank + 1),
                             family="A", family_rank=rank, root_family="A")
    if tag in ("B", "C"):
        if rank is None or rank < 2:
            raise ConstructionError(f"type {tag} needs rank >= 2")
        matrix = coxeter_matrix_from_graph(rank, _path_edges(rank, {(rank - 1, rank): 4}))
        return CoxeterSystem(_labels(rank), matrix, tag,
                             _MatrixEngine(family_cartan(tag, rank)),
                             family=tag, family_rank=rank, root_family=tag)
    if tag == "D":
        if rank is None or rank < 4:
            raise ConstructionError("type D needs rank >= 4")
        edges = {(i, i + 1): 3 for i in range(1, rank - 1)}
        edges[(rank - 2, rank)] = 3
        matrix = coxeter_matrix_from_graph(rank, edges)
        return CoxeterSystem(_labels(rank), matrix, "D",
                             _MatrixEngine(family_cartan("D", rank)),
                             family="D", family_rank=rank, root_family="D")
    if tag in ("E6", "E7", "E8"):
        rk = int(tag[1])
        branch = {6: 3, 7: 3, 8: 5}[rk]
        edges = {(i, i + 1): 3 for i in range(1, rk - 1)}
        edges[(branch, rk)] = 3
        matrix = coxeter_matrix_from_graph(rk, edges)
        return CoxeterSystem(_labels(rk), matrix, "E",
                             _MatrixEngine(family_cartan("E", rk)),
                             family="E", family_rank=rk, root_family="E")
    if tag == "F4":
        matrix = coxeter_matrix_from_graph(4, _path_edges(4, {(2, 3): 4}))
        return CoxeterSystem(_labels(4), matrix, "F",
                             _MatrixEngine(family_cartan("F", 4)),
                             family="F", family_rank=4, root_family="F")
    if tag == "G2":
        matrix = coxeter_matrix_from_graph(2, {(1, 2): 6})
        return CoxeterSystem(_labels(2), matrix, "G",
                             _MatrixEngine(family_cartan("G", 2)),
                             family="G", family_rank=2, root_family="G")
    if tag in ("H3", "H4"):
        rk = int(tag[1])
        # 5-labelled edge at the (rank-1, rank) end, as in the usual diagrams
        matrix = coxeter_matrix_from_graph(rk, _path_edges(rk, {(rk - 1, rk): 5}))
        cart = _golden_cartan_from_coxeter(matrix)
        return CoxeterSystem(_labels(rk), matrix, "H", _MatrixEngine(cart),
                             family="H", family_rank=rk)
    if tag == "I2":
        if rank is None or (rank < 3 and rank != INFINITY):
            raise ConstructionError("I2 needs the edge label m >= 3 (0 for infinity)")
        matrix = coxeter_matrix_from_graph(2, {(1, 2): rank})
        return CoxeterSystem(_labels(2), matrix, "I2", _DihedralEngine(rank),
                             family="I2", family_rank=rank)
    if tag == "affineC2":
        matrix = coxeter_matrix_from_graph(3, {(1, 2): 4, (2, 3): 4})
        cart = _cartan_matrix(3, {(1, 2): -1, (2, 1): -2, (2, 3): -2, (3, 2): -1})
        return CoxeterSystem(("r", "s", "t"), matrix, "affineC2",
                             _MatrixEngine(cart), family="affineC2", family_rank=None)
    raise ConstructionError(f"unsupported type tag {type_tag!r}")


def system_from_matrix(matrix, labels=None) -> CoxeterSystem:
    """General system from an explicit Coxeter matrix (0 entries mean infinity).

    Realized through an integer generalized Cartan matrix when every bond is
    in {2, 3, 4, 6, infinity}, through Z[phi] when every bond is in {2, 3, 5},
    and through the dihedral normal form in rank 2.  Other mixtures are out
    of scope here.
    """
    matrix = [list(row) for row in matrix]
    r = len(matrix)
    if labels is None:
        labels = _labels(r) if r != 3 else ("r", "s", "t")
    _validate_matrix(tuple(tuple(row) for row in matrix))
    if r == 2:
        m = matrix[0][1]
        return CoxeterSystem(labels, matrix, "general", _DihedralEngine(m),
                             family="I2", family_rank=m)
    gcm = _gcm_from_coxeter(matrix)
    if gcm is not None:
        return CoxeterSystem(labels, matrix, "general", _MatrixEngine(gcm))
    golden = _golden_cartan_from_coxeter(matrix)
    if golden is not None:
        return CoxeterSystem(labels, matrix, "general", _MatrixEngine(golden))
    raise ConstructionError(
        "bond labels must all lie in {2,3,4,6,inf} or all in {2,3,5}")
