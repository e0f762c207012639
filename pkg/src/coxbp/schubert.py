"""Type A Schubert polynomials, structure constants, and duality matrices.

Schubert polynomials are computed by divided differences descending from
the staircase monomial and stored as dicts from trimmed exponent tuples to
integer coefficients.  A product is expanded in the Schubert basis by
repeatedly removing the lexicographically smallest remaining monomial:
that monomial is the code monomial x^code(v) of a unique permutation v and
its coefficient is the structure constant, so the loop terminates with the
full expansion (asserted, which also guards the stable-range embedding).

``structure_matrix`` orders the two rank slices of [e, w] for smooth w so
that the matrix (c_{u,v}^w) comes out upper unitriangular: rows sort by the
quotient component of u along a linear extension of Bruhat order on the
flag-like quotient W_I^{I n J}, columns by the Poincare-dual component
w0(I) v^J w0(I n J), then both recurse into the parabolic part.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import permutations as iperms
from typing import Optional

from .coxeter import ResourceCapError, UsageError
from .typea import (avoids_3412_4231, check_perm, is_bp_perm,
                    perm_from_code, perm_inverse, perm_length, perm_mult)

__all__ = [
    "schubert_polynomial",
    "structure_constant",
    "expand_product",
    "monk_expand",
    "StructureConstantMatrix",
    "structure_matrix",
    "canonical_bijection",
]

SCHUBERT_RANK_CAP = 7


def _trim_perm(p) -> tuple:
    p = tuple(p)
    while p and p[-1] == len(p):
        p = p[:-1]
    return p


def _pad_perm(p, n) -> tuple:
    return tuple(p) + tuple(range(len(p) + 1, n + 1))


def _trim_exp(e) -> tuple:
    e = tuple(e)
    while e and e[-1] == 0:
        e = e[:-1]
    return e


def _poly_mul(f: dict, g: dict) -> dict:
    out: dict = {}
    for ea, ca in f.items():
        for eb, cb in g.items():
            n = max(len(ea), len(eb))
            key = _trim_exp(tuple((ea[i] if i < len(ea) else 0)
                                  + (eb[i] if i < len(eb) else 0)
                                  for i in range(n)))
            out[key] = out.get(key, 0) + ca * cb
    return {k: v for k, v in out.items() if v}


def _divided_difference(i: int, f: dict) -> dict:
    """The operator (f - s_i f) / (x_i - x_(i+1)), 1-based i."""
    out: dict = {}
    for e, c in f.items():
        ext = e + (0,) * max(0, i + 1 - len(e))
        a, b = ext[i - 1], ext[i]
        if a == b:
            continue
        if a > b:
            rng, sign = range(b, a), c
        else:
            rng, sign = range(a, b), -c
        for j in rng:
            key = _trim_exp(ext[:i - 1] + (j, a + b - 1 - j) + ext[i + 1:])
            out[key] = out.get(key, 0) + sign
    return {k: v for k, v in out.items() if v}


_schubert_memo: dict = {(): {(): 1}}


def _schubert(p: tuple) -> dict:
    """Schubert polynomial of a trimmed permutation (no rank cap here)."""
    cached = _schubert_memo.get(p)
    if cached is not None:
        return cached
    n = len(p)
    if p == tuple(range(n, 0, -1)):
        out = {_trim_exp(tuple(range(n - 1, -1, -1))): 1}
    else:
        # first ascent; S_p = d_i applied to the longer p*s_i
        for i in range(1, n):
            if p[i - 1] < p[i]:
                break
        q = list(p)
        q[i - 1], q[i] = q[i], q[i - 1]
        out = _divided_difference(i, _schubert(tuple(q)))
    _schubert_memo[p] = out
    return out


def schubert_polynomial(w, n: Optional[int] = None) -> dict:
    """The Schubert polynomial of w in S_n as {exponent tuple: coefficient}.

    Capped at n <= 7 (the desk scale for which the expansion machinery is
    exercised); raise the cap knowingly via the internal ``_schubert``.
    """
    p = check_perm(w if n is None else _pad_perm(w, n))
    if len(p) > SCHUBERT_RANK_CAP:
        raise ResourceCapError(f"Schubert polynomials capped at S_{SCHUBERT_RANK_CAP}")
    return dict(_schubert(_trim_perm(p)))


_product_memo: dict = {}


def expand_product(u, v) -> dict:
    """Expansion S_u * S_v = sum c_w S_w, as {trimmed perm: coefficient}."""
    u = _trim_perm(check_perm(u) if u else u)
    v = _trim_perm(check_perm(v) if v else v)
    if v < u:
        u, v = v, u
    key = (u, v)
    cached = _product_memo.get(key)
    if cached is not None:
        return cached
    f = dict(_poly_mul(_schubert(u), _schubert(v)))
    out: dict = {}
    while f:
        e = min(f)  # lex-least monomial = code monomial of one permutation
        c = f.pop(e)
        if c <= 0:
            raise AssertionError("negative leading coefficient in expansion")
        w = _trim_perm(perm_from_code(e))
        out[w] = c
        for e2, c2 in _schubert(w).items():
            if e2 == e:
                continue
            nv = f.get(e2, 0) - c * c2
            if nv:
                f[e2] = nv
            else:
                f.pop(e2, None)
    _product_memo[key] = out
    return out


def structure_constant(u, v, w) -> int:
    """c_{u,v}^w; zero when lengths do not add up (by contract, not an error)."""
    u, v, w = map(check_perm, (u, v, w))
    if perm_length(u) + perm_length(v) != perm_length(w):
        return 0
    return expand_product(u, v).get(_trim_perm(w), 0)


def monk_expand(k: int, w) -> dict:
    """Monk's rule oracle: S_{s_k} * S_w = sum over transpositions t_{a,b}.

    Runs over a <= k < b on w embedded with one extra strand; the pairs with
    a unit length jump contribute coefficient one.
    """
    w = check_perm(w)
    n = len(w) + 1
    p = _pad_perm(w, n)
    ell = perm_length(p)
    out: dict = {}
    for a in range(1, k + 1):
        for b in range(k + 1, n + 1):
            q = list(p)
            q[a - 1], q[b - 1] = q[b - 1], q[a - 1]
            q = tuple(q)
            if perm_length(q) == ell + 1:
                out[_trim_perm(q)] = 1
    return out


# ---------------------------------------------------------------------------
# ordering data for the duality matrices


def _sort_blocks(p: tuple, J: frozenset) -> tuple:
    """The quotient part p^J: sort values within each position block of J."""
    q = list(p)
    n = len(p)
    i = 1
    while i < n:
        if i in J:
            j = i
            while j + 1 < n and j + 1 in J:
                j += 1
            q[i - 1:j + 1] = sorted(q[i - 1:j + 1])
            i = j + 1
        i += 1
    return tuple(q)


def _runs(I: frozenset, n: int) -> list:
    """Position intervals [a, b] spanned by maximal generator runs of I."""
    out = []
    i = 1
    while i < n:
        if i in I:
            j = i
            while j + 1 < n and j + 1 in I:
                j += 1
            out.append((i, j + 1))
            i = j + 1
        i += 1
    return out


def _w0_of(I: frozenset, n: int) -> tuple:
    p = list(range(1, n + 1))
    for a, b in _runs(I, n):
        p[a - 1:b] = reversed(p[a - 1:b])
    return tuple(p)


def _quotient_elements(I: frozenset, K: frozenset, n: int) -> list:
    """All elements of W_I^K (K subset of I), as permutations of S_n."""
    runs = _runs(I, n)
    pools = []
    for a, b in runs:
        pools.append(list(iperms(range(a, b + 1))))
    out = []

    def build(idx, acc):
        if idx == len(runs):
            p = list(range(1, n + 1))
            for (a, b), block in zip(runs, acc):
                p[a - 1:b] = block
            q = tuple(p)
            if _sort_blocks(q, K) == q:
                out.append(q)
            return
        for block in pools[idx]:
            build(idx + 1, acc + [block])

    build(0, [])
    return out


def _extension_key(rule, seed: int = 0):
    if rule == "word":
        return lambda q: (perm_length(q), q)
    if rule == "revword":
        return lambda q: (perm_length(q), tuple(reversed(q)))
    if rule == "seeded":
        rng = random.Random(seed)
        salt = {}

        def key(q):
            if q not in salt:
                salt[q] = rng.random()
            return (perm_length(q), salt[q])
        return key
    raise UsageError(f"unknown linear extension rule {rule!r}")


def _ordering_levels(w: tuple, ext_rule: str, seed: int) -> list:
    """Per-level data (J', ext positions, dual map) down the BP chain of w."""
    n = len(w)
    levels = []
    J = frozenset(range(1, n))
    cur = w
    keyf = _extension_key(ext_rule, seed)
    while J:
        for a in sorted(J):
            J2 = J - {a}
            if is_bp_perm(cur, J2):
                break
        else:
            raise UsageError("no Grassmannian BP step found (element not smooth?)")
        quotient = _sort_blocks(cur, J2)
        parabolic = perm_mult(perm_inverse(quotient), cur)
        # minimal I with quotient = w0(I)^(I n J2)
        I_found = None
        cands = sorted((frozenset(c) for m in range(len(J) + 1)
                        for c in _subsets(sorted(J), m)), key=lambda s: (len(s), sorted(s)))
        for I in cands:
            if _sort_blocks(_w0_of(I, n), I & J2) == quotient:
                I_found = I
                break
        if I_found is None:
            raise UsageError("quotient is not of flag form w0(I)^(I n J) "
                             "(element not smooth?)")
        I = I_found
        quots = _quotient_elements(I, I & J2, n)
        order = sorted(quots, key=keyf)
        ext_pos = {q: i for i, q in enumerate(order)}
        w0i = _w0_of(I, n)
        w0ij = _w0_of(I & J2, n)
        levels.append((J2, ext_pos, w0i, w0ij))
        cur = parabolic
        J = J2
    return levels


def _subsets(items, m):
    from itertools import combinations
    return combinations(items, m)


def _row_key(u: tuple, levels) -> tuple:
    key = []
    cur = u
    for J2, ext_pos, _w0i, _w0ij in levels:
        q = _sort_blocks(cur, J2)
        key.append(ext_pos[q])
        cur = perm_mult(perm_inverse(q), cur)
    return tuple(key)


def _col_key(v: tuple, levels) -> tuple:
    key = []
    cur = v
    for J2, ext_pos, w0i, w0ij in levels:
        q = _sort_blocks(cur, J2)
        dual = perm_mult(w0i, perm_mult(q, w0ij))
        key.append(ext_pos[dual])
        cur = perm_mult(perm_inverse(q), cur)
    return tuple(key)


@dataclass
class StructureConstantMatrix:
    """The matrix (c_{u,v}^w) between complementary rank slices of [e, w]."""

    w: tuple
    k: int
    rows: tuple  # permutations, in the constructive order
    cols: tuple
    entries: tuple  # tuple of row tuples of ints
    provenance: dict

    def is_upper_unitriangular(self) -> bool:
        n = len(self.rows)
        if len(self.cols) != n:
            return False
        for i in range(n):
            if self.entries[i][i] != 1:
                return False
            for j in range(i):
                if self.entries[i][j] != 0:
                    return False
        return True


_slice_systems: dict = {}


def _interval_rank_slices(w: tuple):
    """Rank-stratified [e, w] as permutation tuples, via the type A system."""
    from .bruhat import interval
    from .coxeter import build_system
    from .typea import element_from_perm
    n = len(w)
    sys = _slice_systems.get(n)
    if sys is None:
        sys = build_system("A", n - 1)
        sys.cache()
        _slice_systems[n] = sys
    iv = interval(element_from_perm(sys, w))
    return [[e._key for e in rank] for rank in iv.ranks]


def structure_matrix(w, k: int, ext_rule: str = "word",
                     seed: int = 0) -> StructureConstantMatrix:
    """Structure-constant matrix between [e, w]_k and [e, w]_(l(w)-k).

    Requires w smooth (3412- and 4231-avoiding) in S_n with n <= 6; the
    returned row/column orders make the matrix upper unitriangular.
    """
    w = check_perm(w)
    if len(w) > 6:
        raise ResourceCapError("structure matrices capped at S_6")
    if not avoids_3412_4231(w):
        raise UsageError(f"{w} is not smooth (contains 3412 or 4231)")
    ell = perm_length(w)
    if not (0 <= k <= ell):
        raise UsageError(f"need 0 <= k <= {ell}")
    slices = _interval_rank_slices(w)
    rows = sorted(slices[k], key=lambda u: _row_key_cached(u, w, ext_rule, seed))
    cols = sorted(slices[ell - k], key=lambda v: _col_key_cached(v, w, ext_rule, seed))
    wt = _trim_perm(w)
    entries = tuple(tuple(expand_product(u, v).get(wt, 0) for v in cols)
                    for u in rows)
    prov = {
        "ext_rule": ext_rule,
        "seed": seed,
        "levels": [sorted(J2) for J2, _, _, _ in _levels_cached(w, ext_rule, seed)],
    }
    return StructureConstantMatrix(w, k, tuple(rows), tuple(cols), entries, prov)


_levels_memo: dict = {}


def _levels_cached(w, ext_rule, seed):
    key = (w, ext_rule, seed)
    if key not in _levels_memo:
        _levels_memo[key] = _ordering_levels(w, ext_rule, seed)
    return _levels_memo[key]


def _row_key_cached(u, w, ext_rule, seed):
    return _row_key(u, _levels_cached(w, ext_rule, seed))


def _col_key_cached(v, w, ext_rule, seed):
    return _col_key(v, _levels_cached(w, ext_rule, seed))


def canonical_bijection(w, k: int, ext_rule: str = "word", seed: int = 0) -> dict:
    """The unique map phi: [e,w]_k -> [e,w]_(l-k) with c_{u, phi(u)}^w != 0.

    Built as the diagonal of the unitriangular matrix; uniqueness is
    re-verified independently through the alternating-cycle criterion on
    the nonzero pattern and an invariant violation raises.
    """
    mat = structure_matrix(w, k, ext_rule, seed)
    if not mat.is_upper_unitriangular():
        raise AssertionError(
            "structure matrix is not upper unitriangular; canonical "
            "bijection undefined (invariant violation)")
    n = len(mat.rows)
    # matching uniqueness: no directed cycle through off-diagonal nonzeros
    adj = [[j for j in range(n) if j != i and mat.entries[i][j] != 0]
           for i in range(n)]
    state = [0] * n
    def has_cycle(i):
        state[i] = 1
        for j in adj[i]:
            if state[j] == 1 or (state[j] == 0 and has_cycle(j)):
                return True
        state[i] = 2
        return False
    for i in range(n):
        if state[i] == 0 and has_cycle(i):
            raise AssertionError("nonzero transversal is not unique "
                                 "(invariant violation)")
    return {mat.rows[i]: mat.cols[i] for i in range(n)}
