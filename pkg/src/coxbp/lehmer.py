"""Generalized Lehmer codes: order-preserving bijections from chain products.

A Lehmer code for a Bruhat interval is an order-preserving bijection from a
product of chains C_{a_1} x ... x C_{a_k} onto the interval.  Codes are
stored as explicit tuple -> element mappings.  Three routes are provided:

* ``construct_quotient_code`` builds a code for [e, w]^J in type A when J
  is a tail interval of generators {s_m, ..., s_(n-1)} (including J empty)
  and w is J-rationally smooth, by a recursion that peels one Grassmannian
  chain factor per step; the classical code appears as the terminal case.
* ``bp_product_map`` materializes the order-preserving multiplication
  bijection [e, w^J]^J x [e, w_J] -> [e, w] attached to any BP subset, and
  ``compose_codes`` glues codes for the two factors through it.
* ``search_code`` decides existence by exact backtracking: candidate chain
  multisets are those whose rank profile matches the interval's, and within
  a candidate, elements are assigned rank by rank from the top with
  down-set pruning.  Exhausting all candidates certifies nonexistence;
  hitting the time budget returns an explicit "unknown".
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from itertools import product as iproduct
from typing import Iterable, Optional

from .bruhat import (DEFAULT_LENGTH_CAP, BruhatInterval, PoincarePolynomial,
                     interval, poincare, q_integer_product)
from .bp import is_bp
from .coxeter import GroupElement, UsageError
from .typea import (element_from_perm, perm_from_code, perm_from_element,
                    perm_identity, perm_inverse, perm_mult)

__all__ = [
    "ChainProduct",
    "LehmerCode",
    "CodeSearchResult",
    "admissible_tail_subset",
    "construct_quotient_code",
    "bp_product_map",
    "compose_codes",
    "verify_code",
    "search_code",
    "chain_candidates",
]


@dataclass(frozen=True)
class ChainProduct:
    """A product of chains C_{a_1} x ... x C_{a_k}; every a_i >= 2."""

    sizes: tuple

    def __post_init__(self):
        if any(a < 2 for a in self.sizes):
            raise UsageError("chain sizes must be >= 2 (trivial factors dropped)")

    @property
    def cardinality(self) -> int:
        out = 1
        for a in self.sizes:
            out *= a
        return out

    @property
    def top_rank(self) -> int:
        return sum(a - 1 for a in self.sizes)

    def tuples(self):
        return iproduct(*(range(a) for a in self.sizes))

    def rank_poly(self) -> PoincarePolynomial:
        return q_integer_product(self.sizes)

    def upper_covers(self, t: tuple):
        for i, a in enumerate(self.sizes):
            if t[i] + 1 < a:
                yield t[:i] + (t[i] + 1,) + t[i + 1:]


@dataclass
class LehmerCode:
    """An order-preserving bijection from a chain product onto an interval."""

    chains: ChainProduct
    entries: dict  # tuple -> GroupElement

    def __post_init__(self):
        if len(self.entries) != self.chains.cardinality:
            raise UsageError("entry count does not match the chain product")


@dataclass
class CodeSearchResult:
    status: str  # "found" | "none" | "unknown"
    code: Optional[LehmerCode]
    candidates: tuple  # examined chain multisets
    exhausted: tuple   # bool per candidate
    elapsed: float = 0.0


# ---------------------------------------------------------------------------
# verification


def verify_code(code: LehmerCode, iv: BruhatInterval) -> bool:
    """Bijectivity, rank compatibility, and cover-pair order preservation."""
    entries = code.entries
    if len(entries) != iv.size:
        return False
    values = set(entries.values())
    if len(values) != iv.size or values != set(iv.elements):
        return False
    for t, w in entries.items():
        if sum(t) != w.length:
            return False
    for t, w in entries.items():
        ti = iv.index[w]
        for t2 in code.chains.upper_covers(t):
            if not iv.leq(ti, iv.index[entries[t2]]):
                return False
    return True


# ---------------------------------------------------------------------------
# the BP product map


@dataclass
class ProductMap:
    """The multiplication bijection [e, w^J]^J x [e, w_J] -> [e, w]."""

    w: GroupElement
    J: frozenset
    quotient_interval: BruhatInterval
    fiber_interval: BruhatInterval
    pairs: dict  # (x, y) -> x*y

    def is_bijective_onto(self, iv: BruhatInterval) -> bool:
        values = list(self.pairs.values())
        return (len(values) == iv.size
                and len(set(values)) == len(values)
                and set(values) == set(iv.elements))

    def preserves_order(self, iv: BruhatInterval) -> bool:
        """Check order preservation on covers of the product poset."""
        qi, fi = self.quotient_interval, self.fiber_interval
        q_ups = {}
        for lo, hi in qi.covers:
            q_ups.setdefault(lo, []).append(hi)
        f_ups = {}
        for lo, hi in fi.covers:
            f_ups.setdefault(lo, []).append(hi)
        for (x, y), xy in self.pairs.items():
            base = iv.index[xy]
            for xi in q_ups.get(qi.index[x], ()):
                other = self.pairs[(qi.elements[xi], y)]
                if not iv.leq(base, iv.index[other]):
                    return False
            for yi in f_ups.get(fi.index[y], ()):
                other = self.pairs[(x, fi.elements[yi])]
                if not iv.leq(base, iv.index[other]):
                    return False
        return True


def bp_product_map(w: GroupElement, J: Iterable[int],
                   cap_length: int = DEFAULT_LENGTH_CAP) -> ProductMap:
    """Materialize the order-preserving bijection attached to J in BP(w)."""
    sys = w.system
    J = sys.check_subset(J)
    if not is_bp(w, J):
        raise UsageError(f"{sorted(J)} is not in BP({w})")
    d = sys.parabolic_decompose(w, J)
    qi = interval(d.quotient, J, cap_length)
    fi = interval(d.parabolic, (), cap_length)
    pairs = {(x, y): x * y for x in qi.elements for y in fi.elements}
    return ProductMap(w, J, qi, fi, pairs)


def compose_codes(w: GroupElement, J: Iterable[int], quotient_code: LehmerCode,
                  fiber_code: LehmerCode,
                  cap_length: int = DEFAULT_LENGTH_CAP) -> LehmerCode:
    """Glue codes for [e, w^J]^J and [e, w_J] into one for [e, w]."""
    pm = bp_product_map(w, J, cap_length)
    sizes = quotient_code.chains.sizes + fiber_code.chains.sizes
    entries = {}
    for t1, x in quotient_code.entries.items():
        for t2, y in fiber_code.entries.items():
            entries[t1 + t2] = pm.pairs[(x, y)]
    return LehmerCode(ChainProduct(sizes), entries)


# ---------------------------------------------------------------------------
# the constructive type A quotient code


def admissible_tail_subset(J: Iterable[int], n: int) -> Optional[int]:
    """Return m with J = {m, ..., n-1} (m = n for empty J), else None."""
    J = sorted(set(J))
    if not J:
        return n
    m = J[0]
    if J == list(range(m, n)):
        return m
    return None


def _chain_front_perm(v: int, n: int) -> tuple:
    """The permutation (v, 1, 2, ..., v-1, v+1, ..., n): minimal with w(1)=v."""
    rest = [x for x in range(1, n + 1) if x != v]
    return (v, *rest)


def _cycle_perm(j: int, n: int) -> tuple:
    """s_1 s_2 ... s_j as a permutation: (2, 3, ..., j+1, 1, j+2, ...)."""
    return tuple(range(2, j + 2)) + (1,) + tuple(range(j + 2, n + 1))


def _embed(q: tuple) -> tuple:
    """S_(n-1) -> S_n shifting everything past a new fixed point 1."""
    return (1,) + tuple(v + 1 for v in q)


def _tail_code(p: tuple, m: int):
    """Chains and tuple->permutation map for [e, p]^J, J = {m..n-1} in S_n.

    Follows the Grassmannian-peeling recursion; p must lie in W^J and be
    J-rationally smooth (the caller checks, the final code is re-verified).
    """
    n = len(p)
    if n <= 1:
        return [], {(): p}
    if m == 1:
        # J = S: the quotient is a single point
        return [], {(): perm_identity(n)}
    if m == 2:
        # W^J is the chain of permutations with a single left prefix value
        return [p[0]], {(k,): _chain_front_perm(k + 1, n) for k in range(p[0])}
    # u = p * w0(J): reverse the tail positions m..n
    u = p[:m - 1] + p[m - 1:][::-1]
    pos1 = u.index(1) + 1
    b1 = any(u[i - 1] < u[0] for i in range(pos1 + 1, n + 1))
    b2 = any(u[i - 1] > u[0] for i in range(1, pos1))
    if b1 and b2:
        raise UsageError("element is not J-rationally smooth (3412 found)")
    if not b1:
        # peel the right coset chain of K = {2..n-1}: the first value of u
        top = u[0]
        u_k = perm_mult(perm_inverse(_chain_front_perm(top, n)), u)
        q = tuple(v - 1 for v in u_k[1:])
        q_quot = q[:m - 2] + tuple(sorted(q[m - 2:]))
        sizes, entries = _tail_code(q_quot, m - 1)
        out = {}
        for c in range(top):
            x = _chain_front_perm(c + 1, n)
            for t, y in entries.items():
                out[(c,) + t] = perm_mult(x, _embed(y))
        return [top] + sizes, out
    if m > pos1:
        # peel the left coset chain {e, s_1, s_1 s_2, ...} of length pos1
        ku = (1,) + u[:pos1 - 1] + u[pos1:]
        q = tuple(v - 1 for v in ku[1:])
        q_quot = q[:m - 2] + tuple(sorted(q[m - 2:]))
        sizes, entries = _tail_code(q_quot, m - 1)
        out = {}
        for t, y in entries.items():
            ey = _embed(y)
            for c in range(pos1):
                out[t + (c,)] = perm_mult(ey, _cycle_perm(c, n))
        return sizes + [pos1], out
    # m <= pos1: u must be the longest element, p = w0 * w0(J)
    if u != tuple(range(n, 0, -1)):
        raise UsageError("unexpected shape (element not J-rationally smooth?)")
    sizes = [n - i + 1 for i in range(1, m)]
    out = {}
    for t in iproduct(*(range(a) for a in sizes)):
        out[t] = perm_from_code(t, n)
    return sizes, out


def construct_quotient_code(w: GroupElement, J: Iterable[int],
                            check: bool = True,
                            cap_length: int = DEFAULT_LENGTH_CAP) -> LehmerCode:
    """A Lehmer code for [e, w]^J, W = S_n, J a tail interval {s_m..s_(n-1)}.

    Raises ``UsageError`` when J is not of the admissible shape or w is not
    a J-rationally smooth element of W^J.  With ``check`` the constructed
    code is validated against the enumerated interval before returning.
    """
    sys = w.system
    if sys.family != "A":
        raise UsageError("the constructive quotient code is a type A operation")
    J = sys.check_subset(J)
    p = perm_from_element(w)
    n = len(p)
    m = admissible_tail_subset(J, n)
    if m is None:
        raise UsageError(
            f"J={sorted(J)} is not a tail interval {{s_m,...,s_{n-1}}}; "
            "no constructive code is defined for this shape")
    if not sys.minimal_in_quotient(w, J):
        raise UsageError(f"{w} is not in W^J for J={sorted(J)}")
    if not poincare(w, J, cap_length).is_palindromic():
        raise UsageError(f"{w} is not J-rationally smooth")
    sizes, entries = _tail_code(p, m)
    # strip trivial chain coordinates
    keep = [i for i, a in enumerate(sizes) if a >= 2]
    chains = ChainProduct(tuple(sizes[i] for i in keep))
    mapped = {}
    for t, q in entries.items():
        key = tuple(t[i] for i in keep)
        mapped[key] = element_from_perm(sys, q)
    code = LehmerCode(chains, mapped)
    if check:
        iv = interval(w, J, cap_length)
        if not verify_code(code, iv):
            raise UsageError("constructed code failed validation (internal error)")
    return code


# ---------------------------------------------------------------------------
# exact search


def chain_candidates(profile: tuple) -> list:
    """Chain multisets whose product-of-chains rank profile equals ``profile``.

    Candidates are nondecreasing size tuples with product equal to the
    interval size; the full polynomial match prunes hard.
    """
    total = sum(profile)
    degree = len(profile) - 1
    target = tuple(profile)
    out = []

    def rec(remaining, min_size, acc, deg_left):
        if remaining == 1:
            if deg_left == 0 and q_integer_product(acc).coeffs == target:
                out.append(tuple(acc))
            return
        a = min_size
        while a <= remaining:
            if remaining % a == 0 and a - 1 <= deg_left:
                acc.append(a)
                rec(remaining // a, a, acc, deg_left - (a - 1))
                acc.pop()
            a += 1

    if total == 1:
        return [()] if degree == 0 else []
    rec(total, 2, [], degree)
    return out


class _SearchTimeout(Exception):
    pass


class _Assigner:
    """Backtracking assignment of interval elements to chain-product tuples."""

    def __init__(self, sizes: tuple, iv: BruhatInterval, deadline: Optional[float]):
        self.sizes = sizes
        self.iv = iv
        self.deadline = deadline
        self.nodes = 0
        self.tuples_by_rank: dict = {}
        all_tuples = list(iproduct(*(range(a) for a in sizes)))
        for t in all_tuples:
            self.tuples_by_rank.setdefault(sum(t), []).append(t)
        self.ups_of = {}
        for t in all_tuples:
            ups = []
            for i, a in enumerate(sizes):
                if t[i] + 1 < a:
                    ups.append(t[:i] + (t[i] + 1,) + t[i + 1:])
            self.ups_of[t] = tuple(ups)
        self.down = iv.down_masks
        n = iv.size
        up = [0] * n
        downs_count = [m.bit_count() for m in self.down]
        ups = [[] for _ in range(n)]
        for lo, hi in iv.covers:
            ups[lo].append(hi)
        for i in range(n - 1, -1, -1):
            mask = 1 << i
            for hi in ups[i]:
                mask |= up[hi]
            up[i] = mask
        self.up_count = [m.bit_count() for m in up]
        self.down_count = downs_count
        self.rank_masks = {}
        for i, w in enumerate(iv.elements):
            self.rank_masks[w.length] = self.rank_masks.get(w.length, 0) | (1 << i)
        # count-feasible element mask per tuple
        self.feasible = {}
        for t in all_tuples:
            dc = 1
            uc = 1
            for x, a in zip(t, sizes):
                dc *= x + 1
                uc *= a - x
            h = sum(t)
            mask = 0
            m = self.rank_masks.get(h, 0)
            while m:
                low = m & -m
                i = low.bit_length() - 1
                if downs_count[i] >= dc and self.up_count[i] >= uc:
                    mask |= low
                m ^= low
            self.feasible[t] = mask
        # symmetry breaking between equal-size chains at rank H-1
        self.sym_pairs = []
        top = tuple(a - 1 for a in sizes)
        for i in range(len(sizes)):
            for j in range(i + 1, len(sizes)):
                if sizes[i] == sizes[j]:
                    ti = top[:i] + (top[i] - 1,) + top[i + 1:]
                    tj = top[:j] + (top[j] - 1,) + top[j + 1:]
                    self.sym_pairs.append((ti, tj))

    def _tick(self):
        self.nodes += 1
        if self.deadline is not None and (self.nodes == 1 or self.nodes % 1024 == 0):
            if time.monotonic() > self.deadline:
                raise _SearchTimeout

    def run(self) -> Optional[dict]:
        H = sum(a - 1 for a in self.sizes)
        self.assignment: dict = {}
        self.used = 0
        if self._solve_rank(H):
            return dict(self.assignment)
        return None

    def _candidates(self, t) -> int:
        mask = self.feasible[t] & ~self.used
        for t2 in self.ups_of[t]:
            img = self.assignment.get(t2)
            if img is not None:
                mask &= self.down[img]
        return mask

    def _solve_rank(self, h: int) -> bool:
        if h < 0:
            return True
        todo = list(self.tuples_by_rank.get(h, []))
        if not todo:
            return self._solve_rank(h - 1)
        return self._fill(todo, h)

    def _fill(self, todo: list, h: int) -> bool:
        self._tick()
        if not todo:
            for ti, tj in self.sym_pairs:
                a, b = self.assignment.get(ti), self.assignment.get(tj)
                if a is not None and b is not None and a > b:
                    return False
            return self._solve_rank(h - 1)
        # most-constrained tuple first
        best_i = None
        best_mask = None
        for i, t in enumerate(todo):
            mask = self._candidates(t)
            if mask == 0:
                return False
            if best_mask is None or mask.bit_count() < best_mask.bit_count():
                best_i, best_mask = i, mask
                if best_mask.bit_count() == 1:
                    break
        t = todo.pop(best_i)
        mask = best_mask
        while mask:
            low = mask & -mask
            idx = low.bit_length() - 1
            self.assignment[t] = idx
            self.used |= low
            if self._fill(todo, h):
                todo.insert(best_i, t)
                return True
            del self.assignment[t]
            self.used &= ~low
            mask ^= low
        todo.insert(best_i, t)
        return False


def search_code(iv: BruhatInterval,
                time_budget: Optional[float] = 60.0) -> CodeSearchResult:
    """Find a Lehmer code for the interval, certify none exists, or time out.

    Nonexistence is certified relative to the candidate space of chain
    products whose rank profile matches the interval's; once the profiles
    agree, any order-preserving bijection is forced to be rank-compatible
    (the chain product's height then equals the interval's), so the
    rank-by-rank search is exhaustive over that space.
    """
    start = time.monotonic()
    deadline = None if time_budget is None else start + time_budget
    profile = tuple(len(r) for r in iv.ranks)
    cands = chain_candidates(profile)
    exhausted = []
    for sizes in cands:
        assigner = _Assigner(sizes, iv, deadline)
        try:
            sol = assigner.run()
        except _SearchTimeout:
            exhausted.append(False)
            return CodeSearchResult("unknown", None, tuple(cands),
                                    tuple(exhausted) + (False,) * (len(cands) - len(exhausted)),
                                    time.monotonic() - start)
        if sol is not None:
            entries = {t: iv.elements[i] for t, i in sol.items()}
            code = LehmerCode(ChainProduct(sizes), entries)
            exhausted.append(True)
            return CodeSearchResult("found", code, tuple(cands),
                                    tuple(exhausted) + (False,) * (len(cands) - len(exhausted)),
                                    time.monotonic() - start)
        exhausted.append(True)
    return CodeSearchResult("none", None, tuple(cands), tuple(exhausted),
                            time.monotonic() - start)
