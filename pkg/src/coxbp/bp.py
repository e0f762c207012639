"""Billey-Postnikov decompositions, the BP family, and the BP poset.

Three independent BP tests live here: the defining support/descent
criterion ``is_bp``, the Poincare factorization test ``is_bp_poincare``,
and (for crystallographic systems) the J-star containment test
``jstar_bp_test``.  They are mutual oracles and the test suite checks them
against each other exhaustively on small Weyl groups.

``bp_family`` sweeps all 2^|S| subsets; in finite Weyl groups the family is
closed under union and intersection, so it is the set of order ideals of
the BP preposet, which ``bp_poset`` extracts through the closure operator.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Optional

from .bruhat import DEFAULT_LENGTH_CAP, is_rationally_smooth, poincare
from .coxeter import GroupElement, ResourceCapError, UsageError
from .jstars import witness_index_pairs
from .roots import inversion_indices

__all__ = [
    "BPFamily",
    "BPPoset",
    "is_bp",
    "is_bp_poincare",
    "jstar_bp_test",
    "bp_family",
    "check_lattice",
    "closure",
    "bp_poset",
    "poset_from_closures",
    "grassmannian_bp_exists",
    "linear_extension_factorization",
]


def is_bp(w: GroupElement, J: Iterable[int]) -> bool:
    """Defining test: Supp(w^J) n J is contained in D_L(w_J)."""
    sys = w.system
    J = sys.check_subset(J)
    d = sys.parabolic_decompose(w, J)
    return (d.quotient.support & J) <= d.parabolic.left_descents()


def is_bp_poincare(w: GroupElement, J: Iterable[int],
                   cap_length: int = DEFAULT_LENGTH_CAP) -> bool:
    """Poincare test: P(w) = P^J(w^J) * P(w_J)."""
    sys = w.system
    J = sys.check_subset(J)
    d = sys.parabolic_decompose(w, J)
    lhs = poincare(w, (), cap_length)
    rhs = poincare(d.quotient, J, cap_length) * poincare(d.parabolic, (), cap_length)
    return lhs.coeffs == rhs.coeffs


def jstar_bp_test(w: GroupElement, J: Iterable[int]) -> bool:
    """Pattern test: w is BP at J iff it contains no J-star.

    Needs a crystallographic system (uses the attached root system).
    """
    sys = w.system
    J = sys.check_subset(J)
    rs = sys.root_system()
    cache = sys._cache
    if cache is not None:
        mask = cache.inversion_masks()[cache.index_of(w)]
        for head, total in witness_index_pairs(rs, J):
            if not (mask >> head & 1) and (mask >> total & 1):
                return False
        return True
    inv = inversion_indices(w, rs)
    for head, total in witness_index_pairs(rs, J):
        if head not in inv and total in inv:
            return False
    return True


@dataclass(frozen=True)
class BPFamily:
    """The set BP(w) of generator subsets inducing BP decompositions."""

    w: GroupElement
    members: frozenset  # of frozensets of generator indices

    def __contains__(self, J) -> bool:
        return frozenset(J) in self.members

    def sorted_members(self) -> list:
        return sorted(self.members, key=lambda J: (len(J), sorted(J)))

    def __len__(self):
        return len(self.members)


def bp_family(w: GroupElement, max_rank: int = 20) -> BPFamily:
    """BP(w), by the definitional test over all 2^|S| subsets."""
    sys = w.system
    r = sys.rank
    if r > max_rank:
        hint = "; use the type A fast path (typea.bp_poset_fast) instead" \
            if sys.family == "A" else ""
        raise ResourceCapError(
            f"rank {r} exceeds the 2^rank family sweep cap {max_rank}{hint}")
    gens = list(range(1, r + 1))
    members = set()
    for size in range(r + 1):
        for J in combinations(gens, size):
            J = frozenset(J)
            if is_bp(w, J):
                members.add(J)
    return BPFamily(w, frozenset(members))


def check_lattice(family: BPFamily) -> bool:
    """True iff the family is closed under union and intersection."""
    members = family.members
    mlist = list(members)
    for a in range(len(mlist)):
        for b in range(a + 1, len(mlist)):
            if mlist[a] | mlist[b] not in members:
                return False
            if mlist[a] & mlist[b] not in members:
                return False
    return True


def closure(w: GroupElement, A: Iterable[int],
            family: Optional[BPFamily] = None) -> frozenset:
    """The w-closure of A: the smallest member of BP(w) containing A."""
    sys = w.system
    A = sys.check_subset(A)
    if family is None:
        family = bp_family(w)
    full = frozenset(range(1, sys.rank + 1))
    out = full
    for J in family.members:
        if A <= J:
            out = out & J
    if out not in family.members:
        raise UsageError(
            f"BP({w}) is not closed under intersection; closure undefined")
    return out


@dataclass(frozen=True)
class BPPoset:
    """Partial order on blocks of generators whose ideals index BP(w).

    ``preposet`` holds the generator-level relations (i, j) meaning
    i <=_w j; ``blocks`` are its mutual-comparability classes, ``leq`` the
    induced partial order as (block_index, block_index) pairs (reflexive
    closed).
    """

    generators: tuple
    blocks: tuple  # of frozensets, sorted by min element
    leq: frozenset  # of (i, j) block-index pairs, i below j
    preposet: frozenset  # of (a, b) generator pairs, a <=_w b

    def block_index(self, gen: int) -> int:
        for i, b in enumerate(self.blocks):
            if gen in b:
                return i
        raise UsageError(f"generator {gen} not in any block")

    def block_leq(self, i: int, j: int) -> bool:
        return (i, j) in self.leq

    def covers(self) -> tuple:
        """Hasse diagram edges (lower, upper) on block indices."""
        n = len(self.blocks)
        strict = {(i, j) for (i, j) in self.leq if i != j}
        out = []
        for i, j in sorted(strict):
            if not any((i, k) in strict and (k, j) in strict for k in range(n)):
                out.append((i, j))
        return tuple(out)

    def ideals(self):
        """All order ideals, as frozensets of generators."""
        n = len(self.blocks)
        below = [frozenset(i for i in range(n) if (i, j) in self.leq)
                 for j in range(n)]
        out = []
        for mask in range(1 << n):
            chosen = {i for i in range(n) if mask >> i & 1}
            if all(below[j] <= chosen for j in chosen):
                out.append(frozenset(g for j in chosen for g in self.blocks[j]))
        return out

    def maximal_blocks(self) -> tuple:
        strict = {(i, j) for (i, j) in self.leq if i != j}
        tops = [i for i in range(len(self.blocks))
                if not any((i, j) in strict for j in range(len(self.blocks)))]
        return tuple(tops)


def poset_from_closures(closures: dict, rank: int,
                        members: Optional[frozenset] = None) -> BPPoset:
    """Build the BP (pre)poset from the singleton closures cl_w(i).

    ``i <=_w j`` iff i lies in cl_w(j); blocks are the two-way classes.
    When the full family is supplied, the ideal set is verified against it.
    """
    gens = tuple(range(1, rank + 1))
    pre = frozenset((a, b) for b in gens for a in closures[b])
    blocks = []
    assigned = {}
    for g in gens:
        if g in assigned:
            continue
        blk = frozenset(h for h in gens
                        if (h, g) in pre and (g, h) in pre)
        for h in blk:
            assigned[h] = len(blocks)
        blocks.append(blk)
    blocks = tuple(sorted(blocks, key=min))
    idx = {}
    for i, b in enumerate(blocks):
        for g in b:
            idx[g] = i
    leq = set()
    for i, bi in enumerate(blocks):
        for j, bj in enumerate(blocks):
            if (min(bi), min(bj)) in pre:
                leq.add((i, j))
    poset = BPPoset(gens, blocks, frozenset(leq), pre)
    if members is not None:
        ideals = frozenset(poset.ideals())
        if ideals != members:
            raise UsageError(
                "BP family is not the ideal family of its preposet "
                "(the union/intersection closure fails here)")
    return poset


def bp_poset(w: GroupElement, family: Optional[BPFamily] = None) -> BPPoset:
    """The BP poset of w, from the closure operator on singletons."""
    sys = w.system
    if family is None:
        family = bp_family(w)
    closures = {i: closure(w, {i}, family) for i in range(1, sys.rank + 1)}
    return poset_from_closures(closures, sys.rank, family.members)


def grassmannian_bp_exists(w: GroupElement) -> Optional[int]:
    """Some s with S \\ {s} in BP(w), or None (least such s for determinism)."""
    sys = w.system
    full = frozenset(range(1, sys.rank + 1))
    for s in range(1, sys.rank + 1):
        if is_bp(w, full - {s}):
            return s
    return None


def linear_extension_factorization(w: GroupElement, extension: Iterable[int],
                                   check_smooth: bool = True,
                                   cap_length: int = DEFAULT_LENGTH_CAP) -> list:
    """Factor w across a top-down linear extension of its BP poset.

    ``extension`` lists the generators a_1, ..., a_r with a_i maximal in the
    BP poset restricted to the still-unpeeled generators; the returned
    factors w^(i) multiply left to right to w, length-additively, and each
    step is a Grassmannian BP decomposition of the previous parabolic part.
    """
    sys = w.system
    ext = tuple(extension)
    if sorted(ext) != list(range(1, sys.rank + 1)):
        raise UsageError("extension must list every generator exactly once")
    if check_smooth:
        if not is_rationally_smooth(w, (), cap_length):
            raise UsageError(f"{w} is not rationally smooth")
        poset = bp_poset(w)
        if any(len(b) != 1 for b in poset.blocks):
            raise UsageError("BP poset has a non-singleton block; "
                             "no Grassmannian chain exists")
    factors = []
    current = w
    J = frozenset(range(1, sys.rank + 1))
    total = 0
    for a in ext:
        J2 = J - {a}
        if not is_bp(current, J2):
            raise UsageError(
                f"{sorted(J2)} is not a BP subset of the parabolic part; "
                "the sequence is not a linear extension of the BP poset")
        d = sys.parabolic_decompose(current, J2)
        factors.append(d.quotient)
        total += d.quotient.length
        current = d.parabolic
        J = J2
    if total != w.length:
        raise UsageError("factor lengths do not add up (internal error)")
    return factors
