"""J-star patterns in crystallographic root systems.

A J-star is a tuple (beta, c_1 gamma_1, ..., c_k gamma_k) with beta in
Phi_J^+, each gamma_i in Phi^+ \\ Phi_J^+, and positive integers c_i such
that beta plus every sub-sum of the c_i gamma_i stays a positive root.  An
element w contains the star when beta is not an inversion of w but the full
sum is.  Containment of some J-star is exactly failure of the BP property
at J, which is what ``coxbp.bp.jstar_bp_test`` exploits.

In finite crystallographic systems the coefficient multiset is one of
{1}, {2}, {3}, {1,1}, {1,2}, {1,1,1}, so enumeration stops at three arms.
Arms are kept distinct: a repeated arm's witness pair is already produced
by a shorter star with a scaled coefficient.

This module also houses the two finite root-system verifiers used to
certify the simple-root star lemma and the union decomposition lemma on
concrete systems; both report violations instead of raising.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional

from .coxeter import GroupElement
from .roots import Root, RootSystem, inversion_indices

__all__ = [
    "JStar",
    "NonBPWitness",
    "enumerate_jstars",
    "contains_jstar",
    "non_bp_witnesses",
    "witness_index_pairs",
    "verify_simple_jstar_lemma",
    "verify_union_helper_lemma",
]


@dataclass(frozen=True)
class JStar:
    """A J-star (beta; c_1 gamma_1, ..., c_k gamma_k)."""

    J: frozenset
    head: Root
    arms: tuple  # ((c_i, gamma_i), ...), sorted

    @property
    def total(self) -> Root:
        out = self.head
        for c, gamma in self.arms:
            out = out + gamma.scaled(c)
        return out

    @property
    def coefficients(self) -> tuple:
        return tuple(sorted(c for c, _ in self.arms))


@dataclass(frozen=True)
class NonBPWitness:
    """Head and total sum of some J-star."""

    beta: Root
    tau: Root


def _memo(rs: RootSystem) -> dict:
    memo = getattr(rs, "_jstar_memo", None)
    if memo is None:
        memo = {}
        rs._jstar_memo = memo
    return memo


def enumerate_jstars(rs: RootSystem, J: Iterable[int]) -> tuple:
    """All J-stars of the root system, in a deterministic order."""
    J = frozenset(J)
    memo = _memo(rs)
    cached = memo.get(("stars", J))
    if cached is not None:
        return cached
    roots = rs.positive_roots
    index = rs._index
    phi_j = rs.phi_plus_indices(J)
    heads = sorted(phi_j)
    others = [k for k in range(len(roots)) if k not in phi_j]
    stars = []

    def is_root(coords):
        return coords in index

    def add(a, b):
        return tuple(x + y for x, y in zip(a, b))

    def scale(c, a):
        return tuple(c * x for x in a)

    for h in heads:
        beta = roots[h]
        b = beta.coords
        # one arm, coefficient 1, 2 or 3
        for g in others:
            gc = roots[g].coords
            for c in (1, 2, 3):
                if is_root(add(b, scale(c, gc))):
                    stars.append(JStar(J, beta, ((c, roots[g]),)))
        # two arms
        for xi, x in enumerate(others):
            xc = roots[x].coords
            bx = add(b, xc)
            if not is_root(bx):
                continue
            # {1, 1}: unordered distinct pair
            for y in others[xi + 1:]:
                yc = roots[y].coords
                if is_root(add(b, yc)) and is_root(add(bx, yc)):
                    stars.append(JStar(J, beta,
                                       tuple(sorted(((1, roots[x]), (1, roots[y])),
                                                    key=_arm_key))))
            # {1, 2}: x carries 1, y carries 2
            for y in others:
                if y == x:
                    continue
                y2 = scale(2, roots[y].coords)
                if is_root(add(b, y2)) and is_root(add(bx, y2)):
                    stars.append(JStar(J, beta,
                                       tuple(sorted(((1, roots[x]), (2, roots[y])),
                                                    key=_arm_key))))
        # three arms, {1, 1, 1}
        for xi, x in enumerate(others):
            xc = roots[x].coords
            bx = add(b, xc)
            if not is_root(bx):
                continue
            for yi in range(xi + 1, len(others)):
                y = others[yi]
                yc = roots[y].coords
                if not (is_root(add(b, yc)) and is_root(add(bx, yc))):
                    continue
                bxy = add(bx, yc)
                for z in others[yi + 1:]:
                    zc = roots[z].coords
                    if (is_root(add(b, zc)) and is_root(add(bx, zc))
                            and is_root(add(b, add(yc, zc)))
                            and is_root(add(bxy, zc))):
                        stars.append(JStar(J, beta,
                                           ((1, roots[x]), (1, roots[y]), (1, roots[z]))))
    result = tuple(sorted(set(stars), key=_star_key))
    memo[("stars", J)] = result
    return result


def _arm_key(arm):
    c, gamma = arm
    return (c, gamma.coords)


def _star_key(star: JStar):
    return (star.head.coords, len(star.arms),
            tuple(_arm_key(a) for a in star.arms))


def witness_index_pairs(rs: RootSystem, J: Iterable[int]) -> frozenset:
    """(head index, total index) pairs over all J-stars."""
    J = frozenset(J)
    memo = _memo(rs)
    cached = memo.get(("witnesses", J))
    if cached is not None:
        return cached
    pairs = frozenset((rs.index(star.head), rs.index(star.total))
                      for star in enumerate_jstars(rs, J))
    memo[("witnesses", J)] = pairs
    return pairs


def non_bp_witnesses(rs: RootSystem, J: Iterable[int]) -> tuple:
    """All non-BP witnesses (beta, tau) for J, deterministically ordered."""
    pairs = sorted(witness_index_pairs(rs, J))
    return tuple(NonBPWitness(rs.positive_roots[h], rs.positive_roots[t])
                 for h, t in pairs)


def contains_jstar(w: GroupElement, star: JStar,
                   rs: Optional[RootSystem] = None) -> bool:
    """True iff beta is not an inversion of w but the star's total sum is."""
    if rs is None:
        rs = w.system.root_system()
    inv = inversion_indices(w, rs)
    return rs.index(star.head) not in inv and rs.index(star.total) in inv


# ---------------------------------------------------------------------------
# finite verifiers


def _star_head_to_target_exists(rs: RootSystem, J: frozenset,
                                head: Root, target: Root) -> bool:
    """Is there a J-star with the given head whose total sum is ``target``?"""
    index = rs._index
    others = [rs.positive_roots[k] for k in range(len(rs.positive_roots))
              if k not in rs.phi_plus_indices(J)]
    delta = target - head
    b = head.coords

    def is_root(coords):
        return coords in index

    def add(a, c):
        return tuple(x + y for x, y in zip(a, c))

    # one arm
    for c in (1, 2, 3):
        if all(x % c == 0 for x in delta.coords):
            gamma = Root(tuple(x // c for x in delta.coords))
            if gamma.coords in index and (gamma.support - J):
                return True
    # two arms {1,1} and {1,2}
    for g1 in others:
        rest = delta - g1
        if not is_root(add(b, g1.coords)):
            continue
        if rest.coords in index:
            g2 = rest
            if g2.support - J and is_root(add(b, g2.coords)):
                return True
        if all(x % 2 == 0 for x in rest.coords):
            g2 = Root(tuple(x // 2 for x in rest.coords))
            if (g2.coords in index and g2.support - J and g2 != g1
                    and is_root(add(b, tuple(2 * x for x in g2.coords)))):
                return True
    # three arms {1,1,1}
    n = len(others)
    for i in range(n):
        g1 = others[i]
        if not is_root(add(b, g1.coords)):
            continue
        d1 = delta - g1
        for j in range(i + 1, n):
            g2 = others[j]
            g3 = d1 - g2
            if g3.coords not in index or not (g3.support - J):
                continue
            if Root(g3.coords) == g2 or Root(g3.coords) == g1:
                # arms must be distinct roots
                continue
            if (is_root(add(b, g2.coords)) and is_root(add(b, g3.coords))
                    and is_root(add(add(b, g1.coords), g2.coords))
                    and is_root(add(add(b, g1.coords), g3.coords))
                    and is_root(add(add(b, g2.coords), g3.coords))):
                return True
    return False


def verify_simple_jstar_lemma(rs: RootSystem, J: Iterable[int]) -> list:
    """Check, for every simple alpha in Delta_J and tau outside Phi_J^+
    supported on alpha, that either some alpha_j in Delta_J keeps
    tau - alpha_j a positive root supported on alpha, or a J-star with head
    alpha sums to tau.  Returns the list of violating (alpha, tau) pairs.
    """
    J = frozenset(J)
    violations = []
    phi_j = rs.phi_plus_indices(J)
    for i in sorted(J):
        alpha = rs.simple_root(i)
        for k, tau in enumerate(rs.positive_roots):
            if k in phi_j or not tau.supported_on(i):
                continue
            ok = False
            for j in sorted(J):
                diff = tau - rs.simple_root(j)
                if diff.coords in rs._index and diff.supported_on(i):
                    ok = True
                    break
            if not ok:
                ok = _star_head_to_target_exists(rs, J, alpha, tau)
            if not ok:
                violations.append((alpha, tau))
    return violations


def verify_union_helper_lemma(rs: RootSystem, J1: Iterable[int],
                              J2: Iterable[int], max_parts: int = 3) -> list:
    """Check the union decomposition property for J = J1 u J2.

    For every non-BP witness (beta, tau) for J with beta outside
    Phi_J1^+ u Phi_J2^+, look for beta = beta_1 + ... + beta_l (2 <= l <=
    max_parts) into positive roots with every (beta_i, tau) a non-BP witness
    for J, J1 or J2.  Returns the list of (beta, tau) with no decomposition
    found at the cap; an empty list certifies the property at this cap.

    The property is asserted for J1, J2 connected in the Coxeter diagram;
    the sweep drivers only feed connected pairs.
    """
    J1, J2 = frozenset(J1), frozenset(J2)
    J = J1 | J2
    w_all = (witness_index_pairs(rs, J) | witness_index_pairs(rs, J1)
             | witness_index_pairs(rs, J2))
    allowed_heads_by_tau: dict = {}
    for h, t in w_all:
        allowed_heads_by_tau.setdefault(t, set()).add(h)
    skip = rs.phi_plus_indices(J1) | rs.phi_plus_indices(J2)
    index = rs._index
    n = len(rs.positive_roots)
    failures = []
    for b, t in sorted(witness_index_pairs(rs, J)):
        if b in skip:
            continue
        beta = rs.positive_roots[b]
        good_heads = allowed_heads_by_tau.get(t, set())
        found = False
        for i in range(n):
            if i not in good_heads:
                continue
            rest = beta - rs.positive_roots[i]
            j = index.get(rest.coords)
            if j is not None and j in good_heads:
                found = True
                break
        if not found and max_parts >= 3:
            for i in range(n):
                if i not in good_heads:
                    continue
                r1 = beta - rs.positive_roots[i]
                for j in range(i, n):
                    if j not in good_heads:
                        continue
                    rest = r1 - rs.positive_roots[j]
                    k = index.get(rest.coords)
                    if k is not None and k in good_heads:
                        found = True
                        break
                if found:
                    break
        if not found:
            failures.append((beta, rs.positive_roots[t]))
    return failures
