"""Type A fast paths on one-line permutations.

Permutations are tuples of the values 1..n.  BP membership for a connected
generator interval J = {a, ..., b-1} reduces to avoidance of three marked
patterns inside the position window [a, b]:

* 231 with the "23" marked:   i1 < i2 in the window, i3 after it,
  w(i3) < w(i1) < w(i2);
* 312 with the "12" marked:   i1 before the window, i2 < i3 inside,
  w(i2) < w(i3) < w(i1);
* 3142 with the "14" marked:  i1 before, i2 < i3 inside, i4 after,
  w(i2) < w(i4) < w(i1) < w(i3).

Each finder returns a witnessing index tuple, which drives the closure
widening loop: a found pattern forces the closure window to cover its
outer indices, and iterating to a fixed point computes cl_w(A) without any
2^(n-1) sweep.  The BP poset then comes from the singleton closures.
"""

from __future__ import annotations

from typing import Iterable

from .bp import BPPoset, poset_from_closures
from .coxeter import CoxeterSystem, GroupElement, UsageError

__all__ = [
    "check_perm",
    "perm_identity",
    "perm_inverse",
    "perm_mult",
    "perm_length",
    "perm_support",
    "left_descents_perm",
    "right_descents_perm",
    "word_from_perm",
    "perm_from_word",
    "element_from_perm",
    "perm_from_element",
    "lehmer_code",
    "perm_from_code",
    "avoids_3412_4231",
    "find_marked_pattern",
    "is_bp_interval_fast",
    "closure_fast",
    "bp_poset_fast",
    "bp_members_fast",
    "is_bp_perm",
]


def check_perm(p) -> tuple:
    p = tuple(p)
    if sorted(p) != list(range(1, len(p) + 1)):
        raise UsageError(f"{p} is not a permutation of 1..{len(p)}")
    return p


def perm_identity(n: int) -> tuple:
    return tuple(range(1, n + 1))


def perm_inverse(p) -> tuple:
    inv = [0] * len(p)
    for pos, v in enumerate(p):
        inv[v - 1] = pos + 1
    return tuple(inv)


def perm_mult(p, q) -> tuple:
    """(p*q)(i) = p(q(i))."""
    return tuple(p[q[i] - 1] for i in range(len(p)))


def perm_length(p) -> int:
    n = len(p)
    return sum(1 for i in range(n) for j in range(i + 1, n) if p[i] > p[j])


def perm_support(p) -> frozenset:
    """Generators s_i with s_i <= p: those i where p([1..i]) != [1..i]."""
    out = set()
    mx = 0
    for i in range(1, len(p)):
        mx = max(mx, p[i - 1])
        if mx > i:
            out.add(i)
    return frozenset(out)


def right_descents_perm(p) -> frozenset:
    return frozenset(i for i in range(1, len(p)) if p[i - 1] > p[i])


def left_descents_perm(p) -> frozenset:
    return right_descents_perm(perm_inverse(p))


def word_from_perm(p) -> tuple:
    """Some reduced word for p (peel right descents greedily)."""
    p = list(p)
    word = []
    while True:
        for i in range(1, len(p)):
            if p[i - 1] > p[i]:
                p[i - 1], p[i] = p[i], p[i - 1]
                word.append(i)
                break
        else:
            break
    return tuple(reversed(word))


def perm_from_word(n: int, word: Iterable[int]) -> tuple:
    p = list(range(1, n + 1))
    for i in word:
        p[i - 1], p[i] = p[i], p[i - 1]
    return tuple(p)


def element_from_perm(system: CoxeterSystem, p) -> GroupElement:
    """Wrap a one-line permutation as an element of a type A system."""
    p = check_perm(p)
    if system.family != "A" or system.rank != len(p) - 1:
        raise UsageError(f"need a type A system of rank {len(p) - 1}")
    return system._element_from_key(p)  # the engine key is the one-line tuple


def perm_from_element(w: GroupElement) -> tuple:
    if w.system.family != "A":
        raise UsageError("not a type A element")
    return w._key


def lehmer_code(p) -> tuple:
    """Classical code: c_i = #{j > i : p(i) > p(j)}."""
    n = len(p)
    return tuple(sum(1 for j in range(i + 1, n) if p[i] > p[j])
                 for i in range(n))


def perm_from_code(code, n: int = None) -> tuple:
    """Inverse of the classical code (n inferred minimally when omitted)."""
    code = tuple(code)
    if n is None:
        n = max((i + 1 + c for i, c in enumerate(code)), default=0)
    code = code + (0,) * (n - len(code))
    avail = list(range(1, n + 1))
    out = []
    for c in code:
        out.append(avail.pop(c))
    return tuple(out)


def avoids_3412_4231(p) -> bool:
    """The Lakshmibai-Sandhya smoothness patterns, by direct scan."""
    n = len(p)
    for i in range(n):
        for j in range(i + 1, n):
            for k in range(j + 1, n):
                for l in range(k + 1, n):
                    a, b, c, d = p[i], p[j], p[k], p[l]
                    if c < d < a < b:   # 3412
                        return False
                    if d < b < c < a:   # 4231
                        return False
    return True


# ---------------------------------------------------------------------------
# marked-pattern finders (positions are 1-based; window is [a, b])


def _find_231(p, a, b):
    n = len(p)
    if b >= n:
        return None
    m3pos = min(range(b + 1, n + 1), key=lambda i: p[i - 1])
    m3 = p[m3pos - 1]
    best = None  # window index of the smallest value exceeding m3 so far
    for pos in range(a, b + 1):
        v = p[pos - 1]
        if best is not None and v > p[best - 1]:
            return (best, pos, m3pos)
        if v > m3 and (best is None or v < p[best - 1]):
            best = pos
    return None


def _find_312(p, a, b):
    if a <= 1:
        return None
    m1pos = max(range(1, a), key=lambda i: p[i - 1])
    m1 = p[m1pos - 1]
    best = None  # window index of the smallest value so far
    for pos in range(a, b + 1):
        v = p[pos - 1]
        if best is not None and p[best - 1] < v < m1:
            return (m1pos, best, pos)
        if best is None or v < p[best - 1]:
            best = pos
    return None


def _find_3142(p, a, b):
    n = len(p)
    if a <= 1 or b >= n:
        return None
    prefix_pos = [0] * (n + 2)   # value -> position among p[1..a-1]
    for i in range(1, a):
        prefix_pos[p[i - 1]] = i
    suffix_pos = [0] * (n + 2)
    for i in range(b + 1, n + 1):
        suffix_pos[p[i - 1]] = i
    # above[v] = (smallest prefix value > v, its position)
    above = [None] * (n + 2)
    cur = None
    for v in range(n, 0, -1):
        above[v] = cur
        if prefix_pos[v]:
            if cur is None or v < cur[0]:
                cur = (v, prefix_pos[v])
    # g[v] = best (P, Ppos, Qpos) over suffix values Q > v with prefix P > Q
    g = [None] * (n + 2)
    best = None
    for v in range(n, 0, -1):
        g[v] = best
        if suffix_pos[v] and above[v] is not None:
            cand = (above[v][0], above[v][1], suffix_pos[v])
            if best is None or cand[0] < best[0]:
                best = cand
    run = None  # (P, Ppos, Qpos, i2)
    for pos in range(a, b + 1):
        v = p[pos - 1]
        if run is not None and run[0] < v:
            return (run[1], run[3], pos, run[2])
        cand = g[v]
        if cand is not None and (run is None or cand[0] < run[0]):
            run = (cand[0], cand[1], cand[2], pos)
    return None


def find_marked_pattern(p, a: int, b: int):
    """First witness among the three marked patterns, or None.

    Returns (name, indices) where indices are the pattern's positions in p.
    """
    hit = _find_231(p, a, b)
    if hit is not None:
        return ("231", hit)
    hit = _find_312(p, a, b)
    if hit is not None:
        return ("312", hit)
    hit = _find_3142(p, a, b)
    if hit is not None:
        return ("3142", hit)
    return None


def is_bp_interval_fast(p, a: int, b: int) -> bool:
    """BP test for the connected generator interval {a, ..., b-1}."""
    p = check_perm(p)
    if not (1 <= a < b <= len(p)):
        raise UsageError(f"need 1 <= a < b <= n, got [{a}, {b}]")
    return find_marked_pattern(p, a, b) is None


def closure_fast(p, A: Iterable[int]) -> frozenset:
    """cl_p(A) for a connected generator interval A, by window widening."""
    p = check_perm(p)
    A = sorted(set(A))
    if not A or A != list(range(A[0], A[-1] + 1)):
        raise UsageError("the fast closure needs a nonempty connected interval")
    a, b = A[0], A[-1] + 1
    while True:
        hit = find_marked_pattern(p, a, b)
        if hit is None:
            return frozenset(range(a, b))
        idx = hit[1]
        a = min(a, idx[0])
        b = max(b, idx[-1])


def bp_poset_fast(p) -> BPPoset:
    """BP poset from the singleton closures, in polynomial time."""
    p = check_perm(p)
    r = len(p) - 1
    closures = {i: closure_fast(p, {i}) for i in range(1, r + 1)}
    return poset_from_closures(closures, r)


def bp_members_fast(p) -> frozenset:
    """BP(p) as the order ideals of the fast BP poset."""
    return frozenset(bp_poset_fast(p).ideals())


# ---------------------------------------------------------------------------
# definitional BP test on permutations (naive-baseline of the benchmark)


def _position_blocks(J: frozenset, n: int) -> list:
    """Maximal runs of consecutive generators in J, as position intervals."""
    blocks = []
    i = 1
    while i < n:
        if i in J:
            j = i
            while j + 1 < n and j + 1 in J:
                j += 1
            blocks.append((i, j + 1))
            i = j + 1
        i += 1
    return blocks


def is_bp_perm(p, J: Iterable[int]) -> bool:
    """Definitional BP test via the parabolic decomposition, on tuples."""
    p = check_perm(p)
    n = len(p)
    J = frozenset(J)
    q = list(p)
    for lo, hi in _position_blocks(J, n):
        q[lo - 1:hi] = sorted(q[lo - 1:hi])
    quotient = tuple(q)
    parabolic = perm_mult(perm_inverse(quotient), p)
    return (perm_support(quotient) & J) <= left_descents_perm(parabolic)
