"""Root systems: coordinates, inversion sets, biclosedness, lemma plumbing."""

import pytest

from coxbp.coxeter import UnsupportedCapabilityError, build_system
from coxbp.roots import (ambient_positive_roots, build_root_system,
                         inversion_set, is_biclosed, phi_J_plus)


@pytest.mark.parametrize("tag,rank,count", [
    ("A", 2, 3), ("A", 4, 10), ("B", 3, 9), ("C", 3, 9), ("B", 4, 16),
    ("D", 4, 12), ("D", 5, 20), ("F", 4, 24), ("G", 2, 6),
    ("E", 6, 36), ("E", 7, 63), ("E", 8, 120),
])
def test_positive_root_counts(tag, rank, count):
    assert build_root_system(tag, rank).num_positive == count


def test_a2_roots_exact():
    rs = build_root_system("A", 2)
    assert {r.coords for r in rs.positive_roots} == {(1, 0), (0, 1), (1, 1)}


def test_classical_ambient_descriptions():
    def e(i, n):
        v = [0] * n
        v[i - 1] = 1
        return tuple(v)

    # A_3: e_i - e_j for i < j inside R^4
    amb = {tuple(v) for v in ambient_positive_roots(build_root_system("A", 3))}
    want = {tuple(x - y for x, y in zip(e(i, 4), e(j, 4)))
            for i in range(1, 5) for j in range(i + 1, 5)}
    assert amb == want

    # B_3: e_i +- e_j (i<j) and e_i
    amb = {tuple(v) for v in ambient_positive_roots(build_root_system("B", 3))}
    want = set()
    for i in range(1, 4):
        want.add(e(i, 3))
        for j in range(i + 1, 4):
            want.add(tuple(x + y for x, y in zip(e(i, 3), e(j, 3))))
            want.add(tuple(x - y for x, y in zip(e(i, 3), e(j, 3))))
    assert amb == want

    # C_3 replaces e_i by 2e_i
    amb = {tuple(v) for v in ambient_positive_roots(build_root_system("C", 3))}
    wantc = {w for w in want if sum(abs(x) for x in w) != 1}
    wantc |= {tuple(2 * x for x in e(i, 3)) for i in range(1, 4)}
    assert amb == wantc

    # D_4: e_i +- e_j only
    amb = {tuple(v) for v in ambient_positive_roots(build_root_system("D", 4))}
    want = set()
    for i in range(1, 5):
        for j in range(i + 1, 5):
            want.add(tuple(x + y for x, y in zip(e(i, 4), e(j, 4))))
            want.add(tuple(x - y for x, y in zip(e(i, 4), e(j, 4))))
    assert amb == want


def test_root_poset_minimal_elements():
    for tag, rank in (("A", 3), ("B", 3), ("G", 2)):
        rs = build_root_system(tag, rank)
        simples = set(rs.positive_roots[:rank])
        for beta in rs.positive_roots:
            below = [g for g in rs.positive_roots if g != beta and g.leq(beta)]
            if not below:
                assert beta in simples


def test_inversion_examples():
    a2 = build_system("A", 2)
    s1, s2 = a2.generators()
    assert {r.coords for r in inversion_set(s1)} == {(1, 0)}
    w0 = a2.longest_element()
    assert len(inversion_set(w0)) == 3
    # 231 via the one-line oracle w(e_i) = e_{w(i)}
    w231 = a2.from_word((1, 2))
    assert {r.coords for r in inversion_set(w231)} == {(0, 1), (1, 1)}
    oracle = _inversions_by_oneline((2, 3, 1))
    assert {r.coords for r in inversion_set(w231)} == oracle


def _inversions_by_oneline(p):
    """Independent oracle: apply w(e_i) = e_{w(i)} to each positive root."""
    n = len(p)
    out = set()
    for i in range(1, n):
        for j in range(i + 1, n + 1):
            # beta = e_i - e_j = alpha_i + ... + alpha_{j-1}
            img_positive = p[i - 1] < p[j - 1]
            if not img_positive:
                coords = tuple(1 if i <= t < j else 0 for t in range(1, n))
                out.add(coords)
    return out


@pytest.mark.parametrize("tag,rank", [("A", 3), ("B", 3), ("C", 3)])
def test_inversion_invariants(tag, rank):
    sys = build_system(tag, rank)
    rs = sys.root_system()
    for w in sys.elements():
        inv = inversion_set(w, rs)
        assert len(inv) == w.length
        assert is_biclosed(inv, rs)
        # I(w^-1) = -w . I(w), read as positive roots
        winvinv = inversion_set(w.inverse(), rs)
        mapped = {(-rs.act_word(w.word, beta)).coords for beta in inv}
        assert {r.coords for r in winvinv} == mapped


def test_quotient_has_no_parabolic_inversions():
    for tag, rank in (("A", 3), ("B", 3)):
        sys = build_system(tag, rank)
        rs = sys.root_system()
        for w in sys.elements():
            for J in ({1}, {1, 2}, {2, 3}):
                d = sys.parabolic_decompose(w, J)
                assert not (inversion_set(d.quotient, rs) & phi_J_plus(rs, J))


def test_biclosed_examples():
    rs = build_root_system("A", 2)
    a1, a2o, a12 = rs.positive_roots
    assert is_biclosed(set(), rs)
    assert is_biclosed({a2o, a12}, rs)
    assert not is_biclosed({a12}, rs)  # complement {a1, a2} sums into it


def test_phi_j_examples():
    rs2 = build_root_system("A", 2)
    assert {r.coords for r in phi_J_plus(rs2, {1})} == {(1, 0)}
    rs3 = build_root_system("A", 3)
    assert {r.coords for r in phi_J_plus(rs3, {1, 2})} == \
        {(1, 0, 0), (0, 1, 0), (1, 1, 0)}
    assert phi_J_plus(rs3, ()) == frozenset()


def test_no_root_system_for_h_types():
    h3 = build_system("H3")
    with pytest.raises(UnsupportedCapabilityError):
        h3.root_system()
    with pytest.raises(UnsupportedCapabilityError):
        build_root_system("H", 3)


def test_b_and_c_are_distinct_root_systems():
    b3 = build_root_system("B", 3)
    c3 = build_root_system("C", 3)
    assert {r.coords for r in b3.positive_roots} != \
        {r.coords for r in c3.positive_roots}
    # same Weyl group nonetheless
    assert build_system("B", 3).order() == build_system("C", 3).order()


@pytest.mark.parametrize("tag,rank", [("A", 3), ("B", 3), ("D", 4), ("G2", None)])
def test_cached_inversion_masks_match(tag, rank):
    sys = build_system(tag, rank)
    cache = sys.cache()
    rs = sys.root_system()
    masks = cache.inversion_masks()
    from coxbp.roots import inversion_indices
    for idx in range(cache.size):
        w = cache.element(idx)
        direct = inversion_indices(w, rs)
        assert masks[idx] == sum(1 << k for k in direct)
        assert masks[idx].bit_count() == w.length


def test_root_images_have_uniform_sign():
    sys = build_system("B", 3)
    rs = sys.root_system()
    for w in sys.elements():
        for beta in rs.positive_roots:
            img = rs.act_word(w.word, beta)
            assert img.is_positive or img.is_negative
