"""Lehmer codes: construction, product maps, verification, exact search."""

from itertools import permutations

import pytest

from coxbp.bruhat import interval, poincare
from coxbp.coxeter import UsageError, build_system
from coxbp.lehmer import (ChainProduct, LehmerCode, admissible_tail_subset,
                          bp_product_map, chain_candidates, compose_codes,
                          construct_quotient_code, search_code, verify_code)
from coxbp.bp import bp_family
from coxbp.typea import element_from_perm, lehmer_code, perm_from_element


def test_chain_product_basics():
    cp = ChainProduct((3, 2))
    assert cp.cardinality == 6 and cp.top_rank == 3
    assert cp.rank_poly().coeffs == (1, 2, 2, 1)
    with pytest.raises(UsageError):
        ChainProduct((1, 3))


def test_admissible_shapes():
    assert admissible_tail_subset({4}, 5) == 4
    assert admissible_tail_subset({2, 3, 4}, 5) == 2
    assert admissible_tail_subset((), 5) == 5
    assert admissible_tail_subset({1, 3}, 4) is None


def test_52134_quotient_code():
    a4 = build_system("A", 4)
    a4.cache()
    w = element_from_perm(a4, (5, 2, 1, 3, 4))
    code = construct_quotient_code(w, {4})
    assert code.chains.sizes == (3, 2, 3)
    assert code.entries[(0, 0, 0)] == a4.identity
    assert perm_from_element(code.entries[(2, 1, 0)]) == (1, 5, 2, 3, 4)
    assert perm_from_element(code.entries[(2, 1, 2)]) == (5, 2, 1, 3, 4)
    assert verify_code(code, interval(w, {4}))


def test_classical_chain_sizes_via_empty_j():
    a3 = build_system("A", 3)
    a3.cache()
    code = construct_quotient_code(a3.longest_element(), ())
    assert code.chains.sizes == (4, 3, 2)
    # the mapping is the classical code: tuple = code of the image
    for t, el in code.entries.items():
        assert lehmer_code(perm_from_element(el))[:3] == t


def test_construct_rejects_bad_inputs():
    a3 = build_system("A", 3)
    a3.cache()
    with pytest.raises(UsageError):
        construct_quotient_code(element_from_perm(a3, (3, 4, 1, 2)), ())
    with pytest.raises(UsageError):  # not a tail interval
        construct_quotient_code(a3.longest_element(), {1, 3})
    with pytest.raises(UsageError):  # not minimal in the coset
        construct_quotient_code(element_from_perm(a3, (4, 3, 2, 1)), {3})


def test_construct_all_tails_s4():
    a3 = build_system("A", 3)
    a3.cache()
    built = 0
    for m in range(1, 5):
        J = frozenset(range(m, 4))
        for p in permutations(range(1, 5)):
            w = element_from_perm(a3, p)
            if not a3.minimal_in_quotient(w, J):
                continue
            if not poincare(w, J).is_palindromic():
                continue
            code = construct_quotient_code(w, J)
            assert verify_code(code, interval(w, J))
            built += 1
    assert built > 30


def test_verify_code_detects_corruption():
    a4 = build_system("A", 4)
    a4.cache()
    w = element_from_perm(a4, (5, 2, 1, 3, 4))
    code = construct_quotient_code(w, {4})
    iv = interval(w, {4})
    # two tuples mapped to one element: not bijective
    bad = dict(code.entries)
    bad[(0, 0, 1)] = bad[(0, 0, 0)]
    assert not verify_code(LehmerCode(code.chains, bad), iv)
    # swapping two same-rank images breaks order preservation
    bad = dict(code.entries)
    bad[(0, 0, 1)], bad[(1, 0, 0)] = bad[(1, 0, 0)], bad[(0, 0, 1)]
    assert not verify_code(LehmerCode(code.chains, bad), iv)
    # rank-incompatible images fail
    bad = dict(code.entries)
    bad[(0, 0, 0)], bad[(2, 1, 2)] = bad[(2, 1, 2)], bad[(0, 0, 0)]
    assert not verify_code(LehmerCode(code.chains, bad), iv)


def test_product_map_examples():
    a2 = build_system("A", 2)
    a2.cache()
    pm = bp_product_map(a2.longest_element(), {1})
    assert len(pm.pairs) == 6
    iv = interval(a2.longest_element())
    assert pm.is_bijective_onto(iv) and pm.preserves_order(iv)
    with pytest.raises(UsageError):
        a3 = build_system("A", 3)
        bp_product_map(element_from_perm(a3, (4, 2, 3, 1)), {2})


def test_product_map_trivial_factor():
    a3 = build_system("A", 3)
    a3.cache()
    w = element_from_perm(a3, (4, 2, 3, 1))
    pm = bp_product_map(w, {1, 2, 3})  # J = S: quotient factor is trivial
    assert pm.quotient_interval.size == 1
    assert pm.is_bijective_onto(interval(w))


def test_compose_codes_through_product_map():
    a4 = build_system("A", 4)
    a4.cache()
    checked = 0
    for p in [(3, 2, 1, 5, 4), (2, 1, 4, 3, 5), (4, 3, 2, 1, 5)]:
        w = element_from_perm(a4, p)
        fam = bp_family(w)
        for J in fam.sorted_members():
            if not J or len(J) == 4:
                continue
            d = a4.parabolic_decompose(w, J)
            rq = search_code(interval(d.quotient, J), time_budget=20)
            rf = search_code(interval(d.parabolic), time_budget=20)
            if rq.status == "found" and rf.status == "found":
                combo = compose_codes(w, J, rq.code, rf.code)
                assert verify_code(combo, interval(w))
                checked += 1
    assert checked >= 3


def test_chain_candidates_filtering():
    # B2: ranks 1,2,2,2,1 admit exactly the multiset {2, 4}
    assert chain_candidates((1, 2, 2, 2, 1)) == [(2, 4)]
    # the 6-element profile 1,1,2,1,1 admits no chain product at all
    assert chain_candidates((1, 1, 2, 1, 1)) == []


def test_search_finds_b2_code():
    b2 = build_system("B", 2)
    b2.cache()
    res = search_code(interval(b2.longest_element()))
    assert res.status == "found" and res.code.chains.sizes == (2, 4)
    assert verify_code(res.code, interval(b2.longest_element()))


def test_search_certifies_nonexistence():
    # [e, 3412]^{s1, s3} has rank profile 1,1,2,1,1: certified none
    a3 = build_system("A", 3)
    a3.cache()
    w = element_from_perm(a3, (3, 4, 1, 2))
    iv = interval(w, {1, 3})
    assert iv.size == 6
    res = search_code(iv)
    assert res.status == "none"
    assert res.candidates == ()


def test_search_timeout_is_explicit():
    a3 = build_system("A", 3)
    a3.cache()
    res = search_code(interval(a3.longest_element()), time_budget=0.0)
    assert res.status == "unknown" and res.code is None


def test_search_i2m_longest():
    i7 = build_system("I2", 7)
    i7.cache()
    res = search_code(interval(i7.longest_element()))
    assert res.status == "found"
    assert tuple(sorted(res.code.chains.sizes)) == (2, 7)


def test_order_preservation_beyond_covers():
    # cover-pair checking implies full order preservation; spot-check the
    # implication on random comparable tuple pairs of a verified code
    import random
    a4 = build_system("A", 4)
    a4.cache()
    w = element_from_perm(a4, (5, 2, 1, 3, 4))
    code = construct_quotient_code(w, {4})
    iv = interval(w, {4})
    assert verify_code(code, iv)
    rng = random.Random(2)
    tuples = list(code.entries)
    for _ in range(300):
        t1, t2 = rng.choice(tuples), rng.choice(tuples)
        if all(a <= b for a, b in zip(t1, t2)):
            assert iv.leq_elements(code.entries[t1], code.entries[t2])


def test_construct_sampled_tails_s6():
    import random
    a5 = build_system("A", 5)
    a5.cache()
    rng = random.Random(1)
    built = 0
    for m in range(1, 7):
        J = frozenset(range(m, 6))
        cands = [a5.cache().element(i) for i in range(a5.cache().size)
                 if a5.minimal_in_quotient(a5.cache().element(i), J)]
        rng.shuffle(cands)
        for w in cands[:25]:
            if not poincare(w, J).is_palindromic():
                continue
            construct_quotient_code(w, J, check=True)
            built += 1
    assert built > 60
