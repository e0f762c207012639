"""Exact combinatorics of Coxeter and Weyl groups.

Billey-Postnikov decompositions and posets, Bruhat intervals and rational
smoothness, J-star patterns with finite verifiers, generalized Lehmer
codes, and type A Schubert structure constants -- all over exact arithmetic
(integers, or the golden ring for H types).
"""

from .coxeter import (CoxeterSystem, GroupElement, ParabolicDecomposition,
                      ConstructionError, ResourceCapError, UsageError,
                      UnsupportedCapabilityError, build_system,
                      system_from_matrix)
from .roots import (Root, RootSystem, build_root_system, inversion_set,
                    is_biclosed, phi_J_plus)
from .bruhat import (BruhatInterval, PoincarePolynomial, bruhat_leq,
                     classical_degrees, interval, is_rationally_smooth,
                     poincare, q_integer, q_integer_product)
from .jstars import (JStar, NonBPWitness, contains_jstar, enumerate_jstars,
                     non_bp_witnesses, verify_simple_jstar_lemma,
                     verify_union_helper_lemma)
from .bp import (BPFamily, BPPoset, bp_family, bp_poset, check_lattice,
                 closure, grassmannian_bp_exists, is_bp, is_bp_poincare,
                 jstar_bp_test, linear_extension_factorization)
from .typea import (bp_members_fast, bp_poset_fast, closure_fast,
                    element_from_perm, is_bp_interval_fast, is_bp_perm,
                    lehmer_code, perm_from_code, perm_from_element)
from .lehmer import (ChainProduct, CodeSearchResult, LehmerCode,
                     bp_product_map, compose_codes, construct_quotient_code,
                     search_code, verify_code)
from .schubert import (StructureConstantMatrix, canonical_bijection,
                       monk_expand, schubert_polynomial, structure_constant,
                       structure_matrix)
from .checks import run_checks

__version__ = "0.1.0"
