import pytest

from ntpg.autgroups import (affine_compose, affine_identity,
                            affine_invert, aut_compose, enumerate_aut,
                            forget_linear, gi_membership,
                            identity_automorphism, is_statomorphism,
                            make_affine_automorphism, make_automorphism,
                            verify_p54)
from ntpg.errors import (EnumerationCapExceeded, IllegalMonomial,
                         NotInvertible)
from ntpg.fields import GF
from ntpg.graded import GradedSignature, PolyMap, compose
from ntpg.groups import is_normal

SIG = GradedSignature.double_vector(1, 1, 1)   # coords y, y', z
F3 = GF(3)
F2 = GF(2)

Y, YP, Z = (1, 0, 0), (0, 1, 0), (0, 0, 1)
YYP = (1, 1, 0)


def test_double_vector_coordinate_order():
    assert SIG.weights == ((1, 0), (0, 1), (1, 1))


def test_identity_automorphism():
    a = make_automorphism(SIG, F3, [(0, Y, 1), (1, YP, 1), (2, Z, 1)])
    assert a == identity_automorphism(SIG, F3)
    assert is_statomorphism(a)          # vanishing mixed part is allowed
    assert gi_membership(a, 1) and gi_membership(a, 2)


def test_example_automorphism_over_f3():
    # (y, y', z) -> (2y, y', yy' + z)
    a = make_automorphism(SIG, F3, [(0, Y, 2), (1, YP, 1),
                                    (2, YYP, 1), (2, Z, 1)])
    # oracle: explicit inverse (2w, w', w w' + z), since 2^-1 = 2 and
    # z = z' - (2w)(w') = z' + w w' mod 3
    expect = PolyMap.from_terms(SIG, SIG, F3,
                                [(0, Y, 2), (1, YP, 1),
                                 (2, YYP, 1), (2, Z, 1)])
    assert compose(a.map, expect).key() == PolyMap.identity(SIG, F3).key()
    assert a.inverse == expect


def test_illegal_monomial_rejected():
    with pytest.raises(IllegalMonomial) as e:
        make_automorphism(SIG, F3, [(0, Z, 1), (1, YP, 1), (2, Z, 1)])
    assert e.value.details["target"] == 0


def test_singular_linear_block_rejected():
    with pytest.raises(NotInvertible):
        make_automorphism(SIG, F3, [(0, Y, 0), (1, YP, 1), (2, Z, 1)])


# -- statomorphisms / G^i -------------------------------------------------------

def test_statomorphism_formula():
    a = make_automorphism(SIG, F3, [(0, Y, 1), (1, YP, 1),
                                    (2, YYP, 1), (2, Z, 1)])
    assert is_statomorphism(a)
    assert gi_membership(a, 1) and gi_membership(a, 2)


def test_scaled_linear_part_is_not_statomorphism():
    a = make_automorphism(SIG, F3, [(0, Y, 2), (1, YP, 1), (2, Z, 1)])
    assert not is_statomorphism(a)


def test_gi_membership_shape():
    # (y, y', z) -> (y, 2y', z) fixes y, so in G^1, not in G^2
    a = make_automorphism(SIG, F3, [(0, Y, 1), (1, YP, 2), (2, Z, 1)])
    assert gi_membership(a, 1)
    assert not gi_membership(a, 2)


# -- enumeration ------------------------------------------------------------------

def test_enumeration_count_p3():
    handle = enumerate_aut(SIG, F3)
    # oracle: alpha, alpha', sigma in F3^x and beta in F3 -> 3 * 2^3
    assert handle.group.order == 3 * (3 - 1) ** 3 == 24


def test_enumeration_count_p2():
    handle = enumerate_aut(SIG, F2)
    assert handle.group.order == 2


def test_statomorphism_subgroup_order_p3():
    handle = enumerate_aut(SIG, F3)
    stato = handle.statomorphism_subgroup()
    assert len(stato) == 3
    assert is_normal(handle.group, stato)
    # statomorphisms sit inside the intersection of the distinguished
    # subgroups
    core = set(handle.gi_subgroup(1).members) & set(handle.gi_subgroup(2).members)
    assert set(stato.members) <= core


def test_enumeration_count_p5():
    handle = enumerate_aut(SIG, GF(5))
    assert handle.group.order == 5 * (5 - 1) ** 3 == 320


def test_enumeration_cap():
    big = GradedSignature.double_vector(2, 2, 2)
    with pytest.raises(EnumerationCapExceeded):
        enumerate_aut(big, GF(5), cap=1000)


def test_gamma_acts_linearly_on_side_factors():
    handle = enumerate_aut(SIG, F3)
    for a in handle.elements:
        for c in (0, 1):  # the degree-e_i coordinates
            for exps in a.map.components[c].terms:
                assert SIG.monomial_weight(exps) == SIG.weights[c]
                assert sum(exps) == 1


def test_gi_conjugation_stable():
    handle = enumerate_aut(SIG, F3)
    G = handle.group
    g1 = handle.gi_subgroup(1)
    for b in range(G.order):
        for a in g1.members:
            assert G.conjugate(b, a) in g1


# -- the k-tuple principal structure -------------------------------------------

def test_p54_k2_p3():
    rep = verify_p54(SIG, F3)
    assert rep.witness.verdict
    assert rep.orders["gamma"] == 24
    assert rep.orders["gi"] == [12, 12]
    assert rep.orders["intersections"]["1,2"] == 6


def test_p54_k2_p2_degenerate():
    rep = verify_p54(SIG, F2)
    assert rep.witness.verdict
    assert rep.orders["gamma"] == 2
    assert rep.orders["gi"] == [2, 2]


def test_p54_k3_p2():
    sig = GradedSignature.multi(3, {
        (1, 0, 0): 1, (0, 1, 0): 1, (0, 0, 1): 1,
        (1, 1, 0): 1, (1, 0, 1): 1, (0, 1, 1): 1,
        (1, 1, 1): 1})
    rep = verify_p54(sig, F2)
    # oracle: seven forced linear slots, seven free mixed slots -> 2^7
    assert rep.orders["gamma"] == 128
    assert rep.witness.verdict
    assert rep.witness.trace["children"], "recursion trace must be present"


# -- double affine automorphisms --------------------------------------------------

def test_affine_identity():
    a = affine_identity((1, 1, 1), F3)
    assert affine_invert(a) == a


def test_pure_translation_inverts_to_negation():
    CONST = (0, 0, 0)
    a = make_affine_automorphism((1, 1, 1), F3,
                                 [(0, Y, 1), (0, CONST, 1),
                                  (1, YP, 1), (2, Z, 1)])
    inv = affine_invert(a)
    # the inverse translates by -1 = 2
    assert inv.map.components[0].terms[CONST].v == 2


def test_affine_with_mixed_terms_and_forgetful_hom():
    CONST = (0, 0, 0)
    a = make_affine_automorphism((1, 1, 1), F3,
                                 [(0, Y, 1), (1, YP, 1),
                                  (2, Y, 1), (2, Z, 1)])   # beta^{i0} = 1
    b = make_affine_automorphism((1, 1, 1), F3,
                                 [(0, Y, 2), (0, CONST, 1),
                                  (1, YP, 1), (2, YYP, 1), (2, Z, 1)])
    ab = affine_compose(a, b)
    # oracle: compose with the candidate inverse gives the identity
    assert affine_compose(ab, affine_invert(ab)) == affine_identity((1, 1, 1), F3)
    # forgetting constants lands in the vector automorphism group, and the
    # assignment is a homomorphism
    fa, fb, fab = forget_linear(a), forget_linear(b), forget_linear(ab)
    assert aut_compose(fa, fb) == fab


def test_forgetful_is_homomorphism_exhaustively_small():
    # all 1-dimensional affine maps over F2 with a few slots
    CONST = (0, 0, 0)
    auts = []
    for a0 in range(2):
        for b00 in range(2):
            for bi0 in range(2):
                for beta in range(2):
                    terms = [(0, Y, 1), (1, YP, 1), (2, Z, 1)]
                    if a0:
                        terms.append((0, CONST, 1))
                    if b00:
                        terms.append((2, CONST, 1))
                    if bi0:
                        terms.append((2, Y, 1))
                    if beta:
                        terms.append((2, YYP, 1))
                    auts.append(make_affine_automorphism((1, 1, 1), F2, terms))
    for x in auts:
        for y in auts:
            assert forget_linear(affine_compose(x, y)) == \
                aut_compose(forget_linear(x), forget_linear(y))


def test_affine_shape_violation():
    with pytest.raises(IllegalMonomial):
        make_affine_automorphism((1, 1, 1), F3,
                                 [(0, Y, 1), (0, Z, 1),
                                  (1, YP, 1), (2, Z, 1)])


def test_symbolic_mode_over_q():
    # the automorphism shape is closed under composition and inversion over
    # the rationals as well; spot-checked on random coefficients
    import random

    from ntpg.autgroups import aut_from_polymap
    from ntpg.fields import QQ
    from ntpg.sample import random_graded_automorphism

    from ntpg.autgroups import aut_invert

    rng = random.Random(31)
    sig = GradedSignature.double_vector(2, 1, 1)
    for _ in range(15):
        a = aut_from_polymap(sig, QQ, random_graded_automorphism(rng, QQ, sig))
        b = aut_from_polymap(sig, QQ, random_graded_automorphism(rng, QQ, sig))
        ab = aut_compose(a, b)
        assert compose(ab.map, ab.inverse) == PolyMap.identity(sig, QQ)
        # conjugation stability of the distinguished subgroups
        for i in (1, 2):
            if gi_membership(a, i):
                conj = aut_compose(aut_compose(b, a), aut_invert(b))
                assert gi_membership(conj, i)
