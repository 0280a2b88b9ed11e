import pytest

from ntpg.autgroups import aut_compose, enumerate_aut, make_automorphism
from ntpg.cocycles import (AutOps, Cocycle, CoverNerve, FiniteGroupOps,
                           are_cohomologous, associated_cocycle,
                           check_cocycle, frame_cocycle,
                           standard_fibered_space, t2_has_quadratic_term,
                           t2_transition)
from ntpg.errors import InvalidInput, NotInvertibleChart, SearchCapExceeded
from ntpg.fields import GF, QQ
from ntpg.graded import GradedSignature, PolyMap, is_graded_morphism
from ntpg.groups import GroupHom
from ntpg.named import cyclic, quaternion_group, symmetric
from ntpg.poly import Poly

F3 = GF(3)
SIG = GradedSignature.double_vector(1, 1, 1)
Y, YP, Z, YYP = (1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 0)

TWO_CHARTS = CoverNerve(2, [(0, 1)])
FULL3 = CoverNerve.full(3)


def example_aut():
    """(y, y', z) -> (2y, y', yy' + z) over F3."""
    return make_automorphism(SIG, F3, [(0, Y, 2), (1, YP, 1),
                                       (2, YYP, 1), (2, Z, 1)])


# -- cocycle laws ---------------------------------------------------------------

def test_trivial_cocycle_is_valid():
    G = cyclic(4)
    ops = FiniteGroupOps(G)
    c = Cocycle(FULL3, ops, {(0, 1): 0, (1, 2): 0, (0, 2): 0})
    ok, w = check_cocycle(c)
    assert ok and w is None


def test_two_chart_arbitrary_value_is_valid():
    G = quaternion_group()
    c = Cocycle(TWO_CHARTS, FiniteGroupOps(G), {(0, 1): 5})
    ok, _ = check_cocycle(c)
    assert ok
    assert c.value(1, 0) == G.inverse[5]


def test_three_chart_order_three_element():
    G = cyclic(3)
    ops = FiniteGroupOps(G)
    good = Cocycle(FULL3, ops, {(0, 1): 1, (1, 2): 1, (0, 2): 2})
    ok, _ = check_cocycle(good)
    assert ok
    bad = Cocycle(FULL3, ops, {(0, 1): 1, (1, 2): 1, (0, 2): 0})
    ok, w = check_cocycle(bad)
    assert not ok
    assert w["law"] == "triple"
    assert set(w["triple"]) == {0, 1, 2}


def test_triple_without_pair_rejected():
    with pytest.raises(InvalidInput):
        CoverNerve(3, [(0, 1)], [(0, 1, 2)])


# -- associated bundles ------------------------------------------------------------

@pytest.fixture(scope="module")
def f3_handle():
    return enumerate_aut(SIG, F3)


@pytest.fixture(scope="module")
def f3_model(f3_handle):
    return standard_fibered_space(f3_handle)


def test_trivial_principal_cocycle_gives_product_bundle(f3_handle, f3_model):
    G = f3_handle.group
    c = Cocycle(TWO_CHARTS, FiniteGroupOps(G), {(0, 1): G.identity})
    assoc = associated_cocycle(c, f3_model)
    ident = assoc.fiber_cocycle.ops.one
    assert assoc.fiber_cocycle.value(0, 1) == ident
    assert assoc.rho_cocycle.value(0, 1) == tuple(range(3))


def test_associated_transition_is_the_acting_map(f3_handle, f3_model):
    G = f3_handle.group
    a = example_aut()
    c = Cocycle(TWO_CHARTS, FiniteGroupOps(G),
                {(0, 1): f3_handle.index_of(a)})
    assoc = associated_cocycle(c, f3_model)
    assert assoc.fiber_cocycle.value(0, 1) == a
    # the rho-quotient transition is y -> 2y, the permutation (0, 2, 1)
    assert assoc.rho_cocycle.value(0, 1) == (0, 2, 1)
    # y' is untouched
    assert assoc.rho_prime_cocycle.value(0, 1) == (0, 1, 2)


def test_identity_tau_reproduces_direct_construction(f3_handle, f3_model):
    G = f3_handle.group
    a = example_aut()
    c = Cocycle(TWO_CHARTS, FiniteGroupOps(G),
                {(0, 1): f3_handle.index_of(a)})
    tau = GroupHom(G, G, list(range(G.order)))
    direct = associated_cocycle(c, f3_model)
    via_tau = associated_cocycle(c, f3_model, tau=tau)
    for (i, j) in TWO_CHARTS.ordered_pairs():
        assert direct.fiber_cocycle.value(i, j) == \
            via_tau.fiber_cocycle.value(i, j)


# -- frame bundle round trip ----------------------------------------------------------

def dvb_cocycle(nerve, values, handle):
    return Cocycle(nerve, AutOps(SIG, F3, handle), values)


def test_trivial_dvb_frames_to_trivial_principal(f3_handle):
    from ntpg.autgroups import identity_automorphism
    ident = identity_automorphism(SIG, F3)
    c = dvb_cocycle(TWO_CHARTS, {(0, 1): ident}, f3_handle)
    principal = frame_cocycle(c, f3_handle)
    assert principal.value(0, 1) == f3_handle.group.identity


def test_round_trip_two_charts(f3_handle, f3_model):
    a = example_aut()
    c = dvb_cocycle(TWO_CHARTS, {(0, 1): a}, f3_handle)
    principal = frame_cocycle(c, f3_handle)
    back = associated_cocycle(principal, f3_model)
    for (i, j) in TWO_CHARTS.ordered_pairs():
        assert back.fiber_cocycle.value(i, j) == c.value(i, j)


def test_round_trip_three_charts(f3_handle, f3_model):
    a = example_aut()
    b = make_automorphism(SIG, F3, [(0, Y, 1), (1, YP, 2), (2, Z, 2)])
    c = dvb_cocycle(FULL3, {(0, 1): a, (1, 2): b, (0, 2): aut_compose(a, b)},
                    f3_handle)
    ok, _ = check_cocycle(c)
    assert ok
    principal = frame_cocycle(c, f3_handle)
    back = associated_cocycle(principal, f3_model)
    for (i, j) in FULL3.ordered_pairs():
        assert back.fiber_cocycle.value(i, j) == c.value(i, j)


# -- cohomology ------------------------------------------------------------------------

def test_cocycle_is_cohomologous_to_itself():
    G = quaternion_group()
    c = Cocycle(TWO_CHARTS, FiniteGroupOps(G), {(0, 1): 3})
    res = are_cohomologous(c, c)
    assert res.cohomologous


def test_conjugated_two_chart_cocycles():
    G = symmetric(3)
    a = next(x for x in range(6) if G.element_order(x) == 3)
    b = next(x for x in range(6) if G.element_order(x) == 2)
    conj = G.mul(G.mul(b, a), G.inverse[b])
    ops = FiniteGroupOps(G)
    c1 = Cocycle(TWO_CHARTS, ops, {(0, 1): a})
    c2 = Cocycle(TWO_CHARTS, ops, {(0, 1): conj})
    res = are_cohomologous(c1, c2)
    assert res.cohomologous
    lam = res.witness
    assert G.mul(G.mul(lam[0], a), G.inverse[lam[1]]) == conj


def test_abelian_two_chart_cocycles_are_all_cohomologous():
    G = cyclic(4)
    ops = FiniteGroupOps(G)
    c1 = Cocycle(TWO_CHARTS, ops, {(0, 1): 1})
    c2 = Cocycle(TWO_CHARTS, ops, {(0, 1): 2})
    # oracle: 16-pair exhaustion; lambda = (g' - g, 0) always works
    res = are_cohomologous(c1, c2)
    assert res.cohomologous


def test_search_cap():
    G = quaternion_group()
    ops = FiniteGroupOps(G)
    c = Cocycle(TWO_CHARTS, ops, {(0, 1): 3})
    with pytest.raises(SearchCapExceeded):
        are_cohomologous(c, c, cap=10)


def test_cohomology_is_equivalence_on_small_corpus():
    G = cyclic(3)
    ops = FiniteGroupOps(G)
    cocycles = [Cocycle(FULL3, ops, {(0, 1): a, (1, 2): b,
                                     (0, 2): G.mul(a, b)})
                for a in range(3) for b in range(3)]
    rel = [[are_cohomologous(x, y).cohomologous for y in cocycles]
           for x in cocycles]
    n = len(cocycles)
    for i in range(n):
        assert rel[i][i]
        for j in range(n):
            assert rel[i][j] == rel[j][i]
            for k in range(n):
                if rel[i][j] and rel[j][k]:
                    assert rel[i][k]


# -- second-order tangent transitions ----------------------------------------------------

def base_chart(comps, d=1):
    sig0 = GradedSignature.simple([], base=d)
    return PolyMap(sig0, sig0, QQ, comps)


def test_t2_of_identity_chart():
    x = Poly.var(QQ, 1, 0)
    out = t2_transition(base_chart([x]))
    assert out == PolyMap.identity(out.sig_in, QQ)


def test_t2_of_x_plus_x_squared():
    x = Poly.var(QQ, 1, 0)
    out = t2_transition(base_chart([x + x * x]))
    # exact law: x' = x + x^2, xdot' = (1+2x) xdot,
    # xddot' = (1+2x) xddot + 2 xdot^2
    assert out.components[0] == Poly(QQ, 3, {(1, 0, 0): 1, (2, 0, 0): 1})
    assert out.components[1] == Poly(QQ, 3, {(0, 1, 0): 1, (1, 1, 0): 2})
    assert out.components[2] == Poly(QQ, 3, {(0, 0, 1): 1, (1, 0, 1): 2,
                                             (0, 2, 0): 2})
    assert is_graded_morphism(out)
    assert t2_has_quadratic_term(out)


def test_t2_of_linear_chart_has_no_quadratic_term():
    x = Poly.var(QQ, 1, 0)
    out = t2_transition(base_chart([x.scale(2)]))
    assert not t2_has_quadratic_term(out)
    assert is_graded_morphism(out)


def test_t2_rejects_singular_chart():
    x = Poly.var(QQ, 1, 0)
    with pytest.raises(NotInvertibleChart):
        t2_transition(base_chart([x * x]))


def test_t2_multidimensional():
    # x0' = x0 + x1^2, x1' = x1: the cross second derivative contributes
    x0 = Poly.var(QQ, 2, 0)
    x1 = Poly.var(QQ, 2, 1)
    out = t2_transition(base_chart([x0 + x1 * x1, x1], d=2))
    assert is_graded_morphism(out)
    assert t2_has_quadratic_term(out)
    # xddot0' = xddot0 + 2 x1dot^2 + 2 x1 xddot1
    assert out.components[4] == Poly(QQ, 6, {
        (0, 0, 0, 0, 1, 0): 1, (0, 0, 0, 2, 0, 0): 2,
        (0, 1, 0, 0, 0, 1): 2})
