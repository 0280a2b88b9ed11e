import pytest
from hypothesis import given, settings, strategies as st

from ntpg import named
from ntpg.errors import (InvalidInput, NoIdentity, NoInverse, NonAssociative,
                         NotAnAction, NotLatinSquare, NotNormal,
                         ParentMismatch)
from ntpg.groups import (FiniteAction, GroupHom, Subgroup, action_check,
                         generates, intersect, is_normal, make_group,
                         make_group_from_permutations, quotient,
                         regular_action, right_translation_action,
                         subgroup_as_group, subgroup_closure, trivial_action)
from ntpg.named import (Q8_I, Q8_J, Q8_K, Q8_MINUS_ONE, Q8_ONE, cyclic,
                        dihedral, klein_four, quaternion_group, symmetric)


# -- oracle: quaternions as integer 4-vectors under the Hamilton product ----

def _hamilton(a, b):
    w1, x1, y1, z1 = a
    w2, x2, y2, z2 = b
    return (w1 * w2 - x1 * x2 - y1 * y2 - z1 * z2,
            w1 * x2 + x1 * w2 + y1 * z2 - z1 * y2,
            w1 * y2 - x1 * z2 + y1 * w2 + z1 * x2,
            w1 * z2 + x1 * y2 - y1 * x2 + z1 * w2)


_Q8_VECTORS = [
    (1, 0, 0, 0), (-1, 0, 0, 0),
    (0, 1, 0, 0), (0, -1, 0, 0),
    (0, 0, 1, 0), (0, 0, -1, 0),
    (0, 0, 0, 1), (0, 0, 0, -1),
]


def test_quaternion_table_matches_hamilton_product():
    G = quaternion_group()
    idx = {v: i for i, v in enumerate(_Q8_VECTORS)}
    for a in range(8):
        for b in range(8):
            expected = idx[_hamilton(_Q8_VECTORS[a], _Q8_VECTORS[b])]
            assert G.table[a][b] == expected, (a, b)


def test_quaternion_center_has_order_two():
    G = quaternion_group()
    assert G.order == 8
    assert G.center().members == (Q8_ONE, Q8_MINUS_ONE)


# -- make_group --------------------------------------------------------------

def test_trivial_group():
    G = make_group([[0]])
    assert G.order == 1 and G.identity == 0 and G.inverse == (0,)


def test_z2_table():
    G = make_group([[0, 1], [1, 0]])
    assert G.order == 2
    assert G.identity == 0
    assert G.mul(1, 1) == 0


def test_identity_is_discovered_not_assumed():
    # Z3 written with the identity at index 2
    table = [[1, 2, 0], [2, 0, 1], [0, 1, 2]]
    G = make_group(table)
    assert G.identity == 2


def test_not_latin_square():
    with pytest.raises(NotLatinSquare) as e:
        make_group([[0, 0], [1, 1]])
    assert e.value.details["row"] == 0


def test_no_identity():
    # Latin square (cyclic shift of rows) without a two-sided unit
    with pytest.raises(NoIdentity):
        make_group([[1, 0, 2], [2, 1, 0], [0, 2, 1]])


def test_non_associative():
    # 5x5 Latin square with identity 0 that is not a group
    table = [
        [0, 1, 2, 3, 4],
        [1, 0, 3, 4, 2],
        [2, 4, 0, 1, 3],
        [3, 2, 4, 0, 1],
        [4, 3, 1, 2, 0],
    ]
    with pytest.raises((NonAssociative, NoInverse)) as e:
        make_group(table)
    if isinstance(e.value, NonAssociative):
        a, b, c = e.value.details["triple"]
        assert table[table[a][b]][c] != table[a][table[b][c]]


def test_entry_out_of_range():
    with pytest.raises(InvalidInput):
        make_group([[0, 1], [1, 7]])


def test_permutation_input_builds_regular_group():
    # Z4 generated by the 4-cycle
    G, els = make_group_from_permutations([[1, 2, 3, 0]])
    assert G.order == 4
    assert els[0] == (0, 1, 2, 3)
    assert not G.is_abelian() or G.order == 4


def test_s3_from_permutations_is_nonabelian_order_6():
    G = symmetric(3)
    assert G.order == 6
    assert not G.is_abelian()


# -- subgroup_closure --------------------------------------------------------

def test_closure_of_i_in_q8():
    G = quaternion_group()
    H = subgroup_closure(G, {Q8_I})
    # oracle: powers of i are 1, i, -1, -i
    powers = set()
    x = G.identity
    for _ in range(4):
        powers.add(x)
        x = G.mul(x, Q8_I)
    assert set(H.members) == powers
    assert len(H) == 4


def test_closure_of_empty_set_is_identity():
    G = quaternion_group()
    assert subgroup_closure(G, set()).members == (G.identity,)


def test_closure_of_i_and_j_is_everything():
    G = quaternion_group()
    # oracle: exhaustive saturation over sets
    closure = {Q8_I, Q8_J, G.identity}
    changed = True
    while changed:
        changed = False
        for a in list(closure):
            for b in list(closure):
                for c in (G.mul(a, b), G.inv(a)):
                    if c not in closure:
                        closure.add(c)
                        changed = True
    assert closure == set(range(8))
    assert len(subgroup_closure(G, {Q8_I, Q8_J})) == 8


# -- normality / intersection / generation -----------------------------------

def test_span_i_is_normal_in_q8():
    G = quaternion_group()
    H = subgroup_closure(G, {Q8_I})
    # oracle: conjugation table scan
    assert all(G.conjugate(g, h) in H for g in range(8) for h in H.members)
    assert is_normal(G, H)


def test_intersection_of_i_and_j_spans():
    G = quaternion_group()
    Hi = subgroup_closure(G, {Q8_I})
    Hj = subgroup_closure(G, {Q8_J})
    core = intersect(Hi, Hj)
    assert set(core.members) == set(Hi.members) & set(Hj.members)
    assert core.members == (Q8_ONE, Q8_MINUS_ONE)


def test_single_factor_does_not_generate_klein():
    G = klein_four()
    first = Subgroup(G, [0, 2])  # (a, e) elements under the g*|H|+h coding
    assert not generates(G, [first])


def test_parent_mismatch():
    G1, G2 = cyclic(4), cyclic(4)
    with pytest.raises(ParentMismatch):
        intersect(Subgroup(G1, [0]), Subgroup(G2, [0]))


# -- quotient -----------------------------------------------------------------

def test_q8_mod_center_is_klein():
    G = quaternion_group()
    N = Subgroup(G, [Q8_ONE, Q8_MINUS_ONE])
    Q, proj = quotient(G, N)
    # oracle: coset multiplication table
    assert Q.order == 4
    assert Q.is_abelian()
    assert all(Q.mul(a, a) == Q.identity for a in range(4))
    assert proj.kernel() == N
    assert proj.is_surjective()


def test_quotient_by_trivial_is_identity_projection():
    G = dihedral(4)
    Q, proj = quotient(G, Subgroup(G, [G.identity]))
    assert Q.order == G.order
    assert proj.map == tuple(range(G.order))


def test_quotient_by_whole_group_is_trivial():
    G = dihedral(3)
    Q, proj = quotient(G, Subgroup(G, range(G.order)))
    assert Q.order == 1
    assert set(proj.map) == {0}


def test_quotient_requires_normal():
    G = symmetric(3)
    # a transposition generates a non-normal order-2 subgroup
    H = next(subgroup_closure(G, {a}) for a in range(6)
             if G.element_order(a) == 2)
    assert not is_normal(G, H)
    with pytest.raises(NotNormal):
        quotient(G, H)


# -- actions -------------------------------------------------------------------

def test_regular_action_is_free_and_transitive():
    G = quaternion_group()
    rep = action_check(regular_action(G))
    assert rep.is_free
    assert rep.kernel.members == (G.identity,)
    assert len(rep.orbits) == 1


def test_trivial_action_kernel_is_whole_group():
    G = cyclic(2)
    rep = action_check(trivial_action(G, 3))
    assert not rep.is_free
    assert len(rep.kernel) == 2
    assert len(rep.orbits) == 3


def test_subgroup_translation_orbits_are_cosets():
    G = quaternion_group()
    H = subgroup_closure(G, {Q8_I})
    rep = action_check(right_translation_action(G, H))
    assert rep.is_free
    # oracle: left cosets gH partition Q8 into two sets of four
    cosets = {tuple(sorted(G.mul(g, h) for h in H.members)) for g in range(8)}
    assert {tuple(sorted(o)) for o in rep.orbits} == cosets
    assert sorted(len(o) for o in rep.orbits) == [4, 4]


def test_not_an_action_names_pair():
    G = cyclic(2)
    # the involution row is a 3-cycle, so act[1]∘act[1] != act[1*1]
    with pytest.raises(NotAnAction) as e:
        FiniteAction(G, 3, [[0, 1, 2], [1, 2, 0]])
    assert e.value.details.get("pair") == (1, 1)


def test_left_action_is_converted():
    G = symmetric(3)
    # left action x.g := g*x on the group itself
    act = [[G.mul(g, x) for x in range(6)] for g in range(6)]
    a = FiniteAction(G, 6, act, side="left")
    # after conversion the right law holds; freeness as for translations
    assert action_check(a).is_free


# -- property tests ------------------------------------------------------------

_CATALOG = [named.trivial_group, named.klein_four, named.quaternion_group,
            lambda: named.cyclic(6), lambda: named.dihedral(4),
            lambda: named.symmetric(3)]


@settings(max_examples=60, deadline=None)
@given(st.integers(0, len(_CATALOG) - 1), st.data())
def test_closure_and_intersection_monotone(gi, data):
    G = _CATALOG[gi]()
    m1 = data.draw(st.sets(st.integers(0, G.order - 1), max_size=3))
    m2 = data.draw(st.sets(st.integers(0, G.order - 1), max_size=3))
    H1 = subgroup_closure(G, m1)
    H2 = subgroup_closure(G, m2)
    core = intersect(H1, H2)
    union = subgroup_closure(G, set(H1.members) | set(H2.members))
    assert set(core.members) <= set(H1.members) <= set(union.members)
    assert set(core.members) <= set(H2.members) <= set(union.members)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, len(_CATALOG) - 1), st.data())
def test_quotient_projection_kernel_is_n(gi, data):
    G = _CATALOG[gi]()
    gens = data.draw(st.sets(st.integers(0, G.order - 1), max_size=2))
    N = subgroup_closure(G, gens)
    if not is_normal(G, N):
        return
    Q, proj = quotient(G, N)
    assert Q.order * len(N) == G.order
    assert proj.kernel() == N
    assert proj.is_surjective()


@settings(max_examples=40, deadline=None)
@given(st.integers(0, len(_CATALOG) - 1), st.data())
def test_normality_criterion_is_conjugate_set_equality(gi, data):
    G = _CATALOG[gi]()
    gens = data.draw(st.sets(st.integers(0, G.order - 1), max_size=2))
    H = subgroup_closure(G, gens)
    expected = all(
        {G.conjugate(g, h) for h in H.members} == set(H.members)
        for g in range(G.order))
    assert is_normal(G, H) == expected


def test_subgroup_as_group_roundtrip():
    G = quaternion_group()
    H = subgroup_closure(G, {Q8_K})
    Hg, to_parent, from_parent = subgroup_as_group(H)
    assert Hg.order == 4
    for a in range(4):
        for b in range(4):
            assert to_parent[Hg.table[a][b]] == G.mul(to_parent[a], to_parent[b])


def test_group_hom_validation():
    G = cyclic(4)
    H = cyclic(2)
    GroupHom(G, H, [0, 1, 0, 1])
    with pytest.raises(InvalidInput):
        GroupHom(G, H, [0, 1, 1, 0])
