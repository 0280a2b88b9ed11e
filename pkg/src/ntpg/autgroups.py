"""Automorphism groups of multi-graded vector spaces and double affine
spaces over prime fields.

An automorphism of the model space is an invertible polynomial map whose
component of multi-degree sigma carries only monomials of weight exactly
sigma (products of one coordinate from each block of a decomposition of
sigma); that is precisely weight preservation for 0/1 multi-weights.  The
finite-field enumeration of all such maps is the brute-force oracle for the
n-tuple principal structure of these groups.
"""

from itertools import product

from .errors import (EnumerationCapExceeded, IllegalMonomial,
                     InternalInconsistency, InvalidInput)
from .fields import mat_inv
from .graded import (GradedSignature, PolyMap, compose, is_graded_morphism,
                     monomials_of_weight, triangular_inverse)
from .groups import Subgroup, intersect, make_group
from .poly import Poly
from .principal import verify_ntuple

DEFAULT_ENUM_CAP = 10 ** 6


def _require_model_signature(sig):
    if sig.mode != "multi":
        raise InvalidInput("model signature must be multi-graded")
    if sig.block_coords(sig.zero_weight()):
        raise InvalidInput("model signature must have no base coordinates")


class NVectAutomorphism:
    """A validated automorphism of a multi-graded vector space model."""

    __slots__ = ("sig", "field", "map", "inverse")

    def __init__(self, sig, field, pmap, inverse):
        self.sig = sig
        self.field = field
        self.map = pmap
        self.inverse = inverse

    def key(self):
        return self.map.key()

    def __eq__(self, other):
        return isinstance(other, NVectAutomorphism) and self.map == other.map

    def __hash__(self):
        return hash(self.map)

    def __repr__(self):
        return "NVectAutomorphism(%r)" % (self.map,)


def make_automorphism(sig, field, terms):
    """Validate coefficients against the degree decomposition and invert.

    ``terms`` is an iterable of (target coordinate, exponent tuple,
    coefficient); a slot whose monomial weight differs from its target
    degree raises IllegalMonomial, a singular linear block NotInvertible.
    """
    _require_model_signature(sig)
    terms = list(terms)
    for tgt, exps, _ in terms:
        if not 0 <= tgt < sig.ncoords:
            raise InvalidInput("target coordinate out of range", target=tgt)
        if sig.monomial_weight(exps) != sig.weights[tgt]:
            raise IllegalMonomial("slot violates the degree decomposition",
                                  target=tgt, exponents=tuple(exps))
    pm = PolyMap.from_terms(sig, sig, field, terms)
    inverse = triangular_inverse(pm)
    return NVectAutomorphism(sig, field, pm, inverse)


def aut_from_polymap(sig, field, pm):
    if not is_graded_morphism(pm):
        raise IllegalMonomial("map is not weight-preserving")
    return NVectAutomorphism(sig, field, pm, triangular_inverse(pm))


def aut_compose(a, b):
    """a after b; the composite stays in the automorphism shape."""
    pm = compose(a.map, b.map)
    if not is_graded_morphism(pm):
        raise InternalInconsistency("composite left the automorphism shape")
    return NVectAutomorphism(a.sig, a.field, pm,
                             compose(b.inverse, a.inverse))


def aut_invert(a):
    return NVectAutomorphism(a.sig, a.field, a.inverse, a.map)


def identity_automorphism(sig, field):
    ident = PolyMap.identity(sig, field)
    return NVectAutomorphism(sig, field, ident, ident)


def is_statomorphism(a):
    """All linear parts equal to the identity; only mixed terms remain."""
    sig, field = a.sig, a.field
    nv = sig.ncoords
    for c in range(nv):
        w = sig.weights[c]
        coords = sig.block_coords(w)
        for b in coords:
            unit = tuple(1 if j == b else 0 for j in range(nv))
            coeff = a.map.components[c].terms.get(unit, field.zero)
            expect = field.one if b == c else field.zero
            if coeff != expect:
                return False
    return True


def gi_membership(a, i):
    """Does the automorphism act identically on the factor of degree e_i?

    i is 1-based; the condition is that the degree-e_i component is the
    identity projection.
    """
    sig, field = a.sig, a.field
    if not 1 <= i <= sig.n:
        raise InvalidInput("grading index out of range", i=i)
    eps = tuple(1 if k == i - 1 else 0 for k in range(sig.n))
    for c in sig.block_coords(eps):
        if a.map.components[c] != Poly.var(field, sig.ncoords, c):
            return False
    return True


class AutGroupHandle:
    """An enumerated automorphism group with its index dictionary."""

    __slots__ = ("sig", "field", "group", "elements", "index")

    def __init__(self, sig, field, group, elements, index):
        self.sig = sig
        self.field = field
        self.group = group
        self.elements = elements
        self.index = index

    def index_of(self, aut):
        return self.index[aut.key()]

    def gi_subgroup(self, i):
        members = [k for k, a in enumerate(self.elements) if gi_membership(a, i)]
        return Subgroup(self.group, members, check=False)

    def statomorphism_subgroup(self):
        members = [k for k, a in enumerate(self.elements) if is_statomorphism(a)]
        return Subgroup(self.group, members, check=False)


def _slot_list(sig):
    """All coefficient slots: (target, exponents), linear slots flagged."""
    slots = []
    for c in range(sig.ncoords):
        w = sig.weights[c]
        coords = sig.block_coords(w)
        for exps in monomials_of_weight(sig, w):
            linear = sum(exps) == 1 and any(exps[b] for b in coords)
            slots.append((c, exps, linear))
    return slots


def enumerate_aut(sig, field, cap=DEFAULT_ENUM_CAP):
    """Enumerate every automorphism of the model over F_p.

    Fills the full coefficient grid, filters by invertibility of the linear
    blocks (sufficient, by triangularity), asserts closure under
    composition, and returns the group table through the validating group
    builder.  Inverse maps are read off the group table.
    """
    _require_model_signature(sig)
    if field.char == 0:
        raise InvalidInput("enumeration needs a finite field")
    slots = _slot_list(sig)
    grid = field.char ** len(slots)
    if grid > cap:
        raise EnumerationCapExceeded("coefficient grid exceeds cap",
                                     grid=grid, cap=cap)
    scalars = field.elements()
    block_coords = {w: sig.block_coords(w) for w, _ in sig.blocks}
    linear_pos = {}
    for k, (c, exps, linear) in enumerate(slots):
        if linear:
            b = next(i for i, e in enumerate(exps) if e)
            linear_pos[(c, b)] = k

    maps = []
    index = {}
    for values in product(scalars, repeat=len(slots)):
        singular = False
        for w, coords in block_coords.items():
            mat = [[values[linear_pos[(c, b)]] for b in coords]
                   for c in coords]
            if mat_inv(field, mat) is None:
                singular = True
                break
        if singular:
            continue
        terms = [(c, exps, v) for (c, exps, _), v in zip(slots, values)
                 if v != field.zero]
        pm = PolyMap.from_terms(sig, sig, field, terms)
        index[pm.key()] = len(maps)
        maps.append(pm)

    n = len(maps)
    table = [[None] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            k = index.get(compose(maps[i], maps[j]).key())
            if k is None:
                raise InternalInconsistency(
                    "composition left the enumerated shape", pair=(i, j))
            table[i][j] = k
    group = make_group(table)
    elements = [NVectAutomorphism(sig, field, maps[i],
                                  maps[group.inverse[i]])
                for i in range(n)]
    return AutGroupHandle(sig, field, group, elements, index)


class P54Report:
    __slots__ = ("handle", "witness", "orders")

    def __init__(self, handle, witness, orders):
        self.handle = handle
        self.witness = witness
        self.orders = orders


def verify_p54(sig, field, cap=DEFAULT_ENUM_CAP):
    """Enumerate Aut over F_p and verify the n-tuple principal structure
    with the distinguished subgroups G^i (identical on the degree-e_i
    factor).  Reports every order, including pairwise intersections."""
    handle = enumerate_aut(sig, field, cap)
    G = handle.group
    subs = [handle.gi_subgroup(i) for i in range(1, sig.n + 1)]
    witness = verify_ntuple(G, subs)
    orders = {"gamma": G.order,
              "gi": [len(s) for s in subs],
              "intersections": {}}
    for i in range(len(subs)):
        for j in range(i + 1, len(subs)):
            orders["intersections"]["%d,%d" % (i + 1, j + 1)] = \
                len(intersect(subs[i], subs[j]))
    return P54Report(handle, witness, orders)


# -- double affine automorphisms ----------------------------------------------

class AffineAutomorphism:
    """An automorphism of the trivial double affine space.

    Components follow the double affine shape: the two side blocks are
    affine in their own coordinates, the core block is affine-bilinear
    (constant, y, y', yy' and z terms).
    """

    __slots__ = ("sig", "field", "map", "inverse")

    def __init__(self, sig, field, pmap, inverse):
        self.sig = sig
        self.field = field
        self.map = pmap
        self.inverse = inverse

    def key(self):
        return self.map.key()

    def __eq__(self, other):
        return isinstance(other, AffineAutomorphism) and self.map == other.map

    def __hash__(self):
        return hash(self.map)


def _weight_le(a, b):
    return all(x <= y for x, y in zip(a, b))


def _check_affine_shape(sig, pm):
    for c, f in enumerate(pm.components):
        target = sig.weights[c]
        for exps in f.terms:
            if not _weight_le(sig.monomial_weight(exps), target):
                raise IllegalMonomial("slot outside the affine shape",
                                      target=c, exponents=exps)


def make_affine_automorphism(dims, field, terms):
    """Build a double affine automorphism for dims = (d, d', d0).

    ``terms`` as in make_automorphism; legal slots for a target of degree
    sigma are the monomials of weight <= sigma componentwise.
    """
    d, dp, d0 = dims
    sig = GradedSignature.double_vector(d, dp, d0)
    pm = PolyMap.from_terms(sig, sig, field, terms)
    _check_affine_shape(sig, pm)
    inverse = triangular_inverse(pm)
    return AffineAutomorphism(sig, field, pm, inverse)


def affine_identity(dims, field):
    d, dp, d0 = dims
    sig = GradedSignature.double_vector(d, dp, d0)
    ident = PolyMap.identity(sig, field)
    return AffineAutomorphism(sig, field, ident, ident)


def affine_compose(a, b):
    pm = compose(a.map, b.map)
    _check_affine_shape(a.sig, pm)   # closure of the shape, a theory fact
    return AffineAutomorphism(a.sig, a.field, pm, compose(b.inverse, a.inverse))


def affine_invert(a):
    _check_affine_shape(a.sig, a.inverse)
    return AffineAutomorphism(a.sig, a.field, a.inverse, a.map)


def forget_linear(a):
    """Drop all lower-degree terms, keeping the weight-exact part.

    The result is an automorphism of the underlying double vector space and
    the assignment is a group homomorphism.
    """
    sig, field = a.sig, a.field
    kept = []
    for c, f in enumerate(a.map.components):
        target = sig.weights[c]
        for exps, coeff in f.terms.items():
            if sig.monomial_weight(exps) == target:
                kept.append((c, exps, coeff))
    return make_automorphism(sig, field, kept)
