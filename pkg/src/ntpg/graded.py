"""Weight-graded polynomial maps, dilations and homogeneity structures.

A signature assigns each coordinate a weight: a nonnegative integer in
simple mode, a 0/1 multi-index in multi mode (n commuting gradings).  A
polynomial map is a graded morphism exactly when every monomial of every
component has source weight equal to its target coordinate's weight; this
is the formal version of intertwining the dilations, and all identity
checking here is symbolic (formal parameters are extra polynomial
variables, never sampled, so the checks are sound over every field).
"""

from .errors import (InternalDisagreement, InternalInconsistency,
                     InvalidInput, NotInvertible, SignatureMismatch)
from .fields import mat_inv
from .poly import Poly

MAX_COORDS = 24
MAX_GRADINGS = 4
MAX_WEIGHT = 6


class GradedSignature:
    """Coordinate weights, either simple (integers) or multi (0/1 vectors).

    Simple mode is built from dims=(d_1, ..., d_k) with d_w coordinates of
    weight w, plus an optional block of weight-0 base coordinates.  Multi
    mode lists (sigma, dim) blocks over n gradings; the zero vector is the
    base block.  Coordinates are ordered block by block, blocks by
    ascending total weight with earlier gradings first within a level.
    """

    __slots__ = ("mode", "n", "blocks", "weights", "ncoords")

    def __init__(self, mode, blocks, n=1, max_coords=MAX_COORDS,
                 max_weight=MAX_WEIGHT):
        self.mode = mode
        self.n = n
        if mode == "simple":
            blocks = [(int(w), int(d)) for w, d in blocks]
        elif mode == "multi":
            if not 1 <= n <= MAX_GRADINGS:
                raise InvalidInput("number of gradings out of range", n=n)
            blocks = [(tuple(int(x) for x in s), int(d)) for s, d in blocks]
            for s, _ in blocks:
                if len(s) != n or any(x not in (0, 1) for x in s):
                    raise InvalidInput("multi weights must be 0/1 vectors",
                                       sigma=list(s))
        else:
            raise InvalidInput("unknown signature mode", mode=mode)
        blocks = [(s, d) for s, d in blocks if d > 0]
        # ascending total weight; within a level, earlier gradings first,
        # so the (d, d', d0) double space orders as y, y', z
        blocks.sort(key=lambda bd: (self._total(bd[0]), self._level_key(bd[0])))
        seen = set()
        for s, d in blocks:
            if s in seen:
                raise InvalidInput("duplicate weight block", weight=s)
            seen.add(s)
            if d < 0:
                raise InvalidInput("negative block dimension", weight=s)
        self.blocks = tuple(blocks)
        weights = []
        for s, d in self.blocks:
            weights.extend([s] * d)
        self.weights = tuple(weights)
        self.ncoords = len(weights)
        if self.ncoords == 0:
            raise InvalidInput("signature has no coordinates")
        if self.ncoords > max_coords:
            raise InvalidInput("too many coordinates", ncoords=self.ncoords,
                               cap=max_coords)
        if mode == "simple" and \
                max(self._total(w) for w in self.weights) > max_weight:
            raise InvalidInput("weight exceeds cap", cap=max_weight)

    @staticmethod
    def _total(w):
        return w if isinstance(w, int) else sum(w)

    @staticmethod
    def _level_key(w):
        if isinstance(w, int):
            return w
        return tuple(-x for x in w)

    @classmethod
    def simple(cls, dims, base=0, max_coords=MAX_COORDS,
               max_weight=MAX_WEIGHT):
        blocks = [(0, base)] + [(w + 1, d) for w, d in enumerate(dims)]
        return cls("simple", blocks, max_coords=max_coords,
                   max_weight=max_weight)

    @classmethod
    def multi(cls, n, block_dims, base=0, max_coords=MAX_COORDS):
        blocks = [((0,) * n, base)] + list(block_dims.items())
        return cls("multi", blocks, n=n, max_coords=max_coords)

    @classmethod
    def double_vector(cls, d, d_prime, d_core):
        """The (d, d', d0) double space signature: blocks (1,0), (0,1), (1,1)."""
        return cls.multi(2, {(1, 0): d, (0, 1): d_prime, (1, 1): d_core})

    def zero_weight(self):
        return 0 if self.mode == "simple" else (0,) * self.n

    def add_weights(self, a, b):
        if self.mode == "simple":
            return a + b
        return tuple(x + y for x, y in zip(a, b))

    def scale_weight(self, w, k):
        if self.mode == "simple":
            return w * k
        return tuple(x * k for x in w)

    def monomial_weight(self, exps):
        w = self.zero_weight()
        for i, e in enumerate(exps):
            if e:
                w = self.add_weights(w, self.scale_weight(self.weights[i], e))
        return w

    def block_coords(self, w):
        return [i for i, wi in enumerate(self.weights) if wi == w]

    def weight_keys(self):
        return [s for s, _ in self.blocks]

    def grading_weight(self, i, axis):
        """Weight of coordinate i along one grading axis."""
        w = self.weights[i]
        return w if self.mode == "simple" else w[axis]

    def __eq__(self, other):
        return (isinstance(other, GradedSignature) and self.mode == other.mode
                and self.n == other.n and self.blocks == other.blocks)

    def __hash__(self):
        return hash((self.mode, self.n, self.blocks))

    def __repr__(self):
        return "GradedSignature(%s, %s)" % (self.mode, list(self.blocks))


def monomials_of_weight(sig, target, max_base_degree=0):
    """All exponent tuples of the given total weight.

    Weight-0 coordinates make the set infinite, so their total degree is
    capped by max_base_degree (0 excludes them entirely except for the
    zero-weight target, where they are capped as well).
    """
    zero = sig.zero_weight()
    out = []

    def le(w, t):
        if sig.mode == "simple":
            return w <= t
        return all(a <= b for a, b in zip(w, t))

    def rec(i, remaining, base_budget, exps):
        if i == sig.ncoords:
            if remaining == zero:
                out.append(tuple(exps))
            return
        w = sig.weights[i]
        if w == zero:
            for e in range(base_budget + 1):
                exps.append(e)
                rec(i + 1, remaining, base_budget - e, exps)
                exps.pop()
            return
        e = 0
        cur = remaining
        while True:
            exps.append(e)
            rec(i + 1, cur, base_budget, exps)
            exps.pop()
            if not le(w, cur):
                break
            cur = _weight_sub(sig, cur, w)
            e += 1

    rec(0, target, max_base_degree, [])
    return out


def _weight_sub(sig, a, b):
    if sig.mode == "simple":
        return a - b
    return tuple(x - y for x, y in zip(a, b))


class PolyMap:
    """A polynomial map between graded coordinate spaces.

    components[c] is the polynomial (over the source variables) giving
    target coordinate c.
    """

    __slots__ = ("sig_in", "sig_out", "field", "components")

    def __init__(self, sig_in, sig_out, field, components):
        if len(components) != sig_out.ncoords:
            raise InvalidInput("wrong number of components")
        for f in components:
            if f.nvars != sig_in.ncoords:
                raise InvalidInput("component over wrong variable count")
        self.sig_in = sig_in
        self.sig_out = sig_out
        self.field = field
        self.components = tuple(components)

    @classmethod
    def identity(cls, sig, field):
        comps = [Poly.var(field, sig.ncoords, i) for i in range(sig.ncoords)]
        return cls(sig, sig, field, comps)

    @classmethod
    def from_terms(cls, sig_in, sig_out, field, terms):
        """terms: iterable of (target index, exponent tuple, coefficient)."""
        data = [{} for _ in range(sig_out.ncoords)]
        for tgt, exps, c in terms:
            if not 0 <= tgt < sig_out.ncoords:
                raise InvalidInput("target coordinate out of range", target=tgt)
            exps = tuple(int(e) for e in exps)
            if len(exps) != sig_in.ncoords:
                raise InvalidInput("exponent tuple has wrong length",
                                   target=tgt, exponents=list(exps))
            data[tgt][exps] = field.of(data[tgt].get(exps, field.zero)) + field.of(c)
        comps = [Poly(field, sig_in.ncoords, d) for d in data]
        return cls(sig_in, sig_out, field, comps)

    def key(self):
        return tuple(f.key() for f in self.components)

    def __eq__(self, other):
        return (isinstance(other, PolyMap) and self.sig_in == other.sig_in
                and self.sig_out == other.sig_out
                and self.components == other.components)

    def __hash__(self):
        return hash((self.sig_in, self.sig_out, self.key()))

    def eval(self, point):
        return tuple(f.eval(point) for f in self.components)

    def __repr__(self):
        return "PolyMap(%s)" % (", ".join(repr(f) for f in self.components))


def compose(f, g):
    """f after g: (f ∘ g)(x) = f(g(x)); signatures must chain."""
    if f.sig_in != g.sig_out:
        raise SignatureMismatch("signatures do not chain")
    comps = [c.subs(list(g.components)) for c in f.components]
    return PolyMap(g.sig_in, f.sig_out, f.field, comps)


def is_graded_morphism(pm):
    """Does pm intertwine the dilations of its two signatures?

    Formally equivalent to weight preservation: every monomial of component
    c has source weight equal to the weight of target coordinate c.
    """
    if pm.sig_in.mode != pm.sig_out.mode or pm.sig_in.n != pm.sig_out.n:
        raise SignatureMismatch("mixed signature modes")
    for c, f in enumerate(pm.components):
        target = pm.sig_out.weights[c]
        for exps in f.terms:
            if pm.sig_in.monomial_weight(exps) != target:
                return False
    return True


def graded_violation(pm):
    """First (target, exponents) pair breaking weight preservation, or None."""
    for c, f in enumerate(pm.components):
        target = pm.sig_out.weights[c]
        for exps in sorted(f.terms):
            if pm.sig_in.monomial_weight(exps) != target:
                return (c, exps)
    return None


def linear_block(pm, wkey):
    """The coefficient matrix of bare degree-1 terms within one weight block,
    plus the target and source coordinate indices of that block."""
    rows_idx = pm.sig_out.block_coords(wkey)
    cols_idx = pm.sig_in.block_coords(wkey)
    field = pm.field
    mat = []
    for c in rows_idx:
        f = pm.components[c]
        row = []
        for b in cols_idx:
            unit = tuple(1 if j == b else 0 for j in range(pm.sig_in.ncoords))
            row.append(f.terms.get(unit, field.zero))
        mat.append(row)
    return mat, rows_idx, cols_idx


def triangular_inverse(pm):
    """Solve for an exact inverse up the weight filtration.

    Works for any map whose blocks are triangular: within each block the
    bare degree-1 part must be a constant invertible matrix, and every
    other monomial may involve only variables of strictly smaller total
    weight (weight-0 blocks must be affine).  The result is verified to be
    a two-sided inverse, exactly.
    """
    sig_in, sig_out, field = pm.sig_in, pm.sig_out, pm.field
    if sig_in.mode != sig_out.mode or sig_in.n != sig_out.n:
        raise SignatureMismatch("mixed signature modes")
    if [bd for bd in sig_in.blocks] != [bd for bd in sig_out.blocks]:
        raise NotInvertible("signatures have different block dimensions")

    zero_w = sig_in.zero_weight()
    total = sig_in._total
    nv_in, nv_out = sig_in.ncoords, sig_out.ncoords
    # inverse components, indexed by source coordinate
    g_comp = [None] * nv_in

    for wkey, _dim in sig_in.blocks:
        rows_idx = sig_out.block_coords(wkey)
        cols_idx = sig_in.block_coords(wkey)
        lin = [[field.zero] * len(cols_idx) for _ in rows_idx]
        rests = []
        for r, c in enumerate(rows_idx):
            f = pm.components[c]
            rest = {}
            for exps, coeff in f.terms.items():
                support = [i for i, e in enumerate(exps) if e]
                block_vars = [i for i in support if i in cols_idx]
                if wkey == zero_w:
                    # base block: affine only
                    deg = sum(exps)
                    if deg == 0:
                        rest[exps] = coeff
                    elif deg == 1:
                        lin[r][cols_idx.index(support[0])] = coeff
                    else:
                        raise NotInvertible("base block is not affine",
                                            target=c, exponents=exps)
                elif block_vars:
                    others = [i for i in support if i not in cols_idx]
                    if others or exps[block_vars[0]] != 1 or len(block_vars) > 1:
                        raise NotInvertible("linear block is not constant",
                                            target=c, exponents=exps)
                    lin[r][cols_idx.index(block_vars[0])] = coeff
                else:
                    if any(total(sig_in.weights[i]) >= total(wkey)
                           and sig_in.weights[i] != zero_w for i in support):
                        raise NotInvertible("block is not triangular",
                                            target=c, exponents=exps)
                    rest[exps] = coeff
            rp = Poly(field, nv_in)
            rp.terms = dict(rest)
            rests.append(rp)
        linv = mat_inv(field, lin)
        if linv is None:
            raise NotInvertible("singular linear block", block=wkey)
        # substitute the already-computed inverse for lower variables
        sub_list = []
        for i in range(nv_in):
            if g_comp[i] is not None:
                sub_list.append(g_comp[i])
            else:
                sub_list.append(Poly.zero(field, nv_out))
        adjusted = []
        for r, c in enumerate(rows_idx):
            hat = Poly.var(field, nv_out, c)
            adjusted.append(hat - rests[r].subs(sub_list))
        for bpos, b in enumerate(cols_idx):
            acc = Poly.zero(field, nv_out)
            for r in range(len(rows_idx)):
                acc = acc + adjusted[r].scale(linv[bpos][r])
            g_comp[b] = acc

    ginv = PolyMap(sig_out, sig_in, field, g_comp)
    if compose(pm, ginv) != PolyMap.identity(sig_out, field) or \
            compose(ginv, pm) != PolyMap.identity(sig_in, field):
        raise InternalInconsistency("computed inverse fails round trip")
    return ginv


def invert(pm):
    """Exact inverse of a weight-preserving map, solved up the filtration.

    The weight-0 block must be affine with an invertible linear part; each
    positive block must have a constant invertible linear part (terms mixing
    a block variable with base variables are rejected).  Higher terms are
    eliminated by back-substitution of the already-inverted lower blocks.
    """
    if not is_graded_morphism(pm):
        raise NotInvertible("map is not weight-preserving",
                            witness=graded_violation(pm))
    return triangular_inverse(pm)


# -- homogeneity / weight decomposition --------------------------------------

def weight_components(f, sig):
    """Decompose a polynomial by total monomial weight (simple signatures)."""
    if sig.mode != "simple":
        raise SignatureMismatch("weight decomposition needs a simple signature")
    if f.nvars != sig.ncoords:
        raise InvalidInput("polynomial over wrong variable count")
    comps = {}
    for exps, c in f.terms.items():
        w = sig.monomial_weight(exps)
        comps.setdefault(w, {})[exps] = c
    out = {}
    for w, terms in sorted(comps.items()):
        p = Poly(f.field, f.nvars)
        p.terms = terms
        out[w] = p
    return out


def is_homogeneous(f, sig, w):
    """Single weight-w component?  The zero polynomial is homogeneous of
    every degree (empty decomposition)."""
    comps = weight_components(f, sig)
    if not comps:
        return True
    return set(comps) == {w}


class Derivation:
    """A vector field sum a_i(y) d/dy_i acting as a derivation."""

    __slots__ = ("field", "nvars", "coeffs")

    def __init__(self, field, nvars, coeffs):
        if len(coeffs) != nvars:
            raise InvalidInput("need one coefficient per variable")
        self.field = field
        self.nvars = nvars
        self.coeffs = tuple(coeffs)

    def apply(self, f):
        out = Poly.zero(self.field, self.nvars)
        for i, a in enumerate(self.coeffs):
            if not a.is_zero():
                out = out + a * f.diff(i)
        return out

    def bracket(self, other):
        """[X, Y] with coefficients X(Y_i) - Y(X_i)."""
        coeffs = [self.apply(other.coeffs[i]) - other.apply(self.coeffs[i])
                  for i in range(self.nvars)]
        return Derivation(self.field, self.nvars, coeffs)

    def is_zero(self):
        return all(c.is_zero() for c in self.coeffs)

    def __eq__(self, other):
        return isinstance(other, Derivation) and self.coeffs == other.coeffs


def weight_vector_field(sig, field, axis=0):
    """The derivation sum w y d/dy detecting homogeneity (Euler field in
    degree 1).  Over F_p it sees weights mod p only; the formal dilation
    test is the characteristic-independent criterion."""
    coeffs = []
    for i in range(sig.ncoords):
        w = sig.grading_weight(i, axis)
        coeffs.append(Poly.var(field, sig.ncoords, i, field.of(w)))
    return Derivation(field, sig.ncoords, coeffs)


def apply_derivation(d, f):
    return d.apply(f)


# -- dilations as formal families ---------------------------------------------

class HomogeneityStructure:
    """A family of maps polynomial in one formal parameter t.

    Components are polynomials in (y_0..y_{m-1}, t) with t the last
    variable.  Construction checks the monoid laws h_1 = id and
    h_t ∘ h_s = h_{ts} as formal polynomial identities.
    """

    __slots__ = ("ncoords", "field", "components")

    def __init__(self, ncoords, field, components, check=True):
        if len(components) != ncoords:
            raise InvalidInput("wrong number of components")
        for f in components:
            if f.nvars != ncoords + 1:
                raise InvalidInput("component must use coords plus parameter")
        self.ncoords = ncoords
        self.field = field
        self.components = tuple(components)
        if check:
            self._check_laws()

    @classmethod
    def diagonal(cls, sig, field, axis=0):
        m = sig.ncoords
        comps = []
        for i in range(m):
            w = sig.grading_weight(i, axis)
            exps = [0] * (m + 1)
            exps[i] = 1
            exps[m] = w
            comps.append(Poly(field, m + 1, {tuple(exps): field.one}))
        return cls(m, field, comps)

    def at_one(self):
        one = Poly.const(self.field, self.ncoords, self.field.one)
        vals = [Poly.var(self.field, self.ncoords, i) for i in range(self.ncoords)]
        return [c.subs(vals + [one]) for c in self.components]

    def _check_laws(self):
        field, nc = self.field, self.ncoords
        for i, c in enumerate(self.at_one()):
            if c != Poly.var(field, nc, i):
                raise InternalInconsistency("h_1 is not the identity",
                                            coordinate=i)
        # h_t ∘ h_s = h_{ts} over variables (y, t, s)
        big = nc + 2
        t = Poly.var(field, big, nc)
        s = Poly.var(field, big, nc + 1)
        ys = [Poly.var(field, big, i) for i in range(nc)]
        inner = [c.subs(ys + [s]) for c in self.components]
        lhs = [c.subs(inner + [t]) for c in self.components]
        rhs = [c.subs(ys + [t * s]) for c in self.components]
        for i in range(nc):
            if lhs[i] != rhs[i]:
                raise InternalInconsistency("h_t∘h_s != h_{ts}", coordinate=i)

    def weight_vector_field(self):
        """d/dt at t = 1, the infinitesimal generator of the family."""
        field, nc = self.field, self.ncoords
        one = Poly.const(field, nc, field.one)
        vals = [Poly.var(field, nc, i) for i in range(nc)]
        coeffs = [c.diff(nc).subs(vals + [one]) for c in self.components]
        return Derivation(field, nc, coeffs)

    def commutes_with(self, other):
        """h_t ∘ k_s = k_s ∘ h_t as a formal identity in (y, t, s)."""
        if other.ncoords != self.ncoords:
            raise SignatureMismatch("structures on different coordinate sets")
        field, nc = self.field, self.ncoords
        big = nc + 2
        t = Poly.var(field, big, nc)
        s = Poly.var(field, big, nc + 1)
        ys = [Poly.var(field, big, i) for i in range(nc)]
        h_at_t = [c.subs(ys + [t]) for c in self.components]
        k_at_s = [c.subs(ys + [s]) for c in other.components]
        hk = [c.subs(k_at_s + [t]) for c in self.components]
        kh = [c.subs(h_at_t + [s]) for c in other.components]
        return hk == kh

    def max_parameter_degree(self):
        return max((e[self.ncoords] for c in self.components for e in c.terms),
                   default=0)


def dilation(sig, field, axis=0):
    """The diagonal dilation family of a signature: coordinate of weight w
    scales by t^w (for multi signatures, by t^(sigma_axis) in family
    ``axis``)."""
    if sig.mode == "simple" and axis != 0:
        raise InvalidInput("simple signatures have a single grading")
    if sig.mode == "multi" and not 0 <= axis < sig.n:
        raise InvalidInput("grading axis out of range", axis=axis)
    return HomogeneityStructure.diagonal(sig, field, axis)


def dilation_families(sig, field):
    n = 1 if sig.mode == "simple" else sig.n
    return [dilation(sig, field, axis) for axis in range(n)]


def conjugate_structure(h, phi, phi_inv=None):
    """The family phi ∘ h_t ∘ phi^-1 on the same coordinates."""
    if phi.sig_in != phi.sig_out:
        raise SignatureMismatch("conjugation needs an endo-map")
    if phi.sig_in.ncoords != h.ncoords:
        raise SignatureMismatch("structure and map coordinate counts differ")
    if phi_inv is None:
        phi_inv = invert(phi)
    elif compose(phi, phi_inv) != PolyMap.identity(phi.sig_out, phi.field):
        raise NotInvertible("supplied inverse fails the round trip")
    field, nc = h.field, h.ncoords
    big = nc + 1
    t = Poly.var(field, big, nc)
    inner = [c.lift(big) for c in phi_inv.components]
    mid = [c.subs(inner + [t]) for c in h.components]
    outer = [c.subs(mid) for c in phi.components]
    return HomogeneityStructure(nc, field, outer)


class StructureCompatReport:
    """Two independent verdicts for pairwise compatibility of dilations."""

    __slots__ = ("commute", "bracket_commute", "agreement_enforced")

    def __init__(self, commute, bracket_commute, agreement_enforced):
        self.commute = commute
        self.bracket_commute = bracket_commute
        self.agreement_enforced = agreement_enforced

    def __bool__(self):
        return self.commute


def check_compatible_structures(structures):
    """Pairwise commutation of dilation families, two ways.

    Verdict one: h^i_t ∘ h^j_s = h^j_s ∘ h^i_t as formal identities.
    Verdict two: the infinitesimal generators commute, [∇^i, ∇^j] = 0.
    Over characteristic zero (or when every parameter degree stays below
    the characteristic) the two must agree and a disagreement raises
    InternalDisagreement; over small F_p the generator test only sees
    weights mod p, so agreement is reported but not enforced.
    """
    if not structures:
        raise InvalidInput("need at least one structure")
    nc = structures[0].ncoords
    field = structures[0].field
    for h in structures:
        if h.ncoords != nc:
            raise SignatureMismatch("structures on different coordinate sets")
    commute = True
    bracket_commute = True
    fields_ok = field.char == 0 or all(
        h.max_parameter_degree() < field.char for h in structures)
    nabla = [h.weight_vector_field() for h in structures]
    for i in range(len(structures)):
        for j in range(i + 1, len(structures)):
            if not structures[i].commutes_with(structures[j]):
                commute = False
            if not nabla[i].bracket(nabla[j]).is_zero():
                bracket_commute = False
    if fields_ok and commute != bracket_commute:
        raise InternalDisagreement(
            "formal commutation and generator bracket disagree",
            commute=commute, bracket=bracket_commute)
    return StructureCompatReport(commute, bracket_commute, fields_ok)
