"""Finite groupoids with a group acting by groupoid automorphisms.

Arrows and objects are dense indices.  Composition follows the function
order: mul(g, h) is defined when src(g) == tgt(h) and the product runs
src(h) -> tgt(g).  The partial multiplication is stored as a dict keyed by
composable pairs, so composability queries are O(1) during the exhaustive
verifications.
"""

from .errors import (ActionNotFree, InternalInconsistency, InvalidInput,
                     NotCompatible, NotFree, NotMultiplicative,
                     NotTrivialized, SplitFailure)
from .groups import (FiniteAction, Subgroup, action_check, make_group,
                     quotient)


class FiniteGroupoid:
    """Objects, arrows, src/tgt/id/inv and a partial multiplication."""

    __slots__ = ("n_objects", "n_arrows", "src", "tgt", "id", "inv", "mul")

    def __init__(self, n_objects, src, tgt, id_, inv, mul, check=True):
        self.n_objects = int(n_objects)
        self.src = tuple(int(x) for x in src)
        self.tgt = tuple(int(x) for x in tgt)
        self.n_arrows = len(self.src)
        self.id = tuple(int(x) for x in id_)
        self.inv = tuple(int(x) for x in inv)
        self.mul = {(int(g), int(h)): int(gh) for (g, h), gh in mul.items()}
        if check:
            self._validate()

    def compose(self, g, h):
        return self.mul[(g, h)]

    def is_composable(self, g, h):
        return (g, h) in self.mul

    def composable_pairs(self):
        return self.mul.keys()

    def _validate(self):
        n, m = self.n_objects, self.n_arrows
        if len(self.tgt) != m or len(self.inv) != m or len(self.id) != n:
            raise InvalidInput("groupoid arrays have inconsistent lengths")
        for a in range(m):
            if not (0 <= self.src[a] < n and 0 <= self.tgt[a] < n):
                raise InvalidInput("src/tgt out of range", arrow=a)
            if not 0 <= self.inv[a] < m:
                raise InvalidInput("inv out of range", arrow=a)
        for x in range(n):
            u = self.id[x]
            if not 0 <= u < m or self.src[u] != x or self.tgt[u] != x:
                raise InvalidInput("id[x] is not an arrow at x", object=x)
        # multiplication defined exactly on composable pairs
        for g in range(m):
            for h in range(m):
                if self.src[g] == self.tgt[h]:
                    if (g, h) not in self.mul:
                        raise InvalidInput("missing product of composable pair",
                                           pair=(g, h))
                elif (g, h) in self.mul:
                    raise InvalidInput("product defined on non-composable pair",
                                       pair=(g, h))
        for (g, h), gh in self.mul.items():
            if not 0 <= gh < m:
                raise InvalidInput("product out of range", pair=(g, h))
            if self.src[gh] != self.src[h] or self.tgt[gh] != self.tgt[g]:
                raise InvalidInput("product has wrong endpoints", pair=(g, h))
        for g in range(m):
            if self.mul[(g, self.id[self.src[g]])] != g or \
                    self.mul[(self.id[self.tgt[g]], g)] != g:
                raise InvalidInput("units are not two-sided", arrow=g)
            gi = self.inv[g]
            if self.src[gi] != self.tgt[g] or self.tgt[gi] != self.src[g]:
                raise InvalidInput("inverse has wrong endpoints", arrow=g)
            if self.mul[(g, gi)] != self.id[self.tgt[g]] or \
                    self.mul[(gi, g)] != self.id[self.src[g]]:
                raise InvalidInput("inverse law fails", arrow=g)
        for (g, h) in self.mul:
            gh = self.mul[(g, h)]
            for k in range(m):
                if self.src[h] == self.tgt[k]:
                    if self.mul[(gh, k)] != self.mul[(g, self.mul[(h, k)])]:
                        raise InvalidInput("associativity fails",
                                           triple=(g, h, k))

    def vertex_group(self, x):
        """The group of arrows x -> x, as (FiniteGroup, arrow list)."""
        loop = [a for a in range(self.n_arrows)
                if self.src[a] == x and self.tgt[a] == x]
        pos = {a: i for i, a in enumerate(loop)}
        table = [[pos[self.mul[(a, b)]] for b in loop] for a in loop]
        return make_group(table), loop

    def __repr__(self):
        return "FiniteGroupoid(objects=%d, arrows=%d)" % (self.n_objects,
                                                          self.n_arrows)


def pair_groupoid(n):
    """The pair groupoid on n objects; arrow (p, q): q -> p coded p*n+q."""
    src = [q for p in range(n) for q in range(n)]
    tgt = [p for p in range(n) for q in range(n)]
    id_ = [p * n + p for p in range(n)]
    inv = [q * n + p for p in range(n) for q in range(n)]
    mul = {}
    for p in range(n):
        for q in range(n):
            for r in range(n):
                mul[(p * n + q, q * n + r)] = p * n + r
    return FiniteGroupoid(n, src, tgt, id_, inv, mul)


class GaugeLabels:
    """Arrow labels of a gauge groupoid: pair (p, q) <-> arrow index."""

    __slots__ = ("pair_to_arrow", "arrow_rep", "point_orbit", "object_rep")

    def __init__(self, pair_to_arrow, arrow_rep, point_orbit, object_rep):
        self.pair_to_arrow = pair_to_arrow
        self.arrow_rep = arrow_rep
        self.point_orbit = point_orbit
        self.object_rep = object_rep

    def arrow(self, p, q):
        return self.pair_to_arrow[(p, q)]


def gauge_groupoid(set_size, action):
    """The quotient of the pair groupoid of P by a free diagonal action.

    Arrows are the orbits <p,q> of the diagonal action on P x P, labeled by
    their lexicographically least representative; objects are the point
    orbits.  src<p,q> = orbit(q), tgt<p,q> = orbit(p) and
    <p,q> . <q,r> = <p,r>.
    """
    if action.set_size != set_size:
        raise InvalidInput("action set size mismatch")
    G = action.group
    rep = action_check(action)
    if not rep.is_free:
        for g in range(G.order):
            if g == G.identity:
                continue
            for x in range(set_size):
                if action.act[g][x] == x:
                    raise ActionNotFree("point fixed by a non-identity element",
                                        element=g, point=x)
    point_orbit = rep.orbit_of
    object_rep = [min(o) for o in rep.orbits]

    pair_to_arrow = {}
    arrow_rep = []
    for p in range(set_size):
        for q in range(set_size):
            if (p, q) in pair_to_arrow:
                continue
            a = len(arrow_rep)
            arrow_rep.append((p, q))
            for g in range(G.order):
                pair_to_arrow[(action.act[g][p], action.act[g][q])] = a
    n_arrows = len(arrow_rep)
    assert n_arrows * G.order == set_size * set_size

    src = [point_orbit[q] for (p, q) in arrow_rep]
    tgt = [point_orbit[p] for (p, q) in arrow_rep]
    id_ = [pair_to_arrow[(r, r)] for r in object_rep]
    inv = [pair_to_arrow[(q, p)] for (p, q) in arrow_rep]

    # transporter of the point action: (x, y) -> g with x.g = y (free)
    transport = {}
    for x in range(set_size):
        for g in range(G.order):
            transport[(x, action.act[g][x])] = g

    mul = {}
    for a, (p, q) in enumerate(arrow_rep):
        for b, (q2, r) in enumerate(arrow_rep):
            if point_orbit[q2] != point_orbit[q]:
                continue
            g = transport[(q2, q)]
            mul[(a, b)] = pair_to_arrow[(p, action.act[g][r])]
    gpd = FiniteGroupoid(len(object_rep), src, tgt, id_, inv, mul)
    return gpd, GaugeLabels(pair_to_arrow, arrow_rep, point_orbit, object_rep)


class GroupoidAction:
    """A right action of a group on the arrows of a groupoid."""

    __slots__ = ("groupoid", "group", "arrow_action")

    def __init__(self, groupoid, group, act):
        self.groupoid = groupoid
        self.group = group
        self.arrow_action = FiniteAction(group, groupoid.n_arrows, act)

    @property
    def act(self):
        return self.arrow_action.act


class CompatReport:
    __slots__ = ("compatible", "witness", "kernel", "pre_principal",
                 "object_action", "object_action_free")

    def __init__(self, compatible, witness, kernel, pre_principal,
                 object_action, object_action_free):
        self.compatible = compatible
        self.witness = witness
        self.kernel = kernel
        self.pre_principal = pre_principal
        self.object_action = object_action
        self.object_action_free = object_action_free


def _induced_object_map(ga, g):
    """Object permutation covered by act(., g), from its effect on units."""
    gpd = ga.groupoid
    unit_set = {gpd.id[x]: x for x in range(gpd.n_objects)}
    out = [None] * gpd.n_objects
    for x in range(gpd.n_objects):
        img = ga.act[g][gpd.id[x]]
        if img not in unit_set:
            return None, ("unit", g, x)
        out[x] = unit_set[img]
    return out, None


def check_compatible(ga):
    """Is each act(., g) a groupoid automorphism covering an object map?

    Returns a CompatReport with the action kernel, the induced object
    action, and the pre-principal verdict (the induced G/kernel action on
    arrows is free; properness is automatic at finite scale).
    """
    gpd, G = ga.groupoid, ga.group
    obj_rows = []
    for g in range(G.order):
        omap, w = _induced_object_map(ga, g)
        if omap is None:
            return CompatReport(False, w, None, False, None, False)
        row = ga.act[g]
        for a in range(gpd.n_arrows):
            if gpd.src[row[a]] != omap[gpd.src[a]] or \
                    gpd.tgt[row[a]] != omap[gpd.tgt[a]]:
                return CompatReport(False, ("endpoints", g, a), None, False,
                                    None, False)
            if row[gpd.inv[a]] != gpd.inv[row[a]]:
                return CompatReport(False, ("inverse", g, a), None, False,
                                    None, False)
        for (a, b), ab in gpd.mul.items():
            if gpd.mul[(row[a], row[b])] != row[ab]:
                return CompatReport(False, ("product", g, (a, b)), None, False,
                                    None, False)
        obj_rows.append(omap)
    object_action = FiniteAction(G, gpd.n_objects, obj_rows)

    ident = tuple(range(gpd.n_arrows))
    kernel = Subgroup(G, [g for g in range(G.order) if ga.act[g] == ident],
                      check=False)
    reduced = reduced_action(ga, kernel)
    pre_principal = action_check(reduced.arrow_action).is_free
    object_action_free = action_check(
        _reduce_plain_action(object_action, kernel)).is_free
    return CompatReport(True, None, kernel, pre_principal, object_action,
                        object_action_free)


def _reduce_plain_action(a, kernel):
    Q, proj = quotient(a.group, kernel)
    rows = [None] * Q.order
    for g in range(a.group.order):
        rows[proj(g)] = a.act[g]
    return FiniteAction(Q, a.set_size, rows)


def reduced_action(ga, kernel=None):
    """The induced GroupoidAction of G/kernel (default: the action kernel)."""
    if kernel is None:
        ident = tuple(range(ga.groupoid.n_arrows))
        kernel = Subgroup(ga.group,
                          [g for g in range(ga.group.order)
                           if ga.act[g] == ident],
                          check=False)
    Q, proj = quotient(ga.group, kernel)
    rows = [None] * Q.order
    for g in range(ga.group.order):
        rows[proj(g)] = ga.act[g]
    return GroupoidAction(ga.groupoid, Q, rows)


class QuotientResult:
    __slots__ = ("groupoid", "arrow_map", "object_map")

    def __init__(self, groupoid, arrow_map, object_map):
        self.groupoid = groupoid
        self.arrow_map = arrow_map
        self.object_map = object_map


def quotient_groupoid(ga):
    """Quotient a groupoid by a free compatible action.

    Arrows and objects of the result are the G-orbits; the returned maps
    (arrow_map, object_map) form the projection morphism, verified to
    intertwine src, tgt, units, inverses and products.
    """
    report = check_compatible(ga)
    if not report.compatible:
        raise NotCompatible("action is not by groupoid automorphisms",
                            witness=report.witness)
    arep = action_check(ga.arrow_action)
    if not arep.is_free:
        g = next(g for g in range(ga.group.order)
                 if g != ga.group.identity
                 and any(ga.act[g][a] == a for a in range(ga.groupoid.n_arrows)))
        raise NotFree("arrow action is not free", element=g)

    gpd, G = ga.groupoid, ga.group
    orep = action_check(report.object_action)
    arrow_map, object_map = arep.orbit_of, orep.orbit_of
    arrow_reps = [min(o) for o in arep.orbits]
    object_reps = [min(o) for o in orep.orbits]

    src0 = [object_map[gpd.src[a]] for a in arrow_reps]
    tgt0 = [object_map[gpd.tgt[a]] for a in arrow_reps]
    id0 = [arrow_map[gpd.id[x]] for x in object_reps]
    inv0 = [arrow_map[gpd.inv[a]] for a in arrow_reps]

    obj_transport = {}
    for x in range(gpd.n_objects):
        for g in range(G.order):
            obj_transport[(x, report.object_action.act[g][x])] = g

    mul0 = {}
    for A, a in enumerate(arrow_reps):
        for B, b in enumerate(arrow_reps):
            if src0[A] != tgt0[B]:
                continue
            g = obj_transport[(gpd.tgt[b], gpd.src[a])]
            mul0[(A, B)] = arrow_map[gpd.mul[(a, ga.act[g][b])]]
    gpd0 = FiniteGroupoid(len(object_reps), src0, tgt0, id0, inv0, mul0)

    # the projection must be a groupoid morphism (theory oracle)
    for a in range(gpd.n_arrows):
        if gpd0.src[arrow_map[a]] != object_map[gpd.src[a]] or \
                gpd0.tgt[arrow_map[a]] != object_map[gpd.tgt[a]]:
            raise InternalInconsistency("projection breaks endpoints", arrow=a)
        if gpd0.inv[arrow_map[a]] != arrow_map[gpd.inv[a]]:
            raise InternalInconsistency("projection breaks inverses", arrow=a)
    for x in range(gpd.n_objects):
        if gpd0.id[object_map[x]] != arrow_map[gpd.id[x]]:
            raise InternalInconsistency("projection breaks units", object=x)
    for (a, b), ab in gpd.mul.items():
        if gpd0.mul[(arrow_map[a], arrow_map[b])] != arrow_map[ab]:
            raise InternalInconsistency("projection breaks products",
                                        pair=(a, b))
    return QuotientResult(gpd0, arrow_map, object_map)


class SplitPresentation:
    """The fiber-product presentation of a groupoid with a free compatible
    action: base quotient groupoid, unit bundle and the extracted t-action."""

    __slots__ = ("ga", "base", "arrow_map", "object_map", "unit_action",
                 "fiber", "s_map", "t_action")

    def __init__(self, ga, base, arrow_map, object_map, unit_action, fiber,
                 s_map, t_action):
        self.ga = ga
        self.base = base
        self.arrow_map = arrow_map
        self.object_map = object_map
        self.unit_action = unit_action
        self.fiber = fiber
        self.s_map = s_map
        self.t_action = t_action


def split(ga):
    """Split a free compatible action through the fiber product.

    Verifies that y -> (pi(y), s(y)) is a bijection onto
    {(y0, x) : p(x) = sigma(y0)}, extracts the action y0.x of the base
    groupoid on the units, and asserts its four defining properties.
    """
    q = quotient_groupoid(ga)
    gpd, G = ga.groupoid, ga.group
    report = check_compatible(ga)
    unit_action = report.object_action
    base = q.groupoid

    fiber = [(y0, x) for y0 in range(base.n_arrows)
             for x in range(gpd.n_objects)
             if q.object_map[x] == base.src[y0]]
    s_map = {y: (q.arrow_map[y], gpd.src[y]) for y in range(gpd.n_arrows)}
    if len(set(s_map.values())) != gpd.n_arrows:
        raise SplitFailure("S is not injective")
    if set(s_map.values()) != set(fiber):
        raise SplitFailure("S is not onto the fiber product",
                           expected=len(fiber), got=gpd.n_arrows)
    s_inv = {v: y for y, v in s_map.items()}
    t_action = {pair: gpd.tgt[s_inv[pair]] for pair in fiber}

    for (y0, x) in fiber:
        if q.object_map[t_action[(y0, x)]] != base.tgt[y0]:
            raise SplitFailure("property (i) fails", witness=(y0, x))
    for (y0, y0p) in base.mul:
        prod = base.mul[(y0, y0p)]
        for x in range(gpd.n_objects):
            if q.object_map[x] != base.src[y0p]:
                continue
            if t_action[(y0, t_action[(y0p, x)])] != t_action[(prod, x)]:
                raise SplitFailure("property (ii) fails", witness=(y0, y0p, x))
    for x in range(gpd.n_objects):
        if t_action[(base.id[q.object_map[x]], x)] != x:
            raise SplitFailure("property (iii) fails", witness=x)
    for (y0, x) in fiber:
        for g in range(G.order):
            xg = unit_action.act[g][x]
            if t_action[(y0, xg)] != unit_action.act[g][t_action[(y0, x)]]:
                raise SplitFailure("property (iv) fails", witness=(y0, x, g))
    return SplitPresentation(ga, base, q.arrow_map, q.object_map, unit_action,
                             fiber, s_map, t_action)


class MultiplicativeFunction:
    """b : base groupoid -> G extracted from a trivialized split."""

    __slots__ = ("split", "group", "b", "trivialization")

    def __init__(self, split_, group, b, trivialization):
        self.split = split_
        self.group = group
        self.b = b
        self.trivialization = trivialization


def _default_trivialization(split_):
    """Trivialize the unit bundle by its least-index orbit section."""
    ua = split_.unit_action
    G = ua.group
    triv = [None] * ua.set_size
    for X in range(split_.base.n_objects):
        base_pt = min(x for x in range(ua.set_size)
                      if split_.object_map[x] == X)
        for g in range(G.order):
            triv[ua.act[g][base_pt]] = (X, g)
    return triv


def multiplicative_function(split_, trivialization=None):
    """Extract the multiplicative function b of a trivialized unit bundle.

    With units identified with M0 x G, the t-action must take the form
    (y0, (sigma(y0), g)) -> (tau(y0), b(y0) g); b is read off at the
    section points and the multiplicative law b(y0)b(y0') = b(y0 y0') is
    asserted on all composable pairs.
    """
    ua = split_.unit_action
    G = ua.group
    base = split_.base
    if trivialization is None:
        trivialization = _default_trivialization(split_)
    else:
        seen = set()
        for x, lab in enumerate(trivialization):
            if lab in seen:
                raise NotTrivialized("trivialization not injective", point=x)
            seen.add(lab)
            X, g = lab
            if split_.object_map[x] != X:
                raise NotTrivialized("trivialization breaks the orbit map",
                                     point=x)
        for x, (X, g) in enumerate(trivialization):
            for h in range(G.order):
                xh = ua.act[h][x]
                if trivialization[xh] != (X, G.table[g][h]):
                    raise NotTrivialized("trivialization not equivariant",
                                         point=x, element=h)
    inverse_triv = {lab: x for x, lab in enumerate(trivialization)}

    b = [None] * base.n_arrows
    for y0 in range(base.n_arrows):
        section_pt = inverse_triv[(base.src[y0], G.identity)]
        X, g = trivialization[split_.t_action[(y0, section_pt)]]
        if X != base.tgt[y0]:
            raise InternalInconsistency("t-action leaves the target fiber",
                                        arrow=y0)
        b[y0] = g
    # full form of the theorem: t(y0, (sigma(y0), g)) = (tau(y0), b(y0) g)
    for y0 in range(base.n_arrows):
        for g in range(G.order):
            x = inverse_triv[(base.src[y0], g)]
            expect = inverse_triv[(base.tgt[y0], G.table[b[y0]][g])]
            if split_.t_action[(y0, x)] != expect:
                raise NotMultiplicative("t-action is not a left translation",
                                        witness=(y0, g))
    for (y0, y0p), prod in base.mul.items():
        if G.table[b[y0]][b[y0p]] != b[prod]:
            raise NotMultiplicative("b(y0)b(y0') != b(y0 y0')",
                                    witness=(y0, y0p))
    return MultiplicativeFunction(split_, G, b, trivialization)


class BuiltGroupoid:
    """A G-groupoid over the trivial bundle M0 x G built from (base, b)."""

    __slots__ = ("action", "base", "group", "b")

    def __init__(self, action, base, group, b):
        self.action = action
        self.base = base
        self.group = group
        self.b = b

    def object_code(self, x0, g):
        return x0 * self.group.order + g

    def arrow_code(self, y0, g):
        return y0 * self.group.order + g


def build_from_morphism(base, group, b):
    """Build the G-groupoid base x^b G on objects M0 x G.

    s(y0, g) = (sigma(y0), g), t(y0, g) = (tau(y0), b(y0) g) and
    (y0, g1)(y0', g2) = (y0 y0', g2); the group acts on the second factor.
    """
    if len(b) != base.n_arrows:
        raise InvalidInput("b has wrong length")
    for (y0, y0p), prod in base.mul.items():
        if group.table[b[y0]][b[y0p]] != b[prod]:
            raise NotMultiplicative("b is not a groupoid morphism",
                                    witness=(y0, y0p))
    n = group.order
    n_objects = base.n_objects * n
    src, tgt, inv = [], [], []
    for y0 in range(base.n_arrows):
        for g in range(n):
            src.append(base.src[y0] * n + g)
            tgt.append(base.tgt[y0] * n + group.table[b[y0]][g])
            inv.append(base.inv[y0] * n + group.table[b[y0]][g])
    id_ = [base.id[x0] * n + g for x0 in range(base.n_objects)
           for g in range(n)]
    mul = {}
    for (y0, y0p), prod in base.mul.items():
        for g2 in range(n):
            g1 = group.table[b[y0p]][g2]
            mul[(y0 * n + g1, y0p * n + g2)] = prod * n + g2
    gpd = FiniteGroupoid(n_objects, src, tgt, id_, inv, mul)
    act = [[(a // n) * n + group.table[a % n][h] for a in range(gpd.n_arrows)]
           for h in range(n)]
    ga = GroupoidAction(gpd, group, act)
    return BuiltGroupoid(ga, base, group, b)


def reconstruct_and_check(mf):
    """Round trip: rebuild from (base, b) and check the canonical map
    y -> (pi(y), g-part of s(y)) is an equivariant groupoid isomorphism."""
    split_ = mf.split
    built = build_from_morphism(split_.base, mf.group, mf.b)
    gpd = split_.ga.groupoid
    G = mf.group
    n = G.order
    triv = mf.trivialization

    def psi(y):
        y0 = split_.arrow_map[y]
        _, g = triv[gpd.src[y]]
        return y0 * n + g

    images = [psi(y) for y in range(gpd.n_arrows)]
    if sorted(images) != list(range(built.action.groupoid.n_arrows)):
        raise InternalInconsistency("round trip is not a bijection")
    bg = built.action.groupoid
    for y in range(gpd.n_arrows):
        xs = triv[gpd.src[y]]
        xt = triv[gpd.tgt[y]]
        if bg.src[images[y]] != xs[0] * n + xs[1] or \
                bg.tgt[images[y]] != xt[0] * n + xt[1]:
            raise InternalInconsistency("round trip breaks endpoints", arrow=y)
        if images[gpd.inv[y]] != bg.inv[images[y]]:
            raise InternalInconsistency("round trip breaks inverses", arrow=y)
    for (a, b_), ab in gpd.mul.items():
        if bg.mul[(images[a], images[b_])] != images[ab]:
            raise InternalInconsistency("round trip breaks products",
                                        pair=(a, b_))
    for g in range(n):
        for y in range(gpd.n_arrows):
            if images[split_.ga.act[g][y]] != built.action.act[g][images[y]]:
                raise InternalInconsistency("round trip not equivariant",
                                            element=g, arrow=y)
    return built
