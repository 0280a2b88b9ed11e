"""Exact finite-group arithmetic on index-coded multiplication tables.

Elements of a group of order n are the indices 0..n-1.  The identity is
discovered from the table, never assumed to sit at index 0.  All validation
is exhaustive: a ``FiniteGroup`` that exists has had its Latin-square,
identity, inverse and associativity axioms checked (associativity over all
|G|^3 triples for |G| <= 256, randomized sampling above).
"""

import random

import numpy as np

from .errors import (ClosureCapExceeded, InvalidInput, NoIdentity, NoInverse,
                     NonAssociative, NotAnAction, NotLatinSquare, NotNormal,
                     ParentMismatch)

EXHAUSTIVE_ASSOC_LIMIT = 256
DEFAULT_CLOSURE_CAP = 10_000


class FiniteGroup:
    """A finite group given by its full multiplication table.

    Immutable after construction; build through :func:`make_group` (or the
    other constructors in this module) so the axioms are actually verified.
    """

    __slots__ = ("order", "table", "identity", "inverse", "_np_table")

    def __init__(self, table, identity, inverse):
        self.order = len(table)
        self.table = tuple(tuple(int(x) for x in row) for row in table)
        self.identity = int(identity)
        self.inverse = tuple(int(x) for x in inverse)
        self._np_table = np.array(self.table, dtype=np.int64)

    def mul(self, a, b):
        return self.table[a][b]

    def inv(self, a):
        return self.inverse[a]

    @property
    def e(self):
        return self.identity

    def elements(self):
        return range(self.order)

    def conjugate(self, g, h):
        """g h g^-1."""
        return self.table[self.table[g][h]][self.inverse[g]]

    def element_order(self, a):
        k, x = 1, a
        while x != self.identity:
            x = self.table[x][a]
            k += 1
        return k

    def is_abelian(self):
        return bool(np.array_equal(self._np_table, self._np_table.T))

    def center(self):
        members = [a for a in range(self.order)
                   if all(self.table[a][b] == self.table[b][a]
                          for b in range(self.order))]
        return Subgroup(self, members)

    def fingerprint(self):
        """Cheap report data: order + abelianness (no isomorphism testing)."""
        return {"order": self.order, "abelian": self.is_abelian()}

    def __repr__(self):
        return "FiniteGroup(order=%d)" % self.order


def _check_latin(table, n):
    full = frozenset(range(n))
    for i, row in enumerate(table):
        if set(row) != full:
            raise NotLatinSquare("row %d is not a permutation" % i, row=i)
    for j in range(n):
        if set(table[i][j] for i in range(n)) != full:
            raise NotLatinSquare("column %d is not a permutation" % j, column=j)


def _find_identity(table, n):
    for e in range(n):
        if all(table[e][a] == a and table[a][e] == a for a in range(n)):
            return e
    raise NoIdentity("no two-sided identity element")


def _find_inverses(table, n, e):
    inverse = [None] * n
    for a in range(n):
        for b in range(n):
            if table[a][b] == e and table[b][a] == e:
                inverse[a] = b
                break
        if inverse[a] is None:
            raise NoInverse("element %d has no two-sided inverse" % a, element=a)
    return inverse


def _check_associative(table, n, rng=None, samples=200_000):
    t = np.array(table, dtype=np.int64)
    if n <= EXHAUSTIVE_ASSOC_LIMIT:
        for a in range(n):
            left = t[t[a]]          # (b,c) -> (ab)c
            right = t[a][t]         # (b,c) -> a(bc)
            if not np.array_equal(left, right):
                bad = np.argwhere(left != right)[0]
                b, c = int(bad[0]), int(bad[1])
                raise NonAssociative("(a*b)*c != a*(b*c)",
                                     triple=(a, b, c))
        return
    rng = rng or random.Random(0)
    for _ in range(samples):
        a, b, c = (rng.randrange(n) for _ in range(3))
        if table[table[a][b]][c] != table[a][table[b][c]]:
            raise NonAssociative("(a*b)*c != a*(b*c)", triple=(a, b, c))


def make_group(table, rng=None):
    """Validate a multiplication table and return the FiniteGroup.

    Raises NotLatinSquare / NoIdentity / NoInverse / NonAssociative, each
    naming the first violating element or triple in index order.
    """
    n = len(table)
    if n == 0:
        raise InvalidInput("empty multiplication table")
    for i, row in enumerate(table):
        if len(row) != n:
            raise InvalidInput("table is not square", row=i)
        for x in row:
            if not isinstance(x, (int, np.integer)) or not 0 <= x < n:
                raise InvalidInput("entry out of range", row=i, value=x)
    table = [[int(x) for x in row] for row in table]
    _check_latin(table, n)
    e = _find_identity(table, n)
    inverse = _find_inverses(table, n, e)
    _check_associative(table, n, rng=rng)
    return FiniteGroup(table, e, inverse)


def _compose_perm(p, q):
    # (p then q) as images: x -> q[p[x]]
    return tuple(q[i] for i in p)


def make_group_from_permutations(perms, cap=DEFAULT_CLOSURE_CAP):
    """Close a set of permutations (images lists) into a group.

    Returns (FiniteGroup, elements) where elements[i] is the permutation
    tuple of group element i; elements are sorted lexicographically, which
    puts the identity at index 0.  Multiplication is composition in the
    left-to-right order: (p*q)(x) = q(p(x)).
    """
    if not perms:
        raise InvalidInput("need at least one permutation")
    degree = len(perms[0])
    gens = []
    for p in perms:
        t = tuple(int(x) for x in p)
        if sorted(t) != list(range(degree)):
            raise InvalidInput("not a permutation of 0..degree-1", perm=list(p))
        gens.append(t)
    ident = tuple(range(degree))
    els = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for a in frontier:
            for g in gens:
                c = _compose_perm(a, g)
                if c not in els:
                    els.add(c)
                    nxt.append(c)
                    if len(els) > cap:
                        raise ClosureCapExceeded("permutation closure exceeds cap",
                                                 cap=cap)
        frontier = nxt
    elements = sorted(els)
    index = {p: i for i, p in enumerate(elements)}
    table = [[index[_compose_perm(a, b)] for b in elements] for a in elements]
    return make_group(table), elements


class Subgroup:
    """A subgroup as a sorted member set tied to its parent group."""

    __slots__ = ("parent", "members", "_set")

    def __init__(self, parent, members, check=True):
        self.parent = parent
        self.members = tuple(sorted(set(int(m) for m in members)))
        self._set = frozenset(self.members)
        if check:
            self._validate()

    def _validate(self):
        G = self.parent
        for m in self.members:
            if not 0 <= m < G.order:
                raise InvalidInput("subgroup member out of range", member=m)
        if G.identity not in self._set:
            raise InvalidInput("subgroup misses the identity")
        for a in self.members:
            if G.inverse[a] not in self._set:
                raise InvalidInput("subgroup not closed under inverse", element=a)
            for b in self.members:
                if G.table[a][b] not in self._set:
                    raise InvalidInput("subgroup not closed under product",
                                       pair=(a, b))

    def __contains__(self, x):
        return x in self._set

    def __len__(self):
        return len(self.members)

    def __eq__(self, other):
        return (isinstance(other, Subgroup) and other.parent is self.parent
                and other._set == self._set)

    def __hash__(self):
        return hash((id(self.parent), self._set))

    def __repr__(self):
        return "Subgroup(order=%d of %d)" % (len(self.members), self.parent.order)


def subgroup_closure(G, generators):
    """Smallest subgroup of G containing the generators."""
    for g in generators:
        if not 0 <= int(g) < G.order:
            raise InvalidInput("generator out of range", generator=g)
    seen = {G.identity}
    frontier = [G.identity]
    gens = sorted(set(int(g) for g in generators) | {G.identity})
    gens = gens + [G.inverse[g] for g in gens]
    while frontier:
        nxt = []
        for a in frontier:
            for g in gens:
                c = G.table[a][g]
                if c not in seen:
                    seen.add(c)
                    nxt.append(c)
        frontier = nxt
    return Subgroup(G, seen, check=False)


def _require_same_parent(*subs):
    parent = subs[0].parent
    for s in subs[1:]:
        if s.parent is not parent:
            raise ParentMismatch("subgroups of different parent groups")
    return parent


def is_normal(G, H):
    """gHg^-1 == H as a set, for every g."""
    if H.parent is not G:
        raise ParentMismatch("subgroup does not belong to this group")
    for g in range(G.order):
        for h in H.members:
            if G.conjugate(g, h) not in H:
                return False
    return True


def normality_witness(G, H):
    """First (g, h) with g h g^-1 outside H, or None."""
    for g in range(G.order):
        for h in H.members:
            if G.conjugate(g, h) not in H:
                return (g, h)
    return None


def intersect(H1, H2):
    parent = _require_same_parent(H1, H2)
    return Subgroup(parent, H1._set & H2._set, check=False)


def generates(G, subgroups):
    """Does the union of the given subgroups generate all of G?"""
    gens = set()
    for H in subgroups:
        if H.parent is not G:
            raise ParentMismatch("subgroup does not belong to this group")
        gens |= H._set
    return len(subgroup_closure(G, gens)) == G.order


class GroupHom:
    """A homomorphism as an image array, validated on construction."""

    __slots__ = ("source", "target", "map")

    def __init__(self, source, target, images, check=True):
        self.source = source
        self.target = target
        self.map = tuple(int(x) for x in images)
        if check:
            self._validate()

    def _validate(self):
        if len(self.map) != self.source.order:
            raise InvalidInput("image array has wrong length")
        for x in self.map:
            if not 0 <= x < self.target.order:
                raise InvalidInput("image out of range", value=x)
        if self.map[self.source.identity] != self.target.identity:
            raise InvalidInput("identity not mapped to identity")
        for a in range(self.source.order):
            for b in range(self.source.order):
                if self.map[self.source.table[a][b]] != \
                        self.target.table[self.map[a]][self.map[b]]:
                    raise InvalidInput("map is not a homomorphism", pair=(a, b))

    def __call__(self, a):
        return self.map[a]

    def image(self):
        return subgroup_closure(self.target, set(self.map))

    def kernel(self):
        e = self.target.identity
        return Subgroup(self.source,
                        [a for a in range(self.source.order) if self.map[a] == e],
                        check=False)

    def is_surjective(self):
        return len(set(self.map)) == self.target.order


def quotient(G, N):
    """Quotient by a normal subgroup.

    Cosets are labeled by their least element index; returns the quotient
    group together with the projection homomorphism.
    """
    if N.parent is not G:
        raise ParentMismatch("subgroup does not belong to this group")
    w = normality_witness(G, N)
    if w is not None:
        raise NotNormal("subgroup is not normal", witness=w)
    coset_of = [None] * G.order
    reps = []
    for g in range(G.order):
        if coset_of[g] is None:
            members = sorted(G.table[g][n] for n in N.members)
            rep_index = len(reps)
            reps.append(members[0])
            for m in members:
                coset_of[m] = rep_index
    k = len(reps)
    table = [[coset_of[G.table[reps[i]][reps[j]]] for j in range(k)]
             for i in range(k)]
    Q = make_group(table)
    proj = GroupHom(G, Q, coset_of)
    return Q, proj


def subgroup_as_group(H):
    """Reify a subgroup as a standalone FiniteGroup.

    Returns (group, to_parent, from_parent): to_parent[i] is the parent
    element index of the subgroup element i (in member order).
    """
    G = H.parent
    to_parent = list(H.members)
    from_parent = {m: i for i, m in enumerate(to_parent)}
    table = [[from_parent[G.table[a][b]] for b in to_parent] for a in to_parent]
    return make_group(table), to_parent, from_parent


# -- finite actions ----------------------------------------------------------

class FiniteAction:
    """An action of a group on {0..set_size-1}, stored right-handed.

    ``act[g][x]`` is x.g.  A left action is accepted with side="left" and
    converted internally through g -> g^-1, so composition always satisfies
    x.(ab) = (x.a).b.
    """

    __slots__ = ("group", "set_size", "act", "side")

    def __init__(self, group, set_size, act, side="right", check=True):
        if side not in ("right", "left"):
            raise InvalidInput("side must be 'right' or 'left'", side=side)
        self.group = group
        self.set_size = int(set_size)
        rows = [tuple(int(x) for x in row) for row in act]
        if side == "left":
            rows = [rows[group.inverse[g]] for g in range(group.order)]
        self.act = tuple(rows)
        self.side = side
        if check:
            self._validate()

    def _validate(self):
        G = self.group
        if len(self.act) != G.order:
            raise NotAnAction("action table has %d rows, group has order %d"
                              % (len(self.act), G.order))
        for g, row in enumerate(self.act):
            if len(row) != self.set_size:
                raise NotAnAction("row %d has wrong length" % g, element=g)
            if sorted(row) != list(range(self.set_size)):
                raise NotAnAction("element %d does not act bijectively" % g,
                                  element=g)
        ident = tuple(range(self.set_size))
        if self.act[G.identity] != ident:
            raise NotAnAction("identity does not act as the identity")
        for a in range(G.order):
            for b in range(G.order):
                ab = G.table[a][b]
                for x in range(self.set_size):
                    if self.act[ab][x] != self.act[b][self.act[a][x]]:
                        raise NotAnAction("composition law fails",
                                          pair=(a, b), point=x)

    def apply(self, x, g):
        """x.g in the internal (right) convention."""
        return self.act[g][x]

    def permutation(self, g):
        return self.act[g]


class ActionReport:
    __slots__ = ("is_free", "kernel", "orbits", "orbit_of")

    def __init__(self, is_free, kernel, orbits, orbit_of):
        self.is_free = is_free
        self.kernel = kernel
        self.orbits = orbits
        self.orbit_of = orbit_of


class _UnionFind:
    def __init__(self, n):
        self.parent = list(range(n))

    def find(self, x):
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[max(ra, rb)] = min(ra, rb)


def action_check(a):
    """Kernel, freeness and orbits of a validated action.

    Free means no g other than the identity fixes any point.  Orbits come
    out sorted with deterministic indices (ordered by least member).
    """
    G = a.group
    ident = tuple(range(a.set_size))
    kernel = Subgroup(G, [g for g in range(G.order) if a.act[g] == ident],
                      check=False)
    is_free = True
    for g in range(G.order):
        if g == G.identity:
            continue
        if any(a.act[g][x] == x for x in range(a.set_size)):
            is_free = False
            break
    uf = _UnionFind(a.set_size)
    for g in range(G.order):
        for x in range(a.set_size):
            uf.union(x, a.act[g][x])
    roots = {}
    orbit_of = [None] * a.set_size
    orbits = []
    for x in range(a.set_size):
        r = uf.find(x)
        if r not in roots:
            roots[r] = len(orbits)
            orbits.append([])
        orbit_of[x] = roots[r]
        orbits[roots[r]].append(x)
    return ActionReport(is_free, kernel, [tuple(o) for o in orbits],
                        tuple(orbit_of))


def fixed_point(a, g):
    """A point fixed by g, or None."""
    for x in range(a.set_size):
        if a.act[g][x] == x:
            return x
    return None


def right_translation_action(G, H):
    """H <= G acting on the elements of G by right multiplication."""
    Hgrp, to_parent, _ = subgroup_as_group(H)
    act = [[G.table[x][to_parent[h]] for x in range(G.order)]
           for h in range(Hgrp.order)]
    return FiniteAction(Hgrp, G.order, act)


def regular_action(G):
    """G acting on itself by right translation."""
    act = [[G.table[x][g] for x in range(G.order)] for g in range(G.order)]
    return FiniteAction(G, G.order, act)


def trivial_action(G, set_size):
    row = list(range(set_size))
    return FiniteAction(G, set_size, [row for _ in range(G.order)])


def restrict_action(a, H):
    """Restrict an action of G to a subgroup H (reified as its own group)."""
    if H.parent is not a.group:
        raise ParentMismatch("subgroup does not belong to the acting group")
    Hgrp, to_parent, _ = subgroup_as_group(H)
    act = [a.act[to_parent[h]] for h in range(Hgrp.order)]
    return FiniteAction(Hgrp, a.set_size, act)
