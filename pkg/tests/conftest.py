"""Shared corpus: double principal groups of order <= 48 used across tests
and the acceptance suite."""

import pytest

from ntpg.groups import Subgroup, subgroup_closure
from ntpg.named import (Q8_I, Q8_J, Q8_K, cyclic, dihedral, direct_product,
                        klein_four, product_factor_members, quaternion_group,
                        symmetric)
from ntpg.principal import verify_double


def _span(G, gens):
    return subgroup_closure(G, gens)


def build_dpg_corpus():
    """(name, gamma, g1, g2) across orders 4..48, vacant and non-vacant."""
    entries = []

    z6 = cyclic(6)
    entries.append(("Z6: <3>, <2>", z6, _span(z6, {3}), _span(z6, {2})))

    k4 = klein_four()
    entries.append(("Klein: factors", k4, Subgroup(k4, [0, 2]),
                    Subgroup(k4, [0, 1])))
    entries.append(("Klein: diagonal+factor", k4, Subgroup(k4, [0, 3]),
                    Subgroup(k4, [0, 2])))

    q8 = quaternion_group()
    entries.append(("Q8: <i>, <j>", q8, _span(q8, {Q8_I}), _span(q8, {Q8_J})))
    entries.append(("Q8: <i>, <k>", q8, _span(q8, {Q8_I}), _span(q8, {Q8_K})))

    d4 = dihedral(4)                      # r^a s^b coded a + 4b
    r = _span(d4, {1})                    # <r> of order 4
    k1 = _span(d4, {2, 4})                # <r^2, s>
    k2 = _span(d4, {2, 5})                # <r^2, rs>
    entries.append(("D4: <r>, <r2,s>", d4, r, k1))
    entries.append(("D4: <r>, <r2,rs>", d4, r, k2))

    s3z2 = direct_product(symmetric(3), cyclic(2))
    s3_part = Subgroup(s3z2, product_factor_members(symmetric(3), cyclic(2), 0))
    z2_part = Subgroup(s3z2, product_factor_members(symmetric(3), cyclic(2), 1))
    a3 = _span(s3z2, {m for m in s3_part.members
                      if s3z2.element_order(m) == 3})
    a3z2 = _span(s3z2, set(a3.members) | set(z2_part.members))
    entries.append(("S3xZ2: S3, Z2", s3z2, s3_part, z2_part))
    entries.append(("S3xZ2: S3, A3xZ2", s3z2, s3_part, a3z2))

    z4z2 = direct_product(cyclic(4), cyclic(2))
    entries.append(("Z4xZ2: factors", z4z2,
                    Subgroup(z4z2, [0, 2, 4, 6]), Subgroup(z4z2, [0, 1])))

    z12 = cyclic(12)
    entries.append(("Z12: <3>, <2>", z12, _span(z12, {3}), _span(z12, {2})))

    s3 = symmetric(3)
    a3_only = _span(s3, {a for a in range(6) if s3.element_order(a) == 3})
    entries.append(("S3: A3, S3", s3, a3_only, Subgroup(s3, range(6))))

    q8z3 = direct_product(q8, cyclic(3))
    q8_part = Subgroup(q8z3, product_factor_members(q8, cyclic(3), 0))
    pmz3 = _span(q8z3, {1 * 3 + 0, 0 * 3 + 1})   # {±1} x Z3
    entries.append(("Q8xZ3: Q8, {±1}xZ3", q8z3, q8_part, pmz3))

    out = []
    for name, gamma, g1, g2 in entries:
        res = verify_double(gamma, g1, g2)
        assert res.ok, "corpus entry %s is not a DPG" % name
        out.append((name, res.dpg))
    return out


@pytest.fixture(scope="session")
def dpg_corpus():
    return build_dpg_corpus()
