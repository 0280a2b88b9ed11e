"""JSON schemas for every object the CLI reads or writes.

Scalars serialize as {"num": "...", "den": "..."} strings so exact rationals
survive the trip; reports are dumped with sorted keys, making identical
inputs produce byte-identical reports (the timing field is excluded from
that contract).
"""

import json

from .cocycles import AutOps, Cocycle, CoverNerve, FiniteGroupOps
from .errors import InvalidInput
from .fields import field_from_json, field_to_json
from .graded import GradedSignature, PolyMap
from .groupoids import FiniteGroupoid, GroupoidAction
from .groups import (DEFAULT_CLOSURE_CAP, FiniteAction, Subgroup, make_group,
                     make_group_from_permutations)
from .poly import Poly


def _need(obj, key, where):
    if not isinstance(obj, dict) or key not in obj:
        raise InvalidInput("missing field '%s' in %s" % (key, where))
    return obj[key]


def load_group(obj, rng=None, cap=DEFAULT_CLOSURE_CAP):
    """{"order": n, "table": [[...]]} or {"permutations": [...], "degree": m}."""
    if not isinstance(obj, dict):
        raise InvalidInput("group must be a JSON object")
    if "table" in obj:
        table = obj["table"]
        if "order" in obj and obj["order"] != len(table):
            raise InvalidInput("declared order disagrees with the table")
        return make_group(table, rng=rng)
    if "permutations" in obj:
        perms = obj["permutations"]
        degree = obj.get("degree")
        if degree is not None:
            for p in perms:
                if len(p) != degree:
                    raise InvalidInput("permutation of wrong degree")
        G, _ = make_group_from_permutations(perms, cap=cap)
        return G
    raise InvalidInput("group needs 'table' or 'permutations'")


def dump_group(G):
    return {"order": G.order, "table": [list(r) for r in G.table]}


def load_subgroup(G, obj):
    """{"members": [...]} or a bare list of members."""
    if isinstance(obj, dict):
        obj = _need(obj, "members", "subgroup")
    return Subgroup(G, obj)


def load_action(obj, group=None, rng=None):
    """{"group": <group>, "points": m, "act": [[...]], "side": "right"}."""
    if group is None:
        group = load_group(_need(obj, "group", "action"), rng=rng)
    return FiniteAction(group, _need(obj, "points", "action"),
                        _need(obj, "act", "action"),
                        side=obj.get("side", "right"))


def load_groupoid(obj):
    mul = {}
    for entry in _need(obj, "mul", "groupoid"):
        g, h, gh = entry
        mul[(g, h)] = gh
    gpd = FiniteGroupoid(_need(obj, "objects", "groupoid"),
                         _need(obj, "src", "groupoid"),
                         _need(obj, "tgt", "groupoid"),
                         _need(obj, "id", "groupoid"),
                         _need(obj, "inv", "groupoid"), mul)
    if "arrows" in obj and obj["arrows"] != gpd.n_arrows:
        raise InvalidInput("declared arrow count disagrees with src array")
    return gpd


def dump_groupoid(gpd):
    return {"objects": gpd.n_objects, "arrows": gpd.n_arrows,
            "src": list(gpd.src), "tgt": list(gpd.tgt),
            "id": list(gpd.id), "inv": list(gpd.inv),
            "mul": sorted([g, h, gh] for (g, h), gh in gpd.mul.items())}


def load_groupoid_action(obj, rng=None):
    gpd = load_groupoid(_need(obj, "groupoid", "groupoid action"))
    group = load_group(_need(obj, "group", "groupoid action"), rng=rng)
    return GroupoidAction(gpd, group, _need(obj, "act", "groupoid action"))


def load_signature(obj):
    mode = _need(obj, "mode", "signature")
    if mode == "simple":
        return GradedSignature.simple(obj.get("dims", []),
                                      base=obj.get("base", 0))
    if mode == "multi":
        blocks = {}
        for b in _need(obj, "blocks", "signature"):
            blocks[tuple(_need(b, "sigma", "block"))] = _need(b, "dim", "block")
        return GradedSignature.multi(_need(obj, "n", "signature"), blocks,
                                     base=obj.get("base", 0))
    raise InvalidInput("unknown signature mode", mode=mode)


def dump_signature(sig):
    if sig.mode == "simple":
        base = 0
        dims = {}
        for w, d in sig.blocks:
            if w == 0:
                base = d
            else:
                dims[w] = d
        top = max(dims, default=0)
        return {"mode": "simple", "base": base,
                "dims": [dims.get(w, 0) for w in range(1, top + 1)]}
    return {"mode": "multi", "n": sig.n,
            "base": dict(sig.blocks).get(sig.zero_weight(), 0),
            "blocks": [{"sigma": list(s), "dim": d} for s, d in sig.blocks
                       if s != sig.zero_weight()]}


def load_terms(field, entries, nvars):
    out = []
    for e in entries:
        exps = _need(e, "exponents", "term")
        if len(exps) != nvars:
            raise InvalidInput("exponent tuple has wrong length",
                               exponents=list(exps))
        c = field.parse(_need(e, "num", "term"), e.get("den", "1"))
        out.append((e.get("target", 0), tuple(exps), c))
    return out


def dump_terms(field, pm):
    out = []
    for c, f in enumerate(pm.components):
        for exps in sorted(f.terms, key=lambda e: (sum(e), e)):
            num, den = field.unparse(f.terms[exps])
            out.append({"target": c, "exponents": list(exps),
                        "num": num, "den": den})
    return out


def load_polymap(obj):
    field = field_from_json(obj.get("field", "Q"))
    sig_in = load_signature(_need(obj, "sig_in", "polymap"))
    sig_out = load_signature(_need(obj, "sig_out", "polymap"))
    terms = load_terms(field, _need(obj, "terms", "polymap"), sig_in.ncoords)
    return PolyMap.from_terms(sig_in, sig_out, field, terms), field


def dump_polymap(pm):
    return {"field": field_to_json(pm.field),
            "sig_in": dump_signature(pm.sig_in),
            "sig_out": dump_signature(pm.sig_out),
            "terms": dump_terms(pm.field, pm)}


def load_polynomial(obj):
    """{"sig": ..., "field": ..., "terms": [{exponents, num, den}...]}."""
    field = field_from_json(obj.get("field", "Q"))
    sig = load_signature(_need(obj, "sig", "polynomial"))
    terms = {}
    for e in _need(obj, "terms", "polynomial"):
        exps = tuple(_need(e, "exponents", "term"))
        c = field.parse(_need(e, "num", "term"), e.get("den", "1"))
        terms[exps] = field.of(terms.get(exps, field.zero)) + c
    return Poly(field, sig.ncoords, terms), sig, field


def load_nerve(obj):
    return CoverNerve(_need(obj, "charts", "cocycle"),
                      obj.get("overlaps", []),
                      obj.get("triples", []))


def load_group_cocycle(obj, group=None, rng=None):
    """A cocycle valued in a finite group given inline."""
    nerve = load_nerve(obj)
    if group is None:
        group = load_group(_need(obj, "group", "cocycle"), rng=rng)
    values = {}
    for v in _need(obj, "values", "cocycle"):
        i, j = _need(v, "pair", "cocycle value")
        values[(i, j)] = _need(v, "element", "cocycle value")
    return Cocycle(nerve, FiniteGroupOps(group), values), group


def load_aut_cocycle(obj, handle):
    """A cocycle valued in graded automorphisms of the handle's model."""
    from .autgroups import make_automorphism
    nerve = load_nerve(obj)
    sig, field = handle.sig, handle.field
    values = {}
    for v in _need(obj, "values", "cocycle"):
        i, j = _need(v, "pair", "cocycle value")
        terms = load_terms(field, _need(v, "terms", "cocycle value"),
                           sig.ncoords)
        values[(i, j)] = make_automorphism(sig, field, terms)
    return Cocycle(nerve, AutOps(sig, field, handle), values)


def read_json(path):
    try:
        with open(path) as fh:
            return json.load(fh)
    except FileNotFoundError:
        raise InvalidInput("input file not found", path=path)
    except json.JSONDecodeError as e:
        raise InvalidInput("invalid JSON input", path=path, error=str(e))


def write_report(report, path=None):
    text = json.dumps(report, sort_keys=True, indent=2, default=str)
    if path in (None, "-"):
        print(text)
    else:
        with open(path, "w") as fh:
            fh.write(text + "\n")
