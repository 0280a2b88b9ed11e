"""Command-line front end.

Exit codes: 0 = verified pass, 1 = verified fail (report carries at least
one witness), 2 = input or usage error.  A theory-assertion failure (a
consequence of the theory that must always hold) also exits 2, with the
report marking it as a library bug rather than an input verdict.

The NTPG_WORKERS environment variable is accepted for compatibility with
parallel runners; it never changes results (the current implementation is
sequential).
"""

import argparse
import os
import random
import sys
import time

from . import autgroups, cocycles, graded, groupoids, principal
from .errors import (ActionNotFree, AlgebraError, InternalInconsistency,
                     InvalidInput, NoIdentity, NoInverse, NonAssociative,
                     NotAnAction, NotCompatible, NotFree, NotInvertible,
                     NotInvertibleChart, NotLatinSquare, NotMultiplicative,
                     NotTrivialized, SplitFailure)
from .fields import field_from_json
from .graded import conjugate_structure, dilation
from .groups import subgroup_closure
from .jsonio import (dump_group, dump_groupoid, dump_polymap, dump_terms,
                     load_action, load_aut_cocycle, load_group,
                     load_group_cocycle, load_groupoid_action, load_polymap,
                     load_polynomial, load_signature, load_subgroup,
                     read_json, write_report)

# exceptions that mean "the checked property verifiably fails", not bad input
_VERDICT_ERRORS = (NotLatinSquare, NonAssociative, NoIdentity, NoInverse,
                   NotAnAction, ActionNotFree, NotCompatible, NotFree,
                   SplitFailure, NotTrivialized, NotMultiplicative,
                   NotInvertible, NotInvertibleChart)


class _Ctx:
    def __init__(self, args):
        self.args = args
        self.rng = random.Random(args.seed)
        self.max_order = args.max_order
        self.max_candidates = args.max_candidates


def _parse_field(text):
    if text == "Q":
        return field_from_json("Q")
    if text.startswith("Fp:"):
        return field_from_json({"Fp": int(text.split(":", 1)[1])})
    raise InvalidInput("field must be 'Q' or 'Fp:<p>'", field=text)


def _parse_subgroup_spec(G, spec):
    """'2,3;4' -> subgroups generated by {2,3} and by {4}."""
    subs = []
    for part in spec.split(";"):
        gens = [int(x) for x in part.split(",") if x.strip() != ""]
        subs.append(subgroup_closure(G, gens))
    return subs


def _input_subgroups(ctx, data, G):
    if ctx.args.subgroups:
        return _parse_subgroup_spec(G, ctx.args.subgroups)
    if "subgroups" not in data:
        raise InvalidInput("no subgroups given (file field or --subgroups)")
    return [load_subgroup(G, s) for s in data["subgroups"]]


# -- command handlers: return (verdict, details, witnesses) -------------------

def cmd_group_validate(ctx, data):
    try:
        G = load_group(data, rng=ctx.rng, cap=ctx.max_order)
    except _VERDICT_ERRORS as e:
        return "fail", {}, [e.report()]
    return "pass", {"fingerprint": G.fingerprint()}, []


def cmd_dpg_verify(ctx, data):
    G = load_group(data["gamma"] if "gamma" in data else data, rng=ctx.rng)
    g1, g2 = _input_subgroups(ctx, data, G)[:2]
    res = principal.verify_double(G, g1, g2)
    if not res.ok:
        return "fail", {"gamma_order": G.order}, res.failures
    dpg = res.dpg
    vac = principal.vacancy(dpg)
    theory = {"exact_sequence": principal.exact_sequence_check(dpg),
              "vacant_iff_product_bijective": vac.vacant == vac.product_bijective}
    details = dpg.report()
    details.update({"vacant": vac.vacant, "product_fiber_size": vac.fiber_size,
                    "theory_checks": theory})
    return "pass", details, []


def cmd_dpg_dressing(ctx, data):
    G = load_group(data["gamma"] if "gamma" in data else data, rng=ctx.rng)
    g1, g2 = _input_subgroups(ctx, data, G)[:2]
    res = principal.verify_double(G, g1, g2)
    if not res.ok:
        return "fail", {}, res.failures
    dr = principal.dressing(res.dpg)
    details = {"g_on_gprime": sorted([g, gp, v] for (g, gp), v in dr.g_on.items()),
               "gprime_on_g": sorted([gp, g, v] for (gp, g), v in dr.gp_on.items()),
               "theory_checks": {"dressing_laws": True}}
    return "pass", details, []


def cmd_dpg_pipeline(ctx, data):
    rho = load_action(data["rho"], rng=ctx.rng)
    rho_prime = load_action(data["rho_prime"], rng=ctx.rng)
    points = data.get("points", rho.set_size)
    try:
        res = principal.gamma_from_actions(points, rho, rho_prime)
    except (NotCompatible, NotFree) as e:
        return "fail", {}, [e.report()]
    details = res.report()
    details["gamma"] = dump_group(res.gamma)
    return "pass", details, []


def cmd_ntuple_verify(ctx, data):
    G = load_group(data["gamma"] if "gamma" in data else data, rng=ctx.rng)
    subs = _input_subgroups(ctx, data, G)
    w = principal.verify_ntuple(G, subs)
    details = {"gamma_order": G.order, "n": len(subs),
               "subgroup_orders": [len(s) for s in subs],
               "trace": w.trace}
    if not w.verdict:
        return "fail", details, _collect_trace_failures(w.trace)
    return "pass", details, []


def _collect_trace_failures(node, acc=None):
    acc = [] if acc is None else acc
    for f in node["failures"]:
        acc.append({"path": node["path"], **f})
    for child in node["children"]:
        _collect_trace_failures(child, acc)
    return acc


def cmd_groupoid_gauge(ctx, data):
    action = load_action(data["action"], rng=ctx.rng)
    points = data.get("points", action.set_size)
    try:
        gpd, labels = groupoids.gauge_groupoid(points, action)
    except ActionNotFree as e:
        return "fail", {}, [e.report()]
    details = {"groupoid": dump_groupoid(gpd),
               "arrow_reps": [list(pq) for pq in labels.arrow_rep]}
    return "pass", details, []


def cmd_groupoid_quotient(ctx, data):
    ga = load_groupoid_action(data, rng=ctx.rng)
    try:
        q = groupoids.quotient_groupoid(ga)
    except (NotCompatible, NotFree) as e:
        return "fail", {}, [e.report()]
    details = {"groupoid": dump_groupoid(q.groupoid),
               "arrow_map": list(q.arrow_map),
               "object_map": list(q.object_map)}
    return "pass", details, []


def cmd_groupoid_split(ctx, data):
    ga = load_groupoid_action(data, rng=ctx.rng)
    try:
        sp = groupoids.split(ga)
    except (NotCompatible, NotFree, SplitFailure) as e:
        return "fail", {}, [e.report()]
    details = {"base": dump_groupoid(sp.base),
               "fiber_product_size": len(sp.fiber),
               "properties": ["bijection", "i", "ii", "iii", "iv"]}
    return "pass", details, []


def cmd_groupoid_multfunction(ctx, data):
    ga = load_groupoid_action(data, rng=ctx.rng)
    try:
        sp = groupoids.split(ga)
        mf = groupoids.multiplicative_function(sp)
        groupoids.reconstruct_and_check(mf)
    except (NotCompatible, NotFree, SplitFailure, NotTrivialized,
            NotMultiplicative) as e:
        return "fail", {}, [e.report()]
    details = {"b": list(mf.b),
               "base": dump_groupoid(sp.base),
               "theory_checks": {"multiplicative_law": True,
                                 "reconstruction_isomorphic": True}}
    return "pass", details, []


def cmd_graded_check_morphism(ctx, data):
    pm, _ = load_polymap(data)
    if graded.is_graded_morphism(pm):
        return "pass", {"weight_preserving": True}, []
    c, exps = graded.graded_violation(pm)
    return "fail", {"weight_preserving": False}, \
        [{"target": c, "exponents": list(exps)}]


def cmd_graded_check_compat(ctx, data):
    field = field_from_json(data.get("field", "Q"))
    structures = []
    for s in data["structures"]:
        sig = load_signature(s["sig"])
        h = dilation(sig, field, axis=s.get("axis", 0))
        if s.get("kind", "diagonal") == "conjugated":
            phi, _ = load_polymap({"field": data.get("field", "Q"),
                                   "sig_in": s["sig"], "sig_out": s["sig"],
                                   "terms": s["phi"]})
            h = conjugate_structure(h, phi)
        structures.append(h)
    rep = graded.check_compatible_structures(structures)
    details = {"commute": rep.commute,
               "bracket_commute": rep.bracket_commute,
               "agreement_enforced": rep.agreement_enforced}
    if not rep.commute:
        return "fail", details, [{"reason": "structures do not commute"}]
    return "pass", details, []


def cmd_graded_weights(ctx, data):
    f, sig, field = load_polynomial(data)
    comps = graded.weight_components(f, sig)
    out = {}
    for w, p in comps.items():
        out[str(w)] = [{"exponents": list(e),
                        "num": field.unparse(c)[0],
                        "den": field.unparse(c)[1]}
                       for e, c in sorted(p.terms.items())]
    return "pass", {"components": out,
                    "homogeneous": len(comps) <= 1}, []


def cmd_aut_enumerate(ctx, args):
    sig = load_signature(read_json(args.sig))
    field = _parse_field(args.field)
    handle = autgroups.enumerate_aut(sig, field, cap=ctx.max_candidates)
    details = {"order": handle.group.order,
               "gi_orders": [len(handle.gi_subgroup(i))
                             for i in range(1, sig.n + 1)],
               "statomorphisms": len(handle.statomorphism_subgroup())}
    return "pass", details, []


def cmd_aut_verify_p54(ctx, args):
    sig = load_signature(read_json(args.sig))
    field = _parse_field(args.field)
    rep = autgroups.verify_p54(sig, field, cap=ctx.max_candidates)
    details = {"orders": rep.orders, "trace": rep.witness.trace}
    if not rep.witness.verdict:
        return "fail", details, _collect_trace_failures(rep.witness.trace)
    return "pass", details, []


def cmd_cocycle_check(ctx, data):
    c, _ = load_group_cocycle(data, rng=ctx.rng)
    ok, witness = cocycles.check_cocycle(c)
    if not ok:
        return "fail", {}, [witness]
    return "pass", {"charts": c.nerve.n,
                    "pairs": sorted(sorted(p) for p in c.nerve.pairs)}, []


def cmd_cocycle_associate(ctx, data):
    model = data["model"]
    sig = load_signature(model["sig"])
    field = field_from_json(model.get("field", {"Fp": 3}))
    handle = autgroups.enumerate_aut(sig, field, cap=ctx.max_candidates)
    c, _ = load_group_cocycle(data["cocycle"], group=handle.group)
    fibered = cocycles.standard_fibered_space(handle)
    assoc = cocycles.associated_cocycle(c, fibered)
    pairs = c.nerve.ordered_pairs()
    details = {
        "fiber_transitions": [
            {"pair": list(p),
             "terms": dump_terms(field, assoc.fiber_cocycle.value(*p).map)}
            for p in pairs],
        "rho_transitions": [
            {"pair": list(p), "perm": list(assoc.rho_cocycle.value(*p))}
            for p in pairs],
        "rho_prime_transitions": [
            {"pair": list(p), "perm": list(assoc.rho_prime_cocycle.value(*p))}
            for p in pairs],
    }
    return "pass", details, []


def cmd_cocycle_frame(ctx, data):
    model = data["model"]
    sig = load_signature(model["sig"])
    field = field_from_json(model.get("field", {"Fp": 3}))
    handle = autgroups.enumerate_aut(sig, field, cap=ctx.max_candidates)
    dvb = load_aut_cocycle(data["cocycle"], handle)
    principal_c = cocycles.frame_cocycle(dvb, handle)
    fibered = cocycles.standard_fibered_space(handle)
    back = cocycles.associated_cocycle(principal_c, fibered)
    round_trip = all(back.fiber_cocycle.value(i, j) == dvb.value(i, j)
                     for (i, j) in dvb.nerve.ordered_pairs())
    if not round_trip:
        raise InternalInconsistency("frame/associated round trip failed")
    details = {"values": [{"pair": list(p), "element": principal_c.value(*p)}
                          for p in dvb.nerve.ordered_pairs()],
               "group_order": handle.group.order,
               "theory_checks": {"round_trip_exact": True}}
    return "pass", details, []


def cmd_cocycle_cohomologous(ctx, data):
    G = load_group(data["group"], rng=ctx.rng)
    base = {"charts": data["charts"], "overlaps": data.get("overlaps", []),
            "triples": data.get("triples", [])}
    c1, _ = load_group_cocycle({**base, "values": data["c1"]}, group=G)
    c2, _ = load_group_cocycle({**base, "values": data["c2"]}, group=G)
    res = cocycles.are_cohomologous(c1, c2, cap=ctx.max_candidates)
    details = {"searched": res.searched}
    if res.cohomologous:
        details["lambda"] = res.witness
        return "pass", details, []
    return "fail", details, [{"reason": "exhausted the coboundary family grid",
                              "searched": res.searched}]


def cmd_cocycle_t2(ctx, data):
    chart, _ = load_polymap(data["chart"] if "chart" in data else data)
    try:
        out = cocycles.t2_transition(chart)
    except NotInvertibleChart as e:
        return "fail", {}, [e.report()]
    details = {"transition": dump_polymap(out),
               "graded": graded.is_graded_morphism(out),
               "quadratic_velocity_term": cocycles.t2_has_quadratic_term(out)}
    return "pass", details, []


# -- dispatcher ----------------------------------------------------------------

def _add_io_args(p, needs_file=True):
    if needs_file:
        p.add_argument("file", help="JSON input file")
    p.add_argument("--out", default=None, help="write the JSON report here")
    p.add_argument("--seed", type=int, default=0,
                   help="seed for randomized sampling (large-table checks)")
    p.add_argument("--max-order", type=int, default=10_000,
                   help="cap for permutation closures")
    p.add_argument("--max-candidates", type=int, default=10 ** 6,
                   help="cap for enumeration and coboundary search grids")
    p.add_argument("--subgroups", default=None,
                   help="generator spec 'a,b;c,...' overriding the file")


def build_parser():
    ap = argparse.ArgumentParser(
        prog="ntpg",
        description="Exact finite models of multi-principal structures: "
                    "verification reports with witnesses.")
    sub = ap.add_subparsers(dest="command", required=True)

    def add(group, name, handler, needs_file=True, extra=None):
        p = group.add_parser(name)
        _add_io_args(p, needs_file)
        if extra:
            extra(p)
        p.set_defaults(handler=handler, needs_file=needs_file)

    g = sub.add_parser("group").add_subparsers(dest="action", required=True)
    add(g, "validate", cmd_group_validate)

    d = sub.add_parser("dpg").add_subparsers(dest="action", required=True)
    add(d, "verify", cmd_dpg_verify)
    add(d, "dressing", cmd_dpg_dressing)
    add(d, "gamma-from-actions", cmd_dpg_pipeline)

    n = sub.add_parser("ntuple").add_subparsers(dest="action", required=True)
    add(n, "verify", cmd_ntuple_verify)

    gd = sub.add_parser("groupoid").add_subparsers(dest="action", required=True)
    add(gd, "gauge", cmd_groupoid_gauge)
    add(gd, "quotient", cmd_groupoid_quotient)
    add(gd, "split", cmd_groupoid_split)
    add(gd, "mult-function", cmd_groupoid_multfunction)

    gr = sub.add_parser("graded").add_subparsers(dest="action", required=True)
    add(gr, "check-morphism", cmd_graded_check_morphism)
    add(gr, "check-compat", cmd_graded_check_compat)
    add(gr, "weights", cmd_graded_weights)

    au = sub.add_parser("aut").add_subparsers(dest="action", required=True)

    def sig_field(p):
        p.add_argument("--sig", required=True, help="signature JSON file")
        p.add_argument("--field", required=True, help="'Q' or 'Fp:<p>'")

    add(au, "enumerate", cmd_aut_enumerate, needs_file=False, extra=sig_field)
    add(au, "verify-p54", cmd_aut_verify_p54, needs_file=False,
        extra=sig_field)

    co = sub.add_parser("cocycle").add_subparsers(dest="action", required=True)
    add(co, "check", cmd_cocycle_check)
    add(co, "associate", cmd_cocycle_associate)
    add(co, "frame", cmd_cocycle_frame)
    add(co, "cohomologous", cmd_cocycle_cohomologous)
    add(co, "t2", cmd_cocycle_t2)
    return ap


def main(argv=None):
    workers = os.environ.get("NTPG_WORKERS")
    if workers is not None and (not workers.isdigit() or int(workers) < 1):
        print("NTPG_WORKERS must be a positive integer", file=sys.stderr)
        return 2
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as e:
        return 2 if e.code not in (0, None) else 0
    ctx = _Ctx(args)
    started = time.monotonic()
    command = [args.command, getattr(args, "action", None)]
    try:
        if args.needs_file:
            data = read_json(args.file)
            verdict, details, witnesses = args.handler(ctx, data)
        else:
            verdict, details, witnesses = args.handler(ctx, args)
    except InternalInconsistency as e:
        report = {"command": command, "verdict": "error",
                  "theory_failure": True, "details": e.report(),
                  "witnesses": [],
                  "timing_ms": round(1000 * (time.monotonic() - started), 3)}
        write_report(report, args.out)
        print("ERROR %s: theory assertion failed; this is a library bug: %s"
              % (" ".join(filter(None, command)), e), file=sys.stderr)
        return 2
    except AlgebraError as e:
        report = {"command": command, "verdict": "error",
                  "details": e.report(), "witnesses": [],
                  "timing_ms": round(1000 * (time.monotonic() - started), 3)}
        write_report(report, args.out)
        print("ERROR %s: %s" % (" ".join(filter(None, command)), e),
              file=sys.stderr)
        return 2
    report = {"command": command, "verdict": verdict, "details": details,
              "witnesses": witnesses,
              "timing_ms": round(1000 * (time.monotonic() - started), 3)}
    write_report(report, args.out)
    if args.out not in (None, "-"):
        line = "%s %s" % (verdict.upper(), " ".join(filter(None, command)))
        if witnesses:
            line += " (witnesses: %d)" % len(witnesses)
        print(line)
    return 0 if verdict == "pass" else 1


if __name__ == "__main__":
    sys.exit(main())
