"""Batch driver: load structured documents, run computations, verify claims.

Commands operate on a workspace loaded from one or more document files (or a
directory of them).  Verification reports are line oriented, one item per
line; the exit code of `verify` is 0 exactly when every item verifies at or
above the requested witness class.
"""

from __future__ import annotations

import argparse
import os
import sys
import time
from dataclasses import dataclass, field

from . import compare
from .compare import (
    HWIT, ISO, SHE, HomotopyWitness, ObjectwiseEquivalence,
    VerificationReport, hocoend, hocolim, holim_uncorrected,
    homotopy_invariance_test, is_reedy_cofibrant_simpobj, simplex_contraction,
    verify_bar_eq_lan, verify_bar_pullout, verify_dhks,
    verify_enriched_bar_pullout, verify_lan_adjt, verify_lan_comma,
    verify_lan_comma2, verify_loc_eq_bar, witness_at_least,
)
from .barcobar import (
    check_coherence, check_extra_degeneracy, coherent_unravel,
    cosimplicial_cobar, enriched_simplicial_bar, epsilon,
    extra_degeneracy_of_bar, homotopy_from_extra_degeneracy, realize,
    simplicial_bar, strict_to_coherent, terminal_sweight,
)
from .diagram import (
    Diagram, SDiagram, SSetCat, coend, coend_shape, cotensor_product,
    constant_diagram, discrete_scat, discrete_sdiagram,
    enriched_tensor_product, lan, make_diagram, make_sdiagram, opposite_scat,
    restrict, tensor_product, terminal_weight,
)
from .docformat import (
    ParseError, Record, parse_document, record_of_sset, write_document,
)
from .fincat import (
    CategoryError, FinCat, FinFunctor, identity_functor, jid, make_category,
    opposite, unjid,
)
from .nerve import nerve
from .simpset import (
    SimplicialMap, TruncSSet, compose_maps, constant_map, homology,
    identity_map, is_homology_iso, is_isomorphic, is_kan_up_to, make_map,
    make_sset, product, standard_simplex, terminal_sset, vertex_inclusion,
)


class ValidationError(Exception):
    pass


class DanglingReference(Exception):
    pass


class UnknownCommand(Exception):
    pass


class UnknownClaim(Exception):
    pass


@dataclass
class Workspace:
    cap: int
    categories: dict[str, FinCat] = field(default_factory=dict)
    functors: dict[str, FinFunctor] = field(default_factory=dict)
    ssets: dict[str, TruncSSet] = field(default_factory=dict)
    scats: dict[str, SSetCat] = field(default_factory=dict)
    diagrams: dict[str, Diagram] = field(default_factory=dict)
    weights: dict[str, Diagram] = field(default_factory=dict)
    sdiagrams: dict[str, tuple[str, SDiagram]] = field(default_factory=dict)
    shape_names: dict[str, str] = field(default_factory=dict)


def truncate_sset(x: TruncSSet, cap: int) -> TruncSSet:
    if x.cap == cap:
        return x
    if x.cap < cap:
        raise ValidationError(f"sset of cap {x.cap} is shallower than the requested {cap}")
    faces = {(n, i): dict(x.faces[(n, i)]) for n in range(1, cap + 1) for i in range(n + 1)}
    degens = {(n, i): dict(x.degens[(n, i)]) for n in range(cap) for i in range(n + 1)}
    return make_sset(cap, [list(x.level(n)) for n in range(cap + 1)], faces, degens)


def _collect_files(paths) -> list[str]:
    files = []
    for p in paths:
        if os.path.isdir(p):
            files.extend(sorted(os.path.join(p, f) for f in os.listdir(p)
                                if f.endswith(".hcl")))
        else:
            files.append(p)
    return files


def load(paths, cap: int = 4) -> Workspace:
    """Parse and validate documents into a fully checked workspace."""
    records: list[Record] = []
    for path in _collect_files(paths):
        with open(path, encoding="utf-8") as fh:
            records.extend(parse_document(fh.read()))
    ws = Workspace(cap=cap)
    order = {"category": 0, "functor": 1, "sset": 2, "sset-category": 3,
             "diagram": 4, "weight": 4, "sdiagram": 5}
    for rec in sorted(records, key=lambda r: order.get(r.kind, 9)):
        try:
            _load_record(ws, rec)
        except (CategoryError, ValidationError, DanglingReference, KeyError) as e:
            kind = type(e).__name__
            raise ValidationError(f"{rec.kind} {rec.name}: [{kind}] {e}") from e
    return ws


def _load_record(ws: Workspace, rec: Record) -> None:
    if rec.kind == "category":
        fields = rec.fields
        morphisms = {}
        identities = dict(fields.get("identities", {}))
        for x, e in identities.items():
            morphisms[e] = (x, x)
        for m in fields.get("morphisms", []):
            morphisms[m["id"]] = (m["source"], m["target"])
        compose = {(c["after"], c["first"]): c["result"]
                   for c in fields.get("compose", [])}
        ws.categories[rec.name] = make_category(
            fields.get("objects", []), morphisms, compose,
            identities or None)
    elif rec.kind == "functor":
        dom = _resolve(ws.categories, rec.fields["domain"], "category")
        cod = _resolve(ws.categories, rec.fields["codomain"], "category")
        omap = dict(rec.fields.get("objects", {}))
        mmap = {dom.identity[x]: cod.identity[omap[x]] for x in dom.objects}
        mmap.update(rec.fields.get("morphisms", {}))
        fun = FinFunctor(dom, cod, omap, mmap)
        fun.validate()
        ws.functors[rec.name] = fun
    elif rec.kind == "sset":
        cap = int(rec.fields["cap"])
        level_table = _str_keys(rec.fields.get("levels", {}))
        levels = [list(level_table.get(str(n), [])) for n in range(cap + 1)]
        faces = {(int(t["level"]), int(t["index"])): dict(t["map"])
                 for t in rec.fields.get("faces", [])}
        degens = {(int(t["level"]), int(t["index"])): dict(t["map"])
                  for t in rec.fields.get("degeneracies", [])}
        x = make_sset(cap, levels, faces, degens)
        ws.ssets[rec.name] = truncate_sset(x, ws.cap)
    elif rec.kind == "sset-category":
        objects = list(rec.fields["objects"])
        homs = {}
        for h in rec.fields.get("homs", []):
            homs[(h["source"], h["target"])] = _resolve(ws.ssets, h["sset"], "sset")
        comps = {}
        for c in rec.fields.get("compositions", []):
            a, b, cc = c["source"], c["mid"], c["target"]
            src = product(homs[(b, cc)], homs[(a, b)])
            tables = _str_keys(c["map"])
            comps[(a, b, cc)] = make_map(
                src, homs[(a, cc)],
                [dict(tables.get(str(n), {})) for n in range(ws.cap + 1)])
        scat = SSetCat(tuple(sorted(objects)), homs,
                       dict(rec.fields.get("units", {})), comps)
        scat.validate()
        ws.scats[rec.name] = scat
    elif rec.kind in ("diagram", "weight"):
        base = _resolve(ws.categories, rec.fields["shape"], "category")
        shape = opposite(base) if rec.kind == "weight" else base
        values = {d: _resolve(ws.ssets, n, "sset")
                  for d, n in rec.fields["values"].items()}
        arrows = {}
        for f, tables in rec.fields.get("arrows", {}).items():
            tables = _str_keys(tables)
            src = values[shape.source[f]]
            tgt = values[shape.target[f]]
            arrows[f] = make_map(src, tgt, [dict(tables.get(str(n), {}))
                                            for n in range(ws.cap + 1)])
        dgm = make_diagram(shape, values, arrows)
        target = ws.weights if rec.kind == "weight" else ws.diagrams
        target[rec.name] = dgm
        ws.shape_names[rec.name] = rec.fields["shape"]
    elif rec.kind == "sdiagram":
        scat = _resolve(ws.scats, rec.fields["shape"], "sset-category")
        variance = rec.fields.get("variance", "covariant")
        shape = opposite_scat(scat) if variance == "contravariant" else scat
        values = {d: _resolve(ws.ssets, n, "sset")
                  for d, n in rec.fields["values"].items()}
        actions = {}
        for a in rec.fields.get("actions", []):
            s, t = a["source"], a["target"]
            tables = _str_keys(a["map"])
            src = product(shape.homs[(s, t)], values[s])
            actions[(s, t)] = make_map(
                src, values[t],
                [dict(tables.get(str(n), {})) for n in range(ws.cap + 1)])
        dgm = make_sdiagram(shape, values, actions)
        ws.sdiagrams[rec.name] = (variance, dgm)
        ws.shape_names[rec.name] = rec.fields["shape"]
    else:
        raise ValidationError(f"unknown record kind {rec.kind!r}")


def _resolve(table, name, kind):
    if name not in table:
        raise DanglingReference(f"unknown {kind} {name!r}")
    return table[name]


def _str_keys(d) -> dict:
    return {str(k): v for k, v in d.items()}


# ---------------------------------------------------------------------------
# verification claim registry

def _diagram_instances(ws: Workspace):
    for name in sorted(ws.diagrams):
        yield name, ws.diagrams[name]


def _weights_for(ws: Workspace, dgm: Diagram):
    for name in sorted(ws.weights):
        w = ws.weights[name]
        if w.shape == opposite(dgm.shape) and w.cap == dgm.cap:
            yield name, w


def _claim_local_eq_bar(ws):
    return [verify_loc_eq_bar(d.shape, d, name) for name, d in _diagram_instances(ws)]


def _claim_bar_pullout(ws):
    out = []
    for name, d in _diagram_instances(ws):
        out.append(verify_bar_pullout(None, d.shape, d, f"{name}/point-weight"))
        for wname, w in _weights_for(ws, d):
            out.append(verify_bar_pullout(w, d.shape, d, f"{name}/{wname}"))
    enriched = {}
    for name, (variance, sd) in sorted(ws.sdiagrams.items()):
        enriched.setdefault(ws.shape_names[name], {})[variance] = (name, sd)
    for shape_name, pair in enriched.items():
        if "covariant" in pair and "contravariant" in pair:
            fname, f = pair["covariant"]
            gname, g = pair["contravariant"]
            out.append(verify_enriched_bar_pullout(
                g, ws.scats[shape_name], f, f"enriched:{gname}/{fname}"))
    return out


def _claim_bar_eq_kan(ws):
    return [verify_bar_eq_lan(d.shape, d, name) for name, d in _diagram_instances(ws)]


def _claim_cylinder(ws):
    out = []
    for name, d in _diagram_instances(ws):
        if nerve(d.shape, d.cap).size() <= 48:
            out.append(verify_dhks(d, name))
    return out


def _claim_kan_comma(ws):
    out = []
    for cname in sorted(ws.categories):
        cat = ws.categories[cname]
        if len(cat.morphisms) <= 6:
            out.append(verify_lan_comma(identity_functor(cat), ws.cap, f"Id[{cname}]"))
    for fname in sorted(ws.functors):
        fun = ws.functors[fname]
        if len(fun.codomain.morphisms) <= 6:
            out.append(verify_lan_comma(fun, ws.cap, fname))
    return out


def _claim_kan_comma_colim(ws):
    out = []
    for cname in sorted(ws.categories):
        cat = ws.categories[cname]
        if len(cat.morphisms) <= 5:
            out.append(verify_lan_comma2(cat, min(ws.cap, 2), cname))
    return out


def _claim_kan_tensor(ws):
    out = []
    for fname in sorted(ws.functors):
        fun = ws.functors[fname]
        for wname in sorted(ws.weights):
            w = ws.weights[wname]
            if w.shape != opposite(fun.domain):
                continue
            for dname, d in _diagram_instances(ws):
                if d.shape == fun.codomain:
                    out.append(verify_lan_adjt(fun, w, d, f"{fname}/{wname}/{dname}"))
    return out


def _claim_extra_degeneracy(ws):
    out = []
    for name, d in _diagram_instances(ws):
        t0 = time.time()
        bad = []
        eps = epsilon(d.shape, d)
        for obj in d.shape.objects:
            rev, s = extra_degeneracy_of_bar(d.shape, d, obj)
            viol = check_extra_degeneracy(rev, s)
            viol += check_simplicial_homotopy_wrapper(rev, s)
            if not is_homology_iso(eps[obj], d.cap - 1):
                viol.append(f"augmentation at {obj} is not a homology iso")
            bad.extend(f"{obj}: {v}" for v in viol)
        out.append(VerificationReport(
            "extra-degeneracy", name, "verified" if not bad else "failed",
            SHE, "; ".join(bad[:3]), time.time() - t0))
    return out


def check_simplicial_homotopy_wrapper(rev, s):
    from .barcobar import check_simplicial_homotopy
    h = homotopy_from_extra_degeneracy(rev, s)
    return check_simplicial_homotopy(rev, h)


def _claim_bar_reedy(ws):
    out = []
    for name, d in _diagram_instances(ws):
        t0 = time.time()
        hcap = min(3, d.cap)
        bars = {"point-weight": simplicial_bar(None, d.shape, d, hcap)}
        for wname, w in _weights_for(ws, d):
            bars[wname] = simplicial_bar(w, d.shape, d, hcap)
        scat = discrete_scat(d.shape, d.cap)
        sfd = discrete_sdiagram(d, scat)
        from .barcobar import cyclic_bar, twosided_as_bimodule
        bars["cyclic"] = cyclic_bar(scat, twosided_as_bimodule(
            terminal_sweight(scat), scat, sfd), hcap)
        bad = []
        for bname, b in bars.items():
            fails = is_reedy_cofibrant_simpobj(b, hcap)
            bad.extend(f"{bname}@{n}" for n in fails)
        out.append(VerificationReport(
            "bar-reedy", name, "verified" if not bad else "failed",
            ISO, "; ".join(bad[:4]), time.time() - t0))
    return out


def _builtin_equivalence_pairs(cap: int):
    """Three objectwise-contractible comparison pairs with explicit witnesses."""
    from .fincat import arrow_category, span_category, terminal_category
    pt = terminal_sset(cap)
    d1 = standard_simplex(1, cap)
    contraction = simplex_contraction(1, cap)
    collapse = constant_map(d1, pt, pt.level(0)[0])
    include = vertex_inclusion(d1, jid(0))
    idpt = identity_map(pt)
    pt_w = HomotopyWitness(idpt, idpt, make_map(
        product(pt, d1), pt,
        [{s: pt.level(n)[0] for s in product(pt, d1).level(n)} for n in range(cap + 1)]))
    d1_w = HomotopyWitness(constant_map(d1, d1, jid(0)), identity_map(d1),
                           contraction.homotopy)

    def pair_over(shape, big, small, fwd, back, bf, fb, tag):
        phi = ObjectwiseEquivalence(fwd, back, bf, fb)
        return shape, big, small, phi, tag

    one = terminal_category()
    f_one = make_diagram(one, {"*": d1})
    g_one = make_diagram(one, {"*": pt})
    yield pair_over(one, f_one, g_one, {"*": collapse}, {"*": include},
                    {"*": d1_w}, {"*": pt_w}, "point/interval-vs-point")

    arr = arrow_category()
    f_arr = make_diagram(arr, {"0": d1, "1": pt}, {"a01": collapse})
    g_arr = constant_diagram(arr, pt)
    yield pair_over(arr, f_arr, g_arr,
                    {"0": collapse, "1": idpt}, {"0": include, "1": idpt},
                    {"0": d1_w, "1": pt_w}, {"0": pt_w, "1": pt_w},
                    "arrow/interval-vs-point")

    sp = span_category()
    f_sp = make_diagram(sp, {"a": pt, "b": d1, "c": pt}, {"p": collapse, "q": collapse})
    g_sp = constant_diagram(sp, pt)
    yield pair_over(sp, f_sp, g_sp,
                    {"a": idpt, "b": collapse, "c": idpt},
                    {"a": idpt, "b": include, "c": idpt},
                    {"a": pt_w, "b": d1_w, "c": pt_w},
                    {"a": pt_w, "b": pt_w, "c": pt_w},
                    "span/cylinder-vs-points")


def _claim_homotopy_invariance(ws):
    out = []
    for shape, f, g, phi, tag in _builtin_equivalence_pairs(ws.cap):
        out.append(homotopy_invariance_test(shape, f, g, phi, tag))
    return out


def _claim_enriched_discrete(ws):
    out = []
    for name, d in _diagram_instances(ws):
        t0 = time.time()
        bad = []
        scat = discrete_scat(d.shape, d.cap)
        sfd = discrete_sdiagram(d, scat)
        for wname, w in list(_weights_for(ws, d)) + [("point-weight", terminal_weight(d.shape, d.cap))]:
            sw = _discrete_weight(w, d.shape, scat)
            enr = enriched_tensor_product(sw, sfd)
            plain = tensor_product(w, d)
            if enr != plain:
                bad.append(f"tensor/{wname}")
        hcap = min(2, d.cap)
        eb = enriched_simplicial_bar(terminal_sweight(scat), scat, sfd, hcap)
        ub = simplicial_bar(None, d.shape, d, hcap)
        if not _enriched_matches_bar(eb, ub, d.shape):
            bad.append("bar columns")
        out.append(VerificationReport(
            "enriched-discrete", name, "verified" if not bad else "failed",
            ISO, "; ".join(bad[:4]), time.time() - t0))
    return out


def _discrete_weight(w: Diagram, shape, scat) -> SDiagram:
    """View an unenriched weight as an enriched weight over the discrete shape."""
    op = opposite_scat(scat)
    actions = {}
    for a in shape.objects:
        for b in shape.objects:
            src = product(op.homs[(a, b)], w.values[a])
            comps = []
            for lv in range(w.cap + 1):
                t = {}
                for s in src.level(lv):
                    h, x = unjid(s)
                    t[s] = w.arrows[h].comps[lv][x]
                comps.append(t)
            actions[(a, b)] = make_map(src, w.values[b], comps)
    return SDiagram(op, dict(w.values), actions)


def _enriched_matches_bar(eb, ub, shape) -> bool:
    """Set-for-set agreement of enriched and plain bar columns after the
    canonical renaming (hom entries collapse to their generating arrows)."""
    from .nerve import string_id
    for n in range(eb.hcap + 1):
        for lv in range(eb.cap + 1):
            renamed = set()
            for sid in eb.column(n).level(lv):
                parts = unjid(sid)
                tup, gv, chain, xv = parts[0], parts[1], parts[2:-1], parts[-1]
                arrows = list(reversed(chain))
                renamed.add(jid(string_id(tup[0], arrows), gv, xv))
            if renamed != set(ub.column(n).level(lv)):
                return False
    return True


def _claim_hocoend_forms(ws):
    out = []
    for cname in sorted(ws.categories):
        cat = ws.categories[cname]
        if len(cat.morphisms) > 4:
            continue
        h = constant_diagram(coend_shape(cat), terminal_sset(ws.cap))
        _, _, rep = hocoend(cat, h, f"{cname}/point", hcap=min(3, ws.cap))
        out.append(rep)
    for name, d in sorted(ws.diagrams.items()):
        for cname, cat in ws.categories.items():
            if d.shape == coend_shape(cat):
                _, _, rep = hocoend(cat, d, name, hcap=min(3, ws.cap))
                out.append(rep)
    return out


CLAIMS = {
    "local-eq-bar": _claim_local_eq_bar,
    "bar-pullout": _claim_bar_pullout,
    "bar-eq-kan": _claim_bar_eq_kan,
    "cylinder-replacement": _claim_cylinder,
    "kan-comma": _claim_kan_comma,
    "kan-comma-colim": _claim_kan_comma_colim,
    "kan-tensor": _claim_kan_tensor,
    "extra-degeneracy": _claim_extra_degeneracy,
    "bar-reedy": _claim_bar_reedy,
    "homotopy-invariance": _claim_homotopy_invariance,
    "enriched-discrete": _claim_enriched_discrete,
    "hocoend-forms": _claim_hocoend_forms,
}


def run_verify(ws: Workspace, claim: str, min_witness: str = HWIT):
    if claim == "all":
        names = list(CLAIMS)
    elif claim in CLAIMS:
        names = [claim]
    else:
        raise UnknownClaim(f"unknown claim {claim!r}; known: {', '.join(sorted(CLAIMS))}")
    reports = []
    for name in names:
        reports.extend(CLAIMS[name](ws))
    ok = all(r.ok and witness_at_least(r.witness_class, min_witness) for r in reports)
    return reports, ok


# ---------------------------------------------------------------------------
# command driver

def _write_artifact(out_dir, name, sset):
    if out_dir is None:
        return
    os.makedirs(out_dir, exist_ok=True)
    path = os.path.join(out_dir, f"{name}.hcl")
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(write_document([record_of_sset(name, sset)]))


def _print_homology(x, degrees, label, echo):
    for k in degrees:
        echo(f"H_{k}({label}) = {homology(x, k)}")


def run(command: str, ws: Workspace, args, echo=print) -> int:
    """Execute a single CLI command against a loaded workspace."""
    out_dir = args.out
    degrees = [int(k) for k in args.homology.split(",")] if args.homology else []
    if command == "nerve":
        cat = _resolve(ws.categories, args.cat, "category")
        n = nerve(cat, ws.cap)
        echo(f"nerve({args.cat}) levels: {[len(n.level(k)) for k in range(ws.cap + 1)]}")
        _write_artifact(out_dir, f"nerve-{args.cat}", n)
        _print_homology(n, [k for k in degrees if k <= ws.cap - 1], f"nerve {args.cat}", echo)
        return 0
    if command == "hocolim":
        d = _resolve(ws.diagrams, args.diagram, "diagram")
        h = hocolim(d.shape, d)
        echo(f"hocolim({args.diagram}) levels: {[len(h.level(k)) for k in range(h.cap + 1)]}")
        _print_homology(h, [k for k in degrees if k <= h.cap - 1], args.diagram, echo)
        _write_artifact(out_dir, f"hocolim-{args.diagram}", h)
        return 0
    if command == "holim":
        d = _resolve(ws.diagrams, args.diagram, "diagram")
        h, kan = holim_uncorrected(d.shape, d, cap_out=min(1, ws.cap))
        echo(f"holim({args.diagram}) levels: {[len(h.level(k)) for k in range(h.cap + 1)]}"
             f" (exact to {h.exact_to})")
        for obj, missing in sorted(kan.items()):
            state = "kan" if not missing else f"{len(missing)} unfilled horns"
            echo(f"  value at {obj}: {state}")
        _write_artifact(out_dir, f"holim-{args.diagram}", h)
        return 0
    if command == "bar":
        d = _resolve(ws.diagrams, args.diagram, "diagram")
        w = ws.weights[args.weight] if args.weight else None
        b = simplicial_bar(w, d.shape, d, ws.cap)
        echo(f"bar({args.weight or '*'}, {args.diagram}) column sizes: "
             f"{[b.column(n).size() for n in range(b.hcap + 1)]}")
        r = realize(b)
        _print_homology(r, [k for k in degrees if k <= r.cap - 1], "realization", echo)
        _write_artifact(out_dir, f"bar-{args.diagram}", r)
        return 0
    if command == "cobar":
        d = _resolve(ws.diagrams, args.diagram, "diagram")
        c = cosimplicial_cobar(None, d.shape, d, min(2, ws.cap))
        echo(f"cobar(*, {args.diagram}) column sizes: "
             f"{[c.column(n).size() for n in range(c.hcap + 1)]}")
        from .barcobar import tot
        t = tot(c, cap_out=min(1, ws.cap))
        echo(f"tot levels: {[len(t.level(k)) for k in range(t.cap + 1)]} (exact to {t.exact_to})")
        _write_artifact(out_dir, f"tot-{args.diagram}", t)
        return 0
    if command == "tensor":
        w = _resolve(ws.weights, args.weight, "weight")
        d = _resolve(ws.diagrams, args.diagram, "diagram")
        t = tensor_product(w, d)
        echo(f"{args.weight} (x) {args.diagram} levels: "
             f"{[len(t.level(k)) for k in range(t.cap + 1)]}")
        _print_homology(t, [k for k in degrees if k <= t.cap - 1], "tensor", echo)
        _write_artifact(out_dir, f"tensor-{args.weight}-{args.diagram}", t)
        return 0
    if command == "cotensor":
        w = _resolve(ws.diagrams, args.weight, "diagram")
        d = _resolve(ws.diagrams, args.diagram, "diagram")
        t = cotensor_product(w, d, cap_out=min(1, ws.cap))
        echo(f"cotensor levels: {[len(t.level(k)) for k in range(t.cap + 1)]}"
             f" (exact to {t.exact_to})")
        _write_artifact(out_dir, f"cotensor-{args.weight}-{args.diagram}", t)
        return 0
    if command == "coend":
        base = _resolve(ws.categories, args.cat, "category")
        d = _resolve(ws.diagrams, args.diagram, "diagram")
        t = coend(base, d)
        echo(f"coend levels: {[len(t.level(k)) for k in range(t.cap + 1)]}")
        _write_artifact(out_dir, f"coend-{args.diagram}", t)
        return 0
    if command == "hocoend":
        base = _resolve(ws.categories, args.cat, "category")
        d = _resolve(ws.diagrams, args.diagram, "diagram")
        full, cyc, rep = hocoend(base, d, args.diagram, hcap=min(3, ws.cap))
        echo(rep.line())
        _print_homology(full, [k for k in degrees if k <= full.cap - 1], "hocoend", echo)
        _write_artifact(out_dir, f"hocoend-{args.diagram}", full)
        return 0 if rep.ok else 1
    if command == "lan":
        fun = _resolve(ws.functors, args.functor, "functor")
        d = _resolve(ws.diagrams, args.diagram, "diagram")
        ext = lan(fun, d)
        for e in fun.codomain.objects:
            v = ext.diagram.values[e]
            echo(f"Lan at {e}: levels {[len(v.level(k)) for k in range(v.cap + 1)]}")
            _write_artifact(out_dir, f"lan-{args.diagram}-{e}", v)
        return 0
    if command == "hlan":
        fun = _resolve(ws.functors, args.functor, "functor")
        d = _resolve(ws.diagrams, args.diagram, "diagram")
        ext = compare.h_lan(fun, d)
        for e in fun.codomain.objects:
            v = ext.values[e]
            echo(f"hLan at {e}: levels {[len(v.level(k)) for k in range(v.cap + 1)]}")
            _write_artifact(out_dir, f"hlan-{args.diagram}-{e}", v)
        return 0
    if command == "homology":
        x = _resolve(ws.ssets, args.sset, "sset")
        _print_homology(x, degrees or range(ws.cap), args.sset, echo)
        return 0
    if command == "kan-check":
        x = _resolve(ws.ssets, args.sset, "sset")
        missing = is_kan_up_to(x, args.up_to if args.up_to is not None else ws.cap - 1)
        if missing:
            echo(f"{args.sset}: {len(missing)} unfilled horns, first {missing[0][:2]}")
        else:
            echo(f"{args.sset}: kan up to {args.up_to if args.up_to is not None else ws.cap - 1}")
        return 0
    if command == "reedy-check":
        d = _resolve(ws.diagrams, args.diagram, "diagram")
        b = simplicial_bar(None, d.shape, d, min(3, ws.cap))
        fails = is_reedy_cofibrant_simpobj(b)
        echo(f"bar(*, {args.diagram}) latching maps injective: {not fails}"
             + (f" (failures at {fails})" if fails else ""))
        return 0 if not fails else 1
    if command == "coherent":
        d = _resolve(ws.diagrams, args.diagram, "diagram")
        target = ws.diagrams[args.target] if args.target else d
        nat = {obj: identity_map(d.values[obj]) for obj in d.shape.objects} \
            if target is d else None
        if nat is None:
            raise ValidationError("coherent requires --target to equal the diagram "
                                  "(strict identity transformation) in this driver")
        phi = strict_to_coherent(d.shape, d, target, nat)
        data = coherent_unravel(phi, depth=2)
        viol = check_coherence(phi, data)
        echo(f"coherent data for {args.diagram}: "
             f"{len(data.alpha_arr)} arrow components, "
             f"{len(data.homotopy1)} comparison homotopies, "
             f"{len(data.two_cells)} 2-cells; "
             + ("all relations hold" if not viol else f"violations: {viol[:3]}"))
        return 0 if not viol else 1
    if command == "verify":
        reports, ok = run_verify(ws, args.claim, args.witness.upper())
        for r in reports:
            echo(r.line())
        echo(f"{'all verified' if ok else 'FAILURES'} "
             f"({sum(r.ok for r in reports)}/{len(reports)})")
        return 0 if ok else 1
    raise UnknownCommand(command)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hocolim",
        description="homotopy (co)limits of truncated simplicial sets, with "
                    "mechanical verification of the comparison theorems")
    parser.add_argument("command", help="one of: nerve hocolim holim bar cobar tensor "
                        "cotensor coend hocoend lan hlan homology kan-check "
                        "reedy-check coherent verify")
    parser.add_argument("inputs", nargs="*", help="document files or directories; "
                        "for verify, the first argument may be a claim id or 'all'")
    parser.add_argument("--max-dim", type=int, default=4, help="global truncation cap")
    parser.add_argument("--homology", default="", help="comma separated degrees")
    parser.add_argument("--witness", default="hwit", choices=["iso", "she", "hwit"],
                        help="minimum acceptable witness class for verify")
    parser.add_argument("--out", default=None, help="directory for serialized artifacts")
    parser.add_argument("--cat", default=None)
    parser.add_argument("--diagram", default=None)
    parser.add_argument("--weight", default=None)
    parser.add_argument("--functor", default=None)
    parser.add_argument("--sset", default=None)
    parser.add_argument("--target", default=None)
    parser.add_argument("--up-to", type=int, default=None, dest="up_to")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    inputs = list(args.inputs)
    claim = None
    if args.command == "verify":
        if not inputs:
            parser.error("verify needs a claim id (or 'all') and document paths")
        claim = inputs.pop(0)
        args.claim = claim
    try:
        ws = load(inputs, cap=args.max_dim) if inputs else Workspace(cap=args.max_dim)
        return run(args.command, ws, args)
    except (ParseError, ValidationError, DanglingReference, UnknownClaim,
            UnknownCommand, CategoryError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
