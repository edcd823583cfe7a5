"""The desk-scale instance corpus used by the verification suite and fixtures.

Shapes, diagrams, weights and one genuinely enriched shape (a one-object
simplicial category whose hom object is the interval with min composition).
`write_corpus` serializes everything to .hcl documents so the CLI can be run
against a plain directory.
"""

from __future__ import annotations

import os

from .barcobar import SimpObj
from .diagram import (
    Diagram, SDiagram, SSetCat, constant_diagram, make_diagram,
    make_sdiagram, one_object_scat, opposite_scat, representable_weight,
)
from .docformat import (
    Record, record_of_category, record_of_diagram, record_of_functor,
    record_of_scat, record_of_sdiagram, record_of_sset, write_document,
)
from .fincat import (
    FinCat, FinFunctor, arrow_category, cospan_category,
    cyclic_group_category, discrete_category, functor_from_maps,
    identity_functor, jid, span_category, terminal_category, unjid,
)
from .simpset import (
    SimplicialMap, TruncSSet, boundary_simplex, constant_map, identity_map,
    make_map, product, standard_simplex, terminal_sset, vertex_inclusion,
)


def categories() -> dict[str, FinCat]:
    return {
        "one": terminal_category(),
        "arrow": arrow_category(),
        "span": span_category(),
        "cospan": cospan_category(),
        "bz2": cyclic_group_category(2),
        "two": discrete_category(["u", "v"]),
    }


def ssets(cap: int) -> dict[str, TruncSSet]:
    return {
        "pt": terminal_sset(cap),
        "s0": boundary_simplex(1, cap),
        "interval": standard_simplex(1, cap),
        "triangle": standard_simplex(2, cap),
    }


def diagrams(cap: int) -> dict[str, Diagram]:
    cats = categories()
    xs = ssets(cap)
    pt, s0, d1 = xs["pt"], xs["s0"], xs["interval"]
    collapse_s0 = constant_map(s0, pt, pt.level(0)[0])
    collapse_d1 = constant_map(d1, pt, pt.level(0)[0])
    return {
        "s0-on-point": make_diagram(cats["one"], {"*": s0}),
        "circle": make_diagram(cats["span"], {"a": pt, "b": s0, "c": pt},
                               {"p": collapse_s0, "q": collapse_s0}),
        "grow-interval": make_diagram(cats["arrow"], {"0": pt, "1": d1},
                                      {"a01": vertex_inclusion(d1, jid(0))}),
        "collapse-s0": make_diagram(cats["arrow"], {"0": s0, "1": pt},
                                    {"a01": collapse_s0}),
        "point-on-bz2": constant_diagram(cats["bz2"], pt),
        "two-pieces": make_diagram(cats["two"], {"u": d1, "v": s0}),
    }


def weights(cap: int) -> dict[str, tuple[str, Diagram]]:
    """Named weights with the shape they belong to."""
    cats = categories()
    return {
        "repr-span-b": ("span", representable_weight(cats["span"], "b", cap)),
        "repr-arrow-0": ("arrow", representable_weight(cats["arrow"], "0", cap)),
        "repr-arrow-1": ("arrow", representable_weight(cats["arrow"], "1", cap)),
    }


def functors() -> dict[str, tuple[str, str, FinFunctor]]:
    cats = categories()
    return {
        "origin": ("one", "arrow", functor_from_maps(cats["one"], cats["arrow"], {"*": "0"})),
        "center": ("one", "span", functor_from_maps(cats["one"], cats["span"], {"*": "b"})),
        "fold": ("span", "arrow",
                 functor_from_maps(cats["span"], cats["arrow"],
                                   {"a": "1", "b": "0", "c": "1"},
                                   {"p": "a01", "q": "a01"})),
    }


def interval_monoid_scat(cap: int) -> SSetCat:
    """A genuinely enriched one-object shape: hom is the interval, with
    pointwise-min composition and the vertex 1 as unit."""
    d1 = standard_simplex(1, cap)
    prod = product(d1, d1)
    comps = []
    for n in range(cap + 1):
        t = {}
        for s in prod.level(n):
            a, b = unjid(s)
            av, bv = unjid(a), unjid(b)
            t[s] = jid(*[min(x, y) for x, y in zip(av, bv)])
        comps.append(t)
    mult = make_map(prod, d1, comps)
    return one_object_scat(d1, jid(1), mult)


def enriched_instances(cap: int) -> dict[str, tuple[str, SDiagram]]:
    """A covariant point module and a contravariant hom weight over the
    interval monoid."""
    scat = interval_monoid_scat(cap)
    pt = terminal_sset(cap)
    src = product(scat.homs[("*", "*")], pt)
    point_action = make_map(src, pt, [
        {s: pt.level(n)[0] for s in src.level(n)} for n in range(cap + 1)])
    point_module = make_sdiagram(scat, {"*": pt}, {("*", "*"): point_action})
    op = opposite_scat(scat)
    hom = scat.homs[("*", "*")]
    src2 = product(op.homs[("*", "*")], hom)
    comps = []
    for n in range(cap + 1):
        t = {}
        for s in src2.level(n):
            h, x = unjid(s)
            t[s] = scat.compose_simplices("*", "*", "*", n, x, h)
        comps.append(t)
    hom_weight = make_sdiagram(op, {"*": hom}, {("*", "*"): make_map(src2, hom, comps)})
    return {
        "interval-point": ("covariant", point_module),
        "interval-hom-weight": ("contravariant", hom_weight),
    }


def corpus_records(cap: int) -> dict[str, list[Record]]:
    """All corpus objects as documents, grouped by output file stem."""
    cats = categories()
    xs = ssets(cap)
    out: dict[str, list[Record]] = {}
    out["shapes"] = [record_of_category(n, c) for n, c in sorted(cats.items())]
    out["shapes"] += [record_of_functor(n, f, dom, cod)
                      for n, (dom, cod, f) in sorted(functors().items())]
    out["spaces"] = [record_of_sset(n, x) for n, x in sorted(xs.items())]

    sset_names = {id(x): n for n, x in xs.items()}

    def name_values(dgm, prefix, recs):
        names = {}
        for d, v in dgm.values.items():
            key = id(v)
            if key in sset_names:
                names[d] = sset_names[key]
                continue
            found = None
            for n, x in xs.items():
                if v == x:
                    found = n
                    break
            if found is None:
                found = f"{prefix}-{d}"
                recs.append(record_of_sset(found, v))
            names[d] = found
        return names

    out["diagrams"] = []
    for n, dgm in sorted(diagrams(cap).items()):
        shape_name = next(cn for cn, c in cats.items() if c == dgm.shape)
        names = name_values(dgm, n, out["diagrams"])
        out["diagrams"].append(record_of_diagram(n, dgm, shape_name, names))
    out["weights"] = []
    for n, (shape_name, w) in sorted(weights(cap).items()):
        names = name_values(w, n, out["weights"])
        out["weights"].append(record_of_diagram(n, w, shape_name, names, kind="weight"))

    out["enriched"] = []
    scat = interval_monoid_scat(cap)
    hom_names = {("*", "*"): "interval"}
    out["enriched"].append(record_of_scat("interval-monoid", scat, hom_names))
    for n, (variance, sd) in sorted(enriched_instances(cap).items()):
        names = name_values(sd, n, out["enriched"])
        out["enriched"].append(
            record_of_sdiagram(n, sd, "interval-monoid", names, variance))
    return out


def write_corpus(directory: str, cap: int = 4) -> list[str]:
    os.makedirs(directory, exist_ok=True)
    paths = []
    for stem, records in corpus_records(cap).items():
        path = os.path.join(directory, f"{stem}.hcl")
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(write_document(records))
        paths.append(path)
    return paths
