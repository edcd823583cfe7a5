"""Homotopy (co)limit assembly and mechanical verification of the
comparison theorems on finite instances.

Every verification produces a VerificationReport carrying the claim id, the
instance, the outcome, and the witness class actually achieved: ISO (an
explicit simplicial isomorphism), SHE (explicit simplicial homotopy
equivalence data), or HWIT (homology isomorphism up to cap - 1).  Failures
carry a concrete witness description.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

from .fincat import (
    FinCat, FinFunctor, FinNatTransf, jid, linear_category, opposite,
    opposite_functor, under_comma, under_category, unjid,
)
from .diagram import (
    Diagram, KanExtension, SDiagram, SSetCat, ShapeMismatch, coend_shape,
    constant_diagram, discrete_scat, discrete_sdiagram, external_product,
    hom_weight, lan, make_diagram, restrict, tensor_product,
    tensor_product_with_injections,
)
from .barcobar import (
    CosimpObj, SimpObj, bar_diagram, bimodule_bar, check_extra_degeneracy,
    check_simplicial_homotopy, constant_simpobj, cosimplicial_cobar,
    cyclic_bar, enriched_simplicial_bar, epsilon, eta,
    extra_degeneracy_of_bar, homotopy_from_extra_degeneracy,
    horizontal_operator, realize, simplicial_bar, terminal_sweight, tot,
    twosided_as_bimodule, delta_category,
)
from .nerve import (
    SimplexCatBundle, category_of_simplices, nerve, nerve_map,
    reedy_degree_data, simplex_category_of_nerve, string_id, string_objects,
    string_parts,
)
from .simpset import (
    SimplicialMap, TruncSSet, colimit as sset_colimit, compose_maps,
    coproduct_many, homology, homology_groups, identity_map, is_homology_iso,
    is_isomorphic, is_kan_up_to, make_map, monotone_maps, pair_map,
    product as sset_product, pullback, quotient, standard_simplex,
    terminal_sset, vertex_inclusion,
)


class WitnessInvalid(Exception):
    pass


class NoReedyData(Exception):
    pass


ISO, SHE, HWIT = "ISO", "SHE", "HWIT"
_WITNESS_ORDER = {ISO: 3, SHE: 2, HWIT: 1}


def witness_at_least(got: str, wanted: str) -> bool:
    return _WITNESS_ORDER[got] >= _WITNESS_ORDER[wanted]


@dataclass(frozen=True)
class VerificationReport:
    claim: str
    instance: str
    outcome: str                 # "verified" | "failed"
    witness_class: str = ISO
    detail: str = ""
    seconds: float = 0.0

    @property
    def ok(self) -> bool:
        return self.outcome == "verified"

    def line(self) -> str:
        return (f"{self.claim} | {self.instance} | {self.outcome} | "
                f"{self.witness_class} | {self.seconds:.2f}s"
                + (f" | {self.detail}" if self.detail else ""))


def _report(claim, instance, ok, witness, detail, t0):
    return VerificationReport(claim, instance, "verified" if ok else "failed",
                              witness, detail, time.time() - t0)


# ---------------------------------------------------------------------------
# homotopy colimits and limits

def hocolim(shape, f, hcap: int | None = None) -> TruncSSet:
    """Uncorrected homotopy colimit: diagonal of the one-sided bar.

    Every truncated simplicial set is cofibrant, so no objectwise correction
    is needed on the colimit side.
    """
    if isinstance(shape, SSetCat):
        b = enriched_simplicial_bar(terminal_sweight(shape), shape, f,
                                    f.cap if hcap is None else hcap)
    else:
        b = simplicial_bar(None, shape, f, f.cap if hcap is None else hcap)
    return realize(b)


def holim_uncorrected(shape: FinCat, f: Diagram, cap_out: int | None = None):
    """Uncorrected homotopy limit with the Kan-condition caveat report.

    Computed as the totalization of the cosimplicial cobar construction.
    Fibrant replacement is out of reach here, so each value's failure to be
    Kan (up to cap - 1) is reported alongside the result.
    """
    c = cosimplicial_cobar(None, shape, f, f.cap)
    result = tot(c, cap_out)
    kan = {d: is_kan_up_to(f.values[d], f.cap - 1) for d in shape.objects}
    return result, kan


def nerve_weight(shape: FinCat, cap: int) -> Diagram:
    """The weight of under-category nerves, contravariant over the shape."""
    op = opposite(shape)
    cats = {d: under_category(shape, d) for d in shape.objects}
    values = {d: nerve(cats[d][0], cap) for d in shape.objects}
    arrows = {}
    for v in op.morphisms:
        d2, d1 = op.source[v], op.target[v]    # v: d1 -> d2 in the base
        src_cat, tgt_cat = cats[d2][0], cats[d1][0]
        omap, mmap = {}, {}
        for o in src_cat.objects:
            e, m = unjid(o)
            omap[o] = jid(e, shape.comp(m, v))
        for mo in src_cat.morphisms:
            g, m1, m2 = unjid(mo)
            mmap[mo] = jid(g, shape.comp(m1, v), shape.comp(m2, v))
        fun = FinFunctor(src_cat, tgt_cat, omap, mmap)
        arrows[v] = nerve_map(fun, cap)
    return make_diagram(op, values, arrows)


def verify_loc_eq_bar(shape: FinCat, f: Diagram, instance: str = "") -> VerificationReport:
    """Weighted form against bar form of the homotopy colimit, exact iso."""
    t0 = time.time()
    weighted = tensor_product(nerve_weight(shape, f.cap), f)
    bar_form = hocolim(shape, f)
    w = is_isomorphic(weighted, bar_form)
    detail = "" if w else _level_mismatch(weighted, bar_form)
    return _report("local-eq-bar", instance, w is not None, ISO, detail, t0)


def _level_mismatch(x, y):
    return (f"levels {[len(x.level(n)) for n in range(x.cap + 1)]} vs "
            f"{[len(y.level(n)) for n in range(y.cap + 1)]}")


# ---------------------------------------------------------------------------
# bar pullout

def bar_weight(g: Diagram, shape: FinCat, hcap: int | None = None) -> Diagram:
    """d |-> realize(B(g, shape, hom(d, -))), contravariant over the shape."""
    from .diagram import corepresentable_diagram
    cap = g.cap
    hcap = cap if hcap is None else hcap
    op = opposite(shape)
    values = {}
    for d in shape.objects:
        values[d] = realize(simplicial_bar(g, shape,
                                           corepresentable_diagram(shape, d, cap), hcap))
    arrows = {}
    for v in op.morphisms:
        d2, d1 = op.source[v], op.target[v]    # v: d1 -> d2 in the base
        comps = []
        for lv in range(min(hcap, cap) + 1):
            t = {}
            for sid in values[d2].level(lv):
                alpha, gv, u = unjid(sid)
                t[sid] = jid(alpha, gv, shape.comp(u, v))
            comps.append(t)
        arrows[v] = make_map(values[d2], values[d1], comps)
    return make_diagram(op, values, arrows)


def verify_bar_pullout(g: Diagram | None, shape: FinCat, f: Diagram,
                       instance: str = "") -> VerificationReport:
    """Both pullout isomorphisms for the two-sided bar, with iso witnesses."""
    t0 = time.time()
    from .diagram import terminal_weight
    if g is None:
        g = terminal_weight(shape, f.cap)
    two_sided = realize(simplicial_bar(g, shape, f, f.cap))
    side1 = tensor_product(g, bar_diagram(shape, f, f.cap))
    side2 = tensor_product(bar_weight(g, shape), f)
    w1 = is_isomorphic(two_sided, side1)
    w2 = is_isomorphic(two_sided, side2)
    ok = w1 is not None and w2 is not None
    detail = "" if ok else f"weight-side {w1 is not None}, diagram-side {w2 is not None}"
    return _report("bar-pullout", instance, ok, ISO, detail, t0)


def enriched_bar_diagram(shape: SSetCat, f: SDiagram, hcap: int) -> SDiagram:
    """d |-> realize(B(hom(-, d), shape, f)) with the postcomposition action."""
    from .barcobar import representable_sweight
    cap = f.cap
    values = {d: realize(enriched_simplicial_bar(representable_sweight(shape, d),
                                                 shape, f, hcap))
              for d in shape.objects}
    actions = {}
    for a in shape.objects:
        for b in shape.objects:
            src = sset_product(shape.homs[(a, b)], values[a])
            comps = []
            for lv in range(min(hcap, cap) + 1):
                t = {}
                for s in src.level(lv):
                    h, sid = unjid(s)
                    parts = unjid(sid)
                    tup, gv, rest = parts[0], parts[1], parts[2:]
                    new_gv = shape.compose_simplices(tup[-1], a, b, lv, h, gv)
                    t[s] = jid(tup, new_gv, *rest)
                comps.append(t)
            actions[(a, b)] = make_map(src, values[b], comps)
    return SDiagram(shape, values, actions)


def enriched_bar_weight(g: SDiagram, shape: SSetCat, hcap: int) -> SDiagram:
    """d |-> realize(B(g, shape, hom(d, -))) with the precomposition action."""
    from .diagram import opposite_scat
    cap = g.cap
    op = opposite_scat(shape)

    def corep(d):
        values = {e: shape.homs[(d, e)] for e in shape.objects}
        actions = {}
        for a in shape.objects:
            for b in shape.objects:
                src = sset_product(shape.homs[(a, b)], values[a])
                comps = []
                for lv in range(cap + 1):
                    t = {}
                    for s in src.level(lv):
                        h, u = unjid(s)
                        t[s] = shape.compose_simplices(d, a, b, lv, h, u)
                    comps.append(t)
                actions[(a, b)] = make_map(src, values[b], comps)
        return SDiagram(shape, values, actions)

    values = {d: realize(enriched_simplicial_bar(g, shape, corep(d), hcap))
              for d in shape.objects}
    actions = {}
    for a in shape.objects:
        for b in shape.objects:
            # contravariant: hom_op(a, b) = hom(b, a) acts by precomposition
            src = sset_product(shape.homs[(b, a)], values[a])
            comps = []
            for lv in range(min(hcap, cap) + 1):
                t = {}
                for s in src.level(lv):
                    h, sid = unjid(s)
                    parts = unjid(sid)
                    tup, gv, mid, u = parts[0], parts[1], parts[2:-1], parts[-1]
                    new_u = shape.compose_simplices(b, a, tup[0], lv, u, h)
                    t[s] = jid(tup, gv, *mid, new_u)
                comps.append(t)
            actions[(a, b)] = make_map(src, values[b], comps)
    return SDiagram(op, values, actions)


def verify_enriched_bar_pullout(g: SDiagram, shape: SSetCat, f: SDiagram,
                                instance: str = "") -> VerificationReport:
    from .diagram import enriched_tensor_product
    t0 = time.time()
    hcap = f.cap
    two_sided = realize(enriched_simplicial_bar(g, shape, f, hcap))
    side1 = enriched_tensor_product(g, enriched_bar_diagram(shape, f, hcap))
    side2 = enriched_tensor_product(enriched_bar_weight(g, shape, hcap), f)
    w1 = is_isomorphic(two_sided, side1)
    w2 = is_isomorphic(two_sided, side2)
    ok = w1 is not None and w2 is not None
    detail = "" if ok else f"weight-side {w1 is not None}, diagram-side {w2 is not None}"
    return _report("bar-pullout", instance, ok, ISO, detail, t0)


# ---------------------------------------------------------------------------
# the generalized-mapping-cylinder replacement diagram

@dataclass(frozen=True)
class QDiagram:
    """The replacement diagram over the truncated category of simplices.

    The value at an n-simplex is the uncorrected homotopy colimit of the
    string restricted along it, in the under-category weighted form; delta
    collapses the cylinders onto the string's last value.
    """
    bundle: SimplexCatBundle
    diagram: Diagram
    source: Diagram


def string_functor(shape: FinCat, alpha: str, n: int) -> FinFunctor:
    """An n-simplex of the nerve as a functor from the linear order [n]."""
    lin = linear_category(n)
    objs = string_objects(shape, alpha)
    _, arrows = string_parts(alpha)
    omap = {str(i): objs[i] for i in range(n + 1)}
    mmap = {}
    for i in range(n + 1):
        for j in range(i, n + 1):
            mmap[f"a{i}{j}"] = shape.comp_chain(arrows[i:j], at=objs[i])
    return FinFunctor(lin, shape, omap, mmap)


def dhks_q(f: Diagram, cap: int | None = None) -> QDiagram:
    shape = f.shape
    cap = f.cap if cap is None else cap
    bundle = simplex_category_of_nerve(shape, cap)
    cat = bundle.cat
    values, parts = {}, {}
    for alpha in cat.objects:
        n = bundle.pi[alpha]
        alpha_fun = string_functor(shape, alpha, n)
        restricted = restrict(alpha_fun, f)
        val, injs = tensor_product_with_injections(
            nerve_weight(alpha_fun.domain, f.cap), restricted)
        values[alpha] = val
        parts[alpha] = injs
    arrows = {}
    for mid in cat.morphisms:
        phi_vals, alpha = unjid(mid)
        phi = tuple(phi_vals)
        beta = cat.source[mid]
        m, n = len(phi) - 1, bundle.pi[alpha]
        comps = []
        for lv in range(f.cap + 1):
            t = {}
            for sid in values[beta].level(lv):
                i_obj, pair = unjid(sid)
                w, xv = unjid(pair)
                i = int(i_obj)
                new_w = _push_under_nerve_simplex(phi, m, n, w, lv)
                t[sid] = parts[alpha][str(phi[i])].comps[lv][jid(new_w, xv)]
            comps.append(t)
        arrows[mid] = make_map(values[beta], values[alpha], comps)
    dgm = make_diagram(cat, values, arrows, check_composites=(cap <= 3))
    return QDiagram(bundle, dgm, f)


def _push_under_nerve_simplex(phi, m, n, w, lv):
    """Image of an under-category nerve simplex of [m] under phi: [m] -> [n].

    w is a string id in the nerve of (i | [m]); entries are morphisms of the
    comma category over the linear order, pushed along phi objectwise.
    """
    src_obj, comma_arrows = string_parts(w)

    def push_obj(o):
        ee, mmm = unjid(o)
        return jid(str(phi[int(ee)]), _push_m(mmm, phi))

    def push_arrow(a):
        g, m1, m2 = unjid(a)
        return jid(_push_m(g, phi), _push_m(m1, phi), _push_m(m2, phi))

    new_src = push_obj(src_obj)
    new_arrows = [push_arrow(a) for a in comma_arrows]
    return string_id(new_src, new_arrows)


def _push_m(m1, phi):
    i2, j2 = int(m1[1]), int(m1[2])
    return f"a{phi[i2]}{phi[j2]}"


def dhks_delta(q: QDiagram) -> dict[str, SimplicialMap]:
    """The collapse q(alpha) -> f(alpha_n), one map per simplex."""
    f, bundle = q.source, q.bundle
    shape = f.shape
    out = {}
    for alpha in bundle.cat.objects:
        n = bundle.pi[alpha]
        objs = string_objects(shape, alpha)
        _, arrows = string_parts(alpha)
        comps = []
        for lv in range(f.cap + 1):
            t = {}
            for sid in q.diagram.values[alpha].level(lv):
                i_obj, pair = unjid(sid)
                _, xv = unjid(pair)
                i = int(i_obj)
                chain = shape.comp_chain(arrows[i:], at=objs[i])
                t[sid] = f.arrows[chain].comps[lv][xv]
            comps.append(t)
        out[alpha] = make_map(q.diagram.values[alpha], f.values[objs[-1]], comps)
    return out


def latching(dgm: Diagram, bundle: SimplexCatBundle, obj: str):
    """Latching object and latching map of a diagram over a simplex category.

    The latching object is the colimit of the diagram over the proper direct
    morphisms into the object; the latching map is the induced comparison.
    """
    if bundle.cat != dgm.shape:
        raise NoReedyData("diagram does not live over the bundle's category")
    degree, classify = reedy_degree_data(bundle)
    cat = bundle.cat
    incoming = [m for m in cat.morphisms
                if cat.target[m] == obj and classify[m]["direct"]
                and m != cat.identity[obj]]
    parts = {m: dgm.values[cat.source[m]] for m in incoming}
    total, injections = coproduct_many(parts, cap=dgm.cap)
    pairs = []
    directs = set(m for m in cat.morphisms
                  if classify[m]["direct"] and m != cat.identity[cat.source[m]])
    for m1 in incoming:
        for gamma in directs:
            if cat.target[gamma] != cat.source[m1]:
                continue
            m0 = cat.compose[(m1, gamma)]
            if m0 not in parts:
                continue
            move = dgm.arrows[gamma]
            for lv in range(dgm.cap + 1):
                for s in dgm.values[cat.source[m0]].level(lv):
                    pairs.append((lv, injections[m0].comps[lv][s],
                                  injections[m1].comps[lv][move.comps[lv][s]]))
    latch, proj = quotient(total, pairs)
    comps = []
    for lv in range(dgm.cap + 1):
        t = {}
        for s in latch.level(lv):
            m1, x = unjid(s)
            t[s] = dgm.arrows[m1].comps[lv][x]
        comps.append(t)
    latch_map = make_map(latch, dgm.values[obj], comps)
    return latch, latch_map


def is_reedy_cofibrant(dgm: Diagram, bundle: SimplexCatBundle) -> list[str]:
    """Objects whose latching map fails to be a levelwise injection."""
    bad = []
    for obj in bundle.cat.objects:
        _, lmap = latching(dgm, bundle, obj)
        if not lmap.is_injective():
            bad.append(obj)
    return bad


def latching_simpobj(b: SimpObj, n: int):
    """Latching object of a simplicial object at horizontal level n."""
    epis = [tuple(phi) for m in range(n) for phi in monotone_maps(n, m)
            if set(phi) == set(range(m + 1))]
    parts = {jid(list(phi)): b.column(len(set(phi)) - 1) for phi in epis}
    total, injections = coproduct_many(parts, cap=b.cap)
    pairs = []
    for sigma in epis:
        m1 = len(set(sigma)) - 1
        for sigma2 in epis:
            m2 = len(set(sigma2)) - 1
            if m2 < m1:
                continue
            for rho in monotone_maps(m2, m1):
                if set(rho) != set(range(m1 + 1)):
                    continue
                if tuple(rho[v] for v in sigma2) != sigma:
                    continue
                move = horizontal_operator(b, tuple(rho), m1)
                for lv in range(b.cap + 1):
                    for s in b.column(m1).level(lv):
                        pairs.append((lv, injections[jid(list(sigma))].comps[lv][s],
                                      injections[jid(list(sigma2))].comps[lv][move.comps[lv][s]]))
    latch, _ = quotient(total, pairs)
    comps = []
    for lv in range(b.cap + 1):
        t = {}
        for s in latch.level(lv):
            sigma_id, x = unjid(s)
            sigma = tuple(unjid(sigma_id))
            move = horizontal_operator(b, sigma, max(sigma))
            t[s] = move.comps[lv][x]
        comps.append(t)
    return latch, make_map(latch, b.column(n), comps)


def is_reedy_cofibrant_simpobj(b: SimpObj, up_to: int | None = None) -> list[int]:
    """Horizontal levels <= up_to whose latching map is not injective."""
    up_to = b.hcap if up_to is None else min(up_to, b.hcap)
    bad = []
    for n in range(up_to + 1):
        _, lmap = latching_simpobj(b, n)
        if not lmap.is_injective():
            bad.append(n)
    return bad


def verify_dhks(f: Diagram, instance: str = "", cap: int | None = None) -> VerificationReport:
    """The replacement-category comparison: the colimit of the cylinder
    diagram over the truncated category of simplices agrees with the bar
    homotopy colimit, the cylinder diagram is Reedy cofibrant, and the
    collapse maps are homology isomorphisms."""
    t0 = time.time()
    q = dhks_q(f, cap)
    colim_q, _ = sset_colimit(q.bundle.cat, q.diagram)
    hoco = hocolim(f.shape, f)
    w1 = is_isomorphic(colim_q, hoco)
    lan_t = lan(q.bundle.t, q.diagram)
    colim_lan, _ = sset_colimit(f.shape, lan_t.diagram)
    w2 = is_isomorphic(colim_lan, hoco)
    bad_latch = is_reedy_cofibrant(q.diagram, q.bundle)
    delta = dhks_delta(q)
    bad_delta = [alpha for alpha, m in delta.items()
                 if not is_homology_iso(m, f.cap - 1)]
    ok = w1 is not None and w2 is not None and not bad_latch and not bad_delta
    detail = "" if ok else (f"colim-iso {w1 is not None}, lan-iso {w2 is not None}, "
                            f"latching failures {bad_latch[:3]}, "
                            f"delta failures {bad_delta[:3]}")
    return _report("cylinder-replacement", instance, ok, ISO, detail, t0)


# ---------------------------------------------------------------------------
# fibers of nerve maps and the Kan-extension lemmas

def lambda_fiber(h: FinFunctor, alpha: str, cap: int) -> TruncSSet:
    """The fiber of the nerve of h over a simplex, as an explicit pullback."""
    from .nerve import operator_action
    nd = nerve(h.codomain, cap)
    ne = nerve(h.domain, cap)
    nh = nerve_map(h, cap)
    n = len(unjid(alpha)) - 1
    simp = standard_simplex(n, cap)
    comps = []
    for k in range(cap + 1):
        t = {}
        for c in simp.level(k):
            t[c] = operator_action(nd, tuple(unjid(c)), alpha, n)
        comps.append(t)
    classifying = make_map(simp, nd, comps)
    fiber, _, _ = pullback(classifying, nh)
    return fiber


def lambda_fiber_diagram(h: FinFunctor, bundle: SimplexCatBundle, cap: int) -> Diagram:
    """The fibers of the nerve of h assembled over the category of simplices."""
    values = {alpha: lambda_fiber(h, alpha, cap) for alpha in bundle.cat.objects}
    arrows = {}
    for mid in bundle.cat.morphisms:
        phi_vals, alpha = unjid(mid)
        phi = tuple(phi_vals)
        beta = bundle.cat.source[mid]
        comps = []
        for k in range(cap + 1):
            t = {}
            for s in values[beta].level(k):
                c, tau = unjid(s)
                c_vals = unjid(c)
                new_c = jid(*[phi[v] for v in c_vals])
                t[s] = jid(new_c, tau)
            comps.append(t)
        arrows[mid] = make_map(values[beta], values[alpha], comps)
    return make_diagram(bundle.cat, values, arrows,
                        check_composites=(bundle.cap <= 3))


def lambda2(shape: FinCat, alpha: str, beta: str, cap: int) -> TruncSSet:
    """Pullback of two nerve simplices over the nerve."""
    from .nerve import operator_action
    nd = nerve(shape, cap)
    out = []
    n, m = len(unjid(alpha)) - 1, len(unjid(beta)) - 1
    simp_a, simp_b = standard_simplex(n, cap), standard_simplex(m, cap)

    def classifying(simp, dim, x):
        comps = []
        for k in range(cap + 1):
            t = {}
            for c in simp.level(k):
                t[c] = operator_action(nd, tuple(unjid(c)), x, dim)
            comps.append(t)
        return make_map(simp, nd, comps)

    fiber, _, _ = pullback(classifying(simp_a, n, alpha), classifying(simp_b, m, beta))
    return fiber


def under_comma_nerve_diagram(h: FinFunctor, cap: int) -> Diagram:
    """d |-> nerve(d | h), contravariant over the codomain of h."""
    shape = h.codomain
    op = opposite(shape)
    cats = {d: under_comma(h, d) for d in shape.objects}
    values = {d: nerve(cats[d][0], cap) for d in shape.objects}
    arrows = {}
    for v in op.morphisms:
        d2, d1 = op.source[v], op.target[v]    # v: d1 -> d2 in the base
        src_cat, tgt_cat = cats[d2][0], cats[d1][0]
        omap, mmap = {}, {}
        for o in src_cat.objects:
            e, m = unjid(o)
            omap[o] = jid(e, shape.comp(m, v))
        for mo in src_cat.morphisms:
            g, m1, m2 = unjid(mo)
            mmap[mo] = jid(g, shape.comp(m1, v), shape.comp(m2, v))
        fun = FinFunctor(src_cat, tgt_cat, omap, mmap)
        arrows[v] = nerve_map(fun, cap)
    return make_diagram(op, values, arrows)


def natural_objectwise_iso(d1: Diagram, d2: Diagram) -> dict[str, object] | None:
    """Objectwise isomorphism witnesses (naturality is reported separately)."""
    out = {}
    for d in d1.shape.objects:
        w = is_isomorphic(d1.values[d], d2.values[d])
        if w is None:
            return None
        out[d] = w
    return out


def verify_lan_comma(h: FinFunctor, cap: int, instance: str = "") -> VerificationReport:
    """Left Kan extension of the nerve fibers along the source labeling
    recovers the under-comma nerve weight, objectwise by explicit iso."""
    t0 = time.time()
    shape = h.codomain
    bundle_op = simplex_category_of_nerve(shape, cap, op=True)
    s_op = opposite_functor(bundle_op.s)
    bundle = simplex_category_of_nerve(shape, cap)
    # the opposite of the op-orientation simplex category is the plain one,
    # so the fiber diagram can be extended along the opposed source labeling
    lam = lambda_fiber_diagram(h, bundle, cap)
    extension = lan(s_op, Diagram(s_op.domain, lam.values, lam.arrows))
    wanted = under_comma_nerve_diagram(h, cap)
    ws = natural_objectwise_iso(extension.diagram, wanted)
    return _report("kan-comma", instance, ws is not None, ISO,
                   "" if ws else "objectwise iso missing", t0)


def verify_lan_comma2(shape: FinCat, cap: int, instance: str = "") -> VerificationReport:
    """Colimit of the two-sided fibers over the first variable recovers the
    standard simplex of the second, one iso per simplex."""
    t0 = time.time()
    bundle = simplex_category_of_nerve(shape, cap)
    cat = bundle.cat
    failures = []
    for beta in cat.objects:
        m = bundle.pi[beta]
        values, arrows = {}, {}
        for alpha in cat.objects:
            values[alpha] = lambda2(shape, alpha, beta, cap)
        for mid in cat.morphisms:
            phi_vals, alpha = unjid(mid)
            phi = tuple(phi_vals)
            src = cat.source[mid]
            comps = []
            for k in range(cap + 1):
                t = {}
                for s in values[src].level(k):
                    c, c2 = unjid(s)
                    t[s] = jid(jid(*[phi[v] for v in unjid(c)]), c2)
                comps.append(t)
            arrows[mid] = make_map(values[src], values[alpha], comps)
        dgm = make_diagram(cat, values, arrows, check_composites=False)
        from .simpset import colimit as sset_colimit
        col, _ = sset_colimit(cat, dgm)
        if is_isomorphic(col, standard_simplex(m, cap)) is None:
            failures.append(beta)
    return _report("kan-comma-colim", instance, not failures, ISO,
                   f"failures at {failures[:3]}" if failures else "", t0)


def verify_lan_adjt(k: FinFunctor, g: Diagram, f: Diagram,
                    instance: str = "") -> VerificationReport:
    """Tensoring against a left Kan extended weight agrees with restricting
    the diagram: exact iso on finite instances."""
    t0 = time.time()
    extension = lan(opposite_functor(k), g)
    left = tensor_product(extension.diagram, f)
    right = tensor_product(g, restrict(k, f))
    w = is_isomorphic(left, right)
    return _report("kan-tensor", instance, w is not None, ISO,
                   "" if w else _level_mismatch(left, right), t0)


# ---------------------------------------------------------------------------
# homotopy coends and homotopy Kan extensions

def hocoend(shape: FinCat, h: Diagram, instance: str = "",
            hcap: int | None = None):
    """Homotopy coend, computed both in full and cyclic form.

    Returns (full, cyclic, report): the report asserts homology agreement up
    to cap - 1 between the two constructions.
    """
    t0 = time.time()
    cap = h.cap
    hcap = cap if hcap is None else hcap
    full = realize(simplicial_bar(hom_weight(shape, cap), coend_shape(shape), h, hcap))
    scat = discrete_scat(shape, cap)
    h_enr = discrete_sdiagram(h)
    h_pair = _rehome_pair_sdiagram(h_enr, scat)
    cyclic = realize(cyclic_bar(scat, h_pair, hcap))
    degrees = range(cap)
    ok = all(homology(full, kk) == homology(cyclic, kk) for kk in degrees)
    report = _report("hocoend-forms", instance, ok, HWIT,
                     "" if ok else "homology mismatch between full and cyclic", t0)
    return full, cyclic, report


def _rehome_pair_sdiagram(h_enr: SDiagram, scat: SSetCat) -> SDiagram:
    """Rebuild a discretely enriched bifunctor over the enriched pair shape."""
    from .diagram import opposite_scat, tensor_scat
    pair = tensor_scat(opposite_scat(scat), scat)
    return SDiagram(pair, dict(h_enr.values), dict(h_enr.actions))


def h_lan(k: FinFunctor, f: Diagram, hcap: int | None = None) -> Diagram:
    """Homotopy left Kan extension: bar construction against the
    codomain-hom weight, assembled covariantly over the codomain."""
    shape, e_cat = f.shape, k.codomain
    cap = f.cap
    hcap = cap if hcap is None else hcap
    op = opposite(shape)

    def weight_at(e):
        from .simpset import discrete_sset
        values = {d: discrete_sset(e_cat.hom(k.omap[d], e), cap) for d in shape.objects}
        arrows = {}
        for v in op.morphisms:
            d2, d1 = op.source[v], op.target[v]
            comp = {u: e_cat.comp(u, k.mmap[v]) for u in e_cat.hom(k.omap[d2], e)}
            arrows[v] = make_map(values[d2], values[d1],
                                 [dict(comp) for _ in range(cap + 1)])
        return make_diagram(op, values, arrows)

    values = {e: realize(simplicial_bar(weight_at(e), shape, f, hcap))
              for e in e_cat.objects}
    arrows = {}
    for g in e_cat.morphisms:
        e1, e2 = e_cat.source[g], e_cat.target[g]
        comps = []
        for lv in range(min(hcap, cap) + 1):
            t = {}
            for sid in values[e1].level(lv):
                alpha, u, xv = unjid(sid)
                t[sid] = jid(alpha, e_cat.comp(g, u), xv)
            comps.append(t)
        arrows[g] = make_map(values[e1], values[e2], comps)
    return make_diagram(e_cat, values, arrows)


# ---------------------------------------------------------------------------
# homotopy invariance

@dataclass(frozen=True)
class HomotopyWitness:
    """A simplicial homotopy start ~ end between maps x -> y."""
    start: SimplicialMap
    end: SimplicialMap
    homotopy: SimplicialMap       # x times Delta^1 -> y

    def validate(self) -> None:
        x = self.start.source
        cap = x.cap
        interval = standard_simplex(1, cap)
        for vertex, claimed in ((0, self.start), (1, self.end)):
            vid = interval.level(0)[vertex]
            incl = pair_map(identity_map(x),
                            compose_maps(vertex_inclusion(interval, vid),
                                         _collapse_to_point(x)))
            got = compose_maps(self.homotopy, incl)
            if got.comps != claimed.comps:
                raise WitnessInvalid(f"homotopy endpoint {vertex} mismatch")


def _collapse_to_point(x: TruncSSet) -> SimplicialMap:
    pt = terminal_sset(x.cap)
    return make_map(x, pt, [{s: pt.level(n)[0] for s in x.level(n)}
                            for n in range(x.cap + 1)])


def _comps_key(m: SimplicialMap):
    return tuple(tuple(sorted(c.items())) for c in m.comps)


def simplex_contraction(k: int, cap: int) -> HomotopyWitness:
    """The contraction of the standard k-simplex onto its first vertex.

    H(c, b)_i = c_i * b_i: constant at the interval's 0 end, the identity at
    the 1 end.
    """
    from .fincat import jid as _jid
    from .simpset import constant_map, product
    simp = standard_simplex(k, cap)
    interval = standard_simplex(1, cap)
    prod = product(simp, interval)
    comps = []
    for n in range(cap + 1):
        t = {}
        for s in prod.level(n):
            c, b = unjid(s)
            cv, bv = unjid(c), unjid(b)
            t[s] = _jid(*[cv[i] * bv[i] for i in range(n + 1)])
        comps.append(t)
    hmap = make_map(prod, simp, comps)
    vertex0 = _jid(0)
    from .simpset import constant_map as _cm
    return HomotopyWitness(_cm(simp, simp, vertex0), identity_map(simp), hmap)


def search_contraction(x: TruncSSet, vertex: str) -> HomotopyWitness:
    """A homotopy joining the identity and the collapse onto a vertex, found
    by exhaustive search in either direction; raises WitnessInvalid if none.
    """
    from .simpset import constant_map, enumerate_simplicial_maps, product
    const = constant_map(x, x, vertex)
    prod = product(x, standard_simplex(1, x.cap))
    ident = identity_map(x)
    for h in enumerate_simplicial_maps(prod, x):
        for start, end in ((ident, const), (const, ident)):
            try:
                cand = HomotopyWitness(start, end, h)
                cand.validate()
                return cand
            except WitnessInvalid:
                continue
    raise WitnessInvalid(f"no contraction of the space onto {vertex} found")


@dataclass(frozen=True)
class ObjectwiseEquivalence:
    """A natural map with objectwise homotopy-equivalence witnesses."""
    fwd: dict[str, SimplicialMap]
    back: dict[str, SimplicialMap]
    back_fwd: dict[str, HomotopyWitness]      # id ~ back . fwd on source values
    fwd_back: dict[str, HomotopyWitness]      # id ~ fwd . back on target values

    def validate(self, f: Diagram, f2: Diagram) -> None:
        shape = f.shape
        for u in shape.morphisms:
            d, d2 = shape.source[u], shape.target[u]
            left = compose_maps(f2.arrows[u], self.fwd[d])
            right = compose_maps(self.fwd[d2], f.arrows[u])
            if left.comps != right.comps:
                raise WitnessInvalid(f"forward map not natural at {u}")
        for d in f.shape.objects:
            bf = self.back_fwd[d]
            bf.validate()
            want = compose_maps(self.back[d], self.fwd[d])
            ends = {_comps_key(bf.start), _comps_key(bf.end)}
            if ends != {_comps_key(identity_map(f.values[d])), _comps_key(want)}:
                raise WitnessInvalid(f"roundtrip witness at {d} does not join id and back.fwd")
            fb = self.fwd_back[d]
            fb.validate()
            want = compose_maps(self.fwd[d], self.back[d])
            ends = {_comps_key(fb.start), _comps_key(fb.end)}
            if ends != {_comps_key(identity_map(f2.values[d])), _comps_key(want)}:
                raise WitnessInvalid(f"roundtrip witness at {d} does not join id and fwd.back")


def hocolim_induced_map(shape: FinCat, f: Diagram, f2: Diagram,
                        fwd: dict[str, SimplicialMap]) -> SimplicialMap:
    """The map of bar homotopy colimits induced by objectwise components."""
    src, tgt = hocolim(shape, f), hocolim(shape, f2)
    comps = []
    for lv in range(src.cap + 1):
        t = {}
        for sid in src.level(lv):
            alpha, gv, xv = unjid(sid)
            a0 = string_objects(shape, alpha)[0]
            t[sid] = jid(alpha, gv, fwd[a0].comps[lv][xv])
        comps.append(t)
    return make_map(src, tgt, comps)


def homotopy_invariance_test(shape: FinCat, f: Diagram, f2: Diagram,
                             phi: ObjectwiseEquivalence,
                             instance: str = "") -> VerificationReport:
    """Objectwise homotopy equivalences induce a homology isomorphism of
    homotopy colimits (every value is cofibrant, so no correction applies)."""
    t0 = time.time()
    phi.validate(f, f2)
    induced = hocolim_induced_map(shape, f, f2, phi.fwd)
    ok = is_homology_iso(induced, f.cap - 1)
    return _report("homotopy-invariance", instance, ok, SHE,
                   "" if ok else "induced map is not a homology isomorphism", t0)


# ---------------------------------------------------------------------------
# bar against Kan extension

def verify_bar_eq_lan(shape: FinCat, f: Diagram, instance: str = "") -> VerificationReport:
    """The columns of the one-sided bar agree with the left Kan extension of
    the source-restricted diagram along the dimension labeling, levelwise."""
    t0 = time.time()
    cap = f.cap
    bundle_op = simplex_category_of_nerve(shape, cap, op=True)
    delta_op = opposite(delta_category(cap))
    omap = {alpha: str(bundle_op.pi[alpha]) for alpha in bundle_op.cat.objects}
    mmap = {}
    for mid in bundle_op.cat.morphisms:
        phi_vals, x = unjid(mid)
        mmap[mid] = jid(len(phi_vals) - 1, bundle_op.pi[x], phi_vals)
    sigma = FinFunctor(bundle_op.cat, delta_op, omap, mmap)
    s_star_f = restrict(bundle_op.s, f)
    extension = lan(sigma, s_star_f)
    bar = simplicial_bar(None, shape, f, cap)
    failures = []
    for n in range(cap + 1):
        w = is_isomorphic(extension.diagram.values[str(n)], bar.column(n))
        if w is None:
            failures.append(n)
    return _report("bar-eq-kan", instance, not failures, ISO,
                   f"level failures {failures}" if failures else "", t0)
