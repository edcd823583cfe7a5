"""Diagrams of truncated simplicial sets and their weighted (co)limits.

Weights over the opposite shape are stored as ordinary diagrams over
`opposite(shape)`; there is no variance flag anywhere.  Tensor products are
computed as explicit coequalizers, cotensor products as equalizers of
mapping spaces.  Enriched shapes are simplicially enriched categories with
finite hom simplicial sets.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .fincat import (
    FinCat, FinFunctor, comma_graph, jid, opposite, product as cat_product,
    unjid, under_comma,
)
from .simpset import (
    CapMismatch, SimplicialMap, TruncSSet, compose_maps, coproduct_many,
    discrete_sset, enumerate_simplicial_maps, identity_map,
    limit as sset_limit, make_map, make_sset, mapping_space,
    product as sset_product, product_map, quotient, colimit as sset_colimit,
    standard_simplex, terminal_sset,
)


class ShapeMismatch(Exception):
    pass


@dataclass(frozen=True)
class Diagram:
    """A functor from a FinCat to truncated simplicial sets."""

    shape: FinCat
    values: dict[str, TruncSSet]
    arrows: dict[str, SimplicialMap]

    def value(self, d: str) -> TruncSSet:
        return self.values[d]

    def arrow(self, f: str) -> SimplicialMap:
        return self.arrows[f]

    @property
    def cap(self) -> int:
        return next(iter(self.values.values())).cap

    def validate(self, composites: bool = True) -> None:
        caps = {x.cap for x in self.values.values()}
        if len(caps) > 1:
            raise CapMismatch("diagram values have non-uniform caps")
        for d in self.shape.objects:
            if d not in self.values:
                raise ShapeMismatch(f"no value at object {d}")
        for f in self.shape.morphisms:
            m = self.arrows.get(f)
            if m is None:
                raise ShapeMismatch(f"no map at morphism {f}")
            if m.source != self.values[self.shape.source[f]] or \
                    m.target != self.values[self.shape.target[f]]:
                raise ShapeMismatch(f"map at {f} has wrong endpoints")
        for d in self.shape.objects:
            if self.arrows[self.shape.identity[d]] != identity_map(self.values[d]):
                raise ShapeMismatch(f"identity at {d} not sent to the identity map")
        if composites:
            for (g, f), h in self.shape.compose.items():
                if compose_maps(self.arrows[g], self.arrows[f]) != self.arrows[h]:
                    raise ShapeMismatch(f"composite ({g}, {f}) not preserved")


def make_diagram(shape: FinCat, values: dict[str, TruncSSet],
                 arrows: dict[str, SimplicialMap] | None = None,
                 check_composites: bool = True) -> Diagram:
    """Build a diagram; identity maps are filled in automatically."""
    arrows = dict(arrows or {})
    for d in shape.objects:
        arrows.setdefault(shape.identity[d], identity_map(values[d]))
    dgm = Diagram(shape, dict(values), arrows)
    dgm.validate(composites=check_composites)
    return dgm


def constant_diagram(shape: FinCat, x: TruncSSet) -> Diagram:
    return make_diagram(shape, {d: x for d in shape.objects},
                        {f: identity_map(x) for f in shape.morphisms})


def terminal_weight(shape: FinCat, cap: int) -> Diagram:
    """The weight constant at the point, over the opposite shape."""
    return constant_diagram(opposite(shape), terminal_sset(cap))


def representable_weight(shape: FinCat, d: str, cap: int) -> Diagram:
    """The discrete weight D(-, d) over the opposite shape."""
    op = opposite(shape)
    values = {e: discrete_sset(shape.hom(e, d), cap) for e in shape.objects}
    arrows = {}
    for f in op.morphisms:
        # f: d2 -> d1 in the base shape acts by precomposition u |-> u . f
        d1, d2 = op.source[f], op.target[f]
        comp = {u: shape.comp(u, f) for u in shape.hom(d1, d)}
        arrows[f] = make_map(values[d1], values[d2],
                             [dict(comp) for _ in range(cap + 1)])
    return make_diagram(op, values, arrows)


def corepresentable_diagram(shape: FinCat, d: str, cap: int) -> Diagram:
    """The discrete diagram D(d, -) over the shape."""
    values = {e: discrete_sset(shape.hom(d, e), cap) for e in shape.objects}
    arrows = {}
    for f in shape.morphisms:
        d1, d2 = shape.source[f], shape.target[f]
        comp = {u: shape.comp(f, u) for u in shape.hom(d, d1)}
        arrows[f] = make_map(values[d1], values[d2],
                             [dict(comp) for _ in range(cap + 1)])
    return make_diagram(shape, values, arrows)


def restrict(k: FinFunctor, f: Diagram) -> Diagram:
    """Precompose a diagram with a functor."""
    if f.shape != k.codomain:
        raise ShapeMismatch("restriction along a functor into a different shape")
    return Diagram(k.domain,
                   {d: f.values[k.omap[d]] for d in k.domain.objects},
                   {m: f.arrows[k.mmap[m]] for m in k.domain.morphisms})


def colimit(shape: FinCat, dgm: Diagram):
    return sset_colimit(shape, dgm)


def limit(shape: FinCat, dgm: Diagram):
    return sset_limit(shape, dgm)


def tensor_product(g: Diagram, f: Diagram) -> TruncSSet:
    """Tensor product of functors: coequalize the weighted action maps.

    g is a weight over opposite(shape of f); the result glues g(d) x f(d)
    along (g . u, x) ~ (g, u . x) for every arrow u of the shape.
    """
    return tensor_product_with_injections(g, f)[0]


def tensor_product_with_injections(g: Diagram, f: Diagram):
    shape = f.shape
    if g.shape != opposite(shape):
        raise ShapeMismatch("weight is not over the opposite of the diagram shape")
    if g.cap != f.cap:
        raise CapMismatch("weight and diagram have different caps")
    parts = {d: sset_product(g.values[d], f.values[d]) for d in shape.objects}
    total, injections = coproduct_many(parts)
    pairs = []
    for u in shape.morphisms:
        if shape.is_identity(u):
            continue
        d, d2 = shape.source[u], shape.target[u]
        gmap = g.arrows[u]     # g(d2) -> g(d)
        fmap = f.arrows[u]     # f(d) -> f(d2)
        for n in range(f.cap + 1):
            for gv in g.values[d2].level(n):
                for xv in f.values[d].level(n):
                    left = injections[d].comps[n][jid(gmap.comps[n][gv], xv)]
                    right = injections[d2].comps[n][jid(gv, fmap.comps[n][xv])]
                    pairs.append((n, left, right))
    q, proj = quotient(total, pairs)
    return q, {d: compose_maps(proj, injections[d]) for d in shape.objects}


def cotensor_product(g: Diagram, f: Diagram, cap_out: int | None = None) -> TruncSSet:
    """Cotensor product of functors over a common shape.

    The equalizer of prod_d Map(g d, f d) over the two weighted action maps;
    level 0 is exactly the set of natural families.
    """
    shape = f.shape
    if g.shape != shape:
        raise ShapeMismatch("cotensor weight must live over the diagram shape")
    if g.cap != f.cap:
        raise CapMismatch("weight and diagram have different caps")
    spaces = {d: mapping_space(g.values[d], f.values[d], cap_out) for d in shape.objects}
    return _equalized_family_space(shape, g, f, spaces)


def _equalized_family_space(shape, g, f, spaces) -> TruncSSet:
    objs = sorted(shape.objects)
    cap_out = spaces[objs[0]].space.cap if objs else 0
    arrows = [(u, shape.source[u], shape.target[u])
              for u in shape.morphisms if not shape.is_identity(u)]

    def compatible(n, fam):
        for u, d, d2 in arrows:
            # postcompose f(u) with the component at d
            left = compose_maps(f.arrows[u], fam[d])
            # precompose g(u) x id with the component at d2
            gx = _product_precompose(g.arrows[u], fam[d2], n)
            if left.comps != gx.comps:
                return False
        return True

    levels, members = [], []
    for n in range(cap_out + 1):
        fams = []
        for combo in itertools.product(*(sorted(spaces[d].elements[n]) for d in objs)):
            fam = {d: spaces[d].elements[n][mid] for d, mid in zip(objs, combo)}
            if compatible(n, fam):
                fams.append((combo, fam))
        members.append(fams)
        levels.append([jid(*combo) for combo, _ in fams])
    faces, degens = {}, {}
    for n in range(1, cap_out + 1):
        for i in range(n + 1):
            table = {}
            for combo, fam in members[n]:
                img = [spaces[d].space.face(n, i, mid) for d, mid in zip(objs, combo)]
                table[jid(*combo)] = jid(*img)
            faces[(n, i)] = table
    for n in range(cap_out):
        for i in range(n + 1):
            table = {}
            for combo, fam in members[n]:
                img = [spaces[d].space.degen(n, i, mid) for d, mid in zip(objs, combo)]
                table[jid(*combo)] = jid(*img)
            degens[(n, i)] = table
    exact = min((spaces[d].space.exact_to for d in objs), default=cap_out)
    return make_sset(cap_out, levels, faces, degens, exact_to=exact)


def _product_precompose(gmap: SimplicialMap, elem: SimplicialMap, n: int) -> SimplicialMap:
    """Precompose an element of Map(a, x) at level n with gmap: b -> a.

    elem is a map a x Delta^n -> x; the result is the map b x Delta^n -> x.
    """
    simp = standard_simplex(n, gmap.source.cap)
    lift = product_map(gmap, identity_map(simp))
    return compose_maps(elem, lift)


def natural_transformations(f1: Diagram, f2: Diagram) -> list[dict[str, SimplicialMap]]:
    """All natural transformations f1 -> f2, as per-object component maps."""
    if f1.shape != f2.shape:
        raise ShapeMismatch("transformation between diagrams of different shapes")
    shape = f1.shape
    objs = sorted(shape.objects)
    pools = [enumerate_simplicial_maps(f1.values[d], f2.values[d]) for d in objs]
    arrows = [(u, shape.source[u], shape.target[u])
              for u in shape.morphisms if not shape.is_identity(u)]
    out = []
    for combo in itertools.product(*pools):
        fam = dict(zip(objs, combo))
        if all(compose_maps(f2.arrows[u], fam[d]).comps ==
               compose_maps(fam[d2], f1.arrows[u]).comps
               for u, d, d2 in arrows):
            out.append(fam)
    return out


def nat_transf_object(f1: Diagram, f2: Diagram, cap_out: int | None = None) -> TruncSSet:
    """The simplicial set of natural transformations f1 -> f2.

    Computed as the equalizer of the mapping-space product over the action
    maps; level 0 is exactly the set of natural transformations.
    """
    if f1.shape != f2.shape:
        raise ShapeMismatch("transformation object between different shapes")
    spaces = {d: mapping_space(f1.values[d], f2.values[d], cap_out)
              for d in f1.shape.objects}
    return _equalized_family_space(f1.shape, f1, f2, spaces)


# ---------------------------------------------------------------------------
# Kan extensions

@dataclass(frozen=True)
class KanExtension:
    diagram: Diagram
    unit: dict[str, SimplicialMap]       # F(d) -> Lan(K d), or counit for Ran
    comma_injections: dict[str, dict[str, SimplicialMap]]


def lan(k: FinFunctor, f: Diagram) -> KanExtension:
    """Left Kan extension along k: colimits over the comma categories (k | e)."""
    if f.shape != k.domain:
        raise ShapeMismatch("diagram shape must be the functor domain")
    e_cat = k.codomain
    values, injections = {}, {}
    for e in e_cat.objects:
        cm = comma_graph(k, e)
        dgm = Diagram(cm, {o: f.values[cm.proj_obj[o]] for o in cm.objects},
                      {m: f.arrows[cm.proj_mor[m]] for m in cm.source})
        val, inj = sset_colimit(cm, dgm, cap=f.cap)
        values[e] = val
        injections[e] = inj
    arrows = {}
    cap = f.cap
    for g in e_cat.morphisms:
        e1, e2 = e_cat.source[g], e_cat.target[g]
        comps = []
        for n in range(cap + 1):
            table = {}
            for s in values[e1].level(n):
                # class representatives are tagged ids (comma object, simplex)
                ob, x = unjid(s)
                d, m = unjid(ob)
                ob2 = jid(d, e_cat.comp(g, m))
                table[s] = injections[e2][ob2].comps[n][x]
            comps.append(table)
        arrows[g] = make_map(values[e1], values[e2], comps)
    dgm_out = make_diagram(e_cat, values, arrows)
    unit = {d: injections[k.omap[d]][jid(d, e_cat.identity[k.omap[d]])]
            for d in k.domain.objects}
    return KanExtension(dgm_out, unit, injections)


def ran(k: FinFunctor, f: Diagram, cap_out: int | None = None) -> KanExtension:
    """Right Kan extension along k: limits over the comma categories (e | k)."""
    if f.shape != k.domain:
        raise ShapeMismatch("diagram shape must be the functor domain")
    e_cat = k.codomain
    values, projections = {}, {}
    for e in e_cat.objects:
        cm, proj = under_comma(k, e)
        dgm = restrict(proj, f)
        val, projs = sset_limit(cm, dgm, cap=f.cap)
        values[e] = val
        projections[e] = projs
    arrows = {}
    cap = f.cap
    for g in e_cat.morphisms:
        e1, e2 = e_cat.source[g], e_cat.target[g]
        cm2, _ = under_comma(k, e2)
        objs2 = sorted(cm2.objects)
        comps = []
        for n in range(cap + 1):
            table = {}
            for s in values[e1].level(n):
                entries = []
                for ob2 in objs2:
                    d, m = unjid(ob2)
                    ob1 = jid(d, e_cat.comp(m, g))
                    entries.append(projections[e1][ob1].comps[n][s])
                table[s] = jid(*entries)
            comps.append(table)
        arrows[g] = make_map(values[e1], values[e2], comps)
    dgm_out = make_diagram(e_cat, values, arrows)
    counit = {d: projections[k.omap[d]][jid(d, e_cat.identity[k.omap[d]])]
              for d in k.domain.objects}
    return KanExtension(dgm_out, counit, projections)


# ---------------------------------------------------------------------------
# coends and ends

def hom_weight(shape: FinCat, cap: int) -> Diagram:
    """The hom bifunctor as a weight for coends.

    Lives over shape x opposite(shape), which is the opposite of the coend
    shape opposite(shape) x shape; its value at (a, b) is Hom(b, a).
    """
    base = cat_product(shape, opposite(shape))
    values, arrows = {}, {}
    for o in base.objects:
        a, b = unjid(o)
        values[o] = discrete_sset(shape.hom(b, a), cap)
    for m in base.morphisms:
        r, s = unjid(m)     # r: a -> a' in shape, s: b' -> b in shape
        o1, o2 = base.source[m], base.target[m]
        a, b = unjid(o1)
        table = {u: shape.comp(shape.comp(r, u), s) for u in shape.hom(b, a)}
        arrows[m] = make_map(values[o1], values[o2],
                             [dict(table) for _ in range(cap + 1)])
    return make_diagram(base, values, arrows)


def cohom_weight(shape: FinCat, cap: int) -> Diagram:
    """The hom bifunctor as a weight for ends, over opposite(shape) x shape."""
    base = cat_product(opposite(shape), shape)
    values, arrows = {}, {}
    for o in base.objects:
        a, b = unjid(o)
        values[o] = discrete_sset(shape.hom(a, b), cap)
    for m in base.morphisms:
        r, s = unjid(m)     # r: a' -> a in shape, s: b -> b' in shape
        o1, o2 = base.source[m], base.target[m]
        a, b = unjid(o1)
        table = {u: shape.comp(shape.comp(s, u), r) for u in shape.hom(a, b)}
        arrows[m] = make_map(values[o1], values[o2],
                             [dict(table) for _ in range(cap + 1)])
    return make_diagram(base, values, arrows)


def coend_shape(shape: FinCat) -> FinCat:
    return cat_product(opposite(shape), shape)


def coend(shape: FinCat, h: Diagram) -> TruncSSet:
    """Coend of a bifunctor over opposite(shape) x shape."""
    if h.shape != coend_shape(shape):
        raise ShapeMismatch("bifunctor must live over opposite(shape) x shape")
    return tensor_product(hom_weight(shape, h.cap), h)


def end(shape: FinCat, h: Diagram, cap_out: int | None = None) -> TruncSSet:
    if h.shape != coend_shape(shape):
        raise ShapeMismatch("bifunctor must live over opposite(shape) x shape")
    return cotensor_product(cohom_weight(shape, h.cap), h, cap_out)


def external_product(g: Diagram, f: Diagram) -> Diagram:
    """The bifunctor (a, b) |-> g(a) x f(b) over opposite(shape) x shape."""
    shape = f.shape
    if g.shape != opposite(shape):
        raise ShapeMismatch("external product of a non-weight")
    base = coend_shape(shape)
    values, arrows = {}, {}
    for o in base.objects:
        a, b = unjid(o)
        values[o] = sset_product(g.values[a], f.values[b])
    for m in base.morphisms:
        r, s = unjid(m)
        arrows[m] = product_map(g.arrows[r], f.arrows[s])
    return make_diagram(base, values, arrows)


# ---------------------------------------------------------------------------
# simplicially enriched shapes

@dataclass(frozen=True)
class SSetCat:
    """A small simplicially enriched category with finite hom objects."""

    objects: tuple[str, ...]
    homs: dict[tuple[str, str], TruncSSet]
    units: dict[str, str]                      # object -> 0-simplex of hom(a, a)
    comps: dict[tuple[str, str, str], SimplicialMap]
    # comps[(a, b, c)]: hom(b, c) x hom(a, b) -> hom(a, c)

    @property
    def cap(self) -> int:
        return next(iter(self.homs.values())).cap

    def hom(self, a: str, b: str) -> TruncSSet:
        return self.homs[(a, b)]

    def unit_at_level(self, a: str, n: int) -> str:
        u = self.units[a]
        h = self.homs[(a, a)]
        for k in range(n):
            u = h.degen(k, 0, u)
        return u

    def compose_simplices(self, a: str, b: str, c: str, n: int, g: str, f: str) -> str:
        """Compose an n-simplex g of hom(b, c) with f of hom(a, b)."""
        return self.comps[(a, b, c)].comps[n][jid(g, f)]

    def validate(self) -> None:
        cap = self.cap
        for (a, b), h in self.homs.items():
            if h.cap != cap:
                raise CapMismatch("hom objects have non-uniform caps")
        for a in self.objects:
            if self.units[a] not in self.homs[(a, a)].level(0):
                raise ShapeMismatch(f"unit of {a} is not a vertex of hom({a},{a})")
        for (a, b, c), m in self.comps.items():
            expect_src = sset_product(self.homs[(b, c)], self.homs[(a, b)])
            if m.source != expect_src or m.target != self.homs[(a, c)]:
                raise ShapeMismatch(f"composition at ({a},{b},{c}) ill-typed")
        # unit laws
        for a in self.objects:
            for b in self.objects:
                h = self.homs[(a, b)]
                for n in range(cap + 1):
                    for f in h.level(n):
                        if self.compose_simplices(a, a, b, n, f, self.unit_at_level(a, n)) != f:
                            raise ShapeMismatch(f"right unit law fails at ({a},{b})")
                        if self.compose_simplices(a, b, b, n, self.unit_at_level(b, n), f) != f:
                            raise ShapeMismatch(f"left unit law fails at ({a},{b})")
        # associativity, levelwise on triples
        for a in self.objects:
            for b in self.objects:
                for c in self.objects:
                    for d in self.objects:
                        for n in range(cap + 1):
                            for h3 in self.homs[(c, d)].level(n):
                                for h2 in self.homs[(b, c)].level(n):
                                    for h1 in self.homs[(a, b)].level(n):
                                        left = self.compose_simplices(
                                            a, c, d, n, h3,
                                            self.compose_simplices(a, b, c, n, h2, h1))
                                        right = self.compose_simplices(
                                            a, b, d, n,
                                            self.compose_simplices(b, c, d, n, h3, h2), h1)
                                        if left != right:
                                            raise ShapeMismatch(
                                                f"enriched associativity fails at ({a},{b},{c},{d})")


def discrete_scat(shape: FinCat, cap: int) -> SSetCat:
    """A FinCat viewed as a discretely enriched simplicial category."""
    homs = {(a, b): discrete_sset(shape.hom(a, b), cap)
            for a in shape.objects for b in shape.objects}
    units = {a: shape.identity[a] for a in shape.objects}
    comps = {}
    for a in shape.objects:
        for b in shape.objects:
            for c in shape.objects:
                src = sset_product(homs[(b, c)], homs[(a, b)])
                table = {}
                for g in shape.hom(b, c):
                    for f in shape.hom(a, b):
                        table[jid(g, f)] = shape.comp(g, f)
                comps[(a, b, c)] = make_map(
                    src, homs[(a, c)],
                    [dict(table) for _ in range(cap + 1)])
    cat = SSetCat(tuple(sorted(shape.objects)), homs, units, comps)
    cat.validate()
    return cat


def one_object_scat(hom: TruncSSet, unit: str, mult: SimplicialMap) -> SSetCat:
    """A simplicial monoid as a one-object enriched category."""
    cat = SSetCat(("*",), {("*", "*"): hom}, {"*": unit}, {("*", "*", "*"): mult})
    cat.validate()
    return cat


def opposite_scat(cat: SSetCat) -> SSetCat:
    homs = {(a, b): cat.homs[(b, a)] for a in cat.objects for b in cat.objects}
    comps = {}
    for a in cat.objects:
        for b in cat.objects:
            for c in cat.objects:
                # hom_op(b,c) x hom_op(a,b) = hom(c,b) x hom(b,a) -> hom(c,a)
                src = sset_product(cat.homs[(c, b)], cat.homs[(b, a)])
                table = []
                for n in range(cat.cap + 1):
                    t = {}
                    for s in src.level(n):
                        g, f = unjid(s)
                        t[s] = cat.compose_simplices(c, b, a, n, f, g)
                    table.append(t)
                comps[(a, b, c)] = make_map(src, homs[(a, c)], table)
    out = SSetCat(cat.objects, homs, dict(cat.units), comps)
    out.validate()
    return out


def tensor_scat(a_cat: SSetCat, b_cat: SSetCat) -> SSetCat:
    """Product of enriched categories: homs are products of homs."""
    cap = a_cat.cap
    objects = tuple(sorted(jid(a, b) for a in a_cat.objects for b in b_cat.objects))
    homs, units, comps = {}, {}, {}
    for o1 in objects:
        a1, b1 = unjid(o1)
        units[o1] = jid(a_cat.units[a1], b_cat.units[b1])
        for o2 in objects:
            a2, b2 = unjid(o2)
            homs[(o1, o2)] = sset_product(a_cat.homs[(a1, a2)], b_cat.homs[(b1, b2)])
    for o1 in objects:
        for o2 in objects:
            for o3 in objects:
                a1, b1 = unjid(o1)
                a2, b2 = unjid(o2)
                a3, b3 = unjid(o3)
                src = sset_product(homs[(o2, o3)], homs[(o1, o2)])
                table = []
                for n in range(cap + 1):
                    t = {}
                    for s in src.level(n):
                        gh, fh = unjid(s)
                        g1, g2 = unjid(gh)
                        f1, f2 = unjid(fh)
                        t[s] = jid(a_cat.compose_simplices(a1, a2, a3, n, g1, f1),
                                   b_cat.compose_simplices(b1, b2, b3, n, g2, f2))
                    table.append(t)
                comps[(o1, o2, o3)] = make_map(src, homs[(o1, o3)], table)
    out = SSetCat(objects, homs, units, comps)
    out.validate()
    return out


@dataclass(frozen=True)
class SDiagram:
    """An enriched diagram: values with hom-action maps."""

    shape: SSetCat
    values: dict[str, TruncSSet]
    actions: dict[tuple[str, str], SimplicialMap]
    # actions[(a, b)]: hom(a, b) x value(a) -> value(b)

    @property
    def cap(self) -> int:
        return next(iter(self.values.values())).cap

    def value(self, d: str) -> TruncSSet:
        return self.values[d]

    def act(self, a: str, b: str, n: int, h: str, x: str) -> str:
        return self.actions[(a, b)].comps[n][jid(h, x)]

    def validate(self) -> None:
        cap = self.cap
        sh = self.shape
        for (a, b), m in self.actions.items():
            expect = sset_product(sh.homs[(a, b)], self.values[a])
            if m.source != expect or m.target != self.values[b]:
                raise ShapeMismatch(f"action at ({a},{b}) ill-typed")
        for a in sh.objects:
            for n in range(cap + 1):
                u = sh.unit_at_level(a, n)
                for x in self.values[a].level(n):
                    if self.act(a, a, n, u, x) != x:
                        raise ShapeMismatch(f"unit action at {a} is not the identity")
        for a in sh.objects:
            for b in sh.objects:
                for c in sh.objects:
                    for n in range(cap + 1):
                        for g in sh.homs[(b, c)].level(n):
                            for f in sh.homs[(a, b)].level(n):
                                gf = sh.compose_simplices(a, b, c, n, g, f)
                                for x in self.values[a].level(n):
                                    if self.act(a, c, n, gf, x) != \
                                            self.act(b, c, n, g, self.act(a, b, n, f, x)):
                                        raise ShapeMismatch(
                                            f"action associativity fails at ({a},{b},{c})")


def make_sdiagram(shape: SSetCat, values, actions) -> SDiagram:
    dgm = SDiagram(shape, dict(values), dict(actions))
    dgm.validate()
    return dgm


def discrete_sdiagram(dgm: Diagram, scat: SSetCat | None = None) -> SDiagram:
    """View an ordinary diagram as enriched over the discretized shape."""
    scat = scat if scat is not None else discrete_scat(dgm.shape, dgm.cap)
    shape = dgm.shape
    actions = {}
    for a in shape.objects:
        for b in shape.objects:
            src = sset_product(scat.homs[(a, b)], dgm.values[a])
            table = []
            for n in range(dgm.cap + 1):
                t = {}
                for s in src.level(n):
                    f, x = unjid(s)
                    t[s] = dgm.arrows[f].comps[n][x]
                table.append(t)
            actions[(a, b)] = make_map(src, dgm.values[b], table)
    return make_sdiagram(scat, dict(dgm.values), actions)


def enriched_tensor_product(g: SDiagram, f: SDiagram) -> TruncSSet:
    """Weighted colimit over an enriched shape, as an explicit coequalizer.

    g is contravariant (an SDiagram over the opposite shape); the hom object
    mediates the two action maps.
    """
    shape = f.shape
    gshape = g.shape
    if tuple(gshape.objects) != tuple(shape.objects):
        raise ShapeMismatch("enriched weight over a different object set")
    for a in shape.objects:
        for b in shape.objects:
            if gshape.homs[(a, b)] != shape.homs[(b, a)]:
                raise ShapeMismatch("enriched weight is not over the opposite shape")
    cap = f.cap
    parts = {d: sset_product(g.values[d], f.values[d]) for d in shape.objects}
    total, injections = coproduct_many(parts)
    pairs = []
    for d in shape.objects:
        for d2 in shape.objects:
            hom = shape.homs[(d, d2)]
            for n in range(cap + 1):
                for h in hom.level(n):
                    for gv in g.values[d2].level(n):
                        for xv in f.values[d].level(n):
                            # g-action: hom(d,d2) x g(d2) -> g(d) (opposite shape)
                            left = injections[d].comps[n][jid(g.act(d2, d, n, h, gv), xv)]
                            right = injections[d2].comps[n][jid(gv, f.act(d, d2, n, h, xv))]
                            pairs.append((n, left, right))
    q, _ = quotient(total, pairs)
    return q
