"""Simplicial bar and cosimplicial cobar constructions.

The two-sided bar construction of a weight and a diagram is a simplicial
object whose n-th column is the coproduct, over strings of n composable
arrows, of weight-value x diagram-value products.  Realization is the
diagonal.  Columns are indexed so that horizontal face 0 drops the string's
source and evaluates the diagram; face n acts on the weight.  The
augmentation-friendly mirror indexing (face 0 on the weight side), which is
the one under which the classical extra-degeneracy identities read
d_0 s_{-1} = id, is exposed via `horizontal_reverse`.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .fincat import FinCat, jid, make_category, opposite, unjid
from .diagram import (
    Diagram, SDiagram, SSetCat, ShapeMismatch, constant_diagram,
    cotensor_product, discrete_scat, discrete_sdiagram, make_diagram,
    opposite_scat, representable_weight, tensor_scat, terminal_weight,
)
from .nerve import composable_strings, string_id, string_objects, string_parts
from .simpset import (
    CapMismatch, SimplicialMap, TruncSSet, compose_maps, coproduct_many,
    identity_map, make_map, make_sset, mapping_space, monotone_maps,
    product as sset_product, quotient, simplex_map, standard_simplex,
    terminal_sset,
)


class BimoduleAxiomViolation(Exception):
    pass


class IdentityViolation(Exception):
    pass


class NotNatural(Exception):
    pass


@dataclass(frozen=True)
class SimpObj:
    """A simplicial object in truncated simplicial sets, horizontally truncated."""

    hcap: int
    columns: tuple[TruncSSet, ...]
    hfaces: dict[tuple[int, int], SimplicialMap]
    hdegens: dict[tuple[int, int], SimplicialMap]

    def column(self, n: int) -> TruncSSet:
        return self.columns[n]

    @property
    def cap(self) -> int:
        return self.columns[0].cap

    def hface(self, n: int, i: int) -> SimplicialMap:
        return self.hfaces[(n, i)]

    def hdegen(self, n: int, i: int) -> SimplicialMap:
        return self.hdegens[(n, i)]

    def validate(self) -> None:
        for n, col in enumerate(self.columns):
            col.validate()
        for (n, i), m in self.hfaces.items():
            if m.source != self.columns[n] or m.target != self.columns[n - 1]:
                raise ShapeMismatch(f"horizontal face ({n},{i}) ill-typed")
            m.validate()
        for (n, i), m in self.hdegens.items():
            if m.source != self.columns[n] or m.target != self.columns[n + 1]:
                raise ShapeMismatch(f"horizontal degeneracy ({n},{i}) ill-typed")
            m.validate()
        audit_horizontal_identities(self)


def audit_horizontal_identities(b: SimpObj) -> None:
    """Check every horizontal simplicial identity defined within hcap."""
    for n in range(2, b.hcap + 1):
        for j in range(n + 1):
            for i in range(j):
                left = compose_maps(b.hface(n - 1, i), b.hface(n, j))
                right = compose_maps(b.hface(n - 1, j - 1), b.hface(n, i))
                if left.comps != right.comps:
                    raise IdentityViolation(f"horizontal d_{i} d_{j} fails at column {n}")
    for n in range(0, b.hcap):
        for j in range(n + 1):
            sj = b.hdegen(n, j)
            if compose_maps(b.hface(n + 1, j), sj).comps != identity_map(b.column(n)).comps:
                raise IdentityViolation(f"horizontal d_{j} s_{j} fails at column {n}")
            if compose_maps(b.hface(n + 1, j + 1), sj).comps != identity_map(b.column(n)).comps:
                raise IdentityViolation(f"horizontal d_{j+1} s_{j} fails at column {n}")
    for n in range(1, b.hcap):
        for j in range(n + 1):
            for i in range(n + 2):
                if i in (j, j + 1):
                    continue
                left = compose_maps(b.hface(n + 1, i), b.hdegen(n, j))
                if i < j:
                    right = compose_maps(b.hdegen(n - 1, j - 1), b.hface(n, i))
                else:
                    right = compose_maps(b.hdegen(n - 1, j), b.hface(n, i - 1))
                if left.comps != right.comps:
                    raise IdentityViolation(f"horizontal d_{i} s_{j} fails at column {n}")
    for n in range(0, b.hcap - 1):
        for j in range(n + 1):
            for i in range(j + 1):
                left = compose_maps(b.hdegen(n + 1, i), b.hdegen(n, j))
                right = compose_maps(b.hdegen(n + 1, j + 1), b.hdegen(n, i))
                if left.comps != right.comps:
                    raise IdentityViolation(f"horizontal s_{i} s_{j} fails at column {n}")


@dataclass(frozen=True)
class CosimpObj:
    """A cosimplicial object in truncated simplicial sets."""

    hcap: int
    columns: tuple[TruncSSet, ...]
    cofaces: dict[tuple[int, int], SimplicialMap]      # (n, i): C^{n-1} -> C^n
    codegens: dict[tuple[int, int], SimplicialMap]     # (n, i): C^{n+1} -> C^n

    def column(self, n: int) -> TruncSSet:
        return self.columns[n]

    def coface(self, n: int, i: int) -> SimplicialMap:
        return self.cofaces[(n, i)]

    def codegen(self, n: int, i: int) -> SimplicialMap:
        return self.codegens[(n, i)]

    def validate(self) -> None:
        for (n, i), m in self.cofaces.items():
            if m.source != self.columns[n - 1] or m.target != self.columns[n]:
                raise ShapeMismatch(f"coface ({n},{i}) ill-typed")
        for (n, i), m in self.codegens.items():
            if m.source != self.columns[n + 1] or m.target != self.columns[n]:
                raise ShapeMismatch(f"codegeneracy ({n},{i}) ill-typed")
        for n in range(2, self.hcap + 1):
            for j in range(n + 1):
                for i in range(j):
                    left = compose_maps(self.coface(n, j), self.coface(n - 1, i))
                    right = compose_maps(self.coface(n, i), self.coface(n - 1, j - 1))
                    if left.comps != right.comps:
                        raise IdentityViolation(f"cosimplicial d^{j} d^{i} fails at {n}")
        for n in range(0, self.hcap):
            for j in range(n + 1):
                sj = self.codegen(n, j)
                for i in (j, j + 1):
                    comp = compose_maps(sj, self.coface(n + 1, i))
                    if comp.comps != identity_map(self.columns[n]).comps:
                        raise IdentityViolation(f"cosimplicial s^{j} d^{i} fails at {n}")


# ---------------------------------------------------------------------------
# the two-sided simplicial bar construction over a FinCat

def _bar_level_ids(shape: FinCat, g: Diagram, f: Diagram, n: int, level: int):
    """Component simplices of bar column n at a vertical level."""
    for alpha in composable_strings(shape, n):
        objs = string_objects(shape, alpha)
        for gv in g.values[objs[-1]].level(level):
            for xv in f.values[objs[0]].level(level):
                yield jid(alpha, gv, xv), alpha, objs, gv, xv


def simplicial_bar(g: Diagram | None, shape: FinCat, f: Diagram, hcap: int) -> SimpObj:
    """Two-sided simplicial bar construction of a weight and a diagram.

    Column n is the coproduct over strings a_0 -> ... -> a_n of
    g(a_n) x f(a_0).  Passing g=None uses the terminal weight.  Horizontal
    face 0 evaluates f along the string's first arrow; face n moves the
    weight along the last arrow; inner faces compose; degeneracies insert
    identities.
    """
    if f.shape != shape:
        raise ShapeMismatch("diagram is not over the given shape")
    if g is None:
        g = terminal_weight(shape, f.cap)
    if g.shape != opposite(shape):
        raise ShapeMismatch("weight is not over the opposite shape")
    if g.cap != f.cap:
        raise CapMismatch("weight and diagram caps differ")
    cap = f.cap
    columns = []
    for n in range(hcap + 1):
        levels = [[] for _ in range(cap + 1)]
        faces = {(lv, i): {} for lv in range(1, cap + 1) for i in range(lv + 1)}
        degens = {(lv, i): {} for lv in range(cap) for i in range(lv + 1)}
        for lv in range(cap + 1):
            for sid, alpha, objs, gv, xv in _bar_level_ids(shape, g, f, n, lv):
                levels[lv].append(sid)
                gval, fval = g.values[objs[-1]], f.values[objs[0]]
                if lv >= 1:
                    for i in range(lv + 1):
                        faces[(lv, i)][sid] = jid(alpha, gval.face(lv, i, gv),
                                                  fval.face(lv, i, xv))
                if lv < cap:
                    for i in range(lv + 1):
                        degens[(lv, i)][sid] = jid(alpha, gval.degen(lv, i, gv),
                                                   fval.degen(lv, i, xv))
        columns.append(make_sset(cap, levels, faces, degens))
    hfaces, hdegens = {}, {}
    for n in range(1, hcap + 1):
        for i in range(n + 1):
            comps = [dict() for _ in range(cap + 1)]
            for lv in range(cap + 1):
                for sid, alpha, objs, gv, xv in _bar_level_ids(shape, g, f, n, lv):
                    src, arrows = string_parts(alpha)
                    if i == 0:
                        new_alpha = string_id(objs[1], arrows[1:])
                        new_gv, new_xv = gv, f.arrows[arrows[0]].comps[lv][xv]
                    elif i == n:
                        new_alpha = string_id(src, arrows[:-1])
                        new_gv, new_xv = g.arrows[arrows[-1]].comps[lv][gv], xv
                    else:
                        merged = arrows[:i - 1] + [shape.comp(arrows[i], arrows[i - 1])] + arrows[i + 1:]
                        new_alpha = string_id(src, merged)
                        new_gv, new_xv = gv, xv
                    comps[lv][sid] = jid(new_alpha, new_gv, new_xv)
            hfaces[(n, i)] = make_map(columns[n], columns[n - 1], comps, check=False)
    for n in range(hcap):
        for i in range(n + 1):
            comps = [dict() for _ in range(cap + 1)]
            for lv in range(cap + 1):
                for sid, alpha, objs, gv, xv in _bar_level_ids(shape, g, f, n, lv):
                    src, arrows = string_parts(alpha)
                    inserted = arrows[:i] + [shape.identity[objs[i]]] + arrows[i:]
                    comps[lv][sid] = jid(string_id(src, inserted), gv, xv)
            hdegens[(n, i)] = make_map(columns[n], columns[n + 1], comps, check=False)
    return SimpObj(hcap, tuple(columns), hfaces, hdegens)


def horizontal_reverse(b: SimpObj) -> SimpObj:
    """Conjugate the horizontal indexing by order reversal.

    The mirror presentation of the same simplicial object: face i of column
    n becomes face n - i.  Involutive.
    """
    hfaces = {(n, i): b.hfaces[(n, n - i)] for n in range(1, b.hcap + 1) for i in range(n + 1)}
    hdegens = {(n, i): b.hdegens[(n, n - i)] for n in range(b.hcap) for i in range(n + 1)}
    return SimpObj(b.hcap, b.columns, hfaces, hdegens)


def constant_simpobj(x: TruncSSet, hcap: int) -> SimpObj:
    ident = identity_map(x)
    return SimpObj(hcap, tuple(x for _ in range(hcap + 1)),
                   {(n, i): ident for n in range(1, hcap + 1) for i in range(n + 1)},
                   {(n, i): ident for n in range(hcap) for i in range(n + 1)})


def horizontal_operator(b: SimpObj, phi: tuple[int, ...], n: int) -> SimplicialMap:
    """The structure map X_n -> X_m induced by a monotone map phi: [m] -> [n]."""
    m = len(phi) - 1
    if phi == tuple(range(n + 1)):
        return identity_map(b.column(n))
    image = set(phi)
    missing = [v for v in range(n + 1) if v not in image]
    if missing:
        i = missing[-1]
        shrunk = tuple(v if v < i else v - 1 for v in phi)
        return compose_maps(horizontal_operator(b, shrunk, n - 1), b.hface(n, i))
    for i in range(m):
        if phi[i] == phi[i + 1]:
            dropped = phi[:i] + phi[i + 1:]
            return compose_maps(b.hdegen(m - 1, i), horizontal_operator(b, dropped, n))
    raise AssertionError("unreachable")


def realize(b: SimpObj) -> TruncSSet:
    """Geometric realization as the diagonal.

    Level n of the result is level n of column n; faces and degeneracies
    are the composites of the horizontal and vertical ones.
    """
    cap = min(b.hcap, b.cap)
    levels = [list(b.column(n).level(n)) for n in range(cap + 1)]
    faces, degens = {}, {}
    for n in range(1, cap + 1):
        for i in range(n + 1):
            h = b.hface(n, i)
            faces[(n, i)] = {s: b.column(n - 1).face(n, i, h.comps[n][s])
                             for s in levels[n]}
    for n in range(cap):
        for i in range(n + 1):
            h = b.hdegen(n, i)
            degens[(n, i)] = {s: b.column(n + 1).degen(n, i, h.comps[n][s])
                              for s in levels[n]}
    return make_sset(cap, levels, faces, degens)


def realize_map(b: SimpObj, c: SimpObj,
                columns: dict[int, SimplicialMap]) -> SimplicialMap:
    """Realize a columnwise map of simplicial objects on diagonals."""
    rb, rc = realize(b), realize(c)
    cap = rb.cap
    comps = [{s: columns[n].comps[n][s] for s in rb.level(n)} for n in range(cap + 1)]
    return make_map(rb, rc, comps)


# ---------------------------------------------------------------------------
# enriched and bimodule bar constructions

def _object_tuples(objects, n):
    return itertools.product(objects, repeat=n + 1)


def enriched_simplicial_bar(g: SDiagram, shape: SSetCat, f: SDiagram, hcap: int) -> SimpObj:
    """Two-sided bar construction over a simplicially enriched shape.

    Column n is the coproduct over object tuples (a_0, ..., a_n) of
    g(a_n) x hom(a_{n-1}, a_n) x ... x hom(a_0, a_1) x f(a_0), levelwise.
    The component id lists the tuple, the weight simplex, the hom chain in
    descending order, and the diagram simplex.
    """
    if tuple(f.shape.objects) != tuple(shape.objects):
        raise ShapeMismatch("enriched diagram over a different shape")
    for a in shape.objects:
        for bb in shape.objects:
            if g.shape.homs[(a, bb)] != shape.homs[(bb, a)]:
                raise ShapeMismatch("enriched weight is not over the opposite shape")
    cap = f.cap
    objs = shape.objects

    def components(n, lv):
        for tup in _object_tuples(objs, n):
            hom_pools = [shape.homs[(tup[k], tup[k + 1])].level(lv) for k in range(n)]
            for gv in g.values[tup[-1]].level(lv):
                for chain in itertools.product(*reversed(hom_pools)):
                    for xv in f.values[tup[0]].level(lv):
                        yield jid(list(tup), gv, *chain, xv), tup, gv, list(chain), xv

    columns = []
    for n in range(hcap + 1):
        levels = [[] for _ in range(cap + 1)]
        faces = {(lv, i): {} for lv in range(1, cap + 1) for i in range(lv + 1)}
        degens = {(lv, i): {} for lv in range(cap) for i in range(lv + 1)}
        for lv in range(cap + 1):
            for sid, tup, gv, chain, xv in components(n, lv):
                levels[lv].append(sid)
                gval, fval = g.values[tup[-1]], f.values[tup[0]]
                homs = [shape.homs[(tup[n - 1 - k], tup[n - k])] for k in range(n)]
                if lv >= 1:
                    for i in range(lv + 1):
                        parts = [h.face(lv, i, c) for h, c in zip(homs, chain)]
                        faces[(lv, i)][sid] = jid(list(tup), gval.face(lv, i, gv),
                                                  *parts, fval.face(lv, i, xv))
                if lv < cap:
                    for i in range(lv + 1):
                        parts = [h.degen(lv, i, c) for h, c in zip(homs, chain)]
                        degens[(lv, i)][sid] = jid(list(tup), gval.degen(lv, i, gv),
                                                   *parts, fval.degen(lv, i, xv))
        columns.append(make_sset(cap, levels, faces, degens))

    hfaces, hdegens = {}, {}
    for n in range(1, hcap + 1):
        for i in range(n + 1):
            comps = [dict() for _ in range(cap + 1)]
            for lv in range(cap + 1):
                for sid, tup, chain, xv, gv, image in _enriched_face_images(
                        shape, g, f, n, i, lv):
                    comps[lv][sid] = image
            hfaces[(n, i)] = make_map(columns[n], columns[n - 1], comps, check=False)
    for n in range(hcap):
        for i in range(n + 1):
            comps = [dict() for _ in range(cap + 1)]
            for lv in range(cap + 1):
                for sid, tup, gv, chain, xv in components(n, lv):
                    new_tup = list(tup[:i + 1]) + list(tup[i:])
                    unit = shape.unit_at_level(tup[i], lv)
                    pos = n - i    # chain is stored in descending order
                    new_chain = chain[:pos] + [unit] + chain[pos:]
                    comps[lv][sid] = jid(new_tup, gv, *new_chain, xv)
            hdegens[(n, i)] = make_map(columns[n], columns[n + 1], comps, check=False)
    return SimpObj(hcap, tuple(columns), hfaces, hdegens)


def _enriched_face_images(shape, g, f, n, i, lv):
    """Images of horizontal face i on enriched bar column n, one level."""
    objs = shape.objects
    for tup in _object_tuples(objs, n):
        hom_pools = [shape.homs[(tup[k], tup[k + 1])].level(lv) for k in range(n)]
        for gv in g.values[tup[-1]].level(lv):
            for chain in itertools.product(*reversed(hom_pools)):
                chain = list(chain)
                for xv in f.values[tup[0]].level(lv):
                    sid = jid(list(tup), gv, *chain, xv)
                    # chain[k] is an element of hom(a_{n-1-k}, a_{n-k})
                    if i == 0:
                        h1 = chain[n - 1]
                        new_tup = list(tup[1:])
                        new_chain = chain[:n - 1]
                        new_xv = f.act(tup[0], tup[1], lv, h1, xv)
                        image = jid(new_tup, gv, *new_chain, new_xv)
                    elif i == n:
                        hn = chain[0]
                        new_tup = list(tup[:-1])
                        new_chain = chain[1:]
                        new_gv = g.act(tup[n], tup[n - 1], lv, hn, gv)
                        image = jid(new_tup, new_gv, *new_chain, xv)
                    else:
                        lo = n - i - 1     # index of hom(a_i, a_{i+1}) in the chain
                        hi = n - i         # index of hom(a_{i-1}, a_i)
                        merged = shape.compose_simplices(
                            tup[i - 1], tup[i], tup[i + 1], lv, chain[lo], chain[hi])
                        new_tup = list(tup[:i]) + list(tup[i + 1:])
                        new_chain = chain[:lo] + [merged] + chain[hi + 1:]
                        image = jid(new_tup, gv, *new_chain, xv)
                    yield sid, tup, chain, xv, gv, image


def terminal_sweight(shape: SSetCat) -> SDiagram:
    """The constant terminal weight over the opposite enriched shape."""
    cap = shape.cap
    pt = terminal_sset(cap)
    op = opposite_scat(shape)
    actions = {}
    for a in shape.objects:
        for bb in shape.objects:
            src = sset_product(op.homs[(a, bb)], pt)
            comps = [{s: pt.level(lv)[0] for s in src.level(lv)} for lv in range(cap + 1)]
            actions[(a, bb)] = make_map(src, pt, comps)
    return SDiagram(op, {a: pt for a in shape.objects}, actions)


def representable_sweight(shape: SSetCat, d: str) -> SDiagram:
    """The enriched weight hom(-, d) with composition as action."""
    cap = shape.cap
    op = opposite_scat(shape)
    values = {a: shape.homs[(a, d)] for a in shape.objects}
    actions = {}
    for a in shape.objects:
        for bb in shape.objects:
            # hom_op(a, b) x hom(a, d) = hom(b, a) x hom(a, d) -> hom(b, d)
            src = sset_product(shape.homs[(bb, a)], values[a])
            comps = []
            for lv in range(cap + 1):
                t = {}
                for s in src.level(lv):
                    h, u = unjid(s)
                    t[s] = shape.compose_simplices(bb, a, d, lv, u, h)
                comps.append(t)
            actions[(a, bb)] = make_map(src, values[bb], comps)
    dgm = SDiagram(op, values, actions)
    dgm.validate()
    return dgm


def bimodule_bar(shape: SSetCat, h: SDiagram, hcap: int) -> SimpObj:
    """Bar construction of a bimodule: H is an enriched bifunctor over
    opposite(shape) (x) shape; column n glues hom chains against H(a_n, a_0).

    Raises BimoduleAxiomViolation when H fails the two-action compatibility
    (its enriched functoriality over the product shape).
    """
    pair_shape = tensor_scat(opposite_scat(shape), shape)
    if tuple(h.shape.objects) != tuple(pair_shape.objects):
        raise BimoduleAxiomViolation("bimodule over the wrong object set")
    try:
        h.validate()
    except ShapeMismatch as e:
        raise BimoduleAxiomViolation(str(e)) from e
    cap = h.cap
    objs = shape.objects

    def components(n, lv):
        for tup in _object_tuples(objs, n):
            hom_pools = [shape.homs[(tup[k], tup[k + 1])].level(lv) for k in range(n)]
            val = h.values[jid(tup[-1], tup[0])]
            for chain in itertools.product(*reversed(hom_pools)):
                for xv in val.level(lv):
                    yield jid(list(tup), *chain, xv), tup, list(chain), xv

    columns = []
    for n in range(hcap + 1):
        levels = [[] for _ in range(cap + 1)]
        faces = {(lv, i): {} for lv in range(1, cap + 1) for i in range(lv + 1)}
        degens = {(lv, i): {} for lv in range(cap) for i in range(lv + 1)}
        for lv in range(cap + 1):
            for sid, tup, chain, xv in components(n, lv):
                levels[lv].append(sid)
                val = h.values[jid(tup[-1], tup[0])]
                homs = [shape.homs[(tup[n - 1 - k], tup[n - k])] for k in range(n)]
                if lv >= 1:
                    for i in range(lv + 1):
                        parts = [hh.face(lv, i, c) for hh, c in zip(homs, chain)]
                        faces[(lv, i)][sid] = jid(list(tup), *parts, val.face(lv, i, xv))
                if lv < cap:
                    for i in range(lv + 1):
                        parts = [hh.degen(lv, i, c) for hh, c in zip(homs, chain)]
                        degens[(lv, i)][sid] = jid(list(tup), *parts, val.degen(lv, i, xv))
        columns.append(make_sset(cap, levels, faces, degens))

    def pair_hom(a_pair, b_pair, lv, first, second):
        return jid(first, second)

    hfaces, hdegens = {}, {}
    for n in range(1, hcap + 1):
        for i in range(n + 1):
            comps = [dict() for _ in range(cap + 1)]
            for lv in range(cap + 1):
                for sid, tup, chain, xv in components(n, lv):
                    if i == 0:
                        # act on H through its covariant slot along chain tail
                        h1 = chain[n - 1]
                        src_pair = jid(tup[-1], tup[0])
                        tgt_pair = jid(tup[-1], tup[1])
                        unit = shape.unit_at_level(tup[-1], lv)
                        hom_elt = jid(unit, h1)
                        new_xv = h.act(src_pair, tgt_pair, lv, hom_elt, xv)
                        image = jid(list(tup[1:]), *chain[:n - 1], new_xv)
                    elif i == n:
                        hn = chain[0]
                        src_pair = jid(tup[-1], tup[0])
                        tgt_pair = jid(tup[-2], tup[0])
                        unit = shape.unit_at_level(tup[0], lv)
                        hom_elt = jid(hn, unit)
                        new_xv = h.act(src_pair, tgt_pair, lv, hom_elt, xv)
                        image = jid(list(tup[:-1]), *chain[1:], new_xv)
                    else:
                        lo = n - i - 1
                        hi = n - i
                        merged = shape.compose_simplices(
                            tup[i - 1], tup[i], tup[i + 1], lv, chain[lo], chain[hi])
                        image = jid(list(tup[:i]) + list(tup[i + 1:]),
                                    *(chain[:lo] + [merged] + chain[hi + 1:]), xv)
                    comps[lv][sid] = image
            hfaces[(n, i)] = make_map(columns[n], columns[n - 1], comps, check=False)
    for n in range(hcap):
        for i in range(n + 1):
            comps = [dict() for _ in range(cap + 1)]
            for lv in range(cap + 1):
                for sid, tup, chain, xv in components(n, lv):
                    new_tup = list(tup[:i + 1]) + list(tup[i:])
                    unit = shape.unit_at_level(tup[i], lv)
                    pos = n - i
                    new_chain = chain[:pos] + [unit] + chain[pos:]
                    comps[lv][sid] = jid(new_tup, *new_chain, xv)
            hdegens[(n, i)] = make_map(columns[n], columns[n + 1], comps, check=False)
    return SimpObj(hcap, tuple(columns), hfaces, hdegens)


def cyclic_bar(shape: SSetCat, h: SDiagram, hcap: int) -> SimpObj:
    """The economical homotopy-coend bar construction of a bifunctor."""
    return bimodule_bar(shape, h, hcap)


def twosided_as_bimodule(g: SDiagram, shape: SSetCat, f: SDiagram) -> SDiagram:
    """The bimodule (a, b) |-> g(a) x f(b) whose cyclic bar is the two-sided bar."""
    pair_shape = tensor_scat(opposite_scat(shape), shape)
    cap = f.cap
    values = {}
    for o in pair_shape.objects:
        a, bb = unjid(o)
        values[o] = sset_product(g.values[a], f.values[bb])
    actions = {}
    for o1 in pair_shape.objects:
        a1, b1 = unjid(o1)
        for o2 in pair_shape.objects:
            a2, b2 = unjid(o2)
            src = sset_product(pair_shape.homs[(o1, o2)], values[o1])
            comps = []
            for lv in range(cap + 1):
                t = {}
                for s in src.level(lv):
                    hom_elt, val = unjid(s)
                    r, sgm = unjid(hom_elt)     # r in hom(a2, a1), s in hom(b1, b2)
                    gv, xv = unjid(val)
                    t[s] = jid(g.act(a1, a2, lv, r, gv), f.act(b1, b2, lv, sgm, xv))
                comps.append(t)
            actions[(o1, o2)] = make_map(src, values[o2], comps)
    dgm = SDiagram(pair_shape, values, actions)
    dgm.validate()
    return dgm


# ---------------------------------------------------------------------------
# cosimplicial cobar and totalization

def delta_category(hcap: int) -> FinCat:
    """The simplex category truncated at [hcap], monotone maps as morphisms."""
    objs = [str(n) for n in range(hcap + 1)]
    mors, compose = {}, {}
    for n in range(hcap + 1):
        for m in range(hcap + 1):
            for phi in monotone_maps(m, n):
                mors[jid(m, n, list(phi))] = (str(m), str(n))
    identity = {str(n): jid(n, n, list(range(n + 1))) for n in range(hcap + 1)}
    for mid, (sm, sn) in mors.items():
        m1, n1, phi = unjid(mid)
        for mid2, (sk, sm2) in mors.items():
            k2, m2, psi = unjid(mid2)
            if m2 == m1:
                comp = [phi[v] for v in psi]
                compose[(mid, mid2)] = jid(k2, n1, comp)
    return make_category(objs, mors, compose, identity)


def cosimplicial_cobar(g: Diagram | None, shape: FinCat, f: Diagram, hcap: int) -> CosimpObj:
    """Two-sided cosimplicial cobar construction over a FinCat.

    Column n is the product over strings a_0 -> ... -> a_n of
    Map(g(a_0), f(a_n)); g=None uses the constant-point functor.  Cofaces
    precompose with the g action (i = 0), drop string entries (inner), or
    postcompose with the f action (i = n).
    """
    if f.shape != shape:
        raise ShapeMismatch("diagram is not over the given shape")
    cap = f.cap
    if g is None:
        g = constant_diagram(shape, terminal_sset(cap))
    if g.shape != shape:
        raise ShapeMismatch("cobar coweight must be covariant over the shape")
    spaces = {}
    strings = {n: composable_strings(shape, n) for n in range(hcap + 1)}
    for n in range(hcap + 1):
        for alpha in strings[n]:
            objs = string_objects(shape, alpha)
            spaces[alpha] = mapping_space(g.values[objs[0]], f.values[objs[-1]], cap)
    columns = [_space_product([spaces[a] for a in strings[n]], strings[n])
               for n in range(hcap + 1)]

    from .simpset import map_graph_id, product_map

    def precompose(alpha_to, gmap, elem, lv):
        simp = standard_simplex(lv, cap)
        lift = product_map(gmap, identity_map(simp))
        return compose_maps(elem, lift)

    cofaces, codegens = {}, {}
    for n in range(1, hcap + 1):
        for i in range(n + 1):
            comps = [dict() for _ in range(cap + 1)]
            for lv in range(cap + 1):
                for sid in columns[n - 1].level(lv):
                    entries = dict(zip(strings[n - 1], unjid(sid)))
                    out = []
                    for alpha in strings[n]:
                        src, arrows = string_parts(alpha)
                        objs = string_objects(shape, alpha)
                        if i == 0:
                            beta = string_id(objs[1], arrows[1:])
                            elem = spaces[beta].elements[lv][entries[beta]]
                            moved = precompose(alpha, g.arrows[arrows[0]], elem, lv)
                        elif i == n:
                            beta = string_id(src, arrows[:-1])
                            elem = spaces[beta].elements[lv][entries[beta]]
                            moved = compose_maps(f.arrows[arrows[-1]], elem)
                        else:
                            merged = arrows[:i - 1] + [shape.comp(arrows[i], arrows[i - 1])] + arrows[i + 1:]
                            beta = string_id(src, merged)
                            moved = spaces[beta].elements[lv][entries[beta]]
                        out.append(map_graph_id(moved))
                    comps[lv][sid] = jid(*out)
            cofaces[(n, i)] = make_map(columns[n - 1], columns[n], comps, check=False)
    for n in range(hcap):
        for i in range(n + 1):
            comps = [dict() for _ in range(cap + 1)]
            for lv in range(cap + 1):
                for sid in columns[n + 1].level(lv):
                    entries = dict(zip(strings[n + 1], unjid(sid)))
                    out = []
                    for alpha in strings[n]:
                        src, arrows = string_parts(alpha)
                        objs = string_objects(shape, alpha)
                        inserted = arrows[:i] + [shape.identity[objs[i]]] + arrows[i:]
                        beta = string_id(src, inserted)
                        out.append(entries[beta])
                    comps[lv][sid] = jid(*out)
            codegens[(n, i)] = make_map(columns[n + 1], columns[n], comps, check=False)
    return CosimpObj(hcap, tuple(columns), cofaces, codegens)


def _space_product(space_list, names):
    """Product of mapping spaces, entries ordered by the given string names."""
    cap = space_list[0].space.cap if space_list else 0
    exact = min((s.space.exact_to for s in space_list), default=cap)
    levels = []
    for lv in range(cap + 1):
        levels.append([jid(*combo) for combo in
                       itertools.product(*(sorted(s.elements[lv]) for s in space_list))])
    faces, degens = {}, {}
    for lv in range(1, cap + 1):
        for i in range(lv + 1):
            table = {}
            for sid in levels[lv]:
                parts = unjid(sid)
                table[sid] = jid(*(s.space.face(lv, i, p) for s, p in zip(space_list, parts)))
            faces[(lv, i)] = table
    for lv in range(cap):
        for i in range(lv + 1):
            table = {}
            for sid in levels[lv]:
                parts = unjid(sid)
                table[sid] = jid(*(s.space.degen(lv, i, p) for s, p in zip(space_list, parts)))
            degens[(lv, i)] = table
    return make_sset(cap, levels, faces, degens, exact_to=exact)


def cobar_as_diagram(c: CosimpObj) -> Diagram:
    """View a cosimplicial object as a diagram over the truncated simplex category."""
    cat = delta_category(c.hcap)
    values = {str(n): c.column(n) for n in range(c.hcap + 1)}
    arrows = {}
    for mid in cat.morphisms:
        m, n, phi = unjid(mid)
        arrows[mid] = _cosimplicial_operator(c, tuple(phi), m, n)
    return make_diagram(cat, values, arrows)


def _cosimplicial_operator(c: CosimpObj, phi, m, n) -> SimplicialMap:
    """The map C^m -> C^n induced covariantly by phi: [m] -> [n]."""
    if phi == tuple(range(n + 1)):
        return identity_map(c.column(n))
    image = set(phi)
    missing = [v for v in range(n + 1) if v not in image]
    if missing:
        i = missing[-1]
        shrunk = tuple(v if v < i else v - 1 for v in phi)
        return compose_maps(c.coface(n, i), _cosimplicial_operator(c, shrunk, m, n - 1))
    for i in range(m):
        if phi[i] == phi[i + 1]:
            dropped = phi[:i] + phi[i + 1:]
            return compose_maps(_cosimplicial_operator(c, dropped, m - 1, n),
                                c.codegen(m - 1, i))
    raise AssertionError("unreachable")


def tot(c: CosimpObj, cap_out: int | None = None) -> TruncSSet:
    """Totalization: the cotensor of the standard cosimplicial simplex
    against the cosimplicial object, over the truncated simplex category.

    Exact at level 0; approximate above per the mapping space rules.
    """
    cat = delta_category(c.hcap)
    cap = c.column(0).cap
    cdgm = cobar_as_diagram(c)
    values = {str(n): standard_simplex(n, cap) for n in range(c.hcap + 1)}
    arrows = {}
    for mid in cat.morphisms:
        m, n, phi = unjid(mid)
        arrows[mid] = simplex_map(tuple(phi), m, n, cap)
    weight = make_diagram(cat, values, arrows)
    return cotensor_product(weight, cdgm, cap_out)


# ---------------------------------------------------------------------------
# augmentation, extra degeneracies, homotopies

def bar_diagram(shape: FinCat, f: Diagram, hcap: int) -> Diagram:
    """d |-> realize(B(hom(-, d), shape, f)), with arrows by weight pushforward."""
    cap = f.cap
    bars = {d: simplicial_bar(representable_weight(shape, d, cap), shape, f, hcap)
            for d in shape.objects}
    values = {d: realize(bars[d]) for d in shape.objects}
    arrows = {}
    for v in shape.morphisms:
        d1, d2 = shape.source[v], shape.target[v]
        comps = []
        for lv in range(min(hcap, cap) + 1):
            t = {}
            for sid in values[d1].level(lv):
                alpha, u, xv = unjid(sid)
                t[sid] = jid(alpha, shape.comp(v, u), xv)
            comps.append(t)
        arrows[v] = make_map(values[d1], values[d2], comps)
    return make_diagram(shape, values, arrows)


def epsilon(shape: FinCat, f: Diagram, hcap: int | None = None) -> dict[str, SimplicialMap]:
    """The augmentations realize(B(hom(-, d), shape, f)) -> f(d), per object.

    Natural in d: the weight-pushforward squares commute (checked by
    `epsilon_is_natural`).
    """
    cap = f.cap
    hcap = cap if hcap is None else hcap
    bd = bar_diagram(shape, f, hcap)
    out = {}
    for d in shape.objects:
        comps = []
        for lv in range(min(hcap, cap) + 1):
            t = {}
            for sid in bd.values[d].level(lv):
                alpha, u, xv = unjid(sid)
                src, arrows = string_parts(alpha)
                chain = shape.comp_chain(arrows + [u], at=src)
                t[sid] = f.arrows[chain].comps[lv][xv]
            comps.append(t)
        out[d] = make_map(bd.values[d], f.values[d], comps)
    return out


def eta(shape: FinCat, f: Diagram, d: str, hcap: int | None = None) -> SimplicialMap:
    """The unit f(d) -> realize(B(hom(-, d), shape, f)) inserting identities."""
    cap = f.cap
    hcap = cap if hcap is None else hcap
    bd = bar_diagram(shape, f, hcap)
    target = bd.values[d]
    ident = shape.identity[d]
    comps = []
    for lv in range(min(hcap, cap) + 1):
        alpha = string_id(d, [ident] * lv)
        comps.append({x: jid(alpha, ident, x) for x in f.values[d].level(lv)})
    return make_map(f.values[d], target, comps)


@dataclass(frozen=True)
class ExtraDegeneracy:
    """Maps s_{-1}: X_n -> X_{n+1} contracting an augmented simplicial object."""
    maps: tuple[SimplicialMap, ...]


def extra_degeneracy_of_bar(shape: FinCat, f: Diagram, d: str,
                            hcap: int | None = None) -> tuple[SimpObj, ExtraDegeneracy]:
    """The contraction of B(hom(-, d), shape, f) by appending the weight arrow.

    Returned in the augmentation-friendly indexing (the horizontal reversal,
    face 0 on the weight side), under which the classical identities
    d_0 s_{-1} = id, d_{i+1} s_{-1} = s_{-1} d_i and s_{j+1} s_{-1} = s_{-1} s_j
    hold on the nose.
    """
    cap = f.cap
    hcap = cap if hcap is None else hcap
    bar = simplicial_bar(representable_weight(shape, d, cap), shape, f, hcap)
    rev = horizontal_reverse(bar)
    maps = []
    for n in range(hcap):
        comps = []
        for lv in range(cap + 1):
            t = {}
            for sid in rev.column(n).level(lv):
                alpha, u, xv = unjid(sid)
                src, arrows = string_parts(alpha)
                extended = string_id(src, arrows + [u])
                t[sid] = jid(extended, shape.identity[d], xv)
            comps.append(t)
        maps.append(make_map(rev.column(n), rev.column(n + 1), comps))
    return rev, ExtraDegeneracy(tuple(maps))


def check_extra_degeneracy(b: SimpObj, s: ExtraDegeneracy) -> list[str]:
    """Violations of the three extra-degeneracy identity families on b."""
    out = []
    for n in range(len(s.maps)):
        sm = s.maps[n]
        if compose_maps(b.hface(n + 1, 0), sm).comps != identity_map(b.column(n)).comps:
            out.append(f"d_0 s_-1 != id at column {n}")
        for i in range(n + 1):
            if n >= 1:
                left = compose_maps(b.hface(n + 1, i + 1), sm)
                if i <= n - 1:
                    right = compose_maps(s.maps[n - 1], b.hface(n, i))
                    if left.comps != right.comps:
                        out.append(f"d_{i + 1} s_-1 != s_-1 d_{i} at column {n}")
        if n + 1 < len(s.maps):
            for j in range(n + 1):
                left = compose_maps(s.maps[n + 1], b.hdegen(n, j))
                right = compose_maps(b.hdegen(n + 1, j + 1), sm)
                if left.comps != right.comps:
                    out.append(f"s_{j + 1} s_-1 != s_-1 s_{j} at column {n}")
    return out


@dataclass(frozen=True)
class SimplicialHomotopy:
    """Combinatorial homotopy data h_i: X_n -> Y_{n+1} between column maps."""
    start: tuple[SimplicialMap, ...]
    end: tuple[SimplicialMap, ...]
    blocks: tuple[tuple[SimplicialMap, ...], ...]    # blocks[n][i], 0 <= i <= n


def homotopy_from_extra_degeneracy(b: SimpObj, s: ExtraDegeneracy) -> SimplicialHomotopy:
    """The contraction homotopy h_i = s_{-1}^{i+1} d_0^i from the identity
    to the roundtrip through the augmentation."""
    hcap = len(s.maps)
    blocks, start, end = [], [], []
    for n in range(hcap):
        row = []
        for i in range(n + 1):
            m = identity_map(b.column(n))
            for k in range(i):
                m = compose_maps(b.hface(n - k, 0), m)
            for k in range(i + 1):
                m = compose_maps(s.maps[n - i + k], m)
            row.append(m)
        blocks.append(tuple(row))
        start.append(identity_map(b.column(n)))
        end.append(compose_maps(b.hface(n + 1, n + 1), row[n]))
    return SimplicialHomotopy(tuple(start), tuple(end), tuple(blocks))


@dataclass(frozen=True)
class CoherentTransformation:
    """A homotopy coherent transformation between diagrams.

    Stored as a natural family of simplicial maps out of the realized
    cylinder replacement: one map realize(B(hom(-, d), shape, f)) -> g(d)
    per object d.
    """
    shape: FinCat
    source: Diagram
    target: Diagram
    components: dict[str, SimplicialMap]

    def validate(self) -> None:
        bd = bar_diagram(self.shape, self.source, self.source.cap)
        for v in self.shape.morphisms:
            d1, d2 = self.shape.source[v], self.shape.target[v]
            left = compose_maps(self.target.arrows[v], self.components[d1])
            right = compose_maps(self.components[d2], bd.arrows[v])
            if left.comps != right.comps:
                raise NotNatural(f"coherent components fail naturality at {v}")


def strict_to_coherent(shape: FinCat, f: Diagram, g: Diagram,
                       nat: dict[str, SimplicialMap]) -> CoherentTransformation:
    """The coherent transformation of a strict natural transformation,
    obtained by collapsing the cylinders first."""
    eps = epsilon(shape, f)
    comps = {d: compose_maps(nat[d], eps[d]) for d in shape.objects}
    phi = CoherentTransformation(shape, f, g, comps)
    phi.validate()
    return phi


@dataclass(frozen=True)
class CoherenceData:
    """Unraveled low-degree data of a coherent transformation.

    alpha_obj are the object components, alpha_arr the arrow components,
    homotopy1 the prism blocks comparing the two composites around each
    composable pair, and two_cells the comparison 2-simplices for each
    composable triple (recorded on vertices).
    """
    alpha_obj: dict[str, SimplicialMap]
    alpha_arr: dict[str, SimplicialMap]
    homotopy1: dict[tuple[str, str], tuple]
    two_cells: dict[tuple[str, str, str], dict[str, str]]


def coherent_unravel(phi: CoherentTransformation, depth: int = 2) -> CoherenceData:
    """Extract components, arrow components, comparison homotopies, and
    (at depth 2) the higher comparison simplices."""
    phi.validate()
    shape, f, g = phi.shape, phi.source, phi.target
    cap = f.cap
    alpha_obj = {d: compose_maps(phi.components[d], eta(shape, f, d))
                 for d in shape.objects}
    alpha_arr = {}
    for u in shape.morphisms:
        d0, d1 = shape.source[u], shape.target[u]
        comps = []
        for lv in range(cap + 1):
            alpha = string_id(d0, [shape.identity[d0]] * lv)
            comps.append({x: phi.components[d1].comps[lv][jid(alpha, u, x)]
                          for x in f.values[d0].level(lv)})
        alpha_arr[u] = make_map(f.values[d0], g.values[d1], comps)
    homotopy1 = {}
    if depth >= 1:
        for u1 in shape.morphisms:
            for u2 in shape.morphisms:
                if shape.source[u2] != shape.target[u1]:
                    continue
                d0, d1 = shape.source[u1], shape.target[u1]
                d2 = shape.target[u2]
                rows = []
                for lv in range(cap):
                    row = []
                    for i in range(lv + 1):
                        ids0 = [shape.identity[d0]] * i
                        ids1 = [shape.identity[d1]] * (lv - i)
                        alpha = string_id(d0, ids0 + [u1] + ids1)
                        table = {
                            x: phi.components[d2].comps[lv + 1][
                                jid(alpha, u2, f.values[d0].degen(lv, i, x))]
                            for x in f.values[d0].level(lv)}
                        row.append(table)
                    rows.append(tuple(row))
                homotopy1[(u1, u2)] = tuple(rows)
    two_cells = {}
    if depth >= 2 and cap >= 2:
        for u1 in shape.morphisms:
            for u2 in shape.morphisms:
                if shape.source[u2] != shape.target[u1]:
                    continue
                for u3 in shape.morphisms:
                    if shape.source[u3] != shape.target[u2]:
                        continue
                    d0 = shape.source[u1]
                    d3 = shape.target[u3]
                    alpha = string_id(d0, [u1, u2])
                    cells = {}
                    for x in f.values[d0].level(0):
                        xx = f.values[d0].degen(1, 0, f.values[d0].degen(0, 0, x))
                        cells[x] = phi.components[d3].comps[2][jid(alpha, u3, xx)]
                    two_cells[(u1, u2, u3)] = cells
    return CoherenceData(alpha_obj, alpha_arr, homotopy1, two_cells)


def check_coherence(phi: CoherentTransformation, data: CoherenceData) -> list[str]:
    """Verify the unraveled relations: arrow components compose through the
    target action, the prisms are genuine homotopies between the two
    composites, and the 2-cells' faces are the three comparison prisms."""
    shape, f, g = phi.shape, phi.source, phi.target
    cap = f.cap
    out = []
    for u in shape.morphisms:
        d0 = shape.source[u]
        want = compose_maps(g.arrows[u], data.alpha_obj[d0])
        if data.alpha_arr[u].comps != want.comps:
            out.append(f"arrow component at {u} is not the pushed object component")
    for (u1, u2), rows in data.homotopy1.items():
        d0 = shape.source[u1]
        d2 = shape.target[u2]
        u21 = shape.comp(u2, u1)
        start = compose_maps(data.alpha_arr[u2], f.arrows[u1])
        end = data.alpha_arr[u21]
        out.extend(_check_vertical_homotopy(
            f.values[d0], g.values[d2], start, end, rows, f"({u1},{u2})"))
    for (u1, u2, u3), cells in data.two_cells.items():
        d0 = shape.source[u1]
        d3 = shape.target[u3]
        u21 = shape.comp(u2, u1)
        u32 = shape.comp(u3, u2)
        for x, cell in cells.items():
            fx = f.arrows[u1].comps[0][x]
            faces = [g.values[d3].face(2, i, cell) for i in range(3)]
            expect = [data.homotopy1[(u2, u3)][0][0][fx],
                      data.homotopy1[(u21, u3)][0][0][x],
                      data.homotopy1[(u1, u32)][0][0][x]]
            for i, (got, want) in enumerate(zip(faces, expect)):
                if got != want:
                    out.append(f"2-cell face {i} at ({u1},{u2},{u3}) on {x}")
    return out


def _check_vertical_homotopy(x, y, start, end, rows, tag):
    """May's combinatorial homotopy equations for prism blocks between two
    simplicial maps x -> y."""
    out = []
    for n in range(len(rows)):
        row = rows[n]
        for s in x.level(n):
            if y.face(n + 1, 0, row[0][s]) != start.comps[n][s]:
                out.append(f"{tag}: d_0 h_0 != start at level {n}")
            if y.face(n + 1, n + 1, row[n][s]) != end.comps[n][s]:
                out.append(f"{tag}: d_{n+1} h_{n} != end at level {n}")
            for j in range(n + 1):
                for i in range(n + 2):
                    if i in (j, j + 1) or n == 0:
                        continue
                    got = y.face(n + 1, i, row[j][s])
                    if i < j:
                        want = rows[n - 1][j - 1][x.face(n, i, s)]
                    else:
                        want = rows[n - 1][j][x.face(n, i - 1, s)]
                    if got != want:
                        out.append(f"{tag}: d_{i} h_{j} mismatch at level {n}")
            for j in range(n):
                if y.face(n + 1, j + 1, row[j + 1][s]) != y.face(n + 1, j + 1, row[j][s]):
                    out.append(f"{tag}: matching d_{j+1} failure at level {n}")
            if n + 1 < len(rows):
                for j in range(n + 1):
                    for i in range(n + 2):
                        got = y.degen(n + 1, i, row[j][s])
                        if i <= j:
                            want = rows[n + 1][j + 1][x.degen(n, i, s)]
                        else:
                            want = rows[n + 1][j][x.degen(n, i - 1, s)]
                        if got != want:
                            out.append(f"{tag}: s_{i} h_{j} mismatch at level {n}")
    return out


def check_simplicial_homotopy(b: SimpObj, h: SimplicialHomotopy) -> list[str]:
    """Violations of the combinatorial homotopy boundary equations."""
    out = []
    for n in range(len(h.blocks)):
        row = h.blocks[n]
        if compose_maps(b.hface(n + 1, 0), row[0]).comps != h.start[n].comps:
            out.append(f"d_0 h_0 != start at column {n}")
        if compose_maps(b.hface(n + 1, n + 1), row[n]).comps != h.end[n].comps:
            out.append(f"d_{n + 1} h_{n} != end at column {n}")
        for j in range(n + 1):
            for i in range(n + 2):
                if i in (j, j + 1) or n == 0:
                    continue
                left = compose_maps(b.hface(n + 1, i), row[j])
                if i < j:
                    right = compose_maps(h.blocks[n - 1][j - 1], b.hface(n, i))
                else:
                    right = compose_maps(h.blocks[n - 1][j], b.hface(n, i - 1))
                if left.comps != right.comps:
                    out.append(f"d_{i} h_{j} mismatch at column {n}")
        for j in range(n):
            left = compose_maps(b.hface(n + 1, j + 1), row[j + 1])
            right = compose_maps(b.hface(n + 1, j + 1), row[j])
            if left.comps != right.comps:
                out.append(f"d_{j + 1} h_{j + 1} != d_{j + 1} h_{j} at column {n}")
        if n + 1 < len(h.blocks):
            for j in range(n + 1):
                for i in range(n + 2):
                    left = compose_maps(b.hdegen(n + 1, i), row[j])
                    if i <= j:
                        right = compose_maps(h.blocks[n + 1][j + 1], b.hdegen(n, i))
                    else:
                        right = compose_maps(h.blocks[n + 1][j], b.hdegen(n, i - 1))
                    if left.comps != right.comps:
                        out.append(f"s_{i} h_{j} mismatch at column {n}")
    return out
