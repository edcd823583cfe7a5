"""Truncated simplicial sets and their levelwise constructions.

A TruncSSet stores *all* simplices up to a dimension cap, including the
degenerate ones, as finite sets of string ids with explicit face and
degeneracy tables.  That makes coproducts, products, quotients and the
diagonal plain set operations.  Constructions are honest about truncation:
homology and Kan checks are only claimed for degrees where the cap provides
enough data.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .fincat import jid, unjid
from .snf import abelian_group_of_map, chain_homology, mapping_cone_boundaries, smith_diagonal


class SSetError(Exception):
    pass


class CapMismatch(SSetError):
    pass


class TypeMismatch(SSetError):
    pass


class DegreeBeyondCap(SSetError):
    pass


class SimplicialIdentityError(SSetError):
    pass


@dataclass(frozen=True, eq=False)
class TruncSSet:
    """A simplicial set truncated at dimension `cap`.

    levels[n] is the sorted tuple of n-simplex ids; faces[(n, i)] and
    degens[(n, i)] are the d_i / s_i lookup tables.  `exact_to` records up to
    which output level the data is exact (mapping spaces and totalizations
    may be approximate above it); it defaults to the cap.
    """

    cap: int
    levels: tuple[tuple[str, ...], ...]
    faces: dict[tuple[int, int], dict[str, str]]
    degens: dict[tuple[int, int], dict[str, str]]
    exact_to: int = field(default=-1)

    def __post_init__(self):
        if self.exact_to == -1:
            object.__setattr__(self, "exact_to", self.cap)

    def level(self, n: int) -> tuple[str, ...]:
        return self.levels[n] if 0 <= n <= self.cap else ()

    def face(self, n: int, i: int, x: str) -> str:
        return self.faces[(n, i)][x]

    def degen(self, n: int, i: int, x: str) -> str:
        return self.degens[(n, i)][x]

    def size(self) -> int:
        return sum(len(l) for l in self.levels)

    def degenerate_at(self, n: int) -> frozenset[str]:
        if n == 0:
            return frozenset()
        out = set()
        for i in range(n):
            out.update(self.degens[(n - 1, i)].values())
        return frozenset(out)

    def nondegenerate(self, n: int) -> tuple[str, ...]:
        degen = self.degenerate_at(n)
        return tuple(x for x in self.level(n) if x not in degen)

    def top_nondegenerate_dim(self) -> int:
        for n in range(self.cap, -1, -1):
            if self.nondegenerate(n):
                return n
        return 0

    def validate(self) -> None:
        audit_simplicial_identities(self)

    def __eq__(self, other) -> bool:
        if not isinstance(other, TruncSSet):
            return NotImplemented
        return (self.cap == other.cap and self.levels == other.levels
                and self.faces == other.faces and self.degens == other.degens)


def make_sset(cap, levels, faces, degens, exact_to=-1, check=True) -> TruncSSet:
    levels = tuple(tuple(sorted(set(l))) for l in levels)
    if len(levels) != cap + 1:
        raise CapMismatch(f"expected {cap + 1} levels, got {len(levels)}")
    x = TruncSSet(cap, levels, faces, degens, exact_to)
    if check:
        x.validate()
    return x


def audit_simplicial_identities(x: TruncSSet) -> None:
    """Check every simplicial identity that is defined within the cap."""
    for n in range(1, x.cap + 1):
        for i in range(n + 1):
            t = x.faces.get((n, i))
            if t is None or set(t) != set(x.level(n)):
                raise SimplicialIdentityError(f"face table ({n},{i}) missing or partial")
            for v in t.values():
                if v not in set(x.level(n - 1)):
                    raise SimplicialIdentityError(f"face ({n},{i}) leaves level {n - 1}")
    for n in range(0, x.cap):
        for i in range(n + 1):
            t = x.degens.get((n, i))
            if t is None or set(t) != set(x.level(n)):
                raise SimplicialIdentityError(f"degeneracy table ({n},{i}) missing or partial")
            for v in t.values():
                if v not in set(x.level(n + 1)):
                    raise SimplicialIdentityError(f"degeneracy ({n},{i}) leaves level {n + 1}")
    for n in range(2, x.cap + 1):
        for j in range(n + 1):
            for i in range(j):
                for s in x.level(n):
                    if x.face(n - 1, i, x.face(n, j, s)) != x.face(n - 1, j - 1, x.face(n, i, s)):
                        raise SimplicialIdentityError(f"d_{i} d_{j} failure at level {n}: {s}")
    for n in range(0, x.cap):
        for j in range(n + 1):
            for s in x.level(n):
                sj = x.degen(n, j, s)
                if x.face(n + 1, j, sj) != s or x.face(n + 1, j + 1, sj) != s:
                    raise SimplicialIdentityError(f"d s unit failure at level {n}: {s}")
    for n in range(1, x.cap):
        for j in range(n + 1):
            for i in range(n + 2):
                if i == j or i == j + 1:
                    continue
                for s in x.level(n):
                    sj = x.degen(n, j, s)
                    left = x.face(n + 1, i, sj)
                    if i < j:
                        right = x.degen(n - 1, j - 1, x.face(n, i, s))
                    else:
                        right = x.degen(n - 1, j, x.face(n, i - 1, s))
                    if left != right:
                        raise SimplicialIdentityError(f"d_{i} s_{j} failure at level {n}: {s}")
    for n in range(0, x.cap - 1):
        for j in range(n + 1):
            for i in range(j + 1):
                for s in x.level(n):
                    if x.degen(n + 1, i, x.degen(n, j, s)) != x.degen(n + 1, j + 1, x.degen(n, i, s)):
                        raise SimplicialIdentityError(f"s_{i} s_{j} failure at level {n}: {s}")


@dataclass(frozen=True, eq=False)
class SimplicialMap:
    source: TruncSSet
    target: TruncSSet
    comps: tuple[dict[str, str], ...]

    def __call__(self, n: int, x: str) -> str:
        return self.comps[n][x]

    def validate(self) -> None:
        if self.source.cap != self.target.cap:
            raise CapMismatch("simplicial map between different caps")
        for n in range(self.source.cap + 1):
            comp = self.comps[n]
            if set(comp) != set(self.source.level(n)):
                raise TypeMismatch(f"level {n} components missing")
            tgt = set(self.target.level(n))
            for v in comp.values():
                if v not in tgt:
                    raise TypeMismatch(f"level {n} image leaves target")
        for n in range(1, self.source.cap + 1):
            for i in range(n + 1):
                for x in self.source.level(n):
                    if self.comps[n - 1][self.source.face(n, i, x)] != \
                            self.target.face(n, i, self.comps[n][x]):
                        raise SimplicialIdentityError(f"map does not commute with d_{i} at level {n}")
        for n in range(0, self.source.cap):
            for i in range(n + 1):
                for x in self.source.level(n):
                    if self.comps[n + 1][self.source.degen(n, i, x)] != \
                            self.target.degen(n, i, self.comps[n][x]):
                        raise SimplicialIdentityError(f"map does not commute with s_{i} at level {n}")

    def is_injective(self) -> bool:
        return all(len(set(c.values())) == len(c) for c in self.comps)

    def is_bijective(self) -> bool:
        return self.is_injective() and all(
            len(set(self.comps[n].values())) == len(self.target.level(n))
            for n in range(self.source.cap + 1))

    def __eq__(self, other) -> bool:
        if not isinstance(other, SimplicialMap):
            return NotImplemented
        return (self.source == other.source and self.target == other.target
                and self.comps == other.comps)


def make_map(source, target, comps, check=True) -> SimplicialMap:
    f = SimplicialMap(source, target, tuple(dict(c) for c in comps))
    if check:
        f.validate()
    return f


def identity_map(x: TruncSSet) -> SimplicialMap:
    return SimplicialMap(x, x, tuple({s: s for s in x.level(n)} for n in range(x.cap + 1)))


def compose_maps(g: SimplicialMap, f: SimplicialMap) -> SimplicialMap:
    if f.target != g.source:
        raise TypeMismatch("maps not composable")
    return SimplicialMap(f.source, g.target,
                         tuple({x: g.comps[n][y] for x, y in f.comps[n].items()}
                               for n in range(f.source.cap + 1)))


def constant_map(x: TruncSSet, y: TruncSSet, vertex: str) -> SimplicialMap:
    """The map collapsing x to the degeneracies of the given vertex of y."""
    images = [vertex]
    for n in range(y.cap):
        images.append(y.degen(n, 0, images[-1]))
    return make_map(x, y, [{s: images[n] for s in x.level(n)} for n in range(x.cap + 1)])


# ---------------------------------------------------------------------------
# monotone maps and standard simplices

def monotone_maps(m: int, n: int) -> list[tuple[int, ...]]:
    """All order-preserving maps [m] -> [n], as value tuples."""
    return [c for c in itertools.product(range(n + 1), repeat=m + 1)
            if all(c[i] <= c[i + 1] for i in range(m))]


def mono_id(values) -> str:
    return jid(*values)


def compose_monotone(g, f) -> tuple[int, ...]:
    """g after f for value-tuple monotone maps."""
    return tuple(g[v] for v in f)


def coface(n: int, i: int) -> tuple[int, ...]:
    """delta^i: [n-1] -> [n], skipping i."""
    return tuple(v if v < i else v + 1 for v in range(n))


def codegeneracy(n: int, i: int) -> tuple[int, ...]:
    """sigma^i: [n+1] -> [n], repeating i."""
    return tuple(v if v <= i else v - 1 for v in range(n + 2))


def epi_mono_factor(phi: tuple[int, ...]) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Unique factorization of a monotone map as surjection then injection."""
    image = sorted(set(phi))
    rank = {v: k for k, v in enumerate(image)}
    surj = tuple(rank[v] for v in phi)
    inj = tuple(image)
    return surj, inj


def standard_simplex(n: int, cap: int) -> TruncSSet:
    """The n-simplex: level m is the monotone maps [m] -> [n]."""
    levels = [[mono_id(c) for c in monotone_maps(m, n)] for m in range(cap + 1)]
    faces, degens = {}, {}
    for m in range(1, cap + 1):
        for i in range(m + 1):
            faces[(m, i)] = {mono_id(c): mono_id(compose_monotone(c, coface(m, i)))
                             for c in monotone_maps(m, n)}
    for m in range(cap):
        for i in range(m + 1):
            degens[(m, i)] = {mono_id(c): mono_id(compose_monotone(c, codegeneracy(m, i)))
                              for c in monotone_maps(m, n)}
    return make_sset(cap, levels, faces, degens)


def simplex_map(phi: tuple[int, ...], m: int, n: int, cap: int) -> SimplicialMap:
    """The map of standard simplices induced by a monotone map [m] -> [n]."""
    src, tgt = standard_simplex(m, cap), standard_simplex(n, cap)
    comps = [{mono_id(c): mono_id(compose_monotone(phi, c)) for c in monotone_maps(k, m)}
             for k in range(cap + 1)]
    return make_map(src, tgt, comps)


def terminal_sset(cap: int) -> TruncSSet:
    return standard_simplex(0, cap)


def empty_sset(cap: int) -> TruncSSet:
    return make_sset(cap, [[] for _ in range(cap + 1)],
                     {(n, i): {} for n in range(1, cap + 1) for i in range(n + 1)},
                     {(n, i): {} for n in range(cap) for i in range(n + 1)})


def discrete_sset(points, cap: int) -> TruncSSet:
    """The constant simplicial set on a finite set of point ids."""
    points = sorted(points)
    levels = [list(points) for _ in range(cap + 1)]
    faces = {(n, i): {p: p for p in points} for n in range(1, cap + 1) for i in range(n + 1)}
    degens = {(n, i): {p: p for p in points} for n in range(cap) for i in range(n + 1)}
    return make_sset(cap, levels, faces, degens)


def boundary_simplex(n: int, cap: int) -> TruncSSet:
    """The boundary of the n-simplex: monotone maps that miss a vertex."""
    def keep(c):
        return len(set(c)) <= n
    levels = [[mono_id(c) for c in monotone_maps(m, n) if keep(c)] for m in range(cap + 1)]
    faces, degens = {}, {}
    for m in range(1, cap + 1):
        for i in range(m + 1):
            faces[(m, i)] = {mono_id(c): mono_id(compose_monotone(c, coface(m, i)))
                             for c in monotone_maps(m, n) if keep(c)}
    for m in range(cap):
        for i in range(m + 1):
            degens[(m, i)] = {mono_id(c): mono_id(compose_monotone(c, codegeneracy(m, i)))
                              for c in monotone_maps(m, n) if keep(c)}
    return make_sset(cap, levels, faces, degens)


def vertex_inclusion(x: TruncSSet, v: str, cap: int | None = None) -> SimplicialMap:
    """Delta^0 -> x at the vertex v."""
    cap = x.cap if cap is None else cap
    pt = terminal_sset(cap)
    images = [v]
    for n in range(cap):
        images.append(x.degen(n, 0, images[-1]))
    return make_map(pt, x, [{pt.level(n)[0]: images[n]} for n in range(cap + 1)])


# ---------------------------------------------------------------------------
# coproducts, products, quotients, (co)limits

def _tag(tag: str, x: str) -> str:
    return jid(tag, x)


def coproduct_many(parts: dict[str, TruncSSet],
                   cap: int | None = None) -> tuple[TruncSSet, dict[str, SimplicialMap]]:
    """Disjoint union; simplices tagged by part name."""
    caps = {x.cap for x in parts.values()}
    if len(caps) > 1:
        raise CapMismatch("coproduct across different caps")
    if caps:
        got = caps.pop()
        if cap is not None and got != cap:
            raise CapMismatch("coproduct parts do not match the requested cap")
        cap = got
    elif cap is None:
        cap = 0
    levels = [[] for _ in range(cap + 1)]
    faces = {(n, i): {} for n in range(1, cap + 1) for i in range(n + 1)}
    degens = {(n, i): {} for n in range(cap) for i in range(n + 1)}
    for tag in sorted(parts):
        x = parts[tag]
        for n in range(cap + 1):
            levels[n].extend(_tag(tag, s) for s in x.level(n))
        for (n, i), t in x.faces.items():
            faces[(n, i)].update({_tag(tag, a): _tag(tag, b) for a, b in t.items()})
        for (n, i), t in x.degens.items():
            degens[(n, i)].update({_tag(tag, a): _tag(tag, b) for a, b in t.items()})
    total = make_sset(cap, levels, faces, degens)
    injections = {}
    for tag in sorted(parts):
        x = parts[tag]
        injections[tag] = make_map(x, total, [{s: _tag(tag, s) for s in x.level(n)}
                                              for n in range(cap + 1)])
    return total, injections


def coproduct(x: TruncSSet, y: TruncSSet) -> TruncSSet:
    return coproduct_many({"0": x, "1": y})[0]


def product_many(factors: list[TruncSSet]) -> tuple[TruncSSet, list[SimplicialMap]]:
    """Cartesian product, levelwise; simplices are tuples."""
    if not factors:
        raise TypeMismatch("empty product; use terminal_sset")
    caps = {x.cap for x in factors}
    if len(caps) > 1:
        raise CapMismatch("product across different caps")
    cap = caps.pop()
    levels = [[jid(*combo) for combo in itertools.product(*(x.level(n) for x in factors))]
              for n in range(cap + 1)]
    faces, degens = {}, {}
    for n in range(1, cap + 1):
        for i in range(n + 1):
            faces[(n, i)] = {
                s: jid(*(x.face(n, i, c) for x, c in zip(factors, unjid(s))))
                for s in levels[n]}
    for n in range(cap):
        for i in range(n + 1):
            degens[(n, i)] = {
                s: jid(*(x.degen(n, i, c) for x, c in zip(factors, unjid(s))))
                for s in levels[n]}
    total = make_sset(cap, levels, faces, degens)
    projections = [
        make_map(total, x, [{s: unjid(s)[k] for s in total.level(n)} for n in range(cap + 1)])
        for k, x in enumerate(factors)]
    return total, projections


def product(x: TruncSSet, y: TruncSSet) -> TruncSSet:
    return product_many([x, y])[0]


def tensor(k: TruncSSet, x: TruncSSet) -> TruncSSet:
    """Tensor of simplicial sets is the cartesian product."""
    return product(k, x)


def pair_map(f: SimplicialMap, g: SimplicialMap) -> SimplicialMap:
    """(f, g): A -> X x Y for maps f: A -> X, g: A -> Y."""
    if f.source != g.source:
        raise TypeMismatch("pairing of maps with different sources")
    tgt = product(f.target, g.target)
    comps = [{a: jid(f.comps[n][a], g.comps[n][a]) for a in f.source.level(n)}
             for n in range(f.source.cap + 1)]
    return make_map(f.source, tgt, comps)


def product_map(f: SimplicialMap, g: SimplicialMap) -> SimplicialMap:
    """f x g on cartesian products."""
    src = product(f.source, g.source)
    tgt = product(f.target, g.target)
    comps = []
    for n in range(src.cap + 1):
        comp = {}
        for s in src.level(n):
            a, b = unjid(s)
            comp[s] = jid(f.comps[n][a], g.comps[n][b])
        comps.append(comp)
    return make_map(src, tgt, comps)


class _UnionFind:
    def __init__(self):
        self.parent = {}

    def add(self, x):
        self.parent.setdefault(x, x)

    def find(self, x):
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a, b) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        # deterministic representative: lexicographically least id wins
        lo, hi = (ra, rb) if ra < rb else (rb, ra)
        self.parent[hi] = lo
        return True


def quotient(x: TruncSSet, pairs: list[tuple[int, str, str]]) -> tuple[TruncSSet, SimplicialMap]:
    """Quotient by the simplicial congruence generated by the given pairs.

    pairs are (level, a, b).  Identifications propagate along faces and
    degeneracies via a worklist, so the quotient tables are well defined.
    Representatives are the lexicographically least member of each class.
    """
    uf = [_UnionFind() for _ in range(x.cap + 1)]
    for n in range(x.cap + 1):
        for s in x.level(n):
            uf[n].add(s)
    work = list(pairs)
    while work:
        n, a, b = work.pop()
        if not uf[n].union(a, b):
            continue
        if n >= 1:
            for i in range(n + 1):
                work.append((n - 1, x.face(n, i, a), x.face(n, i, b)))
        if n < x.cap:
            for i in range(n + 1):
                work.append((n + 1, x.degen(n, i, a), x.degen(n, i, b)))
    # least member of each class, not just the union-find root
    rep = []
    for n in range(x.cap + 1):
        least: dict[str, str] = {}
        for s in x.level(n):
            r = uf[n].find(s)
            if r not in least or s < least[r]:
                least[r] = s
        rep.append({s: least[uf[n].find(s)] for s in x.level(n)})
    levels = [sorted(set(rep[n].values())) for n in range(x.cap + 1)]
    faces = {(n, i): {rep[n][s]: rep[n - 1][x.face(n, i, s)] for s in x.level(n)}
             for n in range(1, x.cap + 1) for i in range(n + 1)}
    degens = {(n, i): {rep[n][s]: rep[n + 1][x.degen(n, i, s)] for s in x.level(n)}
              for n in range(x.cap) for i in range(n + 1)}
    q = make_sset(x.cap, levels, faces, degens)
    proj = make_map(x, q, rep)
    return q, proj


def colimit(shape, diagram, cap: int | None = None) -> tuple[TruncSSet, dict[str, SimplicialMap]]:
    """Colimit of a diagram of TruncSSets: coproduct then quotient.

    Gluing relations: for every morphism f: d -> d' and simplex s of F(d),
    the images of s in the d and d' summands are identified.
    """
    values = {d: diagram.value(d) for d in shape.objects}
    total, injections = coproduct_many(values, cap=cap)
    pairs = []
    for f in shape.morphisms:
        if shape.is_identity(f):
            continue
        d, d2 = shape.source[f], shape.target[f]
        fmap = diagram.arrow(f)
        for n in range(total.cap + 1):
            for s in values[d].level(n):
                pairs.append((n, _tag(d, s), _tag(d2, fmap.comps[n][s])))
    q, proj = quotient(total, pairs)
    return q, {d: compose_maps(proj, injections[d]) for d in shape.objects}


def coequalizer(f: SimplicialMap, g: SimplicialMap) -> tuple[TruncSSet, SimplicialMap]:
    if f.source != g.source or f.target != g.target:
        raise TypeMismatch("coequalizer of an ill-formed parallel pair")
    pairs = [(n, f.comps[n][s], g.comps[n][s])
             for n in range(f.source.cap + 1) for s in f.source.level(n)]
    return quotient(f.target, pairs)


def limit(shape, diagram, cap: int | None = None) -> tuple[TruncSSet, dict[str, SimplicialMap]]:
    """Limit: levelwise compatible families, faces and degeneracies componentwise."""
    values = {d: diagram.value(d) for d in shape.objects}
    caps = {v.cap for v in values.values()}
    if len(caps) > 1:
        raise CapMismatch("limit across different caps")
    if caps:
        cap = caps.pop()
    elif cap is None:
        raise CapMismatch("limit of an empty diagram needs an explicit cap")
    objs = sorted(shape.objects)
    arrows = [(f, shape.source[f], shape.target[f])
              for f in shape.morphisms if not shape.is_identity(f)]
    levels, members = [], []
    for n in range(cap + 1):
        families = []
        for combo in itertools.product(*(values[d].level(n) for d in objs)):
            fam = dict(zip(objs, combo))
            if all(diagram.arrow(f).comps[n][fam[d]] == fam[d2] for f, d, d2 in arrows):
                families.append(fam)
        members.append(families)
        levels.append([jid(*(fam[d] for d in objs)) for fam in families])
    faces, degens = {}, {}
    for n in range(1, cap + 1):
        for i in range(n + 1):
            faces[(n, i)] = {
                jid(*(fam[d] for d in objs)):
                jid(*(values[d].face(n, i, fam[d]) for d in objs))
                for fam in members[n]}
    for n in range(cap):
        for i in range(n + 1):
            degens[(n, i)] = {
                jid(*(fam[d] for d in objs)):
                jid(*(values[d].degen(n, i, fam[d]) for d in objs))
                for fam in members[n]}
    lim = make_sset(cap, levels, faces, degens)
    projections = {
        d: make_map(lim, values[d],
                    [{jid(*(fam[o] for o in objs)): fam[d] for fam in members[n]}
                     for n in range(cap + 1)])
        for d in objs}
    return lim, projections


def equalizer(f: SimplicialMap, g: SimplicialMap) -> tuple[TruncSSet, SimplicialMap]:
    """The subobject of the common source where f and g agree."""
    if f.source != g.source or f.target != g.target:
        raise TypeMismatch("equalizer of an ill-formed parallel pair")
    x = f.source
    keep = [set(s for s in x.level(n) if f.comps[n][s] == g.comps[n][s])
            for n in range(x.cap + 1)]
    levels = [sorted(keep[n]) for n in range(x.cap + 1)]
    faces = {(n, i): {s: x.face(n, i, s) for s in keep[n]}
             for n in range(1, x.cap + 1) for i in range(n + 1)}
    degens = {(n, i): {s: x.degen(n, i, s) for s in keep[n]}
              for n in range(x.cap) for i in range(n + 1)}
    sub = make_sset(x.cap, levels, faces, degens)
    incl = make_map(sub, x, [{s: s for s in keep[n]} for n in range(x.cap + 1)])
    return sub, incl


def pullback(f: SimplicialMap, g: SimplicialMap) -> tuple[TruncSSet, SimplicialMap, SimplicialMap]:
    """Pullback of the cospan f: X -> Z <- Y : g."""
    if f.target != g.target:
        raise TypeMismatch("pullback of maps with different targets")
    x, y = f.source, g.source
    cap = x.cap
    if y.cap != cap:
        raise CapMismatch("pullback across different caps")
    keep = [[(a, b) for a in x.level(n) for b in y.level(n)
             if f.comps[n][a] == g.comps[n][b]] for n in range(cap + 1)]
    levels = [[jid(a, b) for a, b in keep[n]] for n in range(cap + 1)]
    faces = {(n, i): {jid(a, b): jid(x.face(n, i, a), y.face(n, i, b)) for a, b in keep[n]}
             for n in range(1, cap + 1) for i in range(n + 1)}
    degens = {(n, i): {jid(a, b): jid(x.degen(n, i, a), y.degen(n, i, b)) for a, b in keep[n]}
              for n in range(cap) for i in range(n + 1)}
    pb = make_sset(cap, levels, faces, degens)
    p1 = make_map(pb, x, [{jid(a, b): a for a, b in keep[n]} for n in range(cap + 1)])
    p2 = make_map(pb, y, [{jid(a, b): b for a, b in keep[n]} for n in range(cap + 1)])
    return pb, p1, p2


def sset_reverse(x: TruncSSet) -> TruncSSet:
    """Conjugate by the order-reversing automorphism of the simplex category.

    d_i becomes d_{n-i} and s_i becomes s_{n-i}; this is again a simplicial
    set, the reversal of x.
    """
    faces = {(n, i): dict(x.faces[(n, n - i)]) for n in range(1, x.cap + 1) for i in range(n + 1)}
    degens = {(n, i): dict(x.degens[(n, n - i)]) for n in range(x.cap) for i in range(n + 1)}
    return make_sset(x.cap, [list(l) for l in x.levels], faces, degens)


# ---------------------------------------------------------------------------
# enumeration of simplicial maps, mapping spaces, isomorphism search

def enumerate_simplicial_maps(a: TruncSSet, x: TruncSSet, limit: int | None = None):
    """All simplicial maps a -> x, by backtracking over nondegenerate simplices.

    Images of degenerate simplices are forced; nondegenerate ones are chosen
    subject to the face constraints.  Deterministic order.
    """
    if a.cap != x.cap:
        raise CapMismatch("map enumeration across different caps")
    cap = a.cap
    nondeg = [a.nondegenerate(n) for n in range(cap + 1)]
    results = []

    def force_degenerates(assign, n):
        # extend a full assignment on level n-1 to the degenerate part of level n
        for i in range(n):
            table = a.degens[(n - 1, i)]
            for y, s in table.items():
                v = x.degen(n - 1, i, assign[n - 1][y])
                if s in assign[n] and assign[n][s] != v:
                    return False
                assign[n][s] = v
        return True

    assign = [dict() for _ in range(cap + 1)]

    def level(n):
        if limit is not None and len(results) >= limit:
            return
        if n > cap:
            results.append(tuple(dict(c) for c in assign))
            return
        if n > 0:
            saved = dict(assign[n])
            if not force_degenerates(assign, n):
                assign[n] = saved
                return
            choose(n, 0)
            assign[n] = saved
        else:
            choose(0, 0)

    def choose(n, k):
        if limit is not None and len(results) >= limit:
            return
        if k >= len(nondeg[n]):
            level(n + 1)
            return
        s = nondeg[n][k]
        if n == 0:
            options = x.level(0)
        else:
            wanted = tuple(assign[n - 1][a.face(n, i, s)] for i in range(n + 1))
            options = [v for v in x.level(n)
                       if tuple(x.face(n, i, v) for i in range(n + 1)) == wanted]
        for v in options:
            assign[n][s] = v
            choose(n, k + 1)
            del assign[n][s]

    level(0)
    return [make_map(a, x, comps, check=False) for comps in results]


def map_graph_id(f: SimplicialMap) -> str:
    """Canonical id for a map: its graph on nondegenerate source simplices."""
    parts = []
    for n in range(f.source.cap + 1):
        for s in f.source.nondegenerate(n):
            parts.append([n, s, f.comps[n][s]])
    return jid(*parts)


@dataclass(frozen=True)
class MappingSpace:
    """Map(k, x): level n is the set of simplicial maps k x Delta^n -> x."""
    space: TruncSSet
    elements: tuple[dict[str, SimplicialMap], ...]
    k: TruncSSet
    x: TruncSSet


def mapping_space(k: TruncSSet, x: TruncSSet, cap_out: int | None = None) -> MappingSpace:
    if k.cap != x.cap:
        raise CapMismatch("mapping space across different caps")
    cap = k.cap
    cap_out = cap if cap_out is None else cap_out
    exact_to = cap_out
    if cap_out + k.top_nondegenerate_dim() > cap:
        exact_to = max(-1, cap - k.top_nondegenerate_dim())
    levels, elements = [], []
    simplexes = [standard_simplex(n, cap) for n in range(cap_out + 1)]
    prods = [product(k, simplexes[n]) for n in range(cap_out + 1)]
    for n in range(cap_out + 1):
        maps = enumerate_simplicial_maps(prods[n], x)
        table = {map_graph_id(f): f for f in maps}
        elements.append(table)
        levels.append(sorted(table))
    faces, degens = {}, {}
    for n in range(1, cap_out + 1):
        for i in range(n + 1):
            delta = simplex_map(coface(n, i), n - 1, n, cap)
            tab = {}
            for mid, f in elements[n].items():
                g = compose_maps(f, product_map(identity_map(k), delta))
                tab[mid] = map_graph_id(g)
            faces[(n, i)] = tab
    for n in range(cap_out):
        for i in range(n + 1):
            sigma = simplex_map(codegeneracy(n, i), n + 1, n, cap)
            tab = {}
            for mid, f in elements[n].items():
                g = compose_maps(f, product_map(identity_map(k), sigma))
                tab[mid] = map_graph_id(g)
            degens[(n, i)] = tab
    space = make_sset(cap_out, levels, faces, degens, exact_to=exact_to)
    return MappingSpace(space, tuple(elements), k, x)


def is_isomorphic(x: TruncSSet, y: TruncSSet) -> tuple[SimplicialMap, SimplicialMap] | None:
    """Search for a simplicial isomorphism; returns (iso, inverse) or None.

    Backtracking over nondegenerate simplices level by level; degenerate
    images are forced.  Prunes on level counts and face fingerprints.
    """
    if x.cap != y.cap:
        raise CapMismatch("isomorphism across different caps")
    cap = x.cap
    for n in range(cap + 1):
        if len(x.level(n)) != len(y.level(n)):
            return None
        if len(x.nondegenerate(n)) != len(y.nondegenerate(n)):
            return None
    nondeg = [x.nondegenerate(n) for n in range(cap + 1)]
    ynondeg = [set(y.nondegenerate(n)) for n in range(cap + 1)]
    assign = [dict() for _ in range(cap + 1)]
    used = [set() for _ in range(cap + 1)]
    found: list[tuple[dict, ...]] = []

    def force_degenerates(n):
        forced = {}
        for i in range(n):
            for s0, s in x.degens[(n - 1, i)].items():
                v = y.degen(n - 1, i, assign[n - 1][s0])
                if forced.get(s, v) != v:
                    return None
                forced[s] = v
        if len(set(forced.values())) != len(forced):
            return None
        for v in forced.values():
            if v in ynondeg[n]:
                return None
        return forced

    def level(n):
        if found:
            return
        if n > cap:
            found.append(tuple(dict(c) for c in assign))
            return
        if n > 0:
            forced = force_degenerates(n)
            if forced is None:
                return
            assign[n].update(forced)
            used[n].update(forced.values())
            choose(n, 0)
            for s in forced:
                del assign[n][s]
            used[n].difference_update(forced.values())
        else:
            choose(0, 0)

    def choose(n, k):
        if found:
            return
        if k >= len(nondeg[n]):
            level(n + 1)
            return
        s = nondeg[n][k]
        if n == 0:
            options = [v for v in y.level(0) if v not in used[0]]
        else:
            wanted = tuple(assign[n - 1][x.face(n, i, s)] for i in range(n + 1))
            options = [v for v in y.nondegenerate(n)
                       if v not in used[n]
                       and tuple(y.face(n, i, v) for i in range(n + 1)) == wanted]
        for v in options:
            assign[n][s] = v
            used[n].add(v)
            choose(n, k + 1)
            del assign[n][s]
            used[n].remove(v)

    level(0)
    if not found:
        return None
    comps = found[0]
    fwd = make_map(x, y, comps)
    inv = make_map(y, x, tuple({v: s for s, v in c.items()} for c in comps))
    return fwd, inv


# ---------------------------------------------------------------------------
# homology and Kan conditions

@dataclass(frozen=True)
class HomologyGroup:
    """A finitely generated abelian group: free rank plus canonical torsion."""
    degree: int
    betti: int
    torsion: tuple[int, ...]

    def __post_init__(self):
        if any(t < 2 for t in self.torsion):
            raise ValueError("torsion coefficients must be at least 2")
        for a, b in zip(self.torsion, self.torsion[1:]):
            if b % a != 0:
                raise ValueError("torsion coefficients must be in divisibility order")

    def __str__(self):
        parts = ["Z"] * self.betti + [f"Z/{t}" for t in self.torsion]
        return " + ".join(parts) if parts else "0"

    def is_trivial(self) -> bool:
        return self.betti == 0 and not self.torsion


def boundary_matrix(x: TruncSSet, n: int) -> tuple[list[list[int]], list[str], list[str]]:
    """Normalized boundary C_n -> C_{n-1}: alternating face sum on
    nondegenerate simplices, faces landing on degenerate ones dropped."""
    rows = list(x.nondegenerate(n - 1)) if n >= 1 else []
    cols = list(x.nondegenerate(n))
    index = {s: k for k, s in enumerate(rows)}
    mat = [[0] * len(cols) for _ in rows]
    if n >= 1:
        for j, s in enumerate(cols):
            for i in range(n + 1):
                f = x.face(n, i, s)
                if f in index:
                    mat[index[f]][j] += (-1) ** i
    return mat, rows, cols


def homology(x: TruncSSet, k: int) -> HomologyGroup:
    """H_k of the realization, exact for k <= cap - 1."""
    if k < 0:
        raise DegreeBeyondCap("negative degree")
    if k > x.cap - 1:
        raise DegreeBeyondCap(
            f"degree {k} needs level {k + 1} data; cap is {x.cap}")
    d_k, _, cols_k = boundary_matrix(x, k)
    d_k1, _, _ = boundary_matrix(x, k + 1)
    n_k = len(cols_k)
    rank_k = sum(1 for v in smith_diagonal(d_k) if v != 0) if k > 0 else 0
    betti, torsion = abelian_group_of_map(n_k - rank_k, d_k1)
    return HomologyGroup(k, betti, torsion)


def homology_groups(x: TruncSSet, degrees) -> dict[int, HomologyGroup]:
    return {k: homology(x, k) for k in degrees}


def chain_map_matrix(f: SimplicialMap, n: int) -> list[list[int]]:
    """Induced map on normalized chains in degree n (degenerate images drop)."""
    rows = list(f.target.nondegenerate(n))
    cols = list(f.source.nondegenerate(n))
    index = {s: k for k, s in enumerate(rows)}
    mat = [[0] * len(cols) for _ in rows]
    for j, s in enumerate(cols):
        img = f.comps[n][s]
        if img in index:
            mat[index[img]][j] = 1
    return mat


def is_homology_iso(f: SimplicialMap, up_to: int) -> bool:
    """Whether f induces isomorphisms on H_k for all k <= up_to.

    Uses the mapping cone: the cone is acyclic through degree `up_to` iff f
    is a homology isomorphism below it and surjective there; combined with
    abstract group equality at the top degree this pins the isomorphism
    (finitely generated abelian groups are Hopfian).
    """
    if up_to > f.source.cap - 1:
        raise DegreeBeyondCap(f"homology comparison to degree {up_to} exceeds cap data")
    cap = f.source.cap
    sizes_c = [len(f.source.nondegenerate(n)) for n in range(cap + 1)]
    sizes_d = [len(f.target.nondegenerate(n)) for n in range(cap + 1)]
    c_bounds = [boundary_matrix(f.source, n + 1)[0] for n in range(cap)]
    d_bounds = [boundary_matrix(f.target, n + 1)[0] for n in range(cap)]
    cmap = [chain_map_matrix(f, n) for n in range(cap + 1)]
    cone = mapping_cone_boundaries(c_bounds, sizes_c, d_bounds, sizes_d, cmap)
    sizes = [(sizes_c[n - 1] if n >= 1 else 0) + sizes_d[n] for n in range(cap + 1)]
    for k in range(up_to + 1):
        betti, torsion = chain_homology(cone, sizes, k)
        if betti != 0 or torsion:
            return False
    return homology(f.source, up_to) == homology(f.target, up_to)


def horn_tuples(x: TruncSSet, n: int, i: int):
    """All (n, i)-horns in x: compatible tuples of (n-1)-simplices missing slot i."""
    slots = [j for j in range(n + 1) if j != i]
    partial: list[dict[int, str]] = [dict()]
    for j in slots:
        new = []
        for p in partial:
            for cand in x.level(n - 1):
                ok = True
                for jj, prev in p.items():
                    a, b = (jj, j) if jj < j else (j, jj)
                    # face of the pair: d_a of slot-b entry equals d_{b-1} of slot-a entry
                    lo, hi = (prev, cand) if jj < j else (cand, prev)
                    if n >= 2 and x.face(n - 1, a, hi) != x.face(n - 1, b - 1, lo):
                        ok = False
                        break
                if ok:
                    q = dict(p)
                    q[j] = cand
                    new.append(q)
        partial = new
    return partial


def is_kan_up_to(x: TruncSSet, k: int) -> list[tuple[int, int, tuple[str, ...]]]:
    """Unfilled horns of dimension <= k; empty report means Kan up to k."""
    if k > x.cap - 1:
        raise DegreeBeyondCap(f"Kan check to degree {k} needs level {k + 1}; cap is {x.cap}")
    missing = []
    for n in range(1, k + 1):
        for i in range(n + 1):
            for horn in horn_tuples(x, n, i):
                filled = False
                for y in x.level(n):
                    if all(x.face(n, j, y) == horn[j] for j in horn):
                        filled = True
                        break
                if not filled:
                    missing.append((n, i, tuple(horn[j] for j in sorted(horn))))
    return missing
