"""Finite categories presented by explicit composition tables.

A category here is a plain lookup structure: object ids, morphism ids with
source/target, an identity table, and a total composition table over the
composable pairs.  Everything downstream (nerves, comma categories, diagram
shapes) is built out of these, so construction is strict: `make_category`
refuses anything that is not literally a category.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass


_ENCODE = json.JSONEncoder(separators=(",", ":"), ensure_ascii=False).encode
_DECODE = json.JSONDecoder().decode


def jid(*parts) -> str:
    """Canonical structural id: a compact JSON array of the given parts."""
    return _ENCODE(list(parts))


def unjid(s: str) -> list:
    return _DECODE(s)


class CategoryError(Exception):
    """Base class for malformed categorical data."""


class MissingIdentity(CategoryError):
    pass


class NonAssociative(CategoryError):
    pass


class IllTypedComposite(CategoryError):
    pass


class ObjectNotFound(CategoryError):
    pass


class FunctorError(CategoryError):
    pass


@dataclass(frozen=True)
class FinCat:
    """A finite category as identity/composition tables.

    Fields are plain dicts; values are immutable by convention.  Morphism
    equality is id equality.
    """

    objects: tuple[str, ...]
    source: dict[str, str]
    target: dict[str, str]
    identity: dict[str, str]
    compose: dict[tuple[str, str], str]

    @property
    def morphisms(self) -> tuple[str, ...]:
        cached = self.__dict__.get("_morphisms")
        if cached is None:
            cached = tuple(sorted(self.source))
            object.__setattr__(self, "_morphisms", cached)
        return cached

    def _hom_index(self) -> dict[tuple[str, str], tuple[str, ...]]:
        cached = self.__dict__.get("_homs")
        if cached is None:
            buckets: dict[tuple[str, str], list[str]] = {}
            for f in self.morphisms:
                buckets.setdefault((self.source[f], self.target[f]), []).append(f)
            cached = {k: tuple(v) for k, v in buckets.items()}
            object.__setattr__(self, "_homs", cached)
        return cached

    def hom(self, a: str, b: str) -> tuple[str, ...]:
        return self._hom_index().get((a, b), ())

    def is_identity(self, f: str) -> bool:
        return self.identity.get(self.source[f]) == f

    def comp(self, g: str, f: str) -> str:
        """g after f.  Raises IllTypedComposite on a non-composable pair."""
        try:
            return self.compose[(g, f)]
        except KeyError:
            raise IllTypedComposite(f"({g}, {f}) is not composable") from None

    def comp_chain(self, fs: list[str] | tuple[str, ...], at: str | None = None) -> str:
        """Composite of a string f1, f2, ... (applied left to right).

        Empty chains need `at` to pick the identity.
        """
        if not fs:
            if at is None:
                raise IllTypedComposite("empty chain with no base object")
            return self.identity[at]
        out = fs[0]
        for f in fs[1:]:
            out = self.comp(f, out)
        return out

    def composable_pairs(self):
        for g in self.morphisms:
            for f in self.morphisms:
                if self.target[f] == self.source[g]:
                    yield g, f

    def validate(self, assoc: bool = True) -> None:
        for f, s in self.source.items():
            if s not in self.objects:
                raise ObjectNotFound(f"source of {f}: {s}")
        for f, t in self.target.items():
            if t not in self.objects:
                raise ObjectNotFound(f"target of {f}: {t}")
        if set(self.source) != set(self.target):
            raise IllTypedComposite("source/target tables disagree on morphism ids")
        for x in self.objects:
            e = self.identity.get(x)
            if e is None or e not in self.source:
                raise MissingIdentity(f"no identity morphism for {x}")
            if self.source[e] != x or self.target[e] != x:
                raise MissingIdentity(f"identity of {x} is not an endomorphism of {x}")
        for (g, f), h in self.compose.items():
            if g not in self.source or f not in self.source:
                raise IllTypedComposite(f"composition table mentions unknown pair ({g}, {f})")
            if self.target[f] != self.source[g]:
                raise IllTypedComposite(f"({g}, {f}) composed but not composable")
            if h not in self.source:
                raise IllTypedComposite(f"({g}, {f}) -> {h}: unknown result id")
            if self.source[h] != self.source[f] or self.target[h] != self.target[g]:
                raise IllTypedComposite(f"({g}, {f}) -> {h}: endpoints inconsistent")
        out_of = {x: [] for x in self.objects}
        for f in self.morphisms:
            out_of[self.source[f]].append(f)
        for f in self.morphisms:
            for g in out_of[self.target[f]]:
                if (g, f) not in self.compose:
                    raise IllTypedComposite(f"composable pair ({g}, {f}) missing from table")
        for f in self.morphisms:
            if self.comp(f, self.identity[self.source[f]]) != f:
                raise MissingIdentity(f"identity at {self.source[f]} is not a right unit for {f}")
            if self.comp(self.identity[self.target[f]], f) != f:
                raise MissingIdentity(f"identity at {self.target[f]} is not a left unit for {f}")
        if assoc:
            for h in self.morphisms:
                for g in out_of[self.target[h]]:
                    gh = self.compose[(g, h)]
                    for f in out_of[self.target[g]]:
                        if self.compose[(f, gh)] != self.compose[(self.compose[(f, g)], h)]:
                            raise NonAssociative(f"triple ({f}, {g}, {h})")

    def hom_out(self, a: str) -> tuple[str, ...]:
        cached = self.__dict__.get("_out")
        if cached is None:
            buckets = {x: [] for x in self.objects}
            for f in self.morphisms:
                buckets[self.source[f]].append(f)
            cached = {x: tuple(v) for x, v in buckets.items()}
            object.__setattr__(self, "_out", cached)
        return cached.get(a, ())

    def hom_in(self, a: str) -> tuple[str, ...]:
        cached = self.__dict__.get("_in")
        if cached is None:
            buckets = {x: [] for x in self.objects}
            for f in self.morphisms:
                buckets[self.target[f]].append(f)
            cached = {x: tuple(v) for x, v in buckets.items()}
            object.__setattr__(self, "_in", cached)
        return cached.get(a, ())

    def __eq__(self, other) -> bool:
        if not isinstance(other, FinCat):
            return NotImplemented
        return (
            set(self.objects) == set(other.objects)
            and self.source == other.source
            and self.target == other.target
            and self.identity == other.identity
            and self.compose == other.compose
        )


def make_category(
    objects,
    morphisms: dict[str, tuple[str, str]],
    compose_table: dict[tuple[str, str], str] | None = None,
    identity: dict[str, str] | None = None,
    assoc_check: bool = True,
) -> FinCat:
    """Build and validate a FinCat.

    `morphisms` maps morphism id to (source, target).  Compositions with
    identities may be omitted from `compose_table`; they are forced by the
    unit laws and filled in here.  If `identity` is omitted it is recovered
    from the table (an endomorphism that is a two-sided unit).
    """
    objects = tuple(sorted(objects))
    source = {f: st[0] for f, st in morphisms.items()}
    target = {f: st[1] for f, st in morphisms.items()}
    compose = dict(compose_table or {})
    if identity is None:
        identity = {}
        for x in objects:
            units = [
                e for e in sorted(source)
                if source[e] == x and target[e] == x and _is_unit(e, source, target, compose)
            ]
            if not units:
                raise MissingIdentity(f"no identity found for object {x}")
            identity[x] = units[0]
    for x, e in identity.items():
        if e not in source:
            raise MissingIdentity(f"declared identity {e} of {x} is not a morphism")
    for f in source:
        sf, tf = source[f], target[f]
        if sf in identity:
            compose.setdefault((f, identity[sf]), f)
        if tf in identity:
            compose.setdefault((identity[tf], f), f)
    cat = FinCat(objects, source, target, dict(identity), compose)
    cat.validate(assoc=assoc_check)
    return cat


def _is_unit(e, source, target, compose):
    for f in source:
        if source[f] == target[e] and (f, e) in compose and compose[(f, e)] != f:
            return False
        if target[f] == source[e] and (e, f) in compose and compose[(e, f)] != f:
            return False
    return True


def opposite(cat: FinCat) -> FinCat:
    """Reverse all arrows.  Involutive on the nose: ids are unchanged."""
    compose = {(f, g): h for (g, f), h in cat.compose.items()}
    out = FinCat(cat.objects, dict(cat.target), dict(cat.source), dict(cat.identity), compose)
    out.validate(assoc=False)
    return out


def product(c: FinCat, d: FinCat, assoc_check: bool = True) -> FinCat:
    """Product category: pairs of objects and morphisms, componentwise tables."""
    objects = [jid(a, b) for a in c.objects for b in d.objects]
    morphisms = {
        jid(f, g): (jid(c.source[f], d.source[g]), jid(c.target[f], d.target[g]))
        for f in c.morphisms
        for g in d.morphisms
    }
    identity = {
        jid(a, b): jid(c.identity[a], d.identity[b])
        for a in c.objects
        for b in d.objects
    }
    compose = {}
    for (f2, f1), fh in c.compose.items():
        for (g2, g1), gh in d.compose.items():
            compose[(jid(f2, g2), jid(f1, g1))] = jid(fh, gh)
    cat = FinCat(tuple(sorted(objects)), {m: st[0] for m, st in morphisms.items()},
                 {m: st[1] for m, st in morphisms.items()}, identity, compose)
    cat.validate(assoc=assoc_check)
    return cat


@dataclass(frozen=True)
class FinFunctor:
    domain: FinCat
    codomain: FinCat
    omap: dict[str, str]
    mmap: dict[str, str]

    def on_obj(self, x: str) -> str:
        return self.omap[x]

    def on_mor(self, f: str) -> str:
        return self.mmap[f]

    def validate(self) -> None:
        report = check_functor(self)
        if report:
            raise FunctorError("; ".join(report))


def check_functor(fun: FinFunctor) -> list[str]:
    """All violated functoriality equations; empty iff `fun` is a functor."""
    c, d = fun.domain, fun.codomain
    out = []
    for x in c.objects:
        if x not in fun.omap:
            out.append(f"object {x} has no image")
        elif fun.omap[x] not in d.objects:
            out.append(f"object image {fun.omap[x]} not in codomain")
    for f in c.morphisms:
        if f not in fun.mmap:
            out.append(f"morphism {f} has no image")
            continue
        ff = fun.mmap[f]
        if ff not in d.source:
            out.append(f"morphism image {ff} not in codomain")
            continue
        if d.source[ff] != fun.omap.get(c.source[f]):
            out.append(f"IllTyped: source of image of {f}")
        if d.target[ff] != fun.omap.get(c.target[f]):
            out.append(f"IllTyped: target of image of {f}")
    for x in c.objects:
        if x in fun.omap and c.identity[x] in fun.mmap:
            if fun.mmap[c.identity[x]] != d.identity.get(fun.omap[x]):
                out.append(f"identity at {x} not preserved")
    for (g, f), h in c.compose.items():
        if g in fun.mmap and f in fun.mmap and h in fun.mmap:
            img = d.compose.get((fun.mmap[g], fun.mmap[f]))
            if img != fun.mmap[h]:
                out.append(f"composite ({g}, {f}) not preserved")
    return out


def identity_functor(cat: FinCat) -> FinFunctor:
    return FinFunctor(cat, cat, {x: x for x in cat.objects}, {f: f for f in cat.morphisms})


def constant_functor(dom: FinCat, cod: FinCat, x: str) -> FinFunctor:
    if x not in cod.objects:
        raise ObjectNotFound(x)
    return FinFunctor(dom, cod, {a: x for a in dom.objects},
                      {f: cod.identity[x] for f in dom.morphisms})


def compose_functors(g: FinFunctor, f: FinFunctor) -> FinFunctor:
    if g.domain != f.codomain:
        raise FunctorError("functors not composable")
    return FinFunctor(f.domain, g.codomain,
                      {x: g.omap[f.omap[x]] for x in f.omap},
                      {m: g.mmap[f.mmap[m]] for m in f.mmap})


def opposite_functor(fun: FinFunctor) -> FinFunctor:
    return FinFunctor(opposite(fun.domain), opposite(fun.codomain),
                      dict(fun.omap), dict(fun.mmap))


@dataclass(frozen=True)
class FinNatTransf:
    source: FinFunctor
    target: FinFunctor
    components: dict[str, str]

    def validate(self) -> None:
        f, g = self.source, self.target
        if f.domain != g.domain or f.codomain != g.codomain:
            raise FunctorError("natural transformation between incompatible functors")
        cod = f.codomain
        for x in f.domain.objects:
            cx = self.components[x]
            if cod.source[cx] != f.omap[x] or cod.target[cx] != g.omap[x]:
                raise FunctorError(f"component at {x} ill-typed")
        for m in f.domain.morphisms:
            a, b = f.domain.source[m], f.domain.target[m]
            left = cod.comp(self.components[b], f.mmap[m])
            right = cod.comp(g.mmap[m], self.components[a])
            if left != right:
                raise FunctorError(f"naturality square at {m} does not commute")


def comma(h: FinFunctor, d: str) -> tuple[FinCat, FinFunctor]:
    """The comma category (H | d): objects are arrows H(e) -> d.

    Returns the category together with its projection to the domain of H.
    Morphisms are triples (g, m, m') with m' . H(g) = m.
    """
    e_cat, d_cat = h.domain, h.codomain
    if d not in d_cat.objects:
        raise ObjectNotFound(d)
    objects = [
        jid(e, m) for e in e_cat.objects
        for m in d_cat.hom(h.omap[e], d)
    ]
    morphisms, compose, identity = {}, {}, {}
    obj_data = {o: tuple(unjid(o)) for o in objects}
    for o in objects:
        e, m = obj_data[o]
        for g in e_cat.hom_out(e):
            hg = h.mmap[g]
            for m2 in d_cat.hom(h.omap[e_cat.target[g]], d):
                if d_cat.comp(m2, hg) == m:
                    morphisms[jid(g, m, m2)] = (o, jid(e_cat.target[g], m2))
    for o in objects:
        e, m = obj_data[o]
        identity[o] = jid(e_cat.identity[e], m, m)
    by_source: dict[str, list[str]] = {}
    for mid, (s1, _) in morphisms.items():
        by_source.setdefault(s1, []).append(mid)
    for m1_id, (s1, t1) in morphisms.items():
        g1, mm1, _ = unjid(m1_id)
        for m2_id in by_source.get(t1, ()):
            g2, _, mm2t = unjid(m2_id)
            compose[(m2_id, m1_id)] = jid(e_cat.comp(g2, g1), mm1, mm2t)
    cat = FinCat(tuple(sorted(objects)),
                 {m: st[0] for m, st in morphisms.items()},
                 {m: st[1] for m, st in morphisms.items()},
                 identity, compose)
    cat.validate(assoc=False)
    proj = FinFunctor(cat, e_cat,
                      {o: obj_data[o][0] for o in objects},
                      {m: unjid(m)[0] for m in morphisms})
    return cat, proj


def under_comma(h: FinFunctor, d: str) -> tuple[FinCat, FinFunctor]:
    """The dual comma category (d | H): objects are arrows d -> H(e)."""
    e_cat, d_cat = h.domain, h.codomain
    if d not in d_cat.objects:
        raise ObjectNotFound(d)
    objects = [
        jid(e, m) for e in e_cat.objects
        for m in d_cat.hom(d, h.omap[e])
    ]
    morphisms, compose, identity = {}, {}, {}
    obj_data = {o: tuple(unjid(o)) for o in objects}
    for o in objects:
        e, m = obj_data[o]
        for g in e_cat.hom_out(e):
            m2 = d_cat.comp(h.mmap[g], m)
            morphisms[jid(g, m, m2)] = (o, jid(e_cat.target[g], m2))
    for o in objects:
        e, m = obj_data[o]
        identity[o] = jid(e_cat.identity[e], m, m)
    by_source: dict[str, list[str]] = {}
    for mid, (s1, _) in morphisms.items():
        by_source.setdefault(s1, []).append(mid)
    for m1_id, (s1, t1) in morphisms.items():
        g1, mm1, _ = unjid(m1_id)
        for m2_id in by_source.get(t1, ()):
            g2, _, mm2t = unjid(m2_id)
            compose[(m2_id, m1_id)] = jid(e_cat.comp(g2, g1), mm1, mm2t)
    cat = FinCat(tuple(sorted(objects)),
                 {m: st[0] for m, st in morphisms.items()},
                 {m: st[1] for m, st in morphisms.items()},
                 identity, compose)
    cat.validate(assoc=False)
    proj = FinFunctor(cat, e_cat,
                      {o: obj_data[o][0] for o in objects},
                      {m: unjid(m)[0] for m in morphisms})
    return cat, proj


@dataclass(frozen=True)
class CommaGraph:
    """Objects and morphisms of a comma category, without composition.

    Enough structure to index a (co)limit; `comma` builds the full category.
    """
    objects: tuple[str, ...]
    source: dict[str, str]
    target: dict[str, str]
    identity: dict[str, str]
    proj_obj: dict[str, str]
    proj_mor: dict[str, str]

    @property
    def morphisms(self) -> tuple[str, ...]:
        return tuple(sorted(self.source))

    def is_identity(self, f: str) -> bool:
        return self.identity.get(self.source[f]) == f


def comma_graph(h: FinFunctor, d: str) -> CommaGraph:
    """The (H | d) comma data without its composition table."""
    e_cat, d_cat = h.domain, h.codomain
    if d not in d_cat.objects:
        raise ObjectNotFound(d)
    objects = [jid(e, m) for e in e_cat.objects for m in d_cat.hom(h.omap[e], d)]
    source, target, identity = {}, {}, {}
    proj_obj, proj_mor = {}, {}
    for o in objects:
        e, m = unjid(o)
        proj_obj[o] = e
        identity[o] = jid(e_cat.identity[e], m, m)
        for g in e_cat.hom_out(e):
            hg = h.mmap[g]
            for m2 in d_cat.hom(h.omap[e_cat.target[g]], d):
                if d_cat.comp(m2, hg) == m:
                    mid = jid(g, m, m2)
                    source[mid] = o
                    target[mid] = jid(e_cat.target[g], m2)
                    proj_mor[mid] = g
    return CommaGraph(tuple(sorted(objects)), source, target, identity,
                      proj_obj, proj_mor)


def over_category(cat: FinCat, d: str) -> tuple[FinCat, FinFunctor]:
    return comma(identity_functor(cat), d)


def under_category(cat: FinCat, d: str) -> tuple[FinCat, FinFunctor]:
    return under_comma(identity_functor(cat), d)


def terminal_object(cat: FinCat) -> str | None:
    for t in cat.objects:
        if all(len(cat.hom(a, t)) == 1 for a in cat.objects):
            return t
    return None


def initial_object(cat: FinCat) -> str | None:
    for s in cat.objects:
        if all(len(cat.hom(s, b)) == 1 for b in cat.objects):
            return s
    return None


# Stock shapes used throughout the test corpus and docs.

def terminal_category() -> FinCat:
    return make_category(["*"], {"id_*": ("*", "*")})


def discrete_category(objs) -> FinCat:
    return make_category(list(objs), {f"id_{x}": (x, x) for x in objs})


def linear_category(n: int) -> FinCat:
    """The linear order [n]: objects 0..n, one arrow i -> j for i <= j."""
    if n > 9:
        raise ValueError("linear_category ids are single-digit; n must be <= 9")
    objs = [str(i) for i in range(n + 1)]
    mors = {}
    for i in range(n + 1):
        for j in range(i, n + 1):
            mors[f"a{i}{j}"] = (str(i), str(j))
    compose = {}
    for i in range(n + 1):
        for j in range(i, n + 1):
            for k in range(j, n + 1):
                compose[(f"a{j}{k}", f"a{i}{j}")] = f"a{i}{k}"
    return make_category(objs, mors, compose, {str(i): f"a{i}{i}" for i in range(n + 1)})


def arrow_category() -> FinCat:
    return linear_category(1)


def span_category() -> FinCat:
    """The pushout shape a <- b -> c."""
    return make_category(
        ["a", "b", "c"],
        {"id_a": ("a", "a"), "id_b": ("b", "b"), "id_c": ("c", "c"),
         "p": ("b", "a"), "q": ("b", "c")})


def cospan_category() -> FinCat:
    """The pullback shape a -> b <- c."""
    return make_category(
        ["a", "b", "c"],
        {"id_a": ("a", "a"), "id_b": ("b", "b"), "id_c": ("c", "c"),
         "p": ("a", "b"), "q": ("c", "b")})


def cyclic_group_category(n: int) -> FinCat:
    """One object, morphisms the cyclic group of order n (g0 = identity)."""
    mors = {f"g{k}": ("*", "*") for k in range(n)}
    compose = {(f"g{j}", f"g{i}"): f"g{(i + j) % n}" for i in range(n) for j in range(n)}
    return make_category(["*"], mors, compose, {"*": "g0"})


def functor_from_maps(dom: FinCat, cod: FinCat, omap: dict[str, str],
                      gen_mmap: dict[str, str] | None = None) -> FinFunctor:
    """Functor from an object map plus images of non-identity generators.

    Identity images are filled in; the result is validated.
    """
    mmap = {dom.identity[x]: cod.identity[omap[x]] for x in dom.objects}
    if gen_mmap:
        mmap.update(gen_mmap)
    fun = FinFunctor(dom, cod, dict(omap), mmap)
    fun.validate()
    return fun


def all_functors(dom: FinCat, cod: FinCat):
    """Enumerate all functors dom -> cod (exhaustive; desk-scale shapes only)."""
    non_id = [f for f in dom.morphisms if not dom.is_identity(f)]
    for oimages in itertools.product(cod.objects, repeat=len(dom.objects)):
        omap = dict(zip(dom.objects, oimages))
        pools = []
        for f in non_id:
            pools.append(cod.hom(omap[dom.source[f]], omap[dom.target[f]]))
        for mimages in itertools.product(*pools):
            mmap = {dom.identity[x]: cod.identity[omap[x]] for x in dom.objects}
            mmap.update(dict(zip(non_id, mimages)))
            cand = FinFunctor(dom, cod, omap, mmap)
            if not check_functor(cand):
                yield cand
