"""Nerves of finite categories and their truncated categories of simplices.

An n-simplex of the nerve is a string of n composable arrows; its id records
the source object and the arrow chain, so every simplex is self-describing.
The category of simplices is materialized as a FinCat up to the cap, with
the simplex-dimension Reedy data (injective operators are direct, surjective
ones inverse).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .fincat import FinCat, FinFunctor, jid, opposite, unjid
from .simpset import (
    TruncSSet, SimplicialMap, epi_mono_factor, make_map, make_sset,
    monotone_maps,
)


def string_id(src: str, arrows) -> str:
    return jid(src, *arrows)


def string_parts(sid: str) -> tuple[str, list[str]]:
    parts = unjid(sid)
    return parts[0], parts[1:]


def string_objects(cat: FinCat, sid: str) -> list[str]:
    src, arrows = string_parts(sid)
    objs = [src]
    for f in arrows:
        objs.append(cat.target[f])
    return objs


def composable_strings(cat: FinCat, n: int) -> list[str]:
    """All strings of n composable arrows, as simplex ids."""
    if n == 0:
        return [string_id(x, []) for x in cat.objects]
    out = []
    for prev in composable_strings(cat, n - 1):
        src, arrows = string_parts(prev)
        end = cat.target[arrows[-1]] if arrows else src
        for f in cat.hom_out(end):
            out.append(string_id(src, arrows + [f]))
    return out


def nerve(cat: FinCat, cap: int) -> TruncSSet:
    levels = [composable_strings(cat, n) for n in range(cap + 1)]
    faces, degens = {}, {}
    for n in range(1, cap + 1):
        for i in range(n + 1):
            table = {}
            for sid in levels[n]:
                src, arrows = string_parts(sid)
                if i == 0:
                    table[sid] = string_id(cat.target[arrows[0]], arrows[1:])
                elif i == n:
                    table[sid] = string_id(src, arrows[:-1])
                else:
                    merged = arrows[:i - 1] + [cat.comp(arrows[i], arrows[i - 1])] + arrows[i + 1:]
                    table[sid] = string_id(src, merged)
            faces[(n, i)] = table
    for n in range(cap):
        for i in range(n + 1):
            table = {}
            for sid in levels[n]:
                src, arrows = string_parts(sid)
                objs = string_objects(cat, sid)
                inserted = arrows[:i] + [cat.identity[objs[i]]] + arrows[i:]
                table[sid] = string_id(src, inserted)
            degens[(n, i)] = table
    return make_sset(cap, levels, faces, degens)


def nerve_map(fun: FinFunctor, cap: int) -> SimplicialMap:
    """The map of nerves induced by a functor."""
    src_n, tgt_n = nerve(fun.domain, cap), nerve(fun.codomain, cap)
    comps = []
    for n in range(cap + 1):
        table = {}
        for sid in src_n.level(n):
            s, arrows = string_parts(sid)
            table[sid] = string_id(fun.omap[s], [fun.mmap[f] for f in arrows])
        comps.append(table)
    return make_map(src_n, tgt_n, comps)


def operator_action(k: TruncSSet, phi: tuple[int, ...], x: str, n: int) -> str:
    """Apply a simplicial operator to a simplex: the value of phi^* at x.

    phi is a monotone map [m] -> [n] given as a value tuple; x is an
    n-simplex.  Peels off elementary cofaces and codegeneracies.
    """
    m = len(phi) - 1
    if phi == tuple(range(n + 1)):
        return x
    image = set(phi)
    missing = [v for v in range(n + 1) if v not in image]
    if missing:
        i = missing[-1]
        shrunk = tuple(v if v < i else v - 1 for v in phi)
        return operator_action(k, shrunk, k.face(n, i, x), n - 1)
    for i in range(m):
        if phi[i] == phi[i + 1]:
            dropped = phi[:i] + phi[i + 1:]
            return k.degen(m - 1, i, operator_action(k, dropped, x, n))
    raise AssertionError("unreachable: phi neither identity, non-surjective nor non-injective")


@dataclass(frozen=True)
class SimplexCatBundle:
    """A truncated category of simplices of a nerve with its labeling data.

    `cat` is the simplex category (or its opposite when op is set); objects
    are exactly the simplices of nerve(base) up to the cap.  `t` sends an
    n-simplex to its last object, `s` to its first; `pi` records dimensions.
    Only the functor whose variance matches the chosen orientation is set.
    """
    base: FinCat
    cap: int
    cat: FinCat
    op: bool
    t: FinFunctor | None
    s: FinFunctor | None
    pi: dict[str, int]


def category_of_simplices(k: TruncSSet, op: bool = False,
                          base: FinCat | None = None) -> SimplexCatBundle:
    """The category of simplices of k, truncated at k's cap.

    Objects are the simplices of k; a morphism into an n-simplex x is a
    monotone operator phi with source the simplex phi^*(x).  With op=True
    the opposite category is produced.  When k is the nerve of `base`, the
    target/source labeling functors are attached.
    """
    cap = k.cap
    objects, pi = [], {}
    for n in range(cap + 1):
        for x in k.level(n):
            objects.append(x)
            pi[x] = n
    morphisms, compose, identity = {}, {}, {}
    mor_data = {}
    for n in range(cap + 1):
        for x in k.level(n):
            for m in range(cap + 1):
                for phi in monotone_maps(m, n):
                    mid = jid(list(phi), x)
                    morphisms[mid] = (operator_action(k, phi, x, n), x)
                    mor_data[mid] = (phi, x, m, n)
    for x in objects:
        identity[x] = jid(list(range(pi[x] + 1)), x)
    by_target: dict[str, list[str]] = {}
    for mid2, (_, y, _, _) in mor_data.items():
        by_target.setdefault(y, []).append(mid2)
    for mid, (phi, x, m, n) in mor_data.items():
        src = morphisms[mid][0]
        for mid2 in by_target.get(src, ()):
            psi = mor_data[mid2][0]
            comp_phi = tuple(phi[v] for v in psi)
            compose[(mid, mid2)] = jid(list(comp_phi), x)
    cat = FinCat(tuple(sorted(objects)),
                 {m: st[0] for m, st in morphisms.items()},
                 {m: st[1] for m, st in morphisms.items()},
                 identity, compose)
    t_fun = s_fun = None
    if base is not None:
        if not op:
            omap = {x: string_objects(base, x)[-1] for x in objects}
            mmap = {}
            for mid, (phi, x, m, n) in mor_data.items():
                src = morphisms[mid][0]
                objs = string_objects(base, x)
                _, arrows = string_parts(x)
                chain = arrows[phi[m]:]
                mmap[mid] = base.comp_chain(chain, at=objs[phi[m]])
            t_fun = FinFunctor(cat, base, omap, mmap)
        else:
            cat = opposite(cat)
            omap = {x: string_objects(base, x)[0] for x in objects}
            mmap = {}
            for mid, (phi, x, m, n) in mor_data.items():
                # in the opposite category this morphism runs x -> phi^*(x);
                # its label is the arrow x_0 -> x_{phi(0)}
                objs = string_objects(base, x)
                _, arrows = string_parts(x)
                chain = arrows[:phi[0]]
                mmap[mid] = base.comp_chain(chain, at=objs[0])
            s_fun = FinFunctor(cat, base, omap, mmap)
    elif op:
        cat = opposite(cat)
    return SimplexCatBundle(base if base is not None else cat, cap, cat, op, t_fun, s_fun, pi)


def simplex_category_of_nerve(base: FinCat, cap: int, op: bool = False) -> SimplexCatBundle:
    return category_of_simplices(nerve(base, cap), op=op, base=base)


def reedy_degree_data(bundle: SimplexCatBundle):
    """Degree function and direct/inverse classification with factorizations.

    Returns (degree, classify) where classify maps each morphism id to a
    dict with its operator, direct/inverse flags, and the unique
    inverse-then-direct factorization through an intermediate simplex.
    """
    cat = bundle.cat
    classify = {}
    for mid in cat.morphisms:
        phi_vals, x = unjid(mid)[0], unjid(mid)[1]
        phi = tuple(phi_vals)
        n = bundle.pi[x]
        surj, inj = epi_mono_factor(phi)
        injective = len(set(phi)) == len(phi)
        surjective = set(phi) == set(range(n + 1))
        classify[mid] = {
            "operator": phi,
            # orientation-relative: degree-raising morphisms are direct
            "direct": surjective if bundle.op else injective,
            "inverse": injective if bundle.op else surjective,
            "epi": surj,
            "mono": inj,
        }
    return dict(bundle.pi), classify
