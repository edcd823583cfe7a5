"""A plain structured text format for categories, simplicial sets and diagrams.

Documents are sequences of records:

    kind name {
      key: value
      ...
    }

Values are scalars (bare identifiers, quoted strings, integers), lists
`[v, v, ...]`, or nested blocks `{ key: value ... }`.  Keys inside a block
are order-independent; `#` starts a comment.  The exact grammar is described
in docs/format.md, with annotated fixtures in corpus/.

Serialization is deterministic: keys and list entries produced by
`serialize_*` functions follow sorted id order, so written documents diff
cleanly.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass


class ParseError(Exception):
    def __init__(self, message, line, col):
        super().__init__(f"{message} at line {line}, column {col}")
        self.line = line
        self.col = col


_BARE = re.compile(r"[A-Za-z0-9_.*+\-]+")


@dataclass(frozen=True)
class Record:
    kind: str
    name: str
    fields: dict


class _Lexer:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0
        self.line = 1
        self.col = 1

    def error(self, message):
        raise ParseError(message, self.line, self.col)

    def _advance(self, k):
        for ch in self.text[self.pos:self.pos + k]:
            if ch == "\n":
                self.line += 1
                self.col = 1
            else:
                self.col += 1
        self.pos += k

    def skip_ws(self):
        while self.pos < len(self.text):
            ch = self.text[self.pos]
            if ch == "#":
                end = self.text.find("\n", self.pos)
                self._advance((end if end >= 0 else len(self.text)) - self.pos)
            elif ch in " \t\r\n,":
                self._advance(1)
            else:
                return

    def peek(self):
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def take(self, ch):
        self.skip_ws()
        if self.pos >= len(self.text) or self.text[self.pos] != ch:
            self.error(f"expected {ch!r}")
        self._advance(1)

    def token(self):
        """A bare identifier, integer, or quoted string."""
        self.skip_ws()
        if self.pos >= len(self.text):
            self.error("unexpected end of document")
        ch = self.text[self.pos]
        if ch == '"':
            m = re.compile(r'"(?:[^"\\]|\\.)*"').match(self.text, self.pos)
            if not m:
                self.error("unterminated string")
            raw = m.group(0)
            self._advance(len(raw))
            return json.loads(raw)
        m = _BARE.match(self.text, self.pos)
        if not m:
            self.error(f"unexpected character {ch!r}")
        raw = m.group(0)
        self._advance(len(raw))
        if re.fullmatch(r"-?[0-9]+", raw):
            return int(raw)
        return raw


def _parse_value(lx: _Lexer):
    ch = lx.peek()
    if ch == "[":
        lx.take("[")
        out = []
        while lx.peek() != "]":
            out.append(_parse_value(lx))
        lx.take("]")
        return out
    if ch == "{":
        return _parse_block(lx)
    return lx.token()


def _parse_block(lx: _Lexer) -> dict:
    lx.take("{")
    block = {}
    while lx.peek() != "}":
        key = lx.token()
        lx.take(":")
        if key in block:
            lx.error(f"duplicate key {key!r}")
        block[key] = _parse_value(lx)
    lx.take("}")
    return block


def parse_document(text: str) -> list[Record]:
    lx = _Lexer(text)
    records = []
    while lx.peek():
        kind = lx.token()
        name = lx.token()
        if not isinstance(name, str):
            lx.error("record name must be an identifier or string")
        fields = _parse_block(lx)
        records.append(Record(str(kind), name, fields))
    return records


def _fmt_scalar(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, int):
        return str(v)
    if isinstance(v, str) and _BARE.fullmatch(v):
        return v
    return json.dumps(v, ensure_ascii=False)


def _fmt_value(v, indent: int) -> str:
    pad = "  " * indent
    if isinstance(v, dict):
        if not v:
            return "{}"
        inner = "".join(f"{pad}  {_fmt_scalar(k)}: {_fmt_value(val, indent + 1)}\n"
                        for k, val in v.items())
        return "{\n" + inner + pad + "}"
    if isinstance(v, list):
        if not v:
            return "[]"
        if all(not isinstance(x, (dict, list)) for x in v):
            return "[" + ", ".join(_fmt_scalar(x) for x in v) + "]"
        inner = "".join(f"{pad}  {_fmt_value(x, indent + 1)}\n" for x in v)
        return "[\n" + inner + pad + "]"
    return _fmt_scalar(v)


def write_document(records: list[Record]) -> str:
    chunks = []
    for rec in records:
        body = "".join(f"  {_fmt_scalar(k)}: {_fmt_value(v, 1)}\n"
                       for k, v in rec.fields.items())
        chunks.append(f"{rec.kind} {_fmt_scalar(rec.name)} {{\n{body}}}\n")
    return "\n".join(chunks)


# ---------------------------------------------------------------------------
# record builders for the core objects

def record_of_category(name, cat) -> Record:
    morphisms = [{"id": f, "source": cat.source[f], "target": cat.target[f]}
                 for f in cat.morphisms if not cat.is_identity(f)]
    compose = []
    for (g, f), h in sorted(cat.compose.items()):
        if cat.is_identity(g) or cat.is_identity(f):
            continue
        compose.append({"after": g, "first": f, "result": h})
    return Record("category", name, {
        "objects": list(cat.objects),
        "identities": {x: cat.identity[x] for x in cat.objects},
        "morphisms": morphisms,
        "compose": compose,
    })


def record_of_functor(name, fun, domain_name, codomain_name) -> Record:
    gens = {f: fun.mmap[f] for f in fun.domain.morphisms
            if not fun.domain.is_identity(f)}
    return Record("functor", name, {
        "domain": domain_name,
        "codomain": codomain_name,
        "objects": dict(fun.omap),
        "morphisms": gens,
    })


def record_of_sset(name, x) -> Record:
    faces = [{"level": n, "index": i, "map": dict(sorted(t.items()))}
             for (n, i), t in sorted(x.faces.items())]
    degens = [{"level": n, "index": i, "map": dict(sorted(t.items()))}
              for (n, i), t in sorted(x.degens.items())]
    return Record("sset", name, {
        "cap": x.cap,
        "levels": {str(n): list(x.level(n)) for n in range(x.cap + 1)},
        "faces": faces,
        "degeneracies": degens,
    })


def _map_tables(m) -> dict:
    return {str(n): dict(sorted(m.comps[n].items())) for n in range(m.source.cap + 1)}


def record_of_diagram(name, dgm, shape_name, value_names, kind="diagram") -> Record:
    arrows = {f: _map_tables(dgm.arrows[f]) for f in dgm.shape.morphisms
              if not dgm.shape.is_identity(f)}
    return Record(kind, name, {
        "shape": shape_name,
        "values": {d: value_names[d] for d in dgm.shape.objects},
        "arrows": arrows,
    })


def record_of_scat(name, scat, hom_names) -> Record:
    homs = [{"source": a, "target": b, "sset": hom_names[(a, b)]}
            for a in scat.objects for b in scat.objects]
    comps = [{"source": a, "mid": b, "target": c,
              "map": _map_tables(scat.comps[(a, b, c)])}
             for a in scat.objects for b in scat.objects for c in scat.objects]
    return Record("sset-category", name, {
        "objects": list(scat.objects),
        "units": dict(scat.units),
        "homs": homs,
        "compositions": comps,
    })


def record_of_sdiagram(name, dgm, shape_name, value_names, variance="covariant") -> Record:
    actions = [{"source": a, "target": b, "map": _map_tables(dgm.actions[(a, b)])}
               for (a, b) in sorted(dgm.actions)]
    return Record("sdiagram", name, {
        "shape": shape_name,
        "variance": variance,
        "values": {d: value_names[d] for d in dgm.shape.objects},
        "actions": actions,
    })
