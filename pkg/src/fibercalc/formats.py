"""Line-oriented text format (.fc) and its JSON twin (.fc.json).

Stanzas declare categories, functors, indexed categories and calibrations;
identities are implicit and unspecified composites are validation errors.
Serialization is canonical (sorted), so serialize(parse(t)) is a normal
form and parse(serialize(v)) == v.
"""

from __future__ import annotations

import json

from .fincat import FinCatError, build_category, build_functor
from .fibred import TabularIndexed, make_calibration


class ParseError(FinCatError):
    pass


class Document:
    """Named entities from one parsed source."""

    def __init__(self):
        self.categories = {}
        self.functors = {}
        self.indexed = {}
        self.calibrations = {}

    def entity_counts(self):
        return {"categories": len(self.categories),
                "functors": len(self.functors),
                "indexed": len(self.indexed),
                "calibrations": len(self.calibrations)}


def parse_text(text) -> Document:
    doc = Document()
    block = None          # (kind, name, payload lines)
    pending = []

    def flush():
        if block is None:
            return
        kind, name, header = block
        if kind == "category":
            _build_category(doc, name, pending)
        elif kind == "functor":
            _build_functor(doc, name, header, pending)
        elif kind == "indexed":
            _build_indexed(doc, name, pending)
        elif kind == "calibration":
            _build_calibration(doc, name, pending)

    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].rstrip()
        if not line.strip():
            continue
        if not line[0].isspace():
            flush()
            pending = []
            parts = line.split()
            kind = parts[0]
            if kind not in ("category", "functor", "indexed", "calibration"):
                raise ParseError(f"line {lineno}: unknown stanza {kind!r}")
            if len(parts) < 2:
                raise ParseError(f"line {lineno}: {kind} needs a name")
            block = (kind, parts[1], parts[2:])
        else:
            if block is None:
                raise ParseError(f"line {lineno}: indented line outside a stanza")
            pending.append((lineno, line.strip()))
    flush()
    return doc


def _build_category(doc, name, lines):
    objects = []
    arrows = []
    composites = {}
    for lineno, line in lines:
        if line.startswith("objects:"):
            objects.extend(line[len("objects:"):].split())
        elif line.startswith("arrow "):
            rest = line[len("arrow "):]
            try:
                fid, sig = rest.split(":", 1)
                src, tgt = sig.split("->")
            except ValueError:
                raise ParseError(f"line {lineno}: bad arrow declaration") from None
            arrows.append((fid.strip(), src.strip(), tgt.strip()))
        elif line.startswith("compose "):
            rest = line[len("compose "):]
            try:
                lhs, rhs = rest.split("=")
                g, f = lhs.split()
            except ValueError:
                raise ParseError(f"line {lineno}: bad compose line") from None
            composites[(g.strip(), f.strip())] = rhs.strip()
        else:
            raise ParseError(f"line {lineno}: unknown category line {line!r}")
    doc.categories[name] = build_category(name, objects, arrows, composites)


def _build_functor(doc, name, header, lines):
    # header: ": C -> D"
    sig = " ".join(header)
    try:
        _, rest = sig.split(":", 1) if ":" in sig else ("", sig)
        cname, dname = rest.split("->")
        C = doc.categories[cname.strip()]
        D = doc.categories[dname.strip()]
    except (ValueError, KeyError):
        raise ParseError(f"functor {name}: bad signature {sig!r}") from None
    ob, ar = {}, {}
    for lineno, line in lines:
        if line.startswith("object "):
            x, y = line[len("object "):].split("=>")
            ob[x.strip()] = y.strip()
        elif line.startswith("arrow "):
            a, b = line[len("arrow "):].split("=>")
            ar[a.strip()] = b.strip()
        else:
            raise ParseError(f"line {lineno}: unknown functor line {line!r}")
    doc.functors[name] = build_functor(name, C, D, ob, ar)


def _build_indexed(doc, name, lines):
    base = None
    fibers = {}
    transitions = {}
    for lineno, line in lines:
        if line.startswith("base "):
            base = doc.categories.get(line[len("base "):].strip())
            if base is None:
                raise ParseError(f"line {lineno}: unknown base category")
        elif line.startswith("fiber "):
            x, cname = line[len("fiber "):].split("=")
            fibers[x.strip()] = doc.categories[cname.strip()]
        elif line.startswith("transition "):
            a, fname = line[len("transition "):].split("=")
            transitions[a.strip()] = doc.functors[fname.strip()]
        else:
            raise ParseError(f"line {lineno}: unknown indexed line {line!r}")
    if base is None:
        raise ParseError(f"indexed {name}: no base")
    from .fincat import identity_functor
    for x in base.objects:
        if x in fibers:
            transitions.setdefault(base.ident[x], identity_functor(fibers[x]))
    doc.indexed[name] = TabularIndexed(name, base, fibers, transitions)


def _build_calibration(doc, name, lines):
    base = None
    members = []
    for lineno, line in lines:
        if line.startswith("base "):
            base = doc.categories.get(line[len("base "):].strip())
        elif line.startswith("members:"):
            members.extend(line[len("members:"):].split())
        else:
            raise ParseError(f"line {lineno}: unknown calibration line {line!r}")
    if base is None:
        raise ParseError(f"calibration {name}: no base")
    mem = set(members) | set(base.ident.values())
    doc.calibrations[name] = make_calibration(base, frozenset(mem), name=name)


def serialize_text(doc: Document) -> str:
    out = []
    for name in sorted(doc.categories):
        C = doc.categories[name]
        out.append(f"category {name}")
        out.append("  objects: " + " ".join(str(x) for x in C.objects))
        ids = set(C.ident.values())
        for a in C.arrows:
            if a in ids:
                continue
            out.append(f"  arrow {a} : {C.src[a]} -> {C.tgt[a]}")
        for (g, f), h in sorted(C.comp.items(), key=repr):
            if g in ids or f in ids:
                continue
            out.append(f"  compose {g} {f} = {h}")
        out.append("")
    for name in sorted(doc.functors):
        F = doc.functors[name]
        out.append(f"functor {name} : {F.dom.name} -> {F.cod.name}")
        for x in F.dom.objects:
            out.append(f"  object {x} => {F.ob[x]}")
        ids = set(F.dom.ident.values())
        for a in F.dom.arrows:
            if a in ids:
                continue
            out.append(f"  arrow {a} => {F.ar[a]}")
        out.append("")
    for name in sorted(doc.indexed):
        X = doc.indexed[name]
        out.append(f"indexed {name}")
        out.append(f"  base {X.base.name}")
        for x in X.base.objects:
            out.append(f"  fiber {x} = {X.fiber(x).name}")
        ids = set(X.base.ident.values())
        for a in X.base.arrows:
            if a in ids:
                continue
            out.append(f"  transition {a} = {X.transition(a).name}")
        out.append("")
    for name in sorted(doc.calibrations):
        U = doc.calibrations[name]
        out.append(f"calibration {name}")
        out.append(f"  base {U.base.name}")
        ids = set(U.base.ident.values())
        members = [a for a in U.base.arrows
                   if a in U and a not in ids]
        out.append("  members: " + " ".join(str(a) for a in members))
        out.append("")
    return "\n".join(out)


def parse_json(text) -> Document:
    data = json.loads(text)
    lines = []
    for name, c in sorted(data.get("categories", {}).items()):
        lines.append(f"category {name}")
        lines.append("  objects: " + " ".join(c.get("objects", [])))
        for a in c.get("arrows", []):
            lines.append(f"  arrow {a['id']} : {a['src']} -> {a['tgt']}")
        for comp in c.get("composites", []):
            lines.append(f"  compose {comp['g']} {comp['f']} = {comp['h']}")
    for name, f in sorted(data.get("functors", {}).items()):
        lines.append(f"functor {name} : {f['dom']} -> {f['cod']}")
        for x, y in sorted(f.get("objects", {}).items()):
            lines.append(f"  object {x} => {y}")
        for a, b in sorted(f.get("arrows", {}).items()):
            lines.append(f"  arrow {a} => {b}")
    for name, x in sorted(data.get("indexed", {}).items()):
        lines.append(f"indexed {name}")
        lines.append(f"  base {x['base']}")
        for k, v in sorted(x.get("fibers", {}).items()):
            lines.append(f"  fiber {k} = {v}")
        for k, v in sorted(x.get("transitions", {}).items()):
            lines.append(f"  transition {k} = {v}")
    for name, u in sorted(data.get("calibrations", {}).items()):
        lines.append(f"calibration {name}")
        lines.append(f"  base {u['base']}")
        lines.append("  members: " + " ".join(u.get("members", [])))
    return parse_text("\n".join(lines))


def serialize_json(doc: Document) -> str:
    data = {"categories": {}, "functors": {}, "indexed": {}, "calibrations": {}}
    for name, C in doc.categories.items():
        ids = set(C.ident.values())
        data["categories"][name] = {
            "objects": [str(x) for x in C.objects],
            "arrows": [{"id": a, "src": C.src[a], "tgt": C.tgt[a]}
                       for a in C.arrows if a not in ids],
            "composites": [{"g": g, "f": f, "h": h}
                           for (g, f), h in sorted(C.comp.items(), key=repr)
                           if g not in ids and f not in ids],
        }
    for name, F in doc.functors.items():
        ids = set(F.dom.ident.values())
        data["functors"][name] = {
            "dom": F.dom.name, "cod": F.cod.name,
            "objects": {str(x): str(F.ob[x]) for x in F.dom.objects},
            "arrows": {str(a): str(F.ar[a]) for a in F.dom.arrows
                       if a not in ids},
        }
    for name, X in doc.indexed.items():
        ids = set(X.base.ident.values())
        data["indexed"][name] = {
            "base": X.base.name,
            "fibers": {str(x): X.fiber(x).name for x in X.base.objects},
            "transitions": {str(a): X.transition(a).name
                            for a in X.base.arrows if a not in ids},
        }
    for name, U in doc.calibrations.items():
        ids = set(U.base.ident.values())
        data["calibrations"][name] = {
            "base": U.base.name,
            "members": [str(a) for a in U.base.arrows
                        if a in U and a not in ids],
        }
    return json.dumps(data, sort_keys=True, indent=1)


def load(path) -> Document:
    with open(path, "r", encoding="utf-8") as fh:
        text = fh.read()
    if str(path).endswith(".json"):
        return parse_json(text)
    return parse_text(text)
