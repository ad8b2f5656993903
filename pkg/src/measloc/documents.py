"""Line-oriented text documents for every core object.

A document is a block of ``key: value`` lines starting with ``kind:``.
Several blocks are separated by ``---`` lines, and a block may refer to an
earlier one through its ``name:``.  A bare ``powerset(n)`` or ``chain(n)``
line is shorthand for a lattice document.

Terms are integers, identifiers, sets ``{a,b}`` and pairs ``(i,x)``.
"""

from __future__ import annotations

import re

from .cvna import Cvna, CvnaHom
from .ems import EnhancedMeasurableSpace, Measure, PreMap
from .errors import MeasLocError, ParseError, ValidationError
from .lattice import FiniteLattice, LatticeMap, chain, diamond, label, pentagon, point_key, powerset, set_key
from .scalars import format_scalar, parse_scalar
from .topology import FiniteTopSpace
from .valuations import Valuation

KINDS = ("lattice", "topology", "ems", "premap", "valuation", "measure", "cvna", "hom")

_SHORTHAND = re.compile(r"^\s*(powerset|chain)\((\d+)\)\s*$|^\s*(M3|N5)\s*$")
_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_']*")
_INT = re.compile(r"-?\d+")


# terms


class _Terms:
    def __init__(self, text, line, col0):
        self.text = text
        self.pos = 0
        self.line = line
        self.col0 = col0

    def error(self, msg):
        raise ParseError(msg, self.line, self.col0 + self.pos + 1)

    def skip(self):
        while self.pos < len(self.text) and self.text[self.pos] in " \t":
            self.pos += 1

    def done(self):
        self.skip()
        return self.pos >= len(self.text)

    def expect(self, ch):
        self.skip()
        if not self.text.startswith(ch, self.pos):
            self.error(f"expected {ch!r}")
        self.pos += len(ch)

    def term(self):
        self.skip()
        if self.pos >= len(self.text):
            self.error("expected a term")
        ch = self.text[self.pos]
        if ch in "{(":
            close = "}" if ch == "{" else ")"
            self.pos += 1
            items = []
            self.skip()
            if self.text.startswith(close, self.pos):
                self.pos += 1
            else:
                while True:
                    items.append(self.term())
                    self.skip()
                    if self.text.startswith(",", self.pos):
                        self.pos += 1
                        continue
                    self.expect(close)
                    break
            return frozenset(items) if ch == "{" else tuple(items)
        m = _INT.match(self.text, self.pos) or _IDENT.match(self.text, self.pos)
        if not m:
            self.error(f"unexpected character {ch!r}")
        self.pos = m.end()
        tok = m.group()
        return int(tok) if _INT.fullmatch(tok) else tok

    def terms(self):
        out = []
        while not self.done():
            out.append(self.term())
        return out

    def arrows(self, sep="->"):
        """Pairs a->b."""
        out = []
        while not self.done():
            a = self.term()
            self.expect(sep)
            out.append((a, self.term()))
        return out

    def covers(self):
        return self.arrows("<")

    def assignments(self):
        """Pairs term=scalar."""
        out = []
        while not self.done():
            a = self.term()
            self.expect("=")
            self.skip()
            start = self.pos
            while self.pos < len(self.text) and self.text[self.pos] not in " \t":
                self.pos += 1
            try:
                out.append((a, parse_scalar(self.text[start:self.pos])))
            except ValueError:
                self.pos = start
                self.error("malformed scalar")
        return out


def _fmt(x):
    return label(x)


# blocks


class _Block:
    def __init__(self, start_line):
        self.start = start_line
        self.fields = {}

    def get(self, key, required=True):
        if key not in self.fields:
            if required:
                raise ParseError(f"missing field {key!r}", self.start, 1)
            return None
        return self.fields[key]

    def terms(self, key, mode="terms", required=True):
        f = self.get(key, required)
        if f is None:
            return []
        text, line, col = f
        return getattr(_Terms(text, line, col), mode)()


def _split(text):
    blocks = []
    cur = None
    for no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].rstrip()
        if not line.strip():
            continue
        if line.strip() == "---":
            cur = None
            continue
        if cur is None:
            cur = _Block(no)
            blocks.append(cur)
        m = _SHORTHAND.match(line)
        if m and not cur.fields:
            cur.fields["kind"] = ("lattice", no, 1)
            cur.fields["shorthand"] = (line.strip(), no, 1)
            continue
        if ":" not in line:
            raise ParseError("expected 'key: value'", no, 1)
        key, _, value = line.partition(":")
        key = key.strip()
        if not _IDENT.fullmatch(key):
            raise ParseError(f"bad key {key!r}", no, 1)
        if key in cur.fields:
            raise ParseError(f"duplicate field {key!r}", no, 1)
        col = len(line) - len(value) + 1
        cur.fields[key] = (value, no, col)
    return blocks


def _validated(invariant_fn):
    try:
        return invariant_fn()
    except ValidationError:
        raise
    except MeasLocError as e:
        raise ValidationError(type(e).__name__, str(e), e.witness) from e


def _ref(block, key, env, kinds):
    text, line, col = block.get(key)
    name = text.strip()
    if name not in env:
        raise ParseError(f"unknown reference {name!r}", line, col)
    obj = env[name]
    if not isinstance(obj, kinds):
        raise ParseError(f"{name!r} has the wrong kind", line, col)
    return obj


def _build(block, env):
    kind = block.get("kind")[0].strip()
    if kind not in KINDS:
        raise ParseError(f"unknown kind {kind!r}", block.fields["kind"][1], block.fields["kind"][2])
    if kind == "lattice":
        if "shorthand" in block.fields:
            s = block.fields["shorthand"][0]
            if s == "M3":
                return diamond()
            if s == "N5":
                return pentagon()
            fn, n = s[:-1].split("(")
            return powerset(int(n)) if fn == "powerset" else chain(int(n))
        elems = block.terms("elements")
        covers = block.terms("covers", "covers")
        name = block.get("name", required=False)
        missing = [c for pair in covers for c in pair if c not in elems]
        if missing:
            text, line, col = block.get("covers")
            raise ParseError(f"cover mentions unknown element {_fmt(missing[0])}", line, col)
        return _validated(lambda: FiniteLattice.from_covers(elems, covers,
                                                            name=name[0].strip() if name else None))
    if kind == "topology":
        pts = block.terms("points")
        opens = block.terms("opens")
        return _validated(lambda: FiniteTopSpace(pts, opens))
    if kind == "ems":
        pts = block.terms("points")
        M = block.terms("M")
        N = block.terms("N")
        return _validated(lambda: EnhancedMeasurableSpace(pts, M, N))
    if kind == "premap":
        src = _ref(block, "src", env, EnhancedMeasurableSpace)
        dst = _ref(block, "dst", env, EnhancedMeasurableSpace)
        pairs = block.terms("map", "arrows", required=False)
        return _validated(lambda: PreMap(src, dst, dict(pairs)))
    if kind == "valuation":
        L = _ref(block, "on", env, FiniteLattice)
        vals = dict(block.terms("values", "assignments"))
        missing = [x for x in L.elems if x not in vals]
        if missing:
            text, line, col = block.get("values")
            raise ParseError(f"no value for element {_fmt(missing[0])}", line, col)
        return Valuation(L, vals)
    if kind == "measure":
        E = _ref(block, "on", env, EnhancedMeasurableSpace)
        vals = dict(block.terms("values", "assignments"))
        return _validated(lambda: Measure(E, vals))
    if kind == "cvna":
        return Cvna(block.terms("atoms"))
    src = _ref(block, "src", env, (Cvna, FiniteLattice))
    dst = _ref(block, "dst", env, (Cvna, FiniteLattice))
    pairs = dict(block.terms("map", "arrows"))
    if isinstance(src, Cvna):
        return _validated(lambda: CvnaHom(src, dst, pairs))
    missing = [x for x in src.elems if x not in pairs]
    if missing:
        text, line, col = block.get("map")
        raise ParseError(f"map has no image for {_fmt(missing[0])}", line, col)
    return _validated(lambda: LatticeMap(src, dst, pairs))


def parse_all(text):
    """All documents in order, as (name, object) pairs."""
    env = {}
    out = []
    for block in _split(text):
        obj = _build(block, env)
        f = block.get("name", required=False)
        name = f[0].strip() if f else None
        if name:
            env[name] = obj
        out.append((name, obj))
    if not out:
        raise ParseError("empty document", 1, 1)
    return out


def parse(text):
    """The last object of the document; earlier blocks are its references."""
    return parse_all(text)[-1][1]


# printing


def _family(fam):
    return " ".join(_fmt(m) for m in sorted(fam, key=set_key))


def _print_one(obj, name, refs):
    lines = []
    if isinstance(obj, FiniteLattice):
        lines.append("kind: lattice")
        if name:
            lines.append(f"name: {name}")
        lines.append("elements: " + " ".join(_fmt(x) for x in obj.elems))
        lines.append("covers: " + " ".join(f"{_fmt(a)} < {_fmt(b)}" for a, b in obj.covers()))
    elif isinstance(obj, FiniteTopSpace):
        lines += ["kind: topology"] + ([f"name: {name}"] if name else [])
        lines.append("points: " + " ".join(_fmt(x) for x in obj.points))
        lines.append("opens: " + _family(obj.opens))
    elif isinstance(obj, EnhancedMeasurableSpace):
        lines += ["kind: ems"] + ([f"name: {name}"] if name else [])
        lines.append("points: " + " ".join(_fmt(x) for x in obj.X))
        lines.append("M: " + _family(obj.M))
        lines.append("N: " + _family(obj.N))
    elif isinstance(obj, PreMap):
        lines += ["kind: premap"] + ([f"name: {name}"] if name else [])
        lines += [f"src: {refs[0]}", f"dst: {refs[1]}"]
        pairs = sorted(obj.mapping.items(), key=lambda p: point_key(p[0]))
        lines.append("map: " + " ".join(f"{_fmt(x)}->{_fmt(y)}" for x, y in pairs))
    elif isinstance(obj, Valuation):
        lines += ["kind: valuation"] + ([f"name: {name}"] if name else [])
        lines.append(f"on: {refs[0]}")
        lines.append("values: " + " ".join(f"{_fmt(x)}={format_scalar(v)}"
                                          for x, v in zip(obj.carrier.elems, obj.vec)))
    elif isinstance(obj, Measure):
        lines += ["kind: measure"] + ([f"name: {name}"] if name else [])
        lines.append(f"on: {refs[0]}")
        lines.append("values: " + " ".join(f"{_fmt(m)}={format_scalar(obj(m))}"
                                          for m in sorted(obj.domain, key=set_key)))
    elif isinstance(obj, Cvna):
        lines += ["kind: cvna"] + ([f"name: {name}"] if name else [])
        lines.append("atoms: " + " ".join(_fmt(a) for a in obj.atoms))
    elif isinstance(obj, CvnaHom):
        lines += ["kind: hom"] + ([f"name: {name}"] if name else [])
        lines += [f"src: {refs[0]}", f"dst: {refs[1]}"]
        lines.append("map: " + " ".join(f"{_fmt(b)}->{_fmt(a)}" for b, a in obj.atom_map.items()))
    elif isinstance(obj, LatticeMap):
        lines += ["kind: hom"] + ([f"name: {name}"] if name else [])
        lines += [f"src: {refs[0]}", f"dst: {refs[1]}"]
        lines.append("map: " + " ".join(f"{_fmt(x)}->{_fmt(obj(x))}" for x in obj.src.elems))
    else:
        raise TypeError(f"no document form for {type(obj).__name__}")
    return "\n".join(lines)


def _dependencies(obj):
    if isinstance(obj, (PreMap, CvnaHom, LatticeMap)):
        return [obj.src, obj.dst]
    if isinstance(obj, Valuation):
        return [obj.carrier]
    if isinstance(obj, Measure):
        return [obj.space]
    return []


def print_document(obj, name="main"):
    """Text form of obj, preceded by the documents it refers to."""
    deps = _dependencies(obj)
    parts = []
    refs = []
    for k, d in enumerate(deps):
        if k == 1 and d is deps[0]:
            refs.append(refs[0])
            continue
        ref = f"{name}_{'src' if len(deps) > 1 and k == 0 else 'dst' if len(deps) > 1 else 'on'}"
        parts.append(_print_one(d, ref, []))
        refs.append(ref)
    parts.append(_print_one(obj, name, refs))
    return "\n---\n".join(parts) + "\n"


def same_object(a, b):
    """Structural equality across separately parsed documents."""
    if type(a) is not type(b):
        return False
    if isinstance(a, FiniteLattice):
        return a.elems == b.elems and bool((a.leq_table == b.leq_table).all())
    if isinstance(a, Valuation):
        return same_object(a.carrier, b.carrier) and a.vec == b.vec
    if isinstance(a, (CvnaHom, LatticeMap, PreMap)):
        same_ends = same_object(a.src, b.src) and same_object(a.dst, b.dst)
        if isinstance(a, LatticeMap):
            return same_ends and all(a(x) == b(x) for x in a.src.elems)
        if isinstance(a, CvnaHom):
            return same_ends and a.atom_map == b.atom_map
        return same_ends and a.mapping == b.mapping
    return a == b
