"""Commands that run law checks and emit LawReport streams."""

from __future__ import annotations

import json
import os
import time
from dataclasses import dataclass
from fractions import Fraction

from .cvna import all_homs, check_cvna_equivalence, step
from .documents import parse
from .duality import (
    boolean_homs,
    check_equivalence,
    check_lifting,
    epsilon,
    lifting,
    ml,
    spec,
)
from .ems import EnhancedMeasurableSpace, Measure, PreMap, measure_from_block_weights
from .errors import MeasLocError, UnknownCommand
from .fixtures import enumerate_fixtures, random_ems, seeded_rng
from .lattice import FiniteLattice, is_isomorphism, label, powerset, set_key
from .measure_equiv import pentad, verify_pentad
from .scalars import GaussianRational, format_scalar, make
from .stone import check_duality_level, spectrum_points, stone_counit, stone_triangles, stone_unit
from .topology import FiniteTopSpace
from .valuations import (
    Valuation,
    check_jordan,
    hahn_jordan,
    random_valuation,
    validate_valuation,
)

COMMANDS = ("validate", "spectrum", "ml", "spec", "roundtrip", "hahn-jordan",
            "duality-report", "pentad", "proptest")


@dataclass
class LawReport:
    law: str
    anchor: str
    status: str  # pass, fail or info
    witness: object = None
    runtime: float | None = None

    def as_dict(self, timings=False):
        d = {"law": self.law, "anchor": self.anchor, "status": self.status,
             "witness": render(self.witness)}
        if timings:
            d["runtime"] = round(self.runtime or 0.0, 6)
        return d


def render(x):
    """Stable text for witnesses: sets sorted, scalars exact."""
    if x is None:
        return None
    if isinstance(x, bool):
        return "yes" if x else "no"
    if isinstance(x, (Fraction, GaussianRational, int)):
        return format_scalar(x)
    if isinstance(x, str):
        return x
    if isinstance(x, (frozenset, set)):
        items = sorted(x, key=lambda v: (render(v) if not isinstance(v, frozenset) else "", set_key(v) if isinstance(v, frozenset) else ()))
        return "{" + ",".join(render(v) for v in items) + "}"
    if isinstance(x, (list, tuple)):
        return "[" + " ".join(render(v) for v in x) + "]"
    if isinstance(x, dict):
        return "{" + " ".join(f"{render(k)}={render(v)}" for k, v in x.items()) + "}"
    if isinstance(x, Valuation):
        return " ".join(f"{label(e)}={format_scalar(v)}" for e, v in zip(x.carrier.elems, x.vec))
    return label(x) if not hasattr(x, "__dict__") else repr(x)


def _law(law, anchor, ok, witness=None):
    return LawReport(law, anchor, "pass" if ok else "fail", None if ok else witness)


def _info(law, value):
    return LawReport(law, "value", "info", value)


# commands


def cmd_validate(obj, **_):
    out = [_info("kind", type(obj).__name__)]
    if isinstance(obj, FiniteLattice):
        p = obj.profile
        for k in ("is_distributive", "is_frame", "is_boolean", "is_regular", "is_extremally_disconnected"):
            out.append(_info(k.removeprefix("is_"), getattr(p, k)))
    elif isinstance(obj, Valuation):
        flags = validate_valuation(obj)
        for k in ("valid", "positive", "real", "continuous", "completely_additive", "faithful", "normal"):
            out.append(_info(k, getattr(flags, k)))
        out.append(_law("continuity-iff-complete-additivity", "valuation-flags",
                        flags.continuous == flags.completely_additive))
    elif isinstance(obj, EnhancedMeasurableSpace):
        out.append(_info("blocks", list(sorted(obj.blocks, key=set_key))))
    out.append(_law("validates", "structure", True))
    return out


def cmd_spectrum(obj, **_):
    L = _lattice(obj)
    T = spectrum_points(L)
    out = [_info("points", list(T.points)), _info("opens", sorted(T.opens, key=set_key))]
    if L.profile.is_distributive:
        out.append(_law("counit-iso", "stone-counit", is_isomorphism(stone_counit(L)).ok))
    if L.profile.is_boolean:
        out.append(_law("unit-iso", "stone-unit", is_isomorphism(stone_unit(L)).ok))
        tri = stone_triangles(L)
        out.append(_law("triangle-locale", "stone-triangles", tri.locale_side, tri.witness))
        out.append(_law("triangle-algebra", "stone-triangles", tri.algebra_side, tri.witness))
    return out


def cmd_ml(obj, **_):
    E = _ems(obj)
    Q = ml(E)
    out = [_info("classes", len(Q.classes)),
           _info("atoms", [Q.rep(a) for a in Q.classes.atoms()])]
    out.append(_law("boolean-quotient", "ml-quotient", Q.classes.profile.is_boolean))
    return out


def cmd_spec(obj, **_):
    A = _lattice(obj)
    S = spec(A)
    iso = is_isomorphism(epsilon(A))
    return [_info("points", list(S.X)),
            _law("epsilon-iso", "counit", iso.ok, iso.refutation)]


def cmd_roundtrip(obj, **_):
    if isinstance(obj, EnhancedMeasurableSpace):
        out = [_law(r.law, "lifting-" + r.law, r.ok, r.witness) for r in check_lifting(obj)]
        alt = check_lifting(obj, lifting(obj, "alternate"))
        out += [_law("alternate/" + r.law, "lifting-" + r.law, r.ok, r.witness) for r in alt]
        return out
    L = _lattice(obj)
    out = cmd_spectrum(L)
    if L.profile.is_boolean:
        out += [_law(r.law, "measurable-locale-" + r.law, r.ok, r.witness)
                for r in check_equivalence(L)]
        out += [_law(r.law, "cvna-" + r.law, r.ok, r.witness) for r in check_cvna_equivalence(L)]
    return out


def cmd_hahn_jordan(obj, **_):
    if not isinstance(obj, Valuation):
        raise MeasLocError("hahn-jordan expects a valuation document")
    jd = hahn_jordan(obj)
    out = [
        _info("positive-support", jd.nu_plus),
        _info("negative-support", jd.nu_minus),
        _info("positive-part", jd.pos_part),
        _info("negative-part", jd.neg_part),
        _info("norm", jd.variation_norm),
    ]
    for clause, w in check_jordan(obj, jd).items():
        out.append(_law(clause, "jordan-" + clause, w is None, w))
    return out


def cmd_duality_report(obj, **_):
    L = _lattice(obj)
    rep = check_duality_level(L)
    out = [_info("level", rep.level)]
    out += [_info(k, v) for k, v in rep.checks.items()]
    out += [_info("normal-witness", w) for w in rep.witnesses]
    if L.profile.is_boolean:
        out += cmd_roundtrip(L)
        homs = list(boolean_homs(powerset(min(len(L.atoms()), 2)), L))[:8]
        out += [_law(r.law, "measurable-locale-" + r.law, r.ok, r.witness)
                for r in check_equivalence(L, homs) if "natural" in r.law]
        out += [_law(r.law, "cvna-" + r.law, r.ok, r.witness)
                for r in check_cvna_equivalence(L, homs) if "natural" in r.law]
    return out


def cmd_pentad(obj, **_):
    if not isinstance(obj, Measure):
        raise MeasLocError("pentad expects a measure document")
    p = pentad(obj.space, obj)
    out = [_info("predual", list(p.predual.weights))]
    out += [_law(c.edge, "pentad-" + c.edge, c.ok, c.witness) for c in verify_pentad(p)]
    return out


# seeded property harness


def _random_weights(rng, n, complex_values):
    def draw():
        return Fraction(rng.randint(-4, 4), rng.choice((1, 2, 3)))
    return [make(draw(), draw() if complex_values else 0) for _ in range(n)]


def prop_hahn_jordan(seed, cases, max_atoms=6):
    bad = None
    for i in range(cases):
        rng = seeded_rng(seed, "hahn-jordan", i)
        v = random_valuation(powerset(rng.randint(0, max_atoms)), rng)
        fails = {k: w for k, w in check_jordan(v, hahn_jordan(v)).items() if w is not None}
        if fails:
            bad = (i, fails)
            break
    return _law("hahn-jordan", "jordan-all-clauses", bad is None, bad)


def perturbed_valuation(rng, L):
    """A random valuation, with one value changed half of the time."""
    v = random_valuation(L, rng)
    if rng.random() < 0.5 and len(L) > 1:
        vec = list(v.vec)
        k = rng.randrange(len(vec))
        vec[k] = vec[k] + Fraction(rng.choice((-1, 1)), rng.choice((1, 2)))
        v = Valuation._from_vec(L, vec)
    return v


def prop_continuity(seed, cases, max_atoms=4):
    bad = None
    for i in range(cases):
        rng = seeded_rng(seed, "continuity", i)
        flags = validate_valuation(perturbed_valuation(rng, powerset(rng.randint(0, max_atoms))))
        if flags.continuous != flags.completely_additive:
            bad = i
            break
    return _law("continuity-iff-complete-additivity", "valuation-flags", bad is None, bad)


def prop_lifting(seed, cases, max_points=6):
    bad = None
    for i in range(cases):
        rng = seeded_rng(seed, "lifting", i)
        E = random_ems(rng, max_points)
        for r in check_lifting(E):
            if not r.ok:
                bad = (i, r.law, E)
                break
        if bad:
            break
    return _law("lifting-equivalence", "lifting-laws", bad is None, bad)


def random_measure(rng, E):
    good = [b for b in E.blocks if b not in E.N]
    return measure_from_block_weights(E, _random_weights(rng, len(good), rng.random() < 0.5))


def prop_pentad(seed, cases, max_points=4):
    spaces = list(enumerate_fixtures(max_points))
    bad = None
    for i in range(cases):
        rng = seeded_rng(seed, "pentad", i)
        E = spaces[rng.randrange(len(spaces))]
        failed = [c for c in verify_pentad(pentad(E, random_measure(rng, E))) if not c.ok]
        if failed:
            bad = (i, failed[0].edge, failed[0].witness)
            break
    return _law("pentad-roundtrips", "pentad", bad is None, bad)


def cmd_proptest(obj=None, seed=0, cases=200, max_points=3, **_):
    return [
        _info("seed", seed),
        _info("cases", cases),
        prop_hahn_jordan(seed, cases),
        prop_continuity(seed, cases),
        prop_lifting(seed, cases, max_points + 2),
        prop_pentad(seed, cases, min(max_points, 4)),
    ]


_DISPATCH = {
    "validate": cmd_validate,
    "spectrum": cmd_spectrum,
    "ml": cmd_ml,
    "spec": cmd_spec,
    "roundtrip": cmd_roundtrip,
    "hahn-jordan": cmd_hahn_jordan,
    "duality-report": cmd_duality_report,
    "pentad": cmd_pentad,
    "proptest": cmd_proptest,
}


def _lattice(obj):
    if isinstance(obj, FiniteTopSpace):
        from .stone import omega
        return omega(obj)
    if not isinstance(obj, FiniteLattice):
        raise MeasLocError("expected a lattice document")
    return obj


def _ems(obj):
    if isinstance(obj, FiniteTopSpace):
        from .duality import tm
        return tm(obj)
    if not isinstance(obj, EnhancedMeasurableSpace):
        raise MeasLocError("expected an ems or topology document")
    return obj


def load(source):
    """A document from a file path or inline text."""
    if source is None:
        return None
    if os.path.isfile(source):
        with open(source, encoding="utf-8") as fh:
            return parse(fh.read())
    return parse(source.replace("\\n", "\n"))


def run(command, source=None, seed=0, cases=200, max_points=3):
    """Run a command; returns the object and its reports, each timed."""
    if command not in _DISPATCH:
        raise UnknownCommand(f"unknown command {command!r}", command)
    obj = load(source)
    if obj is None and command != "proptest":
        raise MeasLocError(f"{command} needs an input document")
    start = time.perf_counter()
    reports = _DISPATCH[command](obj, seed=seed, cases=cases, max_points=max_points)
    elapsed = time.perf_counter() - start
    for r in reports:
        r.runtime = elapsed / max(len(reports), 1)
    return obj, reports


def format_reports(reports, fmt="text", timings=False):
    lines = []
    for r in reports:
        d = r.as_dict(timings)
        if fmt == "structured":
            lines.append(json.dumps(d, sort_keys=True))
        else:
            cols = [d["status"].upper(), d["law"], d["anchor"], d["witness"] or "-"]
            if timings:
                cols.append(f"{d['runtime']:.6f}")
            lines.append("\t".join(str(c) for c in cols))
    return "\n".join(lines) + "\n"


def failed(reports):
    return any(r.status == "fail" for r in reports)
