"""Command-line front end.

Usage: ``twohomalg COMMAND MANIFEST [flags]``.  The manifest is a YAML
document (schema ``v1``, see README) naming a ring, modules, 2-modules,
morphisms, 2-morphisms, complexes, complex morphisms, homotopies, functors
and optionally a ``command`` block whose ``args`` supply parameters.

Exit codes: 0 success or verdict true, 1 verdict false (with evidence),
2 input error, 3 capacity error.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from dataclasses import dataclass, field
from typing import Any, Optional

import yaml

from . import oracle
from .cochain import (CochainComplex, CochainHomotopy, ComplexMor, check_homotopy,
                      validate_complex, validate_complex_mor)
from .cohomology import cohomology
from .derived import (BaseChange, HomFrom, Identity, check_left_relative_exact, derived_functor,
                      long_sequence)
from .errors import CapacityError, ConstructionError, InputError
from .exactness import exactness_at
from .intmod import ZZ, BaseRing, FpModule, ModuleHom, Zmod, format_factors, matrix, to_lists
from .relkc import relative_cokernel, relative_kernel
from .resolution import (EmbeddingOracle, build_resolution, check_injective, compare_lifts,
                         lift_morphism, validate_resolution)
from .twomod import OneMor, PiPair, TwoMod, TwoMor

SCHEMA = "v1"
SECTIONS = ("modules", "twomods", "morphisms", "twomorphisms", "complexes", "complex_morphisms",
            "homotopies", "functors")


# ------------------------------------------------------------------ manifest

@dataclass
class Manifest:
    raw: dict
    ring: BaseRing
    modules: dict = field(default_factory=dict)
    twomods: dict = field(default_factory=dict)
    morphisms: dict = field(default_factory=dict)
    twomorphisms: dict = field(default_factory=dict)
    complexes: dict = field(default_factory=dict)
    complex_morphisms: dict = field(default_factory=dict)
    homotopies: dict = field(default_factory=dict)
    functors: dict = field(default_factory=dict)

    @property
    def command(self) -> dict:
        return self.raw.get("command") or {}


def _ring(v) -> BaseRing:
    if v in ("Z", "ZZ", 0):
        return ZZ
    if isinstance(v, int) and v >= 2:
        return Zmod(v)
    if isinstance(v, str) and v.startswith("Z/") and v[2:].isdigit():
        return Zmod(int(v[2:]))
    raise InputError(f"unknown ring {v!r}")


def _get(table: dict, name, what: str):
    if name not in table:
        raise InputError(f"unknown {what} {name!r}")
    return table[name]


def _mat(v, rows: int, cols: int) -> Any:
    if v is None or v == 0:
        return matrix([], rows, cols)
    m = matrix(v, rows, cols)
    if m.shape != (rows, cols):
        raise InputError(f"matrix has shape {m.shape}, expected {(rows, cols)}")
    return m


def _module(ring, spec) -> FpModule:
    if isinstance(spec, dict) and "factors" in spec:
        return FpModule.from_factors(ring, spec["factors"])
    if isinstance(spec, dict) and "ngens" in spec:
        g = spec["ngens"]
        rels = spec.get("relations") or []
        return FpModule(ring, matrix(rels, g), g)
    if isinstance(spec, list):
        return FpModule.from_factors(ring, spec)
    raise InputError(f"bad module specification {spec!r}")


def _modref(m: Manifest, v) -> FpModule:
    if isinstance(v, str):
        return _get(m.modules, v, "module")
    return _module(m.ring, v)


def _twomod(m: Manifest, spec) -> TwoMod:
    if isinstance(spec, str):
        return _get(m.twomods, spec, "2-module")
    z = FpModule.zero(m.ring)
    if "discrete" in spec:
        return TwoMod.discrete(_modref(m, spec["discrete"]))
    if "codiscrete" in spec:
        return TwoMod.codiscrete(_modref(m, spec["codiscrete"]))
    if "contractible" in spec:
        return TwoMod.contractible(_modref(m, spec["contractible"]))
    if spec.get("zero"):
        return TwoMod.zero(m.ring)
    a1 = _modref(m, spec["deg1"]) if "deg1" in spec else z
    a0 = _modref(m, spec["deg0"]) if "deg0" in spec else z
    return TwoMod(ModuleHom(a1, a0, _mat(spec.get("d"), a0.ngens, a1.ngens)))


def _onemor(m: Manifest, spec) -> OneMor:
    if isinstance(spec, str):
        if "@" in spec:
            parts = [_onemor(m, p.strip()) for p in spec.split("@")]
            out = parts[-1]
            for p in reversed(parts[:-1]):
                out = p @ out
            return out
        if spec.startswith("id(") and spec.endswith(")"):
            return OneMor.identity(_twomod(m, spec[3:-1].strip()))
        if spec.startswith("zero(") and spec.endswith(")"):
            a, b = [s.strip() for s in spec[5:-1].split(",")]
            return OneMor.zero(_twomod(m, a), _twomod(m, b))
        return _get(m.morphisms, spec, "morphism")
    a, b = _twomod(m, spec["source"]), _twomod(m, spec["target"])
    return OneMor(a, b, ModuleHom(a.deg1, b.deg1, _mat(spec.get("f1"), b.deg1.ngens, a.deg1.ngens)),
                  ModuleHom(a.deg0, b.deg0, _mat(spec.get("f0"), b.deg0.ngens, a.deg0.ngens)))


def _twomor(m: Manifest, spec) -> TwoMor:
    if isinstance(spec, str):
        return _get(m.twomorphisms, spec, "2-morphism")
    src, dst = _onemor(m, spec["source"]), _onemor(m, spec["target"])
    h = ModuleHom(src.source.deg0, src.target.deg1,
                  _mat(spec.get("h"), src.target.deg1.ngens, src.source.deg0.ngens))
    return TwoMor(src, dst, h)


def _complex(m: Manifest, spec) -> CochainComplex:
    if isinstance(spec, str):
        return _get(m.complexes, spec, "complex")
    entries = [_twomod(m, e) for e in spec["entries"]]
    diffs = [_onemor(m, d) for d in spec.get("diffs", [])]
    alphas = []
    for n, h in enumerate(spec.get("alphas", [])):
        comp = diffs[n + 1] @ diffs[n]
        alphas.append(TwoMor.to_zero(comp, ModuleHom(entries[n].deg0, entries[n + 2].deg1,
                                                     _mat(h, entries[n + 2].deg1.ngens,
                                                          entries[n].deg0.ngens))))
    c = CochainComplex(entries, diffs, alphas)
    rep = validate_complex(c)
    if not rep.ok:
        raise InputError(f"complex is not valid: {rep}")
    return c


def _complex_mor(m: Manifest, spec) -> ComplexMor:
    if isinstance(spec, str):
        return _get(m.complex_morphisms, spec, "complex morphism")
    s, t = _complex(m, spec["source"]), _complex(m, spec["target"])
    maps = [_onemor(m, f) for f in spec.get("maps", [])]
    out = ComplexMor(s, t, maps)
    for n, h in enumerate(spec.get("lambdas", [])):
        a, b = s.obj(n), t.obj(n + 1)
        out.lambdas[n] = TwoMor(out.map(n + 1) @ s.diff(n), t.diff(n) @ out.map(n),
                                ModuleHom(a.deg0, b.deg1, _mat(h, b.deg1.ngens, a.deg0.ngens)),
                                check=False)
    rep = validate_complex_mor(out)
    if not rep.ok:
        raise InputError(f"complex morphism is not valid: {rep}")
    return out


def _homotopy(m: Manifest, spec) -> CochainHomotopy:
    if isinstance(spec, str):
        return _get(m.homotopies, spec, "homotopy")
    f, g = _complex_mor(m, spec["source"]), _complex_mor(m, spec["target"])
    hm = [_onemor(m, x) for x in spec.get("hmaps", [])]
    out = CochainHomotopy(f, g, hm)
    a, b = f.source, f.target
    for k, h in enumerate(spec.get("taus", [])):
        out.taus[k] = TwoMor(f.map(k), out.target_of_tau(k),
                             ModuleHom(a.obj(k).deg0, b.obj(k).deg1,
                                       _mat(h, b.obj(k).deg1.ngens, a.obj(k).deg0.ngens)),
                             check=False)
    return out


def _functor(m: Manifest, spec):
    if isinstance(spec, str):
        if spec in m.functors:
            return m.functors[spec]
        if spec.lower() == "identity":
            return Identity()
        raise InputError(f"unknown functor {spec!r}")
    if "hom_from" in spec:
        return HomFrom(_modref(m, spec["hom_from"]))
    if "base_change" in spec:
        n, k = spec["base_change"]
        return BaseChange(n, k)
    if spec.get("identity"):
        return Identity()
    raise InputError(f"bad functor specification {spec!r}")


_BUILDERS = {"modules": lambda m, s: _module(m.ring, s), "twomods": _twomod,
             "morphisms": _onemor, "twomorphisms": _twomor, "complexes": _complex,
             "complex_morphisms": _complex_mor, "homotopies": _homotopy, "functors": _functor}


def parse_manifest(text: str) -> Manifest:
    try:
        raw = yaml.safe_load(text)
    except yaml.YAMLError as exc:
        raise InputError(f"manifest is not valid YAML: {exc}") from exc
    if not isinstance(raw, dict):
        raise InputError("manifest must be a mapping")
    if str(raw.get("version", SCHEMA)) != SCHEMA:
        raise InputError(f"unsupported manifest version {raw.get('version')!r}")
    unknown = set(raw) - set(SECTIONS) - {"version", "ring", "command"}
    if unknown:
        raise InputError(f"unknown manifest sections {sorted(unknown)}")
    man = Manifest(raw, _ring(raw.get("ring", "Z")))
    for sec in SECTIONS:
        table = getattr(man, sec)
        for name, spec in (raw.get(sec) or {}).items():
            try:
                table[name] = _BUILDERS[sec](man, spec)
            except (KeyError, TypeError, ValueError) as exc:
                if isinstance(exc, InputError):
                    raise InputError(f"{sec}.{name}: {exc}") from exc
                raise InputError(f"{sec}.{name}: malformed entry ({exc})") from exc
    return man


def dump_document(doc: dict) -> str:
    """Canonical serialisation: sorted keys, block style."""
    return yaml.safe_dump(doc, sort_keys=True, default_flow_style=False, allow_unicode=False)


def canonical_manifest(text: str) -> str:
    man = parse_manifest(text)
    raw = dict(man.raw)
    raw.setdefault("version", SCHEMA)
    return dump_document(raw)


# ------------------------------------------------------------------ reports

def _pis(p: PiPair) -> dict:
    return {"pi0": str(p.pi0), "pi1": str(p.pi1),
            "pi0_factors": list(p.pi0.canonical_form()), "pi1_factors": list(p.pi1.canonical_form())}


def _twomod_doc(a: TwoMod) -> dict:
    return {"deg1": format_factors(a.deg1.canonical_form()), "deg0": format_factors(a.deg0.canonical_form()),
            "d": to_lists(a.d.matrix), **_pis(a.pi())}


def _arg(args: dict, key: str, default=None, required: bool = True):
    if key in args and args[key] is not None:
        return args[key]
    if default is not None or not required:
        return default
    raise InputError(f"missing command argument {key!r}")


def _cmd_pi(man, a, opts):
    A = _twomod(man, _arg(a, "twomod"))
    return 0, {"twomod": _twomod_doc(A)}


def _triple(man, a):
    return _onemor(man, _arg(a, "F")), _onemor(man, _arg(a, "G")), _twomor(man, _arg(a, "phi"))


def _cmd_relker(man, a, opts):
    f, g, phi = _triple(man, a)
    kd = relative_kernel(f, g, phi)
    return 0, {"kernel": _twomod_doc(kd.K), "e": {"f1": to_lists(kd.e.f1.matrix), "f0": to_lists(kd.e.f0.matrix)},
               "eps": to_lists(kd.eps.h.matrix)}


def _cmd_relcoker(man, a, opts):
    f, g, phi = _triple(man, a)
    cd = relative_cokernel(f, g, phi)
    return 0, {"cokernel": _twomod_doc(cd.Q), "p": {"f1": to_lists(cd.p.f1.matrix), "f0": to_lists(cd.p.f0.matrix)},
               "piw": to_lists(cd.piw.h.matrix)}


def _cmd_cohomology(man, a, opts):
    c = _complex(man, _arg(a, "complex"))
    n = opts.n if opts.n is not None else a.get("n")
    degrees = [int(n)] if n is not None else list(range(c.length))
    return 0, {"cohomology": {int(k): {**_pis(cohomology(c, k).pis)} for k in degrees}}


def _cmd_check_exact(man, a, opts):
    c = _complex(man, _arg(a, "complex"))
    n = opts.n if opts.n is not None else a.get("n")
    points = [int(n)] if n is not None else list(range(c.length))
    certs = {k: exactness_at(c, k) for k in points}
    ok = all(x.verdict for x in certs.values())
    return (0 if ok else 1), {"verdict": ok, "points": {k: {"verdict": x.verdict, "evidence": x.evidence}
                                                     for k, x in certs.items()}}


def _cmd_check_homotopy(man, a, opts):
    h = _homotopy(man, _arg(a, "homotopy"))
    rep = check_homotopy(h)
    return (0 if rep.ok else 1), {"verdict": rep.ok, "violations": list(rep.violations)}


def _resolve(man, a, opts, key="twomod", length=None):
    A = _twomod(man, _arg(a, key))
    strategy = a.get("strategy", "full")
    length = length or int(a.get("length", 4))
    return build_resolution(A, EmbeddingOracle(strategy), length=length)


def _res_doc(res) -> dict:
    return {"length": res.length,
            "entries": [_twomod_doc(e) for e in res.augmented.entries[1:]]}


def _cmd_resolve(man, a, opts):
    res = _resolve(man, a, opts)
    rep = validate_resolution(res, check_injectives=bool(a.get("certify", False)))
    doc = {"resolution": _res_doc(res), "verdict": rep.ok, "violations": list(rep.violations)}
    return (0 if rep.ok else 1), doc


def _lift_setup(man, a, opts):
    f = _onemor(man, _arg(a, "F"))
    length = int(a.get("length", 4))
    strategy = a.get("strategy", "full")
    ra = build_resolution(f.source, EmbeddingOracle(strategy), length=length)
    rb = build_resolution(f.target, EmbeddingOracle(strategy), length=length)
    return f, ra, rb


def _cmd_lift(man, a, opts):
    f, ra, rb = _lift_setup(man, a, opts)
    lift = lift_morphism(f, ra, rb, seed=opts.seed)
    rep = validate_complex_mor(lift.lift)
    maps = [{"f1": to_lists(lift.lift.map(n).f1.matrix), "f0": to_lists(lift.lift.map(n).f0.matrix)}
            for n in range(lift.lift.length)]
    return (0 if rep.ok else 1), {"verdict": rep.ok, "maps": maps}


def _cmd_compare_lifts(man, a, opts):
    f, ra, rb = _lift_setup(man, a, opts)
    seed = opts.seed if opts.seed is not None else 0
    l1 = lift_morphism(f, ra, rb, seed=seed)
    l2 = lift_morphism(f, ra, rb, seed=seed + 7919)
    h = compare_lifts(l1, l2, seed=seed)
    rep = check_homotopy(h)
    return (0 if rep.ok else 1), {"verdict": rep.ok, "validated_up_to": h.upto,
                                  "violations": list(rep.violations)}


def _cmd_derive(man, a, opts):
    t = _functor(man, _arg(a, "functor"))
    A = _twomod(man, _arg(a, "twomod"))
    depth = opts.depth if opts.depth is not None else int(a.get("depth", 3))
    i = a.get("i")
    degrees = [int(i)] if i is not None else list(range(depth + 1))
    length = int(a.get("length", max(degrees) + 3))
    res = build_resolution(A, EmbeddingOracle(a.get("strategy", "full")), length=length)
    conventions = [opts.convention] if opts.convention else ["plain", "augmented"]
    doc = {}
    for conv in conventions:
        doc[conv] = {k: _pis(derived_functor(t, A, res, k, conv).pis) for k in degrees}
    return 0, {"functor": t.name, "derived": doc}


def _cmd_long_seq(man, a, opts):
    t = _functor(man, _arg(a, "functor"))
    f, g, phi = _triple(man, a)
    depth = opts.depth if opts.depth is not None else int(a.get("depth", 3))
    length = int(a.get("length", depth + 5))
    ra = build_resolution(f.source, length=length)
    rc = build_resolution(g.target, length=length)
    ls = long_sequence(t, f, phi, g, ra, rc, depth=depth, seed=opts.seed)
    values = {f"{k}{i}": _pis(v.pis) for (k, i), v in sorted(ls.values.items(), key=lambda kv: (kv[0][1], kv[0][0]))}
    points = [{"point": p.label, "verdict": p.certificate.verdict, "evidence": p.certificate.evidence}
              for p in ls.points]
    return (0 if ls.ok else 1), {"verdict": ls.ok, "values": values, "points": points,
                                 "product_comparisons": ls.comparisons}


def _cmd_check_injective(man, a, opts):
    A = _twomod(man, _arg(a, "twomod"))
    cert = check_injective(A, seed=opts.seed)
    return (0 if cert.verdict else 1), {"verdict": cert.verdict, "cases": cert.cases}


def _cmd_oracle_verify(man, a, opts):
    kind = _arg(a, "kind")
    cap = opts.cap or oracle.DEFAULT_CAP
    if kind in ("rel_kernel", "rel_cokernel"):
        inst = _triple(man, a)
    elif kind == "biproduct":
        inst = (_twomod(man, _arg(a, "A")), _twomod(man, _arg(a, "B")))
    elif kind == "cohomology_description":
        inst = (_complex(man, _arg(a, "complex")), int(opts.n if opts.n is not None else _arg(a, "n")))
    elif kind == "left_exact":
        t = _functor(man, _arg(a, "functor"))
        rep = check_left_relative_exact(t, [_triple_fgp(man, a)])
        return (0 if rep.ok else 1), {"verdict": rep.ok}
    else:
        raise InputError(f"unknown oracle kind {kind!r}")
    rep = oracle.verify_universal(kind, inst, cap=cap)
    return (0 if rep.ok else 1), {"kind": kind, "verdict": rep.ok, "checks": rep.checks,
                                  "mismatches": rep.mismatches}


def _triple_fgp(man, a):
    f, g, phi = _triple(man, a)
    return f, phi, g


COMMANDS = {"pi": _cmd_pi, "relker": _cmd_relker, "relcoker": _cmd_relcoker,
            "cohomology": _cmd_cohomology, "check-exact": _cmd_check_exact,
            "check-homotopy": _cmd_check_homotopy, "resolve": _cmd_resolve, "lift": _cmd_lift,
            "compare-lifts": _cmd_compare_lifts, "derive": _cmd_derive, "long-seq": _cmd_long_seq,
            "check-injective": _cmd_check_injective, "oracle-verify": _cmd_oracle_verify}


# ---------------------------------------------------------------------- main

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="twohomalg",
                                description="Exact 2-dimensional homological algebra on 2-term complexes.")
    p.add_argument("command", choices=sorted(COMMANDS), help="computation to run")
    p.add_argument("manifest", help="YAML manifest (schema v1); '-' reads stdin")
    p.add_argument("--json", action="store_true", help="emit JSON instead of YAML")
    p.add_argument("--convention", choices=["plain", "augmented"], default=None)
    p.add_argument("--depth", type=int, default=None)
    p.add_argument("--cap", type=int, default=None, help="oracle capacity bound")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--n", type=int, default=None, help="degree or position")
    return p


def run(argv: Optional[list] = None, out=None) -> int:
    out = out or sys.stdout
    opts = build_parser().parse_args(argv)
    if opts.seed is not None:
        random.seed(opts.seed)
    doc: dict = {"command": opts.command, "schema": SCHEMA}
    try:
        text = sys.stdin.read() if opts.manifest == "-" else open(opts.manifest).read()
        man = parse_manifest(text)
        cmd = man.command
        args = dict(cmd.get("args") or {})
        doc["ring"] = str(man.ring)
        code, body = COMMANDS[opts.command](man, args, opts)
        doc.update(body)
    except CapacityError as exc:
        code, doc["error"] = 3, {"kind": "capacity", "message": str(exc)}
    except ConstructionError as exc:
        code, doc["error"] = 1, {"kind": "construction", "message": str(exc)}
    except (InputError, OSError) as exc:
        code, doc["error"] = 2, {"kind": "input", "message": str(exc)}
    doc["exit"] = code
    doc = _plain(doc)
    out.write(json.dumps(doc, sort_keys=True, indent=2) + "\n" if opts.json else dump_document(doc))
    return code


def _plain(x):
    """Convert numpy scalars and tuples for serialisation."""
    if isinstance(x, dict):
        return {(k if isinstance(k, (str, int)) else str(k)): _plain(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_plain(v) for v in x]
    if isinstance(x, bool) or x is None or isinstance(x, str):
        return x
    try:
        return int(x)
    except (TypeError, ValueError):
        return str(x)


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
