"""Additive 2-functors, right derived 2-functors and the long 2-exact sequence.

Functors are degreewise liftings of additive functors on modules, so they
act on 2-mods, 1-morphisms and 2-morphisms by applying the module functor to
every matrix.  ``R^i T(A)`` is ``H^i`` of ``T`` applied to the injective part
of a resolution (``plain``) or ``H^{i+1}`` of ``T`` applied to the augmented
complex (``augmented``).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .cochain import (CochainComplex, CochainHomotopy, ComplexMor, Report, check_homotopy,
                      compose_complex_mor, validate_complex, validate_complex_mor)
from .cohomology import CohomologyResult, cohomology, homotopy_witness, induced_map
from .errors import ConstructionError, InputError, PreconditionError
from .exactness import ExactnessCertificate, check_two_exact, exactness_at
from .intmod import (BaseRing, FpModule, ModuleHom, Zmod, block_diag, eye, hom_kernel, hstack,
                     lift_through, vstack, zeros)
from .resolution import (Resolution, ResolutionLift, compare_lifts, horseshoe, lift_morphism,
                         truncate, validate_resolution)
from .twomod import OneMor, TwoMod, TwoMor, biproduct, is_equivalence, is_essentially_surjective

CONVENTIONS = ("plain", "augmented")


# ---------------------------------------------------------------- functors

def _key(m: FpModule):
    return (m.ring.modulus, m.ngens, tuple(int(v) for v in m.relations.flatten()),
            m.relations.shape[1])


class AdditiveTwoFunctor:
    """Degreewise lifting of an additive functor on modules.

    Subclasses implement ``on_module`` and ``on_hom``; the functor must send
    equal homs (modulo relations) to equal homs and respect sums.
    """

    name = "functor"

    def __init__(self):
        self._objs: dict = {}

    def target_ring(self, ring: BaseRing) -> BaseRing:
        return ring

    def on_module(self, m: FpModule) -> FpModule:
        raise NotImplementedError

    def on_hom(self, f: ModuleHom) -> ModuleHom:
        raise NotImplementedError

    def twomod(self, a: TwoMod) -> TwoMod:
        hit = self._objs.get(id(a))
        if hit is not None and hit[0] is a:
            return hit[1]
        out = TwoMod(self.on_hom(a.d))
        self._objs[id(a)] = (a, out)
        return out

    def onemor(self, f: OneMor) -> OneMor:
        return OneMor(self.twomod(f.source), self.twomod(f.target), self.on_hom(f.f1),
                      self.on_hom(f.f0), check=False)

    def twomor(self, t: TwoMor) -> TwoMor:
        return TwoMor(self.onemor(t.src), self.onemor(t.dst), self.on_hom(t.h), check=False)

    def __call__(self, x):
        if isinstance(x, TwoMod):
            return self.twomod(x)
        if isinstance(x, OneMor):
            return self.onemor(x)
        if isinstance(x, TwoMor):
            return self.twomor(x)
        if isinstance(x, (CochainComplex, ComplexMor, CochainHomotopy)):
            return apply(self, x)
        if isinstance(x, FpModule):
            return self.on_module(x)
        if isinstance(x, ModuleHom):
            return self.on_hom(x)
        raise InputError(f"cannot apply {self.name} to {type(x).__name__}")

    def __repr__(self):
        return self.name


class Identity(AdditiveTwoFunctor):
    name = "Identity"

    def on_module(self, m):
        return m

    def on_hom(self, f):
        return f

    def twomod(self, a):
        return a


class HomFrom(AdditiveTwoFunctor):
    """``Hom(M, -)``: a sum of ``e``-torsion submodules, one per cyclic factor of ``M``."""

    def __init__(self, m: FpModule):
        super().__init__()
        self.source = m
        self.factors = [e for e in m.canonical_form()]
        self.name = f"HomFrom({m})"
        self._mods: dict = {}

    def _parts(self, x: FpModule):
        k = _key(x)
        hit = self._mods.get(k)
        if hit is not None:
            return hit
        parts = []
        for e in self.factors:
            scal = ModuleHom(x, x, x.ring.reduce(e * eye(x.ngens)), check=False)
            parts.append(hom_kernel(scal))
        total = parts[0][0] if len(parts) == 1 else None
        if total is None:
            rels = block_diag(*[p[0].relations for p in parts]) if parts else zeros(0, 0)
            total = FpModule(x.ring, rels, sum(p[0].ngens for p in parts))
        self._mods[k] = (total, parts)
        return total, parts

    def on_module(self, m):
        return self._parts(m)[0]

    def on_hom(self, f):
        ts, ps = self._parts(f.source)
        tt, pt = self._parts(f.target)
        blocks = []
        for (ks, incs), (kt, inct) in zip(ps, pt):
            g = lift_through(f @ incs, inct)
            if g is None:
                raise ConstructionError("Hom(M, -) failed to restrict a map to torsion parts")
            blocks.append(g.matrix)
        mat = block_diag(*blocks) if blocks else zeros(tt.ngens, ts.ngens)
        return ModuleHom(ts, tt, mat, check=False)


class BaseChange(AdditiveTwoFunctor):
    """``- (x) Z/m`` from ``Z/n`` (or ``Z``) to ``Z/m``; right exact only."""

    def __init__(self, n: Optional[int], m: int):
        super().__init__()
        if n is not None and n % m:
            raise InputError(f"cannot change base from Z/{n} to Z/{m}")
        self.n, self.m = n, m
        self.ring = Zmod(m)
        self.name = f"BaseChange({n}->{m})"

    def target_ring(self, ring):
        return self.ring

    def _check(self, ring: BaseRing):
        if ring.modulus != self.n:
            raise InputError(f"{self.name} applied over {ring}")

    def on_module(self, x):
        self._check(x.ring)
        return FpModule(self.ring, self.ring.reduce(x.relations), x.ngens)

    def on_hom(self, f):
        return ModuleHom(self.on_module(f.source), self.on_module(f.target),
                         self.ring.reduce(f.matrix), check=False)


# ------------------------------------------------------------- application

def apply(t: AdditiveTwoFunctor, x):
    """``T`` on a complex, a morphism of complexes or a homotopy."""
    if isinstance(x, CochainComplex):
        return CochainComplex([t.twomod(a) for a in x.entries], [t.onemor(l) for l in x.diffs],
                              [t.twomor(a) for a in x.alphas], offset=x.offset)
    if isinstance(x, ComplexMor):
        return _apply_mor(t, x, apply(t, x.source), apply(t, x.target))
    if isinstance(x, CochainHomotopy):
        s, d = x.src, x.dst
        ts, tt = apply(t, s.source), apply(t, s.target)
        fs, fd = _apply_mor(t, s, ts, tt), _apply_mor(t, d, ts, tt)
        hm = [_retype(t.onemor(x.hmap(k)), ts.obj(k), tt.obj(k - 1)) for k in range(x.length + 1)]
        out = CochainHomotopy(fs, fd, hm, upto=x.upto)
        out.taus = [TwoMor(fs.map(k), out.target_of_tau(k), t.on_hom(x.tau(k).h), check=False)
                    for k in range(x.length)]
        return out
    raise InputError(f"apply: unsupported {type(x).__name__}")


def _retype(f: OneMor, s: TwoMod, t: TwoMod) -> OneMor:
    return OneMor(s, t, f.f1, f.f0, check=False)


def _apply_mor(t: AdditiveTwoFunctor, f: ComplexMor, ts: CochainComplex,
               tt: CochainComplex) -> ComplexMor:
    maps = [_retype(t.onemor(f.map(n)), ts.obj(n), tt.obj(n)) for n in range(f.length)]
    out = ComplexMor(ts, tt, maps)
    out.lambdas = [TwoMor(out.map(n + 1) @ ts.diff(n), tt.diff(n) @ out.map(n),
                          t.on_hom(f.lam(n).h), check=False) for n in range(out.length)]
    return out


def product_comparison(t: AdditiveTwoFunctor, a: TwoMod, b: TwoMod) -> OneMor:
    """``T(A + B) -> T(A) + T(B)`` given by ``(T p1, T p2)``."""
    bp = biproduct(a, b)
    tp = biproduct(t.twomod(a), t.twomod(b))
    src = t.twomod(bp.obj)
    return (tp.i1 @ _retype(t.onemor(bp.p1), src, tp.i1.source)
            + tp.i2 @ _retype(t.onemor(bp.p2), src, tp.i2.source))


def check_product_preservation(t: AdditiveTwoFunctor, a: TwoMod, b: TwoMod) -> bool:
    return is_equivalence(product_comparison(t, a, b))


# --------------------------------------------------------- derived functors

@dataclass
class DerivedResult:
    i: int
    value: CohomologyResult
    convention: str
    functor: str = ""

    @property
    def pis(self):
        return self.value.pis


def _same_twomod(x: TwoMod, y: TwoMod) -> bool:
    return (x.deg1.same_presentation(y.deg1) and x.deg0.same_presentation(y.deg0)
            and x.d.equals(y.d))


def _needed_length(i: int) -> int:
    # H^i reads I_i, I_{i+1} and the differential into I_{i+2}
    return i + 3


def derived_functor(t: AdditiveTwoFunctor, a: TwoMod, res: Resolution, i: int,
                    convention: str = "plain", check: bool = True) -> DerivedResult:
    if convention not in CONVENTIONS:
        raise InputError(f"unknown convention {convention!r}")
    if i < 0:
        raise InputError("derived functor degree must be non-negative")
    if res.A is not a and not _same_twomod(res.A, a):
        raise InputError("resolution is not a resolution of the given 2-module")
    if check:
        rep = validate_resolution(res)
        if not rep.ok:
            raise PreconditionError("invalid resolution: " + str(rep))
    if res.length < _needed_length(i):
        raise InputError(f"resolution of length {res.length} is too short for degree {i}; "
                         f"need {_needed_length(i)}")
    if convention == "plain":
        value = cohomology(apply(t, res.complex), i)
    else:
        value = cohomology(apply(t, res.augmented), i + 1)
    return DerivedResult(i, value, convention, t.name)


# ------------------------------------------------ independence of resolution

def _homotopy_on_injectives(h: CochainHomotopy, src: ComplexMor, dst: ComplexMor) -> CochainHomotopy:
    """Drop the augmentation entry from a homotopy between augmented lifts."""
    a, b = src.source, src.target
    first = h.hmap(1)
    if not (first.f1.is_zero() and first.f0.is_zero()):
        raise ConstructionError("homotopy reaches into the augmented entry")
    hm = [OneMor.zero(a.obj(0), b.obj(-1))]
    hm += [OneMor(a.obj(k), b.obj(k - 1), h.hmap(k + 1).f1, h.hmap(k + 1).f0, check=False)
           for k in range(1, src.length + 1)]
    out = CochainHomotopy(src, dst, hm, upto=None if h.upto is None else h.upto - 1)
    out.taus = [TwoMor(src.map(k), out.target_of_tau(k), h.tau(k + 1).h, check=False)
                for k in range(src.length)]
    return out


@dataclass
class IndependenceWitness:
    degrees: list
    forward: dict       # i -> H^i(T u): R^iT via res1 -> via res2
    backward: dict      # i -> H^i(T v)
    unit: dict          # i -> TwoMor  H^i(Tv) H^i(Tu) => id
    counit: dict        # i -> TwoMor  H^i(Tu) H^i(Tv) => id
    pis1: dict
    pis2: dict
    report: Report = field(default_factory=Report)

    @property
    def ok(self) -> bool:
        return self.report.ok


def _witness_round_trip(t, l_there, l_back, res, hs, seed, degrees, rep, tag):
    ida = OneMor.identity(res.A)
    comp = ResolutionLift(ida, compose_complex_mor(l_there.lift, l_back.lift), res, res)
    ident = lift_morphism(ida, res, res)
    h = compare_lifts(comp, ident, seed=seed)
    hi = _homotopy_on_injectives(h, comp.on_injectives(), ident.on_injectives())
    th = apply(t, hi)
    rep.extend(check_homotopy(th))
    out = {}
    for i in degrees:
        w = homotopy_witness(th, i, hs[i], hs[i])
        out[i] = w
    return out


def resolution_independence(t: AdditiveTwoFunctor, a: TwoMod, res1: Resolution, res2: Resolution,
                            degrees=None, seed: Optional[int] = None) -> IndependenceWitness:
    for r in (res1, res2):
        rep = validate_resolution(r)
        if not rep.ok:
            raise PreconditionError("invalid resolution: " + str(rep))
    common = min(res1.length, res2.length)
    # lifts only exist between resolutions cut at the same place
    res1, res2 = truncate(res1, common), truncate(res2, common)
    top = common - 3
    degrees = list(range(top + 1)) if degrees is None else list(degrees)
    if degrees and (min(degrees) < 0 or max(degrees) > top):
        raise InputError(f"degrees must lie in 0..{top} for these resolutions")
    ida = OneMor.identity(a)
    u = lift_morphism(ida, res1, res2, seed=seed)
    v = lift_morphism(ida, res2, res1, seed=None if seed is None else seed + 1000)
    t1, t2 = apply(t, res1.complex), apply(t, res2.complex)
    tu = apply(t, u.on_injectives())
    tv = apply(t, v.on_injectives())
    h1 = {i: cohomology(t1, i) for i in degrees}
    h2 = {i: cohomology(t2, i) for i in degrees}
    rep = Report()
    fw = {i: induced_map(tu, i, h1[i], h2[i]) for i in degrees}
    bw = {i: induced_map(tv, i, h2[i], h1[i]) for i in degrees}
    raw1 = _witness_round_trip(t, u, v, res1, h1, seed, degrees, rep, "res1")
    raw2 = _witness_round_trip(t, v, u, res2, h2, seed, degrees, rep, "res2")
    unit, counit = {}, {}
    for i in degrees:
        for name, raw, first, second, store in (("unit", raw1, fw[i], bw[i], unit),
                                                ("counit", raw2, bw[i], fw[i], counit)):
            comp = second @ first
            if not comp.equals(raw[i].src):
                rep.add(f"{name}[{i}]", "composite of induced maps differs from induced composite")
            w = TwoMor(comp, OneMor.identity(comp.source), raw[i].h, check=False)
            bad = w.violations()
            if bad:
                rep.add(f"{name}[{i}]", "; ".join(bad))
            store[i] = w
    return IndependenceWitness(degrees, fw, bw, unit, counit,
                               {i: h1[i].pis for i in degrees}, {i: h2[i].pis for i in degrees}, rep)


# ---------------------------------------------------------- left exactness

@dataclass
class LeftExactnessReport:
    functor: str
    results: list  # per sequence: dict(first=cert, second=cert)

    @property
    def ok(self) -> bool:
        return all(r["first"].verdict and r["second"].verdict for r in self.results)


def short_sequence_complex(f: OneMor, phi: TwoMor, g: OneMor) -> CochainComplex:
    return CochainComplex([f.source, f.target, g.target], [f, g], [phi])


def check_left_relative_exact(t: AdditiveTwoFunctor, sequences) -> LeftExactnessReport:
    """For each ``(F, phi, G)`` relative 2-exact at all three points, test the
    image ``0 -> TA -> TB -> TC`` at ``TA`` and ``TB``."""
    results = []
    for idx, (f, phi, g) in enumerate(sequences):
        c = short_sequence_complex(f, phi, g)
        rep = validate_complex(c)
        if not rep.ok:
            raise InputError(f"sequence {idx}: not a complex: {rep}")
        bad = [n for n in range(3) if not exactness_at(c, n, check=False).verdict]
        # exactness at C also requires G to be essentially surjective
        if not is_essentially_surjective(g):
            bad.append(3)
        if bad:
            raise InputError(f"sequence {idx}: not relative 2-exact at points {bad}")
        tc = apply(t, c)
        results.append({"first": exactness_at(tc, 0, check=False),
                        "second": exactness_at(tc, 1, check=False)})
    return LeftExactnessReport(t.name, results)


# ------------------------------------------------------------ long sequence

@dataclass
class LongSequencePoint:
    label: str
    certificate: ExactnessCertificate


@dataclass
class LongSequence:
    depth: int
    values: dict            # ("A"|"B"|"C", i) -> CohomologyResult
    incl: dict              # i -> OneMor R^iT(A) -> R^iT(B)
    proj: dict              # i -> OneMor R^iT(B) -> R^iT(C)
    connecting: dict        # i -> OneMor R^iT(C) -> R^{i+1}T(A)
    cells: dict             # (kind, i) -> TwoMor
    points: list
    horseshoe_result: object = None
    comparisons: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(p.certificate.verdict for p in self.points)


def _pair_matrix(top_left, top_right, bot_left, bot_right):
    return vstack(hstack(top_left, top_right), hstack(bot_left, bot_right))


def _connecting(i, hz, hx, xt, yt, zt, sec, ret, lam):
    """Chain-level chase ``R^iT(C) -> R^{i+1}T(A)`` through the split degrees.

    ``sec[n]: Z_n -> Y_n`` and ``ret[n]: Y_n -> X_n`` split the degreewise
    sequences; ``lam(n)`` is the inclusion's 2-morphism at ``n``.
    """
    m = yt.diff

    def mat(f):
        return f.matrix

    # objects: (x, a) -> (x', a')
    xp = hstack(mat(ret[i + 1].f0) @ mat(m(i).f0) @ mat(sec[i].f0),
                mat(ret[i + 1].f0) @ mat(yt.obj(i + 1).d) @ mat(sec[i + 1].f1))
    ap = hstack(mat(ret[i + 2].f1) @ mat(yt.alpha(i).h) @ mat(sec[i].f0),
                -mat(ret[i + 2].f1) @ mat(m(i + 1).f1) @ mat(sec[i + 1].f1))
    ap = ap + mat(ret[i + 2].f1) @ mat(lam(i + 1)) @ xp
    obj = vstack(xp, ap)
    pair = ModuleHom(hz.H.deg0, hx.incl.target, obj @ hz.incl.matrix, check=False)
    d0 = lift_through(pair, hx.incl)
    if d0 is None:
        raise ConstructionError(f"connecting map {i}: image is not a cohomology object")
    # morphisms: [y, c] -> [y', c']
    yp = hstack(mat(ret[i].f0) @ mat(m(i - 1).f0) @ mat(sec[i - 1].f0),
                mat(ret[i].f0) @ mat(yt.obj(i).d) @ mat(sec[i].f1))
    cp = hstack(mat(ret[i + 1].f1) @ mat(yt.alpha(i - 1).h) @ mat(sec[i - 1].f0),
                -mat(ret[i + 1].f1) @ mat(m(i).f1) @ mat(sec[i].f1))
    cp = cp + mat(ret[i + 1].f1) @ mat(lam(i)) @ yp
    d1 = ModuleHom(hz.H.deg1, hx.H.deg1, vstack(yp, cp))
    return OneMor(hz.H, hx.H, d1, d0)


def long_sequence(t: AdditiveTwoFunctor, f: OneMor, phi: TwoMor, g: OneMor, res_a: Resolution,
                  res_c: Resolution, depth: int = 3, seed: Optional[int] = None) -> LongSequence:
    if depth < 0:
        raise InputError("depth must be non-negative")
    need = depth + 5
    for name, r in (("A", res_a), ("C", res_c)):
        if r.length < need:
            raise InputError(f"resolution of {name} has length {r.length}; depth {depth} needs {need}")
    try:
        hs = horseshoe(f, phi, g, res_a, res_c, seed=seed)
    except (ConstructionError, PreconditionError) as exc:
        raise type(exc)(f"horseshoe: {exc}") from exc
    rep = validate_resolution(hs.res_b)
    if not rep.ok:
        raise ConstructionError(f"horseshoe resolution invalid: {rep}")
    res_b = hs.res_b
    inc = ResolutionLift(f, hs.inclusion, res_a, res_b).on_injectives()
    prj = ResolutionLift(g, hs.projection, res_b, res_c).on_injectives()
    xt, yt, zt = apply(t, res_a.complex), apply(t, res_b.complex), apply(t, res_c.complex)
    tinc = _apply_mor(t, inc, xt, yt)
    tprj = _apply_mor(t, prj, yt, zt)
    for name, mor in (("inclusion", tinc), ("projection", tprj)):
        r = validate_complex_mor(mor)
        if not r.ok:
            raise ConstructionError(f"T of the horseshoe {name} is invalid: {r}")
    # degreewise splittings of the T-images of the product entries
    sec, ret, comparisons = {}, {}, []
    top = depth + 3
    for n in range(-1, top + 1):
        xa, zc = res_a.complex.obj(n), res_c.complex.obj(n)
        bp = biproduct(xa, zc)
        yb = res_b.complex.obj(n)
        if (bp.obj.deg1.ngens, bp.obj.deg0.ngens) != (yb.deg1.ngens, yb.deg0.ngens):
            raise ConstructionError(f"horseshoe entry {n} is not the product of its neighbours")
        sec[n] = _retype(t.onemor(bp.i2), zt.obj(n), yt.obj(n))
        ret[n] = _retype(t.onemor(bp.p1), yt.obj(n), xt.obj(n))
        if 0 <= n <= depth + 1:
            comparisons.append(is_equivalence(product_comparison(t, xa, zc)))

    def lam(n):
        return tinc.lam(n).h

    values, incl, proj, conn, cells = {}, {}, {}, {}, {}
    for i in range(depth + 2):
        values["A", i] = cohomology(xt, i)
        values["B", i] = cohomology(yt, i)
        values["C", i] = cohomology(zt, i)
    for i in range(depth + 2):
        incl[i] = induced_map(tinc, i, values["A", i], values["B", i])
        proj[i] = induced_map(tprj, i, values["B", i], values["C", i])
    for i in range(depth + 1):
        try:
            conn[i] = _connecting(i, values["C", i], values["A", i + 1], xt, yt, zt, sec, ret, lam)
        except (ConstructionError, InputError) as exc:
            raise ConstructionError(f"connecting map {i}: {exc}") from exc
    points = []
    ra0 = values["A", 0].H
    into = OneMor.zero(TwoMod.zero(ra0.ring), ra0)
    cell0 = TwoMor.to_zero(incl[0] @ into, ModuleHom.zero(into.source.deg0, incl[0].target.deg1))
    points.append(LongSequencePoint("R0T(A)", check_two_exact(into, cell0, incl[0])))
    for i in range(depth + 1):
        hb, hc, ha1 = values["B", i], values["C", i], values["A", i + 1]
        zero_cell = TwoMor.to_zero(proj[i] @ incl[i], ModuleHom.zero(incl[i].source.deg0,
                                                                   proj[i].target.deg1))
        cells["pi_iota", i] = zero_cell
        points.append(LongSequencePoint(f"R{i}T(B)", check_two_exact(incl[i], zero_cell, proj[i])))
        # delta o H(p) => 0 : (x, a) -> [-r x, r a + r h_lam r x]
        yi = hb.incl.matrix
        n1a = yt.obj(i + 1).deg1.ngens
        rx = ret[i].f0.matrix
        ra = ret[i + 1].f1.matrix
        w = vstack(hstack(-rx, zeros(rx.shape[0], n1a)),
                   hstack(ra @ lam(i).matrix @ rx, ra))
        cell = TwoMor(conn[i] @ proj[i], OneMor.zero(hb.H, ha1.H),
                      ModuleHom(hb.H.deg0, ha1.H.deg1, w @ yi), check=False)
        bad = cell.violations()
        if bad:
            raise ConstructionError(f"2-cell delta o p at {i}: " + "; ".join(bad))
        cells["delta_pi", i] = cell
        points.append(LongSequencePoint(f"R{i}T(C)", check_two_exact(proj[i], cell, conn[i])))
        # H(i) o delta => 0 : (x, a) -> [s x, -s a]
        hb1 = values["B", i + 1]
        sx, sa = sec[i].f0.matrix, sec[i + 1].f1.matrix
        w2 = vstack(hstack(sx, zeros(sx.shape[0], sa.shape[1])),
                    hstack(zeros(sa.shape[0], sx.shape[1]), -sa))
        cell2 = TwoMor(incl[i + 1] @ conn[i], OneMor.zero(hc.H, hb1.H),
                       ModuleHom(hc.H.deg0, hb1.H.deg1, w2 @ hc.incl.matrix), check=False)
        bad = cell2.violations()
        if bad:
            raise ConstructionError(f"2-cell iota o delta at {i}: " + "; ".join(bad))
        cells["iota_delta", i] = cell2
        points.append(LongSequencePoint(f"R{i + 1}T(A)", check_two_exact(conn[i], cell2, incl[i + 1])))
    return LongSequence(depth, values, incl, proj, conn, cells, points, hs, comparisons)

