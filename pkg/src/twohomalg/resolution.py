"""Injective resolutions: construction, validation, lifting, comparison, horseshoe.

A resolution of ``A`` is stored as the augmented complex ``A -> I_0 -> I_1
-> ...``.  All inductive constructions run on the left-padded augmented
complex so that the first stage needs no special case: with two zero entries
in front, ``D_j`` always factors through ``Coker(a_{j-2}, D_{j-1})`` via the
2-morphism ``a_{j-1}``, and relative 2-exactness at ``X_j`` says that the
factored map is faithful.  Extension problems along faithful maps into the
injective entries are solved with :class:`HomSystem`.

Validation covers ``A`` and every ``I_k`` whose two successors are present:
a finite resolution says nothing about exactness at its last two entries.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from .cochain import (CochainComplex, CochainHomotopy, ComplexMor, Report, check_homotopy,
                      pad_left, validate_complex, validate_complex_mor)
from .cohomology import cohomology
from .errors import ConstructionError, InputError, PreconditionError
from .exactness import ExactnessCertificate, certificate_from_cohomology, check_two_exact
from .intmod import BaseRing, FpModule, ModuleHom, eye, hstack, kernel_basis, vstack, zeros
from .linsys import HomSystem
from .relkc import RelCokernelData, factor_through_cokernel, relative_cokernel
from .twomod import (OneMor, TwoMod, TwoMor, biproduct, is_essentially_surjective,
                     is_faithful)


# ------------------------------------------------------- extension solving

def solve_extension(f: OneMor, g: OneMor, seed: Optional[int] = None,
                    strict: bool = False) -> Optional[tuple[OneMor, TwoMor]]:
    """``G': B -> I`` and ``e: G' F => G`` for ``F: A -> B``, ``G: A -> I``.

    With ``strict`` the 2-morphism is forced to vanish.
    """
    a, b, i = f.source, f.target, g.target
    sys = HomSystem(a.ring)
    k1 = sys.var(b.deg1, i.deg1)
    k0 = sys.var(b.deg0, i.deg0)
    sys.equation([(eye(i.deg0.ngens), k0, b.d.matrix), (-i.d.matrix, k1, eye(b.deg1.ngens))],
                 zeros(i.deg0.ngens, b.deg1.ngens), i.deg0)
    if strict:
        sys.equation([(eye(i.deg0.ngens), k0, f.f0.matrix)], g.f0.matrix, i.deg0)
        sys.equation([(eye(i.deg1.ngens), k1, f.f1.matrix)], g.f1.matrix, i.deg1)
    else:
        kh = sys.var(a.deg0, i.deg1)
        # d h + g'0 f0 = g0 ; h d + g'1 f1 = g1
        sys.equation([(i.d.matrix, kh, eye(a.deg0.ngens)), (eye(i.deg0.ngens), k0, f.f0.matrix)],
                      g.f0.matrix, i.deg0)
        sys.equation([(eye(i.deg1.ngens), kh, a.d.matrix), (eye(i.deg1.ngens), k1, f.f1.matrix)],
                      g.f1.matrix, i.deg1)
    sol = sys.solve(seed=seed)
    if sol is None:
        return None
    ext = OneMor(b, i, sol[0], sol[1])
    h = ModuleHom.zero(a.deg0, i.deg1) if strict else sol[2]
    return ext, TwoMor(ext @ f, g, h)


# --------------------------------------------------------- injectivity

@dataclass
class InjectivityCertificate:
    verdict: bool
    cases: int
    solutions: list = field(default_factory=list)
    counterexample: Optional[tuple] = None

    def __bool__(self):
        return self.verdict


def _cyclic_twomods(ring: BaseRing, max_gens: int = 1) -> list[TwoMod]:
    n = ring.modulus
    if n is None:
        raise InputError("exhaustive test families need a finite ring")
    facs = [d for d in range(2, n + 1) if n % d == 0]
    mods = []
    for k in range(max_gens + 1):
        for combo in itertools.combinations_with_replacement(facs, k):
            mods.append(FpModule.from_factors(ring, list(combo)))
    out = []
    for m1, m0 in itertools.product(mods, mods):
        for d in hom_elements(m1, m0):
            out.append(TwoMod(d))
    return out


def hom_elements(s: FpModule, t: FpModule):
    """Every homomorphism ``s -> t`` (finite modules)."""
    sys = HomSystem(s.ring)
    sys.var(s, t)
    big, _ = sys._assemble()
    basis = kernel_basis(big, s.ring) if big.shape[0] else np.array(
        [[1 if i == j else 0 for j in range(big.shape[1])] for i in range(big.shape[1])],
        dtype=object).reshape(big.shape[1], big.shape[1])
    nv = s.ngens * t.ngens
    seen = set()
    n = s.ring.modulus
    gens = [basis[:nv, j] for j in range(basis.shape[1])]
    orders = [n] * len(gens)
    for coeffs in itertools.product(*[range(o) for o in orders]):
        v = np.zeros(nv, dtype=object)
        for c, g in zip(coeffs, gens):
            v = v + c * g
        mat = (v % n).reshape(s.ngens, t.ngens).T if nv else zeros(t.ngens, s.ngens)
        hom = ModuleHom(s, t, mat, check=False)
        key = tuple(t.coords(hom.matrix[:, j]) for j in range(s.ngens))
        if key in seen:
            continue
        seen.add(key)
        yield hom


def onemor_elements(a: TwoMod, b: TwoMod):
    for f1 in hom_elements(a.deg1, b.deg1):
        for f0 in hom_elements(a.deg0, b.deg0):
            m = OneMor(a, b, f1, f0, check=False)
            if m.chain_defect().is_zero():
                yield m


def onemor_generators(a: TwoMod, b: TwoMod) -> list[OneMor]:
    """Generators of the group of chain maps ``a -> b``."""
    sys = HomSystem(a.ring)
    k1 = sys.var(a.deg1, b.deg1)
    k0 = sys.var(a.deg0, b.deg0)
    sys.equation([(eye(b.deg0.ngens), k0, a.d.matrix), (-b.d.matrix, k1, eye(a.deg1.ngens))],
                 zeros(b.deg0.ngens, a.deg1.ngens), b.deg0)
    big, _ = sys._assemble()
    n1 = a.deg1.ngens * b.deg1.ngens
    n0 = a.deg0.ngens * b.deg0.ngens
    basis = kernel_basis(big, a.ring)
    out = []
    for j in range(basis.shape[1]):
        v = basis[:, j]
        m1 = v[:n1].reshape(a.deg1.ngens, b.deg1.ngens).T if n1 else zeros(b.deg1.ngens, a.deg1.ngens)
        m0 = v[n1:n1 + n0].reshape(a.deg0.ngens, b.deg0.ngens).T if n0 else zeros(b.deg0.ngens, a.deg0.ngens)
        g = OneMor(a, b, ModuleHom(a.deg1, b.deg1, m1, check=False),
                   ModuleHom(a.deg0, b.deg0, m0, check=False), check=False)
        if not (g.f1.is_zero() and g.f0.is_zero()):
            out.append(g)
    return out


_FAMILY_CACHE: dict = {}


def default_family(ring: BaseRing, max_gens: int = 1) -> list[OneMor]:
    """All faithful chain maps between 2-modules with at most ``max_gens``
    cyclic generators per degree."""
    key = (ring, max_gens)
    if key not in _FAMILY_CACHE:
        objs = _cyclic_twomods(ring, max_gens)
        fam = []
        for a, b in itertools.product(objs, objs):
            if a.pi().pi1.is_trivial() and a.deg0.ngens == 0 and a.deg1.ngens == 0:
                continue
            for f in onemor_elements(a, b):
                if is_faithful(f):
                    fam.append(f)
        _FAMILY_CACHE[key] = fam
    return _FAMILY_CACHE[key]


def check_injective(i: TwoMod, family: Optional[list] = None,
                    seed: Optional[int] = None) -> InjectivityCertificate:
    """Decide every extension problem ``(F: A -> B faithful, G: A -> I)`` in
    the family.  Each ``F`` is paired with generators of ``Hom(A, I)``: by
    linearity of the extension equations these suffice."""
    family = default_family(i.ring) if family is None else family
    cases, sols = 0, []
    for item in family:
        if isinstance(item, tuple):
            f, gs = item[0], [item[1]]
        else:
            f, gs = item, onemor_generators(item.source, i)
        if not is_faithful(f):
            raise InputError("test family contains a non-faithful morphism")
        for g in gs:
            cases += 1
            res = solve_extension(f, g, seed=seed)
            if res is None:
                return InjectivityCertificate(False, cases, sols, (f, g))
            sols.append(res)
    return InjectivityCertificate(True, cases, sols)


# --------------------------------------------------------- embedding oracle

@dataclass
class EmbeddingOracle:
    """Faithful embeddings into operationally injective 2-modules.

    ``strategy="full"`` embeds all of ``A1`` into ``J = (Z/n)^k`` (placed
    in degree 1), ``strategy="hull"`` embeds only ``ker d`` and extends to
    ``A1`` using self-injectivity of ``Z/n``.  ``spare`` adds that many unused
    ``Z/n`` summands to every injective, giving larger but valid resolutions.
    """

    strategy: str = "full"
    spare: int = 0

    def __call__(self, a: TwoMod) -> tuple[TwoMod, OneMor]:
        ring = a.ring
        n = ring.modulus
        if n is None:
            raise ConstructionError("the default embedding oracle needs a ring Z/n")
        if self.strategy == "full":
            facs, to_c, _ = a.deg1._canon
            j = FpModule.from_factors(ring, [n] * len(facs))
            mat = zeros(len(facs), a.deg1.ngens)
            for r, d in enumerate(facs):
                mat[r, :] = (n // d) * to_c[r, :]
            f1 = ModuleHom(a.deg1, j, mat)
        elif self.strategy == "hull":
            k, inc = a._pi1
            facs = k.canonical_form()
            j = FpModule.from_factors(ring, [n] * len(facs))
            emb = ModuleHom(k, j, np.diag([n // d for d in facs]).astype(object) if facs else zeros(0, 0))
            sys = HomSystem(ring)
            x = sys.var(a.deg1, j)
            sys.equation([(eye(j.ngens), x, inc.matrix)], emb.matrix, j)
            sol = sys.solve()
            if sol is None:
                raise ConstructionError("hull oracle: extension to A1 failed")
            f1 = sol[0]
        else:
            raise InputError(f"unknown embedding strategy {self.strategy!r}")
        if self.spare:
            big = FpModule.from_factors(ring, [n] * (j.ngens + self.spare))
            f1 = ModuleHom(a.deg1, big, vstack(f1.matrix, zeros(self.spare, a.deg1.ngens)))
            j = big
        i = TwoMod.codiscrete(j)
        f = OneMor(a, i, f1, ModuleHom.zero(a.deg0, i.deg0))
        if not is_faithful(f):
            raise ConstructionError("embedding oracle produced a non-faithful map")
        return i, f


# ------------------------------------------------------------- resolutions

@dataclass
class Resolution:
    A: TwoMod
    augmented: CochainComplex
    injectivity_certs: list = field(default_factory=list)

    @property
    def aug(self) -> OneMor:
        return self.augmented.diff(0)

    @property
    def length(self) -> int:
        """Number of injective entries."""
        return self.augmented.length - 1

    @property
    def complex(self) -> CochainComplex:
        c = self.augmented
        return CochainComplex(c.entries[1:], c.diffs[1:], c.alphas[1:])


def build_resolution(a: TwoMod, oracle: Optional[Callable] = None, length: int = 4,
                     certify: bool = False) -> Resolution:
    """``length`` injectives ``I_0 .. I_{length-1}`` after ``A``."""
    if length < 1:
        raise InputError("resolution length must be at least 1")
    oracle = oracle or EmbeddingOracle()
    try:
        i0, aug = oracle(a)
    except ConstructionError as exc:
        raise ConstructionError(f"stage 0: {exc}") from exc
    entries, diffs, alphas = [a, i0], [aug], []
    z = TwoMod.zero(a.ring)
    prev_f, prev_alpha = OneMor.zero(z, a), None
    for stage in range(1, length):
        d_last = diffs[-1]
        phi = prev_alpha or TwoMor.to_zero(d_last @ prev_f, ModuleHom.zero(prev_f.source.deg0,
                                                                          d_last.target.deg1))
        cd = relative_cokernel(prev_f, d_last, phi)
        try:
            nxt, emb = oracle(cd.Q)
        except ConstructionError as exc:
            raise ConstructionError(f"stage {stage}: {exc}") from exc
        d_new = emb @ cd.p
        alpha = TwoMor.to_zero(d_new @ d_last, emb.f1 @ cd.piw.h)
        entries.append(nxt)
        diffs.append(d_new)
        alphas.append(alpha)
        prev_f, prev_alpha = d_last, alpha
    res = Resolution(a, CochainComplex(entries, diffs, alphas))
    if certify:
        res.injectivity_certs = [check_injective(e) for e in entries[1:]]
    return res


def truncate(res: Resolution, length: int) -> Resolution:
    """The first ``length`` injectives of ``res``."""
    if not 1 <= length <= res.length:
        raise InputError(f"cannot truncate a length-{res.length} resolution to {length}")
    c = res.augmented
    k = length + 1
    return Resolution(res.A, CochainComplex(c.entries[:k], c.diffs[:k - 1], c.alphas[:k - 2]),
                      res.injectivity_certs[:length])


def resolution_from_complex(a: TwoMod, injectives: CochainComplex, aug: OneMor,
                            alpha0: Optional[TwoMor] = None) -> Resolution:
    """Assemble a resolution from an augmentation and a complex of injectives."""
    alphas = [alpha0 or TwoMor.to_zero(injectives.diff(0) @ aug,
                                       ModuleHom.zero(a.deg0, injectives.obj(1).deg1))]
    aug_c = CochainComplex([a] + injectives.entries, [aug] + injectives.diffs,
                           (alphas + injectives.alphas)[: max(injectives.length - 1, 0)])
    return Resolution(a, aug_c)


def validate_resolution(res: Resolution, check_injectives: bool = False,
                        family: Optional[list] = None) -> Report:
    rep = validate_complex(res.augmented)
    if not rep.ok:
        return rep
    if not is_faithful(res.aug):
        rep.add("aug", "augmentation is not faithful")
    for k in range(res.augmented.length - 2):
        cert = certificate_from_cohomology(cohomology(res.augmented, k), k)
        if not cert.verdict:
            where = "A" if k == 0 else f"I[{k - 1}]"
            rep.add(f"exact[{where}]", f"local cohomology {cert.evidence['pi1']}, {cert.evidence['pi0']}")
    if check_injectives:
        for k, e in enumerate(res.augmented.entries[1:]):
            cert = check_injective(e, family)
            if not cert.verdict:
                rep.add(f"injective[I{k}]", "extension problem without solution")
    return rep


def exactness_certificates(res: Resolution) -> list[ExactnessCertificate]:
    return [certificate_from_cohomology(cohomology(res.augmented, k), k)
            for k in range(res.augmented.length - 2)]


# ----------------------------------------------------------------- lifting

def _factored(p: CochainComplex, i: int) -> tuple[RelCokernelData, OneMor]:
    """``Q = Coker(a_{i-2}, D_{i-1})`` and ``D_i`` factored through it."""
    cd = relative_cokernel(p.diff(i - 2), p.diff(i - 1), p.alpha(i - 2))
    dbar, _ = factor_through_cokernel(cd, p.diff(i), p.alpha(i - 1))
    return cd, dbar


def induced_on_cokernel(cs: RelCokernelData, ct: RelCokernelData, f_prev: OneMor, f_cur: OneMor,
                        h_lam: ModuleHom) -> OneMor:
    """``[y, c] |-> [f_prev y, f_cur c + h_lam y]`` between relative cokernels."""
    m = vstack(hstack(f_prev.f0.matrix, zeros(f_prev.f0.matrix.shape[0], f_cur.f1.matrix.shape[1])),
               hstack(h_lam.matrix, f_cur.f1.matrix))
    return OneMor(cs.Q, ct.Q, ModuleHom(cs.Q.deg1, ct.Q.deg1, m), f_cur.f0)


@dataclass
class ResolutionLift:
    F: OneMor
    lift: ComplexMor  # between augmented complexes, lift.map(0) == F
    res_a: Resolution
    res_b: Resolution

    @property
    def epsilons(self) -> list[TwoMor]:
        return self.lift.lambdas

    def on_injectives(self) -> ComplexMor:
        s, t = self.res_a.complex, self.res_b.complex
        maps = [self.lift.map(n + 1) for n in range(max(s.length, t.length))]
        out = ComplexMor(s, t, maps)
        out.lambdas = [TwoMor(out.map(n + 1) @ s.diff(n), t.diff(n) @ out.map(n),
                              self.lift.lam(n + 1).h, check=False) for n in range(out.length)]
        return out


def _unpad_mor(fp: ComplexMor, s: CochainComplex, t: CochainComplex) -> ComplexMor:
    length = max(s.length, t.length)
    maps = [OneMor(s.obj(n), t.obj(n), fp.map(n + 2).f1, fp.map(n + 2).f0, check=False)
            for n in range(length)]
    out = ComplexMor(s, t, maps)
    out.lambdas = [TwoMor(out.map(n + 1) @ s.diff(n), t.diff(n) @ out.map(n), fp.lam(n + 2).h,
                          check=False) for n in range(length)]
    return out


def lift_morphism(f: OneMor, res_a: Resolution, res_b: Resolution,
                  seed: Optional[int] = None) -> ResolutionLift:
    xs, ys = res_a.augmented, res_b.augmented
    px, py = pad_left(xs), pad_left(ys)
    if xs.length < ys.length:
        raise InputError("cannot lift from a shorter resolution into a longer one; truncate first")
    length = max(xs.length, ys.length)
    if res_a is res_b and f.equals(OneMor.identity(f.source)):
        return ResolutionLift(f, ComplexMor.identity(xs), res_a, res_b)
    z = TwoMod.zero(f.source.ring)
    maps = [OneMor.zero(z, z), OneMor.zero(z, z), f]
    lams = [TwoMor(OneMor.zero(px.obj(0), py.obj(1)), OneMor.zero(px.obj(0), py.obj(1)),
                   ModuleHom.zero(px.obj(0).deg0, py.obj(1).deg1), check=False),
            TwoMor(f @ px.diff(1), py.diff(1) @ maps[1], ModuleHom.zero(px.obj(1).deg0, py.obj(2).deg1),
                   check=False)]
    for i in range(2, length + 1):
        tgt = py.obj(i + 1)
        cx, dbar_x = _factored(px, i)
        cy, dbar_y = _factored(py, i)
        fbar = induced_on_cokernel(cx, cy, maps[i - 1], maps[i], lams[i - 1].h)
        sol = solve_extension(dbar_x, dbar_y @ fbar, seed=None if seed is None else seed + i)
        if sol is None:
            raise ConstructionError(f"lift stage {i - 2}: extension problem has no solution")
        nxt, eb = sol
        nxt = OneMor(px.obj(i + 1), tgt, nxt.f1, nxt.f0, check=False)
        maps.append(nxt)
        lams.append(TwoMor(nxt @ px.diff(i), py.diff(i) @ maps[i], eb.h))
    fp = ComplexMor(px, py, maps[: length + 2])
    fp.lambdas = lams[: length + 2]
    lift = _unpad_mor(fp, xs, ys)
    rep = validate_complex_mor(lift)
    if not rep.ok:
        raise ConstructionError("lift failed validation: " + str(rep))
    return ResolutionLift(f, lift, res_a, res_b)


def difference_morphism(f: OneMor, g: OneMor, coker: RelCokernelData, h_psi: ModuleHom,
                        correction: Optional[OneMor] = None) -> OneMor:
    """``f - g - correction`` factored through a relative cokernel.

    ``h_psi`` trivialises ``(f - g - correction) o G`` where ``G`` is the
    cokernel's map; the result sends ``[y, c]`` to ``(f - g - corr)_1 c + h_psi y``.
    """
    dif = f - g - correction if correction is not None else f - g
    psi = TwoMor.to_zero(dif @ coker.G, h_psi)
    out, _ = factor_through_cokernel(coker, dif, psi)
    return out


def compare_lifts(l1: ResolutionLift, l2: ResolutionLift,
                  seed: Optional[int] = None) -> CochainHomotopy:
    """Homotopy between two lifts of the same morphism."""
    if not l1.F.equals(l2.F):
        raise InputError("lifts of different morphisms")
    f, g = l1.lift, l2.lift
    xs, ys = f.source, f.target
    if g.source.length != xs.length or g.target.length != ys.length:
        raise InputError("lifts between different resolutions")
    px, py = pad_left(xs), pad_left(ys)
    length = max(xs.length, ys.length)

    def fm(n):
        return f.map(n - 2)

    def gm(n):
        return g.map(n - 2)

    def fl(n):
        return f.lam(n - 2).h

    def gl(n):
        return g.lam(n - 2).h

    hmaps = {i: OneMor.zero(px.obj(i), py.obj(i - 1)) for i in range(4)}
    htau = {i: ModuleHom.zero(px.obj(i).deg0, py.obj(i).deg1) for i in range(3)}
    # stage k (padded) needs D_k factored through a faithful map into X_{k+1}
    for k in range(3, length + 1):
        cx, dbar = _factored(px, k)
        corr = py.diff(k - 1) @ hmaps[k]
        h_psi = (fl(k - 1) - gl(k - 1) + py.diff(k - 1).f1 @ htau[k - 1]
                 + py.alpha(k - 2).h @ hmaps[k - 1].f0)
        dif_bar = difference_morphism(fm(k), gm(k), cx, h_psi, corr)
        sol = solve_extension(dbar, dif_bar, seed=None if seed is None else seed + k)
        if sol is None:
            raise ConstructionError(f"compare stage {k - 2}: extension problem has no solution")
        hn, eb = sol
        hmaps[k + 1] = OneMor(px.obj(k + 1), py.obj(k), hn.f1, hn.f0, check=False)
        htau[k] = -eb.h

    def hm(i):
        return hmaps.get(i) or OneMor.zero(px.obj(i), py.obj(i - 1))

    def ht(i):
        return htau.get(i) or ModuleHom.zero(px.obj(i).deg0, py.obj(i).deg1)

    hmaps_u = [OneMor(xs.obj(n), ys.obj(n - 1), hm(n + 2).f1, hm(n + 2).f0, check=False)
               for n in range(length + 1)]
    hom = CochainHomotopy(f, g, hmaps_u, upto=length - 2)
    hom.taus = [TwoMor(f.map(n), hom.target_of_tau(n), ht(n + 2), check=False)
                for n in range(length)]
    rep = check_homotopy(hom)
    if not rep.ok:
        raise ConstructionError("comparison homotopy failed validation: " + str(rep))
    return hom


# --------------------------------------------------------------- horseshoe

@dataclass
class HorseshoeResult:
    res_b: Resolution
    inclusion: ComplexMor   # augmented A-resolution -> augmented B-resolution
    projection: ComplexMor  # augmented B-resolution -> augmented C-resolution


def check_extension(f: OneMor, phi: TwoMor, g: OneMor) -> list[str]:
    problems = []
    if not is_faithful(f):
        problems.append("F is not faithful")
    if not is_essentially_surjective(g):
        problems.append("G is not essentially surjective")
    cert = check_two_exact(f, phi, g)
    if not cert.verdict:
        problems.append(f"not 2-exact at the middle: {cert.evidence}")
    return problems


def horseshoe(f: OneMor, phi: TwoMor, g: OneMor, res_a: Resolution, res_c: Resolution,
              seed: Optional[int] = None) -> HorseshoeResult:
    problems = check_extension(f, phi, g)
    if problems:
        raise PreconditionError("not an extension: " + "; ".join(problems))
    xa, xc = res_a.augmented, res_c.augmented
    length = max(xa.length, xc.length)
    b = f.target
    prods = [biproduct(xa.obj(j), xc.obj(j)) for j in range(length + 1)]
    # stage 0
    sol = solve_extension(f, xa.diff(0), seed=seed)
    if sol is None:
        raise ConstructionError("horseshoe stage 0: cannot extend L_0 along F")
    lbar0, e0 = sol
    bp1 = prods[1]
    m0 = bp1.i1 @ lbar0 + bp1.i2 @ (xc.diff(0) @ g)
    entries = [b, bp1.obj]
    diffs = [m0]
    alphas = []
    inc_maps = [f, bp1.i1]
    inc_lams = [TwoMor(bp1.i1 @ xa.diff(0), m0 @ f,
                       -(bp1.i1.f1 @ e0.h) - bp1.i2.f1 @ (xc.diff(0).f1 @ phi.h))]
    proj_maps = [g, bp1.p2]
    # padded views of the three complexes for the cokernel stages
    prev_y = OneMor.zero(TwoMod.zero(b.ring), b)
    prev_gamma = None
    pa, pc = pad_left(xa), pad_left(xc)
    for k in range(1, length - 1):
        ycur = diffs[-1]
        phi_y = prev_gamma or TwoMor.to_zero(ycur @ prev_y, ModuleHom.zero(prev_y.source.deg0,
                                                                          ycur.target.deg1))
        cy = relative_cokernel(prev_y, ycur, phi_y)
        cx, lbar = _factored(pa, k + 2)
        cz, nbar = _factored(pc, k + 2)
        ibar = induced_on_cokernel(cx, cy, inc_maps[k - 1], inc_maps[k], inc_lams[k - 1].h)
        pbar = induced_on_cokernel(cy, cz, proj_maps[k - 1], proj_maps[k],
                                   ModuleHom.zero(entries[k - 1].deg0, xc.obj(k).deg1))
        ext = solve_extension(ibar, lbar, strict=True) or solve_extension(ibar, lbar, seed=seed)
        if ext is None:
            raise ConstructionError(f"horseshoe stage {k}: cannot extend across the cokernel")
        lprime, e = ext
        bp = prods[k + 1]
        mbar = bp.i1 @ lprime + bp.i2 @ (nbar @ pbar)
        m_k = mbar @ cy.p
        gamma = TwoMor.to_zero(m_k @ ycur, mbar.f1 @ cy.piw.h)
        entries.append(bp.obj)
        diffs.append(m_k)
        alphas.append(gamma)
        inc_maps.append(bp.i1)
        inc_lams.append(TwoMor(bp.i1 @ xa.diff(k), m_k @ inc_maps[k], -(bp.i1.f1 @ e.h)))
        proj_maps.append(bp.p2)
        prev_y, prev_gamma = ycur, gamma
    yb = CochainComplex(entries, diffs, alphas)
    res_b = Resolution(b, yb)
    inc = ComplexMor(xa, yb, inc_maps[: max(xa.length, yb.length)])
    inc.lambdas = [TwoMor(inc.map(n + 1) @ xa.diff(n), yb.diff(n) @ inc.map(n),
                          inc_lams[n].h if n < len(inc_lams) else
                          ModuleHom.zero(xa.obj(n).deg0, yb.obj(n + 1).deg1), check=False)
                   for n in range(inc.length)]
    proj = ComplexMor(yb, xc, proj_maps[: max(yb.length, xc.length)])
    for name, m in (("inclusion", inc), ("projection", proj)):
        rep = validate_complex_mor(m)
        if not rep.ok:
            raise ConstructionError(f"horseshoe {name} failed validation: {rep}")
    return HorseshoeResult(res_b, inc, proj)
