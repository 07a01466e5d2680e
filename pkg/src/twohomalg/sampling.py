"""Random instances: modules, 2-modules, complexes, morphisms and homotopies.

Every structure equation is linear in the unknown data once earlier stages are
fixed, so instances are drawn as random points of a solution space via
:class:`HomSystem` rather than by rejection.
"""

from __future__ import annotations

import random
from typing import Optional

from .cochain import CochainComplex, CochainHomotopy, ComplexMor
from .intmod import BaseRing, FpModule, ModuleHom, eye, zeros
from .linsys import HomSystem
from .twomod import OneMor, TwoMod, TwoMor


def _divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


def random_module(rng: random.Random, ring: BaseRing, max_gens: int = 2) -> FpModule:
    n = ring.modulus
    if n is None:
        choices = [0, 2, 3, 1]
    else:
        choices = [d for d in _divisors(n) if d > 1] + [1]
    k = rng.randint(0, max_gens)
    return FpModule.from_factors(ring, [rng.choice(choices) for _ in range(k)])


def _seed(rng: random.Random) -> int:
    return rng.randrange(1 << 30)


def random_hom(rng: random.Random, s: FpModule, t: FpModule) -> ModuleHom:
    sys = HomSystem(s.ring)
    sys.var(s, t)
    return sys.solve(seed=_seed(rng))[0]


def random_twomod(rng: random.Random, ring: BaseRing, max_gens: int = 2) -> TwoMod:
    a1 = random_module(rng, ring, max_gens)
    a0 = random_module(rng, ring, max_gens)
    return TwoMod(random_hom(rng, a1, a0))


def _chain_eq(sys: HomSystem, k1: int, k0: int, a: TwoMod, b: TwoMod):
    """``f0 d_A - d_B f1 = 0``."""
    sys.equation([(eye(b.deg0.ngens), k0, a.d.matrix),
                  (-b.d.matrix, k1, eye(a.deg1.ngens))],
                 zeros(b.deg0.ngens, a.deg1.ngens), b.deg0)


def random_onemor(rng: random.Random, a: TwoMod, b: TwoMod) -> OneMor:
    sys = HomSystem(a.ring)
    k1 = sys.var(a.deg1, b.deg1)
    k0 = sys.var(a.deg0, b.deg0)
    _chain_eq(sys, k1, k0, a, b)
    f1, f0 = sys.solve(seed=_seed(rng))
    return OneMor(a, b, f1, f0)


def random_complex(rng: random.Random, ring: BaseRing, length: int, max_gens: int = 2,
                   entries: Optional[list] = None) -> CochainComplex:
    """Random complex; each stage solves for ``L_n`` and ``alpha_{n-1}`` together."""
    entries = entries or [random_twomod(rng, ring, max_gens) for _ in range(length)]
    diffs, alphas = [], []
    for n in range(len(entries) - 1):
        a, b = entries[n], entries[n + 1]
        sys = HomSystem(ring)
        k1 = sys.var(a.deg1, b.deg1)
        k0 = sys.var(a.deg0, b.deg0)
        _chain_eq(sys, k1, k0, a, b)
        if n >= 1:
            prev, src = diffs[-1], entries[n - 1]
            ka = sys.var(src.deg0, b.deg1)
            # d h = -l_n0 l_{n-1,0} ; h d = -l_n1 l_{n-1,1}
            sys.equation([(eye(b.deg0.ngens), k0, prev.f0.matrix), (b.d.matrix, ka, eye(src.deg0.ngens))],
                         zeros(b.deg0.ngens, src.deg0.ngens), b.deg0)
            sys.equation([(eye(b.deg1.ngens), k1, prev.f1.matrix), (eye(b.deg1.ngens), ka, src.d.matrix)],
                         zeros(b.deg1.ngens, src.deg1.ngens), b.deg1)
            if n >= 2:
                # coherence: l_{n,1} h_alpha_{n-2} = h_alpha_{n-1} l_{n-2,0}
                pa, pp = alphas[-1], diffs[-2]
                s2 = entries[n - 2]
                sys.equation([(eye(b.deg1.ngens), k1, pa.h.matrix),
                              (-eye(b.deg1.ngens), ka, pp.f0.matrix)],
                             zeros(b.deg1.ngens, s2.deg0.ngens), b.deg1)
        sol = sys.solve(seed=_seed(rng))
        l = OneMor(a, b, sol[0], sol[1])
        if n >= 1:
            alphas.append(TwoMor.to_zero(l @ diffs[-1], sol[2]))
        diffs.append(l)
    return CochainComplex(entries, diffs, alphas)


def random_complex_mor(rng: random.Random, s: CochainComplex, t: CochainComplex) -> ComplexMor:
    """Random morphism: all ``F_n`` and ``lambda_n`` from one linear system."""
    ring = s.ring
    length = max(s.length, t.length)
    sys = HomSystem(ring)
    fv = []
    for n in range(length + 2):
        a, b = s.obj(n), t.obj(n)
        k1, k0 = sys.var(a.deg1, b.deg1), sys.var(a.deg0, b.deg0)
        _chain_eq(sys, k1, k0, a, b)
        fv.append((k1, k0))
    lv = []
    for n in range(length + 1):
        a, b1 = s.obj(n), t.obj(n + 1)
        kl = sys.var(a.deg0, b1.deg1)
        lv.append(kl)
        ls, lt = s.diff(n), t.diff(n)
        # d h = m0 f_n0 - f_{n+1,0} l0
        sys.equation([(b1.d.matrix, kl, eye(a.deg0.ngens)), (-lt.f0.matrix, fv[n][1], eye(a.deg0.ngens)),
                      (eye(b1.deg0.ngens), fv[n + 1][1], ls.f0.matrix)],
                     zeros(b1.deg0.ngens, a.deg0.ngens), b1.deg0)
        # h d = m1 f_n1 - f_{n+1,1} l1
        sys.equation([(eye(b1.deg1.ngens), kl, a.d.matrix), (-lt.f1.matrix, fv[n][0], eye(a.deg1.ngens)),
                      (eye(b1.deg1.ngens), fv[n + 1][0], ls.f1.matrix)],
                     zeros(b1.deg1.ngens, a.deg1.ngens), b1.deg1)
    for n in range(length):
        a, b2 = s.obj(n), t.obj(n + 2)
        # f_{n+2,1} h_alpha_n - h_lam_{n+1} l_{n,0} - m_{n+1,1} h_lam_n - h_beta_n f_{n,0} = 0
        e = eye(b2.deg1.ngens)
        sys.equation([(e, fv[n + 2][0], s.alpha(n).h.matrix),
                      (-e, lv[n + 1], s.diff(n).f0.matrix),
                      (-t.diff(n + 1).f1.matrix, lv[n], eye(a.deg0.ngens)),
                      (-t.alpha(n).h.matrix, fv[n][1], eye(a.deg0.ngens))],
                     zeros(b2.deg1.ngens, a.deg0.ngens), b2.deg1)
    sol = sys.solve(seed=_seed(rng))
    maps = [OneMor(s.obj(n), t.obj(n), sol[fv[n][0]], sol[fv[n][1]]) for n in range(length)]
    f = ComplexMor(s, t, maps)
    f.lambdas = [TwoMor(f.map(n + 1) @ s.diff(n), t.diff(n) @ f.map(n), sol[lv[n]])
                 for n in range(length)]
    return f


def random_homotopic(rng: random.Random, f: ComplexMor) -> CochainHomotopy:
    """A random ``G`` with a homotopy ``F ~ G`` built from random ``H`` and ``h_tau``."""
    a, b = f.source, f.target
    length = f.length
    hmaps = [random_onemor(rng, a.obj(k), b.obj(k - 1)) for k in range(length + 2)]
    htau = [random_hom(rng, a.obj(k).deg0, b.obj(k).deg1) for k in range(length + 1)]

    def hm(k):
        return hmaps[k] if 0 <= k < len(hmaps) else OneMor.zero(a.obj(k), b.obj(k - 1))

    def ht(k):
        return htau[k] if 0 <= k < len(htau) else ModuleHom.zero(a.obj(k).deg0, b.obj(k).deg1)

    gmaps = []
    for k in range(length):
        mh = b.diff(k - 1) @ hm(k) + hm(k + 1) @ a.diff(k)
        bk = b.obj(k)
        g1 = f.map(k).f1 + ht(k) @ a.obj(k).d - mh.f1
        g0 = f.map(k).f0 + bk.d @ ht(k) - mh.f0
        gmaps.append(OneMor(a.obj(k), bk, g1, g0))
    g = ComplexMor(a, b, gmaps)
    lambdas = []
    for n in range(length):
        h_mu = (b.diff(n).f1 @ ht(n) + b.alpha(n - 1).h @ hm(n).f0 + f.lam(n).h
                - ht(n + 1) @ a.diff(n).f0 - hm(n + 2).f1 @ a.alpha(n).h)
        lambdas.append(TwoMor(g.map(n + 1) @ a.diff(n), b.diff(n) @ g.map(n), h_mu))
    g.lambdas = lambdas
    hom = CochainHomotopy(f, g, hmaps[: length + 1])
    hom.taus = [TwoMor(f.map(k), hom.target_of_tau(k), ht(k)) for k in range(length)]
    return hom
