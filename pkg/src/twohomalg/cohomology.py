"""Cohomology 2-modules of a 2-cochain complex, induced maps, homotopy witnesses.

``H^n`` is built in three steps on the left-padded complex (index ``m = n+2``):

1. ``K = Ker(L_m, alpha_m)``;
2. ``L'_{m-1}: A_{m-1} -> K`` from ``(L_{m-1}, alpha_{m-1})``;
3. ``H^n = Coker(alpha'_{m-2}, L'_{m-1})`` where ``alpha'_{m-2}`` reuses the
   homotopy ``h_alpha_{m-2}`` with values in ``K_1 = A_{m-1,1}``.

Concretely, objects of ``H^n`` are pairs ``(x, a)`` with ``x`` in ``A_{n,0}``,
``a`` in ``A_{n+1,1}``, ``l x + d a = 0`` and ``l a = h_alpha x``; morphisms
are classes ``[y, c]`` in ``A_{n-1,0} + A_{n,1}``.  On discrete complexes
``pi0(H^n)`` is classical ``H^n`` and ``pi1(H^n)`` is classical ``H^{n-1}``.
"""

from __future__ import annotations

from dataclasses import dataclass

from .cochain import (CochainComplex, CochainHomotopy, ComplexMor, check_homotopy,
                      pad_homotopy, pad_left, pad_mor)
from .errors import InputError, PreconditionError
from .intmod import ModuleHom, hstack, lift_through, vstack, zeros
from .relkc import (RelCokernelData, RelKernelData, factor_through_kernel, relative_cokernel,
                    relative_kernel)
from .twomod import OneMor, PiPair, TwoMod, TwoMor


@dataclass
class CohomologyResult:
    n: int
    H: TwoMod
    pis: PiPair
    kernel: RelKernelData
    cokernel: RelCokernelData
    lprime: OneMor
    padded: CochainComplex

    @property
    def incl(self) -> ModuleHom:
        """Objects of ``H`` inside ``A_{n,0} + A_{n+1,1}``."""
        return self.kernel.incl


def cohomology(c: CochainComplex, n: int) -> CohomologyResult:
    if not 0 <= n < c.length:
        raise InputError(f"cohomology degree {n} outside 0..{c.length - 1}")
    p = pad_left(c)
    m = n + 2
    kd = relative_kernel(p.diff(m), p.diff(m + 1), p.alpha(m))
    lprime, _ = factor_through_kernel(kd, p.diff(m - 1), p.alpha(m - 1))
    head = p.diff(m - 2)
    abar = TwoMor.to_zero(lprime @ head, p.alpha(m - 2).h, check=False)
    bad = abar.violations()
    if bad:
        raise InputError("cancelled trivialisation is not valid: " + "; ".join(bad))
    cd = relative_cokernel(head, lprime, abar)
    return CohomologyResult(n, cd.Q, cd.Q.pi(), kd, cd, lprime, p)


def induced_map(f: ComplexMor, n: int, hs: CohomologyResult | None = None,
                ht: CohomologyResult | None = None) -> OneMor:
    """``H^n(F)``.

    Objects: ``(x, a) |-> (f_n x, f_{n+1} a - h_lam_n x)``; morphisms:
    ``[y, c] |-> [f_{n-1} y, f_n c + h_lam_{n-1} y]``.
    """
    hs = hs or cohomology(f.source, n)
    ht = ht or cohomology(f.target, n)
    fp = pad_mor(f, hs.padded, ht.padded)
    m = n + 2
    fn, fn1, fm1 = fp.map(m), fp.map(m + 1), fp.map(m - 1)
    obj_mat = vstack(hstack(fn.f0.matrix, zeros(fn.f0.matrix.shape[0], fn1.f1.matrix.shape[1])),
                     hstack(-fp.lam(m).h.matrix, fn1.f1.matrix))
    both_t = ht.incl.target
    pair = ModuleHom(hs.H.deg0, both_t, obj_mat @ hs.incl.matrix, check=False)
    f0 = lift_through(pair, ht.incl)
    if f0 is None:
        raise PreconditionError("complex morphism does not preserve cohomology objects")
    mor_mat = vstack(hstack(fm1.f0.matrix, zeros(fm1.f0.matrix.shape[0], fn.f1.matrix.shape[1])),
                     hstack(fp.lam(m - 1).h.matrix, fn.f1.matrix))
    f1 = ModuleHom(hs.H.deg1, ht.H.deg1, mor_mat)
    return OneMor(hs.H, ht.H, f1, f0)


def homotopy_witness(h: CochainHomotopy, n: int, hs: CohomologyResult | None = None,
                     ht: CohomologyResult | None = None) -> TwoMor:
    """2-morphism ``H^n(F) => H^n(G)``: ``(x, a) |-> [H_n x, h_tau_n x + H_{n+1} a]``."""
    if h.upto is not None and n + 1 > h.upto:
        raise PreconditionError(f"homotopy is only claimed up to degree {h.upto}")
    rep = check_homotopy(h)
    if not rep.ok:
        raise PreconditionError("invalid cochain homotopy: " + str(rep))
    hs = hs or cohomology(h.src.source, n)
    ht = ht or cohomology(h.src.target, n)
    fsrc = induced_map(h.src, n, hs, ht)
    fdst = induced_map(h.dst, n, hs, ht)
    sp = pad_mor(h.src, hs.padded, ht.padded)
    dp = pad_mor(h.dst, hs.padded, ht.padded)
    hp = pad_homotopy(h, sp, dp)
    m = n + 2
    hn, hn1 = hp.hmap(m), hp.hmap(m + 1)
    mat = vstack(hstack(hn.f0.matrix, zeros(hn.f0.matrix.shape[0], hn1.f1.matrix.shape[1])),
                 hstack(hp.tau(m).h.matrix, hn1.f1.matrix))
    w = ModuleHom(hs.H.deg0, ht.H.deg1, mat @ hs.incl.matrix)
    return TwoMor(fsrc, fdst, w)
