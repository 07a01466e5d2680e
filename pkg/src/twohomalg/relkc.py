"""Relative kernels and cokernels of ``A --F--> B --G--> C`` with ``phi: G F => 0``.

Both are governed by one matrix on ``A0 + B1 -> B0 + C1``::

    (x, m) |-> (f0 x + d m,  g1 m - h_phi x)

Its kernel is the object module of the relative kernel (an object ``x`` of
``A`` with a morphism ``m: F x -> 0`` whose image under ``G`` is ``phi_x``)
and its image is the set of identifications in the morphism module of the
relative cokernel.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InputError, PreconditionError
from .intmod import FpModule, ModuleHom, eye, hom_kernel, hstack, lift_through, vstack, zeros
from .twomod import OneMor, TwoMod, TwoMor


def _check_sequence(f: OneMor, g: OneMor, phi: TwoMor):
    if (f.target.deg1.ngens, f.target.deg0.ngens) != (g.source.deg1.ngens, g.source.deg0.ngens):
        raise InputError("F and G do not compose")
    if (phi.h.source.ngens, phi.h.target.ngens) != (f.source.deg0.ngens, g.target.deg1.ngens):
        raise InputError("phi has the wrong shape for G o F => 0")
    gf = g @ f
    bad = TwoMor(gf, OneMor.zero(f.source, g.target), phi.h, check=False).violations()
    if bad:
        raise InputError("phi is not a 2-morphism G o F => 0: " + "; ".join(bad))


def _obstruction_matrix(f: OneMor, g: OneMor, phi: TwoMor) -> np.ndarray:
    top = hstack(f.f0.matrix, f.target.d.matrix)
    bottom = hstack(-phi.h.matrix, g.f1.matrix)
    return vstack(top, bottom)


@dataclass
class RelKernelData:
    K: TwoMod
    e: OneMor
    eps: TwoMor
    incl: ModuleHom  # K0 -> A0 + B1
    F: OneMor
    G: OneMor
    phi: TwoMor

    def object_of(self, x, m) -> np.ndarray:
        """Coordinates in ``K0`` of the pair ``(x, m)``."""
        v = np.concatenate([np.asarray(x, dtype=object), np.asarray(m, dtype=object)])
        col = v.reshape(-1, 1)
        src = FpModule.free(self.K.ring, 1)
        lifted = lift_through(ModuleHom(src, self.incl.target, col, check=False), self.incl)
        if lifted is None:
            raise InputError("pair is not an object of the relative kernel")
        return lifted.matrix[:, 0]


@dataclass
class RelCokernelData:
    Q: TwoMod
    p: OneMor
    piw: TwoMor
    F: OneMor
    G: OneMor
    phi: TwoMor


def relative_kernel(f: OneMor, g: OneMor, phi: TwoMor) -> RelKernelData:
    _check_sequence(f, g, phi)
    a, b = f.source, f.target
    both = a.deg0.direct_sum(b.deg1)
    cond = ModuleHom(both, b.deg0.direct_sum(g.target.deg1), _obstruction_matrix(f, g, phi),
                     check=False)
    k0, incl = hom_kernel(cond)
    nx = a.deg0.ngens
    # d_K(a) = (d a, -f1 a), lifted into the kernel coordinates
    boundary = ModuleHom(a.deg1, both, vstack(a.d.matrix, -f.f1.matrix), check=False)
    dk = lift_through(boundary, incl)
    if dk is None:
        raise InputError("relative kernel: boundary does not land in the kernel")
    K = TwoMod(dk)
    proj_x = incl.matrix[:nx, :]
    proj_m = incl.matrix[nx:, :]
    e = OneMor(K, a, ModuleHom.identity(a.deg1), ModuleHom(k0, a.deg0, proj_x, check=False),
               check=False)
    eps = TwoMor.to_zero(f @ e, ModuleHom(k0, b.deg1, proj_m, check=False), check=False)
    return RelKernelData(K, e, eps, incl, f, g, phi)


def relative_cokernel(f: OneMor, g: OneMor, phi: TwoMor) -> RelCokernelData:
    _check_sequence(f, g, phi)
    b, c = g.source, g.target
    both = b.deg0.direct_sum(c.deg1)
    q1 = both.quotient(_obstruction_matrix(f, g, phi))
    nb = b.deg0.ngens
    # d_Q[y, c] = d c - g0 y
    dq = ModuleHom(q1, c.deg0, hstack(-g.f0.matrix, c.d.matrix))
    Q = TwoMod(dq)
    inc_c = zeros(q1.ngens, c.deg1.ngens)
    inc_c[nb:, :] = eye(c.deg1.ngens)
    p = OneMor(c, Q, ModuleHom(c.deg1, q1, inc_c, check=False), ModuleHom.identity(c.deg0),
               check=False)
    inc_y = zeros(q1.ngens, nb)
    inc_y[:nb, :] = eye(nb)
    piw = TwoMor.to_zero(p @ g, ModuleHom(b.deg0, q1, inc_y, check=False), check=False)
    return RelCokernelData(Q, p, piw, f, g, phi)


def factor_through_cokernel(data: RelCokernelData, h: OneMor, psi: TwoMor) -> tuple[OneMor, TwoMor]:
    """Factor ``H: C -> D`` with ``psi: H G => 0`` through ``p``.

    Compatibility with ``phi`` means ``psi`` whiskered by ``F`` equals ``H``
    whiskered onto ``phi``: ``h_psi f0 == h1 h_phi``.
    """
    f, phi = data.F, data.phi
    defect = psi.h @ f.f0 - h.f1 @ phi.h
    if not defect.is_zero():
        raise PreconditionError("incompatible trivialisation: h_psi f0 != h1 h_phi")
    q = data.Q
    # H'[y, c] = h1 c + h_psi y ; H'_0 = h0
    m1 = hstack(psi.h.matrix, h.f1.matrix)
    hq = OneMor(q, h.target, ModuleHom(q.deg1, h.target.deg1, m1), h.f0, check=True)
    iso = TwoMor(hq @ data.p, h, ModuleHom.zero(h.source.deg0, h.target.deg1), check=False)
    return hq, iso


def factor_through_kernel(data: RelKernelData, t: OneMor, tt: TwoMor) -> tuple[OneMor, TwoMor]:
    """Factor ``T: D -> A`` with ``tt: F T => 0`` through ``e``.

    Compatibility with ``phi`` means ``g1 h_tt == h_phi t0``.
    """
    g, phi = data.G, data.phi
    defect = g.f1 @ tt.h - phi.h @ t.f0
    if not defect.is_zero():
        raise PreconditionError("incompatible trivialisation: g1 h_t != h_phi t0")
    k = data.K
    both = data.incl.target
    pair = ModuleHom(t.source.deg0, both, vstack(t.f0.matrix, tt.h.matrix), check=False)
    t0 = lift_through(pair, data.incl)
    if t0 is None:
        raise PreconditionError("T does not land in the relative kernel")
    tk = OneMor(t.source, k, t.f1, t0, check=True)
    iso = TwoMor(data.e @ tk, t, ModuleHom.zero(t.source.deg0, t.target.deg1), check=False)
    return tk, iso
