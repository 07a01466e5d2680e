"""2-modules as 2-term complexes ``d: A1 -> A0`` and their (2-)morphisms.

Conventions used throughout the package:

* objects of ``A`` are elements of ``A0``; a morphism ``x -> y`` is an
  ``a`` in ``A1`` with ``y = x + d(a)``; composition is addition;
* a 1-morphism is a chain map ``(f1, f0)``;
* a 2-morphism ``F => G`` is ``h: A0 -> B1`` with ``d_B h = g0 - f0`` and
  ``h d_A = g1 - f1``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

from .errors import InputError
from .intmod import (BaseRing, FpModule, ModuleHom, block_diag, eye, hom_cokernel,
                     hom_kernel, hstack, induced_on_cokernels, induced_on_kernels,
                     is_injective, is_iso, is_surjective, solve_modulo,
                     vstack, zeros)


class TwoMod:
    """A 2-term complex ``deg1 --d--> deg0``."""

    def __init__(self, d: ModuleHom):
        if not d.is_well_defined():
            raise InputError("differential is not well-defined")
        self.d = d

    @property
    def deg1(self) -> FpModule:
        return self.d.source

    @property
    def deg0(self) -> FpModule:
        return self.d.target

    @property
    def ring(self) -> BaseRing:
        return self.d.ring

    @classmethod
    def from_matrices(cls, ring: BaseRing, rel1, rel0, dmat, n1=None, n0=None) -> "TwoMod":
        a1 = FpModule(ring, rel1, n1)
        a0 = FpModule(ring, rel0, n0)
        return cls(ModuleHom(a1, a0, dmat))

    @classmethod
    def discrete(cls, m: FpModule) -> "TwoMod":
        """Only identity morphisms: ``0 -> M``."""
        return cls(ModuleHom.zero(FpModule.zero(m.ring), m))

    @classmethod
    def codiscrete(cls, m: FpModule) -> "TwoMod":
        """One object with automorphism group ``M``: ``M -> 0``."""
        return cls(ModuleHom.zero(m, FpModule.zero(m.ring)))

    @classmethod
    def zero(cls, ring: BaseRing) -> "TwoMod":
        z = FpModule.zero(ring)
        return cls(ModuleHom.zero(z, z))

    @classmethod
    def contractible(cls, m: FpModule) -> "TwoMod":
        return cls(ModuleHom.identity(m))

    # invariants -------------------------------------------------------------
    @cached_property
    def _pi1(self):
        return hom_kernel(self.d)

    @cached_property
    def _pi0(self):
        return hom_cokernel(self.d)

    def pi(self) -> "PiPair":
        return PiPair(self._pi1[0], self._pi0[0])

    def is_discrete(self) -> bool:
        return self.deg1.ngens == 0

    def __repr__(self):
        return f"TwoMod({self.deg1} -> {self.deg0}; pi1={self._pi1[0]}, pi0={self._pi0[0]})"


@dataclass(frozen=True)
class PiPair:
    pi1: FpModule
    pi0: FpModule

    def factors(self) -> tuple[tuple[int, ...], tuple[int, ...]]:
        return self.pi1.canonical_form(), self.pi0.canonical_form()

    def is_zero(self) -> bool:
        return self.pi1.is_trivial() and self.pi0.is_trivial()

    def __str__(self):
        return f"(pi1={self.pi1}, pi0={self.pi0})"


def pi(a: TwoMod) -> PiPair:
    return a.pi()


def _check_same(a: TwoMod, b: TwoMod, what: str):
    if (a.deg1.ngens, a.deg0.ngens) != (b.deg1.ngens, b.deg0.ngens):
        raise InputError(f"{what}: 2-modules do not match")


class OneMor:
    """Chain map ``(f1, f0)`` from ``source`` to ``target``."""

    def __init__(self, source: TwoMod, target: TwoMod, f1: ModuleHom, f0: ModuleHom,
                 check: bool = True):
        if (f1.source.ngens, f1.target.ngens) != (source.deg1.ngens, target.deg1.ngens) or \
                (f0.source.ngens, f0.target.ngens) != (source.deg0.ngens, target.deg0.ngens):
            raise InputError("OneMor components have the wrong shape")
        self.source, self.target, self.f1, self.f0 = source, target, f1, f0
        if check:
            if not (f1.is_well_defined() and f0.is_well_defined()):
                raise InputError("OneMor components are not well-defined")
            if not self.chain_defect().is_zero():
                raise InputError("OneMor violates the chain condition f0 d = d f1")

    @classmethod
    def from_matrices(cls, source, target, m1, m0) -> "OneMor":
        return cls(source, target, ModuleHom(source.deg1, target.deg1, m1),
                   ModuleHom(source.deg0, target.deg0, m0))

    def chain_defect(self) -> ModuleHom:
        return self.f0 @ self.source.d - self.target.d @ self.f1

    @classmethod
    def identity(cls, a: TwoMod) -> "OneMor":
        return cls(a, a, ModuleHom.identity(a.deg1), ModuleHom.identity(a.deg0), check=False)

    @classmethod
    def zero(cls, a: TwoMod, b: TwoMod) -> "OneMor":
        return cls(a, b, ModuleHom.zero(a.deg1, b.deg1), ModuleHom.zero(a.deg0, b.deg0),
                   check=False)

    def compose(self, inner: "OneMor") -> "OneMor":
        """``self o inner``."""
        _check_same(inner.target, self.source, "compose")
        return OneMor(inner.source, self.target, self.f1 @ inner.f1, self.f0 @ inner.f0,
                      check=False)

    __matmul__ = compose

    def _parallel(self, other: "OneMor"):
        _check_same(self.source, other.source, "parallel")
        _check_same(self.target, other.target, "parallel")

    def __add__(self, other: "OneMor") -> "OneMor":
        self._parallel(other)
        return OneMor(self.source, self.target, self.f1 + other.f1, self.f0 + other.f0,
                      check=False)

    def __sub__(self, other: "OneMor") -> "OneMor":
        return self + (-other)

    def __neg__(self) -> "OneMor":
        return OneMor(self.source, self.target, -self.f1, -self.f0, check=False)

    def equals(self, other: "OneMor") -> bool:
        self._parallel(other)
        return self.f1.equals(other.f1) and self.f0.equals(other.f0)

    # induced maps on invariants ---------------------------------------------
    def pi1_map(self) -> ModuleHom:
        k_s, inc_s = self.source._pi1
        k_t, inc_t = self.target._pi1
        return induced_on_kernels(self.f1, inc_s, inc_t)

    def pi0_map(self) -> ModuleHom:
        return induced_on_cokernels(self.f0, self.source._pi0[1], self.target._pi0[1])

    def __repr__(self):
        return f"OneMor({self.source!r} -> {self.target!r})"


def compose(g: OneMor, f: OneMor) -> OneMor:
    """``g o f``."""
    return g @ f


def add(f: OneMor, g: OneMor) -> OneMor:
    return f + g


def negate(f: OneMor) -> OneMor:
    return -f


class TwoMor:
    """Homotopy ``h: A0 -> B1`` from ``src`` to ``dst``."""

    def __init__(self, src: OneMor, dst: OneMor, h: ModuleHom, check: bool = True):
        src._parallel(dst)
        a, b = src.source, src.target
        if (h.source.ngens, h.target.ngens) != (a.deg0.ngens, b.deg1.ngens):
            raise InputError("TwoMor homotopy has the wrong shape")
        self.src, self.dst, self.h = src, dst, h
        if check:
            bad = self.violations()
            if bad:
                raise InputError("invalid TwoMor: " + "; ".join(bad))

    def violations(self) -> list[str]:
        a, b = self.src.source, self.src.target
        out = []
        if not self.h.is_well_defined():
            out.append("homotopy not well-defined")
            return out
        if not (b.d @ self.h - (self.dst.f0 - self.src.f0)).is_zero():
            out.append("d h != g0 - f0")
        if not (self.h @ a.d - (self.dst.f1 - self.src.f1)).is_zero():
            out.append("h d != g1 - f1")
        return out

    @classmethod
    def identity(cls, f: OneMor) -> "TwoMor":
        return cls(f, f, ModuleHom.zero(f.source.deg0, f.target.deg1), check=False)

    @classmethod
    def to_zero(cls, f: OneMor, h: ModuleHom, check: bool = True) -> "TwoMor":
        """A trivialisation ``f => 0``."""
        return cls(f, OneMor.zero(f.source, f.target), h, check=check)

    def equals(self, other: "TwoMor") -> bool:
        return self.h.equals(other.h)

    def __repr__(self):
        return f"TwoMor(h={self.h!r})"


def vcomp(sigma: TwoMor, tau: TwoMor) -> TwoMor:
    """``tau . sigma``: first ``sigma: F => G`` then ``tau: G => K``."""
    if not sigma.dst.equals(tau.src):
        raise InputError("vcomp: 2-morphisms are not composable")
    return TwoMor(sigma.src, tau.dst, sigma.h + tau.h, check=False)


def whisker_left(k: OneMor, tau: TwoMor) -> TwoMor:
    """``K o tau``: ``K F => K G``."""
    return TwoMor(k @ tau.src, k @ tau.dst, k.f1 @ tau.h, check=False)


def whisker_right(tau: TwoMor, k: OneMor) -> TwoMor:
    """``tau o K``: ``F K => G K``."""
    return TwoMor(tau.src @ k, tau.dst @ k, tau.h @ k.f0, check=False)


def hcomp(sigma: TwoMor, tau: TwoMor) -> TwoMor:
    """Horizontal composite of ``sigma: F => F'`` (outer) with ``tau: G => G'``."""
    first = whisker_right(sigma, tau.src)
    return TwoMor(first.src, sigma.dst @ tau.dst, first.h + sigma.dst.f1 @ tau.h, check=False)


def add_twomor(s: TwoMor, t: TwoMor) -> TwoMor:
    return TwoMor(s.src + t.src, s.dst + t.dst, s.h + t.h, check=False)


def neg_twomor(s: TwoMor) -> TwoMor:
    return TwoMor(-s.src, -s.dst, -s.h, check=False)


# ------------------------------------------------------------- predicates

def is_faithful(f: OneMor) -> bool:
    """Injective on hom-sets, i.e. ``f1`` injective on ``ker d``."""
    return is_injective(f.pi1_map())


def is_full(f: OneMor) -> bool:
    """Surjective on hom-sets.

    A morphism ``F x -> F x'`` is ``b`` in ``B1`` with ``d b = f0(z)`` where
    ``z = x' - x``.  Fullness asks every solution pair ``(z, b)`` of
    ``f0 z - d b = 0`` to be of the form ``(d a, f1 a)``; the pairs are the
    kernel of ``[f0 | -d_B]`` on ``A0 + B1`` and each generator is tested by
    solving ``[d_A; f1] a = (z; b)`` modulo the relations of ``A0 + B1``.
    """
    a, b = f.source, f.target
    both = a.deg0.direct_sum(b.deg1)
    test = ModuleHom(both, b.deg0, hstack(f.f0.matrix, -b.d.matrix), check=False)
    _, inc = hom_kernel(test)
    lhs = vstack(a.d.matrix, f.f1.matrix)
    rel = both.relations
    for j in range(inc.matrix.shape[1]):
        if solve_modulo(lhs, inc.matrix[:, j], rel, a.ring) is None:
            return False
    return True


def is_essentially_surjective(f: OneMor) -> bool:
    return is_surjective(f.pi0_map())


def is_equivalence(f: OneMor) -> bool:
    return is_iso(f.pi0_map()) and is_iso(f.pi1_map())


# -------------------------------------------------------------- biproducts

@dataclass
class Biproduct:
    obj: TwoMod
    i1: OneMor
    i2: OneMor
    p1: OneMor
    p2: OneMor


def _inj(m: FpModule, total: FpModule, offset: int) -> ModuleHom:
    mat = zeros(total.ngens, m.ngens)
    mat[offset:offset + m.ngens, :] = eye(m.ngens)
    return ModuleHom(m, total, mat, check=False)


def _proj(total: FpModule, m: FpModule, offset: int) -> ModuleHom:
    mat = zeros(m.ngens, total.ngens)
    mat[:, offset:offset + m.ngens] = eye(m.ngens)
    return ModuleHom(total, m, mat, check=False)


def biproduct(a: TwoMod, b: TwoMod) -> Biproduct:
    if a.ring != b.ring:
        raise InputError("biproduct: ring mismatch")
    s1 = a.deg1.direct_sum(b.deg1)
    s0 = a.deg0.direct_sum(b.deg0)
    obj = TwoMod(ModuleHom(s1, s0, block_diag(a.d.matrix, b.d.matrix), check=False))
    i1 = OneMor(a, obj, _inj(a.deg1, s1, 0), _inj(a.deg0, s0, 0), check=False)
    i2 = OneMor(b, obj, _inj(b.deg1, s1, a.deg1.ngens), _inj(b.deg0, s0, a.deg0.ngens), check=False)
    p1 = OneMor(obj, a, _proj(s1, a.deg1, 0), _proj(s0, a.deg0, 0), check=False)
    p2 = OneMor(obj, b, _proj(s1, b.deg1, a.deg1.ngens), _proj(s0, b.deg0, a.deg0.ngens), check=False)
    return Biproduct(obj, i1, i2, p1, p2)


def pair_into(bp: Biproduct, f: OneMor, g: OneMor) -> OneMor:
    """``(f, g): X -> A + B``."""
    return bp.i1 @ f + bp.i2 @ g


def copair_from(bp: Biproduct, f: OneMor, g: OneMor) -> OneMor:
    """``[f, g]: A + B -> Y``."""
    return f @ bp.p1 + g @ bp.p2
