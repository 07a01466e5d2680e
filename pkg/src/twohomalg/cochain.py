"""2-cochain complexes, their morphisms and homotopies.

A complex is a finite list ``A_0 .. A_N`` with differentials ``L_n`` and
trivialisations ``alpha_n: L_{n+1} L_n => 0``; everything outside the stored
range is the zero 2-module.  Validators return a :class:`Report` listing
each violated equation by name and index.

Coherence equations checked (all are equalities of homomorphisms):

* complex, at ``n``:  ``l_{n+2,1} h_alpha_n == h_alpha_{n+1} l_{n,0}``
* morphism, at ``n``: ``f_{n+2,1} h_alpha_n == h_lam_{n+1} l_{n,0}
  + m_{n+1,1} h_lam_n + h_beta_n f_{n,0}``
* homotopy, at ``n`` (maps ``A_{n,0} -> B_{n+1,1}``)::

      h_tau_{n+1} l_{n,0} + H_{n+2,1} h_alpha_n + h_mu_n
          == m_{n,1} h_tau_n + h_beta_{n-1} H_{n,0} + h_lam_n
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

from .errors import InputError
from .intmod import BaseRing, ModuleHom
from .twomod import OneMor, TwoMod, TwoMor


@dataclass
class Report:
    violations: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def add(self, where: str, what: str):
        self.violations.append(f"{where}: {what}")

    def extend(self, other: "Report"):
        self.violations.extend(other.violations)

    def __bool__(self):
        return self.ok

    def __str__(self):
        return "valid" if self.ok else "\n".join(self.violations)


def _zero_h(src: TwoMod, dst: TwoMod) -> ModuleHom:
    return ModuleHom.zero(src.deg0, dst.deg1)


class CochainComplex:
    def __init__(self, entries: Sequence[TwoMod], diffs: Sequence[OneMor],
                 alphas: Sequence[TwoMor] = (), offset: int = 0):
        if not entries:
            raise InputError("a complex needs at least one entry")
        self.ring: BaseRing = entries[0].ring
        self.entries = list(entries)
        self.offset = offset
        n = len(self.entries)
        if len(diffs) > max(n - 1, 0):
            raise InputError("too many differentials")
        self._zero = TwoMod.zero(self.ring)
        self.diffs = list(diffs) + [OneMor.zero(self.entries[i], self.entries[i + 1])
                                    for i in range(len(diffs), n - 1)]
        for i, l in enumerate(self.diffs):
            if (l.source.deg0.ngens, l.target.deg0.ngens, l.source.deg1.ngens, l.target.deg1.ngens) != \
                    (self.entries[i].deg0.ngens, self.entries[i + 1].deg0.ngens,
                     self.entries[i].deg1.ngens, self.entries[i + 1].deg1.ngens):
                raise InputError(f"differential {i} has the wrong shape")
        alphas = list(alphas)
        if len(alphas) > max(n - 2, 0):
            raise InputError("too many 2-morphisms")
        for i in range(len(alphas), max(n - 2, 0)):
            comp = self.diffs[i + 1] @ self.diffs[i]
            alphas.append(TwoMor.to_zero(comp, _zero_h(self.entries[i], self.entries[i + 2]),
                                         check=False))
        self.alphas = alphas

    @property
    def length(self) -> int:
        return len(self.entries)

    def obj(self, n: int) -> TwoMod:
        return self.entries[n] if 0 <= n < self.length else self._zero

    def diff(self, n: int) -> OneMor:
        if 0 <= n < self.length - 1:
            return self.diffs[n]
        return OneMor.zero(self.obj(n), self.obj(n + 1))

    def alpha(self, n: int) -> TwoMor:
        if 0 <= n < self.length - 2:
            return self.alphas[n]
        comp = self.diff(n + 1) @ self.diff(n)
        return TwoMor.to_zero(comp, _zero_h(self.obj(n), self.obj(n + 2)), check=False)

    @classmethod
    def strict(cls, entries: Sequence[TwoMod], diffs: Sequence[OneMor]) -> "CochainComplex":
        """All trivialisations zero (requires ``L_{n+1} L_n = 0`` on the nose)."""
        return cls(entries, diffs)

    def __repr__(self):
        return f"CochainComplex(length={self.length}, offset={self.offset})"


def validate_complex(c: CochainComplex) -> Report:
    rep = Report()
    for n in range(c.length - 1):
        if not c.diff(n).chain_defect().is_zero():
            rep.add(f"L[{n}]", "chain condition fails")
    bad_alpha = set()
    for n in range(c.length - 2):
        al = c.alpha(n)
        comp = c.diff(n + 1) @ c.diff(n)
        v = TwoMor(comp, OneMor.zero(c.obj(n), c.obj(n + 2)), al.h, check=False).violations()
        if v:
            bad_alpha.add(n)
            rep.add(f"alpha[{n}]", "; ".join(v))
    for n in range(c.length - 3):
        if n in bad_alpha or n + 1 in bad_alpha:
            continue
        lhs = c.diff(n + 2).f1 @ c.alpha(n).h
        rhs = c.alpha(n + 1).h @ c.diff(n).f0
        if not (lhs - rhs).is_zero():
            rep.add(f"coherence[{n}]", "L_{n+2} alpha_n != alpha_{n+1} L_n")
    return rep


class ComplexMor:
    """``(F_n, lambda_n)`` with ``lambda_n: F_{n+1} L_n => M_n F_n``."""

    def __init__(self, source: CochainComplex, target: CochainComplex,
                 maps: Sequence[OneMor], lambdas: Optional[Sequence[TwoMor]] = None):
        self.source, self.target = source, target
        self.length = max(source.length, target.length)
        maps = list(maps)
        if len(maps) > self.length:
            raise InputError("too many component maps")
        for n in range(len(maps), self.length):
            maps.append(OneMor.zero(source.obj(n), target.obj(n)))
        self.maps = maps
        lambdas = list(lambdas or [])
        if len(lambdas) > self.length:
            raise InputError("too many 2-morphisms")
        for n in range(len(lambdas), self.length):
            lambdas.append(self._zero_lambda(n))
        self.lambdas = lambdas

    def _zero_lambda(self, n: int) -> TwoMor:
        return TwoMor(self.map(n + 1) @ self.source.diff(n), self.target.diff(n) @ self.map(n),
                      ModuleHom.zero(self.source.obj(n).deg0, self.target.obj(n + 1).deg1),
                      check=False)

    def map(self, n: int) -> OneMor:
        if 0 <= n < len(self.maps):
            return self.maps[n]
        return OneMor.zero(self.source.obj(n), self.target.obj(n))

    def lam(self, n: int) -> TwoMor:
        if 0 <= n < len(self.lambdas):
            return self.lambdas[n]
        return self._zero_lambda(n)

    @classmethod
    def identity(cls, c: CochainComplex) -> "ComplexMor":
        return cls(c, c, [OneMor.identity(c.obj(n)) for n in range(c.length)])

    @classmethod
    def zero(cls, s: CochainComplex, t: CochainComplex) -> "ComplexMor":
        return cls(s, t, [])


def validate_complex_mor(f: ComplexMor) -> Report:
    rep = Report()
    s, t = f.source, f.target
    for n in range(f.length):
        if not f.map(n).chain_defect().is_zero():
            rep.add(f"F[{n}]", "chain condition fails")
    bad = set()
    for n in range(f.length):
        lam = f.lam(n)
        v = TwoMor(f.map(n + 1) @ s.diff(n), t.diff(n) @ f.map(n), lam.h, check=False).violations()
        if v:
            bad.add(n)
            rep.add(f"lambda[{n}]", "; ".join(v))
    for n in range(f.length):
        if bad & {n, n + 1}:
            continue
        lhs = f.map(n + 2).f1 @ s.alpha(n).h
        rhs = (f.lam(n + 1).h @ s.diff(n).f0 + t.diff(n + 1).f1 @ f.lam(n).h
               + t.alpha(n).h @ f.map(n).f0)
        if not (lhs - rhs).is_zero():
            rep.add(f"square[{n}]", "F_{n+2} alpha_n != (beta_n F_n)(M_{n+1} lambda_n)(lambda_{n+1} L_n)")
    return rep


def compose_complex_mor(f: ComplexMor, g: ComplexMor) -> ComplexMor:
    """``g o f`` with ``lambda = (mu_n F_n) + (G_{n+1} lambda_n)``."""
    shape = lambda c: [(o.deg1.ngens, o.deg0.ngens) for o in c.entries]
    if shape(f.target) != shape(g.source):
        raise InputError("complex morphisms are not composable")
    length = max(f.length, g.length)
    maps = [g.map(n) @ f.map(n) for n in range(length)]
    out = ComplexMor(f.source, g.target, maps[: max(f.source.length, g.target.length)])
    lambdas = []
    for n in range(out.length):
        h = g.map(n + 1).f1 @ f.lam(n).h + g.lam(n).h @ f.map(n).f0
        lambdas.append(TwoMor(out.map(n + 1) @ f.source.diff(n),
                              g.target.diff(n) @ out.map(n), h, check=False))
    out.lambdas = lambdas
    return out


class CochainHomotopy:
    """``(H_{k-1}, tau_k)``: ``hmaps[k]: A_k -> B_{k-1}`` and
    ``tau_k: F_k => M_{k-1} H_k + H_{k+1} L_k + G_k``."""

    def __init__(self, src: ComplexMor, dst: ComplexMor, hmaps: Sequence[OneMor],
                 taus: Optional[Sequence[TwoMor]] = None, upto: Optional[int] = None):
        self.src, self.dst = src, dst
        # last degree at which the homotopy equations are claimed (None: all)
        self.upto = upto
        self.length = max(src.length, dst.length)
        a, b = src.source, src.target
        hmaps = list(hmaps)
        for k in range(len(hmaps), self.length + 1):
            hmaps.append(OneMor.zero(a.obj(k), b.obj(k - 1)))
        self.hmaps = hmaps
        taus = list(taus or [])
        for k in range(len(taus), self.length):
            taus.append(TwoMor(src.map(k), self.target_of_tau(k),
                               ModuleHom.zero(a.obj(k).deg0, b.obj(k).deg1), check=False))
        self.taus = taus

    def hmap(self, k: int) -> OneMor:
        if 0 <= k < len(self.hmaps):
            return self.hmaps[k]
        return OneMor.zero(self.src.source.obj(k), self.src.target.obj(k - 1))

    def tau(self, k: int) -> TwoMor:
        if 0 <= k < len(self.taus):
            return self.taus[k]
        return TwoMor(self.src.map(k), self.target_of_tau(k),
                      ModuleHom.zero(self.src.source.obj(k).deg0, self.src.target.obj(k).deg1),
                      check=False)

    def target_of_tau(self, k: int) -> OneMor:
        a, b = self.src.source, self.src.target
        return b.diff(k - 1) @ self.hmap(k) + self.hmap(k + 1) @ a.diff(k) + self.dst.map(k)

    @classmethod
    def zero(cls, f: ComplexMor) -> "CochainHomotopy":
        return cls(f, f, [])


def check_homotopy(h: CochainHomotopy, upto: Optional[int] = None) -> Report:
    """Check ``tau_k`` for ``k <= upto`` and coherence below it.

    ``upto`` defaults to the homotopy's own claimed range.
    """
    rep = Report()
    if upto is None:
        upto = h.upto
    top = h.length - 1 if upto is None else min(upto, h.length - 1)
    f, g = h.src, h.dst
    a, b = f.source, f.target
    if g.source.length != a.length or g.target.length != b.length:
        raise InputError("homotopy between non-parallel complex morphisms")
    for k in range(h.length + 1):
        if not h.hmap(k).chain_defect().is_zero():
            rep.add(f"H[{k}]", "chain condition fails")
    bad = set()
    for k in range(top + 1):
        v = TwoMor(f.map(k), h.target_of_tau(k), h.tau(k).h, check=False).violations()
        if v:
            bad.add(k)
            rep.add(f"tau[{k}]", "; ".join(v))
    for n in range(top if upto is not None else h.length):
        if bad & {n, n + 1}:
            continue
        lhs = (h.tau(n + 1).h @ a.diff(n).f0 + h.hmap(n + 2).f1 @ a.alpha(n).h + g.lam(n).h)
        rhs = (b.diff(n).f1 @ h.tau(n).h + b.alpha(n - 1).h @ h.hmap(n).f0 + f.lam(n).h)
        if not (lhs - rhs).is_zero():
            rep.add(f"compat[{n}]", "homotopy coherence fails")
    return rep


# ---------------------------------------------------------------- padding

def pad_left(c: CochainComplex) -> CochainComplex:
    """Prepend ``0 -> 0 ->`` so that every cohomology degree is interior."""
    z = TwoMod.zero(c.ring)
    entries = [z, z] + c.entries
    diffs = [OneMor.zero(z, z), OneMor.zero(z, c.obj(0))] + c.diffs
    lead = OneMor.zero(z, c.obj(0))
    alphas = [TwoMor.to_zero(lead, ModuleHom.zero(z.deg0, c.obj(0).deg1), check=False),
              TwoMor.to_zero(c.diff(0) @ lead, ModuleHom.zero(z.deg0, c.obj(1).deg1), check=False)]
    alphas += c.alphas
    return CochainComplex(entries, diffs, alphas[: max(len(entries) - 2, 0)], offset=c.offset + 2)


def pad_mor(f: ComplexMor, src: CochainComplex, tgt: CochainComplex) -> ComplexMor:
    """``f`` on the padded complexes ``src = pad_left(f.source)`` etc."""
    z = TwoMod.zero(f.source.ring)
    maps = [OneMor.zero(z, z), OneMor.zero(z, z)] + [f.map(n) for n in range(f.length)]
    maps = [OneMor(src.obj(i), tgt.obj(i), m.f1, m.f0, check=False) for i, m in enumerate(maps)]
    out = ComplexMor(src, tgt, maps)
    lambdas = out.lambdas[:2] + [_retarget(f.lam(n), out, n + 2) for n in range(f.length)]
    out.lambdas = lambdas[: out.length]
    return out


def _retarget(t: TwoMor, f: ComplexMor, n: int) -> TwoMor:
    return TwoMor(f.map(n + 1) @ f.source.diff(n), f.target.diff(n) @ f.map(n), t.h, check=False)


def pad_homotopy(h: CochainHomotopy, src: ComplexMor, dst: ComplexMor) -> CochainHomotopy:
    a, b = src.source, src.target
    hm = [OneMor.zero(a.obj(0), b.obj(-1)), OneMor.zero(a.obj(1), b.obj(0))]
    hm += [OneMor(a.obj(k + 2), b.obj(k + 1), h.hmap(k).f1, h.hmap(k).f0, check=False)
           for k in range(h.length + 1)]
    out = CochainHomotopy(src, dst, hm[: src.length + 1])
    taus = out.taus[:2] + [TwoMor(src.map(k + 2), out.target_of_tau(k + 2), h.tau(k).h, check=False)
                           for k in range(h.length)]
    out.taus = taus[: out.length]
    return out
