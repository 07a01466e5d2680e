"""Relative 2-exactness and 2-exactness checkers.

Relative 2-exactness of ``Z -L-> A -F-> B -G-> C -M-> D`` at ``B`` is decided
by vanishing of the local cohomology 2-module at ``B``.  2-exactness of
``A -F-> B -G-> C`` (with ``phi: G F => 0``) asks the comparison
``A -> Ker(G)`` to be full and essentially surjective.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .cochain import CochainComplex, validate_complex
from .cohomology import CohomologyResult, cohomology
from .errors import PreconditionError
from .intmod import FpModule, ModuleHom, hom_cokernel, hom_kernel
from .relkc import factor_through_kernel, relative_kernel
from .twomod import (OneMor, TwoMod, TwoMor, is_essentially_surjective, is_full)


@dataclass
class ExactnessCertificate:
    point: int
    verdict: bool
    evidence: dict = field(default_factory=dict)

    def __bool__(self):
        return self.verdict


def _witness_element(m: FpModule) -> Optional[list[int]]:
    """A nonzero element in canonical coordinates, if any."""
    f = m.canonical_form()
    if not f:
        return None
    return [1] + [0] * (len(f) - 1)


def certificate_from_cohomology(res: CohomologyResult, point: int) -> ExactnessCertificate:
    pis = res.pis
    ev = {"pi1": str(pis.pi1), "pi0": str(pis.pi0),
          "pi1_factors": list(pis.pi1.canonical_form()),
          "pi0_factors": list(pis.pi0.canonical_form())}
    if not pis.pi0.is_trivial():
        # an object of the local cohomology not isomorphic to zero
        ev["counterexample"] = {"kind": "object", "pi0_coords": _witness_element(pis.pi0)}
    elif not pis.pi1.is_trivial():
        ev["counterexample"] = {"kind": "automorphism", "pi1_coords": _witness_element(pis.pi1)}
    return ExactnessCertificate(point, pis.is_zero(), ev)


def exactness_at(c: CochainComplex, n: int, check: bool = True) -> ExactnessCertificate:
    """Relative 2-exactness of a complex at position ``n``."""
    if check:
        rep = validate_complex(c)
        if not rep.ok:
            raise PreconditionError("not a 2-cochain complex: " + str(rep))
    return certificate_from_cohomology(cohomology(c, n), n)


def local_complex(l: OneMor, alpha: TwoMor, f: OneMor, phi: TwoMor, g: OneMor, gamma: TwoMor,
                  m: Optional[OneMor] = None) -> CochainComplex:
    m = m or OneMor.zero(g.target, TwoMod.zero(g.source.ring))
    entries = [l.source, f.source, g.source, g.target, m.target]
    return CochainComplex(entries, [l, f, g, m], [alpha, phi, gamma])


def check_relative_two_exact(l: OneMor, alpha: TwoMor, f: OneMor, phi: TwoMor, g: OneMor,
                             gamma: TwoMor, m: Optional[OneMor] = None) -> ExactnessCertificate:
    """Relative 2-exactness at the middle object ``B = f.target``."""
    c = local_complex(l, alpha, f, phi, g, gamma, m)
    rep = validate_complex(c)
    if not rep.ok:
        raise PreconditionError("incompatible sequence: " + str(rep))
    return certificate_from_cohomology(cohomology(c, 2), 2)


def check_two_exact(f: OneMor, phi: TwoMor, g: OneMor) -> ExactnessCertificate:
    bad = TwoMor(g @ f, OneMor.zero(f.source, g.target), phi.h, check=False).violations()
    if bad:
        raise PreconditionError("phi is not a 2-morphism G F => 0: " + "; ".join(bad))
    z = TwoMod.zero(g.source.ring)
    to_zero = OneMor.zero(g.target, z)
    can = TwoMor.to_zero(to_zero @ g, ModuleHom.zero(g.source.deg0, z.deg1), check=False)
    kd = relative_kernel(g, to_zero, can)
    comp, _ = factor_through_kernel(kd, f, phi)
    p0, p1 = comp.pi0_map(), comp.pi1_map()
    ker0 = hom_kernel(p0)[0]
    cok0 = hom_cokernel(p0)[0]
    cok1 = hom_cokernel(p1)[0]
    full = is_full(comp)
    ess = is_essentially_surjective(comp)
    ev = {"full": full, "essentially_surjective": ess,
          "pi0_kernel": str(ker0), "pi0_cokernel": str(cok0), "pi1_cokernel": str(cok1)}
    return ExactnessCertificate(1, full and ess, ev)
