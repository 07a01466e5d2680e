"""Linear systems whose unknowns are module homomorphisms.

Every extension or lifting problem in the package has the shape
``sum_k P_k X_k Q_k = E`` modulo the relations of the target, with the
``X_k`` required to be well-defined homomorphisms.  Column-major
vectorisation turns this into one integer system for :func:`solve_linear`.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from .errors import InputError
from .intmod import BaseRing, FpModule, ModuleHom, eye, kernel_basis, solve_linear, zeros


@dataclass
class _Var:
    source: FpModule
    target: FpModule
    offset: int

    @property
    def size(self) -> int:
        return self.source.ngens * self.target.ngens


@dataclass
class HomSystem:
    ring: BaseRing
    _vars: list = field(default_factory=list)
    _eqs: list = field(default_factory=list)
    _nvars: int = 0

    def var(self, source: FpModule, target: FpModule) -> int:
        """Declare an unknown homomorphism; returns its handle."""
        v = _Var(source, target, self._nvars)
        self._vars.append(v)
        self._nvars += v.size
        k = len(self._vars) - 1
        if source.relations.shape[1]:
            # well-definedness: X . rel_S lies in the relation lattice of T
            self.equation([(eye(target.ngens), k, source.relations)],
                          zeros(target.ngens, source.relations.shape[1]), target)
        return k

    def equation(self, terms: Sequence[tuple], rhs: np.ndarray, target: FpModule):
        """Impose ``sum P X Q == rhs`` modulo ``target``'s relations."""
        rhs = np.asarray(rhs, dtype=object)
        for p, k, q in terms:
            v = self._vars[k]
            if p.shape != (rhs.shape[0], v.target.ngens) or q.shape != (v.source.ngens, rhs.shape[1]):
                raise InputError("HomSystem: term shapes do not match the equation")
        self._eqs.append((list(terms), rhs, target))

    def _assemble(self):
        blocks, rhs_parts, nslack = [], [], 0
        for terms, rhs, target in self._eqs:
            r, c = rhs.shape
            rows = zeros(r * c, self._nvars)
            for p, k, q in terms:
                v = self._vars[k]
                rows[:, v.offset:v.offset + v.size] += np.kron(q.T, p)
            slack = np.kron(eye(c), target.relations)
            blocks.append((rows, slack))
            nslack += slack.shape[1]
            rhs_parts.append(rhs.T.reshape(-1))
        total_rows = sum(b[0].shape[0] for b in blocks)
        big = zeros(total_rows, self._nvars + nslack)
        i, j = 0, self._nvars
        for rows, slack in blocks:
            big[i:i + rows.shape[0], :self._nvars] = rows
            big[i:i + rows.shape[0], j:j + slack.shape[1]] = slack
            i += rows.shape[0]
            j += slack.shape[1]
        rhs = np.concatenate(rhs_parts) if rhs_parts else np.zeros(0, dtype=object)
        return big, rhs

    def solve(self, seed: Optional[int] = None) -> Optional[list[ModuleHom]]:
        """One solution (canonical when ``seed`` is None), or None."""
        big, rhs = self._assemble()
        if big.shape[0] == 0:
            z = np.zeros(big.shape[1], dtype=object)
        else:
            z = solve_linear(big, rhs, self.ring)
            if z is None:
                return None
        if seed is not None and big.shape[1]:
            rng = random.Random(seed)
            basis = kernel_basis(big, self.ring) if big.shape[0] else np.eye(big.shape[1], dtype=object)
            bound = self.ring.modulus or 3
            for j in range(basis.shape[1]):
                z = z + rng.randrange(bound) * basis[:, j]
            z = self.ring.reduce(z)
        out = []
        for v in self._vars:
            flat = z[v.offset:v.offset + v.size]
            mat = flat.reshape(v.source.ngens, v.target.ngens).T if v.size else zeros(v.target.ngens, v.source.ngens)
            out.append(ModuleHom(v.source, v.target, mat, check=False))
        return out
