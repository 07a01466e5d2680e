"""Exact linear algebra over Z and Z/n and finitely presented modules.

Matrices are numpy arrays of dtype ``object`` holding Python ints, so
nothing ever overflows.  A module ``M = R^g / im(rel)`` is stored by its
relation matrix (``g`` rows, one column per relator); a homomorphism
``M -> N`` is a ``N.ngens x M.ngens`` matrix acting on column vectors.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from math import gcd, prod
from typing import Optional, Sequence

import numpy as np

from .errors import InputError


@dataclass(frozen=True)
class BaseRing:
    """Z (``modulus=None``) or Z/n."""

    modulus: Optional[int] = None

    def __post_init__(self):
        if self.modulus is not None and self.modulus < 2:
            raise InputError(f"Z/n needs n >= 2, got {self.modulus}")

    @property
    def is_finite(self) -> bool:
        return self.modulus is not None

    def reduce(self, a):
        if self.modulus is None:
            return a
        return a % self.modulus

    def is_zero(self, x: int) -> bool:
        return x == 0 if self.modulus is None else x % self.modulus == 0

    def __str__(self):
        return "Z" if self.modulus is None else f"Z/{self.modulus}"


ZZ = BaseRing()


def Zmod(n: int) -> BaseRing:
    return BaseRing(n)


# ---------------------------------------------------------------- matrices

def matrix(rows, nrows: Optional[int] = None, ncols: Optional[int] = None) -> np.ndarray:
    """Build an object matrix; shapes must be given when ``rows`` is empty."""
    if isinstance(rows, np.ndarray):
        out = rows.astype(object)
        if out.ndim != 2:
            raise InputError("expected a 2-d matrix")
        return out.copy()
    rows = [list(r) for r in rows]
    if not rows:
        return np.zeros((nrows or 0, ncols or 0), dtype=object)
    width = len(rows[0])
    if any(len(r) != width for r in rows):
        raise InputError("ragged matrix rows")
    out = np.empty((len(rows), width), dtype=object)
    for i, r in enumerate(rows):
        for j, x in enumerate(r):
            out[i, j] = int(x)
    if ncols is not None and width != ncols and len(rows):
        raise InputError(f"expected {ncols} columns, got {width}")
    return out


def zeros(r: int, c: int) -> np.ndarray:
    out = np.empty((r, c), dtype=object)
    out.fill(0)
    return out


def eye(n: int) -> np.ndarray:
    out = zeros(n, n)
    for i in range(n):
        out[i, i] = 1
    return out


def hstack(*mats: np.ndarray) -> np.ndarray:
    return np.concatenate(mats, axis=1) if mats else zeros(0, 0)


def vstack(*mats: np.ndarray) -> np.ndarray:
    return np.concatenate(mats, axis=0) if mats else zeros(0, 0)


def block_diag(*mats: np.ndarray) -> np.ndarray:
    r = sum(m.shape[0] for m in mats)
    c = sum(m.shape[1] for m in mats)
    out = zeros(r, c)
    i = j = 0
    for m in mats:
        out[i:i + m.shape[0], j:j + m.shape[1]] = m
        i += m.shape[0]
        j += m.shape[1]
    return out


def mat_equal(a: np.ndarray, b: np.ndarray, ring: BaseRing = ZZ) -> bool:
    if a.shape != b.shape:
        return False
    return not np.any(ring.reduce(a - b) != 0) if a.size else True


def to_lists(a: np.ndarray) -> list[list[int]]:
    return [[int(x) for x in row] for row in a]


# ------------------------------------------------------- Smith normal form

def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        return -a, -x0, -y0
    return a, x0, y0


def _unit_split(a: int, n: int) -> tuple[int, int, int]:
    """Write ``a = w*g (mod n)`` with ``g = gcd(a, n)`` and ``w`` a unit.

    Returns ``(g, w, w^-1)``.
    """
    g = gcd(a, n)
    if g == n:
        return n, 1, 1
    a1, n1 = a // g, n // g
    w = a1 % n1
    while gcd(w, n) != 1:
        w += n1
    return g, w, pow(w, -1, n)


class _Smith:
    """Row/column reduction keeping U, U^-1 and V up to date."""

    def __init__(self, m: np.ndarray, ring: BaseRing):
        self.n = ring.modulus
        self.rows, self.cols = m.shape
        red = (lambda x: x % self.n) if self.n else (lambda x: x)
        self.red = red
        self.D = [[red(int(x)) for x in row] for row in m]
        self.U = [[int(i == j) for j in range(self.rows)] for i in range(self.rows)]
        self.Ui = [[int(i == j) for j in range(self.rows)] for i in range(self.rows)]
        self.V = [[int(i == j) for j in range(self.cols)] for i in range(self.cols)]

    def zero(self, x):
        return x == 0

    def size(self, x):
        # pivot preference: smallest absolute value / smallest associate
        return abs(x) if self.n is None else gcd(x, self.n)

    def divides(self, a, b):
        # a is a normalized pivot; over Z/n that means a | n
        return b % a == 0

    # -- elementary operations -------------------------------------------
    def row_comb(self, i, j, s, t, u, v):
        """rows (i, j) <- (s*ri + t*rj, u*ri + v*rj); requires sv - tu = 1."""
        red = self.red
        for M in (self.D, self.U):
            ri, rj = M[i], M[j]
            for k in range(len(ri)):
                a, b = ri[k], rj[k]
                ri[k] = red(s * a + t * b)
                rj[k] = red(u * a + v * b)
        # U^-1 <- U^-1 E^-1, E^-1 = [[v, -t], [-u, s]]
        for row in self.Ui:
            a, b = row[i], row[j]
            row[i] = red(v * a - u * b)
            row[j] = red(-t * a + s * b)

    def col_comb(self, i, j, s, t, u, v):
        """cols (i, j) <- (s*ci + t*cj, u*ci + v*cj)."""
        red = self.red
        for M in (self.D, self.V):
            for row in M:
                a, b = row[i], row[j]
                row[i] = red(s * a + t * b)
                row[j] = red(u * a + v * b)

    def row_swap(self, i, j):
        if i == j:
            return
        for M in (self.D, self.U):
            M[i], M[j] = M[j], M[i]
        for row in self.Ui:
            row[i], row[j] = row[j], row[i]

    def col_swap(self, i, j):
        if i == j:
            return
        for M in (self.D, self.V):
            for row in M:
                row[i], row[j] = row[j], row[i]

    def row_scale(self, i, w, winv):
        red = self.red
        for M in (self.D, self.U):
            M[i] = [red(w * x) for x in M[i]]
        for row in self.Ui:
            row[i] = red(winv * row[i])

    def normalize_pivot(self, t):
        p = self.D[t][t]
        if self.n is None:
            if p < 0:
                self.row_scale(t, -1, -1)
        else:
            g, w, winv = _unit_split(p, self.n)
            if w != 1:
                self.row_scale(t, winv, w)

    # -- driver --------------------------------------------------------------
    def run(self):
        D = self.D
        for t in range(min(self.rows, self.cols)):
            best = None
            for i in range(t, self.rows):
                for j in range(t, self.cols):
                    x = D[i][j]
                    if x != 0 and (best is None or self.size(x) < best[0]):
                        best = (self.size(x), i, j)
            if best is None:
                break
            self.row_swap(t, best[1])
            self.col_swap(t, best[2])
            while True:
                self.normalize_pivot(t)
                dirty = False
                for i in range(t + 1, self.rows):
                    b = D[i][t]
                    if b == 0:
                        continue
                    a = D[t][t]
                    if self.divides(a, b):
                        self.row_comb(t, i, 1, 0, -(b // a), 1)
                    else:
                        g, s, r = _xgcd(a, b)
                        self.row_comb(t, i, s, r, -(b // g), a // g)
                        self.normalize_pivot(t)
                for j in range(t + 1, self.cols):
                    b = D[t][j]
                    if b == 0:
                        continue
                    a = D[t][t]
                    if self.divides(a, b):
                        self.col_comb(t, j, 1, 0, -(b // a), 1)
                    else:
                        g, s, r = _xgcd(a, b)
                        self.col_comb(t, j, s, r, -(b // g), a // g)
                        dirty = True
                if dirty or any(D[i][t] != 0 for i in range(t + 1, self.rows)):
                    continue
                a = D[t][t]
                bad = next(((i, j) for i in range(t + 1, self.rows)
                            for j in range(t + 1, self.cols)
                            if not self.divides(a, D[i][j])), None)
                if bad is None:
                    break
                self.row_comb(t, bad[0], 1, 1, 0, 1)
        return self


def _snf(m: np.ndarray, ring: BaseRing) -> _Smith:
    return _Smith(matrix(m), ring).run()


def smith_normal_form(m, ring: BaseRing = ZZ) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Return ``(U, D, V)`` with ``U @ M @ V == D`` (mod n over Z/n).

    ``D`` is diagonal with d1 | d2 | ...; over Z/n each nonzero ``d_i``
    is a divisor of n (so the chain is integer divisibility).
    """
    s = _snf(matrix(m), ring)
    r, c = s.rows, s.cols
    return (matrix(s.U, r, r), matrix(s.D, r, c), matrix(s.V, c, c))


def _diag(s: _Smith) -> list[int]:
    return [s.D[i][i] for i in range(min(s.rows, s.cols))]


def solve_linear(m, b, ring: BaseRing = ZZ) -> Optional[np.ndarray]:
    """Solve ``M x = b``; ``None`` when no solution exists.

    The answer is canonical: in Smith coordinates every free coordinate is
    zero and every constrained one is the least nonnegative residue.
    """
    m = matrix(m)
    b = np.asarray(b, dtype=object).reshape(-1)
    if b.shape[0] != m.shape[0]:
        raise InputError(f"rhs has length {b.shape[0]}, matrix has {m.shape[0]} rows")
    s = _snf(m, ring)
    n = ring.modulus
    c = [ring.reduce(sum(int(s.U[i][k]) * int(b[k]) for k in range(s.rows)))
         for i in range(s.rows)]
    d = _diag(s)
    y = [0] * s.cols
    for i in range(s.rows):
        di = d[i] if i < len(d) else 0
        if n is None:
            if di == 0:
                if c[i] != 0:
                    return None
            elif c[i] % di:
                return None
            else:
                y[i] = c[i] // di
        else:
            g = n if di == 0 else di
            if c[i] % g:
                return None
            if i < s.cols:
                y[i] = (c[i] // g) % (n // g) if g != n else 0
    V = s.V
    x = np.array([ring.reduce(sum(V[i][j] * y[j] for j in range(s.cols)))
                  for i in range(s.cols)], dtype=object)
    return x


def kernel_basis(m, ring: BaseRing = ZZ) -> np.ndarray:
    """Columns generating ``{x : M x = 0}``."""
    m = matrix(m)
    s = _snf(m, ring)
    d = _diag(s)
    n = ring.modulus
    cols = []
    for j in range(s.cols):
        dj = d[j] if j < len(d) else 0
        if n is None:
            if dj == 0:
                cols.append([s.V[i][j] for i in range(s.cols)])
        else:
            g = n if dj == 0 else dj
            f = n // g
            if f % n:
                cols.append([(s.V[i][j] * f) % n for i in range(s.cols)])
    if not cols:
        return zeros(s.cols, 0)
    return matrix(cols).T.copy()


def solve_modulo(a: np.ndarray, b: np.ndarray, rel: np.ndarray, ring: BaseRing) -> Optional[np.ndarray]:
    """Find ``x`` with ``a x - b`` in the column span of ``rel``."""
    sol = solve_linear(hstack(a, rel), b, ring)
    return None if sol is None else sol[: a.shape[1]]


def in_span(v, rel: np.ndarray, ring: BaseRing) -> bool:
    v = np.asarray(v, dtype=object).reshape(-1)
    if not np.any(ring.reduce(v) != 0) if v.size else True:
        return True
    return solve_linear(rel, v, ring) is not None


# --------------------------------------------------------------- modules

class FpModule:
    """``ring^g / im(relations)``.

    Equality (``==``) is isomorphism, decided by invariant factors; use
    :meth:`same_presentation` to compare the presentations themselves.
    """

    __slots__ = ("ring", "relations", "__dict__")

    def __init__(self, ring: BaseRing, relations, ngens: Optional[int] = None):
        rel = matrix(relations, ngens)
        if ngens is not None and rel.shape[0] != ngens:
            raise InputError(f"relation matrix has {rel.shape[0]} rows, expected {ngens}")
        self.ring = ring
        self.relations = ring.reduce(rel)
        self.relations.flags.writeable = False

    # constructors ---------------------------------------------------------
    @classmethod
    def free(cls, ring: BaseRing, g: int) -> "FpModule":
        return cls(ring, zeros(g, 0), g)

    @classmethod
    def zero(cls, ring: BaseRing) -> "FpModule":
        return cls.free(ring, 0)

    @classmethod
    def from_factors(cls, ring: BaseRing, factors: Sequence[int]) -> "FpModule":
        """Direct sum of cyclic modules ``ring/(d)``."""
        k = len(factors)
        rel = zeros(k, k)
        for i, d in enumerate(factors):
            rel[i, i] = d
        return cls(ring, ring.reduce(rel), k)

    # basic data -------------------------------------------------------------
    @property
    def ngens(self) -> int:
        return self.relations.shape[0]

    @cached_property
    def _canon(self):
        s = _snf(self.relations, self.ring)
        d = _diag(s) + [0] * (s.rows - min(s.rows, s.cols))
        n = self.ring.modulus
        kept, factors = [], []
        for i, di in enumerate(d):
            if di == 1:
                continue
            kept.append(i)
            factors.append(n if (n is not None and di == 0) else di)
        to_c = matrix([s.U[i] for i in kept], 0, s.rows)
        from_c = matrix([[s.Ui[r][i] for i in kept] for r in range(s.rows)], s.rows, len(kept))
        # free factors (0) go last, torsion in divisibility order
        order = sorted(range(len(kept)), key=lambda k: (factors[k] == 0, factors[k]))
        factors = [factors[k] for k in order]
        to_c = to_c[order, :] if kept else to_c
        from_c = from_c[:, order] if kept else from_c
        return tuple(factors), to_c, from_c

    def canonical_form(self) -> tuple[int, ...]:
        """Invariant factors; 0 marks a free Z summand."""
        return self._canon[0]

    def canonical(self) -> tuple["FpModule", np.ndarray, np.ndarray]:
        """``(C, to, frm)``: canonical module and mutually inverse iso matrices."""
        f, to_c, from_c = self._canon
        return FpModule.from_factors(self.ring, f), to_c, from_c

    def coords(self, v) -> tuple[int, ...]:
        """Canonical coordinates of an element, reduced per invariant factor."""
        f, to_c, _ = self._canon
        v = np.asarray(v, dtype=object).reshape(-1)
        w = to_c @ v if to_c.shape[1] else [0] * len(f)
        return tuple(int(x) % d if d else int(x) for x, d in zip(w, f))

    def from_coords(self, c) -> np.ndarray:
        _, _, from_c = self._canon
        c = np.asarray(c, dtype=object).reshape(-1)
        if not from_c.shape[1]:
            return np.zeros(self.ngens, dtype=object)
        return self.ring.reduce(from_c @ c)

    def order(self) -> Optional[int]:
        f = self.canonical_form()
        if any(d == 0 for d in f):
            return None
        return prod(f)

    def is_trivial(self) -> bool:
        return not self.canonical_form()

    def is_zero_element(self, v) -> bool:
        return in_span(v, self.relations, self.ring)

    def elements(self):
        """Every element as a vector in the module's own generators."""
        f = self.canonical_form()
        if any(d == 0 for d in f):
            raise InputError("cannot enumerate an infinite module")
        for c in itertools.product(*[range(d) for d in f]):
            yield self.from_coords(c)

    def same_presentation(self, other: "FpModule") -> bool:
        return (self.ring == other.ring and self.relations.shape == other.relations.shape
                and mat_equal(self.relations, other.relations))

    def direct_sum(self, other: "FpModule") -> "FpModule":
        _check_ring(self, other)
        return FpModule(self.ring, block_diag(self.relations, other.relations),
                        self.ngens + other.ngens)

    def quotient(self, extra: np.ndarray) -> "FpModule":
        """Same generators with additional relator columns."""
        return FpModule(self.ring, hstack(self.relations, extra), self.ngens)

    def __eq__(self, other):
        if not isinstance(other, FpModule):
            return NotImplemented
        return self.ring == other.ring and self.canonical_form() == other.canonical_form()

    def __hash__(self):
        return hash((self.ring, self.canonical_form()))

    def __str__(self):
        return format_factors(self.canonical_form(), self.ring)

    def __repr__(self):
        return f"FpModule({self}, ngens={self.ngens}, ring={self.ring})"


def format_factors(factors: Sequence[int], ring: BaseRing = ZZ) -> str:
    if not factors:
        return "0"
    return " + ".join("Z" if d == 0 else f"Z/{d}" for d in factors)


def _check_ring(*mods: FpModule):
    rings = {m.ring for m in mods}
    if len(rings) > 1:
        raise InputError(f"ring mismatch: {sorted(map(str, rings))}")


class ModuleHom:
    """A homomorphism given by a ``target.ngens x source.ngens`` matrix."""

    __slots__ = ("source", "target", "matrix")

    def __init__(self, source: FpModule, target: FpModule, mat, check: bool = True):
        _check_ring(source, target)
        m = matrix(mat, target.ngens, source.ngens)
        if m.shape != (target.ngens, source.ngens):
            raise InputError(f"hom matrix shape {m.shape} != {(target.ngens, source.ngens)}")
        self.source = source
        self.target = target
        self.matrix = source.ring.reduce(m)
        self.matrix.flags.writeable = False
        if check and not self.is_well_defined():
            raise InputError("matrix does not send relations to relations")

    @property
    def ring(self) -> BaseRing:
        return self.source.ring

    def is_well_defined(self) -> bool:
        img = self.matrix @ self.source.relations
        return all(self.target.is_zero_element(img[:, j]) for j in range(img.shape[1]))

    @classmethod
    def identity(cls, m: FpModule) -> "ModuleHom":
        return cls(m, m, eye(m.ngens), check=False)

    @classmethod
    def zero(cls, s: FpModule, t: FpModule) -> "ModuleHom":
        return cls(s, t, zeros(t.ngens, s.ngens), check=False)

    def __call__(self, v) -> np.ndarray:
        v = np.asarray(v, dtype=object).reshape(-1)
        return self.ring.reduce(self.matrix @ v)

    def compose(self, inner: "ModuleHom") -> "ModuleHom":
        """``self o inner``."""
        if inner.target.ngens != self.source.ngens:
            raise InputError("non-composable homomorphisms")
        return ModuleHom(inner.source, self.target, self.matrix @ inner.matrix, check=False)

    __matmul__ = compose

    def _same_shape(self, other: "ModuleHom"):
        if (self.source.ngens, self.target.ngens) != (other.source.ngens, other.target.ngens):
            raise InputError("homomorphisms are not parallel")

    def __add__(self, other: "ModuleHom") -> "ModuleHom":
        self._same_shape(other)
        return ModuleHom(self.source, self.target, self.matrix + other.matrix, check=False)

    def __sub__(self, other: "ModuleHom") -> "ModuleHom":
        self._same_shape(other)
        return ModuleHom(self.source, self.target, self.matrix - other.matrix, check=False)

    def __neg__(self) -> "ModuleHom":
        return ModuleHom(self.source, self.target, -self.matrix, check=False)

    def scale(self, k: int) -> "ModuleHom":
        return ModuleHom(self.source, self.target, k * self.matrix, check=False)

    def is_zero(self) -> bool:
        return all(self.target.is_zero_element(self.matrix[:, j])
                   for j in range(self.matrix.shape[1]))

    def equals(self, other: "ModuleHom") -> bool:
        """Equality as maps (matrices may differ by relations)."""
        return (self - other).is_zero()

    def __repr__(self):
        return f"ModuleHom({self.source} -> {self.target}, {to_lists(self.matrix)})"


def hom_kernel(f: ModuleHom) -> tuple[FpModule, ModuleHom]:
    """Canonical kernel module and its inclusion."""
    if not f.is_well_defined():
        raise InputError("kernel of an ill-defined homomorphism")
    ring = f.ring
    g = f.source.ngens
    sols = kernel_basis(hstack(f.matrix, f.target.relations), ring)
    gens = sols[:g, :]
    rel_sols = kernel_basis(hstack(gens, f.source.relations), ring)
    pres = FpModule(ring, rel_sols[: gens.shape[1], :], gens.shape[1])
    K, _, frm = pres.canonical()
    return K, ModuleHom(K, f.source, gens @ frm if gens.shape[1] else zeros(g, K.ngens), check=False)


def hom_cokernel(f: ModuleHom) -> tuple[FpModule, ModuleHom]:
    """Canonical cokernel module and its projection."""
    if not f.is_well_defined():
        raise InputError("cokernel of an ill-defined homomorphism")
    pres = f.target.quotient(f.matrix)
    Q, to_c, _ = pres.canonical()
    return Q, ModuleHom(f.target, Q, to_c, check=False)


def hom_image(f: ModuleHom) -> FpModule:
    K, incl = hom_kernel(f)
    Q, _ = hom_cokernel(incl)
    return Q


def is_injective(f: ModuleHom) -> bool:
    return hom_kernel(f)[0].is_trivial()


def is_surjective(f: ModuleHom) -> bool:
    return hom_cokernel(f)[0].is_trivial()


def is_iso(f: ModuleHom) -> bool:
    return is_injective(f) and is_surjective(f)


def lift_through(f: ModuleHom, mono: ModuleHom) -> Optional[ModuleHom]:
    """``g`` with ``mono o g == f`` (``mono`` and ``f`` share a target)."""
    if f.target.ngens != mono.target.ngens:
        raise InputError("lift_through: targets differ")
    cols = []
    for j in range(f.source.ngens):
        x = solve_modulo(mono.matrix, f.matrix[:, j], f.target.relations, f.ring)
        if x is None:
            return None
        cols.append(x)
    m = matrix([list(c) for c in cols], 0, mono.source.ngens).T if cols else zeros(mono.source.ngens, 0)
    return ModuleHom(f.source, mono.source, m)


def induced_on_kernels(f: ModuleHom, inc_src: ModuleHom, inc_tgt: ModuleHom) -> ModuleHom:
    """The map ``ker -> ker'`` restricting ``f``."""
    g = lift_through(f @ inc_src, inc_tgt)
    if g is None:
        raise InputError("map does not restrict to the kernels")
    return g


def induced_on_cokernels(f: ModuleHom, proj_src: ModuleHom, proj_tgt: ModuleHom) -> ModuleHom:
    """The map ``coker -> coker'`` induced by ``f``."""
    section = _section(proj_src)
    return ModuleHom(proj_src.target, proj_tgt.target, proj_tgt.matrix @ f.matrix @ section)


def _section(proj: ModuleHom) -> np.ndarray:
    """Matrix ``s`` with ``proj o s = id`` for a canonical cokernel projection."""
    cols = []
    Q = proj.target
    for j in range(Q.ngens):
        e = zeros(Q.ngens, 1)[:, 0]
        e[j] = 1
        x = solve_modulo(proj.matrix, e, Q.relations, proj.ring)
        if x is None:
            raise InputError("projection is not surjective")
        cols.append(list(x))
    return matrix(cols, 0, proj.source.ngens).T if cols else zeros(proj.source.ngens, 0)
