"""A truncated free-fermion Fock space.

Modes live on sites ``-m <= i < m``. ``psi_i`` fills site ``i`` and ``psi_i^*``
empties it, with Jordan-Wigner signs from the site order. The vacuum has
every site ``i < 0`` filled, so ``psi_i`` (i < 0) and ``psi_i^*`` (i >= 0)
kill it. Normal-ordered bilinears ``psi_i psi_j^* - <psi_i psi_j^*>`` with
window indices act exactly on this space.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from .algebra import catalog
from .cocycle import japanese_cocycle
from .jmat import JMat


class ModeOutOfWindow(ValueError):
    pass


PSI = "psi"
PSI_STAR = "psi*"


@dataclass(frozen=True)
class FermionOp:
    index: int
    kind: str = PSI


class Operator:
    """Sparse exact operator: ``columns[state] = {state': value}``."""

    __slots__ = ("dim", "columns")

    def __init__(self, dim: int, columns: dict | None = None):
        self.dim = dim
        self.columns = {s: {t: v for t, v in col.items() if v} for s, col in (columns or {}).items()}
        self.columns = {s: col for s, col in self.columns.items() if col}

    @classmethod
    def identity(cls, dim: int, c=1) -> "Operator":
        return cls(dim, {s: {s: Fraction(c)} for s in range(dim)} if c else {})

    def apply(self, vec: dict) -> dict:
        out: dict = {}
        for s, c in vec.items():
            for t, v in self.columns.get(s, {}).items():
                nv = out.get(t, 0) + c * v
                if nv:
                    out[t] = nv
                else:
                    out.pop(t, None)
        return out

    def __matmul__(self, other: "Operator") -> "Operator":
        return Operator(self.dim, {s: self.apply(col) for s, col in other.columns.items()})

    def __add__(self, other: "Operator") -> "Operator":
        cols = {s: dict(col) for s, col in self.columns.items()}
        for s, col in other.columns.items():
            tgt = cols.setdefault(s, {})
            for t, v in col.items():
                tgt[t] = tgt.get(t, 0) + v
        return Operator(self.dim, cols)

    def scale(self, c) -> "Operator":
        return Operator(self.dim, {s: {t: c * v for t, v in col.items()} for s, col in self.columns.items()})

    def __neg__(self) -> "Operator":
        return self.scale(-1)

    def __sub__(self, other: "Operator") -> "Operator":
        return self + (-other)

    def __eq__(self, other) -> bool:
        return isinstance(other, Operator) and self.dim == other.dim and self.columns == other.columns

    def __bool__(self) -> bool:
        return bool(self.columns)

    def scalar_value(self):
        """c if the operator is c * Id, else None."""
        if not self.columns:
            return Fraction(0)
        diag = self.columns.get(0, {}).get(0)
        if diag is None:
            return None
        return diag if self == Operator.identity(self.dim, diag) else None


def commutator(A: Operator, B: Operator) -> Operator:
    return A @ B - B @ A


class FockSpace:
    def __init__(self, m: int = 3):
        if not 1 <= m <= 6:
            raise ValueError("window half-width must be between 1 and 6")
        self.m = m
        self.sites = 2 * m
        self.dim = 1 << self.sites
        self.vacuum = sum(1 << (i + m) for i in range(-m, 0))
        self._ops: dict = {}

    def site(self, i: int) -> int:
        if not -self.m <= i < self.m:
            raise ModeOutOfWindow(f"mode {i} outside [{-self.m}, {self.m})")
        return i + self.m

    def vacuum_vector(self) -> dict:
        return {self.vacuum: Fraction(1)}

    def _act(self, op: FermionOp, state: int):
        s = self.site(op.index)
        bit = 1 << s
        sign = -1 if bin(state & (bit - 1)).count("1") % 2 else 1
        if op.kind == PSI:
            return None if state & bit else (state | bit, sign)
        if op.kind == PSI_STAR:
            return (state & ~bit, sign) if state & bit else None
        raise ValueError(f"unknown fermion kind {op.kind!r}")

    def apply(self, op: FermionOp, vec: dict) -> dict:
        out: dict = {}
        for state, c in vec.items():
            hit = self._act(op, state)
            if hit is not None:
                t, sign = hit
                out[t] = out.get(t, 0) + sign * c
        return {k: v for k, v in out.items() if v}

    def operator(self, op: FermionOp) -> Operator:
        key = (op.index, op.kind)
        if key not in self._ops:
            cols = {}
            for state in range(self.dim):
                hit = self._act(op, state)
                if hit is not None:
                    cols[state] = {hit[0]: Fraction(hit[1])}
            self._ops[key] = Operator(self.dim, cols)
        return self._ops[key]

    def psi(self, i: int) -> Operator:
        return self.operator(FermionOp(i, PSI))

    def psi_star(self, i: int) -> Operator:
        return self.operator(FermionOp(i, PSI_STAR))

    def rho(self, i: int, j: int) -> Operator:
        """Normal-ordered psi_i psi_j^*."""
        op = self.psi(i) @ self.psi_star(j)
        c = pairing(i, j, "psi psi*")
        return op - Operator.identity(self.dim, c) if c else op

    def rho_matrix(self, a: JMat) -> Operator:
        if not a.is_finite:
            raise ModeOutOfWindow("shift patterns have infinite support")
        total = Operator(self.dim)
        for (i, j), v in a.finite.items():
            total = total + self.rho(i, j).scale(_scalar(v))
        return total

    def clifford_relations(self) -> bool:
        idx = range(-self.m, self.m)
        ident = Operator.identity(self.dim)
        zero = Operator(self.dim)
        for i in idx:
            for j in idx:
                P, Q = self.psi(i), self.psi(j)
                Ps, Qs = self.psi_star(i), self.psi_star(j)
                if P @ Q + Q @ P != zero or Ps @ Qs + Qs @ Ps != zero:
                    return False
                if P @ Qs + Qs @ P != (ident if i == j else zero):
                    return False
        return True


def _scalar(v) -> Fraction:
    if len(v) != 1:
        raise ValueError("Fock realization takes scalar (R = k) matrices")
    return Fraction(v[0])


def pairing(i: int, j: int, order: str = "psi psi*") -> int:
    """<psi_i psi_j^*> = 1 iff i = j < 0; <psi_j^* psi_i> = 1 iff i = j >= 0."""
    if order == "psi psi*":
        return 1 if i == j < 0 else 0
    if order == "psi* psi":
        return 1 if i == j >= 0 else 0
    raise ValueError(f"unknown order {order!r}")


def bracket_defect(F: FockSpace, a: JMat, b: JMat):
    """The scalar c with [rho a, rho b] = rho [a, b] + c Id, or None if the defect is not scalar."""
    lhs = commutator(F.rho_matrix(a), F.rho_matrix(b))
    ab = a * b - b * a
    return (lhs - F.rho_matrix(ab)).scalar_value()


def bracket_formula_check(a: JMat, b: JMat, m: int = 3, space: FockSpace | None = None) -> bool:
    F = space or FockSpace(m)
    c = bracket_defect(F, a, b)
    return c is not None and (c,) == tuple(japanese_cocycle(a, b))


def random_window_matrix(m: int, rng: random.Random, entries: int = 3) -> JMat:
    k = catalog("k")
    fin = {}
    for _ in range(entries):
        fin[rng.randrange(-m, m), rng.randrange(-m, m)] = (Fraction(rng.choice([-3, -2, -1, 1, 2, 3])),)
    return JMat(k, fin)
