"""The 2-cocycle Psi on J(R) with values in R^ab and the central extension it defines.

``Psi(X, Y) = Tr([Phi X, Phi Y] - Phi [X, Y])`` with ``Phi X = I_+ X I_+``.
It is evaluated twice: once by materializing the four infinite products on
a window large enough to be exact, once through the finite corner
compressions ``I_+ Y I_- . I_- X I_+ - I_+ X I_- . I_- Y I_+``. The two must
agree; a disagreement is an implementation bug.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .algebra import Coords, InvolutiveAlgebra
from .jmat import (FAMILY_TAU, MINUS, PLUS, JMat, bracket, corner_compress, fixed_point_project,
                   in_fixed_subalgebra, mul, random_jmat, trace)


class InternalMismatch(AssertionError):
    pass


class NotInSubalgebra(ValueError):
    pass


def _window_matrix(X: JMat, lo: int, hi: int) -> dict:
    out = {}
    for i in range(lo, hi + 1):
        for j in range(max(lo, i - X.bandwidth()), min(hi, i + X.bandwidth()) + 1):
            v = X.entry(i, j)
            if any(v):
                out[i, j] = v
    return out


def _window_product(alg: InvolutiveAlgebra, A: dict, B: dict) -> dict:
    rows: dict = {}
    for (k, j), v in B.items():
        rows.setdefault(k, []).append((j, v))
    out: dict = {}
    for (i, k), u in A.items():
        for j, v in rows.get(k, ()):
            p = alg.mul(u, v)
            out[i, j] = alg.add(out[i, j], p) if (i, j) in out else p
    return out


def _psi_materialized(X: JMat, Y: JMat) -> Coords:
    """Tr over R of [Phi X, Phi Y] - Phi [X, Y], from entries on a finite window."""
    alg = X.alg
    spread = X.bandwidth() + Y.bandwidth()
    # outside [-spread, spread] around the finite parts the defect vanishes
    idx = [i for i, _ in X.finite] + [j for _, j in X.finite] + [i for i, _ in Y.finite] + [j for _, j in Y.finite]
    lo = min(idx + [0]) - 2 * spread - 1
    hi = max(idx + [0]) + 2 * spread + 1
    Xw, Yw = _window_matrix(X, lo, hi), _window_matrix(Y, lo, hi)
    PX = {k: v for k, v in Xw.items() if k[0] >= 0 and k[1] >= 0}
    PY = {k: v for k, v in Yw.items() if k[0] >= 0 and k[1] >= 0}
    first = _window_product(alg, PX, PY)
    second = _window_product(alg, PY, PX)
    xy = _window_product(alg, Xw, Yw)
    yx = _window_product(alg, Yw, Xw)
    total = alg.zero_coords
    # diagonal entries far from the window edge are exact; the defect lives near 0
    for i in range(0, hi - spread):
        for M, s in ((first, 1), (second, -1), (xy, -1), (yx, 1)):
            v = M.get((i, i))
            if v is not None:
                total = alg.add(total, alg.scale(s, v))
    return total


def _psi_corners(X: JMat, Y: JMat) -> Coords:
    a = mul(corner_compress(Y, PLUS, MINUS), corner_compress(X, MINUS, PLUS))
    b = mul(corner_compress(X, PLUS, MINUS), corner_compress(Y, MINUS, PLUS))
    return X.alg.sub(trace(a), trace(b))


def psi(X: JMat, Y: JMat) -> Coords:
    """Psi(X, Y) in R^ab coordinates; both formulas are evaluated and compared."""
    ab = X.alg.abelianization
    one = ab.project(_psi_materialized(X, Y))
    two = ab.project(_psi_corners(X, Y))
    if one != two:
        raise InternalMismatch(f"Psi formulas disagree: {one} vs {two}")
    return one


def japanese_cocycle(X: JMat, Y: JMat) -> Coords:
    """sum_{i<0<=j} a_{ij} b_{ji} - sum_{j<0<=i} a_{ij} b_{ji}, pushed to R^ab."""
    if not (X.is_finite and Y.is_finite):
        raise ValueError("the double sum is taken over finite-support matrices")
    alg = X.alg
    total = alg.zero_coords
    for (i, j), a in X.finite.items():
        b = Y.finite.get((j, i))
        if b is None:
            continue
        if i < 0 <= j:
            total = alg.add(total, alg.mul(a, b))
        elif j < 0 <= i:
            total = alg.sub(total, alg.mul(a, b))
    return alg.abelianization.project(total)


def cocycle_identity(X: JMat, Y: JMat, Z: JMat) -> bool:
    ab = X.alg.abelianization
    total = ab.zero()
    for u, v, w in ((X, Y, Z), (Y, Z, X), (Z, X, Y)):
        total = tuple(s + t for s, t in zip(total, psi(bracket(u, v), w)))
    return not any(total)


@dataclass(frozen=True)
class ExtendedElement:
    """X + c with X in the fixed subalgebra and c in (R^ab)_1."""

    matrix: JMat
    central: Coords

    @classmethod
    def of(cls, matrix: JMat, central: Coords | None = None) -> "ExtendedElement":
        ab = matrix.alg.abelianization
        c = tuple(central) if central is not None else ab.zero()
        if not ab.is_fixed(c):
            raise NotInSubalgebra("central part is not fixed by the induced involution")
        return cls(matrix, c)

    def __add__(self, other: "ExtendedElement") -> "ExtendedElement":
        return ExtendedElement(self.matrix + other.matrix, tuple(a + b for a, b in zip(self.central, other.central)))

    def __bool__(self) -> bool:
        return bool(self.matrix) or any(self.central)


def extended_bracket(A: ExtendedElement, B: ExtendedElement, family: str) -> ExtendedElement:
    """[X + a, Y + b]' = [X, Y] + Psi(X, Y); central parts drop out."""
    flavor, l = FAMILY_TAU[family]
    for E in (A, B):
        if not in_fixed_subalgebra(E.matrix, flavor, l):
            raise NotInSubalgebra(f"{E.matrix!r} is not in the {family} subalgebra")
    X, Y = A.matrix, B.matrix
    ab = X.alg.abelianization
    return ExtendedElement(bracket(X, Y), ab.fixed_projection(psi(X, Y)))


def random_fixed(alg: InvolutiveAlgebra, family: str, rng: random.Random, shifts: int = 0) -> JMat:
    flavor, l = FAMILY_TAU[family]
    return fixed_point_project(random_jmat(alg, rng, entries=3, window=3, band=3, shifts=shifts), flavor, l)


def extended_jacobi(X: JMat, Y: JMat, Z: JMat, family: str) -> bool:
    els = [ExtendedElement.of(M) for M in (X, Y, Z)]
    total = None
    for a, b, c in ((0, 1, 2), (1, 2, 0), (2, 0, 1)):
        term = extended_bracket(extended_bracket(els[a], els[b], family), els[c], family)
        total = term if total is None else total + term
    return not total


def kernel_fixed_check(family: str, samples: int = 50, alg: InvolutiveAlgebra | None = None,
                       seed: int = 0, shifts: int = 0) -> bool:
    """Psi(X, Y) lies in (R^ab)_1 for sampled X, Y in the family's fixed subalgebra."""
    return kernel_counterexample(family, samples, alg, seed, shifts) is None



def minus_part(ab, q: Coords) -> Coords:
    """Component of ``q`` in the -1 eigenspace of the involution on R^ab."""
    return tuple(a - b for a, b in zip(q, ab.fixed_projection(q)))


def kernel_counterexample(family: str, samples: int = 50, alg: InvolutiveAlgebra | None = None,
                          seed: int = 0, shifts: int = 0):
    """First sampled pair whose Psi value leaves (R^ab)_1, or None."""
    from .algebra import catalog

    alg = alg or catalog("dual-minus")
    ab = alg.abelianization
    rng = random.Random(seed)
    for _ in range(samples):
        X = random_fixed(alg, family, rng, shifts)
        Y = random_fixed(alg, family, rng, shifts)
        value = psi(X, Y)
        if not ab.is_fixed(value):
            return X, Y, value
    return None


def odd_coboundary_check(samples: int = 50, alg: InvolutiveAlgebra | None = None, seed: int = 0,
                         shifts: int = 0) -> bool:
    """On the o_odd subalgebra the -1 part of Psi(X, Y) is -1/2 the -1 part of pi^ab([X, Y]_{0,0}).

    That is the coboundary of a linear functional, so the class of Psi still
    lies in (R^ab)_1 even where individual values do not.
    """
    from .algebra import catalog

    alg = alg or catalog("dual-minus")
    ab = alg.abelianization
    rng = random.Random(seed)
    for _ in range(samples):
        X = random_fixed(alg, "o_odd", rng, shifts)
        Y = random_fixed(alg, "o_odd", rng, shifts)
        lhs = minus_part(ab, psi(X, Y))
        rhs = minus_part(ab, ab.project(bracket(X, Y).entry(0, 0)))
        if lhs != tuple(-c / 2 for c in rhs):
            return False
    return True
