"""Exact and modular linear algebra on sparse rows.

Rows are ``dict[int, value]`` maps from column index to a nonzero entry.
Everything here is exact: rationals are ``fractions.Fraction`` and modular
work uses Python integers, so no floating point is ever involved.
"""

from __future__ import annotations

import random
from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

from sympy import nextprime

SparseRow = dict


def random_prime(rng: random.Random, bits: int = 62) -> int:
    """Prime drawn from ``[2**(bits-1), 2**bits)`` using ``rng`` for the start point."""
    lo = 1 << (bits - 1)
    p = int(nextprime(rng.randrange(lo, (1 << bits) - (1 << (bits - 8)))))
    return p


def _to_mod(value, p: int) -> int:
    if isinstance(value, Fraction):
        return value.numerator % p * pow(value.denominator % p, -1, p) % p
    return int(value) % p


def rank_mod_p(rows: Iterable[SparseRow], p: int) -> int:
    """Rank over GF(p) of a sparse matrix given by its rows.

    Online echelon form: each incoming row is reduced against the pivots
    found so far, keyed by leading column. Entries may be ints or Fractions;
    a Fraction whose denominator vanishes mod p raises ZeroDivisionError.
    """
    pivots: dict[int, dict[int, int]] = {}
    for raw in rows:
        row = {}
        for c, v in raw.items():
            v = _to_mod(v, p)
            if v:
                row[c] = v
        while row:
            lead = min(row)
            piv = pivots.get(lead)
            if piv is None:
                inv = pow(row[lead], -1, p)
                pivots[lead] = {c: v * inv % p for c, v in row.items()}
                break
            f = row[lead]
            for c, v in piv.items():
                nv = (row.get(c, 0) - f * v) % p
                if nv:
                    row[c] = nv
                else:
                    row.pop(c, None)
    return len(pivots)


def _integer_row(raw: SparseRow) -> dict[int, int]:
    den = 1
    for v in raw.values():
        if isinstance(v, Fraction):
            den = den * v.denominator // gcd(den, v.denominator)
    row = {c: int(v * den) for c, v in raw.items() if v}
    return _primitive(row)


def _primitive(row: dict[int, int]) -> dict[int, int]:
    g = 0
    for v in row.values():
        g = gcd(g, v)
        if g == 1:
            return row
    if g > 1:
        row = {c: v // g for c, v in row.items()}
    return row


def rank_exact(rows: Iterable[SparseRow]) -> int:
    """Rank over Q by fraction-free elimination on integer rows.

    Rational rows are cleared of denominators first; after each elimination
    step the row is divided by the gcd of its entries to keep coefficients small.
    """
    pivots: dict[int, dict[int, int]] = {}
    for raw in rows:
        row = _integer_row(raw)
        while row:
            lead = min(row)
            piv = pivots.get(lead)
            if piv is None:
                pivots[lead] = row
                break
            a, b = piv[lead], row[lead]
            g = gcd(a, b)
            a, b = a // g, b // g
            new = {c: a * v for c, v in row.items()}
            for c, v in piv.items():
                nv = new.get(c, 0) - b * v
                if nv:
                    new[c] = nv
                else:
                    new.pop(c, None)
            row = _primitive(new)
    return len(pivots)


def rref(matrix: Sequence[Sequence], ncols: int | None = None) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form over Q of a dense matrix; returns (nonzero rows, pivot columns)."""
    m = [[Fraction(v) for v in row] for row in matrix]
    if ncols is None:
        ncols = len(m[0]) if m else 0
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        pr = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if pr is None:
            continue
        m[r], m[pr] = m[pr], m[r]
        inv = 1 / m[r][c]
        m[r] = [v * inv for v in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def nullspace(matrix: Sequence[Sequence], ncols: int) -> list[list[Fraction]]:
    """Basis of {v : M v = 0}; one vector per free column, equal to 1 there and 0 at other free columns."""
    return nullspace_with_free(matrix, ncols)[0]


def nullspace_with_free(matrix: Sequence[Sequence], ncols: int) -> tuple[list[list[Fraction]], list[int]]:
    rows, pivots = rref(matrix, ncols) if matrix else ([], [])
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for row, pc in zip(rows, pivots):
            v[pc] = -row[f]
        basis.append(v)
    return basis, free


def dense_rank(matrix: Sequence[Sequence]) -> int:
    return len(rref(matrix)[1]) if matrix else 0


def solve(matrix: Sequence[Sequence], rhs: Sequence) -> list[Fraction] | None:
    """One solution of M x = rhs over Q, or None if inconsistent."""
    ncols = len(matrix[0]) if matrix else 0
    aug = [list(row) + [b] for row, b in zip(matrix, rhs)]
    rows, pivots = rref(aug, ncols + 1)
    if ncols in pivots:
        return None
    x = [Fraction(0)] * ncols
    for row, pc in zip(rows, pivots):
        x[pc] = row[ncols]
    return x


class Echelon:
    """Incremental echelon basis over Q of sparse vectors, each tagged with a label.

    ``reduce`` expresses a vector against the stored basis and returns the
    remainder together with the coefficients used per tag.
    """

    def __init__(self):
        self.rows: dict[int, tuple[dict, object]] = {}

    def __len__(self) -> int:
        return len(self.rows)

    def reduce(self, vec: dict) -> tuple[dict, dict]:
        v = {c: Fraction(x) for c, x in vec.items() if x}
        used: dict = {}
        while v:
            lead = min(v)
            hit = self.rows.get(lead)
            if hit is None:
                break
            row, tag = hit
            f = v[lead] / row[lead]
            used[tag] = used.get(tag, 0) + f
            for c, x in row.items():
                nx = v.get(c, 0) - f * x
                if nx:
                    v[c] = nx
                else:
                    v.pop(c, None)
        return v, used

    def add(self, vec: dict, tag) -> bool:
        """Insert ``vec`` if independent; returns whether it was added.

        The stored row is the reduced remainder, so it differs from ``vec``
        by a combination of earlier rows.
        """
        rem, _ = self.reduce(vec)
        if not rem:
            return False
        self.rows[min(rem)] = (rem, tag)
        return True


def kernel_vectors(columns: Sequence[dict]) -> list[dict]:
    """Basis of the kernel of the matrix whose j-th column is ``columns[j]``.

    Kernel vectors are sparse maps ``j -> coefficient``.
    """
    pivots: dict[int, tuple[dict, dict]] = {}
    kernel = []
    for j, col in enumerate(columns):
        v = {c: Fraction(x) for c, x in col.items() if x}
        tag = {j: Fraction(1)}
        while v:
            lead = min(v)
            hit = pivots.get(lead)
            if hit is None:
                pivots[lead] = (v, tag)
                break
            row, rtag = hit
            f = v[lead] / row[lead]
            for c, x in row.items():
                nx = v.get(c, 0) - f * x
                if nx:
                    v[c] = nx
                else:
                    v.pop(c, None)
            for c, x in rtag.items():
                nx = tag.get(c, 0) - f * x
                if nx:
                    tag[c] = nx
                else:
                    tag.pop(c, None)
        else:
            kernel.append(tag)
    return kernel
