"""The isomorphisms Phi_I from Z x Z matrices to |I| x |I| block matrices with JMat entries.

``E_{m + r|I|, n + s|I|}(c)`` is sent to ``e_{m,n}(E_{r,s}(c))`` with ``m, n`` in
the window ``I``. Restricted to the fixed-point subalgebras of the three
anti-involutions, the image satisfies the finite defining relation of the
corresponding classical family with the block transpose built from ``*``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Sequence

from .algebra import InvolutiveAlgebra
from .jmat import FAMILY_TAU, JMat, bracket, fixed_point_project, random_jmat, star
from .lie import family_window, gram


class ShiftPartPresent(ValueError):
    pass


def split_index(I: Sequence[int], a: int) -> tuple[int, int]:
    """The unique ``(m, r)`` with ``m`` in ``I`` and ``a = m + r|I|``, by enumeration over ``I``."""
    size = len(I)
    hits = [(m, (a - m) // size) for m in I if (a - m) % size == 0]
    if len(hits) != 1:
        raise ValueError(f"{list(I)} is not a set of representatives mod {size}")
    return hits[0]


@dataclass(frozen=True)
class BlockMatrix:
    """|I| x |I| matrix with JMat entries, stored as ``{(m, n): JMat}`` with zero blocks dropped."""

    alg: InvolutiveAlgebra
    window: tuple
    blocks: tuple

    @classmethod
    def of(cls, alg: InvolutiveAlgebra, window: Sequence[int], blocks: dict) -> "BlockMatrix":
        w = tuple(window)
        for m, n in blocks:
            if m not in w or n not in w:
                raise ValueError(f"block ({m}, {n}) outside the window")
        return cls(alg, w, tuple(sorted((k, v) for k, v in blocks.items() if v)))

    def as_dict(self) -> dict:
        return dict(self.blocks)

    def block(self, m: int, n: int) -> JMat:
        return self.as_dict().get((m, n), JMat.zero(self.alg))

    def __bool__(self) -> bool:
        return bool(self.blocks)

    def __add__(self, other: "BlockMatrix") -> "BlockMatrix":
        out = self.as_dict()
        for k, v in other.blocks:
            out[k] = out[k] + v if k in out else v
        return BlockMatrix.of(self.alg, self.window, out)

    def __neg__(self) -> "BlockMatrix":
        return BlockMatrix.of(self.alg, self.window, {k: -v for k, v in self.blocks})

    def __sub__(self, other: "BlockMatrix") -> "BlockMatrix":
        return self + (-other)

    def __mul__(self, other: "BlockMatrix") -> "BlockMatrix":
        out: dict = {}
        right = other.as_dict()
        for (m, k), u in self.blocks:
            for n in self.window:
                v = right.get((k, n))
                if v is not None:
                    p = u * v
                    out[m, n] = out[m, n] + p if (m, n) in out else p
        return BlockMatrix.of(self.alg, self.window, out)

    def star_transpose(self) -> "BlockMatrix":
        """Block transpose with ``*`` applied to every block."""
        return BlockMatrix.of(self.alg, self.window, {(n, m): star(v) for (m, n), v in self.blocks})

    def scaled_rows(self, form: dict) -> "BlockMatrix":
        """J B for a signed permutation form ``{row: (col, sign)}`` with scalar entries."""
        out = {}
        for (k, n), v in self.blocks:
            for row, (col, s) in form.items():
                if col == k:
                    out[row, n] = v.scale(s)
        return BlockMatrix.of(self.alg, self.window, out)

    def scaled_cols(self, form: dict) -> "BlockMatrix":
        """B J for the same kind of form."""
        out = {}
        for (m, k), v in self.blocks:
            for row, (col, s) in form.items():
                if row == k:
                    out[m, col] = v.scale(s)
        return BlockMatrix.of(self.alg, self.window, out)


def block_bracket(A: BlockMatrix, B: BlockMatrix) -> BlockMatrix:
    return A * B - B * A


def phi(I: Sequence[int], X: JMat) -> BlockMatrix:
    if not X.is_finite:
        raise ShiftPartPresent("Phi_I is applied entry-wise; shift patterns have no finite image here")
    blocks: dict = {}
    for (a, b), c in X.finite.items():
        m, r = split_index(I, a)
        n, s = split_index(I, b)
        blocks.setdefault((m, n), {})[r, s] = c
    return BlockMatrix.of(X.alg, I, {k: JMat(X.alg, v) for k, v in blocks.items()})


def phi_inverse(B: BlockMatrix) -> JMat:
    size = len(B.window)
    fin: dict = {}
    for (m, n), v in B.blocks:
        if not v.is_finite:
            raise ShiftPartPresent("only finite blocks pull back to finite-support matrices")
        for (r, s), c in v.finite.items():
            fin[m + r * size, n + s * size] = c
    return JMat(B.alg, fin)


def family_form(family: str, n: int) -> dict:
    """The finite form J^B, J^C or J^D as ``{row: (col, sign)}``."""
    return gram(family, n)


def defining_defect(family: str, n: int, B: BlockMatrix) -> BlockMatrix:
    """t(B) J + J B with the ``*`` block transpose; zero exactly on the family's subalgebra."""
    J = family_form(family, n)
    return B.star_transpose().scaled_cols(J) + B.scaled_rows(J)


def restriction_generator(family: str, n: int, X: JMat) -> JMat:
    """The fixed-subalgebra part (X - tau X)/2 of X for the family's anti-involution."""
    flavor, l = FAMILY_TAU[family]
    return fixed_point_project(X, flavor, l)


@dataclass
class CheckReport:
    ok: bool
    checked: int
    counterexample: str | None = None

    def to_dict(self) -> dict:
        return {"ok": self.ok, "checked": self.checked, "counterexample": self.counterexample}


def restriction_check(family: str, n: int, samples: int = 50, seed: int = 0,
                      alg: InvolutiveAlgebra | None = None) -> CheckReport:
    """Project random finite X into the family's fixed subalgebra and test the image relation."""
    from .algebra import catalog

    if family not in FAMILY_TAU:
        raise ValueError(f"family must be one of {sorted(FAMILY_TAU)}")
    alg = alg or catalog("dual-minus")
    I = family_window(family, n)
    rng = random.Random(seed)
    size = len(I)
    for k in range(samples):
        X = random_jmat(alg, rng, entries=3, window=3 * size, band=3 * size)
        Y = restriction_generator(family, n, X)
        if defining_defect(family, n, phi(I, Y)):
            return CheckReport(False, k + 1, repr(Y))
    return CheckReport(True, samples)


def bracket_preservation(I: Sequence[int], pairs) -> CheckReport:
    count = 0
    for X, Y in pairs:
        count += 1
        if phi(I, bracket(X, Y)) != block_bracket(phi(I, X), phi(I, Y)):
            return CheckReport(False, count, f"{X!r} ; {Y!r}")
    return CheckReport(True, count)


def random_pairs(alg: InvolutiveAlgebra, I: Sequence[int], count: int, seed: int = 0):
    rng = random.Random(seed)
    band = 3 * len(I)
    for _ in range(count):
        yield (random_jmat(alg, rng, entries=3, window=band, band=band),
               random_jmat(alg, rng, entries=3, window=band, band=band))
