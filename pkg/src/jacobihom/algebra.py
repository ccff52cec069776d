"""Finite-dimensional associative unital algebras with an anti-involution.

An algebra is stored by structure constants in a fixed basis. Coefficients
are exact rationals. Elements are coordinate tuples wrapped in
:class:`AlgebraElement`; the algebra object itself works on raw tuples so the
hot loops elsewhere in the package can skip the wrapper.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import product
from pathlib import Path
from typing import Iterable, Sequence

from .linalg import nullspace, rref, solve


class AxiomViolation(ValueError):
    """Raised by the constructor when a defining axiom fails.

    ``kind`` is one of ``"associativity"``, ``"unit"``, ``"involution"`` or
    ``"shape"``; ``where`` names the failing basis tuple.
    """

    def __init__(self, kind: str, where: tuple, message: str = ""):
        self.kind = kind
        self.where = where
        super().__init__(f"{kind} fails at basis {where}" + (f": {message}" if message else ""))


Coords = tuple


def _frac(v) -> Fraction:
    return v if isinstance(v, Fraction) else Fraction(v)


class InvolutiveAlgebra:
    """Associative unital algebra over Q with a k-linear anti-involution.

    ``products[(i, j)]`` is the coordinate vector of ``e_i e_j``; missing keys
    mean zero. ``involution[i][j]`` is coordinate ``i`` of ``bar(e_j)``.
    All axioms are checked on construction.
    """

    def __init__(self, labels: Sequence[str], products: dict, unit: Sequence, involution: Sequence[Sequence], name: str = ""):
        self.labels = tuple(labels)
        self.dim = len(self.labels)
        self.name = name or "R"
        d = self.dim
        if d < 1:
            raise AxiomViolation("shape", (), "dimension must be positive")
        self.zero_coords = (Fraction(0),) * d
        table = {}
        for (i, j), vec in products.items():
            if not (0 <= i < d and 0 <= j < d) or len(vec) != d:
                raise AxiomViolation("shape", (i, j), "structure constant out of range")
            vec = tuple(_frac(v) for v in vec)
            if any(vec):
                table[i, j] = vec
        self._table = table
        # sparse form for fast multiplication
        self._sparse = {key: [(k, v) for k, v in enumerate(vec) if v] for key, vec in table.items()}
        if len(unit) != d or len(involution) != d or any(len(r) != d for r in involution):
            raise AxiomViolation("shape", (), "unit or involution has the wrong size")
        self.unit = tuple(_frac(v) for v in unit)
        self.involution = tuple(tuple(_frac(v) for v in row) for row in involution)
        self._bar_images = tuple(tuple(self.involution[i][j] for i in range(d)) for j in range(d))
        self._check_axioms()

    # -- raw coordinate arithmetic -------------------------------------------------
    def mul(self, a: Coords, b: Coords) -> Coords:
        out = [Fraction(0)] * self.dim
        for i, x in enumerate(a):
            if not x:
                continue
            for j, y in enumerate(b):
                if not y:
                    continue
                for k, v in self._sparse.get((i, j), ()):
                    out[k] += x * y * v
        return tuple(out)

    def bar(self, a: Coords) -> Coords:
        out = [Fraction(0)] * self.dim
        for j, x in enumerate(a):
            if x:
                for i, v in enumerate(self._bar_images[j]):
                    if v:
                        out[i] += x * v
        return tuple(out)

    @staticmethod
    def add(a: Coords, b: Coords) -> Coords:
        return tuple(x + y for x, y in zip(a, b))

    @staticmethod
    def sub(a: Coords, b: Coords) -> Coords:
        return tuple(x - y for x, y in zip(a, b))

    @staticmethod
    def scale(c, a: Coords) -> Coords:
        return tuple(c * x for x in a)

    def basis_coords(self, i: int) -> Coords:
        return tuple(Fraction(int(k == i)) for k in range(self.dim))

    def product_coords(self, i: int, j: int) -> Coords:
        return self._table.get((i, j), self.zero_coords)

    # -- element API ---------------------------------------------------------------
    def element(self, coords: Iterable) -> "AlgebraElement":
        return AlgebraElement(self, tuple(_frac(v) for v in coords))

    def basis(self) -> list["AlgebraElement"]:
        return [AlgebraElement(self, self.basis_coords(i)) for i in range(self.dim)]

    def one(self) -> "AlgebraElement":
        return AlgebraElement(self, self.unit)

    def zero(self) -> "AlgebraElement":
        return AlgebraElement(self, self.zero_coords)

    def parse(self, text: str) -> "AlgebraElement":
        """Parse a linear combination such as ``"1/2*eps - 3"`` or ``"e12 + e21"``.

        A bare rational means that multiple of the unit.
        """
        return AlgebraElement(self, parse_linear_combination(text, self))

    # -- axioms --------------------------------------------------------------------
    def _check_axioms(self) -> None:
        d = self.dim
        basis = [self.basis_coords(i) for i in range(d)]
        for i, j, k in product(range(d), repeat=3):
            left = self.mul(self.product_coords(i, j), basis[k])
            right = self.mul(basis[i], self.product_coords(j, k))
            if left != right:
                raise AxiomViolation("associativity", (i, j, k))
        for i in range(d):
            if self.mul(self.unit, basis[i]) != basis[i] or self.mul(basis[i], self.unit) != basis[i]:
                raise AxiomViolation("unit", (i,))
        for i in range(d):
            if self.bar(self.bar(basis[i])) != basis[i]:
                raise AxiomViolation("involution", (i,), "bar is not of order two")
        for i, j in product(range(d), repeat=2):
            lhs = self.bar(self.product_coords(i, j))
            rhs = self.mul(self.bar(basis[j]), self.bar(basis[i]))
            if lhs != rhs:
                raise AxiomViolation("involution", (i, j), "bar(ab) != bar(b) bar(a)")

    # -- derived structures ----------------------------------------------------------
    @cached_property
    def is_commutative(self) -> bool:
        return all(self.product_coords(i, j) == self.product_coords(j, i) for i in range(self.dim) for j in range(i))

    @cached_property
    def eigen_split(self) -> tuple[list[Coords], list[Coords]]:
        """Bases of R_1 and R_{-1}, the +1 and -1 eigenspaces of the involution."""
        return _eigenbasis(self, 1), _eigenbasis(self, -1)

    @cached_property
    def eigen_form(self) -> "EigenForm":
        """The same algebra rewritten in a basis of involution eigenvectors (R_1 first)."""
        return _eigen_form(self)

    @cached_property
    def abelianization(self) -> "Abelianization":
        return Abelianization(self)

    def __repr__(self) -> str:
        return f"InvolutiveAlgebra({self.name!r}, dim={self.dim})"


def _eigenbasis(alg: InvolutiveAlgebra, sign: int) -> list[Coords]:
    d = alg.dim
    # kernel of (bar - sign*id)
    mat = [[alg.involution[i][j] - (sign if i == j else 0) for j in range(d)] for i in range(d)]
    vecs = nullspace(mat, d)
    # prefer vectors that are plain basis elements for readable labels
    return [tuple(v) for v in vecs]


class AlgebraElement:
    """An element of an :class:`InvolutiveAlgebra` (immutable, hashable)."""

    __slots__ = ("alg", "coords")

    def __init__(self, alg: InvolutiveAlgebra, coords: Coords):
        if len(coords) != alg.dim:
            raise ValueError("coordinate length does not match the algebra dimension")
        self.alg = alg
        self.coords = coords

    def __add__(self, other):
        return AlgebraElement(self.alg, self.alg.add(self.coords, other.coords))

    def __sub__(self, other):
        return AlgebraElement(self.alg, self.alg.sub(self.coords, other.coords))

    def __neg__(self):
        return AlgebraElement(self.alg, tuple(-x for x in self.coords))

    def __mul__(self, other):
        if isinstance(other, AlgebraElement):
            return AlgebraElement(self.alg, self.alg.mul(self.coords, other.coords))
        return AlgebraElement(self.alg, self.alg.scale(_frac(other), self.coords))

    def __rmul__(self, c):
        return AlgebraElement(self.alg, self.alg.scale(_frac(c), self.coords))

    def bar(self) -> "AlgebraElement":
        return AlgebraElement(self.alg, self.alg.bar(self.coords))

    def __bool__(self) -> bool:
        return any(self.coords)

    def __eq__(self, other) -> bool:
        return isinstance(other, AlgebraElement) and self.alg is other.alg and self.coords == other.coords

    def __hash__(self) -> int:
        return hash(self.coords)

    def __repr__(self) -> str:
        return format_coords(self.coords, self.alg.labels)


def format_coords(coords: Coords, labels: Sequence[str]) -> str:
    terms = []
    for c, lab in zip(coords, labels):
        if c:
            terms.append(f"{c}*{lab}" if c != 1 else lab)
    return " + ".join(terms) if terms else "0"


_TERM = re.compile(r"\s*([+-])?\s*([^+-]+)")


def parse_linear_combination(text: str, alg: InvolutiveAlgebra) -> Coords:
    """Coordinates of a ``+``/``-`` separated sum of ``[rational*]label`` terms."""
    text = text.strip()
    if not text:
        raise ValueError("empty coefficient expression")
    out = list(alg.zero_coords)
    index = {lab: i for i, lab in enumerate(alg.labels)}
    pos = 0
    while pos < len(text):
        m = _TERM.match(text, pos)
        if not m or m.end() == pos:
            raise ValueError(f"cannot parse coefficient {text!r}")
        pos = m.end()
        sign = -1 if m.group(1) == "-" else 1
        body = m.group(2).strip()
        if "*" in body:
            num, lab = (s.strip() for s in body.split("*", 1))
            coef = Fraction(num)
        elif body in index:
            coef, lab = Fraction(1), body
        else:
            coef, lab = Fraction(body), None
        if lab is None:
            vec = alg.unit
        elif lab in index:
            vec = alg.basis_coords(index[lab])
        else:
            raise ValueError(f"unknown basis label {lab!r}")
        for k, v in enumerate(vec):
            out[k] += sign * coef * v
    return tuple(out)


@dataclass(frozen=True)
class EigenForm:
    """An algebra re-expressed in an involution eigenbasis.

    ``algebra`` has a diagonal involution with ``signs[i] = +-1``; ``to_eigen``
    and ``from_eigen`` convert coordinate tuples between the two bases.
    """

    algebra: InvolutiveAlgebra
    signs: tuple[int, ...]
    change: tuple[tuple[Fraction, ...], ...]  # columns: eigenvectors in original coordinates
    inverse: tuple[tuple[Fraction, ...], ...]

    def to_eigen(self, coords: Coords) -> Coords:
        return tuple(sum((row[j] * coords[j] for j in range(len(coords))), Fraction(0)) for row in self.inverse)

    def from_eigen(self, coords: Coords) -> Coords:
        d = len(coords)
        return tuple(sum((self.change[i][j] * coords[j] for j in range(d)), Fraction(0)) for i in range(d))


def _eigen_form(alg: InvolutiveAlgebra) -> EigenForm:
    plus, minus = alg.eigen_split
    vecs = plus + minus
    signs = (1,) * len(plus) + (-1,) * len(minus)
    d = alg.dim
    change = tuple(tuple(vecs[j][i] for j in range(d)) for i in range(d))
    inv_rows = []
    for i in range(d):
        e = [Fraction(int(k == i)) for k in range(d)]
        x = solve([list(r) for r in change], e)
        inv_rows.append(x)
    # inverse matrix: columns are solutions; transpose into rows
    inverse = tuple(tuple(inv_rows[j][i] for j in range(d)) for i in range(d))

    def to_e(c):
        return tuple(sum((inverse[i][j] * c[j] for j in range(d)), Fraction(0)) for i in range(d))

    products = {}
    for a in range(d):
        for b in range(d):
            prod = alg.mul(vecs[a], vecs[b])
            if any(prod):
                products[a, b] = to_e(prod)
    labels = []
    for v, s in zip(vecs, signs):
        nz = [k for k, x in enumerate(v) if x]
        if len(nz) == 1 and v[nz[0]] == 1:
            labels.append(alg.labels[nz[0]])
        else:
            labels.append(format_coords(v, alg.labels).replace(" ", ""))
    involution = [[Fraction(signs[i]) if i == j else Fraction(0) for j in range(d)] for i in range(d)]
    eig = InvolutiveAlgebra(labels, products, to_e(alg.unit), involution, name=alg.name)
    return EigenForm(eig, signs, change, inverse)


class Abelianization:
    """R^ab = R/[R,R] with its induced involution and fixed part (R^ab)_1.

    Elements of R^ab are coordinate tuples in the quotient basis, which is
    the set of non-pivot columns of the echelonized commutator span.
    """

    def __init__(self, alg: InvolutiveAlgebra):
        self.alg = alg
        d = alg.dim
        comms = []
        for i in range(d):
            for j in range(i + 1, d):
                c = alg.sub(alg.product_coords(i, j), alg.product_coords(j, i))
                if any(c):
                    comms.append(list(c))
        self._rows, self._pivots = rref(comms, d) if comms else ([], [])
        self.commutator_dim = len(self._pivots)
        self.quotient_columns = [c for c in range(d) if c not in set(self._pivots)]
        self.dim = len(self.quotient_columns)
        self.basis = [alg.basis_coords(c) for c in self.quotient_columns]
        # induced involution on the quotient, as a matrix on quotient coordinates
        self.involution = [self.project(alg.bar(b)) for b in self.basis]
        m = [[self.involution[j][i] - (1 if i == j else 0) for j in range(self.dim)] for i in range(self.dim)]
        self.fixed_basis = [tuple(v) for v in nullspace(m, self.dim)] if self.dim else []

    def project(self, coords: Coords) -> Coords:
        """pi^ab: reduce modulo [R,R] and read the quotient coordinates."""
        v = list(coords)
        for row, pc in zip(self._rows, self._pivots):
            if v[pc]:
                f = v[pc]
                v = [a - f * b for a, b in zip(v, row)]
        return tuple(v[c] for c in self.quotient_columns)

    def bar(self, q: Coords) -> Coords:
        out = [Fraction(0)] * self.dim
        for j, x in enumerate(q):
            if x:
                for i, v in enumerate(self.involution[j]):
                    out[i] += x * v
        return tuple(out)

    def fixed_projection(self, q: Coords) -> Coords:
        """Reynolds projector (1 + bar)/2 onto (R^ab)_1."""
        b = self.bar(q)
        return tuple((x + y) / 2 for x, y in zip(q, b))

    def is_fixed(self, q: Coords) -> bool:
        return self.bar(q) == tuple(q)

    def zero(self) -> Coords:
        return (Fraction(0),) * self.dim


def make_algebra(labels: Sequence[str], products: dict, unit: Sequence, involution: Sequence[Sequence], name: str = "") -> InvolutiveAlgebra:
    return InvolutiveAlgebra(labels, products, unit, involution, name=name)


def eigen_split(alg: InvolutiveAlgebra) -> tuple[list[Coords], list[Coords]]:
    return alg.eigen_split


def abelianization_fixed(alg: InvolutiveAlgebra) -> tuple[list[Coords], list[Coords], Abelianization]:
    ab = alg.abelianization
    return ab.basis, ab.fixed_basis, ab


# -- catalog ---------------------------------------------------------------------------

def _vec(d: int, entries: dict) -> tuple:
    return tuple(Fraction(entries.get(k, 0)) for k in range(d))


def _diag(signs: Sequence[int]) -> list[list[int]]:
    d = len(signs)
    return [[signs[i] if i == j else 0 for j in range(d)] for i in range(d)]


def base_field() -> InvolutiveAlgebra:
    return make_algebra(["1"], {(0, 0): (1,)}, (1,), [[1]], name="k")


def truncated_polynomials(m: int, sign: int) -> InvolutiveAlgebra:
    """k[t]/(t^m) with bar(t) = sign*t (so bar(t^i) = sign^i t^i)."""
    labels = ["1"] + [f"t{i}" if i > 1 else "t" for i in range(1, m)]
    products = {(i, j): _vec(m, {i + j: 1}) for i in range(m) for j in range(m) if i + j < m}
    name = f"trunc{m}-{'plus' if sign > 0 else 'minus'}"
    return make_algebra(labels, products, _vec(m, {0: 1}), _diag([sign**i for i in range(m)]), name=name)


def dual_numbers(sign: int) -> InvolutiveAlgebra:
    a = truncated_polynomials(2, sign)
    return make_algebra(["1", "eps"], a._table, a.unit, a.involution, name=f"dual-{'plus' if sign > 0 else 'minus'}")


def matrix_algebra_2(involution: str = "transpose") -> InvolutiveAlgebra:
    """M_2(k) in the basis e11, e12, e21, e22; ``involution`` is ``transpose`` or ``identity``."""
    labels = ["e11", "e12", "e21", "e22"]
    idx = {(1, 1): 0, (1, 2): 1, (2, 1): 2, (2, 2): 3}
    products = {}
    for (a, b), i in idx.items():
        for (c, e), j in idx.items():
            if b == c:
                products[i, j] = _vec(4, {idx[a, e]: 1})
    if involution == "transpose":
        perm = [0, 2, 1, 3]
        inv = [[int(perm[j] == i) for j in range(4)] for i in range(4)]
    elif involution == "identity":
        inv = _diag([1, 1, 1, 1])
    else:
        raise ValueError(f"unknown involution {involution!r}")
    return make_algebra(labels, products, _vec(4, {0: 1, 3: 1}), inv, name="m2" if involution == "transpose" else "m2-id")


def group_algebra_z2() -> InvolutiveAlgebra:
    """k[Z/2] with bar(g) = g^{-1} = g."""
    products = {(0, 0): (1, 0), (0, 1): (0, 1), (1, 0): (0, 1), (1, 1): (1, 0)}
    return make_algebra(["1", "g"], products, (1, 0), _diag([1, 1]), name="kz2")


CATALOG_NAMES = ("k", "dual-plus", "dual-minus", "trunc3-plus", "trunc3-minus", "m2", "kz2")

_TRUNC = re.compile(r"^trunc(\d+)-(plus|minus)$")


def catalog(name: str) -> InvolutiveAlgebra:
    """Built-in algebras by name; see ``CATALOG_NAMES`` (``truncM-plus``/``truncM-minus`` for any M >= 1)."""
    if name == "k":
        return base_field()
    if name in ("dual-plus", "dual-minus"):
        return dual_numbers(1 if name.endswith("plus") else -1)
    if name == "m2":
        return matrix_algebra_2("transpose")
    if name == "kz2":
        return group_algebra_z2()
    m = _TRUNC.match(name)
    if m:
        return truncated_polynomials(int(m.group(1)), 1 if m.group(2) == "plus" else -1)
    raise KeyError(f"unknown catalog algebra {name!r}")


# -- text format -------------------------------------------------------------------------

def load_algebra(path: str | Path) -> InvolutiveAlgebra:
    """Read an algebra from the sectioned text format.

    Sections are introduced by ``[dimension]``, ``[labels]``, ``[products]``,
    ``[involution]`` and optionally ``[unit]`` and ``[name]``. Products are
    lines ``i j k value`` meaning ``e_i e_j`` has ``value`` at ``e_k``;
    involution lines ``i j value`` set coordinate ``i`` of ``bar(e_j)``.
    Values are rationals written ``p/q``. ``#`` starts a comment.
    """
    return parse_algebra(Path(path).read_text(), default_name=Path(path).stem)


def parse_algebra(text: str, default_name: str = "R") -> InvolutiveAlgebra:
    sections: dict[str, list[str]] = {}
    current = None
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("[") and line.endswith("]"):
            current = line[1:-1].strip().lower()
            sections.setdefault(current, [])
            continue
        if current is None:
            raise ValueError(f"content before first section: {line!r}")
        sections[current].append(line)
    unknown = set(sections) - {"dimension", "labels", "products", "involution", "unit", "name"}
    if unknown:
        raise ValueError(f"unknown sections {sorted(unknown)}")
    try:
        d = int(sections["dimension"][0])
    except (KeyError, IndexError):
        raise ValueError("missing [dimension]") from None
    labels = " ".join(sections.get("labels", [])).split() or [f"e{i}" for i in range(d)]
    if len(labels) != d:
        raise ValueError("label count does not match dimension")
    products: dict = {}
    for line in sections.get("products", []):
        i, j, k, v = line.split()
        vec = list(products.get((int(i), int(j)), (Fraction(0),) * d))
        vec[int(k)] += Fraction(v)
        products[int(i), int(j)] = tuple(vec)
    involution = [[Fraction(0)] * d for _ in range(d)]
    for line in sections.get("involution", []):
        i, j, v = line.split()
        involution[int(i)][int(j)] += Fraction(v)
    if "unit" in sections:
        unit = tuple(Fraction(v) for v in " ".join(sections["unit"]).split())
    else:
        unit = _infer_unit(d, products)
    name = sections.get("name", [default_name])[0]
    return make_algebra(labels, products, unit, involution, name=name)


def _infer_unit(d: int, products: dict) -> tuple:
    # u e_j = e_j and e_j u = e_j for all j, linear in u
    rows, rhs = [], []
    for j in range(d):
        for k in range(d):
            rows.append([products.get((i, j), (0,) * d)[k] for i in range(d)])
            rhs.append(Fraction(int(j == k)))
            rows.append([products.get((j, i), (0,) * d)[k] for i in range(d)])
            rhs.append(Fraction(int(j == k)))
    x = solve(rows, rhs)
    if x is None:
        raise AxiomViolation("unit", (), "no two-sided unit exists")
    return tuple(x)


def dump_algebra(alg: InvolutiveAlgebra) -> str:
    lines = ["[name]", alg.name, "[dimension]", str(alg.dim), "[labels]", " ".join(alg.labels), "[unit]",
             " ".join(str(v) for v in alg.unit), "[products]"]
    for (i, j), vec in sorted(alg._table.items()):
        for k, v in enumerate(vec):
            if v:
                lines.append(f"{i} {j} {k} {v}")
    lines.append("[involution]")
    for i in range(alg.dim):
        for j in range(alg.dim):
            if alg.involution[i][j]:
                lines.append(f"{i} {j} {alg.involution[i][j]}")
    return "\n".join(lines) + "\n"
