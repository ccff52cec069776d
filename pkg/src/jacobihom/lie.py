"""Finite-dimensional Lie algebras gl, o_{2n+1}, sp_{2n}, o_{2n} over an involutive algebra.

The classical families are cut out of gl_I(R) by ``t(X) J + J X = 0``. We
solve that linear condition exactly instead of writing basis formulas by
hand; the closed-form summand pattern is kept only as an independent
cross-check (:func:`summand_span_check`).

Coefficients live in the eigen form of R (an involution-diagonal basis, R_1
first), so a basis element is a sparse map ``(i, j, alpha) -> rational``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Sequence

from .algebra import InvolutiveAlgebra
from .linalg import nullspace_with_free, rank_exact

FAMILIES = ("gl", "o_odd", "sp", "o_even")


class InvalidParameter(ValueError):
    pass


class FamilyMismatch(ValueError):
    pass


def index_window(size: int) -> list[int]:
    """I_{2m+1} = [-m, m] for odd size, I_{2m} = [-m, m) for even size."""
    m = size // 2
    return list(range(-m, m + 1)) if size % 2 else list(range(-m, m))


def family_window(family: str, n: int) -> list[int]:
    if family == "gl":
        return index_window(n)
    if family == "o_odd":
        return index_window(2 * n + 1)
    if family in ("sp", "o_even"):
        return index_window(2 * n)
    raise InvalidParameter(f"unknown family {family!r}")


def gram(family: str, n: int) -> dict[int, tuple[int, int]]:
    """The form J as ``row -> (column, entry)``: J_n^B, J_n^C or J_n^D."""
    idx = family_window(family, n)
    if family == "o_odd":
        return {i: (-i, 1) for i in idx}
    if family == "sp":
        return {i: (-i - 1, -1 if i % 2 else 1) for i in idx}
    if family == "o_even":
        return {i: (-i - 1, 1) for i in idx}
    raise InvalidParameter(f"family {family!r} has no form")


def partner_sign(family: str, r: int, s: int) -> tuple[tuple[int, int], int]:
    """Partner position and sign in the summand pattern X = e_{r,s}(a) - sign * e_partner(bar a)."""
    if family == "o_odd":
        return (-s, -r), 1
    if family == "sp":
        return (-s - 1, -r - 1), (-1 if (r + s) % 2 else 1)
    if family == "o_even":
        return (-s - 1, -r - 1), 1
    raise InvalidParameter(family)


def cartan_coordinate(family: str, n: int, i: int) -> tuple[int, ...]:
    """Weight of the standard vector e_i under the diagonal Cartan subalgebra."""
    if family == "gl":
        idx = family_window(family, n)
        return tuple(int(k == i) for k in idx)
    vec = [0] * n
    if family == "o_odd":
        if i > 0:
            vec[i - 1] = 1
        elif i < 0:
            vec[-i - 1] = -1
    else:
        if i >= 0:
            vec[i] = 1
        else:
            vec[-i - 1] = -1
    return tuple(vec)


Element = dict  # (i, j, alpha) -> Fraction


@dataclass
class LiePresentation:
    """Basis with exact structure constants ``[b_a, b_b] = sum_c consts[a, b][c] b_c`` (a < b)."""

    family: str
    n: int
    algebra: InvolutiveAlgebra
    window: list[int]
    basis: list[Element]
    free: list[tuple[int, int, int]]
    consts: dict = field(default_factory=dict)
    weights: list | None = None

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def ring(self) -> InvolutiveAlgebra:
        return self.algebra.eigen_form.algebra

    def bracket_elements(self, X: Element, Y: Element) -> Element:
        return matrix_bracket(self.ring, X, Y)

    def coordinates(self, X: Element, check: bool = True) -> dict[int, Fraction]:
        """Basis coordinates of an element of the algebra (read at the free variables)."""
        coords = {k: X[f] for k, f in enumerate(self.free) if X.get(f)}
        if check:
            rebuilt: Element = {}
            for k, c in coords.items():
                for key, v in self.basis[k].items():
                    rebuilt[key] = rebuilt.get(key, 0) + c * v
            if {k: v for k, v in rebuilt.items() if v} != {k: v for k, v in X.items() if v}:
                raise ValueError("element is not in the span of the basis")
        return coords

    def bracket(self, a: int, b: int) -> dict[int, Fraction]:
        if a == b:
            return {}
        if a < b:
            return self.consts.get((a, b), {})
        return {k: -v for k, v in self.consts.get((b, a), {}).items()}

    def bracket_coords(self, x: dict, y: dict) -> dict[int, Fraction]:
        out: dict[int, Fraction] = {}
        for a, ca in x.items():
            for b, cb in y.items():
                for c, v in self.bracket(a, b).items():
                    out[c] = out.get(c, 0) + ca * cb * v
        return {k: v for k, v in out.items() if v}

    def export(self) -> str:
        """Sparse structure-constant text: header comments then ``i j k value`` lines."""
        lines = [f"# family {self.family}", f"# n {self.n}", f"# R {self.algebra.name}", f"# dim {self.dim}"]
        for (a, b), vec in sorted(self.consts.items()):
            for c, v in sorted(vec.items()):
                lines.append(f"{a} {b} {c} {v}")
        return "\n".join(lines) + "\n"


def matrix_bracket(ring: InvolutiveAlgebra, X: Element, Y: Element) -> Element:
    out: Element = {}
    rows_y: dict = {}
    for (k, l, beta), v in Y.items():
        rows_y.setdefault(k, []).append((l, beta, v))
    rows_x: dict = {}
    for (k, l, beta), v in X.items():
        rows_x.setdefault(k, []).append((l, beta, v))
    for (i, j, a), u in X.items():
        for l, b, v in rows_y.get(j, ()):
            for c, w in enumerate(ring.product_coords(a, b)):
                if w:
                    out[i, l, c] = out.get((i, l, c), 0) + u * v * w
    for (i, j, a), u in Y.items():
        for l, b, v in rows_x.get(j, ()):
            for c, w in enumerate(ring.product_coords(a, b)):
                if w:
                    out[i, l, c] = out.get((i, l, c), 0) - u * v * w
    return {k: v for k, v in out.items() if v}


def defining_relation(family: str, n: int, signs: Sequence[int], X: Element) -> Element:
    """t(X) J + J X as a sparse element (zero iff X lies in the family)."""
    J = gram(family, n)
    out: Element = {}
    for (a, b, alpha), v in X.items():
        col, ja = J[a]
        # t(e_ab(x)) J -> s_alpha J_a e_{b, sigma(a)}
        key = (b, col, alpha)
        out[key] = out.get(key, 0) + signs[alpha] * ja * v
        # J e_ab -> J_{sigma(a)} e_{sigma(a), b}
        key = (col, b, alpha)
        out[key] = out.get(key, 0) + J[col][1] * v
    return {k: v for k, v in out.items() if v}


def build(family: str, n: int, algebra: InvolutiveAlgebra, structure_constants: bool = True) -> LiePresentation:
    """Basis and structure constants of gl_n(R), o_{2n+1}(R), sp_{2n}(R) or o_{2n}(R)."""
    if family not in FAMILIES:
        raise InvalidParameter(f"unknown family {family!r}")
    if n < 1:
        raise InvalidParameter("n must be at least 1")
    eig = algebra.eigen_form
    signs = eig.signs
    window = family_window(family, n)
    d = algebra.dim
    variables = [(i, j, a) for i in window for j in window for a in range(d)]
    basis: list[Element] = []
    free: list = []
    if family == "gl":
        for v in variables:
            basis.append({v: Fraction(1)})
            free.append(v)
    else:
        # union-find over variables sharing an equation
        parent = {v: v for v in variables}

        def find(v):
            while parent[v] != v:
                parent[v] = parent[parent[v]]
                v = parent[v]
            return v

        images = {v: defining_relation(family, n, signs, {v: Fraction(1)}) for v in variables}
        owner: dict = {}
        for v, img in images.items():
            for key in img:
                if key in owner:
                    parent[find(v)] = find(owner[key])
                else:
                    owner[key] = v
        comps: dict = {}
        for v in variables:
            comps.setdefault(find(v), []).append(v)
        basis_pairs = []
        for comp in comps.values():
            comp.sort()
            eqs = sorted({k for v in comp for k in images[v]})
            row_of = {k: r for r, k in enumerate(eqs)}
            mat = [[Fraction(0)] * len(comp) for _ in eqs]
            for c, v in enumerate(comp):
                for k, val in images[v].items():
                    mat[row_of[k]][c] = val
            vecs, free_cols = nullspace_with_free(mat, len(comp))
            for vec, fc in zip(vecs, free_cols):
                basis_pairs.append((comp[fc], {comp[c]: x for c, x in enumerate(vec) if x}))
        basis_pairs.sort(key=lambda t: _order_key(t[0], signs))
        basis = [e for _, e in basis_pairs]
        free = [f for f, _ in basis_pairs]
    if family == "gl":
        order = sorted(range(len(basis)), key=lambda k: _order_key(free[k], signs))
        basis = [basis[k] for k in order]
        free = [free[k] for k in order]
    L = LiePresentation(family, n, algebra, window, basis, free)
    L.weights = _weights(L)
    if structure_constants:
        L.consts = _structure_constants(L)
    return L


def _order_key(var: tuple, signs: Sequence[int]) -> tuple:
    i, j, a = var
    return (i, j, 0 if signs[a] > 0 else 1, a)


def _weights(L: LiePresentation) -> list | None:
    out = []
    for elem in L.basis:
        ws = set()
        for i, j, _ in elem:
            ci, cj = cartan_coordinate(L.family, L.n, i), cartan_coordinate(L.family, L.n, j)
            ws.add(tuple(x - y for x, y in zip(ci, cj)))
        if len(ws) != 1:
            return None
        out.append(ws.pop())
    return out


def _structure_constants(L: LiePresentation) -> dict:
    consts = {}
    for a, b in combinations(range(L.dim), 2):
        br = L.bracket_elements(L.basis[a], L.basis[b])
        if br:
            consts[a, b] = L.coordinates(br)
    return consts


def jacobi_audit(L: LiePresentation) -> bool:
    """Exact Jacobi identity on every basis triple (plus antisymmetry of the table)."""
    for (a, b), vec in L.consts.items():
        if a >= b:
            return False
    for a, b, c in combinations(range(L.dim), 3):
        total: dict = {}
        for x, y, z in ((a, b, c), (b, c, a), (c, a, b)):
            for k, v in L.bracket(x, y).items():
                for m, w in L.bracket(k, z).items():
                    total[m] = total.get(m, 0) + v * w
        if any(total.values()):
            return False
    return True


def relation_audit(L: LiePresentation) -> bool:
    """Every basis element satisfies the family's defining relation."""
    if L.family == "gl":
        return True
    signs = L.algebra.eigen_form.signs
    return all(not defining_relation(L.family, L.n, signs, b) for b in L.basis)


def closure_audit(L: LiePresentation) -> bool:
    """Every bracket of basis elements expands exactly in the basis."""
    try:
        for a, b in combinations(range(L.dim), 2):
            L.coordinates(L.bracket_elements(L.basis[a], L.basis[b]))
    except ValueError:
        return False
    return True


def position_count_dim(family: str, n: int, algebra: InvolutiveAlgebra) -> int:
    """dim R_1 * d_- + dim R_{-1} * d_+ from counting paired and self-paired positions."""
    plus, minus = (len(b) for b in algebra.eigen_split)
    window = family_window(family, n)
    if family == "gl":
        return len(window) ** 2 * algebra.dim
    seen = set()
    d_minus = d_plus = 0  # positions admitting R_1 resp. R_{-1}
    for r in window:
        for s in window:
            if (r, s) in seen:
                continue
            p, sign = partner_sign(family, r, s)
            seen.update({(r, s), p})
            if p != (r, s):
                d_minus += 1
                d_plus += 1
            elif sign == 1:
                d_plus += 1
            else:
                d_minus += 1
    return plus * d_minus + minus * d_plus


def summand_span_check(L: LiePresentation) -> bool:
    """Cross-check the solved basis against the explicit summand pattern.

    Each pattern element ``e_{r,s}(x) - s_x * sign * e_partner(x)`` (x an
    involution eigenvector with eigenvalue s_x) must lie in the algebra and
    the pattern must span it.
    """
    if L.family == "gl":
        return True
    signs = L.algebra.eigen_form.signs
    vecs = []
    for r in L.window:
        for s in L.window:
            p, sign = partner_sign(L.family, r, s)
            for a in range(L.algebra.dim):
                X: Element = {(r, s, a): Fraction(1)}
                key = (p[0], p[1], a)
                X[key] = X.get(key, 0) - signs[a] * sign
                X = {k: v for k, v in X.items() if v}
                if not X:
                    continue
                if defining_relation(L.family, L.n, signs, X):
                    return False
                vecs.append(X)
    keys = sorted({k for X in vecs for k in X})
    col = {k: c for c, k in enumerate(keys)}
    rank = rank_exact({col[k]: v for k, v in X.items()} for X in vecs)
    return rank == L.dim


@dataclass
class Inclusion:
    """Corner inclusion L_n -> L_{n+1}; ``images[k]`` are the coordinates of the k-th basis vector."""

    source: LiePresentation
    target: LiePresentation
    images: list[dict]

    def apply(self, coords: dict) -> dict:
        out: dict = {}
        for k, c in coords.items():
            for m, v in self.images[k].items():
                out[m] = out.get(m, 0) + c * v
        return {k: v for k, v in out.items() if v}

    def is_injective(self) -> bool:
        return rank_exact(self.images) == self.source.dim

    def preserves_brackets(self) -> bool:
        S, T = self.source, self.target
        for a, b in combinations(range(S.dim), 2):
            lhs = self.apply(S.bracket(a, b))
            rhs = T.bracket_coords(self.images[a], self.images[b])
            if lhs != rhs:
                return False
        return True


def include(L: LiePresentation, target: LiePresentation | None = None) -> Inclusion:
    """The natural inclusion induced by I_n in I_{n+1}."""
    if target is None:
        target = build(L.family, L.n + 1, L.algebra)
    if target.family != L.family or target.algebra is not L.algebra and target.algebra.name != L.algebra.name:
        raise FamilyMismatch("inclusion needs the same family and coefficient algebra")
    if target.n != L.n + 1:
        raise FamilyMismatch("target must have size n + 1")
    images = [target.coordinates(b) for b in L.basis]
    return Inclusion(L, target, images)
