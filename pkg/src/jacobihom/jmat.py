"""Banded Z x Z matrices over an involutive algebra.

A :class:`JMat` is a finite-support matrix plus a finite sum of shift
patterns ``r S^a`` where ``S^a = sum_i e_{i,i+a}``. This subalgebra of the
generalized Jacobi matrices is closed under products, the transpose, the
``*`` involution, every ``tau`` flavour and corner compressions, which is all
the matrix work the rest of the package needs. Infinite antidiagonal
matrices such as ``J_l`` are never stored as JMat values; :class:`AntiDiag`
knows how to conjugate by them in closed form.
"""

from __future__ import annotations

import enum
import random
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .algebra import Coords, InvolutiveAlgebra, format_coords, parse_linear_combination


class NotTraceClass(ValueError):
    pass


class InfiniteSupport(ValueError):
    pass


def _nz(c: Coords) -> bool:
    return any(c)


class JMat:
    """Finite part ``{(i, j): r}`` plus shift part ``{a: r}``; immutable and canonical."""

    __slots__ = ("alg", "finite", "shift", "_key")

    def __init__(self, alg: InvolutiveAlgebra, finite: dict | None = None, shift: dict | None = None):
        self.alg = alg
        self.finite = {k: v for k, v in (finite or {}).items() if _nz(v)}
        self.shift = {k: v for k, v in (shift or {}).items() if _nz(v)}
        self._key = (tuple(sorted(self.finite.items())), tuple(sorted(self.shift.items())))

    # -- constructors ----------------------------------------------------------
    @classmethod
    def zero(cls, alg: InvolutiveAlgebra) -> "JMat":
        return cls(alg)

    @classmethod
    def unit(cls, alg: InvolutiveAlgebra, i: int, j: int, r=None) -> "JMat":
        """E_{i,j}(r); ``r`` defaults to 1 and may be coords, an AlgebraElement or a rational."""
        return cls(alg, {(i, j): _coerce(alg, r)})

    @classmethod
    def shift_pattern(cls, alg: InvolutiveAlgebra, a: int, r=None) -> "JMat":
        """r S^a."""
        return cls(alg, shift={a: _coerce(alg, r)})

    @classmethod
    def identity(cls, alg: InvolutiveAlgebra, r=None) -> "JMat":
        return cls.shift_pattern(alg, 0, r)

    @classmethod
    def N(cls, alg: InvolutiveAlgebra) -> "JMat":
        return cls.shift_pattern(alg, 1)

    # -- basic structure ---------------------------------------------------------
    def __eq__(self, other) -> bool:
        return isinstance(other, JMat) and self._key == other._key

    def __hash__(self) -> int:
        return hash(self._key)

    def __bool__(self) -> bool:
        return bool(self.finite or self.shift)

    @property
    def is_finite(self) -> bool:
        return not self.shift

    def bandwidth(self) -> int:
        widths = [abs(i - j) for i, j in self.finite] + [abs(a) for a in self.shift]
        return max(widths, default=0)

    def entry(self, i: int, j: int) -> Coords:
        a = self.finite.get((i, j))
        b = self.shift.get(j - i)
        if a is None:
            return b if b is not None else self.alg.zero_coords
        return a if b is None else self.alg.add(a, b)

    def __repr__(self) -> str:
        return format_jmat(self)

    # -- linear structure -----------------------------------------------------------
    def __add__(self, other: "JMat") -> "JMat":
        add = self.alg.add
        fin = dict(self.finite)
        for k, v in other.finite.items():
            fin[k] = add(fin[k], v) if k in fin else v
        sh = dict(self.shift)
        for k, v in other.shift.items():
            sh[k] = add(sh[k], v) if k in sh else v
        return JMat(self.alg, fin, sh)

    def __neg__(self) -> "JMat":
        return self.scale(-1)

    def __sub__(self, other: "JMat") -> "JMat":
        return self + (-other)

    def scale(self, c) -> "JMat":
        c = Fraction(c)
        sc = self.alg.scale
        return JMat(self.alg, {k: sc(c, v) for k, v in self.finite.items()}, {k: sc(c, v) for k, v in self.shift.items()})

    def left_mul_scalar(self, r: Coords) -> "JMat":
        """Multiply every entry on the left by the algebra element ``r`` (i.e. (rI) X)."""
        m = self.alg.mul
        return JMat(self.alg, {k: m(r, v) for k, v in self.finite.items()}, {k: m(r, v) for k, v in self.shift.items()})

    def __mul__(self, other):
        if isinstance(other, JMat):
            return mul(self, other)
        return self.scale(other)

    def __rmul__(self, c):
        return self.scale(c)


def _coerce(alg: InvolutiveAlgebra, r) -> Coords:
    if r is None:
        return alg.unit
    if isinstance(r, tuple):
        return r
    if hasattr(r, "coords"):
        return r.coords
    return alg.scale(Fraction(r), alg.unit)


def _acc(target: dict, key, value: Coords, add) -> None:
    if key in target:
        target[key] = add(target[key], value)
    else:
        target[key] = value


def mul(X: JMat, Y: JMat) -> JMat:
    """Exact matrix product."""
    alg = X.alg
    m, add = alg.mul, alg.add
    fin: dict = {}
    sh: dict = {}
    rows_of_y: dict = {}
    for (k, j), v in Y.finite.items():
        rows_of_y.setdefault(k, []).append((j, v))
    for (i, k), u in X.finite.items():
        for j, v in rows_of_y.get(k, ()):
            _acc(fin, (i, j), m(u, v), add)
        for b, v in Y.shift.items():
            _acc(fin, (i, k + b), m(u, v), add)
    for a, u in X.shift.items():
        # S^a has its entry in row i at column i + a; row i of X hits row i + a of Y
        for (k, j), v in Y.finite.items():
            _acc(fin, (k - a, j), m(u, v), add)
        for b, v in Y.shift.items():
            _acc(sh, a + b, m(u, v), add)
    return JMat(alg, fin, sh)


def bracket(X: JMat, Y: JMat) -> JMat:
    return mul(X, Y) - mul(Y, X)


def transpose(X: JMat) -> JMat:
    """t(E_{i,j}(r)) = E_{j,i}(bar r), t(r S^a) = bar r S^{-a}."""
    bar = X.alg.bar
    return JMat(X.alg, {(j, i): bar(v) for (i, j), v in X.finite.items()}, {-a: bar(v) for a, v in X.shift.items()})


def star(X: JMat) -> JMat:
    """E_{k,l}(r)^* = E_{-l,-k}(bar r); (r S^a)^* = bar r S^a."""
    bar = X.alg.bar
    return JMat(X.alg, {(-j, -i): bar(v) for (i, j), v in X.finite.items()}, {a: bar(v) for a, v in X.shift.items()})


@dataclass(frozen=True)
class AntiDiag:
    """The infinite matrix ``coeff * sum_i sign(i) e_{i, center - i}``.

    ``sign(i)`` is ``(-1)**i`` when ``alternating`` and 1 otherwise. These are
    the J_l, J_l^s, J_B, J_C, J_D matrices; they act on JMat values only by
    the closed forms below.
    """

    center: int
    alternating: bool
    coeff: Fraction = Fraction(1)

    def sign(self, i: int) -> int:
        return -1 if self.alternating and i % 2 else 1

    def conjugate(self, Y: JMat) -> JMat:
        """J Y J."""
        c, c2 = self.center, self.coeff * self.coeff
        sc = Y.alg.scale
        fin = {(c - s, c - r): sc(c2 * self.sign(c - s) * self.sign(r), v) for (s, r), v in Y.finite.items()}
        sh = {}
        for a, v in Y.shift.items():
            sgn = (-1) ** ((c + a) % 2) if self.alternating else 1
            sh[-a] = sc(c2 * sgn, v)
        return JMat(Y.alg, fin, sh)

    def left(self, Y: JMat) -> JMat:
        """J Y for finite-support Y."""
        if Y.shift:
            raise InfiniteSupport("J times a shift pattern is not banded")
        sc = Y.alg.scale
        return JMat(Y.alg, {(self.center - s, r): sc(self.coeff * self.sign(self.center - s), v) for (s, r), v in Y.finite.items()})

    def right(self, Y: JMat) -> JMat:
        """Y J for finite-support Y."""
        if Y.shift:
            raise InfiniteSupport("a shift pattern times J is not banded")
        sc = Y.alg.scale
        return JMat(Y.alg, {(s, self.center - r): sc(self.coeff * self.sign(r), v) for (s, r), v in Y.finite.items()})

    def conjugate_by_N(self) -> "AntiDiag":
        """N^{-1} J N, again an antidiagonal matrix (rows and columns both move by +1)."""
        # entry e_{i, c-i} moves to e_{i+1, c-i+1}; new row j = i + 1 carries sign(j - 1)
        flip = -1 if self.alternating else 1
        return AntiDiag(self.center + 2, self.alternating, self.coeff * flip)

    def square_scalar(self) -> Fraction:
        """J^2 is a scalar multiple of the identity; return the scalar."""
        # sum_i sign(i) sign(c - i) e_{i,i}; constant in i for both sign kinds
        s = self.sign(0) * self.sign(self.center)
        return self.coeff * self.coeff * s


def J_l(l: int) -> AntiDiag:
    return AntiDiag(l, True)


def J_l_s(l: int) -> AntiDiag:
    return AntiDiag(l, False)


J_B = AntiDiag(0, False)
J_C = AntiDiag(-1, True)
J_D = AntiDiag(-1, False)

FLAVORS = ("tau", "tau_s", "tau_B", "tau_C", "tau_D")


def _tau_data(flavor: str, l: int) -> tuple[AntiDiag, int]:
    if flavor == "tau":
        return J_l(l), (-1) ** (l % 2)
    if flavor == "tau_s":
        return J_l_s(l), 1
    if flavor == "tau_B":
        return J_B, 1
    if flavor == "tau_C":
        return J_C, -1
    if flavor == "tau_D":
        return J_D, 1
    raise ValueError(f"unknown tau flavour {flavor!r}")


def tau(X: JMat, flavor: str = "tau", l: int = 0) -> JMat:
    """Anti-involution ``prefactor * J t(X) J`` for the named flavour.

    ``tau``: (-1)^l J_l t(X) J_l; ``tau_s``: J_l^s t(X) J_l^s; ``tau_B``,
    ``tau_C``, ``tau_D``: conjugation by J_B, -J_C(.)J_C, J_D (``l`` ignored).
    """
    J, pre = _tau_data(flavor, l)
    out = J.conjugate(transpose(X))
    return out if pre == 1 else -out


def fixed_point_project(X: JMat, flavor: str = "tau", l: int = 0) -> JMat:
    """(X - tau(X))/2, the component in the subalgebra {tau(Y) = -Y}."""
    return (X - tau(X, flavor, l)).scale(Fraction(1, 2))


def in_fixed_subalgebra(X: JMat, flavor: str = "tau", l: int = 0) -> bool:
    return tau(X, flavor, l) == -X


# the three families and the involution that cuts each out of gl J(R)
FAMILY_TAU = {"o_odd": ("tau_s", 0), "sp": ("tau", -1), "o_even": ("tau_s", -1)}


class HalfIndicator(enum.Enum):
    """I_+ = sum_{i>=0} e_{i,i} and I_- = sum_{i<0} e_{i,i}."""

    PLUS = "+"
    MINUS = "-"

    def contains(self, i: int) -> bool:
        return (i >= 0) if self is HalfIndicator.PLUS else (i < 0)


PLUS, MINUS = HalfIndicator.PLUS, HalfIndicator.MINUS


def corner_compress(X: JMat, left: HalfIndicator, right: HalfIndicator) -> JMat:
    """I_left X I_right.

    For ``left != right`` the result always has finite support. For equal
    halves a nonzero shift part would give an infinite corner and raises
    :class:`InfiniteSupport`.
    """
    fin = {(i, j): v for (i, j), v in X.finite.items() if left.contains(i) and right.contains(j)}
    if X.shift and left is right:
        raise InfiniteSupport("diagonal corner of a shift pattern is not finite")
    add = X.alg.add
    for a, v in X.shift.items():
        # entries (i, i + a); left=+ right=- needs i >= 0 and i + a < 0
        if left is PLUS:
            rng = range(0, -a) if a < 0 else range(0)
        else:
            rng = range(-a, 0) if a > 0 else range(0)
        for i in rng:
            _acc(fin, (i, i + a), v, add)
    return JMat(X.alg, fin)


def trace(X: JMat) -> Coords:
    """Ordinary trace in R; only finite diagonal entries contribute."""
    if X.alg.zero_coords != X.shift.get(0, X.alg.zero_coords):
        raise NotTraceClass("shift part at offset 0 has no trace")
    out = X.alg.zero_coords
    for (i, j), v in X.finite.items():
        if i == j:
            out = X.alg.add(out, v)
    return out


def trace_ab(X: JMat) -> Coords:
    """Trace pushed through R -> R^ab (coordinates in the abelianization basis)."""
    return X.alg.abelianization.project(trace(X))


def ad_N(X: JMat) -> JMat:
    """Ad(N)(X) = N^{-1} X N, i.e. every index moves up by one."""
    N = JMat.N(X.alg)
    Ninv = JMat.shift_pattern(X.alg, -1)
    return mul(mul(Ninv, X), N)


def shift_conjugation_check(l: int, X: JMat) -> bool:
    """``tN N = I``, ``N^{-1} J_l N = -J_{l+2}`` and ``N^{-1} tau_l(X) N = tau_{l+2}(Ad(N) X)``."""
    alg = X.alg
    N = JMat.N(alg)
    Ninv = JMat.shift_pattern(alg, -1)
    ok = mul(transpose(N), N) == JMat.identity(alg)
    conj = J_l(l).conjugate_by_N()
    target = J_l(l + 2)
    ok &= conj == AntiDiag(target.center, target.alternating, -target.coeff)
    # the same identity read through its action on the finite part of X
    F = JMat(alg, X.finite)
    lhs = mul(Ninv, J_l(l).left(mul(N, F)))
    ok &= lhs == -J_l(l + 2).left(F)
    ok &= mul(mul(Ninv, tau(X, "tau", l)), N) == tau(ad_N(X), "tau", l + 2)
    return bool(ok)


def two_component_tau(entries: dict, alg: InvolutiveAlgebra) -> dict:
    """Anti-involution on 2-component units: E^{(j),(k)}_{m,n}(r) -> (-1)^{m+n} E^{(k),(j)}_{-n,-m}(bar r).

    ``entries`` maps ``(m, n, j, k)`` to coords; the result has the same shape.
    """
    out: dict = {}
    for (m, n, j, k), v in entries.items():
        sgn = -1 if (m + n) % 2 else 1
        _acc(out, (-n, -m, k, j), alg.scale(sgn, alg.bar(v)), alg.add)
    return {key: v for key, v in out.items() if any(v)}


def two_component_mul(A: dict, B: dict, alg: InvolutiveAlgebra) -> dict:
    out: dict = {}
    for (m, n, j, k), u in A.items():
        for (m2, n2, j2, k2), v in B.items():
            if n == m2 and k == j2:
                _acc(out, (m, n2, j, k2), alg.mul(u, v), alg.add)
    return {key: v for key, v in out.items() if any(v)}


# -- literals ------------------------------------------------------------------------

_LIT = re.compile(
    r"\s*([+-])?\s*(?:(\d+(?:/\d+)?)\s*\*\s*)?"
    r"(?:E\[\s*(-?\d+)\s*,\s*(-?\d+)\s*\]|S\^\s*\(?\s*(-?\d+)\s*\)?)"
    r"\s*(?:\(([^()]*)\))?"
)


def parse_jmat(text: str, alg: InvolutiveAlgebra) -> JMat:
    """Parse ``E[i,j](coeff)`` and ``S^a(coeff)`` terms joined by ``+``/``-``.

    ``coeff`` is a linear combination of the algebra's basis labels and
    rationals; it defaults to 1. ``0`` parses as the zero matrix.
    """
    text = text.strip()
    if text == "0":
        return JMat.zero(alg)
    out = JMat.zero(alg)
    pos = 0
    while pos < len(text):
        m = _LIT.match(text, pos)
        if not m or m.end() == pos:
            raise ValueError(f"cannot parse matrix literal at {text[pos:]!r}")
        pos = m.end()
        sign, mult, i, j, a, coeff = m.groups()
        c = Fraction(mult) if mult else Fraction(1)
        if sign == "-":
            c = -c
        r = parse_linear_combination(coeff, alg) if coeff else alg.unit
        r = alg.scale(c, r)
        term = JMat.unit(alg, int(i), int(j), r) if i is not None else JMat.shift_pattern(alg, int(a), r)
        out = out + term
    return out


def format_jmat(X: JMat) -> str:
    labels = X.alg.labels
    terms = [f"E[{i},{j}]({format_coords(v, labels)})" for (i, j), v in sorted(X.finite.items())]
    terms += [f"S^{a}({format_coords(v, labels)})" for a, v in sorted(X.shift.items())]
    return " + ".join(terms) if terms else "0"


# -- sampling ---------------------------------------------------------------------------

def random_coeff(alg: InvolutiveAlgebra, rng: random.Random, terms: int = 2) -> Coords:
    out = alg.zero_coords
    while not any(out):
        for _ in range(terms):
            k = rng.randrange(alg.dim)
            c = rng.choice([-3, -2, -1, 1, 2, 3])
            out = alg.add(out, alg.scale(c, alg.basis_coords(k)))
    return out


def random_jmat(alg: InvolutiveAlgebra, rng: random.Random, *, entries: int = 3, window: int = 4,
                band: int = 3, shifts: int = 0) -> JMat:
    """Random JMat with ``entries`` finite entries in ``[-window, window]`` of bandwidth <= ``band``
    and ``shifts`` shift terms with offsets in ``[-band, band]``."""
    fin = {}
    for _ in range(entries):
        i = rng.randint(-window, window)
        j = i + rng.randint(-band, band)
        fin[i, j] = random_coeff(alg, rng)
    sh = {rng.randint(-band, band): random_coeff(alg, rng) for _ in range(shifts)}
    return JMat(alg, fin, sh)


def random_jmats(alg: InvolutiveAlgebra, rng: random.Random, count: int, **kw) -> Iterable[JMat]:
    for _ in range(count):
        yield random_jmat(alg, rng, **kw)
