"""Hochschild, cyclic, dihedral and skew-dihedral homology of an involutive algebra.

Chains are ``{(i_0, ..., i_n): coefficient}`` maps over the basis of an
algebra. Homology is computed in the eigen form of R, where the involution
is diagonal and the dihedral generators act on elementary tensors by signed
permutations; coinvariants are then spanned by orbit representatives.

Also here: the hyperoctahedral stabilizer computation and the sign
bookkeeping that identifies the induced action on A^{(x) n} with the skew
dihedral one.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations, product

from .algebra import InvolutiveAlgebra
from .linalg import Echelon, kernel_vectors, rank_exact

VARIANTS = {
    "dihedral": "dihedral", "plus": "dihedral",
    "skew": "skew", "minus": "skew",
    "cyclic": "cyclic",
    "hochschild": "hochschild", "none": "hochschild",
}
DEFAULT_CHAIN_BUDGET = 10**5


class BudgetExceeded(RuntimeError):
    pass


def _variant(v: str) -> str:
    try:
        return VARIANTS[v]
    except KeyError:
        raise ValueError(f"unknown variant {v!r}") from None


def _sign_x(n: int) -> int:
    return -1 if n % 2 else 1


def _sign_y(n: int) -> int:
    return -1 if (n * (n + 1) // 2) % 2 else 1


def _acc(out: dict, key, val) -> None:
    nv = out.get(key, 0) + val
    if nv:
        out[key] = nv
    else:
        out.pop(key, None)


# -- operators on chains (any basis) -------------------------------------------------

def act_x(n: int, chain: dict) -> dict:
    """x.(r_0 (x) ... (x) r_n) = (-1)^n r_n (x) r_0 (x) ... (x) r_{n-1}."""
    s = _sign_x(n)
    out: dict = {}
    for t, c in chain.items():
        _acc(out, (t[-1],) + t[:-1], s * c)
    return out


def _expand_bar(alg: InvolutiveAlgebra, i: int) -> list:
    return [(k, v) for k, v in enumerate(alg.bar(alg.basis_coords(i))) if v]


def act_y(alg: InvolutiveAlgebra, n: int, chain: dict, skew: bool = False) -> dict:
    """y.(r_0 (x) ... (x) r_n) = (-1)^{n(n+1)/2} bar r_0 (x) bar r_n (x) ... (x) bar r_1; negated when ``skew``."""
    s = _sign_y(n) * (-1 if skew else 1)
    bars = {i: _expand_bar(alg, i) for i in range(alg.dim)}
    out: dict = {}
    for t, c in chain.items():
        order = (t[0],) + tuple(reversed(t[1:]))
        for combo in product(*(bars[i] for i in order)):
            coef = s * c
            for _, v in combo:
                coef *= v
            _acc(out, tuple(k for k, _ in combo), coef)
    return out


def hochschild_b(alg: InvolutiveAlgebra, n: int, chain: dict) -> dict:
    """b = sum_{i<n} (-1)^i (.. r_i r_{i+1} ..) + (-1)^n r_n r_0 (x) r_1 (x) ... (x) r_{n-1}."""
    if n < 1:
        raise ValueError("b is defined from degree 1")
    out: dict = {}
    for t, c in chain.items():
        for i in range(n):
            s = c if i % 2 == 0 else -c
            for k, v in enumerate(alg.product_coords(t[i], t[i + 1])):
                if v:
                    _acc(out, t[:i] + (k,) + t[i + 2:], s * v)
        s = c if n % 2 == 0 else -c
        for k, v in enumerate(alg.product_coords(t[n], t[0])):
            if v:
                _acc(out, (k,) + t[1:n], s * v)
    return out


@dataclass(frozen=True)
class TensorChain:
    """Formal combination of elementary tensors r_0 (x) ... (x) r_n over an algebra's basis."""

    alg: InvolutiveAlgebra
    n: int
    terms: tuple

    @classmethod
    def of(cls, alg: InvolutiveAlgebra, n: int, terms: dict) -> "TensorChain":
        clean = {t: Fraction(c) for t, c in terms.items() if c}
        if any(len(t) != n + 1 for t in clean):
            raise ValueError("tensor length does not match the homological index")
        return cls(alg, n, tuple(sorted(clean.items())))

    def as_dict(self) -> dict:
        return dict(self.terms)

    def x(self) -> "TensorChain":
        return TensorChain.of(self.alg, self.n, act_x(self.n, self.as_dict()))

    def y(self, skew: bool = False) -> "TensorChain":
        return TensorChain.of(self.alg, self.n, act_y(self.alg, self.n, self.as_dict(), skew))

    def b(self) -> "TensorChain":
        return TensorChain.of(self.alg, self.n - 1, hochschild_b(self.alg, self.n, self.as_dict()))


# -- coinvariants via orbits ------------------------------------------------------------

class OrbitCoinvariants:
    """Coinvariants of R^{(x) n+1} under <x>, <x, y> or <x, -y>, for a diagonal involution.

    ``reduce(t)`` returns ``(rep, sign)`` with ``t = sign * rep`` in the
    coinvariants, or ``None`` when the orbit of ``t`` vanishes.
    """

    def __init__(self, alg: InvolutiveAlgebra, n: int, variant: str):
        self.alg, self.n, self.variant = alg, n, _variant(variant)
        signs = [alg.involution[i][i] for i in range(alg.dim)]
        if any(alg.involution[i][j] for i in range(alg.dim) for j in range(alg.dim) if i != j):
            raise ValueError("orbit coinvariants need a diagonal involution; use the eigen form")
        self.bar_sign = signs
        self._cache: dict = {}
        self.reps: list = []
        self.index: dict = {}
        for t in product(range(alg.dim), repeat=n + 1):
            r = self.reduce(t)
            if r is not None and r[0] == t:
                self.index[t] = len(self.reps)
                self.reps.append(t)

    def _neighbors(self, t: tuple):
        n = self.n
        yield (t[-1],) + t[:-1], _sign_x(n)
        if self.variant in ("dihedral", "skew"):
            s = _sign_y(n) * (-1 if self.variant == "skew" else 1)
            for i in t:
                s *= self.bar_sign[i]
            yield (t[0],) + tuple(reversed(t[1:])), int(s)

    def reduce(self, t: tuple):
        hit = self._cache.get(t, False)
        if hit is not False:
            return hit
        if self.variant == "hochschild":
            return (t, 1)
        # explore the orbit, tracking the sign relative to t
        seen = {t: 1}
        stack = [t]
        dead = False
        while stack:
            u = stack.pop()
            for v, s in self._neighbors(u):
                sv = seen[u] * s
                if v in seen:
                    if seen[v] != sv:
                        dead = True
                else:
                    seen[v] = sv
                    stack.append(v)
        rep = min(seen)
        for u, su in seen.items():
            # u = su * t and rep = s_rep * t, so u = su * s_rep * rep
            self._cache[u] = None if dead else (rep, su * seen[rep])
        return self._cache[t]

    def project(self, chain: dict) -> dict:
        """Image of a chain in coinvariant coordinates ``{rep_index: value}``."""
        out: dict = {}
        for t, c in chain.items():
            r = self.reduce(t)
            if r is not None:
                _acc(out, self.index[r[0]], r[1] * c)
        return out

    @property
    def dim(self) -> int:
        return len(self.reps)


@dataclass
class CoinvariantComplex:
    alg: InvolutiveAlgebra
    variant: str
    spaces: list
    boundaries: list  # boundaries[n][j] = image of rep j of degree n, in degree n-1 coordinates

    def dim(self, n: int) -> int:
        return self.spaces[n].dim


def coinvariant_complex(alg: InvolutiveAlgebra, top: int, variant: str, budget: int = DEFAULT_CHAIN_BUDGET) -> CoinvariantComplex:
    """Coinvariant complex of the eigen form of ``alg`` in degrees 0..top."""
    ring = alg.eigen_form.algebra
    if ring.dim ** (top + 1) > budget:
        raise BudgetExceeded(f"R^(x){top + 1} has dimension {ring.dim ** (top + 1)} > {budget}")
    spaces = [OrbitCoinvariants(ring, n, variant) for n in range(top + 1)]
    boundaries = [[]]
    for n in range(1, top + 1):
        cols = [spaces[n - 1].project(hochschild_b(ring, n, {t: 1})) for t in spaces[n].reps]
        boundaries.append(cols)
    return CoinvariantComplex(ring, _variant(variant), spaces, boundaries)


def homology_dims(alg: InvolutiveAlgebra, max_n: int, variant: str, budget: int = DEFAULT_CHAIN_BUDGET) -> list[int]:
    """Dimensions of HH, HC, HD or skew HD in degrees 0..max_n."""
    C = coinvariant_complex(alg, max_n + 1, variant, budget)
    ranks = [0] + [rank_exact(C.boundaries[n]) for n in range(1, max_n + 2)]
    return [C.dim(n) - ranks[n] - ranks[n + 1] for n in range(max_n + 1)]


def homology(alg: InvolutiveAlgebra, n: int, variant: str, budget: int = DEFAULT_CHAIN_BUDGET) -> int:
    return homology_dims(alg, n, variant, budget)[n]


def homology_report(alg: InvolutiveAlgebra, max_n: int, variant: str, budget: int = DEFAULT_CHAIN_BUDGET) -> dict:
    """JSON-ready report ``{R, variant, n, dim_chain, dim_coinv, betti}`` per degree."""
    C = coinvariant_complex(alg, max_n + 1, variant, budget)
    ranks = [0] + [rank_exact(C.boundaries[n]) for n in range(1, max_n + 2)]
    rows = []
    for n in range(max_n + 1):
        rows.append({"n": n, "dim_chain": alg.dim ** (n + 1), "dim_coinv": C.dim(n),
                     "betti": C.dim(n) - ranks[n] - ranks[n + 1]})
    return {"R": alg.name, "variant": _variant(variant), "degrees": rows}


# -- the eigen-split route ------------------------------------------------------------------

def _homology_with_y(alg: InvolutiveAlgebra, n: int) -> tuple[int, int, int]:
    """(dim HC_n, dim of +1 part, dim of -1 part) of y acting on cyclic homology."""
    ring = alg.eigen_form.algebra
    cyc = [OrbitCoinvariants(ring, m, "cyclic") for m in (n - 1, n, n + 1)] if n > 0 else \
        [None] + [OrbitCoinvariants(ring, m, "cyclic") for m in (0, 1)]
    low, mid, high = cyc
    if low is not None:
        d_n = [low.project(hochschild_b(ring, n, {t: 1})) for t in mid.reps]
        cycles = kernel_vectors(d_n)
    else:
        cycles = [{j: Fraction(1)} for j in range(mid.dim)]
    d_up = [mid.project(hochschild_b(ring, n + 1, {t: 1})) for t in high.reps]
    ech = Echelon()
    for col in d_up:
        ech.add(col, "B")
    for k, z in enumerate(cycles):
        ech.add(z, ("H", k))
    h_tags = [tag for _, (row, tag) in ech.rows.items() if tag != "B"]
    h_rows = {tag: row for _, (row, tag) in ech.rows.items() if tag != "B"}
    m = len(h_tags)

    def y_on(vec: dict) -> dict:
        chain = {mid.reps[j]: c for j, c in vec.items()}
        return mid.project(act_y(ring, n, chain))

    matrix = []
    for tag in h_tags:
        rem, used = ech.reduce(y_on(h_rows[tag]))
        if rem:
            raise AssertionError("y does not preserve cycles")
        matrix.append([used.get(t2, Fraction(0)) for t2 in h_tags])
    # matrix[i] = coordinates of y(h_i); eigenspace dims from ranks of (Y -+ I)
    plus = m - rank_exact({j: matrix[i][j] - (1 if i == j else 0) for j in range(m)} for i in range(m))
    minus = m - rank_exact({j: matrix[i][j] + (1 if i == j else 0) for j in range(m)} for i in range(m))
    return m, plus, minus


def eigen_split_dims(alg: InvolutiveAlgebra, n: int) -> tuple[int, int, int]:
    """(HC_n, HC_n^+, HC_n^-) computed from the action of y on cyclic homology."""
    return _homology_with_y(alg, n)


def eigen_split_check(alg: InvolutiveAlgebra, n: int) -> bool:
    """HD_n = HC_n^+ and skew HD_n = HC_n^- with the right-hand sides from y on HC_n."""
    hc, plus, minus = eigen_split_dims(alg, n)
    return (plus + minus == hc and homology(alg, n, "dihedral") == plus
            and homology(alg, n, "skew") == minus)


def reynolds_projector(alg: InvolutiveAlgebra, n: int, variant: str) -> dict:
    """P = |G|^{-1} sum_g g on R^{(x) n+1} as ``{column_tensor: {row_tensor: value}}`` (any basis)."""
    variant = _variant(variant)
    if variant == "hochschild":
        group_words = [()]
    else:
        group_words = [("x",) * k for k in range(n + 1)]
        if variant in ("dihedral", "skew"):
            group_words += [w + ("y",) for w in group_words]
    skew = variant == "skew"
    P: dict = {}
    for t in product(range(alg.dim), repeat=n + 1):
        acc: dict = {}
        for word in group_words:
            ch = {t: Fraction(1)}
            for g in word:
                ch = act_x(n, ch) if g == "x" else act_y(alg, n, ch, skew)
            for u, c in ch.items():
                _acc(acc, u, c / len(group_words))
        P[t] = acc
    return P


def apply_sparse(M: dict, chain: dict) -> dict:
    out: dict = {}
    for t, c in chain.items():
        for u, v in M.get(t, {}).items():
            _acc(out, u, c * v)
    return out


def projector_trace(P: dict) -> Fraction:
    return sum((col.get(t, 0) for t, col in P.items()), Fraction(0))


def boundary_compatible(alg: InvolutiveAlgebra, n: int, variant: str) -> bool:
    """P_{n-1} b (1 - P_n) = 0, i.e. b maps the kernel of the projector into the next kernel."""
    P = reynolds_projector(alg, n, variant)
    Pm = reynolds_projector(alg, n - 1, variant)
    for t in P:
        v = {t: Fraction(1)}
        pv = apply_sparse(P, v)
        diff = dict(v)
        for u, c in pv.items():
            _acc(diff, u, -c)
        if apply_sparse(Pm, hochschild_b(alg, n, diff)):
            return False
    return True


# -- hyperoctahedral stabilizer ------------------------------------------------------------------

def _compose(p: tuple, q: tuple) -> tuple:
    """(p o q)(i) = p(q(i))."""
    return tuple(p[i] for i in q)


def _inverse(p: tuple) -> tuple:
    inv = [0] * len(p)
    for i, j in enumerate(p):
        inv[j] = i
    return tuple(inv)


def hyperoctahedral_group(n: int) -> list[tuple]:
    """H_n inside S_{2n}: points 0..n-1 are 1..n and n..2n-1 are 1*..n*; elements commute with *."""
    out = []
    for sigma in permutations(range(n)):
        for flips in product((0, 1), repeat=n):
            p = [0] * (2 * n)
            for i in range(n):
                img = sigma[i] + n * flips[i]
                p[i] = img
                p[i + n] = (img + n) % (2 * n)
            out.append(tuple(p))
    return out


def _commutes_with_star(p: tuple, n: int) -> bool:
    return all(p[(i + n) % (2 * n)] == (p[i] + n) % (2 * n) for i in range(2 * n))


@dataclass
class StabilizerReport:
    n: int
    order: int
    hyperoctahedral_order: int
    generators_in_stabilizer: bool
    generated_order: int
    relations: bool

    @property
    def is_dihedral(self) -> bool:
        return self.order == 2 * self.n and self.generated_order == self.order and self.relations

    def to_json(self) -> str:
        d = dict(self.__dict__, is_dihedral=self.is_dihedral)
        return json.dumps(d)


def stabilizer_generators(n: int) -> tuple[tuple, tuple]:
    """kappa_H = kappa kappa^* and eta omega_H as permutations of the 2n points."""
    kappa_h = tuple([(i + 1) % n for i in range(n)] + [n + (i + 1) % n for i in range(n)])
    omega = tuple([n - 1 - i for i in range(n)] + [n + n - 1 - i for i in range(n)])
    eta = tuple([i + n for i in range(n)] + [i for i in range(n)])
    return kappa_h, _compose(eta, omega)


def hyperoctahedral_stabilizer(n: int) -> StabilizerReport:
    """Stabilizer in H_n of the coset kappa H_n, with kappa the n-cycle on 1..n."""
    if not 2 <= n <= 5:
        raise ValueError("n must be between 2 and 5")
    H = hyperoctahedral_group(n)
    kappa = tuple([(i + 1) % n for i in range(n)] + list(range(n, 2 * n)))
    kinv = _inverse(kappa)
    # h kappa H = kappa H  <=>  kappa^{-1} h kappa in H
    stab = {h for h in H if _commutes_with_star(_compose(kinv, _compose(h, kappa)), n)}
    x, y = stabilizer_generators(n)
    ident = tuple(range(2 * n))
    gens_in = x in stab and y in stab
    group = {ident}
    frontier = [ident]
    while frontier:
        g = frontier.pop()
        for s in (x, y):
            h = _compose(s, g)
            if h not in group:
                group.add(h)
                frontier.append(h)
    xn = ident
    for _ in range(n):
        xn = _compose(x, xn)
    relations = (xn == ident and _compose(y, y) == ident
                 and _compose(y, _compose(x, y)) == _inverse(x))
    return StabilizerReport(n, len(stab), len(H), gens_in, len(group) if group <= stab else -1, relations)


# -- the induced action on A^{(x) n} -------------------------------------------------------------

def induced_action(word: str, n: int, factors: tuple) -> tuple[int, tuple]:
    """x or y from the orthogonal invariant-theory step on n symbolic factors ``(name, starred)``."""
    if word == "x":
        return (-1 if (n - 1) % 2 else 1), (factors[-1],) + factors[:-1]
    if word == "y":
        s = -1 if ((n + 1) * (n + 2) // 2) % 2 else 1
        order = (factors[0],) + tuple(reversed(factors[1:]))
        return s, tuple((name, not st) for name, st in order)
    raise ValueError(word)


def dihedral_action_symbolic(word: str, n: int, factors: tuple, skew: bool) -> tuple[int, tuple]:
    """x or y on R^{(x) m+1} with m = n - 1, symbolically; bar toggles the star flag."""
    m = n - 1
    if word == "x":
        return _sign_x(m), (factors[-1],) + factors[:-1]
    s = _sign_y(m) * (-1 if skew else 1)
    order = (factors[0],) + tuple(reversed(factors[1:]))
    return s, tuple((name, not st) for name, st in order)


def induced_action_check(n: int) -> bool:
    """The induced x, y on n tensor factors equal the skew dihedral x, y at index n - 1."""
    if not 1 <= n <= 8:
        raise ValueError("n must be between 1 and 8")
    factors = tuple((f"a{i}", False) for i in range(1, n + 1))
    for w in ("x", "y"):
        if induced_action(w, n, factors) != dihedral_action_symbolic(w, n, factors, skew=True):
            return False
    return True


def predicted_primitives(alg: InvolutiveAlgebra, top: int, variant: str = "dihedral", shift: int = 2) -> dict:
    """``{d: dim H_{d - shift}}`` for ``shift <= d <= top``, the degree bookkeeping of primitive generators.

    ``variant="dihedral", shift=2`` is the prediction for the Jacobi-matrix
    algebras; ``variant="skew", shift=1`` the one for the finite stable limits.
    """
    if top < shift:
        return {}
    dims = homology_dims(alg, top - shift, variant)
    return {d: dims[d - shift] for d in range(shift, top + 1)}
