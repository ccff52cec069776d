"""The map from R-tensors to J(R)-tensors that inserts the shift N, and its sign behaviour under y.

``phi_tilde(p, r_0 (x) ... (x) r_p)`` is
``r_0 I (x) sum_l (-1)^l r_1 I (x) ... (x) r_l I (x) N (x) r_{l+1} I (x) ... (x) r_p I``.
Tensors of JMat factors are normalized by expanding every factor into atoms
(one matrix position or shift offset carrying one basis vector of R), so two
chains are equal exactly when they are equal as multilinear objects.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from .algebra import InvolutiveAlgebra
from .dihedral import TensorChain, act_y
from .jmat import JMat, mul, random_jmat, star


def _atoms(X: JMat) -> list[tuple[Fraction, JMat]]:
    alg = X.alg
    out = []
    for (i, j), v in X.finite.items():
        for k, c in enumerate(v):
            if c:
                out.append((c, JMat.unit(alg, i, j, alg.basis_coords(k))))
    for a, v in X.shift.items():
        for k, c in enumerate(v):
            if c:
                out.append((c, JMat.shift_pattern(alg, a, alg.basis_coords(k))))
    return out


def _acc(out: dict, key, val) -> None:
    nv = out.get(key, 0) + val
    if nv:
        out[key] = nv
    else:
        out.pop(key, None)


def _atom_key(X: JMat) -> tuple:
    return X._key


@dataclass(frozen=True)
class JTensorChain:
    """Combination of tensors m_0 (x) ... (x) m_{q} of JMat factors, in atom-expanded canonical form."""

    alg: InvolutiveAlgebra
    q: int
    terms: tuple

    @classmethod
    def of(cls, alg: InvolutiveAlgebra, q: int, terms) -> "JTensorChain":
        """``terms`` is an iterable of ``(coefficient, (m_0, ..., m_q))``."""
        out: dict = {}
        for c, factors in terms:
            if len(factors) != q + 1:
                raise ValueError("wrong number of tensor factors")
            for combo in product(*(_atoms(m) for m in factors)):
                coef = Fraction(c)
                for a, _ in combo:
                    coef *= a
                _acc(out, tuple(m for _, m in combo), coef)
        items = sorted(out.items(), key=lambda kv: tuple(_atom_key(m) for m in kv[0]))
        return cls(alg, q, tuple(items))

    def __eq__(self, other) -> bool:
        return isinstance(other, JTensorChain) and self.q == other.q and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((self.q, self.terms))

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __neg__(self) -> "JTensorChain":
        return self.scale(-1)

    def scale(self, c) -> "JTensorChain":
        return JTensorChain.of(self.alg, self.q, ((Fraction(c) * v, t) for t, v in self.terms))

    def __add__(self, other: "JTensorChain") -> "JTensorChain":
        return JTensorChain.of(self.alg, self.q, [(v, t) for t, v in self.terms + other.terms])

    def __sub__(self, other: "JTensorChain") -> "JTensorChain":
        return self + (-other)

    def __repr__(self) -> str:
        parts = [f"{v}*" + " (x) ".join(repr(m) for m in t) for t, v in self.terms]
        return " + ".join(parts) if parts else "0"


def phi_tilde(p: int, chain: TensorChain) -> JTensorChain:
    alg = chain.alg
    if chain.n != p:
        raise ValueError("chain index does not match p")
    N = JMat.N(alg)
    terms = []
    for t, c in chain.terms:
        rI = [JMat.identity(alg, alg.basis_coords(i)) for i in t]
        for l in range(p + 1):
            factors = (rI[0],) + tuple(rI[1:l + 1]) + (N,) + tuple(rI[l + 1:])
            terms.append(((-1) ** l * c, factors))
    return JTensorChain.of(alg, p + 1, terms)


def y_J(q: int, chain: JTensorChain) -> JTensorChain:
    """y.(m_0 (x) ... (x) m_q) = (-1)^{q(q+1)/2} m_0^* (x) m_q^* (x) ... (x) m_1^*."""
    if chain.q != q:
        raise ValueError("chain index does not match q")
    s = -1 if (q * (q + 1) // 2) % 2 else 1
    terms = []
    for t, c in chain.terms:
        order = (t[0],) + tuple(reversed(t[1:]))
        terms.append((s * c, tuple(star(m) for m in order)))
    return JTensorChain.of(chain.alg, q, terms)


def hochschild_b_J(chain: JTensorChain) -> JTensorChain:
    """Hochschild boundary on J(R)-tensors, with products in the JMat model."""
    q = chain.q
    if q < 1:
        raise ValueError("b is defined from degree 1")
    terms = []
    for t, c in chain.terms:
        for i in range(q):
            terms.append(((-1) ** i * c, t[:i] + (mul(t[i], t[i + 1]),) + t[i + 2:]))
        terms.append(((-1) ** q * c, (mul(t[q], t[0]),) + t[1:q]))
    return JTensorChain.of(chain.alg, q - 1, terms)


def random_chain(alg: InvolutiveAlgebra, p: int, rng: random.Random, terms: int = 2) -> TensorChain:
    out: dict = {}
    for _ in range(terms):
        t = tuple(rng.randrange(alg.dim) for _ in range(p + 1))
        out[t] = out.get(t, 0) + rng.choice([-3, -2, -1, 1, 2, 3])
    return TensorChain.of(alg, p, out)


def random_jchain(alg: InvolutiveAlgebra, q: int, rng: random.Random, terms: int = 2) -> JTensorChain:
    out = []
    for _ in range(terms):
        factors = tuple(random_jmat(alg, rng, entries=1, window=3, band=2, shifts=rng.randint(0, 1))
                        for _ in range(q + 1))
        out.append((rng.choice([-2, -1, 1, 2]), factors))
    return JTensorChain.of(alg, q, out)


def y_sign_holds(p: int, chain: TensorChain, y_action=None) -> bool:
    """y_J(p+1, phi_tilde(c)) == -phi_tilde(y c); ``y_action`` replaces y on R (for negative controls)."""
    act = y_action or (lambda c: TensorChain.of(c.alg, c.n, act_y(c.alg, c.n, c.as_dict())))
    return y_J(p + 1, phi_tilde(p, chain)) == -phi_tilde(p, act(chain))


def y_sign_check(p: int, samples: int = 50, alg: InvolutiveAlgebra | None = None, seed: int = 0,
                  y_action=None) -> bool:
    from .algebra import catalog

    if not 0 <= p <= 3:
        raise ValueError("p must be between 0 and 3")
    alg = alg or catalog("dual-minus")
    rng = random.Random(seed)
    return all(y_sign_holds(p, random_chain(alg, p, rng), y_action) for _ in range(samples))

