"""Chevalley-Eilenberg complexes, Betti numbers and primitive extraction.

The boundary preserves Cartan weight whenever the basis is made of weight
vectors (true for every presentation built by :mod:`jacobihom.lie`), so each
``d_n`` is stored as independent weight blocks and ranks are summed blockwise.
"""

from __future__ import annotations

import json
import random
import time
from bisect import bisect_left
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from itertools import combinations
from math import comb

from .lie import LiePresentation
from .linalg import random_prime, rank_exact, rank_mod_p

DEFAULT_BUDGET = 2 * 1024**3
BYTES_PER_ENTRY = 120  # rough cost of one sparse entry held in Python dicts


class BudgetExceeded(RuntimeError):
    def __init__(self, degree: int, estimate: int, budget: int):
        self.degree = degree
        super().__init__(f"degree {degree} needs about {estimate} bytes, budget is {budget}")


class ModularDisagreement(ArithmeticError):
    pass


class NotFreeCommutative(ValueError):
    pass


@dataclass
class ChainComplex:
    """Exterior powers of a Lie algebra with the CE boundary, up to ``cap + 1``.

    ``blocks[n][w]`` lists the wedge tuples of degree ``n`` and weight ``w``;
    ``boundary[n][w]`` holds, per tuple, its image as ``{row_index: value}``
    with rows indexed inside ``blocks[n - 1][w]``.
    """

    lie: LiePresentation
    cap: int
    blocks: list = field(default_factory=list)
    boundary: list = field(default_factory=list)

    def dim(self, n: int) -> int:
        return comb(self.lie.dim, n)

    def apply(self, n: int, chain: dict) -> dict:
        """d_n on a chain given as ``{wedge_tuple: coefficient}``."""
        out: dict = {}
        for t, c in chain.items():
            for u, v in wedge_boundary(self.lie, t).items():
                out[u] = out.get(u, 0) + c * v
        return {k: v for k, v in out.items() if v}

    def check_d_squared(self, degrees=None) -> bool:
        for n in degrees or range(2, self.cap + 2):
            for block in self.blocks[n].values():
                for t in block:
                    if self.apply(n - 1, self.apply(n, {t: 1})):
                        return False
        return True


def wedge_boundary(L: LiePresentation, t: tuple) -> dict:
    """d(x_1 ^ ... ^ x_n) = sum_{i<j} (-1)^{i+j+1} [x_i, x_j] ^ (rest), on strictly increasing tuples."""
    out: dict = {}
    n = len(t)
    for a in range(n):
        for b in range(a + 1, n):
            br = L.bracket(t[a], t[b])
            if not br:
                continue
            rest = t[:a] + t[a + 1:b] + t[b + 1:]
            base = -1 if (a + b + 1) % 2 else 1
            for k, v in br.items():
                pos = bisect_left(rest, k)
                if pos < len(rest) and rest[pos] == k:
                    continue
                u = rest[:pos] + (k,) + rest[pos:]
                sgn = base if pos % 2 == 0 else -base
                out[u] = out.get(u, 0) + sgn * v
    return {k: v for k, v in out.items() if v}


def _weight_of(L: LiePresentation, t: tuple):
    if L.weights is None:
        return ()
    w = [0] * len(L.weights[0]) if L.weights else []
    for k in t:
        for i, x in enumerate(L.weights[k]):
            w[i] += x
    return tuple(w)


def estimate_bytes(L: LiePresentation, n: int) -> int:
    if n < 2:
        return comb(L.dim, n) * BYTES_PER_ENTRY
    avg = sum(len(v) for v in L.consts.values()) / max(1, comb(L.dim, 2))
    return int(comb(L.dim, n) * comb(n, 2) * max(avg, 1e-3) * BYTES_PER_ENTRY) + comb(L.dim, n) * BYTES_PER_ENTRY


def build_ce(L: LiePresentation, cap: int, budget: int = DEFAULT_BUDGET, zero_weight_only: bool = False) -> ChainComplex:
    """CE complex through degree ``cap + 1`` (so Betti numbers through ``cap`` are computable).

    With ``zero_weight_only`` only the weight-zero blocks are kept; the
    Cartan subalgebra acts invertibly on every other block, which is
    therefore acyclic, so the Betti numbers are unchanged.
    """
    if cap < 0:
        raise ValueError("degree cap must be non-negative")
    top = min(cap + 1, L.dim)
    for n in range(top + 1):
        est = estimate_bytes(L, n)
        if est > budget:
            raise BudgetExceeded(n, est, budget)
    C = ChainComplex(L, cap)
    zero = tuple(0 for _ in L.weights[0]) if L.weights else ()
    for n in range(cap + 2):
        groups: dict = {}
        if n <= L.dim:
            for t in combinations(range(L.dim), n):
                w = _weight_of(L, t)
                if zero_weight_only and w != zero:
                    continue
                groups.setdefault(w, []).append(t)
        C.blocks.append(groups)
    C.boundary.append({})
    for n in range(1, cap + 2):
        mats = {}
        for w, block in C.blocks[n].items():
            index = {u: i for i, u in enumerate(C.blocks[n - 1].get(w, ()))}
            cols = []
            for t in block:
                img = wedge_boundary(L, t)
                cols.append({index[u]: v for u, v in img.items()})
            mats[w] = cols
        C.boundary.append(mats)
    return C


def _block_rank(args):
    cols, method, primes = args
    if method == "exact":
        return (rank_exact(cols),)
    return tuple(rank_mod_p(cols, p) for p in primes)


@dataclass
class BettiReport:
    family: str
    n: int
    R: str
    method: str
    betti: list
    primitives: list
    primes: list = field(default_factory=list)
    dims: list = field(default_factory=list)
    ranks: list = field(default_factory=list)
    euler_ok: bool = True
    timings: dict = field(default_factory=dict)

    def to_json(self) -> str:
        return json.dumps(asdict(self), indent=2)


def _ranks(C: ChainComplex, method: str, primes: list, workers: int) -> list[tuple]:
    tasks = []
    keys = []
    for n in range(1, C.cap + 2):
        for w, cols in C.boundary[n].items():
            if any(cols):
                tasks.append((cols, method, primes))
                keys.append(n)
    if workers > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=workers) as ex:
            results = list(ex.map(_block_rank, tasks, chunksize=max(1, len(tasks) // (4 * workers))))
    else:
        results = [_block_rank(t) for t in tasks]
    width = 1 if method == "exact" else len(primes)
    per_degree = [(0,) * width for _ in range(C.cap + 2)]
    for n, r in zip(keys, results):
        per_degree[n] = tuple(a + b for a, b in zip(per_degree[n], r))
    return per_degree


def betti(C: ChainComplex, method: str = "modular", seed: int = 0, workers: int = 1, retries: int = 3) -> BettiReport:
    """b_n = dim Lambda^n - rank d_n - rank d_{n+1} for n <= cap.

    ``modular`` ranks every block modulo two random 62-bit primes and insists
    they agree (fresh primes on disagreement); ``exact`` uses fraction-free
    elimination over Q.
    """
    t0 = time.perf_counter()
    rng = random.Random(seed)
    primes: list = []
    for _ in range(retries):
        if method == "modular":
            primes = [random_prime(rng), random_prime(rng)]
            while primes[0] == primes[1]:
                primes[1] = random_prime(rng)
        elif method != "exact":
            raise ValueError(f"unknown rank method {method!r}")
        per = _ranks(C, method, primes, workers)
        if all(len(set(r)) == 1 for r in per):
            break
    else:
        raise ModularDisagreement(f"ranks disagree across primes {primes}")
    ranks = [r[0] for r in per]
    dims = [sum(len(b) for b in C.blocks[n].values()) for n in range(C.cap + 2)]
    b = [dims[n] - ranks[n] - ranks[n + 1] for n in range(C.cap + 1)]
    euler = sum((-1) ** n * (dims[n] - b[n]) for n in range(C.cap + 1)) == (-1) ** C.cap * ranks[C.cap + 1]
    L = C.lie
    try:
        prims = primitive_dims(b)
    except NotFreeCommutative:
        prims = []
    return BettiReport(L.family, L.n, L.algebra.name, method, b, prims, primes, dims, ranks, euler,
                       {"rank_seconds": round(time.perf_counter() - t0, 3)})


def _series_mul(a: list, b: list, top: int) -> list:
    out = [0] * (top + 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b[: top + 1 - i]):
                out[i + j] += x * y
    return out


def _generator_series(d: int, p: int, top: int) -> list:
    """(1 + t^d)^p for odd d, (1 - t^d)^{-p} for even d, truncated at ``top``."""
    s = [0] * (top + 1)
    for j in range(top // d + 1):
        s[j * d] = comb(p, j) if d % 2 else comb(p + j - 1, j)
    return s


def primitive_dims(series) -> list[int]:
    """Unique p_d >= 0 with prod_{d odd}(1+t^d)^{p_d} prod_{d even}(1-t^d)^{-p_d} = sum b_n t^n.

    Returns ``[p_0, p_1, ..., p_top]`` with ``p_0 = 0``.
    """
    b = list(series)
    if not b or b[0] != 1:
        raise NotFreeCommutative("b_0 must be 1")
    top = len(b) - 1
    current = [1] + [0] * top
    p = [0] * (top + 1)
    for d in range(1, top + 1):
        pd = b[d] - current[d]
        if pd < 0:
            raise NotFreeCommutative(f"negative primitive count at degree {d}")
        p[d] = pd
        if pd:
            current = _series_mul(current, _generator_series(d, pd, top), top)
    if current != b:
        raise NotFreeCommutative("series mismatch")
    return p


def betti_numbers(L: LiePresentation, cap: int, method: str = "modular", seed: int = 0, **kw) -> BettiReport:
    workers = kw.pop("workers", 1)
    t0 = time.perf_counter()
    C = build_ce(L, cap, **kw)
    t1 = time.perf_counter()
    rep = betti(C, method, seed, workers=workers)
    rep.timings["build_seconds"] = round(t1 - t0, 3)
    return rep
