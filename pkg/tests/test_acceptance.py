"""The twelve acceptance criteria, one test each, with their time limits.

Every test records a one-line verdict that is printed in the terminal
summary under "acceptance criteria" (and directly with ``-s``).
"""

import random
import time
from contextlib import contextmanager

import pytest

from jacobihom import cecomplex, cocycle, dihedral, fock, ftiso, jmat, lie, shiftmap
from jacobihom.algebra import CATALOG_NAMES, catalog

k = catalog("k")


@contextmanager
def criterion(record_property, label, limit, summary):
    record_property("criterion", label)
    record_property("limit", limit)
    record_property("summary", summary)
    t0 = time.perf_counter()
    ok = False
    try:
        yield
        ok = True
    finally:
        elapsed = time.perf_counter() - t0
        record_property("seconds", elapsed)
        print(f"\n{label} {'PASS' if ok and elapsed < limit else 'FAIL'} {summary} ({elapsed:.2f}s < {limit}s)")
    assert elapsed < limit, f"{label} took {elapsed:.1f}s, limit {limit}s"


def test_c01_dihedral_homology_of_k(record_property):
    with criterion(record_property, "C1", 10, "HD_n(k), n=0..8 = 1,0,0,0,1,0,0,0,1"):
        assert dihedral.homology_dims(k, 8, "dihedral") == [1, 0, 0, 0, 1, 0, 0, 0, 1]


def test_c02_skew_dihedral_two_ways(record_property):
    with criterion(record_property, "C2", 30, "skew HD(k) nonzero exactly at n = 2 mod 4, complex and eigen-split agree"):
        skew = dihedral.homology_dims(k, 8, "skew")
        split = [dihedral.eigen_split_dims(k, n)[2] for n in range(9)]
        assert skew == split
        assert [n for n, v in enumerate(skew) if v] == [n for n in range(9) if n % 4 == 2]


def test_c03_predicted_primitive_slots(record_property):
    with criterion(record_property, "C3", 60, "HD_{d-2}(k) places predicted primitives at d = 2, 6"):
        pred = dihedral.predicted_primitives(k, 8)
        assert [d for d, v in pred.items() if v] == [2, 6]
        plus = dihedral.homology_dims(k, 6, "dihedral")
        assert all(pred[d] == plus[d - 2] for d in pred)
        report = dihedral.homology_report(k, 6, "plus")
        assert all(pred[r["n"] + 2] == r["betti"] for r in report["degrees"])


def test_c04_stable_lie_homology(record_property):
    expected = [1, 0, 0, 1, 0, 0, 0, 1, 0, 0, 1]
    with criterion(record_property, "C4", 600, "sp_4(k) and o_5(k) through degree 10, p_3 = p_7 = 1"):
        for family in ("sp", "o_odd"):
            rep = cecomplex.betti_numbers(lie.build(family, 2, k), 10, "modular", seed=0)
            assert rep.betti == expected and rep.euler_ok
            assert [d for d, p in enumerate(rep.primitives) if p] == [3, 7]
            assert rep.primitives[3] == rep.primitives[7] == 1


def test_c05_stabilization_scan(record_property):
    with criterion(record_property, "C5", 900, "o_{2n+1}(k), n=1..3, p_3 = 1, p_2 = p_4 = 0"):
        prims = []
        for n in (1, 2, 3):
            rep = cecomplex.betti_numbers(lie.build("o_odd", n, k), 5, "modular", seed=n)
            prims.append(rep.primitives)
        assert [p[3] for p in prims] == [1, 1, 1]
        assert all(p[2] == p[4] == 0 for p in prims)
        pred = dihedral.predicted_primitives(k, 5, "skew", 1)
        assert (pred[2], pred[3], pred[4]) == (prims[-1][2], prims[-1][3], prims[-1][4])


def test_c06_noncommutative_coefficients(record_property):
    with criterion(record_property, "C6", 300, "dual numbers and M_2(k): complex = eigen-split for n <= 4, HD_0 = (R^ab)_1"):
        for name in ("dual-minus", "m2"):
            A = catalog(name)
            plus = dihedral.homology_dims(A, 4, "dihedral")
            minus = dihedral.homology_dims(A, 4, "skew")
            for n in range(5):
                _, p, m = dihedral.eigen_split_dims(A, n)
                assert (plus[n], minus[n]) == (p, m)
            assert plus[0] == len(A.abelianization.fixed_basis)


def test_c07_shift_map_sign(record_property):
    with criterion(record_property, "C7", 60, "y o Phi_p = -Phi_p o y for p <= 3, 50 chains each, all catalog algebras"):
        for name in CATALOG_NAMES:
            for p in range(4):
                assert shiftmap.y_sign_check(p, 50, catalog(name), seed=p)


def test_c08_block_isomorphisms(record_property):
    with criterion(record_property, "C8", 120, "restriction identity for three families, n = 2, 3; bracket preservation"):
        A = catalog("dual-minus")
        for family in jmat.FAMILY_TAU:
            for n in (2, 3):
                assert ftiso.restriction_check(family, n, 100, seed=n, alg=A).ok
        I = lie.index_window(3)
        assert ftiso.bracket_preservation(I, ftiso.random_pairs(catalog("m2"), I, 100, seed=1)).ok


def test_c09_cocycle(record_property):
    with criterion(record_property, "C9", 120, "Psi formulas agree, 2-cocycle, extended Jacobi, kernel in (R^ab)_1"):
        rng = random.Random(9)
        for name in ("k", "m2", "dual-minus"):
            A = catalog(name)
            for family in jmat.FAMILY_TAU:
                for _ in range(100 if name == "m2" else 20):
                    X, Y, Z = (cocycle.random_fixed(A, family, rng, shifts=1) for _ in range(3))
                    assert cocycle.cocycle_identity(X, Y, Z)  # psi raises if its two formulas differ
        A = catalog("m2")
        for family in jmat.FAMILY_TAU:
            for _ in range(100 // 3 + 1):
                assert cocycle.extended_jacobi(*(cocycle.random_fixed(A, family, rng, 1) for _ in range(3)), family)
        for name in ("k", "m2"):
            for family in jmat.FAMILY_TAU:
                assert cocycle.kernel_fixed_check(family, 50, catalog(name), seed=1, shifts=1)
        for name in CATALOG_NAMES:
            for family in ("sp", "o_even"):
                assert cocycle.kernel_fixed_check(family, 30, catalog(name), seed=1, shifts=1)


@pytest.mark.xfail(strict=True, reason="on o_odd the (R^ab)_-1 part of Psi is a nonzero coboundary")
def test_c09b_cocycle_kernel_o_odd_over_dual_numbers(record_property):
    with criterion(record_property, "C9b", 120, "o_odd over dual numbers: Psi values in (R^ab)_1"):
        assert cocycle.odd_coboundary_check(50, catalog("dual-minus"), seed=1, shifts=1)
        assert cocycle.kernel_fixed_check("o_odd", 50, catalog("dual-minus"), seed=1)


def test_c10_japanese_cocycle_and_fermions(record_property):
    with criterion(record_property, "C10", 60, "Japanese cocycle = Psi on 200 pairs; Fock bracket on 50 pairs, m = 3"):
        rng = random.Random(10)
        for name in ("k", "m2"):
            A = catalog(name)
            for _ in range(200):
                X, Y = jmat.random_jmat(A, rng), jmat.random_jmat(A, rng)
                assert cocycle.psi(X, Y) == cocycle.japanese_cocycle(X, Y)
        F = fock.FockSpace(3)
        a, b = jmat.JMat.unit(k, 0, -1), jmat.JMat.unit(k, -1, 0)
        assert fock.bracket_defect(F, a, b) == -1 and fock.bracket_formula_check(a, b, space=F)
        for _ in range(50):
            a, b = fock.random_window_matrix(3, rng), fock.random_window_matrix(3, rng)
            assert fock.bracket_formula_check(a, b, space=F)


def test_c11_hyperoctahedral_stabilizer(record_property):
    with criterion(record_property, "C11", 60, "stabilizer of order 2n, dihedral, generated by kappa_H and eta omega_H"):
        for n in (2, 3, 4):
            r = dihedral.hyperoctahedral_stabilizer(n)
            assert r.order == 2 * n and r.relations and r.generators_in_stabilizer
            assert r.generated_order == r.order and r.is_dihedral


def test_c12_shift_identities(record_property):
    with criterion(record_property, "C12", 60, "tN N = I, N^-1 J_l N = -J_{l+2}, N^-1 tau_l(X) N = tau_{l+2}(Ad(N) X)"):
        rng = random.Random(12)
        for _ in range(50):
            X = jmat.random_jmat(catalog("m2"), rng, shifts=1)
            for l in range(-2, 3):
                assert jmat.shift_conjugation_check(l, X)
