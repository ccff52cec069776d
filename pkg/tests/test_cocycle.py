import random
from fractions import Fraction

import pytest

from jacobihom.algebra import CATALOG_NAMES, catalog
from jacobihom.cocycle import (ExtendedElement, InternalMismatch, NotInSubalgebra, _psi_corners,
                               _psi_materialized, cocycle_identity, extended_bracket, extended_jacobi,
                               japanese_cocycle, kernel_counterexample, kernel_fixed_check,
                               odd_coboundary_check, psi, random_fixed)
from jacobihom.jmat import FAMILY_TAU, JMat, random_jmat

k = catalog("k")
E = lambda i, j: JMat.unit(k, i, j)


def test_worked_values():
    assert psi(E(0, -1), E(-1, 0)) == (-1,)
    assert japanese_cocycle(E(0, -1), E(-1, 0)) == (-1,)
    assert japanese_cocycle(E(-1, 0), E(0, -1)) == (1,)
    assert japanese_cocycle(E(-2, -1), E(-1, -2)) == (0,)
    assert psi(E(2, 2), E(-3, -3)) == (0,)
    X = E(0, -1) + E(1, 1)
    assert psi(X, X) == (0,)


def test_shift_pair():
    assert psi(JMat.N(k), JMat.shift_pattern(k, -1)) == (1,)


def test_two_routes_separately():
    rng = random.Random(0)
    A = catalog("m2")
    for _ in range(30):
        X, Y = (random_jmat(A, rng, shifts=1) for _ in range(2))
        assert A.abelianization.project(_psi_materialized(X, Y)) == A.abelianization.project(_psi_corners(X, Y))


def test_mismatch_is_reported(monkeypatch):
    import jacobihom.cocycle as mod

    monkeypatch.setattr(mod, "_psi_corners", lambda X, Y: X.alg.unit)
    with pytest.raises(InternalMismatch):
        mod.psi(E(1, 1), E(2, 2))


@pytest.mark.parametrize("name", CATALOG_NAMES)
def test_japanese_equals_psi(name):
    A = catalog(name)
    rng = random.Random(11)
    for _ in range(40):
        X, Y = random_jmat(A, rng), random_jmat(A, rng)
        assert psi(X, Y) == japanese_cocycle(X, Y)


@pytest.mark.parametrize("name", ["k", "dual-minus", "m2"])
def test_cocycle_identity(name):
    A = catalog(name)
    rng = random.Random(1)
    assert cocycle_identity(E(0, -1), E(-1, 0), E(0, 0))
    for _ in range(20):
        X, Y, Z = (random_jmat(A, rng, shifts=1) for _ in range(3))
        assert cocycle_identity(X, Y, Z)


def test_extended_bracket_example():
    u = (E(0, -1) - E(1, 0)).scale(Fraction(1, 2))
    v = (E(-1, 0) - E(0, 1)).scale(Fraction(1, 2))
    out = extended_bracket(ExtendedElement.of(u), ExtendedElement.of(v), "o_odd")
    assert out.central == (Fraction(-1, 4),)
    assert out.matrix == (E(1, 1) - E(-1, -1)).scale(Fraction(1, 4))


def test_central_elements_are_central():
    u = (E(0, -1) - E(1, 0)).scale(Fraction(1, 2))
    c = ExtendedElement.of(JMat.zero(k), (Fraction(3),))
    out = extended_bracket(c, ExtendedElement.of(u), "o_odd")
    assert not out


def test_not_in_subalgebra():
    with pytest.raises(NotInSubalgebra):
        extended_bracket(ExtendedElement.of(E(0, 1)), ExtendedElement.of(E(1, 0)), "sp")
    A = catalog("dual-minus")
    with pytest.raises(NotInSubalgebra):
        ExtendedElement.of(JMat.zero(A), (0, 1))


@pytest.mark.parametrize("family", sorted(FAMILY_TAU))
def test_extended_jacobi(family):
    A = catalog("m2")
    rng = random.Random(4)
    for _ in range(15):
        assert extended_jacobi(*(random_fixed(A, family, rng, shifts=1) for _ in range(3)), family)


@pytest.mark.parametrize("name", CATALOG_NAMES)
@pytest.mark.parametrize("family", ["sp", "o_even"])
def test_kernel_values_fixed(name, family):
    assert kernel_fixed_check(family, 30, catalog(name), seed=2, shifts=1)


@pytest.mark.parametrize("name", ["k", "m2", "dual-plus", "kz2"])
def test_kernel_values_fixed_o_odd_when_no_minus_part(name):
    assert kernel_fixed_check("o_odd", 30, catalog(name), seed=2, shifts=1)


def test_o_odd_values_leave_fixed_part_over_dual_minus():
    A = catalog("dual-minus")
    eps = A.basis_coords(1)
    X = JMat.unit(A, 0, -1, eps) + JMat.unit(A, 1, 0, eps)
    Y = JMat.unit(A, -1, 0) - JMat.unit(A, 0, 1)
    value = psi(X, Y)
    assert not A.abelianization.is_fixed(value)
    assert kernel_counterexample("o_odd", 50, A, seed=0) is not None


@pytest.mark.parametrize("name", ["dual-minus", "trunc3-minus", "m2"])
def test_o_odd_minus_part_is_a_coboundary(name):
    assert odd_coboundary_check(60, catalog(name), seed=3, shifts=1)
