import random

import pytest

from jacobihom.algebra import catalog
from jacobihom.ftiso import (BlockMatrix, ShiftPartPresent, block_bracket, bracket_preservation,
                             defining_defect, phi, phi_inverse, random_pairs, restriction_check, split_index)
from jacobihom.jmat import FAMILY_TAU, JMat, fixed_point_project, random_jmat
from jacobihom.lie import family_window, index_window

k = catalog("k")
I3, I4 = index_window(3), index_window(4)


def test_split_index():
    assert split_index(I3, 3) == (0, 1)
    assert split_index(I3, 4) == (1, 1)
    assert split_index(I4, -3) == (1, -1)
    assert split_index(I4, 2) == (-2, 1)
    with pytest.raises(ValueError):
        split_index([0, 2], 1)


def test_phi_examples():
    assert phi(I3, JMat.unit(k, 0, 0)).as_dict() == {(0, 0): JMat.unit(k, 0, 0)}
    assert phi(I3, JMat.unit(k, 3, 4)).as_dict() == {(0, 1): JMat.unit(k, 1, 1)}
    assert phi(I4, JMat.unit(k, -3, 2)).as_dict() == {(1, -2): JMat.unit(k, -1, 1)}


def test_shift_part_rejected():
    with pytest.raises(ShiftPartPresent):
        phi(I3, JMat.N(k))


@pytest.mark.parametrize("size", [2, 3, 4, 5])
def test_round_trips(size):
    A = catalog("m2")
    I = index_window(size)
    rng = random.Random(size)
    for _ in range(100):
        X = random_jmat(A, rng, window=3 * size, band=3 * size)
        assert phi_inverse(phi(I, X)) == X
    for _ in range(20):
        blocks = {(rng.choice(I), rng.choice(I)): random_jmat(A, rng) for _ in range(3)}
        B = BlockMatrix.of(A, I, blocks)
        assert phi(I, phi_inverse(B)) == B


def test_bracket_examples():
    X, Y = JMat.unit(k, 0, 1), JMat.unit(k, 1, 0)
    assert phi(I3, X * Y - Y * X) == block_bracket(phi(I3, X), phi(I3, Y))
    assert not block_bracket(phi(I3, X), phi(I3, X))


def test_bracket_preservation_random():
    A = catalog("m2")
    for I in (I3, I4):
        assert bracket_preservation(I, random_pairs(A, I, 100, seed=2)).ok


@pytest.mark.parametrize("family", sorted(FAMILY_TAU))
@pytest.mark.parametrize("n", [2, 3])
@pytest.mark.parametrize("name", ["k", "dual-minus", "m2"])
def test_restrictions(family, n, name):
    assert restriction_check(family, n, 30, seed=n, alg=catalog(name)).ok


def test_restriction_generator_example():
    A = catalog("dual-minus")
    eps = A.basis_coords(1)
    gen = (JMat.unit(A, 0, 3, eps) - JMat.unit(A, -3, 0, A.bar(eps))).scale(1)
    I = family_window("o_odd", 2)
    assert not defining_defect("o_odd", 2, phi(I, gen))
    assert not defining_defect("o_odd", 2, phi(I, JMat.zero(A)))


def test_wrong_involution_is_detected():
    A = catalog("dual-minus")
    X = fixed_point_project(JMat.unit(A, 0, 3), "tau", 0)
    assert defining_defect("o_odd", 2, phi(family_window("o_odd", 2), X))
