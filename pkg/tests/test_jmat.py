import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from jacobihom.algebra import CATALOG_NAMES, catalog
from jacobihom.jmat import (FAMILY_TAU, FLAVORS, MINUS, PLUS, InfiniteSupport, JMat, NotTraceClass, bracket,
                            corner_compress, fixed_point_project, format_jmat, in_fixed_subalgebra, mul,
                            parse_jmat, random_jmat, shift_conjugation_check, star, tau, trace, transpose,
                            two_component_mul, two_component_tau)

k = catalog("k")
E = lambda i, j, r=None: JMat.unit(k, i, j, r)
S = lambda a: JMat.shift_pattern(k, a)


def test_products_of_units_and_shifts():
    assert E(0, 1) * E(1, 0) == E(0, 0)
    assert E(0, 3) * S(2) == E(0, 5)
    assert S(1) * S(-1) == S(0)
    assert S(1) * E(3, 3) == E(2, 3)


def test_corner_compressions():
    assert corner_compress(S(-2), PLUS, MINUS) == E(0, -2) + E(1, -1)
    assert not corner_compress(S(2), PLUS, MINUS)
    assert corner_compress(S(2), MINUS, PLUS) == E(-2, 0) + E(-1, 1)
    with pytest.raises(InfiniteSupport):
        corner_compress(S(1), PLUS, PLUS)


def test_star_and_transpose():
    A = catalog("dual-minus")
    eps = A.basis_coords(1)
    assert star(JMat.unit(A, 2, 5, eps)) == JMat.unit(A, -5, -2, A.bar(eps))
    assert transpose(JMat.shift_pattern(A, 3, eps)) == JMat.shift_pattern(A, -3, A.bar(eps))
    assert star(JMat.N(A)) == JMat.N(A)


def test_trace():
    assert trace(E(1, 1) + E(2, 3)) == (1,)
    with pytest.raises(NotTraceClass):
        trace(S(0))


def test_tau_on_a_unit():
    assert tau(E(3, 1), "tau", 0) == E(-1, -3)


def test_literals_round_trip():
    A = catalog("dual-minus")
    X = parse_jmat("E[0,-1](1 + 2*eps) - S^2(eps) + 1/2*E[3,3]", A)
    assert parse_jmat(format_jmat(X), A) == X
    assert parse_jmat("0", A) == JMat.zero(A)


seeds = st.integers(0, 10**6)


@settings(max_examples=40, deadline=None)
@given(seeds, st.sampled_from(CATALOG_NAMES))
def test_multiplication_associative(seed, name):
    A = catalog(name)
    rng = random.Random(seed)
    X, Y, Z = (random_jmat(A, rng, shifts=1) for _ in range(3))
    assert mul(mul(X, Y), Z) == mul(X, mul(Y, Z))


@settings(max_examples=40, deadline=None)
@given(seeds, st.sampled_from(CATALOG_NAMES), st.sampled_from(FLAVORS), st.integers(-3, 3))
def test_tau_is_an_anti_involution(seed, name, flavor, l):
    A = catalog(name)
    rng = random.Random(seed)
    X, Y = (random_jmat(A, rng, shifts=1) for _ in range(2))
    assert tau(tau(X, flavor, l), flavor, l) == X
    assert tau(mul(X, Y), flavor, l) == mul(tau(Y, flavor, l), tau(X, flavor, l))


@settings(max_examples=30, deadline=None)
@given(seeds, st.sampled_from(sorted(FAMILY_TAU)))
def test_fixed_subalgebra_closed_under_bracket(seed, family):
    A = catalog("m2")
    rng = random.Random(seed)
    flavor, l = FAMILY_TAU[family]
    X, Y = (fixed_point_project(random_jmat(A, rng, shifts=1), flavor, l) for _ in range(2))
    assert in_fixed_subalgebra(bracket(X, Y), flavor, l)


def test_flavour_coincidences():
    rng = random.Random(7)
    A = catalog("dual-minus")
    for _ in range(20):
        X = random_jmat(A, rng, shifts=1)
        assert tau(X, "tau_B") == tau(X, "tau_s", 0)
        assert tau(X, "tau_C") == tau(X, "tau", -1)
        assert tau(X, "tau_D") == tau(X, "tau_s", -1)


@pytest.mark.parametrize("l", range(-2, 3))
def test_shift_identities(l):
    rng = random.Random(l)
    for name in ("k", "dual-minus", "m2"):
        for _ in range(10):
            assert shift_conjugation_check(l, random_jmat(catalog(name), rng, shifts=1))


def test_conjugation_by_N_other_direction_fails():
    # N X N^{-1} in place of N^{-1} X N breaks the identity on E_{3,1}
    X = E(3, 1)
    N, Ninv = S(1), S(-1)
    assert mul(mul(Ninv, tau(X, "tau", 0)), N) == tau(mul(mul(Ninv, X), N), "tau", 2)
    assert mul(mul(Ninv, tau(X, "tau", 0)), N) != tau(mul(mul(N, X), Ninv), "tau", 2)


def test_two_component_tau_is_anti_involution():
    A = catalog("dual-minus")
    one, eps = A.basis_coords(0), A.basis_coords(1)
    X = {(0, 1, 0, 1): eps, (2, -1, 1, 1): one}
    Y = {(1, 3, 1, 0): one, (-1, 0, 1, 0): eps}
    assert two_component_tau(two_component_tau(X, A), A) == X
    lhs = two_component_tau(two_component_mul(X, Y, A), A)
    rhs = two_component_mul(two_component_tau(Y, A), two_component_tau(X, A), A)
    assert lhs == rhs
