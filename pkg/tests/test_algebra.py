from fractions import Fraction

import pytest

from jacobihom.algebra import (CATALOG_NAMES, AxiomViolation, abelianization_fixed, catalog, dump_algebra,
                               eigen_split, matrix_algebra_2, parse_algebra)


@pytest.mark.parametrize("name", CATALOG_NAMES)
def test_catalog_axioms_and_round_trip(name):
    A = catalog(name)
    B = parse_algebra(dump_algebra(A))
    assert B.dim == A.dim and B.involution == A.involution and B.unit == A.unit


@pytest.mark.parametrize("name", CATALOG_NAMES)
def test_involution_is_anti_automorphism(name):
    A = catalog(name)
    for i in range(A.dim):
        for j in range(A.dim):
            lhs = A.bar(A.product_coords(i, j))
            rhs = A.mul(A.bar(A.basis_coords(j)), A.bar(A.basis_coords(i)))
            assert lhs == rhs


@pytest.mark.parametrize("name", CATALOG_NAMES)
def test_abelianization_involution(name):
    A = catalog(name)
    ab = A.abelianization
    for q in ab.basis:
        v = ab.project(q)
        assert ab.bar(ab.bar(v)) == v
    for f in ab.fixed_basis:
        assert ab.is_fixed(f)


def test_m2_transpose_numbers():
    A = catalog("m2")
    plus, minus = eigen_split(A)
    fixed, _, ab = abelianization_fixed(A)
    assert (len(plus), len(minus), ab.dim, len(ab.fixed_basis)) == (3, 1, 1, 1)


def test_dual_minus_numbers():
    A = catalog("dual-minus")
    plus, minus = eigen_split(A)
    assert (len(plus), len(minus)) == (1, 1)
    assert A.abelianization.dim == 2 and len(A.abelianization.fixed_basis) == 1


def test_identity_on_m2_is_not_an_anti_involution():
    with pytest.raises(AxiomViolation) as exc:
        matrix_algebra_2("identity")
    assert exc.value.kind == "involution"


def test_parse_rejects_bad_involution():
    text = """
    [dimension]
    2
    [labels]
    1 x
    [products]
    0 0 0 1
    0 1 1 1
    1 0 1 1
    1 1 0 1
    1 1 1 1
    [involution]
    0 0 1
    1 1 2
    """
    with pytest.raises(AxiomViolation) as exc:
        parse_algebra(text)
    assert exc.value.kind == "involution"


def test_element_arithmetic():
    A = catalog("dual-minus")
    one, eps = A.basis()
    assert eps * eps == A.zero()
    assert eps.bar() == -eps
    assert (one + eps) * (one - eps) == one
    assert A.parse("1 + 2*eps") == one + 2 * eps


def test_eigen_form_is_diagonal():
    A = catalog("m2")
    E = A.eigen_form
    for i in range(A.dim):
        for j in range(A.dim):
            if i != j:
                assert E.algebra.involution[i][j] == 0
    v = (Fraction(1), Fraction(2), Fraction(3), Fraction(4))
    assert E.from_eigen(E.to_eigen(v)) == v
