from fractions import Fraction

import numpy as np
import pytest

from toric.errors import InvalidInputError
from toric.lattice_galois import (
    GaloisLattice, average, coinvariants, determinant, divisor_multiplicities, index_in_saturation,
    exgcd, format_vector, invariant_factors, invariants_sublattice, kernel_basis, normal_form, primitive, sign_normalize,
)
from toric.pairs import catalog

SWAP = ((0, 1), (1, 0))
ROTATION = ((0, -1), (1, 0))


def test_primitive_and_sign_normalize():
    assert primitive((2, 4, -6)) == (1, 2, -3)
    assert primitive((Fraction(1, 2), 1)) == (1, 2)
    assert primitive((0, 0)) == (0, 0)
    assert sign_normalize((0, -1, 2)) == (0, 1, -2)


def test_normal_form_reproduces_input():
    A = np.array([[2, 4, 4], [-6, 6, 12], [10, -4, -16]], dtype=object)
    S, D, T, Sinv, Tinv = normal_form(A)
    assert (S.dot(D).dot(T) == A).all()
    assert (S.dot(Sinv) == np.eye(3, dtype=object)).all()
    assert (T.dot(Tinv) == np.eye(3, dtype=object)).all()
    off_diagonal = [D[i, j] for i in range(3) for j in range(3) if i != j]
    assert all(x == 0 for x in off_diagonal)
    product = abs(D[0, 0] * D[1, 1] * D[2, 2])
    assert product == abs(determinant(A.tolist()))


@pytest.mark.parametrize('a, b', [(0, 0), (0, 5), (-4, 0), (6, -4), (-3, -7)])
def test_exgcd_is_unimodular(a, b):
    M = exgcd(a, b)
    assert M[0, 0] * M[1, 1] - M[0, 1] * M[1, 0] == 1
    top, bottom = M.dot(np.array([a, b], dtype=object))
    assert abs(top) == np.gcd(abs(a), abs(b))
    assert bottom == 0


def test_exgcd_of_zeros_is_identity():
    assert (exgcd(0, 0) == np.eye(2, dtype=object)).all()


def test_normal_form_with_leading_zero_columns():
    A = np.array([[0, 0, 1], [0, 0, 2], [0, 0, 0]], dtype=object)
    S, D, T, Sinv, Tinv = normal_form(A)
    assert (S.dot(D).dot(T) == A).all()
    assert (T.dot(Tinv) == np.eye(3, dtype=object)).all()
    basis = kernel_basis(A.tolist())
    assert len(basis) == 2
    assert all(v[2] == 0 for v in basis)
    assert index_in_saturation([v[:2] for v in basis]) == 1


def test_kernel_basis_is_saturated():
    basis = kernel_basis([[1, 1, 1]])
    assert len(basis) == 2
    assert all(sum(v) == 0 for v in basis)
    assert index_in_saturation(basis) == 1


def test_index_in_saturation():
    assert index_in_saturation([(2, 0), (0, 3)]) == 6
    assert index_in_saturation([(1, 1), (1, -1)]) == 2


def test_invariant_factors():
    assert invariant_factors([2, 3]) == [6]
    assert invariant_factors([2, 4]) == [2, 4]
    assert invariant_factors([1, 1]) == []


def test_lattice_orders():
    M = GaloisLattice.with_frobenius(((0, 0, 1), (1, 0, 0), (0, 1, 0)))
    assert M.inertia_order == 1
    assert M.frobenius_order_mod_inertia == 3
    assert not M.is_split
    assert GaloisLattice.split(2).is_split


def test_lattice_rejects_non_unimodular():
    with pytest.raises(InvalidInputError):
        GaloisLattice(2, ((2, 0), (0, 1)), ((1, 0), (0, 1)))


def test_lattice_from_dict_errors():
    with pytest.raises(InvalidInputError):
        GaloisLattice.from_dict({'inertia': [[1]]})
    M = GaloisLattice.from_dict({'rank': 2, 'inertia': [list(r) for r in SWAP]})
    assert M.inertia_order == 2
    assert M.to_dict()['frobenius'] == [[1, 0], [0, 1]]


def test_swap_invariants_and_coinvariants():
    M = GaloisLattice(2, SWAP, ((1, 0), (0, 1)))
    inv = invariants_sublattice(M)
    assert inv.basis == ((1, 1),)
    assert inv.saturated
    assert inv.contains((3, 3))
    assert not inv.contains((1, 0))
    co = coinvariants(M)
    assert co.free_rank == 1
    assert co.torsion == ()
    assert co.free_map == ((1, 1),)
    assert co.project((2, 5)) == (7,)


def test_rotation_has_torsion_coinvariants():
    M = GaloisLattice(2, ROTATION, ((1, 0), (0, 1)))
    assert M.inertia_order == 4
    assert invariants_sublattice(M).rank == 0
    co = coinvariants(M)
    assert co.free_rank == 0
    assert co.torsion == (2,)


def test_invariants_selector():
    M = GaloisLattice.split(3)
    assert invariants_sublattice(M, 'both').rank == 3
    with pytest.raises(InvalidInputError):
        invariants_sublattice(M, 'neither')


def test_average():
    M = GaloisLattice(2, SWAP, ((1, 0), (0, 1)))
    assert average(M, (1, 0)) == (Fraction(1, 2), Fraction(1, 2))
    assert average(M, (2, 2)) == (2, 2)
    with pytest.raises(InvalidInputError):
        average(M, (1, 0, 0))


def test_divisor_multiplicities_gl2():
    pair = catalog.gl(2, 1)
    mult = divisor_multiplicities(pair, (1, 0))
    assert list(mult.values()) == [1, 0]


def test_divisor_multiplicities_integral_across_catalog():
    pairs = [catalog.gl(3, 1), catalog.gsp(2), catalog.gspin(2), catalog.gu_ramified(3, 2, 1),
             catalog.res_gl_ramified_example(2), catalog.gl_two_step_parahoric(4, 2)]
    for pair in pairs:
        for i in range(pair.rank):
            chi = tuple(1 if j == i else 0 for j in range(pair.rank))
            values = divisor_multiplicities(pair, chi)
            assert all(isinstance(m, int) for m in values.values())


def test_divisor_multiplicities_rank_mismatch():
    with pytest.raises(InvalidInputError):
        divisor_multiplicities(catalog.gl(2, 1), (1, 0, 0))


def test_format_vector_separators():
    assert format_vector((1, -2, 0)) == "(1,-2,0)"
    assert format_vector([3, 4], ", ") == "(3, 4)"
