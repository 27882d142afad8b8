"""
Lattices with Galois actions
Exact integer linear algebra (Smith-style normal form, kernels, saturation),
inertia/Frobenius invariants and coinvariants, the averaging map, the
pairing with characters and divisor multiplicities.

All lattices are concretely Z^rank; vectors are tuples of int or Fraction.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from math import gcd
from typing import Any, Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np
import sympy

from .errors import InvalidInputError, InvariantViolation

Vector = Tuple[int, ...]
RationalVector = Tuple[Fraction, ...]
Matrix = Tuple[Tuple[int, ...], ...]


# ---------------------------------------------------------------------------
# Vector helpers
# ---------------------------------------------------------------------------

def dot(u: Sequence, v: Sequence):
    """Exact inner product"""
    if len(u) != len(v):
        raise InvalidInputError(f"dimension mismatch: {len(u)} vs {len(v)}")
    return sum(a * b for a, b in zip(u, v))


def vec_gcd(v: Iterable[int]) -> int:
    return reduce(gcd, (abs(int(x)) for x in v), 0)


def clear_denominators(v: Sequence) -> Vector:
    """Smallest positive integer multiple of a rational vector"""
    fracs = [Fraction(x) for x in v]
    lcm = 1
    for x in fracs:
        lcm = lcm * x.denominator // gcd(lcm, x.denominator)
    return tuple(int(x * lcm) for x in fracs)


def primitive(v: Sequence) -> Vector:
    """Primitive integer vector on the ray through v (orientation kept)"""
    w = clear_denominators(v)
    g = vec_gcd(w)
    if g == 0:
        return w
    return tuple(x // g for x in w)


def sign_normalize(v: Vector) -> Vector:
    """Flip v so that its first nonzero coordinate is positive"""
    for x in v:
        if x != 0:
            return v if x > 0 else tuple(-y for y in v)
    return v


def mat_vec(M: Sequence[Sequence], v: Sequence) -> tuple:
    return tuple(sum(a * b for a, b in zip(row, v)) for row in M)


def transpose(M: Sequence[Sequence]) -> Matrix:
    if not M:
        return ()
    return tuple(tuple(row[j] for row in M) for j in range(len(M[0])))


def mat_mul(A: Sequence[Sequence], B: Sequence[Sequence]) -> Matrix:
    return to_matrix(np.array(A, dtype=object).dot(np.array(B, dtype=object)))


def identity(n: int) -> Matrix:
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def to_matrix(a) -> Matrix:
    """Convert a 2-d array-like to a tuple-of-tuples matrix"""
    return tuple(tuple(x for x in row) for row in np.asarray(a, dtype=object).tolist())


def rank(rows: Sequence[Sequence]) -> int:
    """Exact rank over Q"""
    rows = [list(r) for r in rows]
    if not rows or not rows[0]:
        return 0
    return sympy.Matrix(rows).rank()


def nullspace(rows: Sequence[Sequence], ncols: int) -> List[Vector]:
    """Primitive integer basis of {x : rows . x = 0} over Q"""
    if not rows:
        return [tuple(1 if i == j else 0 for i in range(ncols)) for j in range(ncols)]
    return [primitive(list(v)) for v in sympy.Matrix([list(r) for r in rows]).nullspace()]


def rational_inverse(M: Sequence[Sequence]) -> Tuple[Tuple[Fraction, ...], ...]:
    inv = sympy.Matrix([list(r) for r in M]).inv()
    return tuple(tuple(Fraction(int(x.p), int(x.q)) for x in inv.row(i)) for i in range(inv.rows))


def determinant(M: Sequence[Sequence]) -> int:
    if not M:
        return 1
    return int(sympy.Matrix([list(r) for r in M]).det(method='bareiss'))


# ---------------------------------------------------------------------------
# Smith-style normal form over Z (object-dtype numpy, exact)
# ---------------------------------------------------------------------------

def exgcd(a: int, b: int) -> np.ndarray:
    """
    Extended gcd as a unimodular row operation

    Returns:
        2x2 integer matrix M with det 1 and M @ [a, b] = [gcd(a, b), 0].
        If a divides b, M[0, 1] is 0.
    """
    if a == 0 and b == 0:
        return np.eye(2, dtype=object)
    a_sign = -1 if a < 0 else 1
    a *= a_sign
    b_sign = -1 if b < 0 else 1
    b *= b_sign

    M = np.array([[a, 1, 0],
                  [b, 0, 1]], dtype=object)
    M = M[::-1]
    while M[1, 0] != 0:
        q = M[0, 0] // M[1, 0]
        M[0] -= q * M[1]
        M = M[::-1]

    g = M[0, 0]
    M = M[:, 1:]
    M *= [a_sign, b_sign]
    if g != 0:
        M[1] = [- b_sign * b // g, a_sign * a // g]
    return M


def _inv_2x2_det1(M: np.ndarray) -> np.ndarray:
    return np.array([[M[1, 1], -M[0, 1]], [-M[1, 0], M[0, 0]]], dtype=object)


def normal_form(A) -> Tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    """
    Diagonalize an integer matrix by unimodular row and column operations

    Args:
        A: integer matrix (m x n)

    Returns:
        (S, D, T, Sinv, Tinv) with A == S @ D @ T, D diagonal (no divisibility
        normalization), S, T of determinant 1 with exact inverses.
    """
    A = np.array(A, dtype=object)
    if A.ndim != 2:
        raise InvalidInputError("normal_form expects a 2-d matrix")
    D = A.copy()
    S, T = np.eye(D.shape[0], dtype=object), np.eye(D.shape[1], dtype=object)
    Sinv, Tinv = S.copy(), T.copy()

    def clear_row(i):
        if (D[i, i + 1:] == 0).all():
            return False
        for j in range(i + 1, D.shape[1]):
            M = exgcd(D[i, i], D[i, j]).T
            D[:, [i, j]] = D[:, [i, j]].dot(M)
            T[[i, j]] = _inv_2x2_det1(M).dot(T[[i, j]])
            Tinv[:, [i, j]] = Tinv[:, [i, j]].dot(M)
        return True

    def clear_col(i):
        if (D[i + 1:, i] == 0).all():
            return False
        for j in range(i + 1, D.shape[0]):
            M = exgcd(D[i, i], D[j, i])
            D[[i, j]] = M.dot(D[[i, j]])
            S[:, [i, j]] = S[:, [i, j]].dot(_inv_2x2_det1(M))
            Sinv[[i, j]] = M.dot(Sinv[[i, j]])
        return True

    for i in range(min(*D.shape)):
        clear_col(i)
        while clear_row(i) and clear_col(i):
            pass

    if not (S.dot(D).dot(T) == A).all():
        raise InvariantViolation("normal form does not reproduce its input")
    return S, D, T, Sinv, Tinv


def _diagonal(D: np.ndarray, length: int) -> List[int]:
    diag = [D[i, i] for i in range(min(D.shape))]
    return diag + [0] * max(0, length - len(diag))


def kernel_basis(A) -> List[Vector]:
    """Saturated Z-basis of the integer kernel {x : A x = 0}"""
    A = np.array(A, dtype=object)
    if A.size == 0:
        n = A.shape[1] if A.ndim == 2 else 0
        return [tuple(1 if i == j else 0 for i in range(n)) for j in range(n)]
    S, D, T, Sinv, Tinv = normal_form(A)
    diag = _diagonal(D, Tinv.shape[0])
    return [tuple(Tinv[:, j]) for j in range(Tinv.shape[0]) if diag[j] == 0]


def annihilator_basis(columns: Sequence[Vector], n: int) -> List[Vector]:
    """Rows spanning the lattice of integer functionals killing span(columns)"""
    if not columns:
        return [tuple(1 if i == j else 0 for i in range(n)) for j in range(n)]
    A = np.array(transpose(columns), dtype=object)
    S, D, T, Sinv, Tinv = normal_form(A)
    diag = _diagonal(D, Sinv.shape[0])
    return [tuple(Sinv[i]) for i in range(Sinv.shape[0]) if diag[i] == 0]


def saturation_basis(columns: Sequence[Vector], n: int) -> List[Vector]:
    """Z-basis of span_Q(columns) intersected with Z^n"""
    ann = annihilator_basis(columns, n)
    if not ann:
        return [tuple(1 if i == j else 0 for i in range(n)) for j in range(n)]
    return kernel_basis(ann)


def index_in_saturation(columns: Sequence[Vector]) -> int:
    """Index of the group generated by columns inside its saturation"""
    if not columns:
        return 1
    _, D, _, _, _ = normal_form(np.array(transpose(columns), dtype=object))
    prod = 1
    for d in _diagonal(D, 0):
        if d != 0:
            prod *= abs(d)
    return prod


def invariant_factors(orders: Iterable[int]) -> List[int]:
    """Normalize a list of cyclic orders to invariant factors d_1 | d_2 | ..."""
    primes: Dict[int, List[int]] = {}
    for n in orders:
        n = abs(int(n))
        if n <= 1:
            continue
        for q, k in sympy.factorint(n).items():
            primes.setdefault(q, []).append(q ** k)
    if not primes:
        return []
    length = max(len(v) for v in primes.values())
    factors = [1] * length
    for powers in primes.values():
        powers = sorted(powers, reverse=True)
        for i, pw in enumerate(powers):
            factors[length - 1 - i] *= pw
    return factors


# ---------------------------------------------------------------------------
# Galois lattices
# ---------------------------------------------------------------------------

def _matrix_order(M: Matrix, limit: int = 1000) -> int:
    n = len(M)
    I = identity(n)
    P = M
    for k in range(1, limit + 1):
        if P == I:
            return k
        P = mat_mul(P, M)
    raise InvalidInputError(f"matrix has no finite order up to {limit}")


def _power(M: Matrix, k: int) -> Matrix:
    P = identity(len(M))
    for _ in range(k):
        P = mat_mul(P, M)
    return P


@dataclass(frozen=True)
class GaloisLattice:
    """Z^rank with commuting finite-order inertia and Frobenius actions"""
    rank: int
    inertia_gen: Matrix
    frobenius: Matrix
    prime: Optional[int] = None
    inertia_order: int = field(init=False)
    frobenius_order_mod_inertia: int = field(init=False)

    def __post_init__(self):
        if self.rank <= 0:
            raise InvalidInputError("lattice rank must be positive")
        for label, M in (('inertia', self.inertia_gen), ('frobenius', self.frobenius)):
            if len(M) != self.rank or any(len(row) != self.rank for row in M):
                raise InvalidInputError(f"{label} matrix must be {self.rank}x{self.rank}")
            if abs(determinant(M)) != 1:
                raise InvalidInputError(f"{label} matrix must have determinant +-1")
        object.__setattr__(self, 'inertia_gen', to_matrix(self.inertia_gen))
        object.__setattr__(self, 'frobenius', to_matrix(self.frobenius))
        e_I = _matrix_order(self.inertia_gen)
        _matrix_order(self.frobenius)
        object.__setattr__(self, 'inertia_order', e_I)

        if self.prime is not None:
            lhs = mat_mul(mat_mul(self.frobenius, self.inertia_gen), rational_int_inverse(self.frobenius))
            if lhs != _power(self.inertia_gen, self.prime % e_I):
                raise InvalidInputError("tameness relation sigma*gamma*sigma^-1 = gamma^p fails")

        inertia_group = {_power(self.inertia_gen, k) for k in range(e_I)}
        d, P = 1, self.frobenius
        while P not in inertia_group:
            P = mat_mul(P, self.frobenius)
            d += 1
        object.__setattr__(self, 'frobenius_order_mod_inertia', d)

    @classmethod
    def split(cls, rank: int, prime: Optional[int] = None) -> 'GaloisLattice':
        """Trivial inertia and Frobenius"""
        I = identity(rank)
        return cls(rank, I, I, prime)

    @classmethod
    def with_frobenius(cls, frobenius: Sequence[Sequence[int]], prime: Optional[int] = None) -> 'GaloisLattice':
        n = len(frobenius)
        return cls(n, identity(n), to_matrix(frobenius), prime)

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> 'GaloisLattice':
        """Parse {"rank": n, "inertia": [[...]], "frobenius": [[...]]}"""
        try:
            n = int(data['rank'])
            inertia = data.get('inertia') or identity(n)
            frob = data.get('frobenius') or identity(n)
            return cls(n, to_matrix(inertia), to_matrix(frob), data.get('prime'))
        except (KeyError, TypeError, ValueError) as e:
            raise InvalidInputError(f"invalid lattice description: {e}")

    def to_dict(self) -> Dict[str, Any]:
        return {
            'rank': self.rank,
            'inertia': [list(r) for r in self.inertia_gen],
            'frobenius': [list(r) for r in self.frobenius],
        }

    @property
    def is_split(self) -> bool:
        return self.frobenius == identity(self.rank) and self.inertia_gen == identity(self.rank)

    def dual_frobenius(self) -> Matrix:
        """Contragredient Frobenius on the dual lattice, inverse transpose"""
        return transpose(rational_int_inverse(self.frobenius))

    def inertia_orbit(self, v: Sequence[int]) -> List[Vector]:
        orbit = [tuple(v)]
        w = mat_vec(self.inertia_gen, v)
        while w != orbit[0]:
            orbit.append(w)
            w = mat_vec(self.inertia_gen, w)
        return orbit


def rational_int_inverse(M: Matrix) -> Matrix:
    """Inverse of a unimodular integer matrix"""
    inv = rational_inverse(M)
    if any(x.denominator != 1 for row in inv for x in row):
        raise InvalidInputError("matrix is not unimodular")
    return tuple(tuple(int(x) for x in row) for row in inv)


@dataclass(frozen=True)
class Sublattice:
    """Sublattice spanned by integer columns of an ambient lattice"""
    ambient_rank: int
    basis: Tuple[Vector, ...]
    saturated: bool

    def __post_init__(self):
        if self.basis and rank(self.basis) != len(self.basis):
            raise InvariantViolation("sublattice basis is not linearly independent")
        if self.saturated and index_in_saturation(self.basis) != 1:
            raise InvariantViolation("sublattice flagged saturated but is not a direct summand")

    @property
    def rank(self) -> int:
        return len(self.basis)

    def contains(self, v: Sequence[int]) -> bool:
        if not self.basis:
            return all(x == 0 for x in v)
        if rank(list(self.basis) + [tuple(v)]) != len(self.basis):
            return False
        return index_in_saturation(list(self.basis) + [tuple(v)]) == index_in_saturation(self.basis)

    def to_dict(self) -> Dict[str, Any]:
        return {'rank': self.rank, 'basis': [list(b) for b in self.basis], 'saturated': self.saturated}


def invariants_sublattice(M: GaloisLattice, which: str = 'inertia') -> Sublattice:
    """
    Saturated sublattice fixed by the chosen actions

    Args:
        M: Galois lattice
        which: 'inertia', 'frobenius' or 'both'

    Returns:
        Kernel of the stacked (action - identity) maps
    """
    if which not in ('inertia', 'frobenius', 'both'):
        raise InvalidInputError(f"unknown action selector '{which}'")
    I = np.eye(M.rank, dtype=object)
    blocks = []
    if which in ('inertia', 'both'):
        blocks.append(np.array(M.inertia_gen, dtype=object) - I)
    if which in ('frobenius', 'both'):
        blocks.append(np.array(M.frobenius, dtype=object) - I)
    stacked = np.vstack(blocks)
    if (stacked == 0).all():
        basis = [tuple(1 if i == j else 0 for i in range(M.rank)) for j in range(M.rank)]
    else:
        basis = kernel_basis(stacked)
    basis = sorted((sign_normalize(b) for b in basis), reverse=True)
    return Sublattice(M.rank, tuple(basis), True)


@dataclass(frozen=True)
class Coinvariants:
    """M / (gamma - 1) M as free part plus finite cyclic summands"""
    free_rank: int
    torsion: Tuple[int, ...]
    free_map: Tuple[Vector, ...]

    def project(self, v: Sequence[int]) -> Vector:
        """Free-part coordinates of the class of v"""
        return mat_vec(self.free_map, v)

    def to_dict(self) -> Dict[str, Any]:
        return {
            'free_rank': self.free_rank,
            'torsion': list(self.torsion),
            'free_map': [list(r) for r in self.free_map],
        }


def coinvariants(M: GaloisLattice) -> Coinvariants:
    """Smith decomposition of the inertia coinvariants"""
    A = np.array(M.inertia_gen, dtype=object) - np.eye(M.rank, dtype=object)
    if (A == 0).all():
        return Coinvariants(M.rank, (), identity(M.rank))
    S, D, T, Sinv, Tinv = normal_form(A)
    diag = _diagonal(D, M.rank)
    free_rows = [sign_normalize(tuple(Sinv[i])) for i in range(M.rank) if diag[i] == 0]
    torsion = invariant_factors(d for d in diag if d != 0)
    return Coinvariants(len(free_rows), tuple(torsion), tuple(free_rows))


def average(M: GaloisLattice, lam: Sequence[int]) -> RationalVector:
    """The averaging map: mean of the inertia orbit of lam"""
    if len(lam) != M.rank:
        raise InvalidInputError(f"vector of length {len(lam)} is not in a rank {M.rank} lattice")
    orbit = M.inertia_orbit(tuple(int(x) for x in lam))
    k = len(orbit)
    return tuple(Fraction(sum(v[i] for v in orbit), k) for i in range(M.rank))


def pairing(pair, lam: Sequence, chi: Sequence[int]) -> Fraction:
    """
    <phi(lam^avg), chi> as an exact rational

    Args:
        pair: LMPair
        lam: either a vector of the pair's source lattice X_*(T), which is
            averaged and projected, or a vector already in N_Q
        chi: character of N

    Returns:
        Exact rational pairing value
    """
    image = pair.image_of(lam)
    if len(chi) != len(image):
        raise InvalidInputError(f"character of length {len(chi)} does not match rank {len(image)}")
    return sum((Fraction(a) * int(b) for a, b in zip(image, chi)), Fraction(0))


def divisor_multiplicities(pair, chi: Sequence[int]) -> Dict[RationalVector, int]:
    """Multiplicity e*<mu', chi> of the boundary divisor of each orbit element"""
    if len(chi) != pair.N.rank:
        raise InvalidInputError(f"character of length {len(chi)} does not match rank {pair.N.rank}")
    result = {}
    for mu in pair.orbit:
        value = pair.e * sum((Fraction(a) * int(b) for a, b in zip(mu, chi)), Fraction(0))
        if value.denominator != 1:
            raise InvariantViolation(
                f"non-integral multiplicity {value} for {format_vector(mu)}; pair data is corrupted")
        result[mu] = int(value)
    return result


def format_vector(v: Sequence, sep: str = ",") -> str:
    return "(" + sep.join(str(x) for x in v) + ")"
