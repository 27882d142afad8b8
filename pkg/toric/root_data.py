"""
Root Data Module
Root systems realized in explicit lattices, Weyl groups as matrix groups,
orbits, parabolic quotient sizes and the convex-hull interior test
"""

import re
from collections import deque
from dataclasses import dataclass
from functools import cached_property
from fractions import Fraction
from math import factorial
from typing import Any, Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from utils.logger import get_logger
from .errors import InvalidInputError, InvariantViolation, ResourceLimitExceeded
from .lattice_galois import (
    Matrix, Vector, dot, identity, mat_vec, primitive, rational_inverse,
    to_matrix, transpose,
)

SERIES = ('A', 'B', 'C', 'D', 'E', 'F', 'G')

EXCEPTIONAL_ORDERS = {
    ('E', 6): 51840,
    ('E', 7): 2903040,
    ('E', 8): 696729600,
    ('F', 4): 1152,
    ('G', 2): 12,
}


def cartan_matrix(series: str, rank: int) -> Matrix:
    """
    Cartan matrix A_ij = <alpha_i^vee, alpha_j> of an irreducible type

    Args:
        series: one of A..G
        rank: number of nodes

    Returns:
        Integer matrix, Bourbaki-style node order (branch node last for D/E)
    """
    _validate_type(series, rank)
    if series in ('B', 'C') and rank == 1:
        series = 'A'
    A = 2 * np.eye(rank, dtype=int)
    if rank > 1 and series in ('A', 'B', 'C', 'D', 'E'):
        A[range(rank - 1), range(1, rank)] = -1
        A[range(1, rank), range(rank - 1)] = -1
    if series == 'B':
        A[-2, -1] = -1
        A[-1, -2] = -2
    elif series == 'C':
        A[-2, -1] = -2
        A[-1, -2] = -1
    elif series == 'D':
        A[-2, -1] = 0
        A[-1, -2] = 0
        A[-3, -1] = -1
        A[-1, -3] = -1
    elif series == 'E':
        A[-2, -1] = 0
        A[-1, -2] = 0
        A[-4, -1] = -1
        A[-1, -4] = -1
    elif series == 'F':
        A[0, 1] = A[1, 0] = -1
        A[1, 2] = -1
        A[2, 1] = -2
        A[2, 3] = A[3, 2] = -1
    elif series == 'G':
        A[0, 1] = -3
        A[1, 0] = -1
    return to_matrix([[int(x) for x in row] for row in A])


def _validate_type(series: str, rank: int):
    if series not in SERIES:
        raise InvalidInputError(f"unknown root system series '{series}'")
    ok = {
        'A': rank >= 1, 'B': rank >= 1, 'C': rank >= 1, 'D': rank >= 3,
        'E': rank in (6, 7, 8), 'F': rank == 4, 'G': rank == 2,
    }[series]
    if not ok:
        raise InvalidInputError(f"no root system of type {series}_{rank}")


def parse_label(label: str) -> List[Tuple[str, int]]:
    """'C2xC2' -> [('C', 2), ('C', 2)]"""
    parts = []
    for token in label.split('x'):
        m = re.fullmatch(r'([A-G])_?(\d+)', token.strip())
        if not m:
            raise InvalidInputError(f"cannot parse root system label '{label}'")
        parts.append((m.group(1), int(m.group(2))))
    return parts


def _block_diagonal(blocks: List[Matrix]) -> Matrix:
    n = sum(len(b) for b in blocks)
    out = [[0] * n for _ in range(n)]
    offset = 0
    for b in blocks:
        for i, row in enumerate(b):
            for j, x in enumerate(row):
                out[offset + i][offset + j] = x
        offset += len(b)
    return to_matrix(out)


@dataclass(frozen=True)
class RootSystem:
    """Root system with simple roots (functionals) and coroots (vectors) in Z^ambient_rank"""
    cartan_label: str
    simple_roots: Matrix
    simple_coroots: Matrix
    realization: str = "cartan"

    def __post_init__(self):
        if len(self.simple_roots) != len(self.simple_coroots):
            raise InvalidInputError("simple roots and coroots must have equal count")
        expected = _block_diagonal([cartan_matrix(s, r) for s, r in parse_label(self.cartan_label)])
        actual = tuple(tuple(dot(cv, r) for r in self.simple_roots) for cv in self.simple_coroots)
        if actual != expected:
            raise InvariantViolation(
                f"pairings of simple coroots and roots do not reproduce the {self.cartan_label} Cartan matrix")

    # -- constructors -------------------------------------------------------

    @classmethod
    def cartan(cls, series: str, rank: int) -> 'RootSystem':
        """Abstract realization on the coweight lattice"""
        A = cartan_matrix(series, rank)
        roots = identity(rank)
        return cls(f"{series}{rank}", roots, A, 'cartan')

    @classmethod
    def gl(cls, n: int) -> 'RootSystem':
        """A_{n-1} acting on Z^n by permutations"""
        if n < 2:
            raise InvalidInputError("GL_n root system needs n >= 2")
        roots = tuple(tuple(1 if k == i else -1 if k == i + 1 else 0 for k in range(n)) for i in range(n - 1))
        return cls(f"A{n - 1}", roots, roots, 'gl')

    @classmethod
    def gsp(cls, g: int, blocks: int = 1) -> 'RootSystem':
        """
        C_g on Z^{g*blocks+1} with coordinates (r_1..r_g, ..., c)

        Roots e_i - e_{i+1} and 2e_g - c, coroots e_i - e_{i+1} and e_g,
        one copy per block sharing the similitude coordinate c.
        """
        roots, coroots = cls._symplectic_simple(g, blocks)
        label = 'x'.join([f"C{g}"] * blocks)
        return cls(label, roots, coroots, 'gsp')

    @classmethod
    def gspin(cls, g: int) -> 'RootSystem':
        """B_g on Z^{g+1}: the symplectic realization with roots and coroots swapped"""
        roots, coroots = cls._symplectic_simple(g, 1)
        return cls(f"B{g}", coroots, roots, 'gspin')

    @staticmethod
    def _symplectic_simple(g: int, blocks: int) -> Tuple[Matrix, Matrix]:
        if g < 1 or blocks < 1:
            raise InvalidInputError("symplectic root system needs g >= 1")
        n = g * blocks + 1
        roots, coroots = [], []
        for b in range(blocks):
            base = b * g
            for i in range(g - 1):
                v = [0] * n
                v[base + i], v[base + i + 1] = 1, -1
                roots.append(tuple(v))
                coroots.append(tuple(v))
            long_root = [0] * n
            long_root[base + g - 1], long_root[-1] = 2, -1
            short_coroot = [0] * n
            short_coroot[base + g - 1] = 1
            roots.append(tuple(long_root))
            coroots.append(tuple(short_coroot))
        return tuple(roots), tuple(coroots)

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> 'RootSystem':
        """Parse {"type": "C", "rank": g, "realization": "gsp"}"""
        try:
            series = str(data['type']).upper()
            r = int(data['rank'])
        except (KeyError, TypeError, ValueError) as e:
            raise InvalidInputError(f"invalid root system description: {e}")
        realization = data.get('realization', 'cartan')
        extra = int(data.get('ambient_rank', 0) or 0)
        blocks = int(data.get('blocks', 1) or 1)
        base = cls._from_realization(series, r, realization, blocks)
        if extra > base.ambient_rank:
            return base.padded(extra - base.ambient_rank)
        return base

    @classmethod
    def _from_realization(cls, series: str, r: int, realization: str, blocks: int = 1) -> 'RootSystem':
        if realization == 'cartan':
            return cls.cartan(series, r)
        if realization == 'gl' and series == 'A':
            return cls.gl(r + 1)
        if realization == 'gsp' and series == 'C':
            return cls.gsp(r, blocks)
        if realization == 'gspin' and series == 'B':
            return cls.gspin(r)
        raise InvalidInputError(f"realization '{realization}' does not fit type {series}{r}")

    def to_dict(self) -> Dict[str, Any]:
        comps = parse_label(self.cartan_label)
        uniform = len(set(comps)) == 1
        data = {
            'type': comps[0][0] if uniform else self.cartan_label,
            'rank': comps[0][1] if uniform else self.rank,
            'realization': self.realization,
            'ambient_rank': self.ambient_rank,
        }
        if uniform and len(comps) > 1:
            data['blocks'] = len(comps)
        return data

    def padded(self, extra: int) -> 'RootSystem':
        """Same roots on Z^{ambient+extra}, the new coordinates central"""
        pad = (0,) * extra
        return RootSystem(self.cartan_label, tuple(r + pad for r in self.simple_roots),
                          tuple(c + pad for c in self.simple_coroots), self.realization)

    # -- basic data ---------------------------------------------------------

    @property
    def rank(self) -> int:
        return len(self.simple_roots)

    @property
    def ambient_rank(self) -> int:
        return len(self.simple_roots[0])

    @property
    def cartan_pairings(self) -> Matrix:
        return tuple(tuple(dot(cv, r) for r in self.simple_roots) for cv in self.simple_coroots)

    def reflection(self, i: int) -> Matrix:
        """Matrix of s_i on cocharacters: x -> x - <alpha_i, x> alpha_i^vee"""
        a, av = self.simple_roots[i], self.simple_coroots[i]
        n = self.ambient_rank
        return tuple(tuple((1 if r == c else 0) - av[r] * a[c] for c in range(n)) for r in range(n))

    def reflect(self, i: int, x: Sequence) -> tuple:
        a, av = self.simple_roots[i], self.simple_coroots[i]
        k = dot(a, x)
        return tuple(xi - k * ci for xi, ci in zip(x, av))

    def reflect_character(self, i: int, chi: Sequence) -> tuple:
        a, av = self.simple_roots[i], self.simple_coroots[i]
        k = dot(chi, av)
        return tuple(xi - k * ai for xi, ai in zip(chi, a))

    def rho_check(self) -> Tuple[Fraction, ...]:
        return self._rho

    @cached_property
    def _rho(self) -> Tuple[Fraction, ...]:
        """Vector in the span of the coroots pairing to 1 with every simple root"""
        At = transpose(self.cartan_pairings)
        inv = rational_inverse(At)
        c = [sum(row) for row in inv]
        n = self.ambient_rank
        return tuple(sum((c[j] * self.simple_coroots[j][k] for j in range(self.rank)), Fraction(0))
                     for k in range(n))

    def positive_roots(self) -> List[Tuple[Vector, Vector]]:
        """All positive (root, coroot) pairs, canonically ordered"""
        return list(self._positive)

    @cached_property
    def _positive(self) -> Tuple[Tuple[Vector, Vector], ...]:
        pairs = {}
        queue = deque(zip(self.simple_roots, self.simple_coroots))
        while queue:
            a, av = queue.popleft()
            if a in pairs:
                continue
            pairs[a] = av
            for i in range(self.rank):
                b = self.reflect_character(i, a)
                if b not in pairs:
                    queue.append((b, self.reflect(i, av)))
        rho = self.rho_check()
        positive = sorted((a, av) for a, av in pairs.items() if dot(a, rho) > 0)
        if 2 * len(positive) != len(pairs):
            raise InvariantViolation("root set is not split evenly by rho_check")
        return tuple(positive)

    def height(self, root: Sequence[int]) -> int:
        return int(dot(root, self.rho_check()))

    # -- Weyl group ---------------------------------------------------------

    def order(self, J: Optional[Iterable[int]] = None) -> int:
        """|W_J| (J = None means all simple reflections) by component classification"""
        nodes = sorted(set(range(self.rank) if J is None else J))
        A = self.cartan_pairings
        total = 1
        seen = set()
        for start in nodes:
            if start in seen:
                continue
            comp, stack = [], [start]
            while stack:
                v = stack.pop()
                if v in seen:
                    continue
                seen.add(v)
                comp.append(v)
                stack.extend(w for w in nodes if w not in seen and A[v][w] != 0)
            total *= _component_order(A, sorted(comp))
        return total


def _component_order(A: Matrix, comp: List[int]) -> int:
    k = len(comp)
    if k == 1:
        return 2
    bonds = [(i, j, A[i][j] * A[j][i]) for i in comp for j in comp if i < j and A[i][j] != 0]
    degree = {i: 0 for i in comp}
    for i, j, _ in bonds:
        degree[i] += 1
        degree[j] += 1
    products = [b for _, _, b in bonds]
    if 3 in products:
        return EXCEPTIONAL_ORDERS[('G', 2)]
    if 2 in products:
        i, j, _ = next(b for b in bonds if b[2] == 2)
        if k == 4 and degree[i] == 2 and degree[j] == 2:
            return EXCEPTIONAL_ORDERS[('F', 4)]
        return 2 ** k * factorial(k)
    branch = [v for v in comp if degree[v] == 3]
    if not branch:
        return factorial(k + 1)
    center = branch[0]
    arms = []
    for start in (w for w in comp if w != center and A[center][w] != 0):
        length, prev, cur = 1, center, start
        while True:
            nxt = [w for w in comp if w not in (prev, cur) and A[cur][w] != 0]
            if not nxt:
                break
            prev, cur = cur, nxt[0]
            length += 1
        arms.append(length)
    arms.sort()
    if arms[0] == 1 and arms[1] == 1:
        return 2 ** (k - 1) * factorial(k)
    return EXCEPTIONAL_ORDERS[('E', k)]


@dataclass(frozen=True)
class WeylGroupElement:
    """Matrix on the ambient lattice together with a word in simple reflections"""
    matrix: Matrix
    word: Tuple[int, ...] = ()

    @classmethod
    def from_word(cls, rs: RootSystem, word: Sequence[int]) -> 'WeylGroupElement':
        M = identity(rs.ambient_rank)
        for i in word:
            M = _mat_mul(M, rs.reflection(i))
        return cls(M, tuple(word))

    def apply(self, x: Sequence) -> tuple:
        return mat_vec(self.matrix, x)

    def length(self, rs: RootSystem) -> int:
        """Number of positive roots sent negative by w^{-1}"""
        return len(inversions(rs, self.matrix))


def _mat_mul(A: Matrix, B: Matrix) -> Matrix:
    n = len(A)
    return tuple(tuple(sum(A[i][k] * B[k][j] for k in range(n)) for j in range(n)) for i in range(n))


def inversions(rs: RootSystem, w: Matrix) -> List[Vector]:
    """Positive roots alpha with w^{-1} alpha negative"""
    rho = rs.rho_check()
    out = []
    for a, _ in rs.positive_roots():
        # (w^{-1} alpha)(x) = alpha(w x)
        pulled = tuple(sum(a[k] * w[k][j] for k in range(len(a))) for j in range(len(a)))
        if dot(pulled, rho) < 0:
            out.append(a)
    return out


def reduced_word(rs: RootSystem, w: Matrix) -> Tuple[int, ...]:
    """Reduced word of w, peeling left descents with the smallest index first"""
    word = []
    current = w
    guard = len(rs.positive_roots()) + 1
    while current != identity(rs.ambient_rank):
        if len(word) > guard:
            raise InvariantViolation("reduced word search did not terminate")
        inv = set(inversions(rs, current))
        i = next(i for i in range(rs.rank) if rs.simple_roots[i] in inv)
        word.append(i)
        current = _mat_mul(rs.reflection(i), current)
    return tuple(word)


def canonical_order(vectors: Iterable[Sequence]) -> List[tuple]:
    """Deduplicate and sort lexicographically, largest first"""
    return sorted({tuple(v) for v in vectors}, reverse=True)


def weyl_orbit(rs: RootSystem, lam: Sequence, limit: Optional[int] = None) -> List[tuple]:
    """
    Full W-orbit of a cocharacter by BFS over simple reflections

    Args:
        rs: root system
        lam: vector in the ambient lattice (ints or Fractions)
        limit: optional cap on the orbit size

    Returns:
        Orbit in canonical order
    """
    if len(lam) != rs.ambient_rank:
        raise InvalidInputError(f"vector of length {len(lam)} is not in the rank {rs.ambient_rank} ambient lattice")
    start = tuple(lam)
    seen = {start}
    queue = deque([start])
    while queue:
        v = queue.popleft()
        for i in range(rs.rank):
            w = rs.reflect(i, v)
            if w not in seen:
                seen.add(w)
                if limit is not None and len(seen) > limit:
                    raise ResourceLimitExceeded("Weyl orbit size", limit)
                queue.append(w)
    get_logger().debug(f"Weyl orbit of {start} in {rs.cartan_label}: {len(seen)} elements")
    return canonical_order(seen)


def dominant_vector(rs: RootSystem, J: Iterable[int]) -> Vector:
    """Integral vector pairing to 0 with alpha_j (j in J) and positively with the other simple roots"""
    J = set(J)
    target = [0 if i in J else 1 for i in range(rs.rank)]
    inv = rational_inverse(transpose(rs.cartan_pairings))
    c = [sum(inv[i][k] * target[k] for k in range(rs.rank)) for i in range(rs.rank)]
    vec = [sum((c[j] * rs.simple_coroots[j][k] for j in range(rs.rank)), Fraction(0))
           for k in range(rs.ambient_rank)]
    return primitive(vec)


@dataclass(frozen=True)
class QuotientSize:
    """|W/W_J| and whether it meets the lower bound dim V + 1"""
    size: int
    equality: bool

    def to_dict(self) -> Dict[str, Any]:
        return {'size': self.size, 'equality': self.equality}


def parabolic_quotient_size(rs: RootSystem, J: Iterable[int], method: str = 'order') -> QuotientSize:
    """
    |W/W_J| by order division or by orbit counting

    Args:
        rs: root system
        J: indices (0-based) of the simple reflections generating W_J
        method: 'order' (classification of Dynkin components) or 'orbit'

    Returns:
        QuotientSize with the equality flag |W/W_J| == dim V + 1
    """
    J = sorted(set(J))
    if any(j < 0 or j >= rs.rank for j in J):
        raise InvalidInputError(f"J={J} is not a subset of the {rs.rank} simple reflections")
    if method == 'order':
        size = rs.order() // rs.order(J)
    elif method == 'orbit':
        size = len(weyl_orbit(rs, dominant_vector(rs, J)))
    else:
        raise InvalidInputError(f"unknown method '{method}'")
    return QuotientSize(size, size == rs.rank + 1)


def hull_contains_origin_interior(orbit: Sequence[Sequence]) -> bool:
    """True iff 0 lies in the relative interior of the convex hull of a nonzero orbit"""
    from .cones import positive_hull

    vectors = [tuple(v) for v in orbit]
    if not vectors:
        raise InvalidInputError("orbit must be nonempty")
    if all(all(x == 0 for x in v) for v in vectors):
        return False
    cone = positive_hull(vectors)
    # the positive hull is a linear subspace exactly when a strictly positive dependency exists
    return cone.lineality_rank == cone.dimension
