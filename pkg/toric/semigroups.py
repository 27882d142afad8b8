"""
Affine Semigroups
Hilbert bases of saturated semigroups (cone ∩ lattice), generated
semigroups, freeness, lattice generation, saturation, toric ideals and
Veronese recognition.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, product
from math import comb, floor
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np
import sympy

from utils.logger import get_logger
from .binomials import Binomial, lattice_basis_ideal, minimal_generators, saturate_by_variables
from .budget import Budget, resolve
from .cones import Face, RationalCone, positive_hull
from .errors import AssumptionViolation, InvalidInputError, InvariantViolation
from .lattice_galois import (
    Vector, determinant, dot, index_in_saturation, mat_vec, normal_form, rank,
    rational_inverse, saturation_basis, transpose,
)


# ---------------------------------------------------------------------------
# Hilbert bases
# ---------------------------------------------------------------------------

def triangulate(cone: RationalCone) -> List[List[Vector]]:
    """
    Pulling triangulation of a pointed cone into simplicial cells

    Each cell is a list of ray generators; the cells cover the cone.
    """
    faces = cone.face_poset()
    rays = cone.extremal_rays()

    def facets_of(face: Face) -> List[Face]:
        return [g for g in faces if g.dimension == face.dimension - 1 and g.rays < face.rays]

    def pull(face: Face) -> List[List[int]]:
        if len(face.rays) == face.dimension:
            return [sorted(face.rays)]
        apex = min(face.rays)
        cells = []
        for g in facets_of(face):
            if apex in g.rays:
                continue
            for cell in pull(g):
                cells.append(sorted(cell + [apex]))
        return cells

    top = max(faces, key=lambda f: f.dimension)
    cells = pull(top)
    get_logger().debug(f"triangulation: {len(cells)} simplicial cells over {len(rays)} rays")
    return [[rays[i] for i in cell] for cell in cells]


def parallelepiped_points(cell: Sequence[Vector], budget: Optional[Budget] = None) -> List[Vector]:
    """
    Lattice points in the half-open fundamental parallelepiped of a
    full-rank simplicial cell (columns of V)
    """
    budget = resolve(budget)
    V = transpose(cell)
    volume = abs(determinant(V))
    budget.check("parallelepiped points", volume, budget.max_fiber_enumeration)
    if volume == 1:
        return [tuple(0 for _ in cell[0])]
    S, D, _, _, _ = normal_form(np.array(V, dtype=object))
    orders = [abs(int(D[i, i])) for i in range(len(cell))]
    Vinv = rational_inverse(V)
    points = set()
    for y in product(*[range(o) for o in orders]):
        x = mat_vec(S.tolist(), y)
        lam = [sum(Vinv[i][j] * x[j] for j in range(len(x))) for i in range(len(x))]
        frac = [l - floor(l) for l in lam]
        pt = tuple(int(sum(frac[i] * cell[i][k] for i in range(len(cell)))) for k in range(len(x)))
        points.add(pt)
    if len(points) != volume:
        raise InvariantViolation(f"parallelepiped has {len(points)} points, expected {volume}")
    return sorted(points)


def _coordinates(basis: Sequence[Vector], v: Sequence[int]) -> Vector:
    """Integer coordinates of v in a saturated basis of a sublattice containing it"""
    gram = [[dot(a, b) for b in basis] for a in basis]
    ginv = rational_inverse(gram)
    rhs = [dot(a, v) for a in basis]
    coords = [sum(ginv[i][j] * rhs[j] for j in range(len(basis))) for i in range(len(basis))]
    if any(c.denominator != 1 for c in coords):
        raise InvariantViolation(f"{tuple(v)} is not in the lattice spanned by the basis")
    return tuple(int(c) for c in coords)


def _from_coordinates(basis: Sequence[Vector], c: Sequence[int]) -> Vector:
    return tuple(sum(ci * b[k] for ci, b in zip(c, basis)) for k in range(len(basis[0])))


def _pointed_full_hilbert_basis(cone: RationalCone, budget: Budget) -> List[Vector]:
    rays = cone.extremal_rays()
    candidates = set(rays)
    for cell in triangulate(cone):
        candidates.update(p for p in parallelepiped_points(cell, budget) if any(p))
    grading = cone.grading()
    kept: List[Vector] = []
    for x in sorted(candidates, key=lambda v: (dot(grading, v), v)):
        if not any(cone.contains(tuple(a - b for a, b in zip(x, h))) for h in kept):
            kept.append(x)
    return kept


def hilbert_basis(cone: RationalCone, lattice: Optional[Sequence[Vector]] = None,
                  budget: Optional[Budget] = None) -> List[Vector]:
    """
    Minimal generating set of cone ∩ lattice

    A torus factor (lineality space) is split off first; it contributes
    +-basis vectors of the lineality lattice.

    Args:
        cone: rational cone
        lattice: saturated basis of the lattice (default Z^n ∩ span)
        budget: enumeration caps

    Returns:
        Canonically ordered generators (largest first)
    """
    budget = resolve(budget)
    n = cone.ambient_rank
    gens = cone.generators
    if not gens:
        return []
    basis = list(lattice) if lattice else saturation_basis(gens, n)
    if lattice and index_in_saturation(basis) != 1:
        raise InvalidInputError("lattice basis must be saturated")

    local = positive_hull([_coordinates(basis, g) for g in gens])
    split = local.split_lineality()
    if split.u:
        quotient_gens = [split.quotient(g) for g in local.generators]
        quotient_gens = [g for g in quotient_gens if any(g)]
        units = [tuple(split.Qinv[k][i] for k in range(len(split.Qinv))) for i in range(split.u)]
        result = [u for b in units for u in (b, tuple(-x for x in b))]
        if quotient_gens:
            quotient = positive_hull(quotient_gens)
            for h in _pointed_full_hilbert_basis(quotient, budget):
                y = (0,) * split.u + h
                result.append(tuple(sum(split.Qinv[k][j] * y[j] for j in range(len(y)))
                                    for k in range(len(y))))
    else:
        result = _pointed_full_hilbert_basis(local, budget)

    return sorted({_from_coordinates(basis, c) for c in result}, reverse=True)


# ---------------------------------------------------------------------------
# Semigroups
# ---------------------------------------------------------------------------

class AffineSemigroup:
    """
    Finitely generated semigroup in Z^n

    A saturated semigroup is cone ∩ Z^n; otherwise it is generated by an
    explicit list.
    """

    def __init__(self, ambient_rank: int, cone: Optional[RationalCone] = None,
                 generators: Optional[Sequence[Sequence[int]]] = None, saturated: bool = True,
                 budget: Optional[Budget] = None):
        if cone is None and generators is None:
            raise InvalidInputError("semigroup needs a cone or generators")
        self.ambient_rank = ambient_rank
        self.saturated = saturated
        self.budget = resolve(budget)
        self._explicit = [tuple(g) for g in generators] if generators is not None else None
        if cone is None:
            cone = positive_hull(self._explicit) if any(any(g) for g in self._explicit) \
                else RationalCone([], ambient_rank)
        self.cone = cone
        self._hilbert = None

    @classmethod
    def from_cone(cls, cone: RationalCone, budget: Optional[Budget] = None) -> 'AffineSemigroup':
        return cls(cone.ambient_rank, cone=cone, saturated=True, budget=budget)

    @classmethod
    def from_generators(cls, generators: Sequence[Sequence[int]],
                        budget: Optional[Budget] = None) -> 'AffineSemigroup':
        gens = [tuple(int(x) for x in g) for g in generators]
        if not gens:
            raise InvalidInputError("empty generator list")
        return cls(len(gens[0]), generators=gens, saturated=False, budget=budget)

    def __repr__(self) -> str:
        kind = "saturated" if self.saturated else "generated"
        return f"AffineSemigroup({kind}, rank={self.ambient_rank}, hilbert={len(self.hilbert_basis)})"

    @property
    def hilbert_basis(self) -> List[Vector]:
        if self._hilbert is None:
            if self.saturated:
                self._hilbert = hilbert_basis(self.cone, budget=self.budget)
            else:
                self._hilbert = self._minimal_subset()
        return list(self._hilbert)

    def _minimal_subset(self) -> List[Vector]:
        gens = sorted({g for g in self._explicit if any(g)}, reverse=True)
        grading = self.cone.grading()
        if self.cone.lineality_rank:
            return gens
        kept = []
        for g in sorted(gens, key=lambda v: (dot(grading, v), v)):
            if not _generated_by(g, kept, grading):
                kept.append(g)
        return sorted(kept, reverse=True)

    def contains(self, v: Sequence[int]) -> bool:
        v = tuple(v)
        if self.saturated:
            return self.cone.contains(v)
        if self.cone.lineality_rank:
            raise AssumptionViolation("membership in a generated semigroup needs a pointed cone")
        return _generated_by(v, self.hilbert_basis, self.cone.grading())

    def pointed_part(self) -> Tuple['AffineSemigroup', Any]:
        """Quotient by the torus factor, with the splitting used"""
        split = self.cone.split_lineality()
        if not split.u:
            return self, split
        gens = [split.quotient(g) for g in self.hilbert_basis]
        gens = [g for g in gens if any(g)]
        if not gens:
            return AffineSemigroup(self.ambient_rank - split.u, generators=[(0,) * (self.ambient_rank - split.u)],
                                   saturated=False, budget=self.budget), split
        if self.saturated:
            return AffineSemigroup.from_cone(positive_hull(gens), self.budget), split
        return AffineSemigroup.from_generators(gens, self.budget), split

    def to_dict(self) -> Dict[str, Any]:
        return {
            'ambient_rank': self.ambient_rank,
            'saturated': self.saturated,
            'hilbert_basis': [list(h) for h in self.hilbert_basis],
            'cone': self.cone.to_dict(),
        }


def _generated_by(v: Vector, gens: Sequence[Vector], grading: Vector) -> bool:
    memo: Dict[Vector, bool] = {}

    def reach(x: Vector) -> bool:
        if not any(x):
            return True
        if x in memo:
            return memo[x]
        deg = dot(grading, x)
        ok = False
        for g in gens:
            dg = dot(grading, g)
            if 0 < dg <= deg:
                rest = tuple(a - b for a, b in zip(x, g))
                if dot(grading, rest) >= 0 and reach(rest):
                    ok = True
                    break
        memo[x] = ok
        return ok

    return reach(tuple(v))


def decompose(v: Sequence[int], gens: Sequence[Vector], grading: Vector) -> Optional[Tuple[int, ...]]:
    """
    Exponents c >= 0 with sum c_k gens[k] = v, or None

    The search walks down the grading, so it needs grading > 0 on gens.
    """
    failed = set()

    def search(x: Vector) -> Optional[List[int]]:
        if not any(x):
            return [0] * len(gens)
        if x in failed:
            return None
        deg = dot(grading, x)
        for k, g in enumerate(gens):
            if 0 < dot(grading, g) <= deg:
                rest = tuple(a - b for a, b in zip(x, g))
                found = search(rest)
                if found is not None:
                    found[k] += 1
                    return found
        failed.add(x)
        return None

    found = search(tuple(v))
    return tuple(found) if found is not None else None


def generates_full_lattice(S: AffineSemigroup) -> bool:
    """Z-span of the Hilbert basis equals Z^n"""
    hb = S.hilbert_basis
    return bool(hb) and rank(hb) == S.ambient_rank and index_in_saturation(hb) == 1


def is_free(S: AffineSemigroup) -> bool:
    """
    Freely generated modulo its torus factor, and generating the lattice

    +-pairs from the lineality space count as one generator each.
    """
    hb = S.hilbert_basis
    u = S.cone.lineality_rank
    return len(hb) - u == rank(hb) == S.ambient_rank and generates_full_lattice(S)


def saturate(generators: Sequence[Sequence[int]], budget: Optional[Budget] = None) -> AffineSemigroup:
    """cone(generators) ∩ Z^n, which is the saturation inside span ∩ Z^n"""
    gens = [tuple(g) for g in generators if any(g)]
    if not gens:
        raise InvalidInputError("saturate needs a nonzero generator")
    return AffineSemigroup.from_cone(positive_hull(gens), budget)


# ---------------------------------------------------------------------------
# Toric ideals
# ---------------------------------------------------------------------------

@dataclass
class BinomialIdeal:
    """Toric ideal of the Hilbert-basis matrix, in variables x_1..x_n"""
    matrix: Tuple[Vector, ...]
    generators: List[Binomial]
    minimal_count: int
    names: List[str] = field(default_factory=list)
    weights: Tuple[int, ...] = ()
    budget: Optional[Budget] = None
    _groebner: Optional[List[Binomial]] = field(default=None, repr=False)

    @property
    def n_vars(self) -> int:
        return len(self.matrix)

    @property
    def groebner_basis(self) -> List[Binomial]:
        """Reduced Groebner basis of the saturated lattice ideal, computed on first use"""
        if self._groebner is None:
            start = lattice_basis_ideal(transpose(self.matrix))
            self._groebner = saturate_by_variables(start, self.weights, self.budget)[0] if start else []
        return self._groebner

    def variable_names(self) -> List[str]:
        return self.names or [f"x{i + 1}" for i in range(self.n_vars)]

    def check_kernel(self) -> bool:
        """A u+ = A u- for every emitted binomial"""
        cols = self.matrix

        def image(u):
            return tuple(sum(c[k] * x for c, x in zip(cols, u)) for k in range(len(cols[0])))
        return all(image(a) == image(b) for a, b in self.generators + (self._groebner or []))

    def evaluation_check(self) -> bool:
        """Substituting t^{a_i} for x_i kills every generator"""
        d = len(self.matrix[0]) if self.matrix else 0
        t = sympy.symbols(f"t0:{d}")
        subs = [sympy.Mul(*[t[k] ** c[k] for k in range(d)]) for c in self.matrix]

        def mono(u):
            return sympy.Mul(*[s ** e for s, e in zip(subs, u)])
        return all(sympy.simplify(mono(a) - mono(b)) == 0 for a, b in self.generators)

    def polynomial(self, binomial: Binomial) -> str:
        names = self.variable_names()
        return f"{format_monomial(binomial[0], names)} - {format_monomial(binomial[1], names)}"

    def to_dict(self) -> Dict[str, Any]:
        degrees: Dict[int, int] = {}
        for plus, _ in self.generators:
            w = sum(x * y for x, y in zip(plus, self.weights))
            degrees[w] = degrees.get(w, 0) + 1
        return {
            'variables': self.variable_names(),
            'minimal_generator_count': self.minimal_count,
            'generators': [{'plus': list(a), 'minus': list(b)} for a, b in self.generators],
            'polynomials': [self.polynomial(g) for g in self.generators],
            'degree_counts': {str(w): c for w, c in sorted(degrees.items())},
        }


def format_monomial(u: Sequence[int], names: Sequence[str]) -> str:
    parts = []
    for e, name in zip(u, names):
        if e == 1:
            parts.append(name)
        elif e > 1:
            parts.append(f"{name}^{e}")
    return "*".join(parts) if parts else "1"


def zero_face_covers(positive: np.ndarray, budget: Budget) -> List[Tuple[int, ...]]:
    """
    Minimal facet index sets T whose face is {0}

    positive[f, r] says facet f is positive on ray r; the face of T is
    {0} when every ray is positive on some facet of T.
    """
    m = positive.shape[0]
    covers: List[Tuple[int, ...]] = []
    examined = 0
    for size in range(1, m + 1):
        for subset in combinations(range(m), size):
            examined += 1
            budget.check("facet subsets", examined, budget.max_fiber_enumeration)
            if any(set(c) <= set(subset) for c in covers):
                continue
            if positive[list(subset)].any(axis=0).all():
                covers.append(subset)
    return covers


def disconnected_degree_candidates(S: AffineSemigroup, budget: Budget) -> List[Vector]:
    """
    Degrees b in S whose divisor graph can be disconnected

    With M_f = max over the Hilbert basis of f(a_i), the graph of b is
    connected as soon as the facets with f(b) < 2 M_f cut out a nonzero
    face. The remaining degrees lie in the union over the minimal zero
    covers T of {x in C : f(x) <= 2 M_f - 1 for f in T}; each piece is
    inside the simplex spanned by 0 and the rays scaled to the sum of
    its bounds, and its bounding box is enumerated.
    """
    cone = S.cone
    F = np.array(cone.facets, dtype=np.int64)
    E = np.array(cone.equations, dtype=np.int64).reshape(-1, S.ambient_rank)
    A = np.array(S.hilbert_basis, dtype=np.int64)
    bounds = 2 * (F @ A.T).max(axis=1)
    rays = [tuple(int(x) for x in r) for r in cone.extremal_rays()]
    FR = F @ np.array(rays, dtype=np.int64).T

    found = set()
    for cover in zero_face_covers(FR > 0, budget):
        rows = list(cover)
        total = int((bounds[rows] - 1).sum())
        phi = [int(x) for x in FR[rows].sum(axis=0)]
        lo, hi = [], []
        for k in range(S.ambient_rank):
            lo.append(min([0] + [(total * r[k]) // p for r, p in zip(rays, phi)]))
            hi.append(max([0] + [-((-total * r[k]) // p) for r, p in zip(rays, phi)]))
        volume = 1
        for a, b in zip(lo, hi):
            volume *= b - a + 1
        budget.check("degree box points", volume, budget.max_fiber_enumeration)

        axes = [np.arange(a, b + 1, dtype=np.int64) for a, b in zip(lo, hi)]
        grid = np.stack(np.meshgrid(*axes, indexing='ij'), axis=-1).reshape(-1, S.ambient_rank)
        keep = (grid @ F.T >= 0).all(axis=1)
        keep &= (grid @ F[rows].T <= bounds[rows] - 1).all(axis=1)
        keep &= grid.any(axis=1)
        if len(E):
            keep &= (grid @ E.T == 0).all(axis=1)
        found.update(tuple(int(x) for x in v) for v in grid[keep])

    budget.check("candidate degrees", len(found), budget.max_fiber_points)
    grading = cone.grading()
    return sorted(found, key=lambda v: (dot(grading, v), v))


def _graph_components(adjacent: np.ndarray) -> List[List[int]]:
    seen = [False] * adjacent.shape[0]
    components = []
    for start in range(adjacent.shape[0]):
        if seen[start]:
            continue
        seen[start] = True
        stack, component = [start], []
        while stack:
            v = stack.pop()
            component.append(v)
            for w in np.flatnonzero(adjacent[v]):
                if not seen[w]:
                    seen[w] = True
                    stack.append(int(w))
        components.append(sorted(component))
    return components


def _factor(x: np.ndarray, A: np.ndarray, F: np.ndarray, FA: np.ndarray) -> List[int]:
    """Exponents u with A u = x, peeling off the first Hilbert basis element that fits"""
    u = [0] * A.shape[0]
    fx = F @ x
    while x.any():
        fits = np.flatnonzero((fx[:, None] - FA >= 0).all(axis=0))
        if not len(fits):
            raise InvariantViolation(f"{tuple(int(t) for t in x)} has no Hilbert basis divisor")
        i = int(fits[0])
        u[i] += 1
        x = x - A[i]
        fx = fx - FA[:, i]
    return u


def saturated_minimal_generators(S: AffineSemigroup, budget: Budget) -> List[Binomial]:
    """
    Minimal generators of the toric ideal of a saturated pointed semigroup

    In degree b the vertices are the i with b - a_i in S and {i, j} is an
    edge when b - a_i - a_j is in S. A degree with c components needs c - 1
    minimal generators; one fiber element per component is completed by
    peeling Hilbert basis elements off b - a_i, and the largest is paired
    with each of the others.
    """
    log = get_logger()
    A = np.array(S.hilbert_basis, dtype=np.int64)
    F = np.array(S.cone.facets, dtype=np.int64)
    FA = F @ A.T
    candidates = disconnected_degree_candidates(S, budget)
    log.debug(f"toric ideal: {len(candidates)} candidate degrees")

    generators: List[Binomial] = []
    for b in candidates:
        rest = (F @ np.array(b, dtype=np.int64))[:, None] - FA
        vertices = np.flatnonzero((rest >= 0).all(axis=0))
        if len(vertices) < 2:
            continue
        sub = rest[:, vertices]
        adjacent = (sub[:, :, None] - FA[:, vertices][:, None, :] >= 0).all(axis=0)
        components = _graph_components(adjacent)
        if len(components) < 2:
            continue
        reps = []
        for component in components:
            i = int(vertices[component[0]])
            u = _factor(np.array(b, dtype=np.int64) - A[i], A, F, FA)
            u[i] += 1
            reps.append(tuple(u))
        reps.sort(reverse=True)
        generators.extend((reps[0], r) for r in reps[1:])
        budget.check("minimal generators", len(generators), budget.max_groebner_basis)
    return generators


def toric_ideal(S: AffineSemigroup, names: Optional[Sequence[str]] = None,
                budget: Optional[Budget] = None) -> BinomialIdeal:
    """
    Toric ideal of the Hilbert basis with its minimal generators

    Saturated semigroups are read degree by degree from the divisor graphs;
    other semigroups go through the Groebner basis and its fibers.

    Raises:
        AssumptionViolation: for semigroups with a torus factor (use pointed_part)
        ResourceLimitExceeded: when a Groebner, fiber or degree cap is hit
    """
    budget = resolve(budget if budget is not None else S.budget)
    if S.cone.lineality_rank:
        raise AssumptionViolation("toric ideal needs a pointed semigroup; split the torus factor first")
    hb = S.hilbert_basis
    A = transpose(hb)
    grading = S.cone.grading()
    weights = tuple(dot(grading, h) for h in hb)
    if not A or any(w <= 0 for w in weights):
        raise InvariantViolation("grading is not positive on the Hilbert basis")

    ideal = BinomialIdeal(tuple(hb), [], 0, list(names or []), weights, budget)
    get_logger().debug(f"toric ideal: {len(hb)} variables, saturated={S.saturated}")
    if S.saturated:
        ideal.generators = saturated_minimal_generators(S, budget)
        ideal.minimal_count = len(ideal.generators)
    else:
        mins = minimal_generators(A, grading, ideal.groebner_basis, budget)
        ideal.generators, ideal.minimal_count = mins.generators, mins.count
    return ideal


# ---------------------------------------------------------------------------
# Veronese recognition
# ---------------------------------------------------------------------------

def veronese_semigroup(n: int, k: int) -> AffineSemigroup:
    """{v in Z^n_{>=0} : k | sum v}, the k-th Veronese of the orthant"""
    gens = [v for v in product(range(k + 1), repeat=n) if sum(v) == k]
    return AffineSemigroup.from_generators(gens)


def veronese_recognize(S: AffineSemigroup, n: int, k: int) -> bool:
    """
    Is S isomorphic to {v in Z^n_{>=0} : k | sum v} by a lattice isomorphism?

    S must be saturated; its cone must be simplicial with n rays and its
    Hilbert basis must have C(n+k-1, k) elements. The candidate map sends
    the ray generators to k e_i; it must be integral with determinant k and
    land in the sublattice {k | sum v}, then the two Hilbert bases are
    compared point by point.
    """
    if n <= 0 or k <= 0:
        raise InvalidInputError("n and k must be positive")
    if not S.saturated or S.ambient_rank != n:
        return False
    pred = S.cone.predicates()
    if not (pred.strictly_convex and pred.full_dimensional and pred.n_rays == n):
        return False
    hb = S.hilbert_basis
    if len(hb) != comb(n + k - 1, k):
        return False
    rays = S.cone.extremal_rays()
    R = transpose(rays)
    Rinv = rational_inverse(R)
    M = [[k * x for x in row] for row in Rinv]
    if any(Fraction(x).denominator != 1 for row in M for x in row):
        return False
    M = [[int(x) for x in row] for row in M]
    if abs(determinant(M)) != k or any(sum(col) % k for col in transpose(M)):
        return False
    images = sorted(mat_vec(M, h) for h in hb)
    target = sorted(veronese_semigroup(n, k).hilbert_basis)
    return images == target
