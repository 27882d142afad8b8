"""
Rational Polyhedral Cones
Exact double description (generators <-> facet inequalities), duals, faces,
extremal rays, structural predicates and smallest-face queries.

Conventions: vectors are integer tuples; ray and facet lists are kept in
canonical order (lexicographic, largest first); equation and lineality
bases are sign-normalized so their first nonzero entry is positive.
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

from utils.logger import get_logger
from .errors import InvalidInputError, PointOutsideCone
from .lattice_galois import (
    Matrix, Vector, dot, identity, index_in_saturation, normal_form, primitive,
    rank, rational_inverse, saturation_basis, sign_normalize, to_matrix, transpose,
)

import numpy as np


def _canonical(vectors: Iterable[Sequence[int]]) -> List[Vector]:
    return sorted({tuple(v) for v in vectors}, reverse=True)


def _combine(c1: int, v1: Sequence[int], c2: int, v2: Sequence[int]) -> Vector:
    return primitive([c1 * a + c2 * b for a, b in zip(v1, v2)])


def double_description(inequalities: Sequence[Sequence[int]], n: int) -> Tuple[List[Vector], List[Vector]]:
    """
    V-representation of {x in R^n : a.x >= 0 for all inequalities a}

    Incremental double description: lines are consumed first, then rays are
    split by sign and adjacent pairs are combined (combinatorial adjacency
    test on tight sets).

    Args:
        inequalities: integer rows a
        n: ambient dimension

    Returns:
        (lines, rays) with the cone equal to span(lines) + cone(rays); rays
        are the extremal rays modulo the lineality space
    """
    lines: List[Vector] = [tuple(1 if i == j else 0 for i in range(n)) for j in range(n)]
    rays: List[Vector] = []
    processed: List[Vector] = []

    for a in inequalities:
        a = tuple(a)
        if all(x == 0 for x in a):
            continue
        pivot = next((k for k, l in enumerate(lines) if dot(a, l) != 0), None)
        if pivot is not None:
            l0 = lines.pop(pivot)
            v0 = dot(a, l0)
            if v0 < 0:
                l0, v0 = tuple(-x for x in l0), -v0
            lines = [_combine(v0, l, -dot(a, l), l0) for l in lines]
            rays = [_combine(v0, r, -dot(a, r), l0) for r in rays]
            rays.append(primitive(l0))
            processed.append(a)
            continue

        values = [dot(a, r) for r in rays]
        pos = [r for r, v in zip(rays, values) if v > 0]
        neg = [(r, v) for r, v in zip(rays, values) if v < 0]
        zero = [r for r, v in zip(rays, values) if v == 0]
        if neg:
            tight = {r: frozenset(i for i, b in enumerate(processed) if dot(b, r) == 0) for r in rays}
            new = []
            for rp in pos:
                vp = dot(a, rp)
                for rn, vn in neg:
                    common = tight[rp] & tight[rn]
                    if any(common <= tight[r] for r in rays if r != rp and r != rn):
                        continue
                    new.append(_combine(vp, rn, -vn, rp))
            rays = pos + zero + new
        processed.append(a)
        # dedupe while keeping determinism
        rays = list(dict.fromkeys(rays))

    return lines, rays


def _orthogonal_projection(vectors: Sequence[Vector], away_from: Sequence[Vector]) -> List[Vector]:
    """Project each vector onto the orthogonal complement of span(away_from), then make primitive"""
    if not away_from:
        return [tuple(v) for v in vectors]
    E = [[Fraction(x) for x in e] for e in away_from]
    gram = [[sum(a * b for a, b in zip(ei, ej)) for ej in E] for ei in E]
    ginv = rational_inverse(gram)
    out = []
    for v in vectors:
        coeffs = [sum(x * y for x, y in zip(e, v)) for e in E]
        weights = [sum(ginv[i][j] * coeffs[j] for j in range(len(E))) for i in range(len(E))]
        w = [Fraction(v[k]) - sum(weights[i] * E[i][k] for i in range(len(E))) for k in range(len(v))]
        out.append(primitive(w))
    return out


@dataclass(frozen=True)
class Face:
    """Face of a cone, identified by its closed tight-facet set"""
    tight: FrozenSet[int]
    rays: FrozenSet[int]
    dimension: int

    def __le__(self, other: 'Face') -> bool:
        return self.tight >= other.tight

    def __lt__(self, other: 'Face') -> bool:
        return self.tight > other.tight

    def to_dict(self) -> Dict[str, Any]:
        return {
            'tight_facets': sorted(self.tight),
            'rays': sorted(self.rays),
            'dimension': self.dimension,
        }


@dataclass(frozen=True)
class Predicates:
    strictly_convex: bool
    full_dimensional: bool
    simplicial: bool
    lineality_rank: int
    dimension: int
    n_rays: int

    def to_dict(self) -> Dict[str, Any]:
        return dict(self.__dict__)


@dataclass(frozen=True)
class LinealitySplitting:
    """Unimodular coordinates y = Q x in which the lineality lattice is span(e_1..e_u)"""
    Q: Matrix
    Qinv: Matrix
    u: int

    def quotient(self, v: Sequence[int]) -> Vector:
        return tuple(sum(q * x for q, x in zip(row, v)) for row in self.Q[self.u:])

    def transform(self, v: Sequence[int]) -> Vector:
        return tuple(sum(q * x for q, x in zip(row, v)) for row in self.Q)


class RationalCone:
    """
    Polyhedral cone in R^n given by generators, with facets computed lazily

    Example:
        c = positive_hull([(1, 0), (0, 1)])
        c.facets          # [(1, 0), (0, 1)]
        c.predicates()    # strictly convex, simplicial
    """

    def __init__(self, generators: Sequence[Sequence[int]], ambient_rank: Optional[int] = None):
        gens = [tuple(int(x) for x in g) for g in generators]
        if ambient_rank is None:
            if not gens:
                raise InvalidInputError("ambient rank required for a cone without generators")
            ambient_rank = len(gens[0])
        if any(len(g) != ambient_rank for g in gens):
            raise InvalidInputError("generators must all have the ambient length")
        self.ambient_rank = ambient_rank
        self._generators = _canonical(primitive(g) for g in gens if any(g))
        self.clear_cache()

    def clear_cache(self):
        self._facets = None
        self._equations = None
        self._rays = None
        self._lineality = None
        self._faces = None
        self._ray_tight = None

    def __repr__(self) -> str:
        return f"RationalCone(generators={self._generators})"

    def __eq__(self, other) -> bool:
        if not isinstance(other, RationalCone) or other.ambient_rank != self.ambient_rank:
            return False
        return all(other.contains(g) for g in self._generators) and \
            all(self.contains(g) for g in other._generators)

    def __hash__(self):
        return hash((self.ambient_rank, tuple(self.facets), tuple(self.equations)))

    # -- double description -------------------------------------------------

    @property
    def generators(self) -> List[Vector]:
        return list(self._generators)

    def _compute_hrep(self):
        lines, rays = double_description(self._generators, self.ambient_rank)
        equations = _canonical(sign_normalize(primitive(l)) for l in saturation_basis(lines, self.ambient_rank)) \
            if lines else []
        facets = _orthogonal_projection(rays, equations)
        self._equations = equations
        self._facets = _canonical(facets)
        get_logger().debug(f"cone with {len(self._generators)} generators: "
                           f"{len(self._facets)} facets, {len(self._equations)} equations")

    @property
    def facets(self) -> List[Vector]:
        """Primitive inward facet normals (relative to the linear span)"""
        if self._facets is None:
            self._compute_hrep()
        return list(self._facets)

    @property
    def equations(self) -> List[Vector]:
        """Saturated basis of the integer functionals vanishing on the cone"""
        if self._equations is None:
            self._compute_hrep()
        return list(self._equations)

    def _compute_vrep(self):
        ineqs = self.facets + self.equations + [tuple(-x for x in e) for e in self.equations]
        lines, rays = double_description(ineqs, self.ambient_rank)
        lineality = _canonical(sign_normalize(primitive(l)) for l in saturation_basis(lines, self.ambient_rank)) \
            if lines else []
        self._lineality = lineality
        self._rays = _canonical(_orthogonal_projection(rays, lineality))

    @property
    def lineality_basis(self) -> List[Vector]:
        if self._lineality is None:
            self._compute_vrep()
        return list(self._lineality)

    def extremal_rays(self) -> List[Vector]:
        """Primitive generators of the extremal rays (modulo lineality)"""
        if self._rays is None:
            self._compute_vrep()
        return list(self._rays)

    # -- basic queries ------------------------------------------------------

    @property
    def dimension(self) -> int:
        return rank(self._generators) if self._generators else 0

    @property
    def lineality_rank(self) -> int:
        return len(self.lineality_basis)

    def contains(self, v: Sequence) -> bool:
        if len(v) != self.ambient_rank:
            raise InvalidInputError(f"point of length {len(v)} in a rank {self.ambient_rank} cone")
        return all(dot(f, v) >= 0 for f in self.facets) and all(dot(e, v) == 0 for e in self.equations)

    def contains_interior(self, v: Sequence) -> bool:
        """Relative interior membership"""
        return all(dot(f, v) > 0 for f in self.facets) and all(dot(e, v) == 0 for e in self.equations)

    def predicates(self) -> Predicates:
        dim = self.dimension
        lin = self.lineality_rank
        n_rays = len(self.extremal_rays())
        return Predicates(
            strictly_convex=(lin == 0),
            full_dimensional=(dim == self.ambient_rank),
            simplicial=(n_rays == dim - lin),
            lineality_rank=lin,
            dimension=dim,
            n_rays=n_rays,
        )

    def is_unimodular(self) -> bool:
        """Simplicial modulo lineality with ray generators extendable to a lattice basis"""
        if not self.predicates().simplicial:
            return False
        basis = self.extremal_rays() + self.lineality_basis
        return rank(basis) == len(basis) and index_in_saturation(basis) == 1

    def grading(self) -> Vector:
        """Integer functional positive on every nonzero point of a pointed cone"""
        if not self.facets:
            return tuple(0 for _ in range(self.ambient_rank))
        return tuple(sum(f[k] for f in self.facets) for k in range(self.ambient_rank))

    # -- faces --------------------------------------------------------------

    def _tight_sets(self) -> List[FrozenSet[int]]:
        if self._ray_tight is None:
            facets = self.facets
            self._ray_tight = [frozenset(j for j, f in enumerate(facets) if dot(f, r) == 0)
                               for r in self.extremal_rays()]
        return self._ray_tight

    def closure(self, tight: Iterable[int]) -> Face:
        """The face cut out by a set of facets, with its tight set closed"""
        tight = frozenset(tight)
        ray_sets = self._tight_sets()
        rays = frozenset(i for i, z in enumerate(ray_sets) if tight <= z)
        closed = frozenset(range(len(self.facets)))
        for i in rays:
            closed &= ray_sets[i]
        members = [self.extremal_rays()[i] for i in rays] + self.lineality_basis
        return Face(closed, rays, rank(members) if members else 0)

    def face_poset(self) -> List[Face]:
        """All faces, sorted by dimension then tight set"""
        if self._faces is None:
            seen = {}
            start = self.closure(())
            stack = [start]
            while stack:
                face = stack.pop()
                if face.tight in seen:
                    continue
                seen[face.tight] = face
                for j in range(len(self.facets)):
                    if j not in face.tight:
                        nxt = self.closure(face.tight | {j})
                        if nxt.tight not in seen:
                            stack.append(nxt)
            self._faces = sorted(seen.values(), key=lambda f: (f.dimension, sorted(f.tight)))
        return list(self._faces)

    def f_vector(self) -> Tuple[int, ...]:
        faces = self.face_poset()
        top = max(f.dimension for f in faces)
        low = self.lineality_rank
        return tuple(sum(1 for f in faces if f.dimension == d) for d in range(low, top + 1))

    def face_generators(self, face: Face) -> List[Vector]:
        return [self.extremal_rays()[i] for i in sorted(face.rays)]

    def ray_face(self, index: int) -> Face:
        return self.closure(self._tight_sets()[index])

    def split_lineality(self) -> LinealitySplitting:
        """Unimodular coordinates adapted to the lineality lattice"""
        basis = self.lineality_basis
        n = self.ambient_rank
        if not basis:
            return LinealitySplitting(identity(n), identity(n), 0)
        S, D, T, Sinv, Tinv = normal_form(np.array(transpose(basis), dtype=object))
        return LinealitySplitting(to_matrix(Sinv), to_matrix(S), len(basis))

    def to_dict(self) -> Dict[str, Any]:
        return {
            'generators': [list(g) for g in self.extremal_rays()] +
                          [list(v) for b in self.lineality_basis for v in (b, tuple(-x for x in b))],
            'facets': [list(f) for f in self.facets],
            'equations': [list(e) for e in self.equations],
        }


def positive_hull(vectors: Sequence[Sequence]) -> RationalCone:
    """
    Cone generated by rational vectors, with redundant generators removed

    Args:
        vectors: nonempty list of int/Fraction vectors

    Returns:
        RationalCone whose generators are its extremal ray generators plus
        +-lineality basis vectors
    """
    if not vectors:
        raise InvalidInputError("positive hull of an empty set")
    raw = RationalCone([primitive(v) for v in vectors], ambient_rank=len(vectors[0]))
    gens = raw.extremal_rays() + [v for b in raw.lineality_basis for v in (b, tuple(-x for x in b))]
    cone = RationalCone(gens, ambient_rank=raw.ambient_rank)
    cone._facets, cone._equations = raw.facets, raw.equations
    cone._rays, cone._lineality = raw.extremal_rays(), raw.lineality_basis
    return cone


def dual_cone(cone: RationalCone) -> RationalCone:
    """{chi : <g, chi> >= 0 for all generators g}"""
    gens = cone.facets + cone.equations + [tuple(-x for x in e) for e in cone.equations]
    if not gens:
        return RationalCone([], ambient_rank=cone.ambient_rank)
    return positive_hull(gens)


def face_poset(cone: RationalCone) -> List[Face]:
    return cone.face_poset()


def extremal_rays(cone: RationalCone) -> List[Vector]:
    return cone.extremal_rays()


def predicates(cone: RationalCone) -> Predicates:
    return cone.predicates()


def smallest_face_containing(cone: RationalCone, points: Sequence[Sequence]) -> Face:
    """
    Smallest face containing all points

    Raises:
        PointOutsideCone: if a point is not in the cone
    """
    tight = set(range(len(cone.facets)))
    for pt in points:
        if not cone.contains(pt):
            raise PointOutsideCone(f"point {tuple(pt)} is not in the cone")
        tight &= {j for j, f in enumerate(cone.facets) if dot(f, pt) == 0}
    return cone.closure(tight)


@dataclass(frozen=True)
class FreeActionValues:
    values: Tuple[int, ...]
    rays: Tuple[Vector, ...]

    @property
    def all_ones(self) -> bool:
        return bool(self.values) and all(v == 1 for v in self.values)

    def to_dict(self) -> Dict[str, Any]:
        return {'rays': [list(r) for r in self.rays], 'values': list(self.values), 'all_ones': self.all_ones}


def free_action_values(c_dual: RationalCone, z: Sequence[int]) -> FreeActionValues:
    """<z, chi_rho> over the extremal rays of the dual cone"""
    rays = c_dual.extremal_rays()
    return FreeActionValues(tuple(int(dot(z, r)) for r in rays), tuple(rays))
