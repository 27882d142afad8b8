"""
Lang Covers
The Lang isogeny on cocharacters (L_* = p*sigma - 1) and characters
(L^* = L_*^T), normalized covers of toric embeddings, ramification along
boundary rays, fiber length over the closed orbit, flatness and smoothness.
"""

from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence

import numpy as np

from utils.logger import get_logger
from .budget import Budget, resolve
from .cones import RationalCone, dual_cone, positive_hull
from .errors import AssumptionViolation, InvalidInputError, InvariantViolation
from .lattice_galois import (
    GaloisLattice, Matrix, Vector, determinant, mat_mul, mat_vec, primitive,
    rational_inverse, transpose, vec_gcd,
)
from .semigroups import AffineSemigroup, is_free


class LangMap:
    """
    Lang isogeny of the torus with cocharacter lattice N at the prime p

    Example:
        lm = LangMap(GaloisLattice.split(2), 3)
        lm.group_order()      # (p-1)^2 = 4
    """

    def __init__(self, N: GaloisLattice, p: int):
        if p < 2:
            raise InvalidInputError(f"p must be a prime, got {p}")
        self.N = N
        self.p = p
        n = N.rank
        sigma = N.frobenius
        self.L_star: Matrix = tuple(tuple(p * sigma[i][j] - (1 if i == j else 0) for j in range(n))
                                    for i in range(n))
        self.L_star_dual: Matrix = transpose(self.L_star)
        if determinant(self.L_star) == 0:
            raise InvariantViolation("L_* is singular")
        if mat_mul(self.L_star, sigma) != mat_mul(sigma, self.L_star):
            raise InvariantViolation("L_* does not commute with Frobenius")
        self._inverse = rational_inverse(self.L_star)

    @classmethod
    def from_pair(cls, pair, p: Optional[int] = None) -> 'LangMap':
        return cls(pair.N, p if p is not None else pair.p)

    @property
    def is_split(self) -> bool:
        return self.N.frobenius == tuple(tuple(1 if i == j else 0 for j in range(self.N.rank))
                                         for i in range(self.N.rank))

    def group_order(self) -> int:
        """|T(F_p)| = |det(p*sigma - 1)|"""
        return abs(determinant(self.L_star))

    def push(self, lam: Sequence[int]) -> Vector:
        """L_* on cocharacters"""
        return mat_vec(self.L_star, lam)

    def pull(self, chi: Sequence[int]) -> Vector:
        """L^* on characters"""
        return mat_vec(self.L_star_dual, chi)

    def preimage(self, lam: Sequence[int]) -> Vector:
        """Primitive vector on the ray L_*^{-1}(lam)"""
        return primitive(mat_vec(self._inverse, lam))

    def to_dict(self) -> Dict[str, Any]:
        return {
            'p': self.p,
            'L_star': [list(r) for r in self.L_star],
            'group_order': self.group_order(),
        }


def group_order(lm: LangMap) -> int:
    return lm.group_order()


def pullback_cone(lm: LangMap, tau: RationalCone) -> RationalCone:
    """L_*^{-1}(tau), generated by the primitive preimages of tau's generators"""
    if tau.ambient_rank != lm.N.rank:
        raise InvalidInputError("cone and lattice ranks differ")
    gens = tau.generators
    if not gens:
        return RationalCone([], tau.ambient_rank)
    return positive_hull([lm.preimage(g) for g in gens])


def normalization_semigroup(lm: LangMap, S: AffineSemigroup,
                            budget: Optional[Budget] = None) -> AffineSemigroup:
    """
    S~ = saturation of L^*(S), equal to the dual of L_*^{-1}(tau) on X^*

    Raises:
        InvariantViolation: when the two descriptions disagree
    """
    images = [lm.pull(h) for h in S.hilbert_basis]
    images = [v for v in images if any(v)]
    if not images:
        raise InvalidInputError("semigroup has no nonzero elements")
    cone = positive_hull(images)
    tau = dual_cone(S.cone)
    if tau.generators:
        expected = dual_cone(pullback_cone(lm, tau))
        if expected != cone:
            raise InvariantViolation("saturation of L^*(S) differs from the dual of the pullback cone")
    return AffineSemigroup.from_cone(cone, budget if budget is not None else S.budget)


@dataclass(frozen=True)
class RayRamification:
    lambda_tilde: Vector
    lam: Vector
    e: int

    def to_dict(self) -> Dict[str, Any]:
        return {'lambda_tilde': list(self.lambda_tilde), 'lambda': list(self.lam), 'e': self.e}


@dataclass
class RamificationReport:
    rays: List[RayRamification] = field(default_factory=list)

    def degrees(self) -> List[int]:
        return [r.e for r in self.rays]

    def over(self, lam: Sequence[int]) -> List[RayRamification]:
        return [r for r in self.rays if r.lam == tuple(lam)]

    def to_dict(self) -> Dict[str, Any]:
        return {'rays': [r.to_dict() for r in self.rays]}


def ramification_degrees(lm: LangMap, tau: RationalCone) -> RamificationReport:
    """
    e with L_*(lambda~) = e * lambda for each ray of the pullback cone

    Raises:
        AssumptionViolation: tau is not strictly convex
        InvariantViolation: a degree does not divide |T(F_p)|
    """
    if tau.lineality_rank:
        raise AssumptionViolation("ramification needs a strictly convex cone")
    order = lm.group_order()
    report = RamificationReport()
    tau_rays = set(tau.extremal_rays())
    for lt in pullback_cone(lm, tau).extremal_rays():
        image = lm.push(lt)
        e = vec_gcd(image)
        lam = tuple(x // e for x in image)
        if lam not in tau_rays:
            raise InvariantViolation(f"L_* sends ray {lt} to {lam}, which is not a ray of tau")
        if order % e:
            raise InvariantViolation(f"ramification degree {e} does not divide |T(F_p)| = {order}")
        report.rays.append(RayRamification(lt, lam, e))
    report.rays.sort(key=lambda r: r.lam, reverse=True)
    return report


def _block_split(lm: LangMap, S: AffineSemigroup):
    """Split the torus factor of S; returns (torus degree, quotient semigroup, quotient L^*)"""
    split = S.cone.split_lineality()
    u = split.u
    n = S.ambient_rank
    M = mat_mul(mat_mul(split.Q, lm.L_star_dual), split.Qinv)
    if any(M[i][j] for i in range(u, n) for j in range(u)):
        raise AssumptionViolation("L^* does not preserve the torus factor of S")
    torus_degree = abs(determinant([row[:u] for row in M[:u]])) if u else 1
    quotient_map = tuple(tuple(row[u:]) for row in M[u:])
    pointed, _ = S.pointed_part()
    return torus_degree, pointed, quotient_map


def fiber_length_over_closed_orbit(lm: LangMap, S: AffineSemigroup,
                                   budget: Optional[Budget] = None) -> int:
    """
    Length of the fiber of Y_S~ -> Y_S over the closed orbit

    The torus factor contributes |det L^*| on it; on the pointed part this
    counts points of S~ outside every translate L^*(h) + S~ (h in the
    Hilbert basis). Candidates are enumerated in the bounding box of the
    zonotope spanned by the images of the ray elements.
    """
    budget = resolve(budget if budget is not None else S.budget)
    log = get_logger()
    if lm.is_split and lm.p == 2:
        return 1
    torus_degree, Sq, D = _block_split(lm, S)
    m = len(D)
    if m == 0:
        return torus_degree
    hb = Sq.hilbert_basis
    pred = Sq.cone.predicates()
    if not pred.full_dimensional:
        raise AssumptionViolation("S must be full-dimensional modulo its torus factor")

    images = [mat_vec(D, h) for h in hb]
    target = positive_hull(images)
    F = np.array(target.facets, dtype=np.int64)

    rays = set(Sq.cone.extremal_rays())
    ray_elements = [h for h in hb if primitive(h) in rays]
    spans = [mat_vec(D, h) for h in ray_elements]
    lo = [sum(min(0, v[k]) for v in spans) for k in range(m)]
    hi = [sum(max(0, v[k]) for v in spans) for k in range(m)]
    box = 1
    for a, b in zip(lo, hi):
        box *= (b - a + 1)
    budget.check("fiber enumeration box", box, budget.max_fiber_enumeration)
    log.debug(f"fiber length: box of {box} points, {len(images)} translates")

    shifts = np.array(images, dtype=np.int64)
    offsets = shifts.dot(F.T)
    count = 0
    for first in range(lo[0], hi[0] + 1):
        axes = [np.array([first], dtype=np.int64)] + \
               [np.arange(a, b + 1, dtype=np.int64) for a, b in zip(lo[1:], hi[1:])]
        grid = np.stack(np.meshgrid(*axes, indexing='ij'), axis=-1).reshape(-1, m)
        values = grid.dot(F.T)
        inside = (values >= 0).all(axis=1)
        covered = np.zeros(len(grid), dtype=bool)
        for off in offsets:
            covered |= ((values - off) >= 0).all(axis=1)
        count += int((inside & ~covered).sum())
        budget.check("fiber points", count, budget.max_fiber_points)
    return torus_degree * count


def is_smooth(S: AffineSemigroup) -> bool:
    """Y_S smooth: after splitting the torus factor the semigroup is free"""
    pointed, _ = S.pointed_part()
    if pointed.saturated:
        return pointed.cone.is_unimodular() and pointed.cone.predicates().full_dimensional
    return is_free(pointed)


def is_flat(lm: LangMap, S: AffineSemigroup, budget: Optional[Budget] = None) -> bool:
    return fiber_length_over_closed_orbit(lm, S, budget) == lm.group_order()


@dataclass
class LangReport:
    """Everything the lang subcommand reports for one semigroup"""
    group_order: int
    ramification: RamificationReport
    fiber_length: int
    flat: bool
    smooth: bool
    split: bool
    normalization: List[Vector]
    isomorphism: bool = False

    @property
    def conjecture_consistent(self) -> bool:
        """flat iff smooth; a theorem for split tori, evidence otherwise"""
        return self.isomorphism or self.flat == self.smooth

    def to_dict(self) -> Dict[str, Any]:
        return {
            'group_order': self.group_order,
            'rays': [r.to_dict() for r in self.ramification.rays],
            'fiber_length': self.fiber_length,
            'flat': self.flat,
            'smooth': self.smooth,
            'split': self.split,
            'isomorphism': self.isomorphism,
            'normalization_hilbert_basis': [list(h) for h in self.normalization],
            'conjecture_conjLco_consistent': self.conjecture_consistent,
        }


def lang_report(lm: LangMap, S: AffineSemigroup, budget: Optional[Budget] = None) -> LangReport:
    """Group order, ramification, fiber length and verdicts for S"""
    budget = resolve(budget if budget is not None else S.budget)
    order = lm.group_order()
    tau = dual_cone(S.cone)
    ram = ramification_degrees(lm, tau) if tau.generators else RamificationReport()
    fiber = fiber_length_over_closed_orbit(lm, S, budget)
    if fiber < order:
        raise InvariantViolation(f"fiber length {fiber} is below the group order {order}")
    smooth = is_smooth(S)
    flat = fiber == order
    if lm.is_split and lm.p > 2 and flat != smooth:
        raise InvariantViolation("split torus cover is flat but Y_S is not smooth, or conversely")
    if smooth and not flat:
        raise InvariantViolation("Y_S is smooth but its Lang cover is not flat")
    normalization = normalization_semigroup(lm, S, budget).hilbert_basis
    return LangReport(order, ram, fiber, flat, smooth, lm.is_split, normalization,
                      isomorphism=(lm.is_split and lm.p == 2))
