"""
Pair Predicates
Orbit cones and semigroups of a pair, ab-nondegeneracy, strict convexity,
the dimension of T_{G,mu}, the R1 criterion, the freeness classification,
the expected flatness verdict, semigroup selection and variable names.
"""

import json
from dataclasses import dataclass, field
from functools import lru_cache
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Tuple

from utils.logger import get_logger
from ..budget import Budget, resolve
from ..cones import RationalCone, dual_cone, positive_hull
from ..errors import (
    AssumptionViolation, InvalidInputError, InvariantViolation, UnsupportedPairError,
)
from ..lang_cover import LangMap, is_smooth, ramification_degrees
from ..lattice_galois import Vector, dot, primitive, vec_gcd
from ..semigroups import AffineSemigroup, is_free
from .base import LMPair


# ---------------------------------------------------------------------------
# Cones and semigroups of a pair
# ---------------------------------------------------------------------------

@lru_cache(maxsize=128)
def orbit_cone(pair: LMPair) -> RationalCone:
    """sigma_{G,mu}: the positive hull of the orbit"""
    return positive_hull(list(pair.orbit))


def orbit_rays(pair: LMPair) -> List[Vector]:
    """Distinct primitive vectors rho_{mu'} on the orbit elements, canonically ordered"""
    return sorted({primitive(v) for v in pair.orbit if any(v)}, reverse=True)


def max_semigroup(pair: LMPair, budget: Optional[Budget] = None) -> AffineSemigroup:
    """S_{G,mu} = sigma^vee ∩ X^*(T_G)"""
    return AffineSemigroup.from_cone(dual_cone(orbit_cone(pair)), budget)


@dataclass
class SemigroupChoice:
    """A sub-semigroup S of S_{G,mu} together with how it was chosen"""
    semigroup: AffineSemigroup
    kind: str
    source: str = ''

    @property
    def is_max(self) -> bool:
        return self.kind == 'max'

    def to_dict(self) -> Dict[str, Any]:
        data = {'kind': self.kind}
        if self.source:
            data['source'] = self.source
        return data


def _check_inside(pair: LMPair, generators: Sequence[Sequence[int]]):
    tau_dual = dual_cone(orbit_cone(pair))
    for g in generators:
        if len(g) != pair.rank:
            raise InvalidInputError(f"semigroup generator {tuple(g)} does not have length {pair.rank}")
        if not tau_dual.contains(g):
            raise AssumptionViolation(f"generator {tuple(g)} is not in S_(G,mu)")


def select_semigroup(pair: LMPair, selector: str = 'max',
                     budget: Optional[Budget] = None) -> SemigroupChoice:
    """
    Resolve the --semigroup option

    Args:
        pair: the pair
        selector: 'max', 'free' or 'file:<path>' (JSON {"generators": [...],
            "saturated": bool})
        budget: budget attached to the semigroup

    Returns:
        SemigroupChoice

    Raises:
        UnsupportedPairError: no free sub-semigroup is known for the pair
        AssumptionViolation: file generators leave S_{G,mu}
    """
    budget = resolve(budget)
    selector = (selector or 'max').strip()
    if selector == 'max':
        return SemigroupChoice(max_semigroup(pair, budget), 'max')
    if selector == 'free':
        if pair.free_generators is not None:
            _check_inside(pair, pair.free_generators)
            S = AffineSemigroup.from_generators(pair.free_generators, budget)
            if not is_free(S):
                raise InvariantViolation(f"catalog free semigroup of {pair.name} is not free")
            return SemigroupChoice(S, 'free')
        S = max_semigroup(pair, budget)
        if is_smooth(S):
            return SemigroupChoice(S, 'max')
        raise UnsupportedPairError(f"no free sub-semigroup is known for {pair.name}")
    if selector.startswith('file:'):
        path = selector[len('file:'):]
        if not Path(path).exists():
            raise InvalidInputError(f"semigroup file not found: {path}")
        try:
            with open(path, 'r') as f:
                data = json.load(f)
            gens = [tuple(int(x) for x in g) for g in data['generators']]
        except (json.JSONDecodeError, KeyError, TypeError, ValueError) as e:
            raise InvalidInputError(f"invalid semigroup file {path}: {e}")
        if not gens:
            raise InvalidInputError(f"semigroup file {path} has no generators")
        _check_inside(pair, gens)
        if data.get('saturated'):
            S = AffineSemigroup.from_cone(positive_hull(gens), budget)
        else:
            S = AffineSemigroup.from_generators(gens, budget)
        get_logger().debug(f"semigroup from {path}: {len(gens)} generators")
        return SemigroupChoice(S, 'file', path)
    raise InvalidInputError(f"unknown semigroup selector '{selector}' (use max, free or file:<path>)")


# ---------------------------------------------------------------------------
# Structural predicates
# ---------------------------------------------------------------------------

def ab_nondegenerate(pair: LMPair) -> bool:
    """<mu^avg, ab_character> is nonzero"""
    if pair.ab_character is None:
        raise AssumptionViolation(f"pair {pair.name} has no ab_character")
    return any(dot(pair.ab_character, mu) != 0 for mu in pair.orbit)


def strictly_convex(pair: LMPair) -> bool:
    return orbit_cone(pair).predicates().strictly_convex


@dataclass(frozen=True)
class DimensionReport:
    """dim T_{G,mu} and the split-rank formula"""
    dimension: int
    lattice_rank: int
    formula: Optional[int]
    checked: bool

    @property
    def full(self) -> bool:
        """T_{G,mu} = T_G"""
        return self.dimension == self.lattice_rank

    def to_dict(self) -> Dict[str, Any]:
        return {
            'dimension': self.dimension,
            'lattice_rank': self.lattice_rank,
            'formula': self.formula,
            'checked': self.checked,
            'full': self.full,
        }


def dim_T_mu(pair: LMPair) -> DimensionReport:
    """
    rank N - rank(sigma^perp ∩ X^*), compared with 1 + sum of split ranks

    Raises:
        InvariantViolation: the formula fails on an Iwahori pair
    """
    dimension = orbit_cone(pair).dimension
    formula = 1 + sum(pair.split_ranks) if pair.split_ranks else None
    checked = pair.iwahori and formula is not None
    if checked and dimension != formula:
        raise InvariantViolation(
            f"dim T_(G,mu) = {dimension} for {pair.name}, but the split-rank formula gives {formula}")
    return DimensionReport(dimension, pair.rank, formula, checked)


# ---------------------------------------------------------------------------
# R1
# ---------------------------------------------------------------------------

R1 = 'R1'
NOT_R1 = 'not R1'
UNDETERMINED = 'undetermined'


@dataclass(frozen=True)
class R1Element:
    """Verdict along the boundary divisor of one orbit element"""
    element: Tuple
    e_image: Vector
    divisibility: int
    ramification: Optional[int]
    verdict: str

    @property
    def indivisible(self) -> bool:
        return self.divisibility == 1

    def to_dict(self) -> Dict[str, Any]:
        return {
            'element': [str(x) for x in self.element],
            'e_image': list(self.e_image),
            'divisibility': self.divisibility,
            'indivisible': self.indivisible,
            'ramification': self.ramification,
            'verdict': self.verdict,
        }


@dataclass
class R1Report:
    elements: List[R1Element] = field(default_factory=list)
    semigroup_kind: str = 'max'
    verdict: str = R1

    @property
    def passes(self) -> bool:
        return self.verdict == R1

    def divisible_elements(self) -> List[Vector]:
        return [el.e_image for el in self.elements if not el.indivisible]

    def to_dict(self) -> Dict[str, Any]:
        return {
            'verdict': self.verdict,
            'passes': self.passes,
            'semigroup': self.semigroup_kind,
            'elements': [el.to_dict() for el in self.elements],
        }


def r1_criterion(pair: LMPair, choice: Optional[SemigroupChoice] = None) -> R1Report:
    """
    Per orbit element: is e*phi(mu') indivisible in N, and how ramified is
    the Lang cover along its ray?

    An element passes when e*phi(mu') is indivisible or the ramification
    degree along rho_{mu'} is 1. For split tori with p > 2 a divisible
    element, or S != S_{G,mu}, fails; for non-split tori those cases are
    left undetermined.
    """
    lm = LangMap.from_pair(pair)
    strict_split = pair.is_split and pair.p > 2
    tau = orbit_cone(pair)
    degrees: Dict[Vector, int] = {}
    if tau.lineality_rank == 0:
        for ray in ramification_degrees(lm, tau).rays:
            degrees.setdefault(ray.lam, ray.e)

    report = R1Report(semigroup_kind=choice.kind if choice else 'max')
    for mu, scaled in zip(pair.orbit, pair.e_orbit):
        n = vec_gcd(scaled)
        e_ram = degrees.get(primitive(mu)) if any(mu) else None
        if n == 1 or e_ram == 1:
            verdict = R1
        elif strict_split:
            verdict = NOT_R1
        else:
            verdict = UNDETERMINED
        report.elements.append(R1Element(mu, scaled, n, e_ram, verdict))

    verdicts = {el.verdict for el in report.elements}
    if NOT_R1 in verdicts:
        report.verdict = NOT_R1
    elif UNDETERMINED in verdicts:
        report.verdict = UNDETERMINED
    else:
        report.verdict = R1
    if choice is not None and not choice.is_max and not (lm.is_split and pair.p == 2):
        if choice.semigroup.cone != dual_cone(tau) or not choice.semigroup.saturated:
            report.verdict = NOT_R1 if strict_split else UNDETERMINED
    return report


# ---------------------------------------------------------------------------
# Classification and flatness
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Classification:
    simplicial: bool
    free: bool
    drinfeld_case: bool

    def to_dict(self) -> Dict[str, Any]:
        return {'simplicial': self.simplicial, 'free': self.free, 'drinfeld_case': self.drinfeld_case}


def classify(pair: LMPair, budget: Optional[Budget] = None) -> Classification:
    """
    Simpliciality of sigma and freeness of S_{G,mu}; free is the Drinfeld case

    Raises:
        AssumptionViolation: the pair is ab-degenerate or T_{G,mu} != T_G
    """
    if not ab_nondegenerate(pair):
        raise AssumptionViolation(f"pair {pair.name} is not ab-nondegenerate")
    if not dim_T_mu(pair).full:
        raise AssumptionViolation(f"T_(G,mu) != T_G for {pair.name}")
    simplicial = orbit_cone(pair).predicates().simplicial
    free = is_free(max_semigroup(pair, budget))
    return Classification(simplicial, free, free)


ISOMORPHISM = 'isomorphism'
FLAT = 'flat'
NON_FLAT = 'non-flat'


@dataclass(frozen=True)
class FlatnessExpectation:
    """Flatness of the Lang cover of Y_{S_(G,mu)} predicted from the pair's shape"""
    verdict: str
    conditional: bool
    reason: str

    def agrees_with(self, flat: bool) -> bool:
        if self.verdict == ISOMORPHISM:
            return flat
        return flat == (self.verdict == FLAT)

    def to_dict(self) -> Dict[str, Any]:
        return {'verdict': self.verdict, 'conditional': self.conditional, 'reason': self.reason}


def nonflat_verdict(pair: LMPair, budget: Optional[Budget] = None) -> FlatnessExpectation:
    """
    Expected verdict: an isomorphism for split tori at p = 2, flat in the
    Drinfeld case (S_{G,mu} free modulo its torus factor), non-flat
    otherwise. Outside split tori the non-flat verdict rests on the
    flat-iff-smooth conjecture.
    """
    if pair.is_split and pair.p == 2:
        return FlatnessExpectation(ISOMORPHISM, False, 'split torus at p = 2 has trivial F_p-points')
    conditional = not pair.is_split
    if is_smooth(max_semigroup(pair, budget)):
        return FlatnessExpectation(FLAT, False, 'S_(G,mu) is free modulo its torus factor')
    reason = 'Y_S is singular' + (' (conditional on flat iff smooth)' if conditional else '')
    return FlatnessExpectation(NON_FLAT, conditional, reason)


# ---------------------------------------------------------------------------
# Variable names
# ---------------------------------------------------------------------------

def _negative_index(v: Sequence[int]) -> Optional[int]:
    negative = [i for i, x in enumerate(v) if x < 0]
    return negative[0] if len(negative) == 1 else None


def _unit_index(v: Sequence[int]) -> Optional[int]:
    if sum(1 for x in v if x) == 1:
        i = next(i for i, x in enumerate(v) if x)
        return i if v[i] == 1 else None
    return None


def variable_names(pair: LMPair, hilbert_basis: Sequence[Vector],
                   cone: Optional[RationalCone] = None) -> List[str]:
    """
    Names for the Hilbert-basis variables

    e_i / f_i for symplectic and GL_n (1,1,0..) families, x_U for GSpin,
    e_{i,a} / f_{i,a} for Hilbert-Siegel, x_1.. otherwise. Elements that
    fit no pattern fall back to x_k.
    """
    hb = [tuple(h) for h in hilbert_basis]
    fallback = [f"x_{k + 1}" for k in range(len(hb))]
    scheme = pair.naming

    if scheme == 'x_interior_first':
        rays = set((cone or positive_hull(hb)).extremal_rays())
        order = [k for k, h in enumerate(hb) if primitive(h) not in rays]
        order += [k for k, h in enumerate(hb) if primitive(h) in rays]
        names = [''] * len(hb)
        for pos, k in enumerate(order):
            names[k] = f"x_{pos + 1}"
        return names

    names = []
    for k, h in enumerate(hb):
        name = None
        if scheme == 'ef':
            i = _unit_index(h)
            j = _negative_index(h)
            if i is not None and i < pair.rank - (1 if pair.family == 'gsp' else 0):
                name = f"e_{i + 1}"
            elif j is not None:
                name = f"f_{j + 1}"
        elif scheme == 'ef_block':
            g = pair.params[0] if pair.params else 1
            i = _unit_index(h)
            j = _negative_index(h)
            if i is not None and i < pair.rank - 1:
                name = f"e_{{{i % g + 1},{i // g}}}"
            elif j is not None:
                name = f"f_{{{j % g + 1},{j // g}}}"
        elif scheme == 'subset':
            if h[-1] == 1 and all(x in (0, 1) for x in h[:-1]):
                U = ''.join(str(i + 1) for i, x in enumerate(h[:-1]) if x)
                name = f"x_{{{U}}}"
        names.append(name or fallback[k])
    if len(set(names)) != len(names):
        return fallback
    return names
