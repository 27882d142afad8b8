"""
Binomial Groebner engine
Buchberger's algorithm restricted to pure binomials x^a - x^b (S-pairs and
reductions of binomials stay binomial), lattice-ideal saturation and
minimal generators of toric ideals via fiber graphs.
"""

from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from utils.logger import get_logger
from .budget import Budget, resolve
from .errors import InvariantViolation
from .lattice_galois import Vector, dot, kernel_basis

Binomial = Tuple[Vector, Vector]


class MonomialOrder:
    """
    Weighted degree reverse lexicographic order

    Args:
        weights: positive weight per variable
        last: variable placed last (smallest) in the revlex tie-break
    """

    def __init__(self, weights: Sequence[int], last: Optional[int] = None):
        self.weights = tuple(weights)
        n = len(self.weights)
        order = list(range(n))
        if last is not None:
            order.remove(last)
            order.append(last)
        self.reverse_order = tuple(reversed(order))

    def key(self, a: Sequence[int]):
        return (dot(self.weights, a), tuple(-a[i] for i in self.reverse_order))

    def orient(self, a: Vector, b: Vector) -> Optional[Binomial]:
        """Return (lead, trail), or None when the binomial is zero"""
        if a == b:
            return None
        return (a, b) if self.key(a) > self.key(b) else (b, a)


def _divides(c: Vector, a: Vector) -> bool:
    return all(x <= y for x, y in zip(c, a))


def _split(u: Sequence[int]) -> Tuple[Vector, Vector]:
    return tuple(max(x, 0) for x in u), tuple(max(-x, 0) for x in u)


def normal_form_monomial(a: Vector, basis: Sequence[Binomial]) -> Vector:
    """Reduce a monomial to its standard form modulo the binomials"""
    changed = True
    while changed:
        changed = False
        for lead, trail in basis:
            if _divides(lead, a):
                a = tuple(x - l + t for x, l, t in zip(a, lead, trail))
                changed = True
                break
    return a


def _reduce(binomial: Binomial, basis: Sequence[Binomial], order: MonomialOrder) -> Optional[Binomial]:
    a = normal_form_monomial(binomial[0], basis)
    b = normal_form_monomial(binomial[1], basis)
    return order.orient(a, b)


def buchberger(generators: Sequence[Binomial], order: MonomialOrder,
               budget: Optional[Budget] = None) -> List[Binomial]:
    """
    Reduced Groebner basis of a binomial ideal

    Args:
        generators: binomials as exponent pairs
        order: monomial order
        budget: caps on basis size and processed S-pairs

    Returns:
        Reduced basis as (lead, trail) pairs

    Raises:
        ResourceLimitExceeded: when a cap is hit
    """
    budget = resolve(budget)
    basis: List[Binomial] = []
    for a, b in generators:
        oriented = order.orient(tuple(a), tuple(b))
        if oriented is not None:
            basis.append(oriented)

    pairs = [(i, j) for j in range(len(basis)) for i in range(j)]
    processed = 0
    while pairs:
        i, j = pairs.pop()
        processed += 1
        budget.check("binomial S-pairs", processed, budget.max_spairs)
        (a1, b1), (a2, b2) = basis[i], basis[j]
        if all(x == 0 or y == 0 for x, y in zip(a1, a2)):
            continue
        lcm = tuple(max(x, y) for x, y in zip(a1, a2))
        s = order.orient(tuple(l - x + y for l, x, y in zip(lcm, a1, b1)),
                         tuple(l - x + y for l, x, y in zip(lcm, a2, b2)))
        if s is None:
            continue
        r = _reduce(s, basis, order)
        if r is None:
            continue
        basis.append(r)
        budget.check("Groebner basis size", len(basis), budget.max_groebner_basis)
        k = len(basis) - 1
        pairs.extend((m, k) for m in range(k))

    get_logger().debug(f"buchberger: {processed} S-pairs, {len(basis)} elements before reduction")
    return _interreduce(basis, order)


def _interreduce(basis: List[Binomial], order: MonomialOrder) -> List[Binomial]:
    minimal: List[Binomial] = []
    for k, (lead, trail) in enumerate(basis):
        redundant = False
        for m, (other, _) in enumerate(basis):
            if m == k or not _divides(other, lead):
                continue
            if other != lead or m < k:
                redundant = True
                break
        if not redundant:
            minimal.append((lead, trail))
    reduced = []
    for lead, trail in minimal:
        t = normal_form_monomial(trail, minimal)
        reduced.append((lead, t))
    return sorted(reduced, key=lambda bt: order.key(bt[0]))


def lattice_basis_ideal(A: Sequence[Sequence[int]]) -> List[Binomial]:
    """x^{u+} - x^{u-} for a saturated basis u of ker(A)"""
    return [_split(u) for u in kernel_basis(A)]


def saturate_by_variables(generators: Sequence[Binomial], weights: Sequence[int],
                          budget: Optional[Budget] = None) -> Tuple[List[Binomial], MonomialOrder]:
    """
    Saturate a homogeneous binomial ideal by the product of all variables

    One Groebner computation per variable, with that variable last in the
    revlex order; dividing each element by its power of the variable gives
    a basis of the saturation by it.

    Returns:
        (reduced Groebner basis, order it is reduced for)
    """
    n = len(weights)
    current = [tuple(map(tuple, g)) for g in generators]
    order = MonomialOrder(weights)
    log = get_logger()
    for i in range(n):
        order = MonomialOrder(weights, last=i)
        gb = buchberger(current, order, budget)
        current = []
        for lead, trail in gb:
            k = min(lead[i], trail[i])
            if k:
                lead = lead[:i] + (lead[i] - k,) + lead[i + 1:]
                trail = trail[:i] + (trail[i] - k,) + trail[i + 1:]
            current.append((lead, trail))
        log.debug(f"saturated by x_{i + 1}: {len(current)} generators")
    gb = buchberger(current, order, budget)
    return gb, order


@dataclass
class MinimalGenerators:
    generators: List[Binomial]
    degrees: Dict[Vector, int]

    @property
    def count(self) -> int:
        return len(self.generators)


def minimal_generators(A: Sequence[Sequence[int]], grading: Sequence[int], gb: Sequence[Binomial],
                       budget: Optional[Budget] = None) -> MinimalGenerators:
    """
    Minimal binomial generators of a toric ideal

    For each multidegree b occurring in the Groebner basis, the fiber graph
    on A^{-1}(b) joins monomials with a common variable; it contributes
    (components - 1) minimal generators.
    """
    budget = resolve(budget)
    n = len(A[0]) if A else 0
    columns = [tuple(row[j] for row in A) for j in range(n)]
    weights = [dot(grading, c) for c in columns]

    def multidegree(u: Vector) -> Vector:
        return tuple(sum(c[k] * x for c, x in zip(columns, u)) for k in range(len(A)))

    degrees = sorted({multidegree(lead) for lead, _ in gb}, key=lambda b: (dot(grading, b), b))
    generators: List[Binomial] = []
    counts: Dict[Vector, int] = {}
    for b in degrees:
        pts = fiber_points(columns, weights, b, dot(grading, b), budget)
        components = _components(pts)
        if len(components) > 1:
            reps = [min(comp) for comp in components]
            reps.sort(reverse=True)
            for r in reps[1:]:
                generators.append((reps[0], r))
            counts[b] = len(components) - 1
    for lead, trail in generators:
        if multidegree(lead) != multidegree(trail):
            raise InvariantViolation("minimal generator is not homogeneous")
    return MinimalGenerators(generators, counts)


def fiber_points(columns: Sequence[Vector], weights: Sequence[int], b: Vector, degree: int,
                 budget: Optional[Budget] = None) -> List[Vector]:
    """Lattice points u >= 0 with sum u_j columns_j = b, by weighted-degree search"""
    budget = resolve(budget)
    n = len(columns)
    points: List[Vector] = []
    partial = [0] * n

    def search(j: int, remaining: int, acc: Tuple[int, ...]):
        if j == n:
            if remaining == 0 and acc == b:
                points.append(tuple(partial))
                budget.check("fiber points", len(points), budget.max_fiber_points)
            return
        w = weights[j]
        if j == n - 1:
            if remaining % w:
                return
            ks = [remaining // w]
        else:
            ks = range(remaining // w + 1)
        for k in ks:
            partial[j] = k
            search(j + 1, remaining - k * w, tuple(x + k * c for x, c in zip(acc, columns[j])))
        partial[j] = 0

    search(0, degree, tuple(0 for _ in b))
    return points


def _components(points: List[Vector]) -> List[List[Vector]]:
    parent = list(range(len(points)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    by_variable: Dict[int, int] = {}
    for i, u in enumerate(points):
        for j, x in enumerate(u):
            if x:
                if j in by_variable:
                    ri, rj = find(i), find(by_variable[j])
                    if ri != rj:
                        parent[ri] = rj
                else:
                    by_variable[j] = i
    groups: Dict[int, List[Vector]] = {}
    for i, u in enumerate(points):
        groups.setdefault(find(i), []).append(u)
    return sorted(groups.values(), key=lambda g: max(g), reverse=True)
