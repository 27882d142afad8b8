"""
Affine Weyl groups
Extended affine Weyl group X ⋊ W_0 of a split root datum acting on N_R by
x -> u x + lambda, Iwahori-Matsumoto length through the base alcove,
Bruhat order from reflection covers, admissible sets and the face map.
"""

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from math import floor
from typing import Any, Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from utils.logger import get_logger
from .budget import Budget, resolve
from .cones import Face, RationalCone, smallest_face_containing
from .errors import (
    InvalidInputError, InvariantViolation, NotAdmissibleError, UnsupportedPairError,
)
from .lattice_galois import (
    Matrix, Vector, _diagonal, dot, identity, mat_mul, mat_vec, normal_form, primitive,
)
from .root_data import RootSystem, reduced_word


@dataclass(frozen=True)
class AffWeylElement:
    """x -> w x + lam, with its length and Omega-component"""
    lam: Vector
    w: Matrix
    length: int = field(compare=False, default=0)
    omega: Tuple[int, ...] = field(compare=False, default=())

    @property
    def key(self) -> Tuple[Vector, Matrix]:
        return (self.lam, self.w)

    @property
    def is_translation(self) -> bool:
        return self.w == identity(len(self.lam))


class AffineWeylGroup:
    """
    Extended affine Weyl group of a root system on its ambient lattice

    Example:
        W = AffineWeylGroup(RootSystem.gl(2))
        W.length(W.translation((1, 0)))     # 1
    """

    def __init__(self, rs: RootSystem):
        self.rs = rs
        self.n = rs.ambient_rank
        self.positive = rs.positive_roots()
        coxeter = 1 + max(rs.height(a) for a, _ in self.positive)
        self.base_point = tuple(x / coxeter for x in rs.rho_check())
        self._omega_setup()
        self._length_cache: Dict[Tuple[Vector, Matrix], int] = {}

    def _omega_setup(self):
        coroots = np.array([list(c) for c in self.rs.simple_coroots], dtype=object).T
        S, D, T, Sinv, Tinv = normal_form(coroots)
        self._omega_rows = [tuple(int(x) for x in Sinv[i]) for i in range(self.n)]
        self._omega_mods = [abs(int(d)) for d in _diagonal(D, self.n)]

    # -- group structure ----------------------------------------------------

    def element(self, lam: Sequence[int], w: Optional[Matrix] = None) -> AffWeylElement:
        lam = tuple(int(x) for x in lam)
        if len(lam) != self.n:
            raise InvalidInputError(f"translation of length {len(lam)} is not in Z^{self.n}")
        w = identity(self.n) if w is None else tuple(tuple(int(x) for x in r) for r in w)
        return AffWeylElement(lam, w, self.length_of(lam, w), self.omega_of(lam))

    def identity(self) -> AffWeylElement:
        return self.element((0,) * self.n)

    def translation(self, lam: Sequence[int]) -> AffWeylElement:
        if any(Fraction(x).denominator != 1 for x in lam):
            raise InvalidInputError(f"translation {tuple(lam)} is not integral")
        return self.element(lam)

    def compose(self, x: AffWeylElement, y: AffWeylElement) -> AffWeylElement:
        """(x y)(v) = x(y(v))"""
        lam = tuple(a + b for a, b in zip(x.lam, mat_vec(x.w, y.lam)))
        return self.element(lam, mat_mul(x.w, y.w))

    def act(self, x: AffWeylElement, v: Sequence) -> tuple:
        return tuple(a + b for a, b in zip(mat_vec(x.w, v), x.lam))

    def omega_of(self, lam: Sequence[int]) -> Tuple[int, ...]:
        """Class of lam in X / Q^vee"""
        label = []
        for row, d in zip(self._omega_rows, self._omega_mods):
            y = dot(row, lam)
            if d == 0:
                label.append(int(y))
            elif d > 1:
                label.append(int(y) % d)
        return tuple(label)

    # -- length -------------------------------------------------------------

    def _alcove_values(self, lam: Vector, w: Matrix) -> List[Fraction]:
        image = tuple(a + b for a, b in zip(mat_vec(w, self.base_point), lam))
        return [dot(a, image) for a, _ in self.positive]

    def length_of(self, lam: Vector, w: Matrix) -> int:
        key = (lam, w)
        if key not in self._length_cache:
            self._length_cache[key] = sum(abs(floor(v)) for v in self._alcove_values(lam, w))
        return self._length_cache[key]

    def length(self, x: AffWeylElement) -> int:
        """Number of affine root hyperplanes separating the base alcove from x(base alcove)"""
        return self.length_of(x.lam, x.w)

    def word(self, x: AffWeylElement) -> Tuple[int, ...]:
        """Reduced word of the finite part"""
        return reduced_word(self.rs, x.w)

    # -- Bruhat order -------------------------------------------------------

    def reflection(self, alpha: Vector, coroot: Vector, k: int) -> AffWeylElement:
        """v -> v - (<alpha, v> - k) alpha^vee"""
        s = tuple(tuple((1 if i == j else 0) - coroot[i] * alpha[j] for j in range(self.n))
                  for i in range(self.n))
        return self.element(tuple(k * c for c in coroot), s)

    def separating_reflections(self, x: AffWeylElement) -> List[AffWeylElement]:
        out = []
        for (alpha, coroot), v in zip(self.positive, self._alcove_values(x.lam, x.w)):
            top = floor(v)
            ks = range(1, top + 1) if top >= 1 else range(top + 1, 1)
            for k in ks:
                out.append(self.reflection(alpha, coroot, k))
        return out

    def lower_covers(self, x: AffWeylElement) -> List[AffWeylElement]:
        """Elements r x with r an affine reflection and length exactly one less"""
        found = {}
        for r in self.separating_reflections(x):
            z = self.compose(r, x)
            if z.length == x.length - 1:
                found[z.key] = z
        return [found[k] for k in sorted(found)]

    def bruhat_leq(self, x: AffWeylElement, y: AffWeylElement) -> bool:
        """x <= y; elements of distinct Omega-components are incomparable"""
        if x.omega != y.omega or x.length > y.length:
            return False
        if x.length == y.length:
            return x.key == y.key
        seen = {y.key}
        frontier = [y]
        while frontier:
            nxt = []
            for z in frontier:
                for c in self.lower_covers(z):
                    if c.key == x.key:
                        return True
                    if c.length > x.length and c.key not in seen:
                        seen.add(c.key)
                        nxt.append(c)
            frontier = nxt
        return False


def bruhat_leq(group: AffineWeylGroup, x: AffWeylElement, y: AffWeylElement) -> bool:
    return group.bruhat_leq(x, y)


def length(group: AffineWeylGroup, x: AffWeylElement) -> int:
    return group.length(x)


# ---------------------------------------------------------------------------
# Admissible sets
# ---------------------------------------------------------------------------

@dataclass
class AdmissiblePoset:
    """Adm(mu) with its cover relations; covers are (lower, upper) index pairs"""
    group: AffineWeylGroup
    elements: List[AffWeylElement]
    covers: List[Tuple[int, int]]
    translations: Dict[int, Vector]
    _down: List[FrozenSet[int]] = field(default_factory=list, repr=False)

    def __post_init__(self):
        self.index = {el.key: i for i, el in enumerate(self.elements)}
        below: Dict[int, List[int]] = {i: [] for i in range(len(self.elements))}
        for lo, hi in self.covers:
            below[hi].append(lo)
        down: List[Optional[FrozenSet[int]]] = [None] * len(self.elements)
        for i in sorted(range(len(self.elements)), key=lambda k: self.elements[k].length):
            acc = {i}
            for j in below[i]:
                acc |= down[j]
            down[i] = frozenset(acc)
        self._down = down

    def __len__(self) -> int:
        return len(self.elements)

    def leq(self, i: int, j: int) -> bool:
        return i in self._down[j]

    def maximal(self) -> List[int]:
        uppers = {lo for lo, _ in self.covers}
        return [i for i in range(len(self.elements)) if i not in uppers]

    def minimal(self) -> List[int]:
        lowers = {hi for _, hi in self.covers}
        return [i for i in range(len(self.elements)) if i not in lowers]

    def lambda_set(self, i: int) -> List[Vector]:
        """Lambda(w): the mu' with w <= t_{mu'}"""
        return sorted((mu for j, mu in self.translations.items() if self.leq(i, j)), reverse=True)

    def to_dict(self) -> Dict[str, Any]:
        return {
            'size': len(self.elements),
            'elements': [
                {
                    'lambda': list(el.lam),
                    'w_word': list(self.group.word(el)),
                    'length': el.length,
                    'omega': list(el.omega),
                    'translation': i in self.translations,
                }
                for i, el in enumerate(self.elements)
            ],
            'covers': [list(c) for c in self.covers],
            'maximal': self.maximal(),
            'minimal': self.minimal(),
        }

    def to_dot(self, name: str = 'adm') -> str:
        """Hasse diagram in Graphviz DOT, upper elements on top"""
        lines = [f'digraph "{name}" {{', '  rankdir=BT;']
        for i, el in enumerate(self.elements):
            word = ''.join(f"s{k}" for k in self.group.word(el)) or '1'
            label = f"t({','.join(map(str, el.lam))}){'' if word == '1' else ' ' + word}\\nl={el.length}"
            shape = 'box' if i in self.translations else 'ellipse'
            lines.append(f'  n{i} [label="{label}", shape={shape}];')
        for lo, hi in self.covers:
            lines.append(f'  n{lo} -> n{hi};')
        lines.append('}')
        return '\n'.join(lines) + '\n'


def _affine_group(pair) -> AffineWeylGroup:
    from .pairs.catalog import RAMIFIED_FAMILIES

    if pair.root_system is None or not pair.iwahori:
        raise UnsupportedPairError(f"pair {pair.name} has no split Iwahori root datum")
    if pair.family in RAMIFIED_FAMILIES or pair.source is not None or pair.e != 1:
        raise UnsupportedPairError(f"pair {pair.name} is ramified; affine Weyl data needs a split group")
    return AffineWeylGroup(pair.root_system)


def admissible_set(pair, budget: Optional[Budget] = None) -> AdmissiblePoset:
    """
    Downward closure of the translations t_{mu'} under Bruhat covers

    Raises:
        UnsupportedPairError: ramified or non-Iwahori pair
        ResourceLimitExceeded: more than budget.max_admissible elements
        InvariantViolation: maxima are not the translations or the minimum
            is not unique
    """
    budget = resolve(budget)
    group = _affine_group(pair)
    log = get_logger()
    tops = [group.translation(mu) for mu in pair.orbit]
    found: Dict[Tuple, AffWeylElement] = {t.key: t for t in tops}
    cover_keys: List[Tuple[Tuple, Tuple]] = []
    queue = deque(tops)
    while queue:
        y = queue.popleft()
        for z in group.lower_covers(y):
            cover_keys.append((z.key, y.key))
            if z.key not in found:
                found[z.key] = z
                budget.check("admissible set size", len(found), budget.max_admissible)
                queue.append(z)

    elements = sorted(found.values(), key=lambda el: (el.length, el.lam, el.w))
    index = {el.key: i for i, el in enumerate(elements)}
    covers = sorted({(index[lo], index[hi]) for lo, hi in cover_keys})
    translations = {index[t.key]: t.lam for t in tops}
    poset = AdmissiblePoset(group, elements, covers, translations)
    log.debug(f"Adm({pair.name}): {len(elements)} elements, {len(covers)} covers")

    if sorted(poset.maximal()) != sorted(translations):
        raise InvariantViolation("maximal elements of Adm(mu) are not the translations")
    if len(poset.minimal()) != 1:
        raise InvariantViolation(f"Adm(mu) has {len(poset.minimal())} minimal elements")
    return poset


# ---------------------------------------------------------------------------
# Face map
# ---------------------------------------------------------------------------

def face_map(pair, w: AffWeylElement, poset: Optional[AdmissiblePoset] = None,
             cone: Optional[RationalCone] = None) -> Face:
    """
    Smallest face of sigma_{G,mu} containing the rays of Lambda(w)

    Raises:
        NotAdmissibleError: w is not in Adm(mu)
    """
    from .pairs.predicates import orbit_cone

    poset = poset if poset is not None else admissible_set(pair)
    cone = cone if cone is not None else orbit_cone(pair)
    if w.key not in poset.index:
        raise NotAdmissibleError(f"element t({','.join(map(str, w.lam))})·w is not in Adm(mu)")
    i = poset.index[w.key]
    return smallest_face_containing(cone, [primitive(mu) for mu in poset.lambda_set(i)])


@dataclass
class FaceMapReport:
    """Face of every admissible element and the properties checked on them"""
    poset: AdmissiblePoset
    faces: List[Face]
    cone_faces: List[Face]
    order_reversing: bool
    violations: List[Tuple[int, int]]

    @property
    def surjective(self) -> bool:
        """Onto every face other than the minimal one (the open orbit)"""
        hit = {f.tight for f in self.faces}
        targets = {f.tight for f in self.cone_faces if f.dimension > self._lowest}
        return targets <= hit

    @property
    def injective(self) -> bool:
        return len({f.tight for f in self.faces}) == len(self.faces)

    @property
    def _lowest(self) -> int:
        return min(f.dimension for f in self.cone_faces)

    def to_dict(self) -> Dict[str, Any]:
        return {
            'elements': [
                {
                    'lambda': list(el.lam),
                    'w_word': list(self.poset.group.word(el)),
                    'length': el.length,
                    'Lambda': [[str(x) for x in mu] for mu in self.poset.lambda_set(i)],
                    'face': face.to_dict(),
                }
                for i, (el, face) in enumerate(zip(self.poset.elements, self.faces))
            ],
            'n_faces': len(self.cone_faces),
            'surjective': self.surjective,
            'injective': self.injective,
            'order_reversing': self.order_reversing,
        }


def face_map_report(pair, budget: Optional[Budget] = None,
                    poset: Optional[AdmissiblePoset] = None) -> FaceMapReport:
    """Face map on all of Adm(mu), with order reversal checked on every comparable pair"""
    from .pairs.predicates import orbit_cone

    poset = poset if poset is not None else admissible_set(pair, budget)
    cone = orbit_cone(pair)
    faces = [face_map(pair, el, poset, cone) for el in poset.elements]
    violations = []
    for j in range(len(poset)):
        for i in poset._down[j]:
            # i <= j must give face(j) ⊆ face(i)
            if not faces[j] <= faces[i]:
                violations.append((i, j))
    return FaceMapReport(poset, faces, cone.face_poset(), not violations, violations)
