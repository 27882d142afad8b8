"""
Chart Presentations
Symbolic ring presentations of root-stack charts and of Raynaud /
Oort-Tate group schemes, with the T(F_p)-weights of their variables.

Relations are structured (two monomial terms) and render to strings with
'^' and '*'; parse_relation reads them back with sympy.
"""

import re
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Any, Dict, List, Optional, Sequence, Tuple

import sympy
from sympy.parsing.sympy_parser import convert_xor, parse_expr, standard_transformations

from utils.logger import get_logger
from .budget import Budget, resolve
from .errors import AssumptionViolation, InvalidInputError, UnsupportedPairError
from .lang_cover import LangMap, normalization_semigroup
from .lattice_galois import GaloisLattice, Vector, mat_vec, rational_inverse
from .semigroups import AffineSemigroup, decompose

CHART_KINDS = ('generic', 'split', 'drinfeld', 'fake-unitary', 'siegel', 'hilbert-siegel')
RAYNAUD_MODES = ('group', 'generators')

_TRANSFORMS = standard_transformations + (convert_xor,)


@dataclass(frozen=True)
class Term:
    """coefficient * prod name^exponent"""
    coefficient: int = 1
    powers: Tuple[Tuple[str, int], ...] = ()

    def render(self) -> str:
        factors = [name if e == 1 else f"{name}^{e}" for name, e in self.powers if e]
        if self.coefficient != 1 or not factors:
            factors.insert(0, str(self.coefficient))
        return "*".join(factors)

    def to_expr(self) -> sympy.Expr:
        return sympy.Integer(self.coefficient) * sympy.Mul(
            *[sympy.Symbol(name) ** e for name, e in self.powers])

    def to_dict(self) -> Dict[str, Any]:
        return {'coefficient': self.coefficient, 'powers': [[n, e] for n, e in self.powers]}


@dataclass(frozen=True)
class Relation:
    """lhs - rhs = 0"""
    lhs: Term
    rhs: Term
    label: str = ''

    def render(self) -> str:
        return f"{self.lhs.render()} - {self.rhs.render()}"

    def to_expr(self) -> sympy.Expr:
        return self.lhs.to_expr() - self.rhs.to_expr()

    def to_dict(self) -> Dict[str, Any]:
        return {
            'relation': self.render(),
            'label': self.label,
            'lhs': self.lhs.to_dict(),
            'rhs': self.rhs.to_dict(),
        }


def _product(*parts: Tuple[str, int]) -> Tuple[Tuple[str, int], ...]:
    return tuple((n, e) for n, e in parts if e)


@dataclass(frozen=True)
class Variable:
    name: str
    provenance: str
    element: Optional[Vector] = None

    def to_dict(self) -> Dict[str, Any]:
        data = {'name': self.name, 'provenance': self.provenance}
        if self.element is not None:
            data['element'] = list(self.element)
        return data


@dataclass
class ActionWeights:
    """
    Character of X^*(T) through which T(F_p) scales each variable

    Weights are taken modulo L^*(X^*); named constants have weight zero.
    """
    lang: LangMap
    weights: Dict[str, Vector]

    def weight(self, term: Term) -> Vector:
        total = [0] * self.lang.N.rank
        for name, e in term.powers:
            w = self.weights.get(name)
            if w is not None:
                total = [a + e * b for a, b in zip(total, w)]
        return tuple(total)

    def in_image(self, chi: Sequence[int]) -> bool:
        """chi in L^*(X^*)"""
        pre = mat_vec(rational_inverse(self.lang.L_star_dual), chi)
        return all(Fraction(x).denominator == 1 for x in pre)

    def is_equivariant(self, relation: Relation) -> bool:
        diff = tuple(a - b for a, b in zip(self.weight(relation.lhs), self.weight(relation.rhs)))
        return self.in_image(diff)

    def to_dict(self) -> Dict[str, Any]:
        return {
            'modulus': [list(r) for r in self.lang.L_star_dual],
            'weights': {name: list(w) for name, w in self.weights.items()},
        }


@dataclass
class RingPresentation:
    """
    base[variables] / (relations)

    Attributes:
        base: symbolic base ring, e.g. 'Z_p', 'O = W(F_q)', 'R'
        variables: ring variables with their provenance
        constants: named constants appearing in relations, with meaning
        relations: structured relations
        weights: T(F_p)-weights, when the torus action is known
    """
    base: str
    variables: List[Variable]
    relations: List[Relation]
    constants: Dict[str, str] = field(default_factory=dict)
    kind: str = ''
    weights: Optional[ActionWeights] = None

    @property
    def names(self) -> List[str]:
        return [v.name for v in self.variables]

    def render(self) -> List[str]:
        return [r.render() for r in self.relations]

    def equivariant(self) -> bool:
        return self.weights is None or all(self.weights.is_equivariant(r) for r in self.relations)

    def round_trip(self) -> bool:
        symbols = self.names + list(self.constants)
        return all(sympy.expand(parse_relation(r.render(), symbols) - r.to_expr()) == 0
                   for r in self.relations)

    def to_dict(self) -> Dict[str, Any]:
        data = {
            'kind': self.kind,
            'base': self.base,
            'variables': [v.to_dict() for v in self.variables],
            'constants': dict(self.constants),
            'relations': [r.to_dict() for r in self.relations],
            'ring': f"{self.base}[{', '.join(self.names)}]/({', '.join(self.render())})",
        }
        if self.weights is not None:
            data['action_weights'] = self.weights.to_dict()
            data['equivariant'] = self.equivariant()
        return data


def parse_relation(text: str, symbols: Sequence[str]) -> sympy.Expr:
    """
    Parse a rendered relation back into a sympy expression

    Names such as x_{13} or z'_1 are not Python identifiers, so every
    known name is swapped for a placeholder before parsing.
    """
    names = sorted(set(symbols), key=len, reverse=True)
    if not names:
        return parse_expr(text, transformations=_TRANSFORMS)
    local = {f"V{k}": sympy.Symbol(n) for k, n in enumerate(names)}
    slot = {n: f"V{k}" for k, n in enumerate(names)}
    pattern = re.compile("|".join(re.escape(n) for n in names))
    try:
        return parse_expr(pattern.sub(lambda m: slot[m.group(0)], text),
                          local_dict=local, transformations=_TRANSFORMS)
    except (SyntaxError, TypeError, sympy.SympifyError) as e:
        raise InvalidInputError(f"cannot parse relation '{text}': {e}")


# ---------------------------------------------------------------------------
# Charts
# ---------------------------------------------------------------------------

def generic_chart(pair, S: AffineSemigroup, budget: Optional[Budget] = None,
                  names: Optional[Sequence[str]] = None) -> RingPresentation:
    """
    R[S~] / (L^*(s_i) - delta(s_i)) over a minimal generating set s_i of S

    L^*(s_i) is written as a monomial in the Hilbert basis of S~. For a
    split torus S~ = S and the relations read s_i^{p-1} - delta(s_i).
    """
    from .pairs.predicates import variable_names

    budget = resolve(budget if budget is not None else S.budget)
    if S.cone.lineality_rank:
        raise AssumptionViolation("chart presentation needs a pointed semigroup")
    lm = LangMap.from_pair(pair)
    cover = normalization_semigroup(lm, S, budget)
    hb = S.hilbert_basis
    hb_cover = cover.hilbert_basis
    base_names = list(names) if names else variable_names(pair, hb, S.cone)
    if set(hb_cover) == set(hb):
        cover_names = [base_names[hb.index(h)] for h in hb_cover]
    else:
        cover_names = [f"s_{k + 1}" for k in range(len(hb_cover))]
    grading = cover.cone.grading()

    relations = []
    constants = {}
    for h, name in zip(hb, base_names):
        image = lm.pull(h)
        exps = decompose(image, hb_cover, grading)
        if exps is None:
            raise AssumptionViolation(f"L^*({name}) is not in the normalization semigroup")
        const = f"delta({name})"
        constants[const] = f"delta^*({name}), a section attached to {list(h)}"
        relations.append(Relation(Term(1, _product(*zip(cover_names, exps))), Term(1, ((const, 1),)),
                                  label=f"L^*({name})"))
    variables = [Variable(n, 'normalization Hilbert basis', h) for n, h in zip(cover_names, hb_cover)]
    weights = ActionWeights(lm, dict(zip(cover_names, hb_cover)))
    get_logger().debug(f"chart of {pair.name}: {len(variables)} variables, {len(relations)} relations")
    return RingPresentation('R[S~]', variables, relations, constants, 'generic', weights)


def drinfeld_chart(n: int, p: int = 3) -> RingPresentation:
    """Z_p[u_1..u_n] / (u_1^{p-1}...u_n^{p-1} - p), with x_i = u_i^{p-1}"""
    if n < 1:
        raise InvalidInputError("n must be positive")
    us = [f"u_{i + 1}" for i in range(n)]
    rel = Relation(Term(1, tuple((u, p - 1) for u in us)), Term(p), label='x_1...x_n = p')
    lm = LangMap(GaloisLattice.split(n), p)
    weights = ActionWeights(lm, {u: tuple(1 if j == i else 0 for j in range(n)) for i, u in enumerate(us)})
    variables = [Variable(u, f"chart coordinate, x_{i + 1} = {u}^{p - 1}") for i, u in enumerate(us)]
    return RingPresentation('Z_p', variables, [rel], {}, 'drinfeld', weights)


def fake_unitary_chart(d: int, p: int = 3) -> RingPresentation:
    """u_a^p - x_{a+1} u_{a+1} for a in Z/d, and (u_1...u_d)^{p-1} - p"""
    from .pairs.catalog import fake_unitary

    pair = fake_unitary(d, p)
    us = [f"u_{a + 1}" for a in range(d)]
    xs = [f"x_{a + 1}" for a in range(d)]
    relations = []
    for a in range(d):
        b = (a + 1) % d
        relations.append(Relation(Term(1, ((us[a], p),)), Term(1, ((xs[b], 1), (us[b], 1))),
                                  label=f"Frobenius step {a + 1}"))
    relations.append(Relation(Term(1, tuple((u, p - 1) for u in us)), Term(p), label='norm'))
    lm = LangMap.from_pair(pair)
    rank = pair.rank
    weights = ActionWeights(lm, {u: tuple(1 if j == a else 0 for j in range(rank)) for a, u in enumerate(us)})
    constants = {x: 'unit of the chart base' for x in xs}
    variables = [Variable(u, 'Raynaud generator coordinate') for u in us]
    return RingPresentation('O = W(F_q)', variables, relations, constants, 'fake-unitary', weights)


def siegel_chart(g: int, p: int = 3) -> RingPresentation:
    """
    Pro-unipotent chart for GSp_2g:
    z_i^{p-1} - a_i, a_i z'_i^{p-1} - w_p, z^{p-1} - w_p, z_i z'_i - z
    """
    if g < 1:
        raise InvalidInputError("g must be positive")
    n = g + 1
    zs = [f"z_{i + 1}" for i in range(g)]
    zp = [f"z'_{i + 1}" for i in range(g)]
    a = [f"a_{i + 1}" for i in range(g)]
    relations = []
    for i in range(g):
        relations.append(Relation(Term(1, ((zs[i], p - 1),)), Term(1, ((a[i], 1),)), label=f"e_{i + 1}"))
    relations.append(Relation(Term(1, (('z', p - 1),)), Term(1, (('w_p', 1),)), label='c'))
    for i in range(g):
        relations.append(Relation(Term(1, ((a[i], 1), (zp[i], p - 1))), Term(1, (('w_p', 1),)),
                                  label=f"f_{i + 1}"))
    for i in range(g):
        relations.append(Relation(Term(1, ((zs[i], 1), (zp[i], 1))), Term(1, (('z', 1),)),
                                  label=f"e_{i + 1} + f_{i + 1} = c"))

    def unit(k):
        return tuple(1 if j == k else 0 for j in range(n))
    c = unit(g)
    weights = {zs[i]: unit(i) for i in range(g)}
    weights.update({zp[i]: tuple(x - y for x, y in zip(c, unit(i))) for i in range(g)})
    weights['z'] = c
    variables = [Variable(v, 'Oort-Tate generator') for v in zs + ['z'] + zp[::-1]]
    constants = {x: f"section a_(e_{i + 1})" for i, x in enumerate(a)}
    constants['w_p'] = 'p times a unit'
    lm = LangMap(GaloisLattice.split(n), p)
    return RingPresentation('Z_p', variables, relations, constants, 'siegel', ActionWeights(lm, weights))


def hilbert_siegel_chart(g: int, d: int, p: int = 3) -> RingPresentation:
    """
    Pro-unipotent chart for Hilbert-Siegel data with p inert of degree d

    z_{i,a-1}^p - a_{i,a} z_{i,a}, (prod_a z_{i,a})^{p-1} - prod_a a_{i,a},
    the primed analogues, z_{i,a} z'_{i,a} - z and z^{p-1} - w_p.
    """
    from .pairs.catalog import hilbert_siegel

    pair = hilbert_siegel(g, d, p)
    n = pair.rank

    def name(base, i, a):
        return f"{base}_{{{i + 1},{a}}}"

    def unit(k):
        return tuple(1 if j == k else 0 for j in range(n))
    c = unit(n - 1)
    relations = []
    weights: Dict[str, Vector] = {'z': c}
    constants = {'w_p': 'p times a unit'}
    variables = []
    for prime in ('', "'"):
        for i in range(g):
            for a in range(d):
                z, z_prev, const = name(f"z{prime}", i, a), name(f"z{prime}", i, (a - 1) % d), name(f"a{prime}", i, a)
                relations.append(Relation(Term(1, ((z_prev, p),)), Term(1, ((const, 1), (z, 1))),
                                          label=f"{'f' if prime else 'e'}_{{{i + 1},{a}}}"))
                constants[const] = 'w_p / a_{i,a}' if prime else 'delta(i)_{a-1}'
                e_ia = unit(a * g + i)
                weights[z] = tuple(x - y for x, y in zip(c, e_ia)) if prime else e_ia
                variables.append(Variable(z, 'Raynaud generator coordinate'))
            zs = tuple((name(f"z{prime}", i, a), p - 1) for a in range(d))
            cs = tuple((name(f"a{prime}", i, a), 1) for a in range(d))
            relations.append(Relation(Term(1, zs), Term(1, cs), label=f"norm {i + 1}{prime}"))
    for i in range(g):
        for a in range(d):
            relations.append(Relation(Term(1, ((name('z', i, a), 1), (name("z'", i, a), 1))),
                                      Term(1, (('z', 1),)), label='duality'))
    relations.append(Relation(Term(1, (('z', p - 1),)), Term(1, (('w_p', 1),)), label='c'))
    variables.append(Variable('z', 'similitude coordinate'))
    return RingPresentation('O = W(F_q)', variables, relations, constants, 'hilbert-siegel',
                            ActionWeights(LangMap.from_pair(pair), weights))


def chart_presentation(pair, S: Optional[AffineSemigroup] = None, kind: str = 'generic',
                       budget: Optional[Budget] = None) -> RingPresentation:
    """
    Chart ring of the root-stack local model, with action weights

    Args:
        pair: local-model pair
        S: semigroup; S_max when omitted
        kind: one of CHART_KINDS; the explicit kinds need a matching family
        budget: enumeration caps

    Raises:
        InvalidInputError: unknown kind
        UnsupportedPairError: kind does not fit the pair family
    """
    from .pairs.predicates import max_semigroup

    if kind not in CHART_KINDS:
        raise InvalidInputError(f"unknown chart kind '{kind}' (known: {', '.join(CHART_KINDS)})")
    if kind in ('generic', 'split'):
        if kind == 'split' and not pair.is_split:
            raise AssumptionViolation(f"pair {pair.name} is not split; use the generic chart")
        S = S if S is not None else max_semigroup(pair, budget)
        presentation = generic_chart(pair, S, budget)
        presentation.kind = kind
        return presentation
    if kind == 'drinfeld':
        if (pair.family == 'gl' and pair.params[1] == 1) or pair.family == 'da':
            return drinfeld_chart(pair.rank, pair.p)
    elif kind == 'fake-unitary' and pair.family == 'fu':
        return fake_unitary_chart(pair.params[0], pair.p)
    elif kind == 'siegel' and pair.family == 'gsp':
        return siegel_chart(pair.params[0], pair.p)
    elif kind == 'hilbert-siegel' and pair.family == 'hs':
        return hilbert_siegel_chart(pair.params[0], pair.params[1], pair.p)
    raise UnsupportedPairError(f"chart kind '{kind}' does not apply to pair {pair.name}")


# ---------------------------------------------------------------------------
# Raynaud presentations
# ---------------------------------------------------------------------------

def _raynaud_names(d: int) -> Tuple[List[str], List[str]]:
    if d == 1:
        return ['u'], ['delta']
    return [f"u_{i}" for i in range(d)], [f"delta_{i}" for i in range(d)]


def raynaud_presentation(d: int, mode: str = 'group', p: int = 3) -> RingPresentation:
    """
    Raynaud F_{p^d}-vector space scheme (mode 'group') or its scheme of
    generators (mode 'generators') over R[delta_i]

    group: u_i^p - delta_i u_{i+1}, i in Z/d
    generators: adds (u_0...u_{d-1})^{p-1} - delta_0...delta_{d-1}
    """
    if d < 1:
        raise InvalidInputError(f"d must be positive, got {d}")
    if mode not in RAYNAUD_MODES:
        raise InvalidInputError(f"unknown mode '{mode}' (use group or generators)")
    us, ds = _raynaud_names(d)
    relations = [
        Relation(Term(1, ((us[i], p),)), Term(1, ((ds[i], 1), (us[(i + 1) % d], 1))), label=f"i = {i}")
        for i in range(d)
    ]
    if mode == 'generators':
        relations.append(Relation(Term(1, tuple((u, p - 1) for u in us)), Term(1, tuple((x, 1) for x in ds)),
                                  label='generator'))
    cycle = tuple(tuple(1 if i == (j + 1) % d else 0 for j in range(d)) for i in range(d))
    lm = LangMap(GaloisLattice.with_frobenius(cycle), p)
    weights = ActionWeights(lm, {u: tuple(1 if j == i else 0 for j in range(d)) for i, u in enumerate(us)})
    constants = {x: 'gamma_i delta_i = w' for x in ds}
    return RingPresentation('R', [Variable(u, 'coordinate') for u in us], relations, constants,
                            f"raynaud-{mode}", weights)


@dataclass(frozen=True)
class EtaleRank:
    rank: int
    expected: int

    @property
    def matches(self) -> bool:
        return self.rank == self.expected

    def to_dict(self) -> Dict[str, Any]:
        return {'rank': self.rank, 'expected': self.expected, 'matches': self.matches}


def etale_rank(presentation: RingPresentation, budget: Optional[Budget] = None) -> int:
    """
    Rank of the presentation with every constant set to 1, over QQ

    Counts standard monomials of a grevlex Groebner basis.

    Raises:
        AssumptionViolation: the specialized ideal is not zero-dimensional
        ResourceLimitExceeded: too many standard monomials
    """
    budget = resolve(budget)
    gens = [sympy.Symbol(n) for n in presentation.names]
    ones = {sympy.Symbol(c): 1 for c in presentation.constants}
    polys = [r.to_expr().subs(ones) for r in presentation.relations]
    G = sympy.groebner(polys, *gens, order='grevlex', domain='QQ')
    if not G.is_zero_dimensional:
        raise AssumptionViolation("specialized presentation is not zero-dimensional")
    leads = [sympy.Poly(g, *gens).monoms(order='grevlex')[0] for g in G.exprs]
    bounds = []
    for k in range(len(gens)):
        pure = [m[k] for m in leads if all(e == 0 for j, e in enumerate(m) if j != k)]
        bounds.append(min(pure))
    box = 1
    for b in bounds:
        box *= b
    budget.check("standard monomial box", box, budget.max_fiber_enumeration)
    count = 0
    for m in product(*[range(b) for b in bounds]):
        if not any(all(a >= b for a, b in zip(m, lead)) for lead in leads):
            count += 1
    return count


def raynaud_etale_check(d: int, mode: str, p: int = 3, budget: Optional[Budget] = None) -> EtaleRank:
    """p^d for the group scheme, p^d - 1 for its generators"""
    expected = p ** d - (1 if mode == 'generators' else 0)
    return EtaleRank(etale_rank(raynaud_presentation(d, mode, p), budget), expected)
