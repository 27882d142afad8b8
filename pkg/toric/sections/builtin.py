"""
Built-in analysis sections
One section per block of the analyze report
"""

from typing import Any, Dict, List, Optional

from ..affine_weyl import admissible_set, face_map_report
from ..budget import resolve
from ..cones import dual_cone, free_action_values
from ..lang_cover import LangMap, lang_report
from ..lattice_galois import divisor_multiplicities, format_vector
from ..pairs.predicates import (
    ab_nondegenerate, classify, dim_T_mu, max_semigroup, nonflat_verdict, orbit_cone,
    orbit_rays, r1_criterion, variable_names,
)
from ..presentation import chart_presentation
from ..semigroups import generates_full_lattice, is_free, toric_ideal
from .base import Section, SectionResult, SectionStatus

# pair family -> explicit chart kind emitted next to the generic chart
FAMILY_CHARTS = {
    'gsp': 'siegel',
    'hs': 'hilbert-siegel',
    'fu': 'fake-unitary',
    'da': 'drinfeld',
}


def _choice(pair, context: Dict[str, Any]):
    from ..pairs.predicates import SemigroupChoice

    choice = context.get('choice')
    if choice is None:
        choice = SemigroupChoice(max_semigroup(pair, context.get('budget')), 'max')
        context['choice'] = choice
    return choice


def _names(pair, context: Dict[str, Any]) -> List[str]:
    cache = context.setdefault('cache', {})
    if 'names' not in cache:
        S = _choice(pair, context).semigroup
        cache['names'] = variable_names(pair, S.hilbert_basis, S.cone)
    return cache['names']


def _poset(pair, context: Dict[str, Any]):
    cache = context.setdefault('cache', {})
    if 'poset' not in cache:
        cache['poset'] = admissible_set(pair, context.get('budget'))
    return cache['poset']


class ConeSection(Section):
    """sigma_{G,mu}, its dual, faces and structural predicates"""

    @property
    def name(self) -> str:
        return 'cone'

    def run(self, pair, context: Dict[str, Any]) -> SectionResult:
        cone = orbit_cone(pair)
        dual = dual_cone(cone)
        data = {
            'orbit_size': len(pair.orbit),
            'rays': [list(r) for r in orbit_rays(pair)],
            'cone': cone.to_dict(),
            'dual': dual.to_dict(),
            'predicates': cone.predicates().to_dict(),
            'f_vector': list(cone.f_vector()),
            'dimension_T_mu': dim_T_mu(pair).to_dict(),
        }
        if pair.ab_character is not None:
            data['ab_nondegenerate'] = ab_nondegenerate(pair)
        if pair.central_vector is not None:
            data['free_action'] = {'z': list(pair.central_vector),
                                   **free_action_values(dual, pair.central_vector).to_dict()}
        return self.ok(data)


class HilbertSection(Section):
    """Hilbert basis of the chosen semigroup, with variable names"""

    @property
    def name(self) -> str:
        return 'hilbert'

    def run(self, pair, context: Dict[str, Any]) -> SectionResult:
        choice = _choice(pair, context)
        S = choice.semigroup
        hb = S.hilbert_basis
        names = _names(pair, context)
        return self.ok({
            'semigroup': choice.to_dict(),
            'size': len(hb),
            'elements': [{'name': n, 'vector': list(h)} for n, h in zip(names, hb)],
            'free': is_free(S),
            'generates_lattice': generates_full_lattice(S),
            'saturated': S.saturated,
        })


class IdealSection(Section):
    """Toric ideal of the Hilbert basis (pointed part)"""

    @property
    def name(self) -> str:
        return 'ideal'

    @property
    def is_heavy(self) -> bool:
        return True

    def run(self, pair, context: Dict[str, Any]) -> SectionResult:
        budget = resolve(context.get('budget'))
        S = _choice(pair, context).semigroup
        pointed, _ = S.pointed_part()
        limit = self.get_config_value(context.get('config', {}), 'max_variables', 12)
        size = len(pointed.hilbert_basis)
        if size > limit and not budget.heavy_ideals and not context.get('force'):
            return SectionResult(self.name, SectionStatus.DISABLED,
                                 warnings=[f"{size} variables; rerun with --budget full for the ideal"])
        names = _names(pair, context) if pointed is S else None
        ideal = toric_ideal(pointed, names, budget)
        data = ideal.to_dict()
        data['torus_factor'] = S.cone.lineality_rank
        data['kernel_check'] = ideal.check_kernel()
        return self.ok(data)


class LangSection(Section):
    """Lang cover: group order, ramification, fiber length, flatness"""

    @property
    def name(self) -> str:
        return 'lang'

    def run(self, pair, context: Dict[str, Any]) -> SectionResult:
        budget = context.get('budget')
        choice = _choice(pair, context)
        lm = LangMap.from_pair(pair)
        report = lang_report(lm, choice.semigroup, budget)
        data = {'lang_map': lm.to_dict(), **report.to_dict()}
        if choice.is_max:
            expected = nonflat_verdict(pair, budget)
            data['expected'] = expected.to_dict()
            data['expected_agrees'] = expected.agrees_with(report.flat)
        return self.ok(data)


class ClassifySection(Section):

    @property
    def name(self) -> str:
        return 'classify'

    def run(self, pair, context: Dict[str, Any]) -> SectionResult:
        return self.ok(classify(pair, context.get('budget')).to_dict())


class R1Section(Section):

    @property
    def name(self) -> str:
        return 'r1'

    def run(self, pair, context: Dict[str, Any]) -> SectionResult:
        return self.ok(r1_criterion(pair, _choice(pair, context)).to_dict())


class DivisorSection(Section):
    """Multiplicities e<mu', chi> for the requested characters (default: dual basis)"""

    @property
    def name(self) -> str:
        return 'divisor'

    def run(self, pair, context: Dict[str, Any]) -> SectionResult:
        chis = context.get('chi') or [tuple(1 if j == i else 0 for j in range(pair.rank))
                                      for i in range(pair.rank)]
        rows = []
        for chi in chis:
            mult = divisor_multiplicities(pair, chi)
            rows.append({
                'chi': list(chi),
                'multiplicities': [{'mu': format_vector(mu), 'm': m} for mu, m in mult.items()],
            })
        return self.ok({'e': pair.e, 'divisors': rows})


class AdmSection(Section):

    @property
    def name(self) -> str:
        return 'adm'

    def run(self, pair, context: Dict[str, Any]) -> SectionResult:
        return self.ok(_poset(pair, context).to_dict())


class FaceMapSection(Section):

    @property
    def name(self) -> str:
        return 'facemap'

    def run(self, pair, context: Dict[str, Any]) -> SectionResult:
        report = face_map_report(pair, context.get('budget'), poset=_poset(pair, context))
        warnings = [f"order reversal fails on {len(report.violations)} pairs"] if report.violations else []
        return self.ok(report.to_dict(), warnings)


class ChartSection(Section):
    """Generic chart of the root-stack local model, plus the family's explicit chart"""

    @property
    def name(self) -> str:
        return 'chart'

    def run(self, pair, context: Dict[str, Any]) -> SectionResult:
        budget = context.get('budget')
        S = _choice(pair, context).semigroup
        charts = {}
        warnings = []
        if S.cone.lineality_rank:
            warnings.append("generic chart skipped: the semigroup has a torus factor")
        else:
            charts['generic'] = chart_presentation(pair, S, 'generic', budget)
        kind = _family_chart(pair)
        if kind:
            charts[kind] = chart_presentation(pair, S, kind, budget)
        data = {}
        for key, presentation in charts.items():
            data[key] = presentation.to_dict()
            data[key]['round_trip'] = presentation.round_trip()
        return self.ok(data, warnings)


def _family_chart(pair) -> Optional[str]:
    if pair.family == 'gl' and pair.params and pair.params[1] == 1:
        return 'drinfeld'
    return FAMILY_CHARTS.get(pair.family)


BUILTIN_SECTIONS = (
    ConeSection, HilbertSection, IdealSection, LangSection, ClassifySection,
    R1Section, DivisorSection, AdmSection, FaceMapSection, ChartSection,
)


def register_builtin_sections(registry):
    for cls in BUILTIN_SECTIONS:
        registry.register(cls())
