"""
Full analysis report of a pair
Runs every enabled section through the registry and assembles the JSON
"""

from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence

from utils.logger import get_logger
from version import SCHEMA, __version__
from .budget import Budget
from .pairs.base import LMPair
from .pairs.predicates import select_semigroup
from .sections.base import SectionResult, SectionStatus
from .sections.registry import SECTION_ORDER, SectionRegistry, get_registry


@dataclass
class ReportOptions:
    """
    Attributes:
        semigroup: 'max', 'free' or 'file:<path>'
        budget: resolved budget; the registry's fast budget when None
        chi: characters for the divisor section (default: dual basis)
        sections: section names to run (default: all enabled)
        timing: include per-section execution times
    """
    semigroup: str = 'max'
    budget: Optional[Budget] = None
    chi: List[Sequence[int]] = field(default_factory=list)
    sections: Optional[List[str]] = None
    timing: bool = False


def report(pair: LMPair, options: Optional[ReportOptions] = None,
           registry: Optional[SectionRegistry] = None) -> Dict[str, Any]:
    """
    Deterministic JSON analysis of a pair

    The semigroup is resolved first; if that fails the error is reported
    once and every section that needs it is marked as an error too.
    Each section fails on its own.
    """
    options = options or ReportOptions()
    registry = registry or get_registry()
    budget = options.budget or registry.budget()
    log = get_logger()
    log.section(f"Analysis of {pair.name} (p = {pair.p})")

    context: Dict[str, Any] = {'budget': budget, 'chi': [tuple(c) for c in options.chi], 'cache': {}}
    semigroup: Dict[str, Any] = {'selector': options.semigroup}
    try:
        choice = select_semigroup(pair, options.semigroup, budget)
        context['choice'] = choice
        semigroup.update(choice.to_dict())
    except Exception as e:
        semigroup['error'] = str(e)
        context['choice_error'] = e

    names = options.sections
    if names:
        unknown = [n for n in names if registry.get_section(n) is None]
        if unknown:
            log.warning(f"unknown sections ignored: {', '.join(unknown)}")
        names = [n for n in SECTION_ORDER if n in names]
    if 'choice_error' in context:
        pool = names or [s.name for s in registry.get_enabled_sections()]
        ran = registry.run_sections(pair, context, [n for n in pool if n in _SEMIGROUP_FREE])
        results = {}
        for n in pool:
            results[n] = ran.get(n) or SectionResult(n, SectionStatus.ERROR,
                                                     errors=[f"semigroup: {context['choice_error']}"])
    else:
        results = registry.run_sections(pair, context, names)

    out = {
        'schema': SCHEMA,
        'version': __version__,
        'pair': pair.to_dict(),
        'semigroup': semigroup,
        'budget': budget.to_dict(),
        'sections': {name: result.to_dict(options.timing) for name, result in results.items()},
    }
    failed = [name for name, r in results.items() if not r.is_success()]
    if failed:
        log.debug(f"sections not completed: {', '.join(failed)}")
    return out


# sections that do not look at the chosen semigroup
_SEMIGROUP_FREE = ('cone', 'divisor', 'adm', 'facemap', 'classify')

