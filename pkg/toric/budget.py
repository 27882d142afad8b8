"""
Resource budgets
Caps on the expensive enumerations, loaded from config/settings.yaml
"""

from dataclasses import dataclass, asdict, replace
from typing import Any, Dict, Optional, Union

from .errors import InvalidInputError, ResourceLimitExceeded


@dataclass(frozen=True)
class Budget:
    """Limits shared by the Groebner, fiber and admissible-set enumerations"""
    name: str = "fast"
    max_groebner_basis: int = 3000
    max_spairs: int = 400000
    max_fiber_points: int = 20000
    max_fiber_enumeration: int = 4000000
    max_admissible: int = 100000
    heavy_ideals: bool = False

    def check(self, what: str, value: int, limit: int):
        """Raise ResourceLimitExceeded when value passes limit"""
        if value > limit:
            raise ResourceLimitExceeded(what, limit)

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)

    @classmethod
    def from_config(cls, config: Dict[str, Any], selector: Union[str, int, None] = None) -> 'Budget':
        """
        Build a budget from the loaded settings

        Args:
            config: Settings dictionary (see config/settings.yaml)
            selector: 'fast', 'full', an integer cap, or None for 'fast'

        Returns:
            Budget instance
        """
        budgets = config.get('budgets', {}) if config else {}
        if selector is None:
            selector = 'fast'
        if isinstance(selector, str) and selector.isdigit():
            selector = int(selector)

        if isinstance(selector, int):
            if selector <= 0:
                raise InvalidInputError(f"budget must be positive, got {selector}")
            base = cls._named('fast', budgets)
            return replace(base, name=str(selector), max_groebner_basis=selector,
                           max_admissible=selector)

        if selector not in ('fast', 'full'):
            raise InvalidInputError(f"unknown budget '{selector}' (use fast, full or an integer)")
        return cls._named(selector, budgets)

    @classmethod
    def _named(cls, name: str, budgets: Dict[str, Any]) -> 'Budget':
        values = dict(budgets.get(name, {}) or {})
        known = {k: v for k, v in values.items() if k in cls.__dataclass_fields__ and k != 'name'}
        if name == 'full' and not values:
            known = {
                'max_groebner_basis': 200000,
                'max_spairs': 50000000,
                'max_fiber_points': 2000000,
                'max_fiber_enumeration': 200000000,
                'heavy_ideals': True,
            }
        return cls(name=name, **known)


DEFAULT_BUDGET = Budget()


def resolve(budget: Optional[Budget]) -> Budget:
    """Fall back to the default fast budget"""
    return budget if budget is not None else DEFAULT_BUDGET
