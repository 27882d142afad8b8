"""
Section Registry
Loads config/settings.yaml and runs the registered analysis sections
"""

import copy
import json
import os
from pathlib import Path
from typing import Dict, Any, List, Optional

import yaml

from utils.logger import get_logger
from ..budget import Budget
from ..errors import AssumptionViolation, ResourceLimitExceeded, UnsupportedPairError
from .base import Section, SectionResult, SectionStatus

SECTION_ORDER = ('cone', 'hilbert', 'ideal', 'lang', 'classify', 'r1', 'divisor', 'adm', 'facemap', 'chart')


class SectionRegistry:
    """
    Central registry for all sections
    Handles section registration, configuration, and execution
    """

    _instance: Optional['SectionRegistry'] = None

    def __init__(self, config_path: Optional[str] = None):
        """
        Initialize registry

        Args:
            config_path: Path to the settings file
        """
        self._sections: Dict[str, Section] = {}
        self._config: Dict[str, Any] = {}
        self._config_path = config_path or self._find_config_path()
        self._load_config()

    @classmethod
    def get_instance(cls, config_path: Optional[str] = None) -> 'SectionRegistry':
        """Get singleton instance of registry, with the built-in sections registered"""
        if cls._instance is None:
            from .builtin import register_builtin_sections

            cls._instance = cls(config_path)
            register_builtin_sections(cls._instance)
        return cls._instance

    @classmethod
    def reset_instance(cls):
        """Reset singleton instance (useful for testing)"""
        cls._instance = None

    def _find_config_path(self) -> str:
        """Find the settings file"""
        base_path = Path(__file__).parent.parent.parent / 'config'

        # Try YAML first, then JSON
        yaml_path = base_path / 'settings.yaml'
        json_path = base_path / 'settings.json'

        if yaml_path.exists():
            return str(yaml_path)
        elif json_path.exists():
            return str(json_path)
        return str(yaml_path)

    def _load_config(self):
        """Load configuration from file, falling back to the defaults"""
        defaults = self._get_default_config()
        if not os.path.exists(self._config_path):
            self._config = defaults
            return

        try:
            with open(self._config_path, 'r', encoding='utf-8') as f:
                if self._config_path.endswith('.yaml') or self._config_path.endswith('.yml'):
                    loaded = yaml.safe_load(f) or {}
                else:
                    loaded = json.load(f)
        except (OSError, yaml.YAMLError, json.JSONDecodeError) as e:
            get_logger().warning(f"Failed to load settings from {self._config_path}: {e}")
            loaded = {}
        self._config = _merge(defaults, loaded)

    def _get_default_config(self) -> Dict[str, Any]:
        """Get default configuration"""
        return {
            'global': {
                'default_prime': 3,
                'output_dir': 'reports',
            },
            'budgets': {
                'fast': _limits(Budget.from_config({}, 'fast')),
                'full': _limits(Budget.from_config({}, 'full')),
            },
            'logging': {
                'file': True,
                'log_dir': 'logs',
            },
            'sections': {name: {'enabled': True} for name in SECTION_ORDER},
        }

    def register(self, section: Section):
        self._sections[section.name] = section

    def unregister(self, section_name: str):
        if section_name in self._sections:
            del self._sections[section_name]

    def get_section(self, name: str) -> Optional[Section]:
        return self._sections.get(name)

    def get_all_sections(self) -> List[Section]:
        return list(self._sections.values())

    def get_enabled_sections(self) -> List[Section]:
        """Sections whose enabled flag is set, in registration order"""
        return [s for s in self._sections.values() if s.is_enabled(self._config)]

    def budget(self, selector=None) -> Budget:
        """Budget for a --budget value, from the budgets block of the settings"""
        return Budget.from_config(self._config, selector)

    def run_sections(self, pair, context: Dict[str, Any] = None,
                     section_names: List[str] = None) -> Dict[str, SectionResult]:
        """
        Run sections on a pair

        A failing section yields an error result and the others still run.

        Args:
            pair: LMPair
            context: semigroup choice, budget, characters
            section_names: Specific sections to run (None = all enabled)

        Returns:
            Dictionary of section name to result, in run order
        """
        context = context if context is not None else {}
        context.setdefault('cache', {})
        context.setdefault('config', self._config)
        log = get_logger()
        results: Dict[str, SectionResult] = {}

        if section_names is not None:
            sections = [self._sections[n] for n in section_names if n in self._sections]
        else:
            sections = self.get_enabled_sections()

        for i, section in enumerate(sections, 1):
            log.step(i, len(sections), f"section {section.name}")
            with log.timed(f"section {section.name}") as timing:
                result = self._run_one(section, pair, context)
            result.execution_time = timing['seconds']
            results[section.name] = result

        return results

    def _run_one(self, section: Section, pair, context: Dict[str, Any]) -> SectionResult:
        log = get_logger()
        try:
            return section.run(pair, context)
        except ResourceLimitExceeded as e:
            return SectionResult(section.name, SectionStatus.BUDGET_EXCEEDED, errors=[str(e)])
        except (UnsupportedPairError, AssumptionViolation) as e:
            return SectionResult(section.name, SectionStatus.NOT_APPLICABLE, warnings=[str(e)])
        except Exception as e:
            log.debug(f"section {section.name} failed: {type(e).__name__}: {e}")
            return SectionResult(section.name, SectionStatus.ERROR, errors=[f"{type(e).__name__}: {e}"])

    def get_config(self) -> Dict[str, Any]:
        return copy.deepcopy(self._config)

    def update_config(self, updates: Dict[str, Any]):
        self._config = _merge(self._config, updates)


def _limits(budget: Budget) -> Dict[str, Any]:
    return {k: v for k, v in budget.to_dict().items() if k != 'name'}


def _merge(base: Dict[str, Any], updates: Dict[str, Any]) -> Dict[str, Any]:
    out = copy.deepcopy(base)
    for key, value in (updates or {}).items():
        if isinstance(value, dict) and isinstance(out.get(key), dict):
            out[key] = _merge(out[key], value)
        else:
            out[key] = value
    return out


def get_registry(config_path: Optional[str] = None) -> SectionRegistry:
    """Get the section registry singleton"""
    return SectionRegistry.get_instance(config_path)
