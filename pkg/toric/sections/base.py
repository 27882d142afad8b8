"""
Base Section Protocol and Classes
Defines the contract for the analysis sections of a report
"""

from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from typing import Dict, Any, List
from enum import Enum


class SectionStatus(Enum):
    """Section execution status"""
    SUCCESS = "success"
    PARTIAL = "partial"
    ERROR = "error"
    DISABLED = "disabled"
    NOT_APPLICABLE = "not_applicable"
    BUDGET_EXCEEDED = "budget_exceeded"


@dataclass
class SectionResult:
    """Standard result from a section"""
    section_name: str
    status: SectionStatus
    data: Dict[str, Any] = field(default_factory=dict)
    errors: List[str] = field(default_factory=list)
    warnings: List[str] = field(default_factory=list)
    execution_time: float = 0.0

    def is_success(self) -> bool:
        """Check if section execution was successful"""
        return self.status in (SectionStatus.SUCCESS, SectionStatus.PARTIAL)

    def to_dict(self, timing: bool = False) -> Dict[str, Any]:
        """
        Convert to dictionary

        Timing is left out unless asked for, so that reports of the same
        input are byte-identical.
        """
        data = {
            'section': self.section_name,
            'status': self.status.value,
            'data': self.data,
            'errors': self.errors,
            'warnings': self.warnings,
        }
        if timing:
            data['execution_time'] = round(self.execution_time, 4)
        return data


class Section(ABC):
    """
    Abstract base class for report sections

    All sections must implement:
    - name: Unique section identifier
    - run(): Compute the section for a pair

    Context keys read by sections: 'choice' (SemigroupChoice), 'budget',
    'chi' (list of characters) and 'cache' (shared intermediate results).
    """

    @property
    @abstractmethod
    def name(self) -> str:
        """Unique name for this section"""
        pass

    @property
    def description(self) -> str:
        return f"{self.name} section"

    @property
    def is_heavy(self) -> bool:
        """Whether this section may need the full budget"""
        return False

    def is_enabled(self, config: Dict[str, Any]) -> bool:
        """
        Check the sections.<name>.enabled flag

        Args:
            config: Loaded settings

        Returns:
            True if the section should run by default
        """
        return bool(self.get_config_value(config, 'enabled', True))

    @abstractmethod
    def run(self, pair, context: Dict[str, Any]) -> SectionResult:
        """
        Compute the section

        Args:
            pair: LMPair under analysis
            context: semigroup choice, budget, characters and shared cache

        Returns:
            SectionResult with data or error information
        """
        pass

    def get_config_value(self, config: Dict[str, Any], key: str, default: Any = None) -> Any:
        """Helper to get section-specific config value"""
        section_config = (config.get('sections') or {}).get(self.name) or {}
        return section_config.get(key, default)

    def ok(self, data: Dict[str, Any], warnings: List[str] = None) -> SectionResult:
        return SectionResult(self.name, SectionStatus.SUCCESS, data, warnings=list(warnings or []))
