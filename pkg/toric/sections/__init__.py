"""
Analysis sections of the analyze report
Each section computes one block of the report and fails on its own
"""

from .base import Section, SectionResult, SectionStatus
from .registry import SECTION_ORDER, SectionRegistry, get_registry

__all__ = ['Section', 'SectionResult', 'SectionStatus', 'SectionRegistry', 'SECTION_ORDER', 'get_registry']
