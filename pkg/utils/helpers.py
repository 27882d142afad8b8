"""
Helper functions for the command line
Vector parsing, JSON output and text-mode rendering
"""

import json
from fractions import Fraction
from typing import Any, Dict, List, Sequence, Tuple

from colorama import Fore, Style

from toric.errors import InvalidInputError
from toric.lattice_galois import format_vector


def parse_vector(text: str, integral: bool = True) -> Tuple:
    """
    Parse a comma separated vector such as "1,0,-1" or "1/2,0"

    Args:
        text: Input string
        integral: Reject non-integer entries

    Returns:
        Tuple of ints (or Fractions when integral is False)

    Raises:
        InvalidInputError: on empty or malformed input
    """
    tokens = [t.strip() for t in (text or '').replace(' ', '').strip('()[]').split(',')]
    if not tokens or tokens == ['']:
        raise InvalidInputError(f"empty vector '{text}'")
    try:
        values = [Fraction(t) for t in tokens]
    except (ValueError, ZeroDivisionError):
        raise InvalidInputError(f"invalid vector '{text}'")
    if integral:
        if any(v.denominator != 1 for v in values):
            raise InvalidInputError(f"vector '{text}' must have integer entries")
        return tuple(int(v) for v in values)
    return tuple(values)


def parse_vectors(items: Sequence[str], rank: int = None) -> List[Tuple[int, ...]]:
    """
    Parse repeated --chi values; each may hold several vectors split by ';'

    Raises:
        InvalidInputError: when a vector does not have the expected rank
    """
    vectors = []
    for item in items or []:
        for part in item.split(';'):
            if part.strip():
                vectors.append(parse_vector(part))
    if rank is not None:
        for v in vectors:
            if len(v) != rank:
                raise InvalidInputError(f"vector {v} does not have length {rank}")
    return vectors


def parse_sections(text: str) -> List[str]:
    """Comma separated section names"""
    return [s.strip() for s in (text or '').split(',') if s.strip()]


def dump_json(data: Any) -> str:
    """Deterministic JSON: fixed indentation, insertion order kept"""
    return json.dumps(data, indent=2, ensure_ascii=False, default=_json_default)


def _json_default(value: Any):
    if isinstance(value, Fraction):
        return str(value) if value.denominator != 1 else int(value)
    if isinstance(value, (set, frozenset)):
        return sorted(value)
    if isinstance(value, tuple):
        return list(value)
    raise TypeError(f"{type(value).__name__} is not JSON serializable")


def mark(value: bool) -> str:
    """Colored check or cross"""
    if value:
        return f"{Fore.GREEN}✓{Style.RESET_ALL}"
    return f"{Fore.RED}✗{Style.RESET_ALL}"


def truncate_text(text: str, max_length: int = 100) -> str:
    """
    Truncate text to maximum length

    Args:
        text: Input text
        max_length: Maximum length

    Returns:
        Truncated text with ellipsis if needed
    """
    if len(text) <= max_length:
        return text
    return text[:max_length - 3] + '...'


def render_text(data: Any, indent: int = 0, width: int = 100) -> List[str]:
    """
    Render a result dictionary as indented text lines

    Booleans become check marks, integer lists print as vectors and
    lists of strings (names, relations) print one per line.
    """
    pad = '  ' * indent
    lines: List[str] = []
    if isinstance(data, dict):
        for key, value in data.items():
            if key == 'schema':
                continue
            label = f"{Fore.CYAN}{key}{Style.RESET_ALL}"
            if _is_scalar(value) or _is_vector(value):
                lines.append(f"{pad}{label}: {_scalar(value, width)}")
            elif isinstance(value, list) and not value:
                lines.append(f"{pad}{label}: -")
            else:
                lines.append(f"{pad}{label}:")
                lines.extend(render_text(value, indent + 1, width))
    elif isinstance(data, list):
        for item in data:
            if _is_scalar(item) or _is_vector(item):
                lines.append(f"{pad}- {_scalar(item, width)}")
            elif isinstance(item, dict) and _is_flat_row(item):
                lines.append(f"{pad}- " + ', '.join(f"{k}={_scalar(v, width)}" for k, v in item.items()))
            else:
                lines.append(f"{pad}-")
                lines.extend(render_text(item, indent + 1, width))
    else:
        lines.append(f"{pad}{_scalar(data, width)}")
    return lines


def _is_scalar(value: Any) -> bool:
    return value is None or isinstance(value, (bool, int, float, str, Fraction))


def _is_vector(value: Any) -> bool:
    return isinstance(value, (list, tuple)) and bool(value) and \
        all(isinstance(x, (int, Fraction, str)) and not isinstance(x, bool) for x in value) and \
        not all(isinstance(x, str) for x in value)


def _is_flat_row(row: Dict[str, Any]) -> bool:
    return all(_is_scalar(v) or _is_vector(v) for v in row.values())


def _scalar(value: Any, width: int) -> str:
    if isinstance(value, bool):
        return mark(value)
    if value is None:
        return '-'
    if _is_vector(value):
        return format_vector(value, ', ')
    return truncate_text(str(value), width)
