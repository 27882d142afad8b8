"""
Pair Registry
Resolves CLI pair names ("gl:4:2", "gsp:3", "res-gl:3:5,2,1", "gu:3:2,1",
...) and JSON pair files to LMPair instances.
"""

import json
from pathlib import Path
from typing import Any, Dict, List, Optional

from utils.logger import get_logger
from ..errors import InvalidInputError
from . import catalog
from .base import LMPair


def _ints(token: str, what: str) -> List[int]:
    try:
        return [int(x) for x in token.split(',') if x.strip()]
    except ValueError:
        raise InvalidInputError(f"{what} must be comma-separated integers, got '{token}'")


def _int(token: str, what: str) -> int:
    try:
        return int(token)
    except ValueError:
        raise InvalidInputError(f"{what} must be an integer, got '{token}'")


def _build_gl(args: List[str], p: int) -> LMPair:
    return catalog.gl(_int(args[0], 'n'), _int(args[1], 'j'), p=p)


def _build_gsp(args: List[str], p: int) -> LMPair:
    return catalog.gsp(_int(args[0], 'g'), p=p)


def _build_gspin(args: List[str], p: int) -> LMPair:
    return catalog.gspin(_int(args[0], 'g'), p=p)


def _build_da(args: List[str], p: int) -> LMPair:
    return catalog.division_algebra(_int(args[0], 'd'), p=p)


def _build_res_gl(args: List[str], p: int) -> LMPair:
    return catalog.res_ramified_gl(_int(args[0], 'n'), _ints(args[1], 'multiplicities'), p=p)


def _build_gu(args: List[str], p: int) -> LMPair:
    sig = _ints(args[1], 'signature')
    if len(sig) != 2:
        raise InvalidInputError(f"gu signature must be 'r,s', got '{args[1]}'")
    return catalog.gu_ramified(_int(args[0], 'n'), sig[0], sig[1], p=p)


def _build_gl2p(args: List[str], p: int) -> LMPair:
    return catalog.gl_two_step_parahoric(_int(args[0], 'n'), _int(args[1], 'r'), p=p)


def _build_hs(args: List[str], p: int) -> LMPair:
    return catalog.hilbert_siegel(_int(args[0], 'g'), _int(args[1], 'd'), p=p)


def _build_res4(args: List[str], p: int) -> LMPair:
    return catalog.res_gl_ramified_example(_int(args[0], 'n'), p=p)


def _build_fu(args: List[str], p: int) -> LMPair:
    return catalog.fake_unitary(_int(args[0], 'd'), p=p)


def _build_su(args: List[str], p: int) -> LMPair:
    return catalog.split_unitary(_int(args[0], 'n'), _int(args[1], 'r'), p=p)


# family -> (argument count, builder)
BUILDERS: Dict[str, Any] = {
    'gl': (2, _build_gl),
    'gsp': (1, _build_gsp),
    'gspin': (1, _build_gspin),
    'da': (1, _build_da),
    'res-gl': (2, _build_res_gl),
    'gu': (2, _build_gu),
    'gl2p': (2, _build_gl2p),
    'hs': (2, _build_hs),
    'res4': (1, _build_res4),
    'fu': (1, _build_fu),
    'su': (2, _build_su),
}


def load_pair_file(path: str, p: Optional[int] = None) -> LMPair:
    """Load a user-defined pair from JSON; integrality is validated on load"""
    file = Path(path)
    if not file.exists():
        raise InvalidInputError(f"pair file not found: {path}")
    try:
        with open(file, 'r') as f:
            data = json.load(f)
    except json.JSONDecodeError as e:
        raise InvalidInputError(f"pair file {path} is not valid JSON: {e}")
    pair = LMPair.from_dict(data)
    get_logger().debug(f"loaded pair '{pair.name}' from {path}")
    return pair.with_prime(p) if p is not None else pair


def get_pair(name: str, p: Optional[int] = None) -> LMPair:
    """
    Resolve a pair name or file

    Args:
        name: catalog name such as 'gsp:2', or 'file:<path>' / '<path>.json'
        p: prime; the catalog default (3) when omitted

    Returns:
        LMPair

    Raises:
        InvalidInputError: unknown family, wrong arity or bad parameters
    """
    name = (name or '').strip()
    if name.startswith('file:'):
        return load_pair_file(name[len('file:'):], p)
    if name.endswith('.json'):
        return load_pair_file(name, p)
    family, _, rest = name.partition(':')
    if family not in BUILDERS:
        known = ', '.join(sorted(BUILDERS))
        raise InvalidInputError(f"unknown pair family '{family}' (known: {known})")
    arity, builder = BUILDERS[family]
    args = rest.split(':') if rest else []
    if len(args) != arity:
        usage = catalog.FAMILIES[family][0]
        raise InvalidInputError(f"pair '{name}' does not match {usage}")
    return builder(args, p if p is not None else 3)


def list_pairs() -> List[Dict[str, str]]:
    """Grammar, description and an example for every family"""
    rows = []
    for family, (usage, description) in catalog.FAMILIES.items():
        examples = [n for n in catalog.EXAMPLES if n.split(':')[0] == family]
        rows.append({'family': family, 'usage': usage, 'description': description,
                     'examples': ', '.join(examples)})
    return rows
