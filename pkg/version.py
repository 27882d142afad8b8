"""
Version information for weyl-toric
"""

__version__ = "1.0.0"
__author__ = "weyl-toric contributors"
__license__ = "MIT"
__copyright__ = "Copyright 2026 weyl-toric contributors"
__description__ = "Exact toric invariants of local-model pairs: cones, semigroups, Lang covers, admissible sets"

SCHEMA = "weyl-toric/1"

VERSION_INFO = {
    "major": 1,
    "minor": 0,
    "patch": 0,
    "release": "stable",
    "build": "20261019"
}


def get_version():
    """Return the version string"""
    return __version__


def get_version_info():
    """Return detailed version information"""
    return VERSION_INFO
