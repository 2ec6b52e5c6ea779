"""Size budgets.

All the constructions here are exponential in the worst case; desk scale
is the target.  Every budget can be overridden per call, and the poset
cap also via the CHAINMAIL_BUDGET environment variable.
"""

import os

DEFAULT_POSET_CAP = 24        # validated input posets
DEFAULT_FAMILY_CAP = 1 << 16  # materialized set families (td sets, separated sets)
DEFAULT_ENUM_CAP = 10         # exhaustive generation
DEFAULT_GROUND_CAP = 5        # ground sets of graphs, topologies, spaces
DEFAULT_SEARCH_CAP = 8        # point budget for representation search


def poset_cap(override=None):
    if override is not None:
        return override
    env = os.environ.get("CHAINMAIL_BUDGET")
    return int(env) if env else DEFAULT_POSET_CAP


def family_cap(override=None):
    return DEFAULT_FAMILY_CAP if override is None else override


def enum_cap(override=None):
    return DEFAULT_ENUM_CAP if override is None else override


def ground_cap(override=None):
    return DEFAULT_GROUND_CAP if override is None else override


def search_cap(override=None):
    return DEFAULT_SEARCH_CAP if override is None else override
