"""Size budgets and shared defaults.

Budgets are configuration rather than limits baked into the algorithms: every
guarded operation takes a Budget argument, so callers with more patience can
raise the caps without touching library code.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Mapping

#: Seed for the reproducible rational sample points used by the identity checks.
DEFAULT_SEED = 1729


def _default_table_caps() -> Mapping[int, int]:
    return MappingProxyType({1: 16, 2: 16, 3: 8})


def _default_gn_caps() -> Mapping[int, int]:
    return MappingProxyType({1: 12, 2: 10, 3: 7})


@dataclass(frozen=True)
class Budget:
    """Caps on the exhaustive computations, keyed by refinement depth where relevant."""

    enumeration_max_n: int = 6
    table_max_n: Mapping[int, int] = field(default_factory=_default_table_caps)
    alpha_poly_max_n: int = 6
    gn_poly_max_n: Mapping[int, int] = field(default_factory=_default_gn_caps)
    identity_max_n: int = 5
    sufficiency_max_n: int = 10
    drefined_max_n: int = 7
    conjecture3_max_n: int = 6


DEFAULT_BUDGET = Budget()
