"""Resource caps.

``HIGHEREXT_ORDER_CAP`` overrides the default group order cap; it is read
once at import time and echoed in every CLI report.
"""
from __future__ import annotations

import os

ORDER_CAP_ENV = "HIGHEREXT_ORDER_CAP"

DEFAULT_ORDER_CAP = 512
ASSOCIATIVITY_FULL_CHECK = 64
ASSOCIATIVITY_SAMPLES = 1000
ISOMORPHISM_CAP = 128
CUBE_DIM_CAP = 4
CATEGORICAL_BRACKET_DIM_CAP = 3
HOMOLOGY_DEGREE_CAP = 3
HOMOLOGY_RANK_BUDGET = 4000


def _env_cap() -> int:
    raw = os.environ.get(ORDER_CAP_ENV)
    if not raw:
        return DEFAULT_ORDER_CAP
    try:
        value = int(raw)
    except ValueError:
        return DEFAULT_ORDER_CAP
    return value if value > 0 else DEFAULT_ORDER_CAP


ORDER_CAP = _env_cap()


def order_cap() -> int:
    return ORDER_CAP


def set_order_cap(value: int) -> None:
    global ORDER_CAP
    if value <= 0:
        raise ValueError("order cap must be positive")
    ORDER_CAP = value
