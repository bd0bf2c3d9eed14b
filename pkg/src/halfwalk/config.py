"""Run parameters for the self-check battery and the experiment scripts."""
from __future__ import annotations

import os
from dataclasses import dataclass, field
from typing import Tuple

ORDER_ENV = "HALFWALK_ORDER"
FALLBACK_ORDER = 10


def default_order() -> int:
    raw = os.environ.get(ORDER_ENV)
    if raw is None or raw.strip() == "":
        return FALLBACK_ORDER
    try:
        value = int(raw)
    except ValueError:
        raise ValueError(f"{ORDER_ENV} must be a non-negative integer, got {raw!r}") from None
    if value < 0:
        raise ValueError(f"{ORDER_ENV} must be a non-negative integer, got {raw!r}")
    return value


@dataclass(frozen=True)
class SelfcheckConfig:
    agreement_order: int = 30
    max_height: int = 8
    convergent_order: int = 30
    cycle_bound: int = 12
    pipeline_len: int = 500


@dataclass(frozen=True)
class AgreementConfig:
    orders: Tuple[int, ...] = (10, 25, 50, 100)
    repeats: int = 1


@dataclass(frozen=True)
class GrowthConfig:
    max_n: int = 10_000
    depth: int = 4
    n_points: Tuple[int, ...] = (100, 1000, 10_000)
    precision: int = 50
    depths: Tuple[int, ...] = field(default=(0, 1, 2, 3, 4))
