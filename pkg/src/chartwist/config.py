"""Caps, budgets and seeds, overridable via environment variables.

CHARTWIST_ORDER_CAP   group enumeration cap (default 20000)
CHARTWIST_AUT_CAP     automorphism / isomorphism search cap on |G| (default 720)
CHARTWIST_SEARCH_BUDGET  backtracking node budget (default 10**7)
CHARTWIST_SEED        seed for internally randomized, exactly-verified searches
"""

from __future__ import annotations

import os
from dataclasses import dataclass


@dataclass(frozen=True)
class Config:
    order_cap: int = 20000
    aut_cap: int = 720
    search_budget: int = 10_000_000
    seed: int = 1
    prime: int | None = None  # Dixon prime override, None = smallest admissible

    @staticmethod
    def from_env(**overrides) -> "Config":
        values = {
            "order_cap": int(os.environ.get("CHARTWIST_ORDER_CAP", 20000)),
            "aut_cap": int(os.environ.get("CHARTWIST_AUT_CAP", 720)),
            "search_budget": int(os.environ.get("CHARTWIST_SEARCH_BUDGET", 10_000_000)),
            "seed": int(os.environ.get("CHARTWIST_SEED", 1)),
        }
        values.update(overrides)
        return Config(**values)


DEFAULT = Config.from_env()
