"""Enumeration guards.

Each guard bounds the number of objects an exhaustive routine may visit.
Setting ``BRAIDDEFORM_GUARD=k`` multiplies every bound by ``k``.
"""

from __future__ import annotations

import os

from .errors import TooLarge

BASE_LIMITS = {
    "trees": 2_000_000,  # labeled trees visited by one count
    "graphs": 2 ** 15,  # edge subsets in the Whitney sum (|n| <= 6)
    "colorings": 10 ** 7,  # q^|V| colorings in the Potts sum
    "orientations": 2 ** 20,
    "z": 10 ** 7,  # tuples in the brute-force Z sum
    "sketches": 10 ** 6,  # annotated sketches in audits and enumeration
    "configs": 5 * 10 ** 6,
}


def factor() -> int:
    raw = os.environ.get("BRAIDDEFORM_GUARD", "").strip()
    if not raw:
        return 1
    value = int(raw)
    if value < 1:
        raise ValueError("BRAIDDEFORM_GUARD must be a positive integer")
    return value


def limit(name: str) -> int:
    return BASE_LIMITS[name] * factor()


def check(name: str, amount: int) -> None:
    if amount > limit(name):
        raise TooLarge(f"{name}: {amount} exceeds guard {limit(name)} (raise BRAIDDEFORM_GUARD)")
