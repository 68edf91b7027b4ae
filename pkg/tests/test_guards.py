from __future__ import annotations

import pytest

from braiddeform import guards, oracle
from braiddeform.core import DeformationSpec
from braiddeform.errors import TooLarge


def test_guard_trips_and_scales(monkeypatch):
    monkeypatch.delenv("BRAIDDEFORM_GUARD", raising=False)
    with pytest.raises(TooLarge):
        oracle.whitney_coboundary(DeformationSpec.uniform((0,), 7))  # 2^21 edge subsets
    monkeypatch.setenv("BRAIDDEFORM_GUARD", "3")
    assert guards.limit("graphs") == 3 * guards.BASE_LIMITS["graphs"]
    monkeypatch.setenv("BRAIDDEFORM_GUARD", "0")
    with pytest.raises(ValueError):
        guards.factor()
