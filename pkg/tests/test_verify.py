from __future__ import annotations

import pytest

from braiddeform import verify


@pytest.mark.parametrize("scale", ["tiny", "small"])
def test_every_check_passes(scale):
    results = list(verify.run_checks(scale))
    assert len(results) == len(verify.CHECKS)
    failed = [r for r in results if not r.ok]
    assert not failed, failed


def test_result_json():
    r = verify.Result("x", True, "fine")
    assert r.to_json() == {"check": "x", "ok": True, "detail": "fine"}
