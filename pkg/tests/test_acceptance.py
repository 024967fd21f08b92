from __future__ import annotations

import pytest

import conftest
from tropijac.acceptance import CRITERIA, run_criterion
from tropijac.polarization import PolarizationError, canonical_family
from tropijac.universal import build_universal_qd


@pytest.mark.parametrize("number", [n for n, _, _ in CRITERIA], ids=[f"criterion_{n}" for n, _, _ in CRITERIA])
def test_criterion(number):
    result = run_criterion(number)
    line = result.line()
    conftest.ACCEPTANCE_LINES.append((number, line))
    print(line)
    assert result.passed, line


def test_canonical_family_undefined_in_genus_one():
    with pytest.raises(PolarizationError):
        build_universal_qd(1, canonical_family(1), 1)
