from __future__ import annotations

import mpmath
import pytest
from hypothesis import settings

settings.register_profile("default", max_examples=40, deadline=None)
settings.load_profile("default")


@pytest.fixture(autouse=True)
def _mp_precision():
    # every test starts from the same working precision
    with mpmath.workprec(128):
        yield
