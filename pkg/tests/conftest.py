"""Shared fixtures for the test suite."""

import numpy as np
import pytest

from trigsip.instances import SipInstance


def constant_row(value: float):
    def row(t):
        return np.full_like(np.asarray(t, dtype=float), value)

    return row


def make_toy_instance() -> SipInstance:
    # min x subject to -x <= -1 for every t; optimum x = 1, value 1
    return SipInstance(
        n=1,
        c=np.array([1.0]),
        rows=(constant_row(-1.0), constant_row(-1.0)),
        label="toy-const",
    )


@pytest.fixture(scope="session")
def toy_instance() -> SipInstance:
    return make_toy_instance()
