import os

import pytest

from weiltrace import load_zeros

DATA_DIR = os.path.join(os.path.dirname(__file__), "data")


@pytest.fixture(scope="session")
def reference_zeros():
    """Zero ordinates up to height 60, from an independent bisection
    oracle at 15 significant digits."""
    return load_zeros(os.path.join(DATA_DIR, "zeros_ref_60.txt"))
