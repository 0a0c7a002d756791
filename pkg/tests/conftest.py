import pytest

from anosovlab import DEFAULT_PRECISION, reference_params, set_precision


@pytest.fixture(autouse=True)
def _working_precision():
    """Every test starts and ends at the default 113-bit working precision."""
    set_precision(DEFAULT_PRECISION)
    yield
    set_precision(DEFAULT_PRECISION)


@pytest.fixture
def ref():
    return reference_params()
