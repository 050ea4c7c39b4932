import pytest

from concave_majorant import RngStream


@pytest.fixture
def rng():
    return RngStream(12345)


# Unit-level statistical checks use a stricter level than the acceptance suite
# so that the many independent tests here rarely raise a false alarm together.
ALPHA = 1e-3
