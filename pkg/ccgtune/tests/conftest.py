import pytest
pytest.register_assert_rewrite("ccgtune.tests.utils")

from ccgtune.schema import validate


@pytest.fixture(autouse=True)
def cache_clear():
    yield
    validate.cache_clear()
