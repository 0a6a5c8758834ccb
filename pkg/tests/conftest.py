import pytest

from kum3check.config import default_config
from kum3check.engine import Engine


@pytest.fixture(scope="session")
def doc():
    return default_config()


@pytest.fixture(scope="session")
def engine(doc):
    return Engine(doc)
