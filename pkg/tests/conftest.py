import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from bank import empty_bank, random_bank  # noqa: E402


@pytest.fixture(scope="session")
def bank():
    return random_bank()


@pytest.fixture(scope="session")
def empties():
    return empty_bank()
