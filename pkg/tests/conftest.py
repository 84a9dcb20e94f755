import sys
from pathlib import Path

import pytest

from cqe import session

sys.path.insert(0, str(Path(__file__).parent))


@pytest.fixture(autouse=True)
def fresh_session():
    """Every test runs against a pristine copy of the bootstrap theory."""
    session.reset()
    yield
