import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))  # for `corpus`

from graphlet_lens import build_atlas


@pytest.fixture(scope="session")
def atlas():
    return build_atlas()
