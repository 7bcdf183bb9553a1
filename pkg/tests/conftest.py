import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from utils.config_utils import default_config  # noqa: E402
from utils.mixed_graph import ColourSpec, build_graph  # noqa: E402


@pytest.fixture
def config():
    return default_config()


@pytest.fixture
def oriented():
    return ColourSpec(0, 1)


@pytest.fixture
def directed_p3(oriented):
    # 0 -> 1 -> 2
    return build_graph(oriented, 3, [(0, 1, 1), (1, 2, 1)])


@pytest.fixture
def directed_c3(oriented):
    return build_graph(oriented, 3, [(0, 1, 1), (1, 2, 1), (2, 0, 1)])


@pytest.fixture
def write_file(tmp_path):
    def write(name: str, text: str) -> str:
        path = tmp_path / name
        path.write_text(text)
        return str(path)
    return write
