import os

import pytest

from chain_graph import build_chain
from hepta_config import HeptaConfig
from symmetry_decomposition import decompose, extract_blocks


@pytest.fixture(autouse=True)
def _clean_env(monkeypatch):
    """测试不受外部 HEPTASPEC_* 环境变量影响"""
    for key in list(os.environ):
        if key.startswith("HEPTASPEC_"):
            monkeypatch.delenv(key)


@pytest.fixture
def config():
    return HeptaConfig()


@pytest.fixture(scope="session")
def h1():
    return build_chain(1)


@pytest.fixture(scope="session")
def h2():
    return build_chain(2)


@pytest.fixture(scope="session")
def pair1(h1):
    return decompose(extract_blocks(h1))


@pytest.fixture(scope="session")
def pair2(h2):
    return decompose(extract_blocks(h2))
