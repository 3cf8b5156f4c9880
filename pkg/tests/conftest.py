from __future__ import annotations

import pytest

from core.budget import Budget
from core.graph import Graph, graph_inventory
from core.mules import mule


def pytest_addoption(parser: pytest.Parser) -> None:
    parser.addoption("--runslow", action="store_true", default=False, help="运行验收规模的长时间测试")


def pytest_collection_modifyitems(config: pytest.Config, items: list[pytest.Item]) -> None:
    if config.getoption("--runslow"):
        return
    skip_slow = pytest.mark.skip(reason="需要 --runslow")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip_slow)


@pytest.fixture
def generous_budget() -> Budget:
    return Budget(max_nodes=10**9, max_seconds=600.0)


@pytest.fixture(scope="session")
def small_graphs() -> list[Graph]:
    """1–5 个顶点的全部非同构图"""
    return graph_inventory(5)


@pytest.fixture(scope="session")
def catalog() -> dict[str, Graph]:
    return {name: mule(name) for name in ("M61", "M71", "M72", "M8")}
