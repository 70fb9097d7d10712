import sys
from fractions import Fraction
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

from metaplex import Graph, InferenceConfig, infer_metaplex  # noqa: E402

FIXTURES = Path(__file__).parent / "fixtures"


def k4_graph() -> Graph:
    return Graph(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)])


def k4_concentrations() -> dict[int, Fraction]:
    return {0: Fraction(1), 1: Fraction(1), 2: Fraction(1), 3: Fraction(9)}


@pytest.fixture
def k4_result():
    """Pipeline output for the worked K4 instance (weights 1,1,1,9)."""
    return infer_metaplex(k4_graph(), k4_concentrations(), InferenceConfig(max_dim=3))


@pytest.fixture
def triangle_graph() -> Graph:
    return Graph(3, [(0, 1), (0, 2), (1, 2)])


@pytest.fixture
def triangle_concentrations() -> dict[int, Fraction]:
    return {0: Fraction(1), 1: Fraction(2), 2: Fraction(3)}
