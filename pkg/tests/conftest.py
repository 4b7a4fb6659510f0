"""
Shared fixtures: the worked a + 2b + 3c + 4d = 30 example
"""
import sys
from pathlib import Path

import pytest

# Add project root to Python path
project_root = Path(__file__).parent.parent
sys.path.insert(0, str(project_root))

from loguru import logger  # noqa: E402

from app.core.config import EXAMPLE_EXPECTED_TRACE, EXAMPLE_SCRIPT  # noqa: E402
from app.models.schemas import GaConfig, GeneBounds, Population  # noqa: E402
from app.services.objective_service import LinearEqualityObjective  # noqa: E402

INITIAL_POPULATION = [
    [12, 5, 23, 8], [2, 21, 18, 3], [10, 4, 13, 14],
    [20, 1, 10, 6], [1, 4, 13, 19], [20, 5, 17, 1],
]
INITIAL_COSTS = [93, 80, 83, 46, 94, 55]
SELECTED_POPULATION = [
    [2, 21, 18, 3], [10, 4, 13, 14], [12, 5, 23, 8],
    [20, 5, 17, 1], [10, 4, 13, 14], [20, 1, 10, 6],
]
CROSSED_POPULATION = [
    [2, 5, 17, 1], [10, 4, 13, 14], [12, 5, 23, 8],
    [20, 4, 13, 14], [10, 4, 18, 3], [20, 1, 10, 6],
]
MUTATED_POPULATION = [
    [2, 5, 17, 1], [10, 4, 13, 14], [12, 5, 23, 2],
    [20, 4, 13, 14], [10, 5, 18, 3], [20, 1, 10, 6],
]
# 83 and 69 by direct arithmetic
FINAL_COSTS = [37, 83, 69, 93, 56, 46]


@pytest.fixture(autouse=True)
def quiet_logging():
    """Route loguru to whatever stderr is current, warnings and above only"""
    logger.remove()
    logger.add(lambda message: sys.stderr.write(message), level="WARNING")
    yield
    logger.remove()


@pytest.fixture
def example_objective() -> LinearEqualityObjective:
    return LinearEqualityObjective(coefficients=[1, 2, 3, 4], target=30)


@pytest.fixture
def example_config() -> GaConfig:
    return GaConfig(population_size=6, generations=1, crossover_rate=0.25, mutation_rate=0.1,
                    bounds=GeneBounds(lo=0, hi=30), chromosome_length=4)


@pytest.fixture
def example_population() -> Population:
    return Population(members=INITIAL_POPULATION)


@pytest.fixture
def selected_population() -> Population:
    return Population(members=SELECTED_POPULATION)


@pytest.fixture
def crossed_population() -> Population:
    return Population(members=CROSSED_POPULATION)


@pytest.fixture
def example_script_path() -> Path:
    return EXAMPLE_SCRIPT


@pytest.fixture
def example_expected_path() -> Path:
    return EXAMPLE_EXPECTED_TRACE
