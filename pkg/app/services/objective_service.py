"""
Objective functions and the cost-to-fitness transform
"""
import string
from abc import ABC, abstractmethod
from typing import List

from pydantic import BaseModel, ConfigDict, Field

from app.core.errors import LengthMismatch
from app.models.schemas import Chromosome, Population


class ObjectiveContract(ABC):
    """
    Maps a chromosome to a non-negative integer cost.
    Cost 0 means the chromosome solves the problem exactly. Implementations must
    be deterministic and free of side effects.
    """

    @abstractmethod
    def evaluate(self, chromosome: Chromosome) -> int:
        """Cost of one chromosome"""

    def evaluate_population(self, population: Population) -> List[int]:
        return [self.evaluate(member) for member in population.members]


class LinearEqualityObjective(BaseModel, ObjectiveContract):
    """|sum(coefficients[i] * genes[i]) - target|"""
    model_config = ConfigDict(frozen=True)

    coefficients: List[int] = Field(..., min_length=1)
    target: int

    @property
    def length(self) -> int:
        return len(self.coefficients)

    def evaluate(self, chromosome: Chromosome) -> int:
        return evaluate_linear(self, chromosome)

    def describe(self) -> str:
        """Render the equality, e.g. 'a + 2b + 3c + 4d = 30'"""
        names = string.ascii_lowercase if self.length <= 26 else None
        terms = []
        for i, coefficient in enumerate(self.coefficients):
            name = names[i] if names else f"x{i + 1}"
            term = name if coefficient == 1 else f"{coefficient}{name}"
            terms.append(term)
        return " + ".join(terms) + f" = {self.target}"


def evaluate_linear(objective: LinearEqualityObjective, chromosome: Chromosome) -> int:
    """Absolute deviation of the weighted gene sum from the target (Python ints never wrap)"""
    if len(chromosome.genes) != len(objective.coefficients):
        raise LengthMismatch(len(objective.coefficients), len(chromosome.genes))
    total = sum(c * g for c, g in zip(objective.coefficients, chromosome.genes))
    return abs(total - objective.target)


def fitness(cost: int) -> float:
    """1 / (1 + cost), so an exact solution has fitness 1"""
    if cost < 0:
        raise ValueError(f"cost must be non-negative, got {cost}")
    return 1.0 / (1.0 + cost)
