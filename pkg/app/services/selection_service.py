"""
Roulette-wheel selection over the cumulative fitness probabilities
"""
import math
from bisect import bisect_right
from itertools import accumulate
from typing import List

from loguru import logger

from app.models.schemas import Population, SelectionOutcome, SelectionTable
from app.services.objective_service import fitness
from app.services.rng_service import RandomSource


class SelectionService:
    """Service for fitness-proportionate resampling of a population"""

    def build_selection_table(self, costs: List[int]) -> SelectionTable:
        """Fitness, total, P[i] = fitness[i] / total and C[i] = P[1] + ... + P[i]"""
        if not costs:
            raise ValueError("cannot build a selection table from an empty cost vector")

        fitness_values = [fitness(cost) for cost in costs]
        total = math.fsum(fitness_values)
        probabilities = [value / total for value in fitness_values]
        cumulative = list(accumulate(probabilities))

        return SelectionTable(
            fitness_values=fitness_values,
            total_fitness=total,
            probabilities=probabilities,
            cumulative=cumulative,
        )

    def roulette_pick(self, table: SelectionTable, r: float) -> int:
        """Smallest 1-based index i with r < C[i]; N if rounding leaves r >= C[N]"""
        index = bisect_right(table.cumulative, r)
        return min(index, len(table.cumulative) - 1) + 1

    def select_population(self, population: Population, costs: List[int], src: RandomSource) -> SelectionOutcome:
        """Draw exactly N floats; NewChromosome[k] = Chromosome[pick(R[k])], with replacement"""
        if len(costs) != population.size:
            raise ValueError(f"expected {population.size} costs, got {len(costs)}")

        table = self.build_selection_table(costs)
        draws = [src.next_float01() for _ in range(population.size)]
        selected = [self.roulette_pick(table, r) for r in draws]

        logger.debug(f"Selected indices {selected}")
        return SelectionOutcome(
            table=table,
            draws=draws,
            selected_indices=selected,
            population=Population(members=[population[i - 1] for i in selected]),
        )


# Global selection service instance
selection_service = SelectionService()
