"""
Brute-force ground truth for small integer boxes
"""
import itertools
from typing import List, Optional

import numpy as np
from loguru import logger

from app.core.config import settings
from app.core.errors import DomainTooLarge
from app.models.schemas import Chromosome, GeneBounds, SelectionCheck, SolutionSet
from app.services.objective_service import LinearEqualityObjective, evaluate_linear
from app.services.rng_service import RandomSource
from app.services.selection_service import selection_service

# Cells evaluated per vectorised block
_BLOCK_CELLS = 1 << 20


class OracleService:
    """Service for exhaustive enumeration, solution checks and selection statistics"""

    def __init__(self, scan_limit: int = settings.scan_limit):
        self.scan_limit = scan_limit

    def enumerate_solutions(self, objective: LinearEqualityObjective, bounds: GeneBounds, length: int,
                            cap: Optional[int] = None) -> SolutionSet:
        """
        Scan every vector of the box in lexicographic order and collect the
        zero-cost ones. `cap` bounds how many are stored; `count` is always exact.
        """
        if length != objective.length:
            raise ValueError(f"objective has {objective.length} coefficients but length is {length}")
        cells = bounds.span ** length
        if cells > self.scan_limit and cap is None:
            raise DomainTooLarge(cells, self.scan_limit)

        # Vectorise the trailing genes, iterate the leading ones
        tail = length
        while tail > 1 and bounds.span ** tail > _BLOCK_CELLS:
            tail -= 1
        head = length - tail

        values = np.arange(bounds.lo, bounds.hi + 1, dtype=object if self._needs_objects(objective, bounds) else np.int64)
        tail_coefficients = objective.coefficients[head:]
        grids = np.meshgrid(*([values] * tail), indexing="ij")
        tail_sums = sum(c * grid for c, grid in zip(tail_coefficients, grids))

        solutions: List[Chromosome] = []
        count = 0
        for prefix in itertools.product(range(bounds.lo, bounds.hi + 1), repeat=head):
            needed = objective.target - sum(c * g for c, g in zip(objective.coefficients, prefix))
            hits = np.argwhere(tail_sums == needed)
            count += len(hits)
            for hit in hits:
                if cap is not None and len(solutions) >= cap:
                    break
                genes = prefix + tuple(int(values[i]) for i in hit)
                solutions.append(Chromosome(genes=genes))

        logger.info(f"Enumerated {cells} cells: {count} solutions")
        return SolutionSet(
            solutions=solutions,
            count=count,
            bounds=bounds,
            length=length,
            truncated=count > len(solutions),
        )

    def verify_solution(self, objective: LinearEqualityObjective, chromosome: Chromosome) -> bool:
        """True iff the chromosome satisfies the equality exactly"""
        return evaluate_linear(objective, chromosome) == 0

    def check_selection_distribution(self, costs: List[int], samples: int, src: RandomSource,
                                     sigmas: float = 3.0) -> SelectionCheck:
        """Empirical roulette frequencies must sit within `sigmas` standard errors of P"""
        table = selection_service.build_selection_table(costs)
        picks = np.fromiter(
            (selection_service.roulette_pick(table, src.next_float01()) for _ in range(samples)),
            dtype=np.int64,
            count=samples,
        )
        counts = np.bincount(picks - 1, minlength=len(costs))
        frequencies = counts / samples
        probabilities = np.asarray(table.probabilities)
        standard_errors = np.sqrt(probabilities * (1.0 - probabilities) / samples)
        passed = bool(np.all(np.abs(frequencies - probabilities) <= sigmas * standard_errors))

        return SelectionCheck(
            samples=samples,
            probabilities=probabilities.tolist(),
            frequencies=frequencies.tolist(),
            standard_errors=standard_errors.tolist(),
            sigmas=sigmas,
            passed=passed,
        )

    @staticmethod
    def _needs_objects(objective: LinearEqualityObjective, bounds: GeneBounds) -> bool:
        # Fall back to Python ints when int64 sums could overflow
        largest = max(abs(bounds.lo), abs(bounds.hi)) * sum(abs(c) for c in objective.coefficients)
        return largest + abs(objective.target) >= 2**62


# Global oracle service instance
oracle_service = OracleService()
