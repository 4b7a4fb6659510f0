"""
Chromosome and population initialisation
"""
from loguru import logger

from app.models.schemas import Chromosome, GaConfig, GeneBounds, Population
from app.services.rng_service import RandomSource


class PopulationService:
    """Service for drawing random chromosomes and initial populations"""

    def random_chromosome(self, bounds: GeneBounds, length: int, src: RandomSource) -> Chromosome:
        """Draw each gene independently, in gene order"""
        if length < 1:
            raise ValueError(f"chromosome length must be at least 1, got {length}")
        return Chromosome(genes=tuple(src.next_int_inclusive(bounds.lo, bounds.hi) for _ in range(length)))

    def init_population(self, config: GaConfig, src: RandomSource) -> Population:
        """
        Generate N chromosomes in index order.
        Draw order is chromosome-major, gene-minor: exactly N*L integer draws.
        """
        members = [
            self.random_chromosome(config.bounds, config.chromosome_length, src)
            for _ in range(config.population_size)
        ]
        logger.debug(f"Initialised population of {len(members)} chromosomes")
        return Population(members=members)


# Global population service instance
population_service = PopulationService()
