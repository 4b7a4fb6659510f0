"""
One-cut-point crossover with cyclic pairing, and expected-count mutation
"""
from decimal import ROUND_HALF_UP, Decimal
from typing import List

from loguru import logger

from app.core.errors import InvalidCutPoint
from app.models.schemas import Chromosome, CrossoverPlan, GaConfig, MutationPlan, Population
from app.services.rng_service import RandomSource, draw_phase


def mutation_count(rate: float, total_genes: int) -> int:
    """round_half_up(rate * total_genes), so 2.4 -> 2 and 2.5 -> 3"""
    # Decimal on the literal rate avoids 0.1 * 25 landing just under 2.5
    expected = Decimal(str(rate)) * total_genes
    return int(expected.quantize(Decimal(1), rounding=ROUND_HALF_UP))


class VariationService:
    """Service for planning and applying crossover and mutation"""

    def plan_crossover(self, population: Population, rate: float, src: RandomSource) -> CrossoverPlan:
        """
        Gate every slot with one float (parent iff R[k] < rate), then draw one
        cut point in [1, L-1] per mating once at least two parents are known.
        """
        with draw_phase("crossover gating"):
            gate_draws = [src.next_float01() for _ in range(population.size)]
        parents = [k + 1 for k, r in enumerate(gate_draws) if r < rate]

        cut_points: List[int] = []
        if len(parents) >= 2:
            with draw_phase("crossover cut points"):
                last_cut = population.chromosome_length - 1
                cut_points = [src.next_int_inclusive(1, last_cut) for _ in parents]

        logger.debug(f"Crossover parents {parents}, cuts {cut_points}")
        return CrossoverPlan(gate_draws=gate_draws, parent_indices=parents, cut_points=cut_points)

    def apply_crossover(self, population: Population, plan: CrossoverPlan) -> Population:
        """
        Parent p_j mates with p_(j+1), the last one with the first. The offspring
        replaces p_j's slot; every offspring is cut from the pre-crossover
        population, so earlier matings never feed later ones.
        """
        parents = plan.parent_indices
        if len(parents) < 2:
            return population

        length = population.chromosome_length
        members = list(population.members)
        for j, (slot, cut) in enumerate(zip(parents, plan.cut_points)):
            if not 1 <= cut <= length - 1:
                raise InvalidCutPoint(cut, length)
            first = population[slot - 1].genes
            second = population[parents[(j + 1) % len(parents)] - 1].genes
            members[slot - 1] = Chromosome(genes=first[:cut] + second[cut:])

        return Population(members=members)

    def plan_mutation(self, config: GaConfig, src: RandomSource) -> MutationPlan:
        """
        count = round_half_up(rate * L * N). Positions are distinct 1-based
        cells in [1, L*N]; a position that repeats is drawn again. Replacement
        values are drawn after all positions.
        """
        total = config.total_genes
        count = mutation_count(config.mutation_rate, total)

        position_draws: List[int] = []
        positions: List[int] = []
        chosen = set()
        with draw_phase("mutation positions"):
            while len(positions) < count:
                position = src.next_int_inclusive(1, total)
                position_draws.append(position)
                if position in chosen:
                    logger.debug(f"Mutation position {position} repeated, drawing again")
                    continue
                chosen.add(position)
                positions.append(position)

        with draw_phase("mutation replacements"):
            values = [src.next_int_inclusive(config.bounds.lo, config.bounds.hi) for _ in range(count)]

        return MutationPlan(
            count=count,
            position_draws=position_draws,
            positions=positions,
            replacement_values=values,
        )

    def apply_mutation(self, population: Population, plan: MutationPlan) -> Population:
        """Cell p lives in chromosome ceil(p/L), gene ((p-1) mod L) + 1"""
        if plan.count == 0:
            return population

        length = population.chromosome_length
        total = population.size * length
        rows = [list(member.genes) for member in population.members]
        for position, value in zip(plan.positions, plan.replacement_values):
            if not 1 <= position <= total:
                raise ValueError(f"mutation position {position} outside [1, {total}]")
            chromosome, gene = divmod(position - 1, length)
            rows[chromosome][gene] = value

        return Population(members=[Chromosome(genes=row) for row in rows])


# Global variation service instance
variation_service = VariationService()
