"""
Generation loop orchestrating evaluation, selection, crossover and mutation
"""
import time
from typing import List, Optional, Tuple

from loguru import logger

from app.core.errors import RunAborted, ScriptError
from app.models.schemas import Chromosome, GaConfig, GenerationTrace, Population, RunResult
from app.services.objective_service import ObjectiveContract
from app.services.population_service import population_service
from app.services.rng_service import RandomSource, draw_phase
from app.services.selection_service import selection_service
from app.services.variation_service import variation_service


class _BestTracker:
    """Best chromosome seen over every evaluated population; ties keep the earliest"""

    def __init__(self):
        self.chromosome: Optional[Chromosome] = None
        self.cost: Optional[int] = None
        self.generation = 0

    def observe(self, population: Population, costs: List[int], generation: int):
        slot = min(range(len(costs)), key=costs.__getitem__)
        if self.cost is None or costs[slot] < self.cost:
            self.chromosome = population[slot]
            self.cost = costs[slot]
            self.generation = generation


class EngineService:
    """Service for running the genetic algorithm end to end"""

    def early_stop_check(self, best_cost: int, config: GaConfig) -> bool:
        """True iff stop-on-zero is enabled and the problem is already solved"""
        return config.stop_on_zero and best_cost == 0

    def run(self, config: GaConfig, objective: ObjectiveContract, src: RandomSource,
            keep_traces: bool = False) -> RunResult:
        """
        Initialise, then repeat G times: select -> crossover -> mutate -> evaluate.

        Draw order per generation: N selection floats, N crossover gate floats,
        one cut point per mating (when at least two parents), mutation
        positions, then mutation replacement values.
        """
        start_time = time.time()
        generation = 0
        try:
            # Step 1: Initial population
            with draw_phase("initialization"):
                population = population_service.init_population(config, src)
            costs = objective.evaluate_population(population)

            best = _BestTracker()
            best.observe(population, costs, 0)
            history = [best.cost]
            traces: List[GenerationTrace] = []

            # Step 2: Generations
            for generation in range(1, config.generations + 1):
                if self.early_stop_check(best.cost, config):
                    logger.info(f"Stopping early: cost 0 reached in generation {best.generation}")
                    generation -= 1
                    break

                previous_best = best.chromosome
                with draw_phase("selection"):
                    selection = selection_service.select_population(population, costs, src)
                plan = variation_service.plan_crossover(selection.population, config.crossover_rate, src)
                crossed = variation_service.apply_crossover(selection.population, plan)
                mutation = variation_service.plan_mutation(config, src)
                mutated = variation_service.apply_mutation(crossed, mutation)

                elite_slot = None
                if config.elitism:
                    mutated, elite_slot = self._keep_elite(mutated, objective, previous_best)

                costs_after = objective.evaluate_population(mutated)
                best.observe(mutated, costs_after, generation)
                history.append(best.cost)

                if keep_traces:
                    traces.append(GenerationTrace(
                        generation_index=generation,
                        population_before=population,
                        objective_values=costs,
                        fitness_values=selection.table.fitness_values,
                        total_fitness=selection.table.total_fitness,
                        probabilities=selection.table.probabilities,
                        cumulative=selection.table.cumulative,
                        selection_draws=selection.draws,
                        selected_indices=selection.selected_indices,
                        population_after_selection=selection.population,
                        crossover_draws=plan.gate_draws,
                        crossover_parents=plan.parent_indices,
                        cut_points=plan.cut_points,
                        population_after_crossover=crossed,
                        mutation_count=mutation.count,
                        mutation_position_draws=mutation.position_draws,
                        mutation_positions=mutation.positions,
                        mutation_values=mutation.replacement_values,
                        population_after_mutation=mutated,
                        elite_slot=elite_slot,
                        objective_values_after=costs_after,
                        best_objective_so_far=best.cost,
                    ))

                logger.debug(f"Generation {generation}: costs {costs_after}, best so far {best.cost}")
                population, costs = mutated, costs_after
            else:
                generation = config.generations

        except ScriptError as e:
            if e.generation is None:
                e.generation = generation
            aborted = RunAborted(e)
            logger.error(str(aborted))
            raise aborted from e

        processing_time = int((time.time() - start_time) * 1000)
        logger.info(f"Run completed: {generation} generations, best cost {best.cost} "
                    f"(generation {best.generation}) in {processing_time}ms")

        return RunResult(
            best_chromosome=best.chromosome,
            best_cost=best.cost,
            generation_found=best.generation,
            generations_run=generation,
            best_history=history,
            final_population=population,
            final_costs=costs,
            traces=traces,
        )

    def _keep_elite(self, population: Population, objective: ObjectiveContract,
                    elite: Chromosome) -> Tuple[Population, Optional[int]]:
        """Put the incumbent back over the worst slot if the generation lost it"""
        if elite in population.members:
            return population, None
        costs = objective.evaluate_population(population)
        worst = max(range(len(costs)), key=lambda i: (costs[i], -i))
        members = list(population.members)
        members[worst] = elite
        logger.debug(f"Elitism restored best chromosome into slot {worst + 1}")
        return Population(members=members), worst + 1


# Global engine service instance
engine_service = EngineService()
