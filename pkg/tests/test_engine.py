"""
Tests for the generation loop
"""
import pytest

from app.core.errors import RunAborted
from app.models.schemas import GaConfig
from app.services.engine_service import engine_service
from app.services.objective_service import LinearEqualityObjective
from app.services.oracle_service import oracle_service
from app.services.rng_service import ScriptedSource, SeededSource, load_script
from tests.conftest import (
    CROSSED_POPULATION, FINAL_COSTS, INITIAL_COSTS, INITIAL_POPULATION, MUTATED_POPULATION, SELECTED_POPULATION
)


class TestWorkedExample:
    def test_one_generation_matches_worked_example(self, example_config, example_objective, example_script_path):
        src = load_script(example_script_path)
        result = engine_service.run(example_config, example_objective, src, keep_traces=True)
        trace = result.traces[0]

        assert trace.generation_index == 1
        assert trace.population_before.model_dump() == INITIAL_POPULATION
        assert trace.objective_values == INITIAL_COSTS
        assert trace.selected_indices == [2, 3, 1, 6, 3, 4]
        assert trace.population_after_selection.model_dump() == SELECTED_POPULATION
        assert trace.crossover_parents == [1, 4, 5]
        assert trace.cut_points == [1, 1, 2]
        assert trace.population_after_crossover.model_dump() == CROSSED_POPULATION
        assert trace.mutation_count == 2
        assert trace.mutation_positions == [12, 18]
        assert trace.mutation_values == [2, 5]
        assert trace.population_after_mutation.model_dump() == MUTATED_POPULATION
        assert trace.objective_values_after == FINAL_COSTS
        assert src.remaining == 0

    def test_selection_reals(self, example_config, example_objective, example_script_path):
        result = engine_service.run(example_config, example_objective, load_script(example_script_path), keep_traces=True)
        trace = result.traces[0]
        assert trace.fitness_values == pytest.approx([0.0106, 0.0123, 0.0119, 0.0213, 0.0105, 0.0179], abs=5e-3)
        assert trace.total_fitness == pytest.approx(0.0845, abs=5e-3)
        assert trace.probabilities == pytest.approx([0.1254, 0.1456, 0.1408, 0.2521, 0.1243, 0.2118], abs=5e-3)
        assert trace.cumulative == pytest.approx([0.1254, 0.2710, 0.4118, 0.6639, 0.7882, 1.0], abs=5e-3)

    def test_best_tracking(self, example_config, example_objective, example_script_path):
        result = engine_service.run(example_config, example_objective, load_script(example_script_path))
        assert result.best_history == [46, 37]
        assert result.best_cost == 37
        assert result.best_chromosome.genes == (2, 5, 17, 1)
        assert result.generation_found == 1
        assert result.generations_run == 1
        assert result.final_costs == FINAL_COSTS
        assert result.traces == []

    def test_truncated_script_names_phase_and_generation(self, example_config, example_objective, example_script_path):
        full = load_script(example_script_path)
        truncated = ScriptedSource(full.draws[:24 + 6 + 3])
        with pytest.raises(RunAborted) as info:
            engine_service.run(example_config, example_objective, truncated)
        assert info.value.phase == "crossover gating"
        assert info.value.generation == 1
        assert "exhausted during crossover gating, generation 1" in str(info.value)

    def test_initialization_failure_is_generation_zero(self, example_config, example_objective):
        with pytest.raises(RunAborted) as info:
            engine_service.run(example_config, example_objective, ScriptedSource([]))
        assert (info.value.phase, info.value.generation) == ("initialization", 0)


class TestRunBehaviour:
    def test_zero_generations(self, example_objective, example_script_path):
        config = GaConfig(generations=0)
        result = engine_service.run(config, example_objective, load_script(example_script_path))
        assert result.generations_run == 0
        assert result.best_cost == 46
        assert result.best_chromosome.genes == (20, 1, 10, 6)
        assert result.generation_found == 0

    def test_early_stop_check(self):
        on, off = GaConfig(stop_on_zero=True), GaConfig(stop_on_zero=False)
        assert engine_service.early_stop_check(0, on) is True
        assert engine_service.early_stop_check(0, off) is False
        assert engine_service.early_stop_check(3, on) is False

    def test_stop_on_zero_halts(self, example_objective):
        config = GaConfig(generations=200, stop_on_zero=True)
        for seed in range(50):
            result = engine_service.run(config, example_objective, SeededSource(seed))
            if result.best_cost == 0:
                assert result.generations_run == result.generation_found
                return
        pytest.fail("no seed reached cost 0 within 200 generations")

    def test_elitism_keeps_best_in_population(self, example_objective):
        config = GaConfig(generations=30, elitism=True)
        result = engine_service.run(config, example_objective, SeededSource(12), keep_traces=True)
        for trace in result.traces:
            assert min(trace.objective_values_after) == trace.best_objective_so_far

    def test_seeded_runs_identical(self, example_objective):
        config = GaConfig(generations=20)
        first = engine_service.run(config, example_objective, SeededSource(2024), keep_traces=True)
        second = engine_service.run(config, example_objective, SeededSource(2024), keep_traces=True)
        assert first == second

    def test_no_variation_only_resamples(self, example_objective):
        config = GaConfig(generations=10, crossover_rate=0.0, mutation_rate=0.0)
        result = engine_service.run(config, example_objective, SeededSource(5), keep_traces=True)
        for trace in result.traces:
            before = set(trace.population_before.members)
            assert all(member in before for member in trace.population_after_mutation.members)


class TestConvergence:
    def test_worked_defaults_success_baseline(self, example_objective):
        config = GaConfig(population_size=6, generations=50, crossover_rate=0.25, mutation_rate=0.1)
        successes = 0
        for seed in range(200):
            result = engine_service.run(config, example_objective, SeededSource(seed))
            successes += result.best_cost == 0
        # Measured with scripts/measure_baseline.py; any drift in draws or operators moves it
        assert successes == 98

    def test_reported_solutions_are_enumerated(self, example_objective):
        config = GaConfig()
        solutions = oracle_service.enumerate_solutions(example_objective, config.bounds, 4)
        known = {s.genes for s in solutions.solutions}
        for seed in range(100):
            result = engine_service.run(config, example_objective, SeededSource(seed))
            if result.best_cost == 0:
                assert result.best_chromosome.genes in known
                assert oracle_service.verify_solution(example_objective, result.best_chromosome)


def test_other_objectives_plug_in():
    objective = LinearEqualityObjective(coefficients=[3, -1], target=4)
    config = GaConfig(chromosome_length=2, generations=40, bounds=[0, 10], population_size=8)
    result = engine_service.run(config, objective, SeededSource(1))
    assert result.best_cost == objective.evaluate(result.best_chromosome)
    assert result.best_cost <= min(result.final_costs)
