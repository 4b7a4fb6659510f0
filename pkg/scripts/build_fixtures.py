"""
Script to regenerate the shipped fixtures of the worked one-generation example
"""
import json
import sys
import os
sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from loguru import logger

from app.core.config import EXAMPLE_EXPECTED_TRACE, EXAMPLE_SCRIPT
from app.models.schemas import GaConfig, GeneBounds
from app.services.engine_service import engine_service
from app.services.objective_service import LinearEqualityObjective
from app.services.rng_service import ScriptDraw, load_script, serialize_script
from app.services.trace_service import trace_service

INITIAL_GENES = [
    [12, 5, 23, 8], [2, 21, 18, 3], [10, 4, 13, 14],
    [20, 1, 10, 6], [1, 4, 13, 19], [20, 5, 17, 1],
]
SELECTION_DRAWS = [0.201, 0.284, 0.099, 0.822, 0.398, 0.501]
CROSSOVER_DRAWS = [0.191, 0.259, 0.760, 0.006, 0.159, 0.340]
CUT_POINTS = [1, 1, 2]
MUTATION_POSITIONS = [12, 18]
MUTATION_VALUES = [2, 5]

# Values as printed in the worked example (reals rounded to 4 decimals).
# objective_values_after uses direct arithmetic: 83 and 69 where the printed
# example miscomputes 77 and 47.
EXPECTED_GENERATION = {
    "kind": "generation",
    "generation_index": 1,
    "population_before": INITIAL_GENES,
    "objective_values": [93, 80, 83, 46, 94, 55],
    "fitness_values": [0.0106, 0.0123, 0.0119, 0.0213, 0.0105, 0.0179],
    "total_fitness": 0.0845,
    "probabilities": [0.1254, 0.1456, 0.1408, 0.2521, 0.1243, 0.2118],
    "cumulative": [0.1254, 0.2710, 0.4118, 0.6639, 0.7882, 1.0],
    "selection_draws": SELECTION_DRAWS,
    "selected_indices": [2, 3, 1, 6, 3, 4],
    "population_after_selection": [
        [2, 21, 18, 3], [10, 4, 13, 14], [12, 5, 23, 8],
        [20, 5, 17, 1], [10, 4, 13, 14], [20, 1, 10, 6],
    ],
    "crossover_draws": CROSSOVER_DRAWS,
    "crossover_parents": [1, 4, 5],
    "cut_points": CUT_POINTS,
    "population_after_crossover": [
        [2, 5, 17, 1], [10, 4, 13, 14], [12, 5, 23, 8],
        [20, 4, 13, 14], [10, 4, 18, 3], [20, 1, 10, 6],
    ],
    "mutation_count": 2,
    "mutation_position_draws": MUTATION_POSITIONS,
    "mutation_positions": MUTATION_POSITIONS,
    "mutation_values": MUTATION_VALUES,
    "population_after_mutation": [
        [2, 5, 17, 1], [10, 4, 13, 14], [12, 5, 23, 2],
        [20, 4, 13, 14], [10, 5, 18, 3], [20, 1, 10, 6],
    ],
    "elite_slot": None,
    "objective_values_after": [37, 83, 69, 93, 56, 46],
    "best_objective_so_far": 37,
}


def example_draws():
    """All 43 draws in the engine's canonical order"""
    draws = [ScriptDraw.int_(g) for genes in INITIAL_GENES for g in genes]
    draws += [ScriptDraw.float_(r) for r in SELECTION_DRAWS + CROSSOVER_DRAWS]
    draws += [ScriptDraw.int_(v) for v in CUT_POINTS + MUTATION_POSITIONS + MUTATION_VALUES]
    return draws


def build_fixtures():
    """Write both fixtures, then replay the script to confirm they agree"""
    header = "# Draws of the worked one-generation example for a + 2b + 3c + 4d = 30\n"
    EXAMPLE_SCRIPT.parent.mkdir(parents=True, exist_ok=True)
    EXAMPLE_SCRIPT.write_text(header + serialize_script(example_draws()), encoding="utf-8")
    logger.info(f"Wrote {EXAMPLE_SCRIPT}")

    EXAMPLE_EXPECTED_TRACE.write_text(json.dumps(EXPECTED_GENERATION) + "\n", encoding="utf-8")
    logger.info(f"Wrote {EXAMPLE_EXPECTED_TRACE}")

    config = GaConfig(population_size=6, generations=1, crossover_rate=0.25, mutation_rate=0.1,
                      bounds=GeneBounds(lo=0, hi=30), chromosome_length=4)
    objective = LinearEqualityObjective(coefficients=[1, 2, 3, 4], target=30)
    result = engine_service.run(config, objective, load_script(EXAMPLE_SCRIPT), keep_traces=True)

    mismatch = trace_service.compare(result.traces, [EXPECTED_GENERATION])
    if mismatch is not None:
        logger.error(f"❌ Replay disagrees with the expected trace: {mismatch}")
        sys.exit(1)
    logger.info("✅ Replay matches the expected trace")


if __name__ == "__main__":
    build_fixtures()
