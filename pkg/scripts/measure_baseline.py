"""
Measure the convergence success rate used as the regression baseline
"""
import sys
import os
from pathlib import Path

# Add project root to Python path
project_root = Path(__file__).parent.parent
sys.path.insert(0, str(project_root))

from loguru import logger

from app.core.config import settings
from app.models.schemas import GaConfig, GeneBounds
from app.services.objective_service import LinearEqualityObjective
from app.services.sweep_service import sweep_service

SEEDS = range(200)


def main():
    """Run the default parameters over 200 seeds and report the fraction reaching cost 0"""
    logger.info(f"🧪 Measuring convergence over {len(SEEDS)} seeds")

    objective = LinearEqualityObjective(coefficients=settings.coefficients, target=settings.target)
    bounds = GeneBounds(lo=settings.gene_lo, hi=settings.gene_hi)
    config = GaConfig(
        population_size=settings.population_size,
        generations=settings.generations,
        crossover_rate=settings.crossover_rate,
        mutation_rate=settings.mutation_rate,
        bounds=bounds,
        chromosome_length=len(settings.coefficients),
    )

    frame = sweep_service.run_sweep(config, objective, [config.crossover_rate], [config.mutation_rate],
                                    list(SEEDS), workers=os.cpu_count() or 1)
    rate = frame["success"].mean()
    logger.info(f"Success rate: {rate:.3f} ({int(frame['success'].sum())}/{len(frame)})")

    if rate == 0:
        logger.error("❌ No seed reached cost 0")
        sys.exit(1)
    logger.info("🎉 Compare with the baseline pinned in tests/test_engine.py and tests/test_sweep.py (98/200)")


if __name__ == "__main__":
    main()
