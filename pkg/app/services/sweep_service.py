"""
Parameter sweeps: many independent seeded runs over a grid of rates
"""
from concurrent.futures import ProcessPoolExecutor
from itertools import product
from pathlib import Path
from typing import List, Optional, Tuple

import pandas as pd
from loguru import logger

from app.models.schemas import GaConfig, SeededMode, SweepRow
from app.services.engine_service import engine_service
from app.services.objective_service import LinearEqualityObjective
from app.services.rng_service import SeededSource

_Job = Tuple[GaConfig, LinearEqualityObjective, int]


def _run_one(job: _Job) -> SweepRow:
    """Run a single grid cell/seed; module-level so worker processes can pickle it"""
    config, objective, seed = job
    result = engine_service.run(config, objective, SeededSource(seed))
    return SweepRow(
        crossover_rate=config.crossover_rate,
        mutation_rate=config.mutation_rate,
        population_size=config.population_size,
        generations=config.generations,
        seed=seed,
        best_cost=result.best_cost,
        generation_found=result.generation_found,
        success=result.best_cost == 0,
    )


class SweepService:
    """Service for running and summarising parameter sweeps"""

    def build_jobs(self, base: GaConfig, objective: LinearEqualityObjective, crossover_rates: List[float],
                   mutation_rates: List[float], seeds: List[int]) -> List[_Job]:
        """Grid position first, then seed"""
        jobs = []
        for crossover_rate, mutation_rate in product(crossover_rates, mutation_rates):
            for seed in seeds:
                config = base.model_copy(update={
                    "crossover_rate": crossover_rate,
                    "mutation_rate": mutation_rate,
                    "rng_mode": SeededMode(seed=seed),
                })
                jobs.append((config, objective, seed))
        return jobs

    def run_sweep(self, base: GaConfig, objective: LinearEqualityObjective, crossover_rates: List[float],
                  mutation_rates: List[float], seeds: List[int], workers: int = 1) -> pd.DataFrame:
        """One row per run, ordered by grid position then seed regardless of completion order"""
        jobs = self.build_jobs(base, objective, crossover_rates, mutation_rates, seeds)
        logger.info(f"Starting sweep: {len(jobs)} runs on {workers} worker(s)")

        if workers > 1:
            with ProcessPoolExecutor(max_workers=workers) as pool:
                rows = list(pool.map(_run_one, jobs, chunksize=max(1, len(jobs) // (workers * 4))))
        else:
            rows = [_run_one(job) for job in jobs]

        frame = pd.DataFrame([row.model_dump() for row in rows], columns=list(SweepRow.model_fields))
        logger.info(f"Sweep completed: {int(frame['success'].sum())}/{len(frame)} runs reached cost 0")
        return frame

    def success_rates(self, frame: pd.DataFrame) -> pd.DataFrame:
        """Fraction of seeds reaching cost 0 per (crossover rate, mutation rate) cell"""
        grouped = frame.groupby(["crossover_rate", "mutation_rate"], sort=False)
        return grouped.agg(
            runs=("seed", "size"),
            successes=("success", "sum"),
            success_rate=("success", "mean"),
            mean_best_cost=("best_cost", "mean"),
        ).reset_index()

    def write_report(self, frame: pd.DataFrame, path: Optional[Path]):
        if path is None:
            return
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        frame.to_csv(path, index=False)
        logger.info(f"Wrote {len(frame)} sweep rows to {path}")


# Global sweep service instance
sweep_service = SweepService()
