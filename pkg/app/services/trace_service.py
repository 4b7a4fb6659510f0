"""
JSON-lines trace output, expected-trace comparison and human-readable rendering
"""
import json
from pathlib import Path
from typing import Any, Dict, List, Optional

from loguru import logger
from pydantic import BaseModel

from app.models.schemas import GenerationTrace, Population, RunResult, RunSummary, format_chromosome


class TraceMismatch(BaseModel):
    """First difference between a recorded trace and an expected one"""
    generation: int
    field: str
    expected: Any
    actual: Any

    def __str__(self) -> str:
        return f"generation {self.generation}, field {self.field}: expected {self.expected}, got {self.actual}"


class TraceService:
    """Service for writing, reading, comparing and printing generation traces"""

    def trace_to_record(self, trace: GenerationTrace) -> Dict[str, Any]:
        """Full-precision JSON record with 1-based indices and gene vectors as integer arrays"""
        return {"kind": "generation", **trace.model_dump(mode="json")}

    def summary_record(self, result: RunResult) -> Dict[str, Any]:
        summary = RunSummary(
            best_chromosome=result.best_chromosome,
            best_cost=result.best_cost,
            generation_found=result.generation_found,
            generations_run=result.generations_run,
        )
        return summary.model_dump(mode="json")

    def write_trace(self, path: Path, result: RunResult):
        """One line per generation, then the summary line"""
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        with path.open("w", encoding="utf-8", newline="\n") as handle:
            for trace in result.traces:
                handle.write(json.dumps(self.trace_to_record(trace)) + "\n")
            handle.write(json.dumps(self.summary_record(result)) + "\n")
        logger.info(f"Wrote {len(result.traces)} trace records to {path}")

    def read_records(self, path: Path) -> List[Dict[str, Any]]:
        records = []
        with Path(path).open(encoding="utf-8") as handle:
            for line in handle:
                line = line.strip()
                if line:
                    records.append(json.loads(line))
        return records

    def compare(self, traces: List[GenerationTrace], expected: List[Dict[str, Any]],
                tolerance: float = 5e-3) -> Optional[TraceMismatch]:
        """
        Check every field present in the expected generation records.
        Integers must match exactly, floats within `tolerance`.
        """
        by_generation = {trace.generation_index: self.trace_to_record(trace) for trace in traces}
        for record in expected:
            if record.get("kind", "generation") != "generation":
                continue
            generation = record["generation_index"]
            actual = by_generation.get(generation)
            if actual is None:
                return TraceMismatch(generation=generation, field="generation_index",
                                     expected=generation, actual="missing")
            for field, expected_value in record.items():
                if field == "kind":
                    continue
                if field not in actual:
                    return TraceMismatch(generation=generation, field=field,
                                         expected=expected_value, actual="missing")
                mismatch = self._compare_value(field, expected_value, actual[field], tolerance)
                if mismatch is not None:
                    path, want, got = mismatch
                    return TraceMismatch(generation=generation, field=path, expected=want, actual=got)
        return None

    def _compare_value(self, path: str, expected: Any, actual: Any, tolerance: float):
        if isinstance(expected, list):
            if not isinstance(actual, list) or len(actual) != len(expected):
                return path, expected, actual
            for i, (want, got) in enumerate(zip(expected, actual)):
                # 1-based, like the indices in the records
                mismatch = self._compare_value(f"{path}[{i + 1}]", want, got, tolerance)
                if mismatch is not None:
                    return mismatch
            return None
        if isinstance(expected, float) or isinstance(actual, float):
            if actual is None or abs(float(expected) - float(actual)) > tolerance:
                return path, expected, actual
            return None
        if expected != actual:
            return path, expected, actual
        return None

    def format_trace(self, trace: GenerationTrace) -> str:
        """Human rendering of one generation, reals rounded to 6 decimals"""
        lines = [f"=== Generation {trace.generation_index} ==="]
        lines += self._population_lines("Population", trace.population_before, trace.objective_values)
        lines.append("Fitness:      " + self._reals(trace.fitness_values) + f"  total {trace.total_fitness:.6f}")
        lines.append("Probability:  " + self._reals(trace.probabilities))
        lines.append("Cumulative:   " + self._reals(trace.cumulative))
        lines.append("Selection R:  " + self._reals(trace.selection_draws))
        lines.append(f"Selected:     {trace.selected_indices}")
        lines.append("Crossover R:  " + self._reals(trace.crossover_draws))
        lines.append(f"Parents:      {trace.crossover_parents}  cuts {trace.cut_points}")
        lines += self._population_lines("After crossover", trace.population_after_crossover)
        length = trace.population_before.chromosome_length
        cells = [f"{p} -> chromosome {(p - 1) // length + 1} gene {(p - 1) % length + 1}"
                 for p in trace.mutation_positions]
        lines.append(f"Mutations:    {trace.mutation_count}  " + ", ".join(cells)
                     + f"  values {trace.mutation_values}")
        lines += self._population_lines("After mutation", trace.population_after_mutation,
                                        trace.objective_values_after)
        if trace.elite_slot is not None:
            lines.append(f"Elite restored into slot {trace.elite_slot}")
        lines.append(f"Best so far:  {trace.best_objective_so_far}")
        return "\n".join(lines)

    @staticmethod
    def _reals(values: List[float]) -> str:
        return " ".join(f"{value:.6f}" for value in values)

    @staticmethod
    def _population_lines(title: str, population: Population, costs: Optional[List[int]] = None) -> List[str]:
        lines = [f"{title}:"]
        for k, member in enumerate(population.members, start=1):
            suffix = f"  F_obj {costs[k - 1]}" if costs is not None else ""
            lines.append(f"  Chromosome[{k}] = {format_chromosome(member)}{suffix}")
        return lines


# Global trace service instance
trace_service = TraceService()
