"""
Pydantic models for the solver's domain types and CLI run specifications
"""
from pathlib import Path
from typing import Annotated, Any, List, Literal, Optional, Tuple, Union

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_serializer, model_validator


def _split_csv(value: Any) -> Any:
    """Accept '1,2,3' as well as a list"""
    if isinstance(value, str):
        return [item.strip() for item in value.split(",") if item.strip()]
    return value


class GeneBounds(BaseModel):
    """Inclusive integer range every gene must lie in"""
    model_config = ConfigDict(frozen=True)

    lo: int
    hi: int

    @model_validator(mode="before")
    @classmethod
    def _from_text(cls, data: Any) -> Any:
        # "0:30" and [0, 30] are both accepted
        if isinstance(data, str):
            parts = data.split(":")
            if len(parts) != 2:
                raise ValueError(f"bounds must look like lo:hi, got {data!r}")
            return {"lo": parts[0].strip(), "hi": parts[1].strip()}
        if isinstance(data, (list, tuple)):
            if len(data) != 2:
                raise ValueError(f"bounds need exactly two values, got {len(data)}")
            return {"lo": data[0], "hi": data[1]}
        return data

    @model_validator(mode="after")
    def _check_order(self) -> "GeneBounds":
        if self.lo > self.hi:
            raise ValueError(f"bounds lo={self.lo} must not exceed hi={self.hi}")
        return self

    @property
    def span(self) -> int:
        return self.hi - self.lo + 1

    def contains(self, gene: int) -> bool:
        return self.lo <= gene <= self.hi

    def __str__(self) -> str:
        return f"{self.lo}:{self.hi}"


class Chromosome(BaseModel):
    """One candidate solution: a fixed-length vector of integer genes"""
    model_config = ConfigDict(frozen=True)

    genes: Tuple[int, ...] = Field(..., min_length=1)

    @model_validator(mode="before")
    @classmethod
    def _from_sequence(cls, data: Any) -> Any:
        if isinstance(data, (list, tuple)):
            return {"genes": data}
        return data

    @model_serializer
    def _as_array(self) -> List[int]:
        return list(self.genes)

    def __len__(self) -> int:
        return len(self.genes)

    def within(self, bounds: GeneBounds) -> bool:
        return all(bounds.contains(g) for g in self.genes)


def format_chromosome(chromosome: Chromosome, width: int = 2) -> str:
    """Render genes in the bracketed zero-padded style, e.g. [02;21;18;03]"""
    return "[" + ";".join(f"{g:0{width}d}" for g in chromosome.genes) + "]"


class Population(BaseModel):
    """Ordered chromosomes of one generation; slot k is Chromosome[k+1]"""
    model_config = ConfigDict(frozen=True)

    members: Tuple[Chromosome, ...] = Field(..., min_length=1)

    @model_validator(mode="before")
    @classmethod
    def _from_sequence(cls, data: Any) -> Any:
        if isinstance(data, (list, tuple)):
            return {"members": data}
        return data

    @model_validator(mode="after")
    def _check_lengths(self) -> "Population":
        length = len(self.members[0])
        if any(len(member) != length for member in self.members):
            raise ValueError("all chromosomes in a population must share one length")
        return self

    @model_serializer
    def _as_arrays(self) -> List[List[int]]:
        return [list(member.genes) for member in self.members]

    @property
    def size(self) -> int:
        return len(self.members)

    @property
    def chromosome_length(self) -> int:
        return len(self.members[0])

    def within(self, bounds: GeneBounds) -> bool:
        return all(member.within(bounds) for member in self.members)

    def __getitem__(self, index: int) -> Chromosome:
        return self.members[index]

    def __len__(self) -> int:
        return len(self.members)


class SeededMode(BaseModel):
    """Draws come from the PCG64-backed seeded source"""
    model_config = ConfigDict(frozen=True)

    kind: Literal["seeded"] = "seeded"
    seed: int = Field(0, ge=0, lt=2**64)


class ScriptedMode(BaseModel):
    """Draws are replayed from a script file"""
    model_config = ConfigDict(frozen=True)

    kind: Literal["scripted"] = "scripted"
    script: Path


RngMode = Annotated[Union[SeededMode, ScriptedMode], Field(discriminator="kind")]


class GaConfig(BaseModel):
    """Parameters of one GA run"""
    model_config = ConfigDict(frozen=True)

    population_size: int = Field(6, ge=2, description="N, chromosomes per generation")
    generations: int = Field(50, ge=0, description="G, generations to run")
    crossover_rate: float = Field(0.25, ge=0, le=1, description="Per-chromosome parent probability")
    mutation_rate: float = Field(0.1, ge=0, le=1, description="Fraction of gene cells mutated per generation")
    bounds: GeneBounds = GeneBounds(lo=0, hi=30)
    chromosome_length: int = Field(4, ge=2, description="L, genes per chromosome")
    rng_mode: RngMode = SeededMode()
    stop_on_zero: bool = False
    elitism: bool = False

    @property
    def total_genes(self) -> int:
        return self.population_size * self.chromosome_length


class SelectionTable(BaseModel):
    """Fitness, probabilities and cumulative probabilities for roulette selection"""
    model_config = ConfigDict(frozen=True)

    fitness_values: List[float]
    total_fitness: float
    probabilities: List[float]
    cumulative: List[float]


class SelectionOutcome(BaseModel):
    """Result of one roulette-wheel resampling"""
    model_config = ConfigDict(frozen=True)

    table: SelectionTable
    draws: List[float]
    selected_indices: List[int]
    population: Population


class CrossoverPlan(BaseModel):
    """Which slots mate this generation and where each mating cuts"""
    model_config = ConfigDict(frozen=True)

    gate_draws: List[float] = Field(default_factory=list)
    parent_indices: List[int] = Field(default_factory=list, description="1-based, ascending")
    cut_points: List[int] = Field(default_factory=list)

    @model_validator(mode="after")
    def _check_shape(self) -> "CrossoverPlan":
        if any(b <= a for a, b in zip(self.parent_indices, self.parent_indices[1:])):
            raise ValueError("parent indices must be strictly increasing")
        expected = len(self.parent_indices) if len(self.parent_indices) >= 2 else 0
        if len(self.cut_points) != expected:
            raise ValueError(f"expected {expected} cut points, got {len(self.cut_points)}")
        return self


class MutationPlan(BaseModel):
    """Gene cells to overwrite and their replacement values"""
    model_config = ConfigDict(frozen=True)

    count: int = Field(0, ge=0)
    position_draws: List[int] = Field(default_factory=list, description="Every physical draw, collisions included")
    positions: List[int] = Field(default_factory=list, description="1-based, distinct")
    replacement_values: List[int] = Field(default_factory=list)

    @model_validator(mode="after")
    def _check_shape(self) -> "MutationPlan":
        if len(self.positions) != self.count or len(self.replacement_values) != self.count:
            raise ValueError("positions and replacement values must both have count entries")
        if len(set(self.positions)) != len(self.positions):
            raise ValueError("mutation positions must be distinct")
        return self


class GenerationTrace(BaseModel):
    """Every intermediate state of one generation"""
    model_config = ConfigDict(frozen=True)

    generation_index: int
    population_before: Population
    objective_values: List[int]
    fitness_values: List[float]
    total_fitness: float
    probabilities: List[float]
    cumulative: List[float]
    selection_draws: List[float]
    selected_indices: List[int]
    population_after_selection: Population
    crossover_draws: List[float]
    crossover_parents: List[int]
    cut_points: List[int]
    population_after_crossover: Population
    mutation_count: int
    mutation_position_draws: List[int]
    mutation_positions: List[int]
    mutation_values: List[int]
    population_after_mutation: Population
    elite_slot: Optional[int] = None
    objective_values_after: List[int]
    best_objective_so_far: int


class RunResult(BaseModel):
    """Outcome of a complete run"""
    model_config = ConfigDict(frozen=True)

    best_chromosome: Chromosome
    best_cost: int
    generation_found: int
    generations_run: int
    best_history: List[int] = Field(..., description="Best-so-far after initialisation and each generation")
    final_population: Population
    final_costs: List[int]
    traces: List[GenerationTrace] = Field(default_factory=list)


class RunSummary(BaseModel):
    """Closing record of a JSON-lines trace"""
    kind: Literal["summary"] = "summary"
    best_chromosome: Chromosome
    best_cost: int
    generation_found: int
    generations_run: int


class SolutionSet(BaseModel):
    """Zero-cost vectors found by exhaustive scan"""
    model_config = ConfigDict(frozen=True)

    solutions: List[Chromosome]
    count: int
    bounds: GeneBounds
    length: int
    truncated: bool = False


class SelectionCheck(BaseModel):
    """Empirical roulette frequencies against the expected probabilities"""
    model_config = ConfigDict(frozen=True)

    samples: int
    probabilities: List[float]
    frequencies: List[float]
    standard_errors: List[float]
    sigmas: float
    passed: bool


class SweepRow(BaseModel):
    """One run of a parameter sweep"""
    crossover_rate: float
    mutation_rate: float
    population_size: int
    generations: int
    seed: int
    best_cost: int
    generation_found: int
    success: bool


class RunSpec(BaseModel):
    """Parsed command plus its parameters, after merging flags, config file and settings"""
    model_config = ConfigDict(extra="forbid")

    command: Literal["solve", "replay", "sweep", "verify", "enumerate"]
    coefficients: List[int] = Field(..., min_length=1)
    target: int
    bounds: GeneBounds
    population_size: int = Field(..., ge=2)
    generations: int = Field(..., ge=0)
    crossover_rate: float = Field(..., ge=0, le=1)
    mutation_rate: float = Field(..., ge=0, le=1)
    seed: Optional[int] = Field(None, ge=0, lt=2**64)
    script: Optional[Path] = None
    trace: Optional[Path] = None
    expect: Optional[Path] = None
    output: Optional[Path] = None
    stop_on_zero: bool = False
    elitism: bool = False
    tolerance: float = Field(5e-3, ge=0)
    crossover_rates: List[Annotated[float, Field(ge=0, le=1)]] = Field(default_factory=list)
    mutation_rates: List[Annotated[float, Field(ge=0, le=1)]] = Field(default_factory=list)
    seeds: List[Annotated[int, Field(ge=0, lt=2**64)]] = Field(default_factory=list)
    workers: int = Field(1, ge=1)

    @field_validator("coefficients", "crossover_rates", "mutation_rates", mode="before")
    @classmethod
    def _split_lists(cls, value: Any) -> Any:
        return _split_csv(value)

    @field_validator("seeds", mode="before")
    @classmethod
    def _expand_seeds(cls, value: Any) -> Any:
        # "0:100" is a half-open range, "1,5,9" a list
        if isinstance(value, str) and ":" in value:
            start, _, stop = value.partition(":")
            return list(range(int(start), int(stop)))
        return _split_csv(value)

    @model_validator(mode="after")
    def _check_consistency(self) -> "RunSpec":
        if self.seed is not None and self.script is not None:
            raise ValueError("--seed and --script are mutually exclusive")
        if self.command in ("solve", "replay", "sweep") and len(self.coefficients) < 2:
            raise ValueError("runs need at least two coefficients (chromosome length L >= 2)")
        return self

    @property
    def chromosome_length(self) -> int:
        return len(self.coefficients)

    def rng_mode(self) -> Union[SeededMode, ScriptedMode]:
        if self.script is not None:
            return ScriptedMode(script=self.script)
        return SeededMode(seed=self.seed or 0)

    def to_ga_config(self, **overrides: Any) -> GaConfig:
        values = dict(
            population_size=self.population_size,
            generations=self.generations,
            crossover_rate=self.crossover_rate,
            mutation_rate=self.mutation_rate,
            bounds=self.bounds,
            chromosome_length=self.chromosome_length,
            rng_mode=self.rng_mode(),
            stop_on_zero=self.stop_on_zero,
            elitism=self.elitism,
        )
        values.update(overrides)
        return GaConfig(**values)
