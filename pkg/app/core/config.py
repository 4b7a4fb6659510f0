"""
Configuration settings for the Genetic Equality Solver
"""
from pathlib import Path
from typing import List, Optional

from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """Application settings loaded from environment variables"""

    # Problem instance (the a + 2b + 3c + 4d = 30 equality)
    coefficients: List[int] = [1, 2, 3, 4]
    target: int = 30
    gene_lo: int = 0
    gene_hi: int = 30

    # GA parameters
    population_size: int = 6
    generations: int = 50
    crossover_rate: float = 0.25
    mutation_rate: float = 0.1
    stop_on_zero: bool = False
    elitism: bool = False

    # Oracle
    scan_limit: int = 10**8

    # Sweep
    sweep_workers: int = 1
    sweep_seeds: str = "0:100"

    # Replay
    replay_tolerance: float = 5e-3

    # Application Settings
    log_level: str = "INFO"
    log_file: Optional[str] = None

    model_config = SettingsConfigDict(env_prefix="GA_", env_file=".env", case_sensitive=False)

    @property
    def bounds_text(self) -> str:
        """Bounds in the CLI's lo:hi notation"""
        return f"{self.gene_lo}:{self.gene_hi}"


# Global settings instance
settings = Settings()


# Shipped fixtures reproducing the worked one-generation example
DATA_DIR = Path(__file__).resolve().parent.parent.parent / "data"
EXAMPLE_SCRIPT = DATA_DIR / "example_script.txt"
EXAMPLE_EXPECTED_TRACE = DATA_DIR / "example_expected_trace.jsonl"
