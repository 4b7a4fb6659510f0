"""
Random sources: the only place any randomness in the solver comes from.

A run owns exactly one source and requests draws in a fixed order, so the same
seed (or the same script) always reproduces the same run.
"""
import re
from abc import ABC, abstractmethod
from contextlib import contextmanager
from pathlib import Path
from typing import Iterator, List, Literal, Union

import numpy as np
from loguru import logger
from pydantic import BaseModel, ConfigDict

from app.core.errors import (
    InvalidRange, ScriptError, ScriptExhausted, ScriptOutOfRange, ScriptParseError, ScriptTypeMismatch
)
from app.models.schemas import ScriptedMode, SeededMode

_TWO_POW_64 = 1 << 64
_FLOAT_SCALE = 1.0 / (1 << 53)
# Canonical integers only: no "+" prefix, no underscores
_INT_LITERAL = re.compile(r"-?[0-9]+")


class ScriptDraw(BaseModel):
    """One entry of a draw script: a float in [0,1) or an integer"""
    model_config = ConfigDict(frozen=True)

    kind: Literal["f", "i"]
    value: Union[int, float]

    @classmethod
    def float_(cls, value: float) -> "ScriptDraw":
        return cls(kind="f", value=float(value))

    @classmethod
    def int_(cls, value: int) -> "ScriptDraw":
        return cls(kind="i", value=int(value))

    def to_line(self) -> str:
        return f"f {float(self.value)!r}" if self.kind == "f" else f"i {int(self.value)}"


def _check_range(lo: int, hi: int):
    if lo > hi:
        raise InvalidRange(lo, hi)


class RandomSource(ABC):
    """Contract every source of draws fulfils"""

    @abstractmethod
    def next_float01(self) -> float:
        """Next real in [0, 1)"""

    @abstractmethod
    def next_int_inclusive(self, lo: int, hi: int) -> int:
        """Next integer in [lo, hi]; lo must not exceed hi"""


class SeededSource(RandomSource):
    """
    PCG64-backed source with a 64-bit seed.

    Uses only the raw 64-bit outputs of numpy's PCG64 bit generator (seeded via
    SeedSequence), so sequences do not depend on numpy's distribution code:
    floats keep the top 53 bits of one output, integers are drawn by rejection
    so every value in [lo, hi] is equally likely.
    """

    def __init__(self, seed: int):
        if not 0 <= seed < _TWO_POW_64:
            raise ValueError(f"seed must be an unsigned 64-bit integer, got {seed}")
        self.seed = seed
        self._bits = np.random.PCG64(seed)

    def _raw(self) -> int:
        return int(self._bits.random_raw())

    def next_float01(self) -> float:
        return (self._raw() >> 11) * _FLOAT_SCALE

    def next_int_inclusive(self, lo: int, hi: int) -> int:
        _check_range(lo, hi)
        span = hi - lo + 1
        if span > _TWO_POW_64:
            raise InvalidRange(lo, hi)
        # Largest multiple of span that fits in 64 bits
        limit = _TWO_POW_64 - (_TWO_POW_64 % span)
        while True:
            raw = self._raw()
            if raw < limit:
                return lo + raw % span


class ScriptedSource(RandomSource):
    """Replays a fixed list of draws, each consumed exactly once and in order"""

    def __init__(self, draws: List[ScriptDraw]):
        self.draws = list(draws)
        self.cursor = 0

    @property
    def remaining(self) -> int:
        return len(self.draws) - self.cursor

    def _take(self, kind: str) -> ScriptDraw:
        if self.cursor >= len(self.draws):
            raise ScriptExhausted(f"no draw left after {len(self.draws)} entries")
        draw = self.draws[self.cursor]
        if draw.kind != kind:
            wanted = "float" if kind == "f" else "integer"
            raise ScriptTypeMismatch(
                f"entry {self.cursor + 1} is {draw.to_line()!r} but a {wanted} was requested"
            )
        self.cursor += 1
        return draw

    def next_float01(self) -> float:
        return float(self._take("f").value)

    def next_int_inclusive(self, lo: int, hi: int) -> int:
        _check_range(lo, hi)
        position = self.cursor + 1
        value = int(self._take("i").value)
        if not lo <= value <= hi:
            # Leave the cursor on the offending entry
            self.cursor -= 1
            raise ScriptOutOfRange(f"entry {position} is {value}, outside requested range [{lo}, {hi}]")
        return value


class CountingSource(RandomSource):
    """Wraps another source and counts how many floats and integers were drawn"""

    def __init__(self, inner: RandomSource):
        self.inner = inner
        self.float_draws = 0
        self.int_draws = 0

    def next_float01(self) -> float:
        value = self.inner.next_float01()
        self.float_draws += 1
        return value

    def next_int_inclusive(self, lo: int, hi: int) -> int:
        value = self.inner.next_int_inclusive(lo, hi)
        self.int_draws += 1
        return value


def parse_script(text: str, source: str = None) -> ScriptedSource:
    """
    Parse a draw script.

    Each non-empty line is `f <decimal in [0,1)>` or `i <integer>`; `#` starts a
    comment. Any line ending is accepted.
    """
    draws: List[ScriptDraw] = []
    for line_number, raw_line in enumerate(text.splitlines(), start=1):
        line = raw_line.split("#", 1)[0].strip()
        if not line:
            continue

        tokens = line.split()
        if len(tokens) != 2:
            raise ScriptParseError(line_number, f"expected '<f|i> <value>', got {line!r}", source)

        kind, literal = tokens
        if kind == "f":
            try:
                value = float(literal)
            except ValueError:
                raise ScriptParseError(line_number, f"not a decimal: {literal!r}", source)
            # NaN fails both comparisons
            if not 0.0 <= value < 1.0:
                raise ScriptParseError(line_number, f"float {literal} outside [0, 1)", source)
            draws.append(ScriptDraw.float_(value))
        elif kind == "i":
            if not _INT_LITERAL.fullmatch(literal):
                raise ScriptParseError(line_number, f"not an integer: {literal!r}", source)
            draws.append(ScriptDraw.int_(int(literal)))
        else:
            raise ScriptParseError(line_number, f"unknown entry kind {kind!r}", source)

    logger.debug(f"Parsed script with {len(draws)} draws")
    return ScriptedSource(draws)


def serialize_script(draws: List[ScriptDraw]) -> str:
    """Write draws in canonical form, one per line"""
    return "".join(draw.to_line() + "\n" for draw in draws)


def load_script(path: Path) -> ScriptedSource:
    """Read and parse a script file"""
    path = Path(path)
    return parse_script(path.read_text(encoding="utf-8"), source=str(path))


def build_source(mode: Union[SeededMode, ScriptedMode]) -> RandomSource:
    """Create the source a GaConfig's rng_mode describes"""
    if isinstance(mode, ScriptedMode):
        return load_script(mode.script)
    return SeededSource(mode.seed)


@contextmanager
def draw_phase(phase: str) -> Iterator[None]:
    """Tag script errors raised inside the block with the phase that requested the draw"""
    try:
        yield
    except ScriptError as e:
        if e.phase is None:
            e.phase = phase
        raise
