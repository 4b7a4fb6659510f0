"""
Tests for the seeded and scripted random sources
"""
import numpy as np
import pytest

from app.core.errors import (
    InvalidRange, ScriptExhausted, ScriptOutOfRange, ScriptParseError, ScriptTypeMismatch
)
from app.models.schemas import ScriptedMode, SeededMode
from app.services.rng_service import (
    CountingSource, ScriptDraw, ScriptedSource, SeededSource, build_source, draw_phase, load_script, parse_script,
    serialize_script
)


class TestScriptedSource:
    def test_float_draw(self):
        src = ScriptedSource([ScriptDraw.float_(0.201)])
        assert src.next_float01() == 0.201

    def test_zero_float(self):
        assert ScriptedSource([ScriptDraw.float_(0.0)]).next_float01() == 0.0

    def test_int_draws(self):
        src = ScriptedSource([ScriptDraw.int_(1), ScriptDraw.int_(12)])
        assert src.next_int_inclusive(1, 3) == 1
        assert src.next_int_inclusive(1, 24) == 12

    def test_singleton_range(self):
        src = ScriptedSource([ScriptDraw.int_(5)])
        assert src.next_int_inclusive(5, 5) == 5

    @pytest.mark.parametrize("n", [0, 1, 5])
    def test_exhausted_after_n_draws(self, n):
        src = ScriptedSource([ScriptDraw.float_(0.5)] * n)
        for _ in range(n):
            src.next_float01()
        with pytest.raises(ScriptExhausted):
            src.next_float01()

    def test_type_mismatch_both_ways(self):
        with pytest.raises(ScriptTypeMismatch):
            ScriptedSource([ScriptDraw.int_(3)]).next_float01()
        with pytest.raises(ScriptTypeMismatch):
            ScriptedSource([ScriptDraw.float_(0.3)]).next_int_inclusive(0, 10)

    def test_out_of_range(self):
        src = ScriptedSource([ScriptDraw.int_(31)])
        with pytest.raises(ScriptOutOfRange):
            src.next_int_inclusive(0, 30)

    def test_invalid_range(self):
        with pytest.raises(InvalidRange):
            ScriptedSource([ScriptDraw.int_(3)]).next_int_inclusive(5, 4)

    def test_remaining(self):
        src = ScriptedSource([ScriptDraw.float_(0.1), ScriptDraw.int_(2)])
        src.next_float01()
        assert src.remaining == 1


class TestSeededSource:
    def test_known_floats_for_seed_42(self):
        src = SeededSource(42)
        values = [src.next_float01() for _ in range(4)]
        assert values == pytest.approx([0.77395605, 0.43887844, 0.85859792, 0.69736803], abs=1e-8)

    def test_floats_match_numpy_double_path(self):
        src = SeededSource(42)
        expected = np.random.Generator(np.random.PCG64(42)).random(8)
        assert [src.next_float01() for _ in range(8)] == expected.tolist()

    def test_ints_follow_raw_stream(self):
        raws = [int(raw) for raw in np.random.PCG64(42).random_raw(4)]
        src = SeededSource(42)
        # Rejection only triggers for raw >= 2**64 - (2**64 % 31)
        assert all(raw < 2**64 - 2**64 % 31 for raw in raws)
        assert [src.next_int_inclusive(0, 30) for _ in range(4)] == [raw % 31 for raw in raws]
        assert [src.next_int_inclusive(5, 5) for _ in range(3)] == [5, 5, 5]

    def test_same_seed_same_sequence(self):
        a, b = SeededSource(42), SeededSource(42)
        assert [a.next_float01() for _ in range(2)] == [b.next_float01() for _ in range(2)]
        assert [a.next_int_inclusive(0, 30) for _ in range(50)] == [b.next_int_inclusive(0, 30) for _ in range(50)]

    def test_different_seeds_differ(self):
        a, b = SeededSource(1), SeededSource(2)
        assert [a.next_float01() for _ in range(8)] != [b.next_float01() for _ in range(8)]

    def test_ranges_respected(self):
        src = SeededSource(7)
        for _ in range(2000):
            assert 0.0 <= src.next_float01() < 1.0
            assert 3 <= src.next_int_inclusive(3, 9) <= 9
        assert src.next_int_inclusive(5, 5) == 5

    def test_every_value_reachable(self):
        src = SeededSource(11)
        seen = {src.next_int_inclusive(0, 30) for _ in range(3000)}
        assert seen == set(range(31))

    def test_full_64_bit_seed(self):
        SeededSource(2**64 - 1).next_float01()
        with pytest.raises(ValueError):
            SeededSource(2**64)

    def test_invalid_range(self):
        with pytest.raises(InvalidRange):
            SeededSource(0).next_int_inclusive(2, 1)


class TestParseScript:
    def test_direct_parse(self):
        src = parse_script("f 0.201\ni 3\n")
        assert src.draws == [ScriptDraw.float_(0.201), ScriptDraw.int_(3)]
        assert src.cursor == 0

    def test_comments_and_blank_lines(self):
        src = parse_script("# comment\n\nf 0.5  # trailing\n")
        assert src.draws == [ScriptDraw.float_(0.5)]

    def test_any_line_ending(self):
        assert len(parse_script("f 0.1\r\ni 2\rf 0.3").draws) == 3

    @pytest.mark.parametrize("text,line", [
        ("f 1.5\n", 1),
        ("f 0.1\nf -0.2\n", 2),
        ("f nan\n", 1),
        ("i 3.5\n", 1),
        ("x 3\n", 1),
        ("# ok\ni\n", 2),
        ("i 1 2\n", 1),
        ("i 1_000\n", 1),
        ("i +3\n", 1),
        ("i 0x1f\n", 1),
    ])
    def test_malformed_lines(self, text, line):
        with pytest.raises(ScriptParseError) as info:
            parse_script(text)
        assert info.value.line_number == line

    def test_canonical_round_trip(self):
        canonical = "i 12\nf 0.201\nf 0.0\ni -3\n"
        assert serialize_script(parse_script(canonical).draws) == canonical

    def test_load_example_script(self, example_script_path):
        src = load_script(example_script_path)
        assert len(src.draws) == 43
        assert [d.value for d in src.draws[:4]] == [12, 5, 23, 8]


class TestHelpers:
    def test_counting_source(self):
        src = CountingSource(SeededSource(3))
        src.next_float01()
        src.next_int_inclusive(0, 1)
        src.next_int_inclusive(0, 1)
        assert (src.float_draws, src.int_draws) == (1, 2)

    def test_draw_phase_tags_errors(self):
        src = ScriptedSource([])
        with pytest.raises(ScriptExhausted) as info:
            with draw_phase("selection"):
                src.next_float01()
        assert info.value.phase == "selection"

    def test_inner_phase_wins(self):
        src = ScriptedSource([])
        with pytest.raises(ScriptExhausted) as info:
            with draw_phase("outer"):
                with draw_phase("inner"):
                    src.next_float01()
        assert info.value.phase == "inner"

    def test_build_source(self, example_script_path):
        assert isinstance(build_source(SeededMode(seed=9)), SeededSource)
        scripted = build_source(ScriptedMode(script=example_script_path))
        assert isinstance(scripted, ScriptedSource)
        assert scripted.remaining == 43
