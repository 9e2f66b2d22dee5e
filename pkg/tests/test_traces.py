import numpy as np
import pytest
from hypothesis import given

from ltlsynth.kernels import cs_from_string
from ltlsynth.traces import (
    LANE_WIDTH,
    Alphabet,
    InfeasibleSpecificationError,
    Layout,
    SpecError,
    SpecFormatError,
    Specification,
    Trace,
    atom_bitvectors,
    parse_specification,
    serialize_specification,
    smallest_lane_dtype,
    spec_from_steps,
    step_trace,
    word_trace,
)

from strategies import specifications


def test_parse_smallest_two_trace_file():
    spec = parse_specification("1;0\n---\n0;1")
    assert spec.alphabet.names == ("p0",)
    assert spec.positives == (Trace((frozenset({0}), frozenset())),)
    assert spec.negatives == (Trace((frozenset(), frozenset({0}))),)


def test_parse_spec1_file(spec1, spec1_path):
    spec = parse_specification(spec1_path.read_text())
    assert spec == spec1
    assert spec.alphabet.names == ("a", "b", "c")
    assert spec.trace_count == 6
    # trace order must be file order, positives first
    assert [tr.length for tr in spec.traces] == [1, 2, 1, 2, 3, 3]


def test_parse_keeps_comments_and_blanks_out():
    text = "# a comment\n\n#atoms: x y\n1,0\n\n# more\n---\n0,1\n"
    spec = parse_specification(text)
    assert spec.alphabet.names == ("x", "y")
    assert len(spec.positives) == len(spec.negatives) == 1


def test_parse_without_separator_is_all_positives():
    spec = parse_specification("1\n0\n")
    assert len(spec.positives) == 2
    assert spec.negatives == ()


def test_arity_mismatch_reported_at_timestep():
    with pytest.raises(SpecFormatError, match=r"timestep 2 has 1 value\(s\), expected 2") as ei:
        parse_specification("1,0;1")
    assert ei.value.line == 1


def test_arity_mismatch_across_traces():
    with pytest.raises(SpecFormatError, match="expected 2"):
        parse_specification("1,0\n1\n")


def test_bad_value_rejected_with_position():
    with pytest.raises(SpecFormatError, match="expected 0 or 1"):
        parse_specification("1,2\n")


def test_empty_timestep_rejected():
    with pytest.raises(SpecFormatError, match="empty timestep"):
        parse_specification("1;;1\n")


def test_double_separator_rejected():
    with pytest.raises(SpecFormatError, match="separator"):
        parse_specification("1\n---\n0\n---\n1\n")


def test_atoms_directive_must_come_first():
    with pytest.raises(SpecFormatError, match="precede"):
        parse_specification("1\n#atoms: a\n")


def test_trace_longer_than_lane_rejected():
    line = ";".join(["1"] * (LANE_WIDTH + 1))
    with pytest.raises(SpecFormatError, match="64"):
        parse_specification(line)


def test_duplicate_across_sides_is_infeasible():
    with pytest.raises(InfeasibleSpecificationError, match="infeasible specification"):
        parse_specification("1;0\n---\n1;0\n")


def test_duplicate_within_one_side_is_allowed():
    spec = parse_specification("1\n1\n---\n0\n")
    assert len(spec.positives) == 2


def test_empty_file_rejected():
    with pytest.raises(SpecFormatError, match="no traces"):
        parse_specification("# nothing here\n")


def test_empty_trace_rejected_programmatically():
    with pytest.raises(SpecError, match="empty trace"):
        Trace(())


def test_alphabet_validation():
    with pytest.raises(SpecError):
        Alphabet(("a", "a"))
    with pytest.raises(SpecError):
        Alphabet(())
    with pytest.raises(SpecError):
        Alphabet(tuple(f"p{i}" for i in range(27)))


def test_unknown_atom_name_in_helper():
    alphabet = Alphabet.of("ab")
    with pytest.raises(SpecError, match="unknown proposition"):
        step_trace(["az"], alphabet)


@given(specifications())
def test_serialize_parse_round_trip(spec):
    assert parse_specification(serialize_specification(spec)) == spec


def test_atom_bitvectors_rendered_word(squeegee_spec):
    # "abcaa" with atom a true at 0, 3, 4 renders as 10011
    alphabet = Alphabet.of("abc")
    spec = Specification(alphabet, (word_trace("abcaa", alphabet),), ())
    rows = atom_bitvectors(spec)
    assert rows[alphabet.index("a"), 0] == cs_from_string("10011")
    assert rows[alphabet.index("b"), 0] == cs_from_string("01000")


def test_atom_bitvectors_absent_atom_is_zero():
    spec = spec_from_steps([["a", "a"]], [], "ab")
    rows = atom_bitvectors(spec)
    assert rows[1, 0] == 0


def test_atom_bitvectors_multi_atom_step():
    # trace <a, ac, {}> over atoms a,b,c: c holds only at time 1
    spec = spec_from_steps([["a", "ac", ""]], [], "abc")
    rows = atom_bitvectors(spec)
    assert rows[0, 0] == cs_from_string("110")
    assert rows[1, 0] == cs_from_string("000")
    assert rows[2, 0] == cs_from_string("010")


@given(specifications())
def test_atom_rows_never_exceed_masks(spec):
    layout = Layout.from_specification(spec)
    rows = atom_bitvectors(spec)
    assert not (rows & ~layout.masks).any()


@given(specifications())
def test_layout_masks_and_target(spec):
    layout = Layout.from_specification(spec)
    assert layout.trace_count == spec.trace_count
    for t, tr in enumerate(spec.traces):
        assert int(layout.masks[t]) == (1 << tr.length) - 1
    expect = [1] * len(spec.positives) + [0] * len(spec.negatives)
    assert layout.target.tolist() == expect


def test_layout_rejects_too_narrow_dtype():
    spec = spec_from_steps([[""] * 9], [], "a")
    with pytest.raises(SpecError):
        Layout.from_specification(spec, np.uint8)


@pytest.mark.parametrize(
    "length,expected",
    [(1, np.uint8), (8, np.uint8), (9, np.uint16), (16, np.uint16), (17, np.uint32), (33, np.uint64), (64, np.uint64)],
)
def test_smallest_lane_dtype(length, expected):
    assert smallest_lane_dtype(length) == np.dtype(expected)


def test_full_width_mask_is_all_ones():
    spec = spec_from_steps([[""] * 64], [], "a")
    layout = Layout.from_specification(spec)
    assert int(layout.masks[0]) == (1 << 64) - 1
