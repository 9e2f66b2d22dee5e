import pathlib

import pytest

from ltlsynth import Alphabet, spec_from_steps

DATA = pathlib.Path(__file__).parent / "data"

SPEC1_POSITIVES = [["c"], ["c", "a"], ["b"]]
SPEC1_NEGATIVES = [["b", "a"], ["a", "a", "c"], ["b", "a", "c"]]

SPEC2_POSITIVES = [
    ["ab", "ab", "a", "b", "a", "ab"],
    ["", "ab", "a", "b", "b", ""],
    ["ab", "a", "", "b", "a", "ab"],
    ["b", "b", "ab", "b", "a", "ab"],
    ["ab", "a", "ab", "a", "", "a"],
    ["a", "ab", "ab", "b", "a", "ab"],
    ["b", "", "a", "", "a", "a"],
]
SPEC2_NEGATIVES = [
    ["b", "ab", "ab", "b", "a", "ab"],
    ["ab", "ab", "ab", "a", "", "a"],
    ["", "ab", "ab", "b", "a", "a"],
    ["b", "b", "a", "", "a", "ab"],
    ["ab", "ab", "a", "b", "a", "a"],
    ["ab", "a", "b", "b", "a", "a"],
    ["b", "a", "ab", "b", "a", "a"],
]


@pytest.fixture(scope="session")
def spec1():
    """3 positive / 3 negative short traces over {a,b,c}; minimal separator cost 4."""
    return spec_from_steps(SPEC1_POSITIVES, SPEC1_NEGATIVES, "abc")


@pytest.fixture(scope="session")
def spec2():
    """7 positive / 7 negative length-6 traces over {a,b}; minimal separator cost 16."""
    return spec_from_steps(SPEC2_POSITIVES, SPEC2_NEGATIVES, "ab")


@pytest.fixture(scope="session")
def squeegee_spec():
    from ltlsynth import Specification, word_trace

    alphabet = Alphabet.of("egqsu")
    return Specification(alphabet, (word_trace("squeegee", alphabet),), ())


@pytest.fixture(scope="session")
def spec1_path():
    return DATA / "spec1.trc"


@pytest.fixture(scope="session")
def spec2_path():
    return DATA / "spec2.trc"
