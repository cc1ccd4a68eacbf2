from __future__ import annotations

from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from trilie.algebra import check_crossed, example_algebra, example_crossed_map
from trilie.fileformat import (
    EXAMPLE_FILE,
    DefinitionFile,
    DefinitionSyntaxError,
    IndexOutOfRange,
    NonIncreasingTriple,
    UnknownName,
    format_combo,
    parse,
    parse_combo,
    serialize,
)
from trilie.properties import random_definition_file


def test_example_file():
    df = parse(EXAMPLE_FILE)
    assert list(df.algebras) == ["g4"]
    g = df.algebras["g4"]
    assert g.structure_constants() == {(1, 2, 3): {0: 1}}
    assert g == example_algebra()
    assert df.actions["ad"].adjoint
    assert df.maps["H"].map == example_crossed_map()
    assert df.bivectors["X"].bivector.coeffs == {(1, 2): 1}
    assert check_crossed(df.maps["H"].map, df.actions["ad"].action) == []


def test_empty_file():
    assert parse("").is_empty()
    assert parse("# only a comment\n\n").is_empty()
    assert serialize(DefinitionFile()) == ""


def test_non_increasing_triple():
    with pytest.raises(NonIncreasingTriple) as e:
        parse("algebra g\ndim 4\nbracket 3 2 4 = e1\nend\n")
    assert e.value.line == 3


def test_index_out_of_range():
    with pytest.raises(IndexOutOfRange) as e:
        parse("algebra g\ndim 3\nbracket 1 2 3 = e4\nend\n")
    assert e.value.line == 3
    assert e.value.col == 18  # the offending digit


def test_unknown_name():
    with pytest.raises(UnknownName):
        parse("map H from g to g\ne1 -> e1\nend\n")


def test_syntax_errors():
    with pytest.raises(DefinitionSyntaxError):
        parse("algebra g\ndim 3\n")
    with pytest.raises(DefinitionSyntaxError):
        parse("algebra g\ndim 3\nbracket 1 2 = e1\nend\n")
    with pytest.raises(DefinitionSyntaxError):
        parse("nonsense line\n")
    with pytest.raises(DefinitionSyntaxError):
        parse("algebra g\ndim 3\nend\nalgebra g\ndim 2\nend\n")


def test_rational_coefficients():
    assert parse_combo("1/2*e1 - 3*e3 + e2", 3, 1, 0) == {0: Fraction(1, 2), 2: -3, 1: 1}
    assert format_combo({0: Fraction(1, 2), 2: Fraction(-3)}) == "1/2*e1 - 3*e3"


def test_example_round_trip():
    df = parse(EXAMPLE_FILE)
    text = serialize(df)
    assert parse(text) == df
    assert serialize(parse(text)) == text


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_random_round_trip(seed):
    df = random_definition_file(np.random.default_rng(seed))
    text = serialize(df)
    again = parse(text)
    assert again == df
    assert serialize(again) == text
