import json

import pytest
from hypothesis import given
from hypothesis import strategies as st

from learnspace import oracle
from learnspace.core import ItemDomain, SetFamily
from learnspace.projection import children
from learnspace.serialize import (
    FIXTURES,
    DuplicateStateWarning,
    FormatError,
    load_fixture,
    parse_family,
    serialize_family,
)


def test_json_chain():
    F = parse_family('{"domain": ["a", "b"], "states": [[], ["a"], ["a", "b"]]}')
    assert F.domain.items == ("a", "b")
    assert F.as_names() == [(), ("a",), ("a", "b")]


def test_compact_lines_with_comments():
    F = parse_family("# chain\ndomain: b,a\n-\nb   # first\nb, a\n")
    assert F.domain.items == ("b", "a")
    assert F.as_names() == [(), ("b",), ("b", "a")]


def test_compact_lines_infer_domain():
    F = parse_family("c\nc,a\n")
    assert F.domain.items == ("c", "a")


def test_duplicates_collapse_with_warning():
    with pytest.warns(DuplicateStateWarning):
        F = parse_family('{"domain": ["a"], "states": [["a"], ["a"]]}')
    assert len(F) == 1


@pytest.mark.parametrize(
    "text",
    [
        '{"domain": ["a"]}',
        '{"domain": ["a"], "states": [["z"]]}',
        '{"domain": ["a", "a"], "states": []}',
        '{"domain": "a", "states": []}',
        '{"domain": ["a"], "states": ["a"]}',
        "{not json",
        "domain: a\na,z\n",
        "# nothing\n",
        "a\ndomain: a\n",
        "domain: " + ",".join(f"q{i}" for i in range(65)) + "\nq0\n",
    ],
)
def test_malformed(text):
    with pytest.raises(FormatError):
        parse_family(text)


def test_f_ex_fixture():
    F = load_fixture("f_ex")
    assert len(F) == 24
    assert F.domain.items == tuple("abcdefg")


def test_canonical_output():
    F = SetFamily.of("ab", [["a", "b"], [], ["b"]])
    assert json.loads(serialize_family(F))["states"] == [[], ["b"], ["a", "b"]]
    assert serialize_family(F, "lines") == "domain: a,b\n-\nb\na,b\n"


@pytest.mark.parametrize("name", FIXTURES)
@pytest.mark.parametrize("fmt", ["json", "lines"])
def test_fixture_round_trip(name, fmt):
    F = load_fixture(name)
    text = serialize_family(F, fmt)
    assert parse_family(text) == F
    assert serialize_family(parse_family(text), fmt) == text


def test_children_keep_item_names():
    F = load_fixture("f_ex")
    for c in children(F, F.state("adf")):
        G = parse_family(serialize_family(c.family))
        assert G == c.family
        assert set(G.domain.items) <= set("bceg")


def test_generated_round_trip():
    for seed in range(20):
        F = oracle.random_learning_space(oracle.GeneratorConfig(8, 30, seed))
        assert parse_family(serialize_family(F, "lines")) == F


@given(st.integers(1, 6).flatmap(lambda n: st.tuples(st.just(n), st.sets(st.integers(0, (1 << n) - 1), min_size=1))))
def test_round_trip_property(n_masks):
    n, masks = n_masks
    F = SetFamily(ItemDomain(tuple(f"item{i}" for i in range(n))), tuple(masks))
    for fmt in ("json", "lines"):
        assert parse_family(serialize_family(F, fmt)) == F
