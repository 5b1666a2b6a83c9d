import jsonschema
import pytest

from g1tloewy.alcove import identity, locate
from g1tloewy.halfpoly import HalfPoly
from g1tloewy.loewy import (
    ConventionViolation,
    _assemble,
    layer_table_schema,
    parabolic_loewy_length,
    parabolic_table,
    projective_loewy_length,
    singular_roots,
    twisted_verma_loewy_length,
    verma_loewy_length,
    verma_table,
)

# frozen after agreement with the brute-force SL3 character decomposition (test_sl3_characters)
A2_REGULAR_LAYERS = [
    [((0, 0), 1)],
    [((-2, 1), 1), ((1, -2), 1)],
    [((-10, 2), 1), ((-5, -5), 1), ((-3, 0), 1), ((0, -3), 1), ((2, -10), 1)],
    [((-2, -2), 1)],
]


def test_a2_regular_table(A2):
    tb = verma_table(A2, (0, 0), 5)
    assert tb.weight_layers() == A2_REGULAR_LAYERS
    assert tb.loewy_length == tb.declared_length == 4
    assert [(lab.weight, m) for lab, m in tb.head] == [((-2, -2), 1)]
    assert tb.radical_series()[0] == tb.head


def test_b2_regular_table(B2):
    tb = verma_table(B2, (0, 0), 5)
    assert tb.loewy_length == 5
    assert sum(tb.multiplicities().values()) == 20
    assert len(tb.head) == 1


def test_lengths(A1, A2, B2):
    assert verma_loewy_length(A2, (0, 0), 5) == 4
    assert projective_loewy_length(A2, (0, 0), 5) == 7
    assert twisted_verma_loewy_length(A2, (0, 0), 5) == 4
    assert verma_loewy_length(A1, (4,), 5) == 1
    assert projective_loewy_length(A1, (4,), 5) == 1
    assert parabolic_loewy_length(A2, (0,), (0, 0), 5) == 3
    assert parabolic_loewy_length(B2, (0, 1), (0, 0), 5) == 1
    assert singular_roots(B2, (-1, -1), 5) == frozenset(B2.positive_roots)


def test_parabolic_a2_one_root(A2):
    tb = parabolic_table(A2, (0,), (0, 0), 5)
    assert tb.loewy_length == tb.declared_length == 3
    assert tb.socle[0][0].weight == (0, 0)


def test_schema_and_renderings(A2):
    tb = verma_table(A2, (4, 0), 5)
    doc = tb.to_json()
    jsonschema.validate(doc, layer_table_schema())
    assert doc["metadata"]["singularity_count"] == 1
    assert "singular_rows" in doc["metadata"]
    lines = tb.to_csv().strip().split("\n")
    assert lines[0] == "layer,weight,weight0,weight1,multiplicity"
    assert len(lines) - 1 == sum(len(layer) for layer in tb.layers)
    text = tb.pretty()
    for layer in tb.layers:
        for lab, _ in layer:
            assert "(" + ",".join(map(str, lab.weight)) + ")" in text


def test_negative_multiplicity_is_a_violation(A1):
    x, nu0 = locate((1,), 5, A1)
    with pytest.raises(ConventionViolation):
        _assemble(A1, (1,), 5, x, nu0, [(x, HalfPoly({0: -1}))], 2, {}, {})
    with pytest.raises(ConventionViolation):
        _assemble(A1, (1,), 5, x, nu0, [(identity(A1), HalfPoly({0: 1, 4: 1}))], 2, {}, {})


def test_p_must_exceed_coxeter_number(B2):
    with pytest.raises(ValueError):
        verma_table(B2, (0, 0), 3)
