import csv
import io
import json

import pytest

from rcfactorial.agm import expand, validate_agm
from rcfactorial.constructions import build
from rcfactorial.errors import AGMParseError, RankDeficient
from rcfactorial.fileio import cell_text, design_to_csv, design_to_json, format_agm, parse_agm

from .golden import FIXTURES, G_S3_P3Q2


def example_text():
    rows = [" ".join(map(str, r)) for r in G_S3_P3Q2]
    # comment and blank lines are allowed anywhere
    return "\n".join(["# resolution IV example", "3 3 2 7", *rows[:3], "", *rows[3:]]) + "\n"


def test_parse_with_comments_and_blank_lines():
    agm = parse_agm(example_text())
    assert agm.g.tolist() == G_S3_P3Q2


def test_format_round_trip():
    for key, g in FIXTURES.items():
        _, s, p, q, _ = key
        agm = validate_agm(s, p, q, g)
        text = format_agm(agm)
        assert text.endswith("\n")
        assert parse_agm(text) == agm
        assert format_agm(parse_agm(text)) == text


@pytest.mark.parametrize(
    "text, line, column",
    [
        ("", 1, None),
        ("3 3 2\n", 1, None),
        ("3 1 1 x\n", 1, 7),
        ("3 1 1 2\n1 0\n0 7\n", 3, 3),
        ("3 1 1 2\n1 0\n0 1 1\n", 3, None),
        ("# c\n3 1 1 2\n1 0\n", 4, None),
        ("3 1 1 2\n1 0\n0 1\n1 1\n", 4, None),
        ("3 1 1 2\n1  a\n0 1\n", 2, 4),
    ],
)
def test_parse_errors_carry_location(text, line, column):
    with pytest.raises(AGMParseError) as exc:
        parse_agm(text)
    assert exc.value.line == line
    assert exc.value.column == column
    assert f"line {line}" in str(exc.value)


def test_parse_validates_rank():
    with pytest.raises(RankDeficient):
        parse_agm("3 1 1 2\n1 1\n2 2\n")


def test_cell_text():
    assert cell_text([0, 1, 2], 3) == "012"
    assert cell_text([10, 0, 3], 11) == "10,0,3"


def test_csv_export():
    d = expand(build(3, 1, 2, "full"))
    rows = list(csv.reader(io.StringIO(design_to_csv(d))))
    assert len(rows) == 3 and all(len(r) == 9 for r in rows)
    assert rows[0][0] == "000"
    assert len({c for r in rows for c in r}) == 27


def test_csv_export_large_prime_quotes_cells():
    d = expand(validate_agm(11, 1, 1, [[1, 0], [0, 1]]))
    text = design_to_csv(d)
    rows = list(csv.reader(io.StringIO(text)))
    assert rows[0][0] == "0,0"
    assert rows[10][10] == "10,10"


def test_json_export():
    d = expand(build(3, 1, 2, "frac1"))
    payload = json.loads(json.dumps(design_to_json(d)))
    assert (payload["s"], payload["n"], payload["k"]) == (3, 4, 1)
    assert len(payload["cells"]) == 3 and len(payload["cells"][0]) == 9
    assert payload["cells"][0][0] == [0, 0, 0, 0]
