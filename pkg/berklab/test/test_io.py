import json
import os
from fractions import Fraction

import pandas as pd
import pytest

from berklab import io
from berklab.errors import CoefficientParseError, ConfigError, OutputError
from berklab.valued import LaurentField, PAdicField

__status__ = "Test"

CONFIGS = os.path.join(os.path.dirname(__file__), "..", "..", "configs")

Z2_PLUS_THIRD = {
    "field": {"kind": "Qp", "p": 3},
    "numerator": ["1/3", "0", "1"],
    "denominator": ["1"],
}


def test_map_from_spec():
    f = io.map_from_spec(Z2_PLUS_THIRD)
    assert f.field == PAdicField(3)
    assert f.degree == 2
    assert f.f0.coeffs == (Fraction(1, 3), 0, 1)


def test_map_from_spec_errors():
    with pytest.raises(ConfigError):
        io.map_from_spec([1, 2])
    with pytest.raises(ConfigError):
        io.map_from_spec({"numerator": ["1"], "denominator": ["1"]})
    with pytest.raises(ConfigError):
        io.map_from_spec({"field": {"kind": "Qp", "p": 3}, "numerator": ["1"]})
    with pytest.raises(CoefficientParseError):
        io.map_from_spec({**Z2_PLUS_THIRD, "numerator": ["one"]})
    with pytest.raises(ConfigError):
        io.map_from_spec({**Z2_PLUS_THIRD, "numerator": "1/3,0,1"})
    with pytest.raises(ConfigError):
        io.map_from_spec({**Z2_PLUS_THIRD, "denominator": [None]})


def test_map_from_spec_integer_coefficients():
    f = io.map_from_spec({**Z2_PLUS_THIRD, "numerator": [0, 0, 1], "denominator": [1]})
    assert f.f0.coeffs == (0, 0, 1)


@pytest.mark.parametrize('name, field, degree', [
    ("z2_q3.json", PAdicField(3), 2),
    ("cubic_q3.json", PAdicField(3), 3),
    ("identity_q3.json", PAdicField(3), 1),
    ("additive_f2t.json", LaurentField(2), 2),
])
def test_read_shipped_specs(name, field, degree):
    f = io.read_map_spec(os.path.join(CONFIGS, name))
    assert f.field == field
    assert f.degree == degree


def test_read_map_spec_errors(tmp_path):
    with pytest.raises(ConfigError):
        io.read_map_spec(str(tmp_path / "missing.json"))
    malformed = tmp_path / "malformed.json"
    malformed.write_text('{"field": {"kind": "Qp", "p": 3}, "numerator": [')
    with pytest.raises(ConfigError):
        io.read_map_spec(str(malformed))
    wrong_suffix = tmp_path / "map.txt"
    wrong_suffix.write_text(json.dumps(Z2_PLUS_THIRD))
    with pytest.raises(ConfigError):
        io.read_map_spec(str(wrong_suffix))


def test_to_json_is_canonical():
    a = io.to_json({"b": 1, "a": {"y": "1/3", "x": [1, 2]}})
    b = io.to_json({"a": {"x": [1, 2], "y": "1/3"}, "b": 1})
    assert a == b
    assert a.endswith("}\n")
    assert a.index('"a"') < a.index('"b"')


def test_to_csv_header():
    table = pd.DataFrame([{"n": 1, "tv": "2/3"}, {"n": 2, "tv": "4/5"}])
    text = io.to_csv(table, {"version": "1.0", "command": "equidist", "config": {"nmax": 2}})
    lines = text.splitlines()
    assert lines[0] == "# berklab 1.0 equidist"
    assert lines[1] == '# config: {"nmax": 2}'
    assert lines[2:] == ["n,tv", "1,2/3", "2,4/5"]
    assert io.to_csv(table).splitlines()[0] == "n,tv"


def test_save_table(tmp_path):
    table = pd.DataFrame([{"n": 1, "tv": "2/3"}])
    payload = {"version": "1.0", "command": "equidist", "config": {}, "result": {"rows": []}}

    io.save_table(table, str(tmp_path / "out.csv"), payload)
    assert (tmp_path / "out.csv").read_text().startswith("# berklab 1.0 equidist\n")

    io.save_table(table, str(tmp_path / "out.json"), payload)
    assert json.loads((tmp_path / "out.json").read_text()) == payload

    io.save_table(table, str(tmp_path / "records.dat"), fmt="json")
    assert json.loads((tmp_path / "records.dat").read_text()) == \
        {"rows": [{"n": 1, "tv": "2/3"}]}

    with pytest.raises(ConfigError):
        io.save_table(table, str(tmp_path / "out.parquet"))


def test_save_table_unwritable(tmp_path):
    table = pd.DataFrame([{"n": 1, "tv": "2/3"}])
    with pytest.raises(OutputError):
        io.save_table(table, str(tmp_path / "missing" / "out.csv"))
