import os
import json
import logging
import pathlib
from typing import Any, Dict, List, Union

import pandas as pd

from berklab.dynamics.rational_map import RationalMap
from berklab.errors import ConfigError, OutputError
from berklab.valued.fields import FieldSpec, field_from_dict
from berklab.valued.polynomials import Poly

__all__ = [
    "read_map_spec", "map_from_spec", "to_json", "to_csv", "write_json",
    "save_table"
]

# -------------------------------------------------------------------------------
# Read Methods
# -------------------------------------------------------------------------------


def map_from_spec(spec: Dict[str, Any], field: FieldSpec = None) -> RationalMap:
    """
    Build a map from {"field": {...}, "numerator": [...], "denominator": [...]},
    coefficients as strings in ascending degree.
    """
    if not isinstance(spec, dict):
        raise ConfigError('map spec must be a JSON object')
    missing = [k for k in ("numerator", "denominator") if k not in spec]
    if field is None:
        if "field" not in spec:
            missing.insert(0, "field")
        else:
            field = field_from_dict(spec["field"])
    if missing:
        raise ConfigError(f'map spec misses {missing}')
    numerator = Poly.parse(field, _coefficients(spec, "numerator"))
    denominator = Poly.parse(field, _coefficients(spec, "denominator"))
    return RationalMap.from_fraction(numerator, denominator)


def _coefficients(spec: Dict[str, Any], key: str) -> List[str]:
    entries = spec[key]
    if not isinstance(entries, list) or not entries:
        raise ConfigError(f'{key} must be a non-empty list of coefficients, got {entries!r}')
    bad = [c for c in entries if isinstance(c, bool) or not isinstance(c, (str, int))]
    if bad:
        raise ConfigError(f'{key} coefficients must be strings or integers, got {bad!r}')
    return [str(c) for c in entries]


def read_map_spec(filename: str) -> RationalMap:
    """
    Read a map-spec file; the format is picked from the suffix.
    """
    if not os.path.isfile(filename):
        raise ConfigError(f'map spec {filename} not found')
    suffix = pathlib.Path(filename).suffix

    # choose which file to read from here
    engines = {
        '.json': _read_json,
    }
    if suffix not in engines:
        raise ConfigError(f'map spec suffix {suffix} not supported')
    rmap = map_from_spec(engines[suffix](filename))
    logging.info(f'Read degree {rmap.degree} map from {filename}')
    return rmap


def _read_json(filename: str):
    try:
        with open(filename) as fh:
            return json.load(fh)
    except (json.JSONDecodeError, UnicodeDecodeError) as err:
        raise ConfigError(f'malformed JSON in {filename}: {err}')
    except OSError as err:
        raise ConfigError(f'could not read {filename}: {err}')

# -------------------------------------------------------------------------------
# Output Methods
# -------------------------------------------------------------------------------


def to_json(payload: Dict[str, Any]) -> str:
    """Sorted keys and fixed indentation, identical for identical payloads."""
    return json.dumps(payload, sort_keys=True, indent=2) + "\n"


def write_json(payload: Dict[str, Any], filename: str):
    with open(filename, 'w') as fh:
        fh.write(to_json(payload))


def to_csv(table: pd.DataFrame, payload: Union[Dict[str, Any], None] = None) -> str:
    """
    CSV text of the table; version and config go into leading comment lines.
    """
    header = ""
    if payload is not None:
        header = f'# berklab {payload.get("version")} {payload.get("command")}\n'
        header += "# config: " + json.dumps(payload.get("config"), sort_keys=True) + "\n"
    return header + table.to_csv(index=False, lineterminator="\n")


def _save_csv(table: pd.DataFrame, payload, filename: str):
    with open(filename, 'w') as fh:
        fh.write(to_csv(table, payload))


def _save_json(table: pd.DataFrame, payload, filename: str):
    write_json(payload if payload is not None
               else {"rows": table.to_dict(orient="records")}, filename)


def save_table(table: pd.DataFrame, filename: str,
               payload: Union[Dict[str, Any], None] = None,
               fmt: Union[str, None] = None):
    """
    Save a result table based on suffix, or on fmt when given; JSON output
    writes payload (exact rationals) when given, otherwise the table records.
    """
    suffix = f'.{fmt}' if fmt else pathlib.Path(filename).suffix
    engines = {
        '.csv': _save_csv,
        '.json': _save_json,
    }
    if suffix not in engines:
        raise ConfigError(f'output suffix {suffix} not supported, use .csv or .json')
    try:
        engines[suffix](table, payload, filename)
    except OSError as err:
        raise OutputError(f'could not write {filename}: {err}')
    logging.info(f'Saved {filename}')
