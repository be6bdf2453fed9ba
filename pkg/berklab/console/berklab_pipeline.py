# -*- coding: utf-8 -*-
# berklab pipeline: reduction, good reduction search, potentials and
# equidistribution experiments.

import sys
import logging
from fractions import Fraction
from typing import Any, Dict, List, Tuple

import pandas as pd
from dask import delayed
from tqdm import tqdm

from berklab import __version__, engine
from berklab.berkovich.points import ClassicalPoint, TypeIIPoint
from berklab.berkovich.tree import FiniteTree, unit_tree
from berklab.console.cli import BerklabCLI
from berklab.console.config import config_to_dict, load_config
from berklab.decorators import measure_time
from berklab.dynamics.rational_map import RationalMap, normalize
from berklab.dynamics.reduction import (
    GoodReductionFound, good_reduction, pgr_search, reduce, resultant_objective
)
from berklab.errors import BerklabError, CertificationError, ConfigError
from berklab.io import read_map_spec, save_table, to_csv, to_json
from berklab.measures.equilibrium import reference_measure
from berklab.measures.experiment import equidist_experiment
from berklab.measures.identities import check_affine_log, check_divisor_identity
from berklab.potential.apriori import apriori_sequence
from berklab.potential.functions import Target
from berklab.potential.green import green
from berklab.utils import create_logfile, decimal6, setup_logging
from berklab.valued.fields import format_val
from berklab.valued.newton import (
    count_roots_by_valuation, count_roots_in_disk, distinct_root_count,
    newton_polygon
)

__author__ = "berklab developers"
__status__ = "Development"

Result = Tuple[Dict[str, Any], pd.DataFrame]


# -----------------------------------------------------------------------------
# Inputs
# -----------------------------------------------------------------------------
def _map_f(conf) -> RationalMap:
    if not conf.f:
        raise ConfigError('this command needs a map, pass --f <map-spec.json>')
    return read_map_spec(conf.f)


def _target(conf, f: RationalMap) -> Target:
    if not conf.g:
        return RationalMap.identity(f.field)
    g = read_map_spec(conf.g)
    if g.field != f.field:
        raise ConfigError('f and g must be defined over the same field')
    return g


def _tree(conf, field) -> FiniteTree:
    if conf.tree:
        return FiniteTree.from_points(TypeIIPoint.parse(field, t) for t in conf.tree)
    return unit_tree(field, conf.depth, infinity_side=conf.infinity_side)


def _points(texts: List[str], field, default: List[TypeIIPoint]) -> List[TypeIIPoint]:
    return [TypeIIPoint.parse(field, t) for t in texts] if texts else list(default)


def _tolerance(conf) -> Fraction:
    try:
        tolerance = Fraction(str(conf.tolerance))
    except (ValueError, ZeroDivisionError):
        raise ConfigError(f'tolerance {conf.tolerance} is not a rational')
    if tolerance <= 0:
        raise ConfigError('tolerance must be positive')
    return tolerance


# -----------------------------------------------------------------------------
# Steps
# -----------------------------------------------------------------------------
@measure_time
def run_reduce(conf) -> Result:
    f = _map_f(conf)
    fn = normalize(f)
    report = reduce(fn)
    vres = resultant_objective(f)
    result = {
        "map": f.to_dict(),
        "normalized": fn.to_dict(),
        "reduction": report.to_dict(),
        "resultant_valuation": format_val(vres),
        "good_reduction": good_reduction(f),
    }
    table = pd.DataFrame([{
        "degree": report.degree, "reduced_degree": report.reduced_degree,
        "cancelled_degree": report.cancelled_degree,
        "infinity_drop": report.infinity_drop,
        "resultant_valuation": format_val(vres),
        "good_reduction": result["good_reduction"],
    }])
    return result, table


@measure_time
def run_pgr(conf) -> Result:
    f = _map_f(conf)
    verdict = pgr_search(f, conf.pgr_depth, conf.pgr_denom)
    stats = verdict.stats
    result = {"map": f.to_dict(), "verdict": verdict.to_dict()}
    table = pd.DataFrame([{
        "verdict": type(verdict).__name__,
        "point": verdict.point.format() if isinstance(verdict, GoodReductionFound) else "",
        "visited": stats.visited, "pruned": stats.pruned,
        "best_objective": format_val(stats.best_objective),
        "best_point": stats.best_point.format(),
    }])
    return result, table


@measure_time
def run_green(conf) -> Result:
    f = _map_f(conf)
    tolerance = _tolerance(conf)
    points = _points(conf.points, f.field, _tree(conf, f.field).ordered)
    tasks = [delayed(green)(f, S, tolerance) for S in points]
    approximations = engine.compute(tasks, conf.threads)
    rows = [{"point": S.format(), **a.to_dict(), "value_decimal": decimal6(a.value)}
            for S, a in zip(points, approximations)]
    result = {"map": f.to_dict(), "tolerance": format_val(tolerance), "values": rows}
    return result, pd.DataFrame(
        rows, columns=["point", "value", "value_decimal", "n_used", "bound", "strategy"])


@measure_time
def run_apriori(conf) -> Result:
    f = _map_f(conf)
    g = _target(conf, f)
    samples = _points(conf.samples, f.field, _tree(conf, f.field).ordered)
    terms = apriori_sequence(
        f, g, samples, conf.nmax, conf.nmin, skip_identical=True,
        n_workers=conf.threads)
    present = {t.n for t in terms}
    rows = [{**t.to_dict(), "s_n_decimal": decimal6(t.value)} for t in terms]
    result = {
        "map": f.to_dict(), "target": g.to_dict(),
        "samples": [S.format() for S in samples],
        "terms": rows,
        "skipped": [n for n in range(conf.nmin, conf.nmax + 1) if n not in present],
    }
    return result, pd.DataFrame(
        rows, columns=["n", "s_n", "s_n_decimal", "normalizer", "argmax"])


@measure_time
def run_equidist(conf) -> Result:
    f = _map_f(conf)
    g = _target(conf, f)
    tree = _tree(conf, f.field)
    verdict = pgr_search(f, conf.pgr_depth, conf.pgr_denom)
    reference, info = reference_measure(
        f, tree, verdict, conf.n_ref,
        ClassicalPoint.parse(f.field, conf.base_point),
        _tolerance(conf), conf.max_subdivision)
    report = equidist_experiment(
        f, g, tree, range(conf.nmin, conf.nmax + 1), reference, verdict, info,
        n_workers=conf.threads)
    result = {"map": f.to_dict(), "target": g.to_dict(), "tree": tree.format(),
              **report.to_dict()}
    return result, report.to_frame()


@measure_time
def run_roots(conf) -> Result:
    f = _map_f(conf)
    tree = _tree(conf, f.field)
    P, Q = f.f0.affine(), f.f1.affine()

    def profile(poly):
        return {
            "coefficients": poly.format(),
            "newton_polygon": [[format_val(s), k] for s, k in newton_polygon(poly)],
            "root_valuations": {format_val(v): k
                                for v, k in count_roots_by_valuation(poly).items()},
            "distinct_roots": distinct_root_count(poly) if poly.degree > 0 else 0,
        }

    rows = [{"vertex": v.format(),
             "zeros": count_roots_in_disk(P, v.center, v.m),
             "poles": count_roots_in_disk(Q, v.center, v.m)} for v in tree.ordered]
    result = {"map": f.to_dict(), "numerator": profile(P),
              "denominator": profile(Q), "disks": rows}
    return result, pd.DataFrame(rows, columns=["vertex", "zeros", "poles"])


@measure_time
def run_laplacian_check(conf) -> Result:
    f = _map_f(conf)
    g = _target(conf, f)
    tree = _tree(conf, f.field)
    checks = [check_affine_log(f.field, max(conf.depth, 1))]
    n_range = range(max(conf.nmin, 1), conf.nmax + 1)
    checks += [check_divisor_identity(f, g, n, tree, conf.max_subdivision)
               for n in tqdm(n_range, desc="divisor identity", file=sys.stderr)]
    failed = [c for c in checks if not c.holds]
    if failed:
        raise CertificationError(
            'Laplacian identities fail: ' + ', '.join(
                f'{c.name} (n={c.n}, deviation {format_val(c.max_deviation)})'
                for c in failed))
    rows = [{"name": c.name, "n": c.n, "holds": c.holds,
             "max_deviation": format_val(c.max_deviation)} for c in checks]
    result = {"map": f.to_dict(), "tree": tree.format(),
              "checks": [c.to_dict() for c in checks]}
    return result, pd.DataFrame(rows, columns=["name", "n", "holds", "max_deviation"])


STEPS = {
    "reduce": run_reduce,
    "pgr": run_pgr,
    "green": run_green,
    "apriori": run_apriori,
    "equidist": run_equidist,
    "roots": run_roots,
    "laplacian-check": run_laplacian_check,
}


# -----------------------------------------------------------------------------
# Output
# -----------------------------------------------------------------------------
def error_payload(err: Exception) -> Dict[str, Any]:
    return {
        "error": {
            "code": getattr(err, "code", "invalid_argument"),
            "type": type(err).__name__,
            "message": str(err),
        },
        "version": __version__,
    }


def emit(command: str, conf, result: Dict[str, Any], table: pd.DataFrame):
    payload = {
        "version": __version__,
        "command": command,
        "config": config_to_dict(conf),
        "result": result,
    }
    if conf.out:
        save_table(table, conf.out, payload, fmt=conf.format)
    elif conf.format == "csv":
        sys.stdout.write(to_csv(table, payload))
    else:
        sys.stdout.write(to_json(payload))


# -----------------------------------------------------------------------------
# main
#
# berklab <command> --f configs/z2_plus_third_q3.json [options]
# -----------------------------------------------------------------------------
def main(argv=None) -> int:

    # Process command-line args and configuration.
    cli = BerklabCLI()
    try:
        args = cli.parse_args(argv)
        try:
            setup_logging(str(args.log_level).upper())
        except ValueError as err:
            raise ConfigError(f'unknown log level {args.log_level}: {err}')
        if args.log_dir:
            create_logfile(args.log_dir)
        conf = load_config(args.config_file, cli.overrides(args))
    except ConfigError as err:
        sys.stdout.write(to_json(error_payload(err)))
        return 2

    # Execute pipeline step
    try:
        result, table = STEPS[args.command](conf)
        emit(args.command, conf, result, table)
    except ConfigError as err:
        logging.error(str(err))
        sys.stdout.write(to_json(error_payload(err)))
        return 2
    except (BerklabError, ValueError, TypeError, OSError) as err:
        logging.error(f'{type(err).__name__}: {err}')
        sys.stdout.write(to_json(error_payload(err)))
        return 1
    return 0


# -----------------------------------------------------------------------------
# Invoke the main
# -----------------------------------------------------------------------------
if __name__ == "__main__":
    sys.exit(main())
