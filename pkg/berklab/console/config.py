"""
Experiment configuration: dataclass defaults < YAML file < command line.
"""
import logging
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional

from omegaconf import OmegaConf
from omegaconf.errors import OmegaConfBaseException

from berklab.errors import ConfigError
from berklab.utils import read_config

__all__ = ["ExperimentConfig", "load_config", "config_to_dict"]

FORMATS = ("json", "csv")


@dataclass
class ExperimentConfig:

    # maps, g omitted means g(z) = z
    f: Optional[str] = None
    g: Optional[str] = None

    # tree: explicit vertices "D(a; m)" or the unit tree of the given depth
    depth: int = 2
    tree: List[str] = field(default_factory=list)
    infinity_side: bool = False

    # iteration range and reference measure
    nmin: int = 1
    nmax: int = 8
    n_ref: int = 10
    base_point: str = "1"

    # evaluation points, empty means the tree vertices
    samples: List[str] = field(default_factory=list)
    points: List[str] = field(default_factory=list)

    # potentially good reduction search
    pgr_depth: int = 3
    pgr_denom: int = 2

    # Green function and Laplacian resolution
    tolerance: str = "1/1000"
    max_subdivision: int = 12

    # output
    out: Optional[str] = None
    format: str = "json"
    threads: Optional[int] = None


def load_config(config_file: Optional[str] = None,
                overrides: Optional[Dict[str, Any]] = None):
    """
    Merge the structured defaults, an optional YAML file and the explicit
    command-line values (None entries are ignored).
    :return: DictConfig typed by ExperimentConfig
    """
    conf = OmegaConf.structured(ExperimentConfig)
    try:
        if config_file is not None:
            conf = OmegaConf.merge(conf, read_config(config_file))
        explicit = {k: v for k, v in (overrides or {}).items() if v is not None}
        if explicit:
            conf = OmegaConf.merge(conf, explicit)
    except OmegaConfBaseException as err:
        raise ConfigError(f'invalid configuration: {err}')
    _validate(conf)
    logging.debug(f'Configuration:\n{OmegaConf.to_yaml(conf)}')
    return conf


def _validate(conf):
    if conf.format not in FORMATS:
        raise ConfigError(f'format {conf.format} not in {FORMATS}')
    if conf.depth < 0:
        raise ConfigError('depth must be >= 0')
    if conf.nmin < 0 or conf.nmax < conf.nmin - 1:
        raise ConfigError(f'invalid n range [{conf.nmin}, {conf.nmax}]')
    if conf.pgr_depth < 0 or conf.pgr_denom < 1:
        raise ConfigError('pgr_depth must be >= 0 and pgr_denom >= 1')
    if conf.threads is not None and conf.threads < 1:
        raise ConfigError('threads must be >= 1')


def config_to_dict(conf) -> Dict[str, Any]:
    """Plain dict of the merged config, every default explicit."""
    return OmegaConf.to_container(conf, resolve=True)
