import os
import sys
import logging
from datetime import datetime  # tracking date
from fractions import Fraction
from typing import Union

from omegaconf import OmegaConf
from omegaconf.errors import OmegaConfBaseException
from yaml import YAMLError

from berklab.decorators import DuplicateFilter
from berklab.errors import ConfigError

# -------------------------------------------------------------------------------
# module utils
# Logging setup, configuration reading and rational formatting
# -------------------------------------------------------------------------------

LOG_FORMAT = "%(asctime)s; %(levelname)s; %(message)s"
LOG_DATEFMT = "%Y-%m-%d %H:%M:%S"


# -------------------------------------------------------------------------------
# Logging
# -------------------------------------------------------------------------------
def setup_logging(level: Union[int, str] = logging.INFO) -> logging.Logger:
    """
    Configure the root logger once: stderr stream handler with duplicate
    suppression. stdout is left to the machine readable output.
    :param level: logging level
    :return: root logger
    """
    logger = logging.getLogger()
    logger.setLevel(level)
    ours = [h for h in logger.handlers if getattr(h, '_berklab', False)]
    for h in ours:
        h.setLevel(level)
    if not ours:
        ch = logging.StreamHandler(sys.stderr)
        ch.setLevel(level)
        ch.setFormatter(logging.Formatter(LOG_FORMAT, datefmt=LOG_DATEFMT))
        ch.addFilter(DuplicateFilter())
        ch._berklab = True
        logger.addHandler(ch)
    return logger


def create_logfile(logdir: str = 'results') -> str:
    """
    Duplicate the log into a timestamped file.
    :param logdir: log directory to store log file
    :return: path of the log file
    """
    logfile = os.path.join(logdir, '{}_log.out'.format(
        datetime.now().strftime("%Y%m%d-%H%M%S"))
    )
    try:
        os.makedirs(logdir, exist_ok=True)
        fh = logging.FileHandler(logfile)
    except OSError as err:
        raise ConfigError(f'cannot open log file in {logdir}: {err}')
    fh.setFormatter(logging.Formatter(LOG_FORMAT, datefmt=LOG_DATEFMT))
    fh.addFilter(DuplicateFilter())
    logging.getLogger().addHandler(fh)
    logging.info(f'See {logfile}')
    return logfile


# -------------------------------------------------------------------------------
# Configuration
# -------------------------------------------------------------------------------
def read_config(fname: str):
    """
    Read YAML configuration file.
    :params fname: filename of configuration file
    :return: DictConfig with configuration parameters
    """
    if not os.path.isfile(fname):
        raise ConfigError(f'configuration file {fname} not found')
    try:
        config_file = OmegaConf.load(fname)
    except (OmegaConfBaseException, YAMLError) as err:
        raise ConfigError(f'could not parse {fname}: {err}')
    logging.info('Configuration file read.')
    return config_file


# -------------------------------------------------------------------------------
# Formatting
# -------------------------------------------------------------------------------
def decimal6(x: Fraction) -> str:
    """Exact decimal rendering at 6 places, ties to even."""
    q = round(Fraction(x) * 10 ** 6)
    sign = '-' if q < 0 else ''
    q = abs(q)
    return f'{sign}{q // 10 ** 6}.{q % 10 ** 6:06d}'
