import argparse

from berklab import __version__
from berklab.errors import ConfigError

SUBCOMMANDS = (
    "reduce", "pgr", "green", "apriori", "equidist", "roots", "laplacian-check"
)


class BerklabArgumentParser(argparse.ArgumentParser):
    """
    Argument parser whose usage errors become ConfigError, so they reach
    the caller as error JSON instead of a bare usage message.
    """

    def error(self, message):
        raise ConfigError(f'{self.prog}: {message}')


class BerklabCLI:

    description = 'Berkovich line dynamics experiments over Q_p and F_p(t)'

    def __init__(self):
        self.parser = BerklabArgumentParser(prog='berklab', description=self.description)
        self.add_arguments_to_parser(self.parser)

    def add_arguments_to_parser(self, parser):

        parser.add_argument(
            'command', choices=SUBCOMMANDS, help='experiment to run')
        parser.add_argument(
            '--version', action='version', version=f'berklab {__version__}')

        # Inputs - maps
        parser.add_argument(
            '--cfg', type=str, dest='config_file', default=None,
            help='YAML experiment configuration')
        parser.add_argument('--f', type=str, help='map-spec JSON of f')
        parser.add_argument('--g', type=str, help='map-spec JSON of g, default z')

        # Inputs - tree and ranges
        parser.add_argument('--depth', type=int, help='unit tree depth')
        parser.add_argument('--nmin', type=int, help='first iterate')
        parser.add_argument('--nmax', type=int, help='last iterate')
        parser.add_argument('--n-ref', type=int, dest='n_ref',
                            help='iterate of the reference pullback')
        parser.add_argument('--tolerance', type=str,
                            help='Green function tolerance, a rational')

        # Search
        parser.add_argument('--pgr-depth', type=int, dest='pgr_depth',
                            help='radius window of the good reduction search')
        parser.add_argument('--pgr-denom', type=int, dest='pgr_denom',
                            help='denominator of the radius exponents')

        # Output and execution
        parser.add_argument('--out', type=str, help='output file, default stdout')
        parser.add_argument('--format', type=str, choices=['json', 'csv'])
        parser.add_argument('--threads', type=int,
                            help='worker threads, overrides BERKLAB_THREADS')
        parser.add_argument('--log-file', type=str, dest='log_dir', default=None,
                            help='directory for a timestamped log file')
        parser.add_argument('--log-level', type=str, dest='log_level',
                            default='INFO', help='logging level')

        parser.set_defaults(config_file=None)

    def parse_args(self, argv=None):
        return self.parser.parse_args(argv)

    @staticmethod
    def overrides(args) -> dict:
        keys = ('f', 'g', 'depth', 'nmin', 'nmax', 'n_ref', 'tolerance',
                'pgr_depth', 'pgr_denom', 'out', 'format', 'threads')
        return {k: getattr(args, k) for k in keys}
