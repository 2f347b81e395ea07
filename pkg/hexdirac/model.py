"""
Run object and command line entry point of hexdirac.

@Project: hexdirac 0.1

License:  BSD 2-Clause
"""

import argparse
import logging
import os
import sys

from hexdirac.configurations import ConfigRunner
from hexdirac.data_reader.ini_reader import COMMANDS, ConfigReader, ValidationException
from hexdirac.data_writer.out_writer import write_error
from hexdirac.utils.errors import AcceptanceFailure, NumericalFailure

EXIT_OK = 0
EXIT_INTERNAL = 1
EXIT_CONFIG = 2
EXIT_NUMERICAL = 3
EXIT_ACCEPTANCE = 4

LOG_FORMAT = '%(levelname)s: %(message)s'
LOG_FILE = 'logfile.log'


class HexDirac:
    """
    Numerical laboratory for strained honeycomb media.

    Computes Bloch bands and Dirac points of honeycomb media, the effective
    Dirac model of slowly strained media with its pseudo gauge fields, Dirac
    dynamics in Landau and erf gauges, and validates the envelope
    approximation against the full strained continuum model.
    """

    def __init__(self, ini):
        """
        :param ini:     path to the INI configuration of the run
        """
        self.ini = ini
        self.config = None
        self._handlers = []

    def init_log(self):
        """
        Attach run handlers to the root logger: INFO and above to stdout,
        everything to logfile.log in the output folder.
        """
        root = logging.getLogger()
        root.setLevel(logging.DEBUG)
        formatter = logging.Formatter(LOG_FORMAT)

        console = logging.StreamHandler(sys.stdout)
        console.setLevel(logging.INFO)
        to_file = logging.FileHandler(os.path.join(self.config.OutputFolder, LOG_FILE))
        to_file.setLevel(logging.DEBUG)

        for handler in (console, to_file):
            handler.setFormatter(formatter)
            root.addHandler(handler)
            self._handlers.append(handler)

    def stage(self, overrides):
        """
        Parse the configuration, apply overrides and open the run log.

        :param overrides:   dict of [Project] values taking precedence over the file
        """
        self.config = ConfigReader(self.ini)
        self.config.update(overrides)
        os.makedirs(self.config.OutputFolder, exist_ok=True)
        self.init_log()

    def execute(self, overrides=None):
        """
        Run the configured command.

        :param overrides:   dict of [Project] values (Command, OutputFolder, Threads, Seed); None entries are ignored
        :return:            Components holding the stage results
        """
        self.stage(overrides or {})
        self.config.log_info()
        try:
            return ConfigRunner(self.config).run()
        finally:
            self.cleanup()

    def cleanup(self):
        """Detach and close the handlers opened by init_log."""
        logging.info("Finished {} ({})".format(self.config.ProjectName, self.config.Command))
        root = logging.getLogger()
        while self._handlers:
            handler = self._handlers.pop()
            root.removeHandler(handler)
            handler.close()


def build_parser():
    parser = argparse.ArgumentParser(prog='hexdirac', description='Strained honeycomb media laboratory.')
    parser.add_argument('command', choices=COMMANDS, help='Stage to run.')
    parser.add_argument('--config', required=True, help='Full path with file name to INI configuration file.')
    parser.add_argument('--out', default=None, help='Output directory (overrides the configuration).')
    parser.add_argument('--threads', type=int, default=None, help='Maximum number of worker threads.')
    parser.add_argument('--seed', type=int, default=None, help='Seed of the random number generator.')
    return parser


def main(argv=None):
    """Console entry point; returns the process exit code."""
    args = build_parser().parse_args(argv)
    overrides = {'Command': args.command, 'OutputFolder': args.out, 'Threads': args.threads, 'Seed': args.seed}

    hd = HexDirac(args.config)
    try:
        hd.execute(overrides)
        return EXIT_OK
    except ValidationException as e:
        error, code = e, EXIT_CONFIG
    except NumericalFailure as e:
        error, code = e, EXIT_NUMERICAL
    except AcceptanceFailure as e:
        error, code = e, EXIT_ACCEPTANCE
    except Exception as e:
        logging.exception("Unexpected failure")
        error, code = e, EXIT_INTERNAL

    folder = hd.config.OutputFolder if hd.config is not None else (args.out or '.')
    write_error(folder, error, code)
    sys.stderr.write('{}: {}\n'.format(type(error).__name__, error))
    return code


if __name__ == "__main__":

    sys.exit(main())
