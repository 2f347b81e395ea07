"""
Read in settings from configuration file *.ini.

Every section and key is checked against SCHEMA; unknown entries and out of
range values raise ValidationException naming the offending key.

@Project: hexdirac 0.1

License:  BSD 2-Clause
"""

import math
import os
import logging
from types import SimpleNamespace

from configobj import ConfigObj, ConfigObjError

from hexdirac.utils.general import config_hash

COMMANDS = ['bands', 'dirac-point', 'landau', 'strain-fields', 'simulate', 'validate', 'expansion-check']


class ValidationException(Exception):
    """Invalid hexdirac configuration."""

    def __init__(self, *args, **kwargs):
        self.key = kwargs.pop('key', None)
        Exception.__init__(self, *args, **kwargs)


def _scalar(value, key):
    if isinstance(value, list):
        raise ValidationException("'{}' expects a single value, got a list".format(key), key=key)
    return value


def _float(value, key):
    try:
        return float(_scalar(value, key))
    except ValueError:
        raise ValidationException("'{}' must be a number, got '{}'".format(key, value), key=key)


def _int(value, key):
    try:
        return int(_scalar(value, key))
    except ValueError:
        raise ValidationException("'{}' must be an integer, got '{}'".format(key, value), key=key)


def _bool(value, key):
    value = str(_scalar(value, key)).lower()
    if value in ('true', 't', 'yes', 'y', '1'):
        return True
    if value in ('false', 'f', 'no', 'n', '0'):
        return False
    raise ValidationException("'{}' must be a boolean, got '{}'".format(key, value), key=key)


def _str(value, key):
    return str(_scalar(value, key))


def _float_list(value, key):
    value = value if isinstance(value, list) else [value]
    return [_float(v, key) for v in value if str(v).strip() != '']


def _str_list(value, key):
    value = value if isinstance(value, list) else [value]
    return [str(v) for v in value if str(v).strip() != '']


def _positive(x):
    return x > 0


def _non_negative(x):
    return x >= 0


def _even(x):
    return x >= 4 and x % 2 == 0


def _unit_interval(xs):
    return len(xs) > 0 and all(0 < x < 1 for x in xs)


def _choice(*options):
    def check(x):
        return x in options
    return check


def _each(check):
    def inner(xs):
        return len(xs) > 0 and all(check(x) for x in xs)
    return inner


def _pair(xs):
    return len(xs) == 2 and xs[0] < xs[1]


def _amplitudes(xs):
    return len(xs) == 2 and any(x != 0 for x in xs)


# section -> key -> (parser, default, check); default None with a check means required
SCHEMA = {
    'Project': {
        'ProjectName': (_str, None, None),
        'RootDir': (_str, '.', None),
        'OutputFolder': (_str, 'output', None),
        'Command': (_str, None, _choice(*COMMANDS)),
        'Seed': (_int, 0, _non_negative),
        'Threads': (_int, 1, _positive),
        'WriteImages': (_bool, False, None),
    },
    'Medium': {
        'V0': (_float, 10.0, None),
        'scale': (_float, 1.0, _positive),
        'MediumFile': (_str, '', None),
    },
    'Solver': {
        'M': (_int, 12, _positive),
        'nbands': (_int, 6, _positive),
        'samples_per_leg': (_int, 20, _positive),
        'waypoints': (_str_list, ['G', 'K', 'M', 'G'], lambda xs: len(xs) >= 2 and
                      all(x in ('G', 'K', 'Kp', 'M') for x in xs)),
        'deg_tol': (_float, 1e-8, _positive),
        'struct_tol': (_float, 1e-6, _positive),
        'vel_tol': (_float, 1e-8, _positive),
        'sym_tol': (_float, 1e-8, _positive),
        'res_tol': (_float, 1e-8, _positive),
        'origin_search': (_bool, False, None),
    },
    'Cone': {
        'radii': (_float_list, [1e-3, 2e-3, 4e-3], _each(_positive)),
        'directions': (_float_list, [0.0, 120.0, 240.0], lambda xs: len(xs) > 0),
    },
    'Strain': {
        'kind': (_str, 'linear-gauge', _choice('constant', 'linear-gauge', 'erf-gauge')),
        'flavor': (_str, 'schroedinger', _choice('schroedinger', 'wave')),
        'B0': (_float, 1.0, lambda x: x != 0),
        'r_c': (_float, 2.0, _non_negative),
        'w_c': (_float, 1.0, _positive),
        'L1': (_float, 24.0, _positive),
        'L2': (_float, 24.0, _positive),
        'N1': (_int, 128, _even),
        'N2': (_int, 128, _even),
    },
    'Dynamics': {
        'L1': (_float, 32.0, _positive),
        'L2': (_float, 32.0, _positive),
        'N1': (_int, 256, _even),
        'N2': (_int, 256, _even),
        'v': (_float, 1.0, _positive),
        'B0': (_float, 1.0, lambda x: x != 0),
        'gauge': (_str, 'linear', _choice('linear', 'erf', 'free')),
        'family': (_str, 'landau', _choice('landau', 'erf')),
        'r_c': (_float, 8.0, _non_negative),
        'w_c': (_float, 4.0, _positive),
        'k0': (_float, 0.0, None),
        'w': (_float, 0.3, _positive),
        'dt': (_float, 0.01, _positive),
        'T': (_float, 4.0, _non_negative),
        'stride': (_int, 50, _positive),
        'method': (_str, 'strang', _choice('strang', 'rk4')),
        'n_levels': (_int, 4, _non_negative),
        'spectrum_k': (_float, 0.0, None),
        'fidelity_min': (_float, 0.99, lambda x: 0 < x <= 1),
    },
    'Validation': {
        'flavor': (_str, 'schroedinger', _choice('schroedinger', 'wave')),
        'epsilons': (_float_list, [0.1, 0.05], _unit_interval),
        'rho': (_float, 2.0, _positive),
        'envelope_width': (_float, 0.5, _positive),
        'amplitudes': (_float_list, [1.0, 0.0], _amplitudes),
        'points_per_cell': (_int, 8, _even),
        'cells_c': (_float, 7.0, _positive),
        'min_cells': (_int, 12, _positive),
        'max_cells': (_int, 192, _positive),
        'envelope_points': (_int, 64, _even),
        'n_snapshots': (_int, 8, _positive),
        'dt': (_float, 0.02, _positive),
        'env_dt': (_float, 0.01, _positive),
        'krylov_tol': (_float, 1e-9, _positive),
        'krylov_max_dim': (_int, 60, lambda x: x >= 2),
        'ratio_window': (_float_list, [1.5, 2.6], _pair),
        'control': (_bool, True, None),
        'dirac_tol': (_float, 1e-4, _positive),
        'expansion_epsilons': (_float_list, [0.1, 0.05, 0.025], _unit_interval),
        'expansion_cells': (_int, 30, _positive),
        'expansion_width': (_float, 2.0, _positive),
        'expansion_window': (_float_list, [3.6, 4.4], _pair),
    },
}


class ConfigReader:
    """Read the hexdirac configuration .ini file."""

    def __init__(self, ini):
        """
        Load values from configuration file.

        :param ini:     path to the config file
        """
        if not os.path.isfile(ini):
            raise ValidationException("Configuration file '{}' not found".format(ini), key='config')
        try:
            c = ConfigObj(ini, file_error=True)
        except (ConfigObjError, IOError) as e:
            raise ValidationException("Cannot parse '{}': {}".format(ini, e), key='config')

        for section in c.keys():
            if section not in SCHEMA:
                raise ValidationException("Unknown section [{}]".format(section), key=section)
            if not isinstance(c[section], dict):
                raise ValidationException("'{}' must be a section".format(section), key=section)
            for key in c[section].keys():
                if key not in SCHEMA[section]:
                    raise ValidationException("Unknown key '{}' in [{}]".format(key, section), key=key)

        self.document = c.dict()

        p = self.parse_section(c, 'Project', required=('ProjectName',))

        # project dirs
        self.ProjectName = p['ProjectName']
        self.RootDir = p['RootDir']
        self.OutputFolder = os.path.join(self.RootDir, p['OutputFolder'], self.ProjectName)
        self.Command = p['Command']
        self.Seed = p['Seed']
        self.Threads = p['Threads']
        self.WriteImages = p['WriteImages']

        self.Medium = SimpleNamespace(**self.parse_section(c, 'Medium'))
        self.Solver = SimpleNamespace(**self.parse_section(c, 'Solver'))
        self.Cone = SimpleNamespace(**self.parse_section(c, 'Cone'))
        self.Strain = SimpleNamespace(**self.parse_section(c, 'Strain'))
        self.Dynamics = SimpleNamespace(**self.parse_section(c, 'Dynamics'))
        self.Validation = SimpleNamespace(**self.parse_section(c, 'Validation'))

        if self.Validation.min_cells > self.Validation.max_cells:
            raise ValidationException("min_cells exceeds max_cells", key='min_cells')
        eps = self.Validation.epsilons
        if any(a <= b for a, b in zip(eps[:-1], eps[1:])):
            raise ValidationException("epsilons must be strictly descending, got {}".format(eps), key='epsilons')
        d = self.Dynamics
        j = d.spectrum_k * d.L2 / (2.0 * math.pi)
        if abs(j - round(j)) > 1e-9:
            raise ValidationException("spectrum_k = {} is not a multiple of 2 pi / L2".format(d.spectrum_k),
                                      key='spectrum_k')
        if d.gauge == 'erf' and abs(d.spectrum_k) >= 1:
            raise ValidationException("erf zero modes need |spectrum_k| < 1, got {}".format(d.spectrum_k),
                                      key='spectrum_k')
        if self.Medium.MediumFile:
            self.Medium.MediumFile = os.path.join(self.RootDir, self.Medium.MediumFile)

    @staticmethod
    def parse_section(c, name, required=()):
        """Typed, range checked values of one section with defaults filled in."""
        raw = c.get(name, {})
        out = {}
        for key, (parser, default, check) in SCHEMA[name].items():
            if key in raw:
                value = parser(raw[key], key)
            elif key in required:
                raise ValidationException("Missing key '{}' in [{}]".format(key, name), key=key)
            else:
                value = default
            if value is not None and check is not None and not check(value):
                raise ValidationException("Value {!r} of '{}' in [{}] is out of range".format(value, key, name),
                                          key=key)
            out[key] = value
        return out

    @property
    def hash(self):
        """SHA-256 of the parsed document."""
        return config_hash(self.document)

    def tolerances(self):
        """Active numerical tolerances, echoed into manifests."""
        s = self.Solver
        v = self.Validation
        return {'deg_tol': s.deg_tol, 'struct_tol': s.struct_tol, 'vel_tol': s.vel_tol, 'sym_tol': s.sym_tol,
                'res_tol': s.res_tol, 'krylov_tol': v.krylov_tol, 'dirac_tol': v.dirac_tol}

    def log_info(self):
        """Log project-level details."""
        logging.info('ProjectName : {}'.format(self.ProjectName))
        logging.info('Command     : {}'.format(self.Command))
        logging.info('OutputFolder: {}'.format(self.OutputFolder))
        logging.info('Threads     : {}'.format(self.Threads))
        logging.info('Seed        : {}'.format(self.Seed))
        logging.info('Config hash : {}'.format(self.hash))

    def update(self, args):
        """
        Overwrite configuration options.

        :@param args:   Dictionary of parameters, where the key is the parameter name
        """
        for k, v in args.items():
            if v is None:
                continue
            if not hasattr(self, k):
                logging.warning('{} is not a valid parameter'.format(k))
            setattr(self, k, v)
        if self.Command not in COMMANDS:
            raise ValidationException("Command '{}' is not one of {}".format(self.Command, COMMANDS), key='Command')
        if self.Threads < 1:
            raise ValidationException("Threads must be positive", key='Threads')
        if self.Seed < 0:
            raise ValidationException("Seed must be non-negative", key='Seed')
