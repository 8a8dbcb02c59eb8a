''' reading and writing setup config files (YAML, 1-based source/detector indices) '''
import math
import os

import numpy as np
import yaml

from lib.errors import ConfigParseError
from lib.setups.setup_model import (FiberNetwork, PolarizerSetting, SetupConfig,
                                    phase_from_length, reduce_phase)


class PreciseDumper(yaml.SafeDumper):
    """SafeDumper writing floats at 17 significant digits."""


def _float_representer(dumper, value):
    if math.isnan(value):
        text = '.nan'
    elif math.isinf(value):
        text = '.inf' if value > 0 else '-.inf'
    else:
        text = '%.17g' % value
        # YAML 1.1 only resolves floats with a dot in the mantissa
        if '.' not in text:
            mantissa, _, exponent = text.partition('e')
            text = mantissa + '.0' + ('e' + exponent if exponent else '')
    return dumper.represent_scalar('tag:yaml.org,2002:float', text)


PreciseDumper.add_representer(float, _float_representer)
PreciseDumper.add_representer(np.float64, lambda d, v: _float_representer(d, float(v)))


def dump_yaml(data, stream=None):
    return yaml.dump(data, stream, Dumper=PreciseDumper, sort_keys=False, default_flow_style=None)


def load_yaml(path):
    if not os.path.isfile(path):
        raise ConfigParseError('No such file: %s' % path)
    try:
        with open(path, 'r') as f:
            return yaml.load(f, Loader=yaml.SafeLoader)
    except yaml.YAMLError as e:
        raise ConfigParseError('%s: %s' % (path, e))


def _number(value, what):
    # YAML loads exponent floats without a dot ('1e-5') as strings
    if isinstance(value, bool):
        raise ConfigParseError('%s: expected a number, got %r' % (what, value))
    try:
        return float(value)
    except (TypeError, ValueError):
        raise ConfigParseError('%s: expected a number, got %r' % (what, value))


def _index(value, n, what):
    if isinstance(value, bool) or not isinstance(value, int):
        raise ConfigParseError('%s: expected an integer index, got %r' % (what, value))
    if not 1 <= value <= n:
        raise ConfigParseError('%s: index %d outside 1..%d' % (what, value, n))
    return value


def parse_setting(item, where):
    if isinstance(item, (list, tuple)):
        if len(item) != 4:
            raise ConfigParseError('%s: expected [alpha_re, alpha_im, beta_re, beta_im], got %r' % (where, item))
        a_re, a_im, b_re, b_im = [_number(x, where) for x in item]
        return PolarizerSetting(complex(a_re, a_im), complex(b_re, b_im))
    if isinstance(item, dict):
        unknown = set(item) - {'theta', 'phi'}
        if 'theta' not in item or unknown:
            raise ConfigParseError('%s: expected {theta, phi}, got keys %s' % (where, sorted(item)))
        return PolarizerSetting.from_angles(_number(item['theta'], where), _number(item.get('phi', 0.0), where))
    raise ConfigParseError('%s: unsupported setting %r' % (where, item))


def parse_link(item, n, where):
    if not isinstance(item, dict):
        raise ConfigParseError('%s: expected a mapping, got %r' % (where, item))
    source = _index(item.get('source'), n, where + '.source')
    detector = _index(item.get('detector'), n, where + '.detector')
    if 'phase' in item:
        if 'length' in item or 'wavenumber' in item:
            raise ConfigParseError('%s: give either phase or length/wavenumber, not both' % where)
        phase = reduce_phase(_number(item['phase'], where + '.phase'))
    elif 'length' in item and 'wavenumber' in item:
        try:
            phase = phase_from_length(_number(item['wavenumber'], where + '.wavenumber'),
                                      _number(item['length'], where + '.length'))
        except ValueError as e:
            raise ConfigParseError('%s: %s' % (where, e))
    else:
        raise ConfigParseError('%s: missing phase (or length and wavenumber)' % where)
    amplitude = _number(item.get('amplitude', 1.0), where + '.amplitude')
    return source, detector, amplitude * complex(math.cos(phase), math.sin(phase))


def parse_setup(cfg, name=''):
    """SetupConfig from an already loaded config mapping.

    Dimension and normalization problems are left to setup_model.validate;
    only structurally unreadable content raises here.
    """
    if not isinstance(cfg, dict):
        raise ConfigParseError('Setup config must be a mapping, got %r' % type(cfg).__name__)
    missing = [key for key in ('n_sources', 'settings', 'links') if key not in cfg]
    if missing:
        raise ConfigParseError('Setup config is missing %s' % ', '.join(missing))
    n = cfg['n_sources']
    if isinstance(n, bool) or not isinstance(n, int) or n < 1:
        raise ConfigParseError('n_sources must be a positive integer, got %r' % (n,))
    if not isinstance(cfg['settings'], list) or not isinstance(cfg['links'], list):
        raise ConfigParseError('settings and links must be lists')

    settings = [parse_setting(item, 'settings[%d]' % i) for i, item in enumerate(cfg['settings'])]
    links = []
    seen = set()
    for i, item in enumerate(cfg['links']):
        source, detector, coupling = parse_link(item, n, 'links[%d]' % i)
        if (source, detector) in seen:
            raise ConfigParseError('links[%d]: duplicate link %d -> %d' % (i, source, detector))
        seen.add((source, detector))
        links.append((source, detector, coupling))
    lossy = cfg.get('lossy', False)
    if not isinstance(lossy, bool):
        raise ConfigParseError('lossy must be true or false, got %r' % (lossy,))
    return SetupConfig(n, settings, FiberNetwork.from_links(n, links), lossy=lossy,
                       name=str(cfg.get('name', name)))


def read_setup(path):
    return parse_setup(load_yaml(path), name=os.path.splitext(os.path.basename(path))[0])


def setup_to_dict(config):
    out = {}
    if config.name:
        out['name'] = config.name
    out['n_sources'] = config.n_sources
    out['lossy'] = bool(config.lossy)
    out['settings'] = [[s.alpha.real, s.alpha.imag, s.beta.real, s.beta.imag] for s in config.settings]
    links = []
    for source, detector, coupling in config.network.links():
        link = {'source': source, 'detector': detector,
                'phase': reduce_phase(math.atan2(coupling.imag, coupling.real))}
        if config.lossy and abs(coupling) != 1.0:
            link['amplitude'] = abs(coupling)
        links.append(link)
    out['links'] = links
    return out


def write_setup(config, path):
    dirname = os.path.dirname(path)
    if dirname:
        os.makedirs(dirname, exist_ok=True)
    with open(path, 'w') as f:
        dump_yaml(setup_to_dict(config), f)
