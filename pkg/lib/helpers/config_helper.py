import copy
import logging
import os

from lib.setups.config_io import load_yaml

logger = logging.getLogger(__name__)

BASE_DIR = os.path.dirname(os.path.abspath(__file__))
DEFAULT_OPTIONS_FILE = os.path.join(BASE_DIR, os.pardir, os.pardir, 'configs', 'switchboard.yaml')

DEFAULT_OPTIONS = {
    'random_seed': 444,
    'state': {
        'max_modes': 14,
    },
    'oracle': {
        'max_sources': 8,
        'workers': 1,
        'min_sources': 2,
        'max_random_sources': 5,
        'removal_prob': 0.2,
        'trials': 50,
    },
    'design': {
        'degree_tol': 1e-12,
        'newton_steps': 8,
        'family_tol': 1e-3,
    },
    'tolerance': {
        'normalization': 1e-12,
        'agreement': 1e-10,
        'design_fidelity': 1e-8,
        'protocol_fidelity': 1e-9,
    },
    'logger': {
        'level': 'INFO',
        'log_dir': None,
    },
}


def merge_options(base, update):
    """Recursive dict merge; values in update win."""
    out = copy.deepcopy(base)
    for key, val in (update or {}).items():
        if isinstance(val, dict) and isinstance(out.get(key), dict):
            out[key] = merge_options(out[key], val)
        else:
            out[key] = val
    return out


def load_options(opt_path=None, overrides=None):
    """Runtime options: built-in defaults < options file < overrides.

    Args:
        opt_path (str | None): YAML options file. Defaults to
            configs/switchboard.yaml when it exists.
        overrides (dict | None): Nested values taken from the command line.

    Returns:
        dict: Options.
    """
    opt = DEFAULT_OPTIONS
    if opt_path is None and os.path.isfile(DEFAULT_OPTIONS_FILE):
        opt_path = DEFAULT_OPTIONS_FILE
    if opt_path is not None:
        loaded = load_yaml(opt_path) or {}
        for key in loaded:
            if key not in DEFAULT_OPTIONS:
                logger.debug('Unknown option section %r in %s kept as is', key, opt_path)
        opt = merge_options(opt, loaded)
    return merge_options(opt, overrides)


def dict2str(opt, indent_level=1):
    msg = '\n'
    for k, v in opt.items():
        if isinstance(v, dict):
            msg += ' ' * (indent_level * 2) + k + ':['
            msg += dict2str(v, indent_level + 1)
            msg += ' ' * (indent_level * 2) + ']\n'
        else:
            msg += ' ' * (indent_level * 2) + k + ': ' + str(v) + '\n'
    return msg
