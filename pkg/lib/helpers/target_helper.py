''' target states given on the command line '''
import os

import numpy as np

from lib.designers.angmom import parse_path, reference_state
from lib.errors import ConfigParseError
from lib.states.dicke import ghz_coefficients, symmetric_state, w_coefficients
from lib.states.qstate import MAX_MODES, load_state


def parse_coefficients(text, minimum=2):
    """'0.7071,0,0,0.7071' or with complex entries '0.5+0.5j,...'."""
    try:
        values = [complex(item.strip().replace(' ', '')) for item in text.split(',')]
    except ValueError:
        raise ConfigParseError('Cannot parse coefficient list %r' % text)
    if len(values) < minimum:
        raise ConfigParseError('Need at least %d coefficients, got %r' % (minimum, text))
    return np.array(values, dtype=np.complex128)


def parse_partition(text):
    """'3,1' -> (3, 1); multiplicities of the Majorana points, largest first."""
    try:
        parts = [int(item) for item in text.split(',')]
    except ValueError:
        raise ConfigParseError('Cannot parse multiplicities %r' % text)
    if min(parts) < 1:
        raise ConfigParseError('Multiplicities must be positive, got %r' % text)
    return tuple(sorted(parts, reverse=True))


def parse_target(literal, n=None, max_modes=MAX_MODES):
    """StateVector for a target literal, refused with CapExceededError beyond max_modes.

    Accepted forms:
        dicke:<d_0>,...,<d_N>   symmetric state from Dicke coefficients
        path:<S_1>,...;m=<m_s>   angular momentum eigenstate
        ghz | w                 canonical states, n required
        <file>                  state dump written by simulate
    """
    if literal.startswith('dicke:'):
        return symmetric_state(parse_coefficients(literal[len('dicke:'):]), max_modes=max_modes)
    if literal.startswith('path:'):
        return reference_state(parse_path(literal[len('path:'):]), max_modes=max_modes)
    if literal in ('ghz', 'w'):
        if n is None:
            raise ConfigParseError('Target %r needs the number of modes' % literal)
        d = ghz_coefficients(n) if literal == 'ghz' else w_coefficients(n)
        return symmetric_state(d, max_modes=max_modes)
    if os.path.isfile(literal):
        with open(literal, 'r') as f:
            return load_state(f.read(), max_modes=max_modes)
    raise ConfigParseError('Unrecognized target %r (expected dicke:, path:, ghz, w or a dump file)' % literal)
