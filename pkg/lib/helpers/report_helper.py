import hashlib
import os
import sys
from dataclasses import dataclass, field

from lib.errors import ConfigParseError
from lib.setups.config_io import dump_yaml
from lib.states.qstate import dump_state


def complex_pair(z):
    return [float(z.real), float(z.imag)]


def digest(*parts):
    """sha256 over the given str/bytes parts, in order."""
    h = hashlib.sha256()
    for part in parts:
        if isinstance(part, str):
            part = part.encode('utf-8')
        h.update(part)
        h.update(b'\0')
    return h.hexdigest()


def file_digest(path, *extra):
    if not os.path.isfile(path):
        raise ConfigParseError('No such file: %s' % path)
    with open(path, 'rb') as f:
        return digest(f.read(), *extra)


@dataclass
class RunReport:
    """Outcome of one command; fidelity can be recomputed from state and target."""
    command: str
    input_digest: str
    state: list = field(default_factory=list)
    dicke: dict = None
    success_weight: float = None
    fidelity: float = None
    violations: list = field(default_factory=list)
    destructive_interference: bool = False
    details: dict = field(default_factory=dict)

    def set_state(self, vector):
        self.state = dump_state(vector)

    def set_dicke(self, expansion):
        self.dicke = {
            'coefficients': [complex_pair(d) for d in expansion.coefficients],
            'residual_norm': float(expansion.residual_norm),
        }

    def to_dict(self):
        out = {
            'command': self.command,
            'input_digest': self.input_digest,
            'destructive_interference': bool(self.destructive_interference),
            'state': list(self.state),
        }
        if self.dicke is not None:
            out['dicke'] = self.dicke
        if self.success_weight is not None:
            out['success_weight'] = float(self.success_weight)
        if self.fidelity is not None:
            out['fidelity'] = float(self.fidelity)
        out['violations'] = [str(v) for v in self.violations]
        if self.details:
            out['details'] = self.details
        return out


def write_report(report, path=None):
    """YAML report to path, or stdout when path is None."""
    if path is None:
        dump_yaml(report.to_dict(), sys.stdout)
        return
    dirname = os.path.dirname(path)
    if dirname:
        os.makedirs(dirname, exist_ok=True)
    with open(path, 'w') as f:
        dump_yaml(report.to_dict(), f)
