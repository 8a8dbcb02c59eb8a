from .dicke import (DickeExpansion, brute_force_coefficients, decompose, dicke_coefficients, dicke_state,
                    ghz_coefficients, symmetric_state, w_coefficients)
from .qstate import (Polarization, StateVector, basis_index, basis_polarizations, canonical_phase, check_mode_cap,
                     dump_state, fidelity, load_state, normalize)

__all__ = [
    # qstate.py
    'Polarization',
    'StateVector',
    'basis_index',
    'basis_polarizations',
    'canonical_phase',
    'normalize',
    'fidelity',
    'dump_state',
    'load_state',
    'check_mode_cap',
    # dicke.py
    'DickeExpansion',
    'dicke_state',
    'dicke_coefficients',
    'brute_force_coefficients',
    'decompose',
    'symmetric_state',
    'ghz_coefficients',
    'w_coefficients',
]
