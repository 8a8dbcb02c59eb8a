from .angmom import (CouplingPath, angmom_basis, angmom_decompose, compile_protocol, enumerate_paths, parse_path,
                     reference_state, validate_path)
from .families import degeneracy_configuration, families, family_setup, family_state, majorana_points
from .polynomial_roots import DesignPolynomial, build_polynomial, find_roots
from .symmetric import design_symmetric, settings_from_roots

__all__ = [
    'DesignPolynomial',
    'build_polynomial',
    'find_roots',
    'settings_from_roots',
    'design_symmetric',
    'majorana_points',
    'degeneracy_configuration',
    'families',
    'family_state',
    'family_setup',
    'CouplingPath',
    'validate_path',
    'parse_path',
    'enumerate_paths',
    'reference_state',
    'angmom_basis',
    'angmom_decompose',
    'compile_protocol',
]
