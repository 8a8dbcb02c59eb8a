from .emission import PartialState, RawState, apply_emission, generate_state, success_weight
from .permutation_oracle import permutation_oracle

__all__ = ['PartialState', 'RawState', 'apply_emission', 'generate_state', 'success_weight', 'permutation_oracle']
