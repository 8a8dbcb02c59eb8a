from .config_io import read_setup, write_setup
from .setup_model import (FiberNetwork, PolarizerSetting, SetupConfig, dicke_setup, phase_from_length, random_setup,
                          validate)

__all__ = [
    'PolarizerSetting',
    'FiberNetwork',
    'SetupConfig',
    'phase_from_length',
    'validate',
    'dicke_setup',
    'random_setup',
    'read_setup',
    'write_setup',
]
