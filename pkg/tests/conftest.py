import os
import sys

import numpy as np
import pytest

ROOT_DIR = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
if ROOT_DIR not in sys.path:
    sys.path.insert(0, ROOT_DIR)

from lib.setups.setup_model import FiberNetwork, PolarizerSetting, SetupConfig, dicke_setup  # noqa: E402

SETUPS_DIR = os.path.join(ROOT_DIR, 'configs', 'setups')


@pytest.fixture
def tol():
    return 1e-10


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture
def setups_dir():
    return SETUPS_DIR


@pytest.fixture
def dicke2():
    return dicke_setup(2, 1)


@pytest.fixture
def singlet_config():
    """sigma+ / sigma- sources, fiber 2 -> 2 with phase pi."""
    t = np.array([[1.0, 1.0], [1.0, -1.0]], dtype=np.complex128)
    settings = [PolarizerSetting.sigma_plus(), PolarizerSetting.sigma_minus()]
    return SetupConfig(2, settings, FiberNetwork(2, t), name='singlet')
