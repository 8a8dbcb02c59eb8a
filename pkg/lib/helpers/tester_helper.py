import sys

import numpy as np
import tqdm

from lib.setups.setup_model import random_setup
from lib.simulators.emission import generate_state
from lib.simulators.permutation_oracle import permutation_oracle


class OracleTester(object):
    """Compares the emission engine with the permutation-sum oracle.

    Args:
        cfg (dict): The 'oracle' section of the runtime options.
        logger (logging.Logger): Where results are reported.
        tol_cfg (dict): The 'tolerance' section.
        max_modes (int): State cap handed to the engine.
    """

    def __init__(self, cfg, logger, tol_cfg, max_modes=14):
        self.cfg = cfg
        self.logger = logger
        self.agreement = tol_cfg.get('agreement', 1e-10)
        self.normalization = tol_cfg.get('normalization', 1e-12)
        self.max_modes = max_modes

    def compare(self, config):
        oracle = permutation_oracle(config,
                                    max_sources=self.cfg.get('max_sources', 8),
                                    workers=self.cfg.get('workers', 1),
                                    tol=self.normalization)
        engine = generate_state(config, max_modes=self.max_modes, tol=self.normalization)
        return float(np.max(np.abs(engine.vector.amplitudes - oracle.vector.amplitudes)))

    def check_config(self, config):
        deviation = self.compare(config)
        self.logger.info('n=%d  max deviation %.3e', config.n_sources, deviation)
        return deviation

    def run_random(self, rng, trials):
        """Random setups with N drawn from [min_sources, max_random_sources].

        Returns:
            (float, int): Largest deviation and number of failing trials.
        """
        low = self.cfg.get('min_sources', 2)
        high = self.cfg.get('max_random_sources', 5)
        removal_prob = self.cfg.get('removal_prob', 0.2)
        worst, failures = 0.0, 0
        progress_bar = tqdm.tqdm(total=trials, leave=False, desc='oracle trials',
                                 disable=not sys.stderr.isatty())
        for trial in range(trials):
            n = int(rng.integers(low, high + 1))
            config = random_setup(n, rng, removal_prob=removal_prob)
            deviation = self.compare(config)
            if deviation > self.agreement:
                failures += 1
                self.logger.error('trial %d (n=%d): deviation %.3e above %.1e', trial, n, deviation, self.agreement)
            worst = max(worst, deviation)
            progress_bar.update()
        progress_bar.close()
        self.logger.info('%d trials, max deviation %.3e, %d failures', trials, worst, failures)
        return worst, failures
