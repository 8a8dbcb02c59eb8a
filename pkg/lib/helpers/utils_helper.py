import logging
import random

import numpy as np

LOGGER_NAME = 'lib'
LOG_FORMAT = '%(asctime)s  %(levelname)5s  %(message)s'


def create_logger(log_file=None, level='INFO'):
    """Logger shared by the library modules (all of them live under 'lib').

    Messages go to stderr and, if given, to log_file. Calling it again only
    adjusts the level and adds a file handler for a new log_file.
    """
    logger = logging.getLogger(LOGGER_NAME)
    logger.setLevel(level)
    logger.propagate = False
    formatter = logging.Formatter(LOG_FORMAT)
    if not any(getattr(h, '_switchboard_console', False) for h in logger.handlers):
        console = logging.StreamHandler()
        console.setFormatter(formatter)
        console._switchboard_console = True
        logger.addHandler(console)
    if log_file is not None:
        known = [getattr(h, 'baseFilename', None) for h in logger.handlers]
        file_handler = logging.FileHandler(log_file)
        if file_handler.baseFilename in known:
            file_handler.close()
        else:
            file_handler.setFormatter(formatter)
            logger.addHandler(file_handler)
    for handler in logger.handlers:
        handler.setLevel(level)
    return logger


def set_random_seed(seed):
    """Seed the global generators and return a fresh numpy Generator."""
    random.seed(seed)
    np.random.seed(seed % 2 ** 32)
    return np.random.default_rng(seed)
