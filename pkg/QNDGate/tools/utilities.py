import math
import os
from functools import lru_cache

import yaml

DEFAULTS_PATH = os.path.join(os.path.dirname(os.path.abspath(__file__)), "defaults.yaml")


def read_yaml(file_path: str) -> dict:
    """Function to read and extract contents from .yaml file.

    Parameters
    ----------
    file_path : str
        The absolute filepath to the yaml file.

    Returns
    -------
    dict
        The loaded yaml file in dictionary form.
    """
    with open(file_path, "r", encoding='utf-8') as f:
        return yaml.safe_load(f)


@lru_cache(maxsize=1)
def load_defaults() -> dict:
    return read_yaml(DEFAULTS_PATH)


def db_to_s(db: float) -> float:
    """Squeezing parameter from decibels, dB = 10 log10(e^{2s})."""
    return db * math.log(10.0) / 20.0


def s_to_db(s: float) -> float:
    return 20.0 * s / math.log(10.0)
