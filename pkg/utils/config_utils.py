#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
Configuration loading for the mixed graph colouring toolkit.
"""

import copy
import logging
import os
from typing import Dict, Optional

import yaml
from dotenv import load_dotenv

# Configure logging
logging.basicConfig(
    level=logging.INFO,
    format='%(asctime)s - %(name)s - %(levelname)s - %(message)s'
)
logger = logging.getLogger(__name__)

UTILS_DIR = os.path.dirname(os.path.abspath(__file__))
PROJECT_ROOT = os.path.dirname(UTILS_DIR)
DEFAULT_CONFIG_PATH = os.path.join(PROJECT_ROOT, 'config', 'config.yaml')

DEFAULT_CONFIG: Dict = {
    'solver': {
        'oracle_max_vertices': 6,
    },
    'property': {
        'work_budget': 10 ** 10,
        'sample_trials': 10000,
        'jobs': 1,
    },
    'probability': {
        'exact_limit': 5000,
    },
    'universal': {
        'factorization': 'cyclic',
        'max_backtracks': 100000,
    },
    'find_target': {
        'max_trials': 100,
    },
    'repro': {
        'seed': 20240607,
        'instances': 1000,
    },
    'logging': {
        'level': 'INFO',
        'format': '%(asctime)s - %(name)s - %(levelname)s - %(message)s',
    },
}


def _merge(base: Dict, override: Dict) -> Dict:
    merged = copy.deepcopy(base)
    for key, value in (override or {}).items():
        if isinstance(value, dict) and isinstance(merged.get(key), dict):
            merged[key] = _merge(merged[key], value)
        else:
            merged[key] = value
    return merged


def load_config(config_path: Optional[str] = None) -> Dict:
    """
    Load the YAML configuration, falling back to built-in defaults.

    The path is taken from the argument, then the MIXCOL_CONFIG environment
    variable (a .env file is honoured), then config/config.yaml.

    Args:
        config_path (Optional[str]): Path to the configuration file

    Returns:
        Dict: Configuration dictionary
    """
    load_dotenv()
    path = config_path or os.environ.get('MIXCOL_CONFIG') or DEFAULT_CONFIG_PATH

    if not os.path.exists(path):
        if config_path:
            logger.error(f"Configuration file not found: {path}")
            raise FileNotFoundError(path)
        logger.warning(f"No configuration file at {path}, using defaults")
        return copy.deepcopy(DEFAULT_CONFIG)

    try:
        with open(path, 'r') as file:
            loaded = yaml.safe_load(file) or {}
    except yaml.YAMLError as e:
        logger.error(f"Error parsing configuration {path}: {str(e)}")
        raise

    logger.debug(f"Loaded configuration from {path}")
    return _merge(DEFAULT_CONFIG, loaded)


def default_config() -> Dict:
    """
    Returns:
        Dict: A fresh copy of the built-in defaults
    """
    return copy.deepcopy(DEFAULT_CONFIG)
