import os
from pathlib import Path
from typing import Any, Dict

from loguru import logger
import yaml


def load_config(config_path) -> Dict[str, Any]:
    try:
        with open(config_path, "r") as config_file:
            return yaml.safe_load(config_file) or {}
    except FileNotFoundError:
        logger.debug(
            f"Config file not found at {config_path}. Using default configuration."
        )
        return {}
    except yaml.YAMLError as e:
        logger.error(f"Error parsing config file: {e}")
        return {}


def config_section(name: str, defaults: Dict[str, Any]) -> Dict[str, Any]:
    """Defaults for one config section, overridden by the matching keys of config.yml."""
    overrides = config.get(name) or {}
    unknown = set(overrides) - set(defaults)
    if unknown:
        logger.warning(f"Ignoring unknown keys in config section '{name}': {sorted(unknown)}")
    return {**defaults, **{k: v for k, v in overrides.items() if k in defaults}}


# Determine the project root directory
PROJECT_DIR = Path(__file__).resolve().parents[2]
logger.debug(f"PROJECT_DIR: {PROJECT_DIR}")

EXP_DIR = PROJECT_DIR / "experiment"
OUTPUT_DIR = Path(os.environ.get("PT_SPECTRA_OUT", EXP_DIR / "data"))

# Load configuration
config = load_config(os.environ.get("PT_SPECTRA_CONFIG", PROJECT_DIR / "config.yml"))
