import logging
from os import path
from typing import Optional
from cerberus import Validator, schema
from yaml import YAMLError, dump, safe_load
import settings
from core.bench import ExperimentConfig, ExperimentGrid
from core.errors import ConfigValidationError
from core.utils.formats import PathLike, read_text
from core.validation.config import CONFIG_SCHEMA
from core.validation.experiment import PROFILE_INSTANCES

SRC_CONFIGURATION_DIR = settings.SCRIPT_PATH
DEFAULT_CONFIG_PATH = path.normpath(path.join(SRC_CONFIGURATION_DIR, settings.DEFAULT_CONFIG_FILENAME))

try:
    yaml_validator = Validator(CONFIG_SCHEMA)
except schema.SchemaError:
    logging.exception("Failed to load configuration schema for experiment validator.")
    raise


def parse_key_values(text: str) -> dict:
    """Flat ``key=value`` lines; ``#`` starts a comment line."""
    config = {}
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith('#'):
            continue
        key, sep, value = line.partition('=')
        if not sep:
            raise ConfigValidationError(
                "Experiment config line is not of the form key=value",
                line,
                "key=value",
                ""
            )
        config[key.strip()] = value.strip()
    return config


def parse_config_text(text: str, config_path: str = "") -> tuple[dict, str]:
    try:
        config = safe_load(text)
    except YAMLError:
        config = None
    if isinstance(config, dict):
        return config, "yaml"
    try:
        return parse_key_values(text), "key=value"
    except ConfigValidationError as e:
        raise ConfigValidationError(
            f"The file '{config_path}' is neither a YAML mapping nor key=value lines",
            e.errors,
            e.filetype,
            config_path
        ) from None


def validate_config(config: dict, filetype: str = "yaml", config_path: str = "") -> dict:
    if yaml_validator.validate(config, CONFIG_SCHEMA):
        return yaml_validator.normalized(config)
    pretty_errors = dump(yaml_validator.errors)
    logging.error(f"The config file '{config_path}' contains validation errors. Please fix:\n{pretty_errors}")
    raise ConfigValidationError(
        f"The config file '{config_path}' contains validation errors",
        pretty_errors,
        filetype,
        config_path
    )


def grid_from_config(config: dict) -> ExperimentGrid:
    """Expands ``dimensions``/``mus`` lists over the scalar ``d``/``mu`` values."""
    instances = config['m'] if config['m'] is not None else PROFILE_INSTANCES[config['profile']]
    template = ExperimentConfig(
        d=config['d'],
        n=config['n'],
        mu=config['mu'],
        T=config['T'],
        B=config['B'],
        m=instances,
        base_seed=config['base_seed'],
        policies=tuple(config['policies']),
        workers=config['workers'] or None
    )
    dimensions = tuple(config['dimensions'] or (config['d'],))
    mus = tuple(config['mus'] or (config['mu'],))
    grid = ExperimentGrid(template, dimensions, mus)
    for cfg in grid.configs():
        cfg.validate()
    return grid


def load_config(config_path: Optional[PathLike] = None) -> dict:
    config_path = str(config_path or DEFAULT_CONFIG_PATH)
    config, filetype = parse_config_text(read_text(config_path), config_path)
    config = validate_config(config, filetype, config_path)
    if config['debug']:
        settings.DEBUG = True
        logging.info("Debug mode enabled.")
    return config


def load_experiment_config(config_path: Optional[PathLike] = None) -> ExperimentGrid:
    return grid_from_config(load_config(config_path))
