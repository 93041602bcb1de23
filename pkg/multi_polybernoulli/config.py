"""
Configuration management for multi-polybernoulli.

Handles environment variable loading, validation, and provides a centralized
configuration object for the CLI and the verification suites.
"""

import os
from dataclasses import dataclass
from typing import Optional

from dotenv import load_dotenv
from loguru import logger

VALID_LOG_LEVELS = ["DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"]
VALID_LOG_FORMATS = ["pretty", "json"]
VALID_OUTPUT_FORMATS = ["plain", "json", "csv"]

MAX_TOTAL_DEGREE_LIMIT = 40
MAX_WORKERS = 64


def get_config_value(
    cli_args, field_name: str, env_key: str, default, value_type: type = str
):
    """
    Get configuration value with proper precedence: CLI args > env vars > defaults.

    Args:
        cli_args: CLI arguments object or None
        field_name: Name of the CLI argument field
        env_key: Environment variable key
        default: Default value if neither CLI nor env var is set
        value_type: Type to convert the value to (str, int, bool)

    Returns:
        The configuration value converted to the specified type
    """
    cli_value = getattr(cli_args, field_name, None) if cli_args else None
    if cli_value is not None:
        return cli_value

    env_value = os.environ.get(env_key, "")

    if value_type is bool:
        if env_value.strip().lower() in ("true", "1", "yes"):
            return True
        elif env_value.strip().lower() in ("false", "0", "no"):
            return False
        return default

    if not env_value:
        return default

    try:
        return value_type(env_value)
    except (ValueError, TypeError):
        logger.warning(f"Ignoring {env_key}={env_value!r}: not a valid {value_type.__name__}")
        return default


def get_config_value_str(
    cli_args, field_name: str, env_key: str, default: str = ""
) -> str:
    """Get string configuration value."""
    return get_config_value(cli_args, field_name, env_key, default, str)


def get_config_value_int(
    cli_args, field_name: str, env_key: str, default: int = 0
) -> int:
    """Get integer configuration value."""
    return get_config_value(cli_args, field_name, env_key, default, int)


def get_config_value_bool(
    cli_args, field_name: str, env_key: str, default: bool = False
) -> bool:
    """Get boolean configuration value."""
    return get_config_value(cli_args, field_name, env_key, default, bool)


@dataclass
class Config:
    """Configuration object containing all application settings."""

    # Desk-scale guard on sum(m) (and on series degree for genfunc)
    max_total_degree: int

    # Sweep threading
    workers: int

    # Output
    output_format: str
    progress: bool

    # Logging
    log_level: str
    log_format: str
    log_file: Optional[str] = None


def _validate_limits(
    max_total_degree: int, workers: int, validation_errors: list
) -> None:
    """
    Validate numeric limits.

    Args:
        max_total_degree: Largest allowed total degree of a request
        workers: Number of sweep worker threads
        validation_errors: List to append validation errors
    """
    if max_total_degree < 0 or max_total_degree > MAX_TOTAL_DEGREE_LIMIT:
        validation_errors.append(
            f"MAX_TOTAL_DEGREE must be between 0-{MAX_TOTAL_DEGREE_LIMIT} (got: {max_total_degree})"
        )

    if workers < 1 or workers > MAX_WORKERS:
        validation_errors.append(
            f"WORKERS must be between 1-{MAX_WORKERS} (got: {workers})"
        )


def _validate_formats(
    output_format: str, log_level: str, log_format: str, validation_errors: list
) -> None:
    if output_format not in VALID_OUTPUT_FORMATS:
        validation_errors.append(
            f"OUTPUT_FORMAT must be one of {VALID_OUTPUT_FORMATS} (got: {output_format})"
        )

    if log_level not in VALID_LOG_LEVELS:
        validation_errors.append(
            f"LOG_LEVEL must be one of {VALID_LOG_LEVELS} (got: {log_level})"
        )

    if log_format not in VALID_LOG_FORMATS:
        validation_errors.append(
            f"LOG_FORMAT must be one of {VALID_LOG_FORMATS} (got: {log_format})"
        )


def load_config(cli_args=None) -> Optional[Config]:
    """
    Load and validate configuration from CLI arguments, environment variables and .env.
    Precedence: CLI args > env vars > .env file > defaults

    Args:
        cli_args: Parsed CLI arguments or None

    Returns:
        Config: Validated configuration object, or None if validation failed
    """
    # Existing environment variables win over .env entries
    load_dotenv(override=False)

    max_total_degree = get_config_value_int(
        cli_args, "max_total_degree", "MAX_TOTAL_DEGREE", 8
    )
    workers = get_config_value_int(cli_args, "workers", "WORKERS", 1)
    output_format = get_config_value_str(
        cli_args, "format", "OUTPUT_FORMAT", "plain"
    ).lower()
    progress = get_config_value_bool(cli_args, "progress", "SHOW_PROGRESS", True)
    log_level = get_config_value_str(cli_args, "log_level", "LOG_LEVEL", "WARNING").upper()
    log_format = get_config_value_str(
        cli_args, "log_format", "LOG_FORMAT", "pretty"
    ).lower()
    log_file = get_config_value_str(cli_args, "log_file", "LOG_FILE", "") or None

    validation_errors = []
    _validate_limits(max_total_degree, workers, validation_errors)
    _validate_formats(output_format, log_level, log_format, validation_errors)

    if validation_errors:
        logger.error("❌ Configuration Error:")
        for i, error_msg in enumerate(validation_errors, 1):
            logger.error(f"   {i}. {error_msg}")
        return None

    config = Config(
        max_total_degree=max_total_degree,
        workers=workers,
        output_format=output_format,
        progress=progress,
        log_level=log_level,
        log_format=log_format,
        log_file=log_file,
    )

    logger.debug(f"MAX_TOTAL_DEGREE = {config.max_total_degree}")
    logger.debug(f"WORKERS = {config.workers}")
    logger.debug(f"OUTPUT_FORMAT = {config.output_format}")
    logger.debug(f"SHOW_PROGRESS = {config.progress}")
    logger.debug(f"LOG_LEVEL = {config.log_level}")
    logger.debug(f"LOG_FORMAT = {config.log_format}")
    logger.debug(f"LOG_FILE = {config.log_file}")

    return config
