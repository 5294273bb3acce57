"""
euler_mod4 Configuration

Immutable configuration for cycle enumeration caps, graceful-search budgets
and the desk-scale guards of the exhaustive regular-graph sweeps.

Configuration is created once (defaults, settings file, environment) and then
passed explicitly to the functions that need it.

Settings can be persisted to and loaded from ~/.euler-mod4/settings.json
"""

import json
import logging
import os
from dataclasses import dataclass, replace
from pathlib import Path
from typing import Mapping, Optional

logger = logging.getLogger(__name__)

THREADS_ENV_VAR = "EULER_MOD4_THREADS"
DEFAULT_SETTINGS_PATH = Path.home() / ".euler-mod4" / "settings.json"


@dataclass(frozen=True)
class CycleConfig:
    """
    Configuration for simple-cycle enumeration.

    Attributes:
        cap: Maximum number of simple cycles collected before the result is
            flagged as truncated
    """

    cap: int = 1_000_000


@dataclass(frozen=True)
class GracefulConfig:
    """
    Configuration for the backtracking graceful-labeling search.

    Attributes:
        budget: Maximum number of node-label assignments attempted before the
            search reports "inconclusive"
    """

    budget: int = 10_000_000


@dataclass(frozen=True)
class SearchConfig:
    """
    Desk-scale guards and parallelism for exhaustive graph enumeration.

    Attributes:
        max_order_low_degree: Largest order enumerated for degree <= 5
        max_order_high_degree: Largest order enumerated for degree above 5
        max_degree: Largest degree enumerated at all
        max_order_euler: Largest order for the all-Euler-graphs enumeration
        max_order_canonical: Largest order accepted by canonical_form
        workers: Number of worker processes (1 = run inline)
    """

    max_order_low_degree: int = 11
    max_order_high_degree: int = 10
    max_degree: int = 8
    max_order_euler: int = 8
    max_order_canonical: int = 12
    workers: int = 1


@dataclass(frozen=True)
class EulerMod4Config:
    """
    Top-level configuration.

    Attributes:
        cycles: Cycle enumeration configuration
        graceful: Graceful search configuration
        search: Exhaustive enumeration configuration
        log_level: Logging level ("DEBUG", "INFO", "WARNING", "ERROR")
        log_format: Log format ("json" for structured logging, "text" for human-readable)
        seed: Seed for every randomized generator
    """

    cycles: CycleConfig = CycleConfig()
    graceful: GracefulConfig = GracefulConfig()
    search: SearchConfig = SearchConfig()
    log_level: str = "INFO"
    log_format: str = "text"
    seed: int = 20200601


def create_default_config() -> EulerMod4Config:
    """
    Factory function to create a default configuration.

    Returns:
        EulerMod4Config: An immutable configuration object with default values

    Example:
        >>> config = create_default_config()
        >>> print(config.cycles.cap)
        1000000
    """
    return EulerMod4Config()


def load_config_from_json(settings_path: Optional[Path] = None) -> EulerMod4Config:
    """
    Load configuration from a JSON settings file.

    Missing keys fall back to defaults; an unreadable file falls back to the
    default configuration entirely.

    Args:
        settings_path: Path to settings file (if None, uses ~/.euler-mod4/settings.json)

    Returns:
        EulerMod4Config: Configuration loaded from file, with defaults for missing values
    """
    if settings_path is None:
        settings_path = DEFAULT_SETTINGS_PATH

    if not settings_path.exists():
        logger.info(f"Settings file not found at {settings_path}, using defaults")
        return create_default_config()

    try:
        with open(settings_path, "r", encoding="utf-8") as f:
            settings = json.load(f)
    except Exception as e:
        logger.warning(f"Failed to load settings from {settings_path}: {e}")
        return create_default_config()

    defaults = create_default_config()

    cycle_settings = settings.get("cycles", {})
    cycle_config = CycleConfig(cap=int(cycle_settings.get("cap", defaults.cycles.cap)))

    graceful_settings = settings.get("graceful", {})
    graceful_config = GracefulConfig(
        budget=int(graceful_settings.get("budget", defaults.graceful.budget))
    )

    search_settings = settings.get("search", {})
    search_config = SearchConfig(
        max_order_low_degree=int(
            search_settings.get("max_order_low_degree", defaults.search.max_order_low_degree)
        ),
        max_order_high_degree=int(
            search_settings.get("max_order_high_degree", defaults.search.max_order_high_degree)
        ),
        max_degree=int(search_settings.get("max_degree", defaults.search.max_degree)),
        max_order_euler=int(
            search_settings.get("max_order_euler", defaults.search.max_order_euler)
        ),
        max_order_canonical=int(
            search_settings.get("max_order_canonical", defaults.search.max_order_canonical)
        ),
        workers=max(1, int(search_settings.get("workers", defaults.search.workers))),
    )

    general = settings.get("general", {})
    config = EulerMod4Config(
        cycles=cycle_config,
        graceful=graceful_config,
        search=search_config,
        log_level=general.get("log_level", defaults.log_level),
        log_format=general.get("log_format", defaults.log_format),
        seed=int(general.get("seed", defaults.seed)),
    )

    logger.info(f"Loaded configuration from {settings_path}")
    logger.debug(f"Cycle cap: {config.cycles.cap}")
    logger.debug(f"Graceful budget: {config.graceful.budget}")
    logger.debug(f"Search workers: {config.search.workers}")

    return config


def save_config_to_json(config: EulerMod4Config, settings_path: Optional[Path] = None) -> None:
    """
    Save configuration to a JSON settings file.

    WARNING: This merges with existing settings, does not overwrite entire file.

    Args:
        config: Configuration to save
        settings_path: Path to settings file (if None, uses ~/.euler-mod4/settings.json)

    Example:
        >>> config = create_default_config()
        >>> config = replace(config, cycles=replace(config.cycles, cap=5000))
        >>> save_config_to_json(config)
    """
    if settings_path is None:
        settings_path = DEFAULT_SETTINGS_PATH

    settings_path.parent.mkdir(parents=True, exist_ok=True)

    existing_settings = {}
    if settings_path.exists():
        try:
            with open(settings_path, "r", encoding="utf-8") as f:
                existing_settings = json.load(f)
        except Exception as e:
            logger.warning(f"Failed to load existing settings: {e}")

    existing_settings["cycles"] = {"cap": config.cycles.cap}
    existing_settings["graceful"] = {"budget": config.graceful.budget}
    existing_settings["search"] = {
        "max_order_low_degree": config.search.max_order_low_degree,
        "max_order_high_degree": config.search.max_order_high_degree,
        "max_degree": config.search.max_degree,
        "max_order_euler": config.search.max_order_euler,
        "max_order_canonical": config.search.max_order_canonical,
        "workers": config.search.workers,
    }
    existing_settings["general"] = {
        "log_level": config.log_level,
        "log_format": config.log_format,
        "seed": config.seed,
    }

    try:
        with open(settings_path, "w", encoding="utf-8") as f:
            json.dump(existing_settings, f, indent=2, ensure_ascii=False)
        logger.info(f"Saved configuration to {settings_path}")
    except Exception as e:
        logger.error(f"Failed to save settings to {settings_path}: {e}")
        raise


def apply_env_overrides(
    config: EulerMod4Config, environ: Optional[Mapping[str, str]] = None
) -> EulerMod4Config:
    """
    Apply environment overrides to a configuration.

    EULER_MOD4_THREADS sets the number of worker processes; when the settings
    already ask for more than one worker, the variable caps that number.
    Values that are not positive integers are logged and ignored.

    Args:
        config: Base configuration
        environ: Environment mapping (if None, uses os.environ)

    Returns:
        EulerMod4Config: New configuration with overrides applied
    """
    if environ is None:
        environ = os.environ

    raw = environ.get(THREADS_ENV_VAR)
    if raw is None or raw.strip() == "":
        return config

    try:
        threads = int(raw)
    except ValueError:
        logger.warning(f"Ignoring {THREADS_ENV_VAR}={raw!r}: not an integer")
        return config

    if threads < 1:
        logger.warning(f"Ignoring {THREADS_ENV_VAR}={threads}: must be >= 1")
        return config

    workers = min(config.search.workers, threads) if config.search.workers > 1 else threads
    logger.debug(f"{THREADS_ENV_VAR}={threads} -> workers={workers}")
    return replace(config, search=replace(config.search, workers=workers))


def resolve_workers(config: EulerMod4Config) -> int:
    """Effective worker count (always >= 1, never more than the CPU count)."""
    cpus = os.cpu_count() or 1
    return max(1, min(config.search.workers, cpus))


def setup_logging(config: EulerMod4Config) -> None:
    """
    Setup structured logging based on configuration.

    Configures:
    - Log level
    - JSON structured logging (if log_format="json")
    - Human-readable text logging (if log_format="text")

    Logs go to stderr so that --json output on stdout stays a single document.

    Args:
        config: Configuration with logging settings
    """
    log_level = getattr(logging, config.log_level.upper(), logging.INFO)

    if config.log_format == "json":
        logging.basicConfig(
            level=log_level,
            format='{"timestamp": "%(asctime)s", "level": "%(levelname)s", '
            '"logger": "%(name)s", "function": "%(funcName)s", '
            '"line": %(lineno)d, "message": "%(message)s"}',
            datefmt="%Y-%m-%dT%H:%M:%S",
            force=True,
        )
    else:
        logging.basicConfig(
            level=log_level,
            format="%(asctime)s - %(name)s - %(levelname)s - [%(funcName)s:%(lineno)d] - %(message)s",
            datefmt="%Y-%m-%d %H:%M:%S",
            force=True,
        )

    logger.debug(f"Logging configured: level={config.log_level}, format={config.log_format}")
