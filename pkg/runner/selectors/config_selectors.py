from typing import Any, Optional

from django.conf import settings

# Config keys with a project-wide default in settings.PINVNET.
SETTINGS_KEYS = {
    "trials": "TRIALS",
    "fractions": "SPLIT_FRACTIONS",
    "lambda_grid": "LAMBDA_GRID",
    "window_fraction": "CRITICAL_WINDOW_FRACTION",
    "failure_budget": "FAILURE_BUDGET",
    "confidence": "CONFIDENCE",
    "equal_var": "EQUAL_VAR",
    "workers": "WORKERS",
    "seed": "BASE_SEED",
    "out": "OUTPUT_DIR",
    "timing": "TIMING",
}


def config_get_value(
    config_key: str,
    *,
    flags: Optional[dict] = None,
    file_config: Optional[dict] = None,
) -> Optional[Any]:
    """
    Retrieve a configuration value with cascading priority:
    1. Command-line flag (when given)
    2. YAML config file
    3. Project default (settings.PINVNET, itself read from the environment)

    Returns the value of the highest priority match, or None if not found.
    """
    # 1. Flag
    if flags and flags.get(config_key) is not None:
        return flags[config_key]

    # 2. Config file
    if file_config and file_config.get(config_key) is not None:
        return file_config[config_key]

    # 3. Project default
    settings_key = SETTINGS_KEYS.get(config_key)
    if settings_key:
        return settings.PINVNET.get(settings_key)

    return None
