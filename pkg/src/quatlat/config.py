"""Environment configuration."""

import logging
import os
from pathlib import Path
from typing import Any, Dict, Optional

from dotenv import load_dotenv

from .classify import DEFAULT_PRIME_BOUND
from .corpus import BUNDLED_CORPUS
from .relext import DEFAULT_REFINE_CAP

logger = logging.getLogger(__name__)


def _int_env(name: str, default: Optional[int] = None) -> Optional[int]:
    value = os.getenv(name)
    if value is None or value == "":
        return default
    try:
        return int(value)
    except ValueError:
        logger.warning(f"Ignoring non-integer {name}={value!r}")
        return default


def load_config(**overrides: Any) -> Dict[str, Any]:
    """Load configuration from environment variables.

    A ``.env`` file in the working directory is read first. Keyword
    arguments (typically CLI flags) override the environment; ``None``
    values are dropped so that defaults apply.

    Returns:
        Configuration dictionary
    """
    load_dotenv()
    config = {
        "corpus_dir": os.getenv("QUATLAT_CORPUS"),
        "prime_bound": _int_env("QUATLAT_PRIME_BOUND", DEFAULT_PRIME_BOUND),
        "seed": _int_env("QUATLAT_SEED", 0),
        "refine_cap": _int_env("QUATLAT_REFINE_CAP", DEFAULT_REFINE_CAP),
        "workers": _int_env("QUATLAT_WORKERS", 1),
        "log_level": os.getenv("LOG_LEVEL"),
    }
    config.update({k: v for k, v in overrides.items() if v is not None})

    # Remove None values
    config = {k: v for k, v in config.items() if v is not None}

    logger.debug(f"Loaded configuration with {len(config)} settings")
    return config


def validate_environment() -> Dict[str, bool]:
    """Validate environment setup.

    Returns:
        Dictionary of validation results
    """
    corpus = Path(os.getenv("QUATLAT_CORPUS") or BUNDLED_CORPUS)
    validation = {
        "corpus_override": bool(os.getenv("QUATLAT_CORPUS")),
        "corpus_readable": corpus.is_dir() and os.access(corpus, os.R_OK),
        "prime_bound": os.getenv("QUATLAT_PRIME_BOUND") is None
        or _int_env("QUATLAT_PRIME_BOUND") is not None,
        "workers": os.getenv("QUATLAT_WORKERS") is None
        or _int_env("QUATLAT_WORKERS") is not None,
    }
    return validation
