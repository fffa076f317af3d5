"""linetrees.config
-----------------

Configuration for the linetrees toolkit, read from config/verify.toml.

The path can be overridden with the LINETREES_CONFIG environment variable
(also picked up from the project's .env file).
"""

import logging
import os

try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib
from dataclasses import dataclass, field
from functools import lru_cache
from pathlib import Path

from dotenv import load_dotenv

PROJECT_ROOT = Path(__file__).resolve().parent.parent.parent
DEFAULT_CONFIG_PATH = PROJECT_ROOT / "config" / "verify.toml"

load_dotenv(PROJECT_ROOT / ".env")

logger = logging.getLogger("linetrees.config")


@dataclass(frozen=True)
class Limits:
    """Caps on the exponential loops.

    Attributes:
        enumeration_cap: Max number of explicit spanning trees per enumeration.
        gamma_max_edges: Max domain size for an explicit Gamma(E') stream.
        subset_max_edges: Max edge count for the 2^m subset sums.
        generator_retries: Rejection-sampling attempts before a generator gives up.
    """

    enumeration_cap: int = 200_000
    gamma_max_edges: int = 30
    subset_max_edges: int = 20
    generator_retries: int = 1000


@dataclass(frozen=True)
class FuzzDefaults:
    """Defaults for `linetrees fuzz`."""

    n_jobs: int = 1
    max_n: int = 8
    max_extra_edges: int = 4
    r_values: tuple[int, ...] = (0, 1, 2)


@dataclass(frozen=True)
class VerifyConfig:
    """Parsed verify.toml."""

    limits: Limits = field(default_factory=Limits)
    fuzz: FuzzDefaults = field(default_factory=FuzzDefaults)
    include_timing: bool = True
    log_level: str = "INFO"


def load_verify_config(path: Path | None = None) -> VerifyConfig:
    """Load the toolkit configuration.

    Args:
        path: Explicit TOML path. Defaults to $LINETREES_CONFIG or config/verify.toml.

    Returns:
        VerifyConfig; built-in defaults when the file does not exist.
    """
    if path is None:
        path = Path(os.getenv("LINETREES_CONFIG", str(DEFAULT_CONFIG_PATH)))
        if not path.is_absolute():
            path = PROJECT_ROOT / path
    if not path.exists():
        logger.warning("%s not found. Using defaults.", path)
        raw: dict = {}
    else:
        with open(path, "rb") as f:
            raw = tomllib.load(f)

    limits_raw = raw.get("limits", {})
    fuzz_raw = raw.get("fuzz", {})
    report_raw = raw.get("report", {})
    logging_raw = raw.get("logging", {})

    limits = Limits(
        enumeration_cap=int(limits_raw.get("enumeration_cap", Limits.enumeration_cap)),
        gamma_max_edges=int(limits_raw.get("gamma_max_edges", Limits.gamma_max_edges)),
        subset_max_edges=int(limits_raw.get("subset_max_edges", Limits.subset_max_edges)),
        generator_retries=int(limits_raw.get("generator_retries", Limits.generator_retries)),
    )
    fuzz = FuzzDefaults(
        n_jobs=int(fuzz_raw.get("n_jobs", FuzzDefaults.n_jobs)),
        max_n=int(fuzz_raw.get("max_n", FuzzDefaults.max_n)),
        max_extra_edges=int(fuzz_raw.get("max_extra_edges", FuzzDefaults.max_extra_edges)),
        r_values=tuple(int(r) for r in fuzz_raw.get("r_values", FuzzDefaults.r_values)),
    )
    level = os.getenv("LINETREES_LOG_LEVEL", logging_raw.get("level", "INFO"))
    return VerifyConfig(
        limits=limits,
        fuzz=fuzz,
        include_timing=bool(report_raw.get("include_timing", True)),
        log_level=str(level).upper(),
    )


@lru_cache(maxsize=1)
def get_limits() -> Limits:
    """Return the process-wide limits (config file read once)."""
    return load_verify_config().limits
