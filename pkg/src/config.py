# src/config.py
import os
import logging
from typing import Optional

from dotenv import load_dotenv
from pydantic import BaseModel, ConfigDict

from .errors import FormatError

load_dotenv()

# Config
CAPS_OVERRIDES = os.getenv("PROZETA_CAPS", "")
LOG_LEVEL = os.getenv("PROZETA_LOG_LEVEL", "WARNING")
AUDIT_FILE = os.getenv("PROZETA_AUDIT_FILE") or None
METRICS_FILE = os.getenv("PROZETA_METRICS_FILE") or None


class Caps(BaseModel):
    """Enumeration limits for the brute-force group oracle."""

    model_config = ConfigDict(frozen=True)

    lattice: int = 10_000        # max |G| for a full subgroup lattice
    tuples: int = 100_000_000    # max |G|^t for generating-tuple counts
    elements: int = 100_000      # max |G| for element enumeration
    interval: int = 1_000        # max |X:H| for an overgroup interval


def load_caps(text: Optional[str] = None) -> Caps:
    """Parse `lattice=..,tuples=..` overrides on top of the defaults."""
    if text is None:
        text = CAPS_OVERRIDES
    values = {}
    for chunk in text.split(","):
        chunk = chunk.strip()
        if not chunk:
            continue
        name, sep, raw = chunk.partition("=")
        name = name.strip()
        if not sep or name not in Caps.model_fields:
            raise FormatError(f"unknown cap override {chunk!r}")
        try:
            value = int(raw.strip())
        except ValueError:
            raise FormatError(f"cap {name} is not an integer: {raw!r}")
        if value <= 0:
            raise FormatError(f"cap {name} must be positive")
        values[name] = value
    return Caps(**values)


def configure_logging(level: Optional[str] = None) -> None:
    logging.basicConfig(
        level=(level or LOG_LEVEL).upper(),
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
    )
