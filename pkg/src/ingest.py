# File: src/ingest.py
# -------------------------
"""File loaders for the CLI.

Each loader reads a text file and hands it to the owning module's parser so
format errors carry the path and 1-based line number.
"""
import logging
import os
import sys
from typing import List, Optional, Tuple

from .config import Caps
from .coxeter import CatalogHeader, ParabolicIndexCatalog, parse_catalog
from .dirichlet_ring import FiniteDirichletSeries, from_text
from .errors import FormatError
from .perm_groups import PermGroup, parse_group, preset
from .profinite_engine import ChiefFactor, parse_profile

logger = logging.getLogger(__name__)


def read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    if not os.path.exists(path):
        raise FileNotFoundError(f"{path} not found")
    with open(path, encoding="utf-8") as f:
        return f.read()


def load_series(path: str) -> FiniteDirichletSeries:
    series = from_text(read_text(path), source=path)
    logger.debug("loaded %s: %d terms", path, len(series))
    return series


def load_group(name_or_path: str, caps: Optional[Caps] = None) -> PermGroup:
    """A preset name (`S4`, `PSL(3,2)`, ...) or a path to a group file."""
    if os.path.exists(name_or_path):
        return parse_group(read_text(name_or_path), source=name_or_path, caps=caps)
    try:
        return preset(name_or_path, caps)
    except FormatError:
        if os.sep in name_or_path or name_or_path.endswith(".grp"):
            raise FileNotFoundError(f"{name_or_path} not found")
        raise


def load_profile(path: str) -> List[ChiefFactor]:
    return parse_profile(read_text(path), source=path)


def load_catalog(path: str) -> Tuple[CatalogHeader, ParabolicIndexCatalog]:
    return parse_catalog(read_text(path), source=path)
# -------------------------
