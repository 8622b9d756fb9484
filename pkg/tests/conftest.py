import functools
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from acgroups.construct import build_group


@functools.lru_cache(maxsize=None)
def group(spec: str):
    """Build-once cache shared by the whole test session."""
    return build_group(spec, validate="none")


@pytest.fixture(scope="session")
def small_catalog():
    from acgroups.catalog import generate_catalog

    return generate_catalog(72)
