import os
import sys

import pytest


def _load_core():
    ext_dir = os.environ.get("MODALSTAB_EXT_DIR")
    if ext_dir:
        sys.path.insert(0, ext_dir)
    try:
        import _core  # noqa: F401
        return _core
    except ImportError:
        return None


@pytest.fixture(scope="session")
def core():
    mod = _load_core()
    if mod is None:
        pytest.skip("compiled _core module not available (set MODALSTAB_EXT_DIR)")
    return mod


@pytest.fixture(scope="session")
def cli_path():
    path = os.environ.get("MODALSTAB_CLI")
    if not path or not os.path.exists(path):
        pytest.skip("CLI binary not available (set MODALSTAB_CLI)")
    return path
