import sys
from pathlib import Path

import pytest

from neurochaos.data import load_dataset, load_manifest

REPO_ROOT = Path(__file__).resolve().parent.parent
DATASETS_DIR = REPO_ROOT / "datasets"
MANIFEST_PATH = DATASETS_DIR / "manifest.json"

# make tests/oracles.py importable as `oracles` regardless of invocation dir
sys.path.insert(0, str(Path(__file__).resolve().parent))


@pytest.fixture(scope="session")
def manifest():
    return load_manifest(MANIFEST_PATH)


@pytest.fixture(scope="session")
def iris(manifest):
    return load_dataset(manifest["iris"])


@pytest.fixture(scope="session")
def wine(manifest):
    return load_dataset(manifest["wine"])


@pytest.fixture(scope="session")
def haberman(manifest):
    return load_dataset(manifest["haberman"])
