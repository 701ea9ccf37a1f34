from pathlib import Path

import pytest
from hypothesis import settings

CORPUS = Path(__file__).resolve().parents[1] / "corpus"

settings.register_profile("default", deadline=None, max_examples=100)
settings.load_profile("default")


@pytest.fixture
def corpus():
    return CORPUS
