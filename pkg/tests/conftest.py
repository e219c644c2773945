import json
from importlib import resources

import pytest


@pytest.fixture(scope="session")
def example_corpus() -> list[dict]:
    """The bundled example programs (name, concept, code)."""
    text = resources.files("codestrip.data").joinpath("examples.json").read_text("utf-8")
    return json.loads(text)["examples"]


FIG1_CODE = "x = True\nif x == True:\n    print(True)\n"
COUNTDOWN_CODE = "x = 90\nfor i in range(3):\n    x = x - 10\n    print(x)\n"


@pytest.fixture
def fig1_code() -> str:
    return FIG1_CODE


@pytest.fixture
def countdown_code() -> str:
    return COUNTDOWN_CODE
