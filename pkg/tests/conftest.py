import pytest

from plcvlc import load_config


@pytest.fixture(scope="session")
def default_system():
    system, _ = load_config(None)
    return system
