import pytest


def pytest_addoption(parser):
    parser.addoption("--heavy", action="store_true", default=False,
                     help="run the large Monte Carlo batteries")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--heavy"):
        return
    skip_heavy = pytest.mark.skip(reason="needs --heavy")
    for item in items:
        if "heavy" in item.keywords:
            item.add_marker(skip_heavy)
