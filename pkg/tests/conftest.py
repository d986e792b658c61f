import os

import pytest

from duomap import parse_instance

INSTANCE_DIR = os.path.join(os.path.dirname(__file__), os.pardir, "instances")


def load_instance(name):
    with open(os.path.join(INSTANCE_DIR, name), encoding="utf-8") as fh:
        return parse_instance(fh.read())


@pytest.fixture(scope="session")
def opt8():
    # length-10 instance whose optimum preserves 8 duos
    return load_instance("opt8.duo")


@pytest.fixture(scope="session")
def opt9():
    # length-14 instance with a 2-square maximal series
    return load_instance("opt9.duo")
