from pathlib import Path

import pytest

from crnregions import parse_network

NETS = Path(__file__).parent / "nets"
GOLDEN = Path(__file__).parent / "golden"

RUNNING = NETS / "running.crn"
PROP51 = NETS / "prop51.crn"
ACR = NETS / "acr.crn"
JOSHI_N2 = NETS / "joshi_n2.crn"
JOSHI_N3L2 = NETS / "joshi_n3l2.crn"
EX53 = NETS / "ex53.crn"
EQ19 = NETS / "eq19.crn"


def load(path: Path):
    return parse_network(path.read_text())


@pytest.fixture
def running_net():
    return load(RUNNING)


@pytest.fixture
def prop51_net():
    return load(PROP51)


@pytest.fixture
def acr_net():
    return load(ACR)


@pytest.fixture
def ex53_net():
    return load(EX53)
