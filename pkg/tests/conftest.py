import pytest

from reebchords.diagram import parse_front, resolve
from reebchords.homology import h1_presentation

TREFOIL_EVENTS = ["L1", "L3", "X2", "X2", "X2", "R1", "R1"]
UNKNOT_EVENTS = ["L1", "R1"]
STAB_EVENTS = ["L1", "L2", "R1", "R1"]
HOPF_EVENTS = ["L1", "L3", "X2", "X2", "R1", "R1"]


def make(events, surgery=None, orientations=None):
    return resolve(parse_front({"events": events,
                                "surgery": surgery or {},
                                "orientations": orientations or {}}))


@pytest.fixture(scope="session")
def trefoil_plus():
    return make(TREFOIL_EVENTS, {0: 1})


@pytest.fixture(scope="session")
def trefoil_minus():
    return make(TREFOIL_EVENTS, {0: -1})


@pytest.fixture(scope="session")
def unknot_plus():
    return make(UNKNOT_EVENTS, {0: 1})


@pytest.fixture(scope="session")
def unknot_minus():
    return make(UNKNOT_EVENTS, {0: -1})


@pytest.fixture(scope="session")
def stab_plus():
    # the representative oriented to have rotation number +1
    return make(STAB_EVENTS, {0: 1}, {0: -1})


@pytest.fixture(scope="session")
def hopf_plus():
    return make(HOPF_EVENTS, {0: 1, 1: 1})


@pytest.fixture(scope="session")
def hopf_mixed():
    # component 0 kept as the zero-coefficient sublink
    return make(HOPF_EVENTS, {0: 0, 1: 1})


@pytest.fixture(scope="session")
def trefoil_plus_h1(trefoil_plus):
    return h1_presentation(trefoil_plus)


@pytest.fixture(scope="session")
def trefoil_minus_h1(trefoil_minus):
    return h1_presentation(trefoil_minus)
