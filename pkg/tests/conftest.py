import pytest

from brim import GradedSubmodule, RingSpec, parse_polynomial


@pytest.fixture
def r11():
    return RingSpec(d=1, p=1)


@pytest.fixture
def r21():
    return RingSpec(d=2, p=1)


@pytest.fixture
def r22():
    return RingSpec(d=2, p=2)


@pytest.fixture
def r12():
    return RingSpec(d=1, p=2)


def mk(ring, gens, tdeg=1):
    return GradedSubmodule.from_gens(ring, tdeg, gens)


def P(ring, text):
    return parse_polynomial(ring, text)


@pytest.fixture
def m21(r21):
    """The maximal ideal of k[x,y] inside F = R."""
    return mk(r21, ["x1*t1", "x2*t1"])


@pytest.fixture
def mF22(r22):
    """m * F for F = R^2 over k[x,y]."""
    return mk(r22, ["x1*t1", "x2*t1", "x1*t2", "x2*t2"])
