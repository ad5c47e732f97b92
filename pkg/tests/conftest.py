import numpy as np
import pytest

from entrogeo import JointDistribution

NAMES = "ABCDEFGH"

# one PASS/FAIL line per acceptance criterion, replayed after the test
# summary so they stay visible under output capture
ACCEPTANCE_VERDICTS = []


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if ACCEPTANCE_VERDICTS:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_VERDICTS:
            terminalreporter.write_line(line)


def random_distribution(rng, cardinalities, names=None):
    """Dirichlet-flat random joint distribution; sums to 1 up to float error."""
    cards = tuple(int(c) for c in cardinalities)
    if names is None:
        names = NAMES[: len(cards)]
    probs = rng.dirichlet(np.ones(int(np.prod(cards))))
    return JointDistribution.from_flat(list(zip(names, cards)), probs)


def duplicate_variable(dist, index, name):
    """Append an exact copy of variable ``index`` as a new last variable."""
    t = dist.tensor
    card = dist.variables[index].cardinality
    out = np.zeros(t.shape + (card,))
    for v in range(card):
        sl = [slice(None)] * t.ndim
        sl[index] = v
        out[tuple(sl) + (v,)] = t[tuple(sl)]
    variables = [(v.name, v.cardinality) for v in dist.variables] + [(name, card)]
    return JointDistribution.from_flat(variables, out.ravel())


def independent_bits(n):
    return JointDistribution.from_flat(
        [(NAMES[i], 2) for i in range(n)], np.full(2**n, 1.0 / 2**n)
    )


@pytest.fixture
def fair_bit():
    return JointDistribution.from_flat([("A", 2)], [0.5, 0.5])


@pytest.fixture
def three_bits():
    return independent_bits(3)


@pytest.fixture
def bsc_pair():
    # P(A=B) = 0.75: H(AB)=1.8112781, H(A|B)=0.8112781, I=0.1887219
    return JointDistribution.from_flat(
        [("A", 2), ("B", 2)], [0.375, 0.125, 0.125, 0.375]
    )


@pytest.fixture
def ghz_z():
    # outcomes 000 and 111 each with probability 1/2
    probs = np.zeros(8)
    probs[0] = probs[7] = 0.5
    return JointDistribution.from_flat([("A", 2), ("B", 2), ("C", 2)], probs)


@pytest.fixture
def xor_triple():
    # A, B fair and independent, C = A xor B
    probs = np.zeros(8)
    for a in (0, 1):
        for b in (0, 1):
            probs[(a << 2) | (b << 1) | (a ^ b)] = 0.25
    return JointDistribution.from_flat([("A", 2), ("B", 2), ("C", 2)], probs)
