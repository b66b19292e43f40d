import math
import sys
from fractions import Fraction

import mpmath
import numpy as np
import pytest

from lyapspec.mapspec import PRESETS, MapSpec, preset

mpmath.mp.dps = 50

# Raw (multiplicity, length) tables, written independently of the parser.
RAW_PRESETS = {
    "S4": [(1, Fraction(4, 5)), (5, Fraction(1, 65)), (1, Fraction(1, 3380))],
    "S6": [
        (1, Fraction(4, 5)),
        (30, Fraction(1, 400)),
        (30, Fraction(1, 128000)),
        (1, Fraction(1, 40960000)),
    ],
    "S8": [
        (1, Fraction(4, 5)),
        (125, Fraction(1, 2000)),
        (585, Fraction(1, 3200000)),
        (109, Fraction(1, 5120000000)),
        (1, Fraction(1, 8192000000000)),
    ],
    "Fig4": [(1, Fraction(1, 2)), (20, Fraction(1, 2**45)), (1, Fraction(1, 2**100))],
    "Fig6": [
        (1, Fraction(1, 2)),
        (1000, Fraction(1, 2**51)),
        (6000, Fraction(1, 2**101)),
        (1, Fraction(1, 2**150)),
    ],
}


def mp_moments(raw, s):
    """Brute-force (ln F, mean, variance) at ``s`` in 50-digit arithmetic."""
    s = mpmath.mpf(s)
    terms = [(mpmath.mpf(m), mpmath.mpf(l.numerator) / l.denominator) for m, l in raw]
    weights = [m * mpmath.power(l, s) for m, l in terms]
    total = mpmath.fsum(weights)
    lam = [-mpmath.log(l) for _, l in terms]
    mean = mpmath.fsum(w * x for w, x in zip(weights, lam)) / total
    var = mpmath.fsum(w * (x - mean) ** 2 for w, x in zip(weights, lam)) / total
    return float(mpmath.log(total)), float(mean), float(var)


def random_two_branch(rng, ratio):
    """Two-branch spec with ``ln-ratio = ratio`` and the larger length in [1/8, 1/2]."""
    u1 = rng.uniform(1.0, 3.0)
    return MapSpec.from_classes([(0.0, -u1), (0.0, -ratio * u1)], f"two({u1:.3f}, {ratio:.3f})")


def random_three_class(rng):
    """Three classes with exponents in [ln 2, ln 1e4]; roughly a third have two inflections."""
    lam = [
        rng.uniform(math.log(2), math.log(2.2)),
        rng.uniform(math.log(8), math.log(1e4)),
        rng.uniform(math.log(4000), math.log(1e4)),
    ]
    mult = [1, int(rng.integers(1, 4)), 1]
    return MapSpec.from_classes(
        [(math.log2(m), -x / math.log(2)) for m, x in zip(mult, lam)], "random-3"
    )


@pytest.fixture(params=PRESETS)
def preset_name(request):
    return request.param


@pytest.fixture
def preset_spec(preset_name):
    return preset(preset_name)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def pytest_terminal_summary(terminalreporter):
    module = sys.modules.get("test_acceptance")
    if module is None or not module.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in module.summary_lines():
        terminalreporter.write_line(line)
