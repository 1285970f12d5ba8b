import sys
from fractions import Fraction
from pathlib import Path

import pytest
from hypothesis import settings, strategies as st

from misrep.core import Profile

sys.path.insert(0, str(Path(__file__).parent))

settings.register_profile('default', max_examples=100, deadline=None)
settings.load_profile('default')

FIXTURES = Path(__file__).parent / 'fixtures'

THREE_STEP = Profile('0.65 0.58 0.49 0.485 0.48 0.47 0.42 0.40 0.39 0.38 0.33 0.325'.split())
TWO_STEP = Profile('0.64 0.58 0.54 0.501 0.48 0.46 0.45 0.44 0.43 0.42 0.41 0.40'.split())
OVERREP = Profile('0.70 0.65 0.60 0.55 0.52 0.51 0.49 0.47'.split())
MISSING_POINT = Profile('0.62 0.55 0.53 0.51 0.48 0.47 0.45 0.39'.split())
GERRY6 = Profile('0.9 0.8 0.6 0.1 0.1 0.1'.split())


def shares(denominator=100):
    return st.integers(0, denominator).map(lambda k: Fraction(k, denominator))


def profiles(min_size=1, max_size=10, denominator=100, unique=False):
    return st.lists(
        st.integers(0, denominator), min_size=min_size, max_size=max_size, unique=unique,
    ).map(lambda ks: Profile(Fraction(k, denominator) for k in ks))


def weights(denominator=100, top=300):
    return st.integers(0, top).map(lambda k: Fraction(k, denominator))


# the acceptance module records one verdict per criterion here
ACCEPTANCE = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section('acceptance criteria')
    for number in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[number]
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'} {number}: {detail}")


@pytest.fixture
def fixtures_dir():
    return FIXTURES
