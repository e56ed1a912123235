import sys
import random
from fractions import Fraction

from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from hirzebruch.field import CycloNum
from hirzebruch.words import GENERATORS, GenWord

settings.register_profile("default", deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

small_fractions = st.builds(Fraction, st.integers(-30, 30), st.integers(1, 12))

cyclo = st.builds(lambda cs: CycloNum(cs, 5), st.lists(small_fractions, min_size=4, max_size=4))
nonzero_cyclo = cyclo.filter(lambda a: not a.is_zero())

letters = st.tuples(st.sampled_from(GENERATORS), st.integers(-3, 3).filter(bool))
gen_words = st.builds(lambda ls: GenWord(tuple(ls)), st.lists(letters, max_size=8))


def rng(seed=0):
    return random.Random(seed)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("tests.test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.RESULTS[n])
