from fractions import Fraction

from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from modrep.cyclotomic import CycNum

settings.register_profile(
    "modrep",
    max_examples=100,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("modrep")

ORDERS = [1, 3, 4, 5, 8, 12, 15, 20]

rationals = st.builds(Fraction, st.integers(-20, 20), st.integers(1, 6))


@st.composite
def cycnums(draw, order=None, max_terms=6):
    m = order or draw(st.sampled_from(ORDERS))
    terms = draw(st.dictionaries(st.integers(0, m - 1), rationals, max_size=max_terms))
    return CycNum(m, terms)


@st.composite
def cyc_triples(draw):
    m = draw(st.sampled_from(ORDERS))
    return tuple(draw(cycnums(order=m)) for _ in range(3))


# -- acceptance summary ------------------------------------------------------

ACCEPTANCE_LINES = []


def record_criterion(label, passed, detail=""):
    line = f"{'PASS' if passed else 'FAIL'}  criterion {label}" + (f": {detail}" if detail else "")
    ACCEPTANCE_LINES.append(line)
    print(line)
    return passed


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
