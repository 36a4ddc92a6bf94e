import pytest
from fractions import Fraction

from kneadlab.automaton import automaton_from_kneading_sequence, parse_automaton_text
from kneadlab.lengthfunc import Calculus, WeightAssignment
from kneadlab.verify import ORDER_0011, ORDER_0110, WEIGHTS_0011, weights_10k

# the worked example of a kneading automaton, written out by hand
EXAMPLE_TEXT = """\
# kneading sequence 11(0)
a 0 -> 0 id
a 1 -> 1 t
b 0 -> 0 b
b 1 -> 1 a
t 0 -> 1 id
t 1 -> 0 id
id 0 -> 0 id
id 1 -> 1 id
"""


@pytest.fixture(scope="session")
def example():
    return parse_automaton_text(EXAMPLE_TEXT)


@pytest.fixture(scope="session")
def a110():
    return automaton_from_kneading_sequence("11(0)")


@pytest.fixture(scope="session")
def a0011():
    return automaton_from_kneading_sequence("0(011)")


@pytest.fixture(scope="session")
def a0110():
    return automaton_from_kneading_sequence("01(10)")


@pytest.fixture(scope="session")
def calc110(a110):
    return Calculus(a110, WeightAssignment.uniform(a110))


@pytest.fixture(scope="session")
def calc0011(a0011):
    return Calculus(a0011, WEIGHTS_0011, order=ORDER_0011)


@pytest.fixture(scope="session")
def calc0110(a0110):
    return Calculus(a0110, WeightAssignment.uniform(a0110), order=ORDER_0110)


@pytest.fixture(scope="session")
def calc10k():
    cache = {}

    def get(k):
        if k not in cache:
            cache[k] = Calculus(automaton_from_kneading_sequence("1(" + "0" * k + ")"), weights_10k(k))
        return cache[k]

    return get


def frac(x):
    return Fraction(x)


# -- acceptance summary ---------------------------------------------------------

ACCEPTANCE: dict[int, str] = {}


def record(number: int, ok: bool, text: str) -> None:
    line = f"criterion {number:>2}: {'PASS' if ok else 'FAIL'}  {text}"
    ACCEPTANCE[number] = line
    print(line)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for n in sorted(ACCEPTANCE):
            terminalreporter.write_line(ACCEPTANCE[n])
