import sys
from fractions import Fraction
from pathlib import Path

from hypothesis import strategies as st

sys.path.insert(0, str(Path(__file__).parent))

from grasspaths.arith import RationalMatrix  # noqa: E402

small_rationals = st.builds(
    Fraction, st.integers(min_value=-6, max_value=6), st.integers(min_value=1, max_value=4)
)


@st.composite
def square_matrices(draw, min_size=0, max_size=4):
    n = draw(st.integers(min_value=min_size, max_value=max_size))
    rows = draw(st.lists(st.lists(small_rationals, min_size=n, max_size=n), min_size=n, max_size=n))
    return RationalMatrix(rows, cols=n)


@st.composite
def skew_matrices(draw, sizes=(0, 2, 4, 6)):
    m = draw(st.sampled_from(sizes))
    upper = draw(st.lists(small_rationals, min_size=m * (m - 1) // 2, max_size=m * (m - 1) // 2))
    a = [[Fraction(0)] * m for _ in range(m)]
    it = iter(upper)
    for i in range(m):
        for j in range(i + 1, m):
            a[i][j] = next(it)
            a[j][i] = -a[i][j]
    return RationalMatrix(a, cols=m)


def random_skew(rng, m, bound=5):
    a = [[Fraction(0)] * m for _ in range(m)]
    for i in range(m):
        for j in range(i + 1, m):
            a[i][j] = Fraction(rng.randint(-bound, bound), rng.randint(1, 3))
            a[j][i] = -a[i][j]
    return RationalMatrix(a, cols=m)


def random_square(rng, n, bound=5):
    return RationalMatrix(
        [[Fraction(rng.randint(-bound, bound), rng.randint(1, 3)) for _ in range(n)] for _ in range(n)],
        cols=n,
    )


def pytest_terminal_summary(terminalreporter):
    acceptance = sys.modules.get("test_acceptance")
    if acceptance is None or not acceptance.LINES:
        return
    terminalreporter.section("acceptance criteria")
    for line in acceptance.LINES:
        terminalreporter.write_line(line)
