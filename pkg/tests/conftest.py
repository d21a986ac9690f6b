from hypothesis import settings, strategies as st

from satmat import Matrix

settings.register_profile("default", max_examples=150, deadline=None)
settings.load_profile("default")


@st.composite
def matrices(draw, max_rows=5, max_cols=5, min_rows=1, min_cols=1):
    m = draw(st.integers(min_rows, max_rows))
    n = draw(st.integers(min_cols, max_cols))
    bits = draw(st.integers(0, (1 << (m * n)) - 1))
    return Matrix.from_bits(m, n, bits)


@st.composite
def patterns(draw, max_rows=3, max_cols=3):
    m = draw(st.integers(1, max_rows))
    n = draw(st.integers(1, max_cols))
    bits = draw(st.integers(1, (1 << (m * n)) - 1))
    return Matrix.from_bits(m, n, bits)


def pytest_terminal_summary(terminalreporter):
    try:
        import test_acceptance
    except ImportError:
        return
    if test_acceptance.RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in test_acceptance.summary_lines():
            terminalreporter.write_line(line)
