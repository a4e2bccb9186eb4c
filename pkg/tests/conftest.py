from fractions import Fraction

from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from ajcable.poly import MultiLaurent

settings.register_profile("default", max_examples=40, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


def laurent(names=("t", "M", "L"), lo=-3, hi=3, max_terms=5, fractions=False):
    """Small sparse polynomials in the given variables."""
    exps = st.tuples(*[st.integers(lo, hi) for _ in names])
    coef = st.integers(-5, 5).filter(bool)
    if fractions:
        coef = st.one_of(coef, st.fractions(min_value=-3, max_value=3, max_denominator=4).filter(bool))

    def build(items):
        terms = {}
        for e, c in items:
            full = dict(zip(names, e))
            key = tuple(full.get(v, 0) for v in ("t", "M", "L", "lam", "z"))
            terms[key] = terms.get(key, 0) + Fraction(c)
        return MultiLaurent({k: v for k, v in terms.items() if v})

    return st.lists(st.tuples(exps, coef), max_size=max_terms).map(build)


def nonzero(strategy):
    return strategy.filter(lambda p: not p.is_zero())


import pytest  # noqa: E402


@pytest.fixture(scope="session")
def trefoil_report():
    """The (-1, -1) end-to-end run, shared by the harness and acceptance suites."""
    import time

    from ajcable.guess import GuessConfig
    from ajcable.harness import verify_aj

    t0 = time.perf_counter()
    rep = verify_aj(-1, -1, GuessConfig(d_cap=2, delta_cap=30))
    return rep, time.perf_counter() - t0


_CRITERIA: dict[int, tuple[str, bool, float]] = {}


@pytest.fixture
def criterion():
    """Record one acceptance line: criterion(number, title) as a context manager."""
    import contextlib
    import time

    @contextlib.contextmanager
    def run(number, title, limit=None, elapsed=0.0):
        t0 = time.perf_counter()
        ok = False
        try:
            yield
            ok = True
        finally:
            dt = time.perf_counter() - t0 + elapsed
            if limit is not None and dt > limit:
                ok = False
            _CRITERIA[number] = (title, ok, dt)
            print(f"criterion {number:2d}: {'PASS' if ok else 'FAIL'}  {title}  ({dt:.2f}s)")
        if limit is not None:
            assert dt <= limit, f"criterion {number} took {dt:.1f}s, limit {limit}s"

    return run


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_CRITERIA):
        title, ok, dt = _CRITERIA[number]
        terminalreporter.write_line(f"criterion {number:2d}: {'PASS' if ok else 'FAIL'}  {title}  ({dt:.2f}s)")
