import os
import sys

from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

sys.path.insert(0, os.path.dirname(__file__))

from froblab import Ideal, RingSpec  # noqa: E402

settings.register_profile(
    "repo", derandomize=True, deadline=None, max_examples=60,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.data_too_large])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "repo"))

NAMES = ("x", "y", "z")


@st.composite
def rings(draw, primes=(2, 3, 5), max_vars=3):
    p = draw(st.sampled_from(primes))
    n = draw(st.integers(1, max_vars))
    return RingSpec.of(p, NAMES[:n])


@st.composite
def polys(draw, ring, max_terms=4, max_degree=4, nonzero=False):
    k = draw(st.integers(1 if nonzero else 0, max_terms))
    f = ring.zero
    for _ in range(k):
        exps = draw(st.lists(st.integers(0, max_degree), min_size=ring.nvars,
                             max_size=ring.nvars))
        if sum(exps) > max_degree:
            exps = [u * max_degree // sum(exps) for u in exps]
        f = f + ring.monomial(exps, draw(st.integers(1, ring.p - 1)))
    if nonzero and not f:
        f = ring.one
    return f


@st.composite
def ideals(draw, ring=None, max_gens=3, max_degree=4, proper=False):
    ring = ring or draw(rings())
    k = draw(st.integers(1, max_gens))
    gens = []
    for _ in range(k):
        f = draw(polys(ring, max_degree=max_degree, nonzero=True))
        if proper:
            # drop the constant term so the ideal sits inside (x, y, ...)
            f = f - ring.constant(f.coefficient([0] * ring.nvars))
            if not f:
                f = ring.var(ring.variables[0])
        gens.append(f)
    return Ideal(ring, gens)


@st.composite
def monomial_ideals(draw, ring=None, max_gens=3, max_exp=9):
    ring = ring or draw(rings())
    k = draw(st.integers(1, max_gens))
    vecs = [tuple(draw(st.lists(st.integers(0, max_exp), min_size=ring.nvars,
                                max_size=ring.nvars))) for _ in range(k)]
    return ring, vecs


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(mod.RESULTS):
        rows = mod.RESULTS[n]
        failed = [label for label, ok in rows if not ok]
        verdict = "FAIL" if failed else "PASS"
        if failed:
            detail = f"failed: {'; '.join(failed)}"
        else:
            detail = rows[0][0] if len(rows) == 1 else f"{len(rows)} checks"
        terminalreporter.write_line(f"criterion {n}: {verdict} ({detail})")
