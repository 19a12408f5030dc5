import numpy as np
from hypothesis import strategies as st

from qsubfactor.corep import CorepDecomp

ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)


def reps(max_twice=4, max_blocks=3, max_mult=3):
    """Hypothesis strategy for CorepDecomp."""
    return st.dictionaries(
        st.integers(0, max_twice), st.integers(1, max_mult), min_size=1, max_size=max_blocks
    ).map(CorepDecomp.from_counts)


def character_fusion(a: CorepDecomp, b: CorepDecomp) -> CorepDecomp:
    """Oracle: multiply weight characters, then peel off highest weights."""
    def char(r):
        c = {}
        for s, m in r.blocks:
            for w in range(-s.twice_ell, s.twice_ell + 1, 2):
                c[w] = c.get(w, 0) + m
        return c

    ca, cb = char(a), char(b)
    prod = {}
    for w1, m1 in ca.items():
        for w2, m2 in cb.items():
            prod[w1 + w2] = prod.get(w1 + w2, 0) + m1 * m2
    out = {}
    while any(prod.values()):
        top = max(w for w, m in prod.items() if m)
        m = prod[top]
        out[top] = m
        for w in range(-top, top + 1, 2):
            prod[w] -= m
    return CorepDecomp.from_counts(out)


def random_matrix(n, seed=0):
    return np.random.default_rng(seed).normal(size=(n, n))
