"""Shared hypothesis strategies for surveys and matrices."""

from __future__ import annotations

from hypothesis import strategies as st

from bwmtopsis.survey import ComparisonSurvey

# divisor table of the 1..9 scale, for building fully consistent surveys
_DIVISORS = {1: [1], 2: [1, 2], 3: [1, 3], 4: [1, 2, 4], 5: [1, 5],
             6: [1, 2, 3, 6], 7: [1, 7], 8: [1, 2, 4, 8], 9: [1, 3, 9]}


@st.composite
def valid_surveys(draw, min_n=2, max_n=7):
    """Surveys satisfying every structural invariant."""
    n = draw(st.integers(min_n, max_n))
    best = draw(st.integers(0, n - 1))
    worst = draw(st.integers(0, n - 1).filter(lambda w: w != best))
    a_bw = draw(st.integers(1, 9))
    bo = [draw(st.integers(1, 9)) for _ in range(n)]
    ow = [draw(st.integers(1, 9)) for _ in range(n)]
    bo[best] = 1
    ow[worst] = 1
    bo[worst] = a_bw
    ow[best] = a_bw
    return ComparisonSurvey("hyp", best, worst, tuple(bo), tuple(ow))


@st.composite
def consistent_surveys(draw, min_n=2, max_n=7):
    """Surveys whose comparison chains multiply exactly: bo[j]*ow[j] = a_bw."""
    n = draw(st.integers(min_n, max_n))
    best = draw(st.integers(0, n - 1))
    worst = draw(st.integers(0, n - 1).filter(lambda w: w != best))
    a_bw = draw(st.integers(1, 9))
    bo = [0] * n
    ow = [0] * n
    for j in range(n):
        d = draw(st.sampled_from(_DIVISORS[a_bw]))
        bo[j] = d
        ow[j] = a_bw // d
    bo[best] = 1
    ow[best] = a_bw
    bo[worst] = a_bw
    ow[worst] = 1
    return ComparisonSurvey("hyp", best, worst, tuple(bo), tuple(ow))


@st.composite
def raw_matrices(draw, min_m=2, max_m=5, min_n=2, max_n=4,
                 values=st.integers(1, 100)):
    """(rows, senses) pairs for a strictly positive raw matrix."""
    m = draw(st.integers(min_m, max_m))
    n = draw(st.integers(min_n, max_n))
    rows = [[float(draw(values)) for _ in range(n)] for _ in range(m)]
    senses = [draw(st.sampled_from(["benefit", "cost"])) for _ in range(n)]
    return rows, senses
