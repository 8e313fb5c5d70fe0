from fractions import Fraction

from hypothesis import strategies as st

from jordanq.linalg import ExactMatrix
from jordanq.scalar import GaussianRational

small_rationals = st.builds(Fraction, st.integers(-4, 4), st.integers(1, 3))
gaussian = st.builds(GaussianRational, small_rationals, st.sampled_from([0, 0, 0, 1, -1, Fraction(1, 2)]))


def matrices(min_rows=0, max_rows=4, min_cols=0, max_cols=4, square=False, elements=gaussian):
    @st.composite
    def build(draw):
        r = draw(st.integers(min_rows, max_rows))
        c = r if square else draw(st.integers(min_cols, max_cols))
        data = [[draw(elements) for _ in range(c)] for _ in range(r)]
        return ExactMatrix(data, c)

    return build()


def low_rank_matrices(max_dim=5):
    """Products of thin factors, so rank deficiency is common."""

    @st.composite
    def build(draw):
        r = draw(st.integers(1, max_dim))
        c = draw(st.integers(1, max_dim))
        k = draw(st.integers(0, min(r, c)))
        L = draw(matrices(r, r, k, k))
        R = draw(matrices(k, k, c, c))
        if k == 0:
            return ExactMatrix.zeros(r, c)
        return L @ R

    return build()


def structures(max_size=7, pool=None):
    """Jordan structures ``{lam: [sizes...]}`` with total size at most ``max_size``."""
    from oracles import EIGEN_POOL

    pool = EIGEN_POOL if pool is None else pool

    @st.composite
    def build(draw):
        lams = draw(st.lists(st.sampled_from(pool), min_size=1, max_size=3, unique=True))
        budget = max_size
        out = {}
        for lam in lams:
            if budget == 0:
                break
            sizes = draw(st.lists(st.integers(1, budget), min_size=1, max_size=budget))
            kept = []
            for s in sizes:
                if s <= budget:
                    kept.append(s)
                    budget -= s
            out[lam] = sorted(kept, reverse=True)
        return out

    return build()
