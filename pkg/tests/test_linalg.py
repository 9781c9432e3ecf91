from fractions import Fraction

from hypothesis import given, strategies as st

from qtree.linalg import in_span, rank, solve_in_span

vectors = st.lists(st.dictionaries(st.integers(0, 5), st.integers(-4, 4).filter(bool), max_size=4),
                   min_size=1, max_size=5)


def test_rank_and_span():
    vs = [{0: 1, 1: 1}, {1: 1, 2: 1}, {0: 1, 2: -1}]
    assert rank(vs) == 2
    assert in_span({0: 2, 2: -2}, vs)
    assert not in_span({0: 1}, vs)


@given(vectors, st.lists(st.integers(-3, 3), min_size=5, max_size=5))
def test_solution_reconstructs_target(vs, coeffs):
    target = {}
    for c, v in zip(coeffs, vs):
        for key, x in v.items():
            target[key] = target.get(key, 0) + c * x
    target = {key: x for key, x in target.items() if x}
    sol = solve_in_span(target, vs)
    assert sol is not None
    rebuilt = {}
    for i, c in sol.items():
        for key, x in vs[i].items():
            rebuilt[key] = rebuilt.get(key, 0) + Fraction(c) * x
    assert {key: x for key, x in rebuilt.items() if x} == target
