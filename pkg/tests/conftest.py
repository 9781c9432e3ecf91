from functools import lru_cache

from hypothesis import HealthCheck, settings, strategies as st

from qtree.classical import enumerate_aut
from qtree.engine import TreeAlgebra
from qtree.reps import two_projection_rep

settings.register_profile("qtree", max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("qtree")


@lru_cache(maxsize=None)
def aut_points(k, d):
    return tuple(enumerate_aut(k, d))


@lru_cache(maxsize=None)
def tp_rep():
    return two_projection_rep(D=3)


def words(k, min_len=0, max_len=2):
    return st.integers(min_len, max_len).flatmap(
        lambda n: st.tuples(*[st.integers(0, k - 1)] * n) if n else st.just(()))


def generators(k=2, max_depth=2):
    return st.integers(1, max_depth).flatmap(
        lambda n: st.tuples(words(k, n, n), words(k, n, n)))


def monomials(k=2, max_depth=2, max_degree=3):
    alg = TreeAlgebra(k)

    def build(pairs):
        x = alg.one()
        for u, v in pairs:
            x = x * alg.gen(u, v)
        return x

    return st.lists(generators(k, max_depth), min_size=1, max_size=max_degree).map(build)


def elements(k=2, max_depth=2, max_degree=3):
    alg = TreeAlgebra(k)
    terms = st.tuples(st.integers(-3, 3), monomials(k, max_depth, max_degree))

    def build(items):
        x = alg.zero()
        for c, m in items:
            x = x + m.scale(c)
        return x

    return st.lists(terms, min_size=1, max_size=4).map(build)


def pytest_terminal_summary(terminalreporter):
    import sys

    module = sys.modules.get("test_acceptance")
    lines = getattr(module, "LINES", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for text in lines:
            terminalreporter.write_line(text)
