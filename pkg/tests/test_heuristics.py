from hypothesis import given, settings, strategies as st

from paintshop.encoding import is_valid_coloring, swap_count
from paintshop.heuristics import (
    greedy,
    recursive_greedy,
    recursive_star_greedy,
    red_first,
    red_first_cost_via_eta,
)
from paintshop.instances import generate_instance, validate_instance
from paintshop.oracles import bpsp_bruteforce

T = validate_instance((1, 2, 1, 3, 3, 2))
ONE = validate_instance((1, 1))
SHOWCASE = validate_instance((5, 1, 1, 3, 2, 2, 5, 4, 3, 6, 6, 4))

ALL_SCHEMES = (red_first, greedy, recursive_greedy, recursive_star_greedy)


@st.composite
def instances(draw, max_n=10):
    n = draw(st.integers(min_value=1, max_value=max_n))
    word = draw(st.permutations([s for s in range(1, n + 1) for _ in range(2)]))
    return validate_instance(word)


class TestShowcaseInstance:
    """The six-car sequence where the four schemes spread 7/6/5/4 swaps."""

    def test_swap_counts(self):
        assert swap_count(red_first(SHOWCASE)) == 7
        assert swap_count(greedy(SHOWCASE)) == 6
        assert swap_count(recursive_greedy(SHOWCASE)) == 5
        assert swap_count(recursive_star_greedy(SHOWCASE)) == 4

    def test_star_variant_matches_optimum_here(self):
        assert bpsp_bruteforce(SHOWCASE)[0] == 4


class TestRedFirst:
    def test_t(self):
        assert red_first(T) == "rrbrbb"
        assert swap_count(red_first(T)) == 3

    def test_one(self):
        assert red_first(ONE) == "rb"

    def test_cost_via_boundary_parities(self):
        assert red_first_cost_via_eta(T) == 3
        assert red_first_cost_via_eta(ONE) == 1

    @given(instances(max_n=40))
    def test_parity_sum_identity(self, x):
        assert red_first_cost_via_eta(x) == swap_count(red_first(x))


class TestGreedy:
    def test_trace(self):
        assert greedy(validate_instance((1, 2, 1, 2))) == "rrbb"

    def test_one(self):
        assert greedy(ONE) == "rb"


class TestRecursiveGreedy:
    def test_trace(self):
        x = validate_instance((1, 2, 2, 1))
        assert recursive_greedy(x) == "rrbb"
        assert swap_count(recursive_greedy(x)) == 1

    def test_one(self):
        assert recursive_greedy(ONE) == "rb"


class TestRecursiveStarGreedy:
    def test_one(self):
        assert recursive_star_greedy(ONE) == "rb"

    def test_never_beats_exhaustive(self):
        for seed in range(40):
            x = generate_instance(2 + seed % 9, 4000 + seed)
            assert swap_count(recursive_star_greedy(x)) >= bpsp_bruteforce(x)[0]


class TestSharedContracts:
    @given(instances())
    @settings(max_examples=150)
    def test_validity_and_red_start(self, x):
        for scheme in ALL_SCHEMES:
            f = scheme(x)
            assert is_valid_coloring(x, f)
            assert f[0] == "r"

    def test_validity_exhaustive_tiny(self):
        import itertools

        for n in range(1, 5):
            base = [s for s in range(1, n + 1) for _ in range(2)]
            for word in set(itertools.permutations(base)):
                x = validate_instance(word)
                for scheme in ALL_SCHEMES:
                    assert is_valid_coloring(x, scheme(x)), (scheme.__name__, word)

    @given(instances())
    def test_determinism(self, x):
        for scheme in ALL_SCHEMES:
            assert scheme(x) == scheme(x)

    def test_large_instance_no_recursion_limit(self):
        x = generate_instance(4096, 7)
        for scheme in ALL_SCHEMES:
            f = scheme(x)
            assert is_valid_coloring(x, f)
