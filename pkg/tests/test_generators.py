import pytest

from spatial_linking.aggregate import Analysis
from spatial_linking.generators import GenerationError, moment_curve, random_embedding
from spatial_linking.geometry import validate_embedding


def test_random_deterministic():
    assert random_embedding(6, 1) == random_embedding(6, 1)
    assert random_embedding(6, 1) != random_embedding(6, 2)


def test_random_in_bounds():
    e = random_embedding(9, 3, bound=20)
    assert all(-20 <= c <= 20 for v in e.vertices for c in v)
    assert all(c.denominator == 1 for v in e.vertices for c in v)
    assert e.is_rectilinear and validate_embedding(e) == []


def test_random_pinned_first_vertex():
    # guards the documented stream layout: MT19937, rejection on getrandbits(8), x y z order
    import random

    rng = random.Random(1)
    first = []
    while len(first) < 3:
        r = rng.getrandbits(8)
        if r < 201:
            first.append(r - 100)
    assert random_embedding(6, 1).vertices[0] == tuple(first)


def test_bound_too_small():
    with pytest.raises(ValueError):
        random_embedding(6, 0, bound=5)


def test_budget_exhausted():
    # a zero budget allows no draws at all
    with pytest.raises(GenerationError):
        random_embedding(9, 0, bound=9, budget=0)


@pytest.mark.parametrize("seed", range(10))
def test_k6_hamiltonian_lk_sum_odd(seed):
    assert Analysis(random_embedding(6, seed)).lk_stats(3, 3).total % 2 == 1


def test_moment_curve_errors():
    with pytest.raises(ValueError):
        moment_curve(5, [1, 2, 2, 3, 4])
    with pytest.raises(ValueError):
        moment_curve(4, [1, 2, 3])
    with pytest.raises(ValueError):
        moment_curve(2)


def test_moment_curve_custom_parameters():
    e = moment_curve(6, [-3, -1, 0, 2, 5, 6])
    assert e.vertices[0] == (-3, 9, -27)
    assert Analysis(e).lk2(3, 3) == 1
