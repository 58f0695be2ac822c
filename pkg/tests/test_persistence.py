import numpy as np
from hypothesis import given, settings
from hypothesis import strategies as st

from matchdist.bottleneck import bottleneck_distance
from matchdist.complexes import mono_filtration
from matchdist.generators import generate_random
from matchdist.persistence import Diagram, persistence_dim0, persistence_general
from matchdist.slices import SLICE_TYPES, Slice, restrict


def path_complex():
    # four vertices on a path, components born at 0, 0.1, 0.4, 0.5 and the
    # younger three dying at 0.2, 0.6, 0.8
    simplices = [[0], [1], [2], [3], [0, 1], [1, 2], [2, 3]]
    values = [0.0, 0.1, 0.4, 0.5, 0.2, 0.6, 0.8]
    return mono_filtration(simplices, values)


def test_path_complex_diagram():
    D = persistence_dim0(path_complex())
    assert D.finite == ((0.1, 0.2), (0.4, 0.6), (0.5, 0.8))
    assert D.essential == (0.0,)


def test_single_vertex():
    D = persistence_dim0(mono_filtration([[0]], [2.5]))
    assert D.finite == () and D.essential == (2.5,)


def test_zero_persistence_pair_discarded():
    M = mono_filtration([[0], [1], [0, 1]], [0.0, 1.0, 1.0])
    D = persistence_dim0(M)
    assert D.finite == ()
    assert D.essential == (0.0,)


def test_elder_rule_tie_breaking():
    # equal births: the component created by the smaller vertex id dies
    M = mono_filtration([[0], [1], [0, 1]], [0.5, 0.5, 1.0])
    D = persistence_dim0(M)
    assert D.finite == ((0.5, 1.0),)
    assert D.essential == (0.5,)


def test_hollow_triangle_dim1():
    simplices = [[0], [1], [2], [0, 1], [0, 2], [1, 2]]
    M = mono_filtration(simplices, [0.0, 0.0, 0.0, 1.0, 1.0, 1.0])
    D = persistence_general(M, 1)
    assert D.finite == ()
    assert D.essential == (1.0,)


def test_filled_triangle_dim1():
    simplices = [[0], [1], [2], [0, 1], [0, 2], [1, 2], [0, 1, 2]]
    M = mono_filtration(simplices, [0.0, 0.0, 0.0, 1.0, 1.0, 1.0, 2.0])
    D = persistence_general(M, 1)
    assert D.finite == ((1.0, 2.0),)
    assert D.essential == ()


def _random_mono(seed: int):
    from conftest import random_genspec

    rng = np.random.Generator(np.random.Philox(seed))
    F = generate_random(random_genspec(rng, seed, d_hi=2))
    t = SLICE_TYPES[int(rng.integers(0, 4))]
    L = Slice(float(rng.uniform(0, 1)), float(rng.uniform(0, 500)), t)
    return restrict(F, L)


@settings(max_examples=80, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_dim0_matches_general_reduction(seed):
    M = _random_mono(seed)
    assert persistence_dim0(M) == persistence_general(M, 0)


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_point_count_bound(seed):
    M = _random_mono(seed)
    D = persistence_dim0(M)
    assert len(D.finite) + len(D.essential) <= M.complex.vertex_count


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 2**32 - 1), st.floats(0.01, 0.5))
def test_stability_under_perturbation(seed, eps):
    M = _random_mono(seed)
    rng = np.random.Generator(np.random.Philox(seed ^ 0xABCDEF))
    noisy = M.values + rng.uniform(-eps, eps, size=M.values.shape)
    # repair monotonicity; facets precede cofaces in storage order so one
    # forward pass suffices, and the repair stays within eps of the input
    vals = noisy.copy()
    for i, fs in enumerate(M.complex.facet_indices):
        for j in fs:
            vals[i] = max(vals[i], vals[j])
    from matchdist.complexes import MonoFiltration

    M2 = MonoFiltration(M.complex, vals)
    M2.check_monotone()
    assert np.all(np.abs(vals - M.values) <= eps + 1e-12)
    d = bottleneck_distance(persistence_dim0(M), persistence_dim0(M2))
    assert d <= eps + 1e-12


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 2**32 - 1), st.floats(-5.0, 5.0))
def test_shift_equivariance(seed, r):
    from matchdist.complexes import MonoFiltration

    M = _random_mono(seed)
    D = persistence_dim0(M)
    D2 = persistence_dim0(MonoFiltration(M.complex, M.values + r))
    # shifting every value shifts every diagram coordinate
    expect = Diagram.make(
        [(b + r, d + r) for b, d in D.finite], [b + r for b in D.essential], 0
    )
    assert D2 == expect


def test_dimension_beyond_complex_is_empty():
    M = mono_filtration([[0], [1], [0, 1]], [0.0, 0.0, 1.0])
    D = persistence_general(M, 2)
    assert D.finite == () and D.essential == ()
