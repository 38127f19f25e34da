import json

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from signed_corona.errors import DomainError
from signed_corona.graph import SignedGraph, is_connected
from signed_corona.growth import trace
from signed_corona.growth.counts import SeedProfile, k_factors
from signed_corona.seedfit import (
    FitTarget,
    candidate_sizes,
    constrained_triad_forms,
    predicted_profile,
    recommend_seed,
    signature,
)

from conftest import cycle4_one_negative, negative_triangle, random_signed_graph

EPINIONS = dict(nodes=119217, p_e_plus=0.85, p_t=(0.870, 0.052, 0.071, 0.007))


# -- target validation --------------------------------------------------------


@pytest.mark.parametrize(
    "kw",
    [
        dict(nodes=0),
        dict(p_e_plus=1.5),
        dict(p_t=(0.5, 0.5, 0.0)),
        dict(tolerance=(0.1, 0.1, -0.1, 0.1, 0.1)),
        dict(n_max=11),
        dict(n_min=5, n_max=4),
        dict(m_max=0),
    ],
)
def test_malformed_targets_rejected(kw):
    base = dict(nodes=1000, p_e_plus=0.5, p_t=(0.25, 0.25, 0.25, 0.25))
    with pytest.raises(DomainError):
        FitTarget(**{**base, **kw})


def test_candidate_sizes_within_factor_two():
    t = FitTarget(nodes=10_000, p_e_plus=0.5, p_t=(0.25,) * 4)
    sizes = candidate_sizes(t)
    assert sizes
    for n, m, order in sizes:
        assert order == n * (n + 1) ** m
        assert t.nodes / 2 <= order <= 2 * t.nodes
    gaps = [abs(np.log(o / t.nodes)) for _, _, o in sizes]
    assert gaps == sorted(gaps)


def test_infeasible_node_count_is_explicit():
    res = recommend_seed(FitTarget(nodes=1, p_e_plus=0.5, p_t=(1, 0, 0, 0)))
    assert not res.feasible
    assert res.candidates == [] and "factor 2" in res.reason
    assert json.loads(res.dumps())["feasible"] is False


def test_top_must_be_positive():
    with pytest.raises(DomainError):
        recommend_seed(FitTarget(nodes=100, p_e_plus=0.5, p_t=(1, 0, 0, 0)), top=0)


# -- recommendations ----------------------------------------------------------


@pytest.mark.parametrize(
    "seed, m",
    [
        (cycle4_one_negative(), 2),
        (negative_triangle(), 3),
        (SignedGraph(3, [(0, 1, 1), (1, 2, -1)]), 3),
        (SignedGraph(5, [(0, 1, 1), (1, 2, -1), (2, 3, 1), (3, 4, -1), (0, 4, 1), (0, 2, 1)]), 2),
    ],
)
def test_known_seed_recovered_with_zero_tolerance(seed, m):
    prof = predicted_profile(seed, m)
    target = FitTarget.from_profile(prof, tolerance=(0.0,) * 5, n_max=seed.node_count, n_min=seed.node_count)
    best = recommend_seed(target, top=3).candidates[0]
    assert best.score == 0.0 and best.within_tolerance
    assert best.m == m
    assert signature(best.seed) == signature(seed)


def test_all_positive_target_gives_all_positive_seeds():
    res = recommend_seed(FitTarget(nodes=1000, p_e_plus=1.0, p_t=(1, 0, 0, 0)), top=5)
    assert res.feasible and len(res.candidates) == 5
    for c in res.candidates:
        assert c.score == 0.0
        assert c.seed.negative_edge_count == 0
        assert c.profile.p_t == (1.0, 0.0, 0.0, 0.0)


def test_candidates_are_connected_ranked_and_distinct():
    t = FitTarget(nodes=5000, p_e_plus=0.6, p_t=(0.4, 0.3, 0.2, 0.1), n_max=5)
    res = recommend_seed(t, top=8)
    scores = [c.score for c in res.candidates]
    assert scores == sorted(scores)
    keys = {(c.m, signature(c.seed)) for c in res.candidates}
    assert len(keys) == len(res.candidates)
    assert all(is_connected(c.seed) for c in res.candidates)
    assert res.evaluated > 0


@pytest.mark.parametrize("randomized", [False, True])
def test_profiles_equal_trace_recomputation(randomized):
    t = FitTarget(nodes=3000, p_e_plus=0.7, p_t=(0.6, 0.2, 0.15, 0.05), n_max=5, randomized=randomized, iterations=100)
    for c in recommend_seed(t, top=6).candidates:
        fin = trace(c.seed, c.m).final
        assert (c.profile.nodes, c.profile.edges, c.profile.positive_edges, c.profile.triads) == (
            fin.nodes,
            fin.edges,
            fin.e_plus,
            fin.triads,
        )
        diffs = [abs(c.profile.p_e_plus - t.p_e_plus)] + [abs(a - b) for a, b in zip(c.profile.p_t, t.p_t)]
        assert c.score == pytest.approx(sum(diffs), abs=1e-12)


def test_constrained_search_stays_in_family():
    t = FitTarget(nodes=3000, p_e_plus=0.7, p_t=(0.6, 0.2, 0.15, 0.05), n_max=5)
    for c in recommend_seed(t, constrained=True, top=8).candidates:
        prof = SeedProfile.of(c.seed)
        assert prof.classes.pos_pm == prof.classes.pos_mm == prof.classes.neg_mm == 0
        assert prof.triads[3] == 0


def test_randomized_search_is_deterministic():
    kw = dict(**EPINIONS, n_max=8, n_min=7, randomized=True, restarts=3, iterations=150)
    a = recommend_seed(FitTarget(rng_seed=7, **kw), top=4)
    b = recommend_seed(FitTarget(rng_seed=7, **kw), top=4)
    assert a.dumps() == b.dumps()


def test_weights_change_the_ranking():
    base = dict(nodes=3000, p_e_plus=0.7, p_t=(0.6, 0.2, 0.15, 0.05), n_max=5)
    plain = recommend_seed(FitTarget(**base), top=1).candidates[0]
    edge_only = recommend_seed(FitTarget(weights=(1.0, 0, 0, 0, 0), **base), top=1).candidates[0]
    assert edge_only.score <= abs(plain.profile.p_e_plus - 0.7) + 1e-12


@pytest.mark.parametrize("rng_seed", [0, 1, 2])
def test_epinions_regime_constrained(rng_seed):
    res = recommend_seed(FitTarget(**EPINIONS, n_max=9, randomized=True, rng_seed=rng_seed), constrained=True, top=5)
    assert res.feasible and len(res.candidates) == 5
    for c in res.candidates:
        assert c.profile.p_t[0] >= 0.70
        assert c.profile.p_t[3] <= 0.02


@pytest.mark.parametrize("rng_seed", [0, 1, 2])
def test_epinions_regime_unconstrained(rng_seed):
    res = recommend_seed(FitTarget(**EPINIONS, n_max=9, randomized=True, rng_seed=rng_seed), top=5)
    best = res.candidates[0]
    assert best.profile.p_t[0] >= 0.70 and best.profile.p_t[3] <= 0.02
    assert all(c.profile.p_t[0] >= 0.70 for c in res.candidates)


def test_result_json_shape():
    res = recommend_seed(FitTarget(nodes=500, p_e_plus=0.8, p_t=(0.7, 0.1, 0.1, 0.1), n_max=4), top=2)
    d = json.loads(res.dumps())
    assert d["feasible"] and len(d["candidates"]) == 2
    first = d["candidates"][0]
    assert set(first) == {"m", "seed_nodes", "seed_edges", "score", "within_tolerance", "profile"}
    g = SignedGraph(first["seed_nodes"], [tuple(e) for e in first["seed_edges"]])
    assert predicted_profile(g, first["m"]).triads == tuple(first["profile"]["triads"])


# -- constrained closed forms ----------------------------------------------------


def test_closed_forms_match_trace_on_random_seeds():
    rng = np.random.default_rng(31)
    for _ in range(1000):
        n = int(rng.integers(1, 7))
        seed = random_signed_graph(rng, n, p=float(rng.uniform(0.2, 1.0)), q=float(rng.uniform(0, 1)), connected=True)
        m = int(rng.integers(0, 7))
        forms = constrained_triad_forms(SeedProfile.of(seed), m)
        fin = trace(seed, m).final
        assert (forms.triads, forms.e_plus, forms.e_minus) == (fin.triads, fin.e_plus, fin.e_minus)


@settings(max_examples=100, deadline=None)
@given(st.integers(2, 6), st.integers(1, 6), st.data())
def test_all_positive_seed_has_only_positive_triads(n, m, data):
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    chosen = data.draw(st.lists(st.sampled_from(pairs), min_size=n - 1, unique=True))
    seed = SignedGraph(n, [(u, v, 1) for u, v in pairs if (u, v) in chosen or v == u + 1])
    forms = constrained_triad_forms(SeedProfile.of(seed), m)
    assert forms.triads[1:] == (0, 0, 0)
    assert forms.e_minus == 0


@pytest.mark.parametrize(
    "seed",
    [
        SignedGraph(4, [(0, 1, -1), (1, 2, -1), (2, 3, -1), (0, 3, -1)]),
        SignedGraph(4, [(0, 1, -1), (1, 2, -1), (2, 3, -1), (0, 3, -1), (0, 2, 1), (1, 3, 1)]),
        SignedGraph(3, [(0, 1, 1), (1, 2, 1), (0, 2, 1)]),
    ],
)
@pytest.mark.parametrize("m", [1, 2, 4, 6])
def test_constrained_family_negative_triads(seed, m):
    prof = SeedProfile.of(seed)
    forms = constrained_triad_forms(prof, m)
    assert forms.constrained
    f = k_factors(prof, m)
    assert forms.triads[3] == prof.classes.neg_pp * f.k3
    assert forms.triads == trace(seed, m).final.triads


def test_general_forms_outside_the_family():
    forms = constrained_triad_forms(SeedProfile.of(negative_triangle()), 3)
    assert not forms.constrained
    assert forms.triads == trace(negative_triangle(), 3).final.triads
