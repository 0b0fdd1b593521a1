"""Hypothesis properties.

The four ``prop_*`` functions listed in ``SWEEP`` are also driven from the
acceptance test, which reads ``CASES`` to confirm the harness ran at least
1000 examples in total.
"""

from collections import Counter
from fractions import Fraction as F

from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from dofb import ffield
from dofb._seeding import derive_rng
from dofb.bottleneck import find_all_bottlenecks, is_cut, prior_bound
from dofb.engine import Reconstructed, decode_check, reconstruct_row, run_scheme, simulate
from dofb.errors import CausalityViolation, IllegalReconstruction, UnknownRef
from dofb.families import random_layered
from dofb.network import flip, parse_network, serialize_network
from dofb.rank import SupportPattern, draw_gains, field_rank, structural_rank
from dofb.region import HalfPlane, build_region, region_from_constraints
from dofb.schemes import scheme_2d1d2, scheme_example1, scheme_example2, scheme_m_d1d2, scheme_two_bounds

P = ffield.DEFAULT_PRIME
CASES = Counter()

BUNDLES = [scheme_2d1d2(), scheme_example1(), scheme_example2()]
BUNDLES += [scheme_m_d1d2(m) for m in range(2, 6)] + [scheme_two_bounds(m) for m in (2, 3, 4)]
REGIONS = [build_region(find_all_bottlenecks(b.network)) for b in BUNDLES]

bundle_index = st.integers(0, len(BUNDLES) - 1)
seeds = st.integers(0, 2**32 - 1)
layer_sizes = st.lists(st.integers(1, 4), min_size=1, max_size=3).map(tuple)
densities = st.sampled_from([0.4, 0.6, 0.8, 1.0])


def _sweep(n):
    return settings(max_examples=n, deadline=None, derandomize=True,
                    suppress_health_check=[HealthCheck.too_slow])


def _run(b, seed):
    gains = draw_gains(b.network.edges, range(1, max(b.program.slot_counts) + 1), P, derive_rng(seed))
    return run_scheme(b.network, b.program, b.space, gains)


@_sweep(300)
@given(bundle_index, seeds, st.randoms(use_true_random=False))
def prop_reconstruction_soundness(j, seed, rnd):
    CASES["soundness"] += 1
    b = BUNDLES[j]
    run = _run(b, seed)
    for node, row in run.reconstructions:
        assert ffield.in_span(row, run.states[node].rows, P)
    # arbitrary requests after the last hop: either refused or inside the span
    nodes = sorted(run.states)
    after = (len(b.program.hops) + 1, 1)
    for _ in range(4):
        requester, target = rnd.choice(nodes), rnd.choice(nodes)
        past = sorted(run.states[target].received) or [(1, 1)]
        hop, slot = rnd.choice(past)
        try:
            row = reconstruct_row(run.states, requester, Reconstructed(target, hop, slot), after, P)
        except (IllegalReconstruction, UnknownRef, CausalityViolation):
            continue
        assert ffield.in_span(row, run.states[requester].rows, P)


@_sweep(250)
@given(bundle_index, seeds, seeds)
def prop_decode_determinism(j, s1, s2):
    CASES["determinism"] += 1
    b = BUNDLES[j]
    verdicts = []
    for seed in (s1, s2):
        states = _run(b, seed).states
        verdicts.append(tuple(decode_check(states[d].rows, b.space, w) for d, w in zip(b.network.destinations, "ab")))
    assert verdicts[0] == verdicts[1] == (True, True)


@_sweep(150)
@given(bundle_index, st.integers(0, 10_000))
def prop_inner_inside_outer(j, seed):
    CASES["inner_in_outer"] += 1
    b = BUNDLES[j]
    rep = simulate(b.network, b.program, b.space, trials=2, seed=seed)
    assert rep.achieved_dof is not None
    assert REGIONS[j].contains(rep.achieved_dof)
    assert REGIONS[j].on_boundary(rep.achieved_dof)


@_sweep(300)
@given(layer_sizes, densities, seeds)
def prop_round_trip(sizes, density, seed):
    CASES["round_trip"] += 1
    net = random_layered(sizes, density, seed)
    text = serialize_network(net)
    assert parse_network(text) == net
    assert serialize_network(parse_network(text)) == text


SWEEP = [prop_reconstruction_soundness, prop_decode_determinism, prop_inner_inside_outer, prop_round_trip]


def test_reconstruction_soundness():
    prop_reconstruction_soundness()


def test_decode_determinism():
    prop_decode_determinism()


def test_inner_inside_outer():
    prop_inner_inside_outer()


def test_round_trip():
    prop_round_trip()


@settings(max_examples=60, deadline=None)
@given(layer_sizes, densities, seeds)
def test_flip_involution(sizes, density, seed):
    net = random_layered(sizes, density, seed)
    assert flip(flip(net)) == net
    assert {c.node for c in find_all_bottlenecks(flip(net)) if c.dest_index == 1} == {
        c.node for c in find_all_bottlenecks(net) if c.dest_index == 2
    }


@settings(max_examples=60, deadline=None)
@given(layer_sizes, densities, seeds, st.randoms(use_true_random=False))
def test_cut_monotone_in_cut_set(sizes, density, seed, rnd):
    net = random_layered(sizes, density, seed)
    relays = net.relays
    small = {v for v in relays if rnd.random() < 0.4}
    big = small | {v for v in relays if rnd.random() < 0.4}
    for sinks in ({"d1"}, {"d2"}, {"d1", "d2"}):
        if is_cut(net, small, set(net.sources), sinks):
            assert is_cut(net, big, set(net.sources), sinks)


patterns = st.integers(1, 6).flatmap(
    lambda r: st.integers(1, 6).flatmap(
        lambda c: st.lists(st.lists(st.booleans(), min_size=c, max_size=c), min_size=r, max_size=r)
    )
)


@settings(max_examples=150, deadline=None)
@given(patterns, st.integers(0, 5), seeds)
def test_rank_monotone_and_field_bounded(matrix, drop, seed):
    pat = SupportPattern.from_matrix(matrix)
    full = structural_rank(pat)
    assert full <= min(pat.shape)
    if len(matrix) > 1:
        fewer = SupportPattern.from_matrix(matrix[:drop % len(matrix)] + matrix[drop % len(matrix) + 1:])
        assert full - 1 <= structural_rank(fewer) <= full
    gains = draw_gains([(c, r) for r in pat.rows for c in pat.cols], [1], P, derive_rng(seed))
    assert field_rank(pat, gains) <= full


rhos = st.integers(1, 9)


@settings(max_examples=100, deadline=None)
@given(st.lists(st.tuples(st.sampled_from([1, 2]), rhos), max_size=4), st.tuples(st.sampled_from([1, 2]), rhos))
def test_region_shrinks_when_bounds_are_added(pairs, extra):
    base = region_from_constraints([HalfPlane.bottleneck(i, r) for i, r in pairs])
    more = region_from_constraints([HalfPlane.bottleneck(i, r) for i, r in pairs + [extra]])
    assert all(base.contains(v) for v in more.vertices)


def test_prior_region_contains_new_region():
    for b in BUNDLES:
        certs = find_all_bottlenecks(b.network)
        new = build_region(certs)
        prior = region_from_constraints([prior_bound(c, b.network) for c in certs])
        assert all(prior.contains(v) for v in new.vertices)
        assert all(F(0) <= x <= 1 for v in new.vertices for x in v)
