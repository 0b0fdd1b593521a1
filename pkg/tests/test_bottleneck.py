from itertools import combinations

import pytest

from dofb.bottleneck import (
    BottleneckCertificate,
    certificate_json,
    construct_degraded_bc,
    find_all_bottlenecks,
    find_bottlenecks,
    find_omniscient,
    is_cut,
    min_cut_subset,
    prior_bound,
    prune_parent_set,
)
from dofb.errors import CapExceeded, OverlapError
from dofb.families import (
    d1d2_one_half,
    fig2d1d2,
    fig3d1d2,
    fig_full_dof,
    m_d1d2,
    random_layered,
    set_size_to_rank,
    two_bounds,
)
from dofb.network import LayeredNetwork, parents
from dofb.rank import structural_rank, transfer_pattern
from dofb.region import HalfPlane

from oracles import all_paths, cuts, rank_by_permutations


def _chain():
    return LayeredNetwork(
        [["s1", "s2"], ["w"], ["d1", "d2"]],
        [("s1", "w"), ("s2", "w"), ("w", "d1"), ("w", "d2")],
        ("s1", "s2"),
        ("d1", "d2"),
    )


def _brute_min_rho(net, v, i):
    """Minimum rank over every subset of the full parent set (sources excluded) that cuts."""
    other = net.sources[2 - i]
    pool = sorted(p for p in parents(net, v) if p not in net.sources)
    layer = net.layer_of[v] - 1
    best = None
    for size in range(1, len(pool) + 1):
        for combo in combinations(pool, size):
            if cuts(net.edges, combo, [other], net.destinations):
                pat = transfer_pattern(net, combo, layer)
                rho = rank_by_permutations([list(r) for r in pat.entries])
                best = rho if best is None else min(best, rho)
    return best


def _brute_certificates(net, i):
    out = {}
    for v in net.relays:
        if cuts(net.edges, [v], net.sources, [net.destinations[i - 1]]):
            rho = _brute_min_rho(net, v, i)
            if rho is not None:
                out[v] = rho
    return out


def test_is_cut_examples():
    net = fig3d1d2()
    assert is_cut(net, {"v5"}, {"s1", "s2"}, {"d1"})
    assert is_cut(net, {"v2", "v3", "v4"}, {"s2"}, {"d1", "d2"})
    assert not is_cut(net, set(), {"s2"}, {"d2"})


def test_is_cut_overlap():
    with pytest.raises(OverlapError):
        is_cut(fig3d1d2(), {"s1"}, {"s1"}, {"d1"})
    with pytest.raises(OverlapError):
        is_cut(fig3d1d2(), {"d1"}, {"s1"}, {"d1"})


@pytest.mark.parametrize("seed", range(15))
def test_is_cut_against_paths(seed):
    net = random_layered((3, 3), 0.5, seed)
    relays = net.relays
    for size in (1, 2):
        for cut in combinations(relays, size):
            for sinks in (["d1"], ["d2"], ["d1", "d2"]):
                assert is_cut(net, set(cut), {"s1", "s2"}, set(sinks)) == cuts(net.edges, cut, ["s1", "s2"], sinks)


def test_omniscient_examples():
    assert find_omniscient(fig_full_dof()) == []
    assert find_omniscient(fig3d1d2()) == []
    found = {(o.dest_index, o.node, o.witness) for o in find_omniscient(_chain())}
    assert found == {(1, "w", "w"), (2, "w", "w")}


def test_prune_examples():
    assert prune_parent_set(fig3d1d2(), "v5", 1) == {"v2", "v3", "v4"}
    assert prune_parent_set(fig_full_dof(), "v6", 1) == {"v3", "v4", "v5"}
    # v1 is fed only by s1, so it carries nothing from s2
    assert prune_parent_set(fig3d1d2(), "v5", 1).isdisjoint({"v1"})


def test_prune_against_paths():
    for net in (fig3d1d2(), fig_full_dof(), set_size_to_rank(2)):
        for v in net.relays + list(net.destinations):
            for i in (1, 2):
                other = net.sources[2 - i]
                on_path = {x for d in net.destinations for path in all_paths(net.edges, other, d) for x in path}
                want = {p for p in parents(net, v) if p in on_path and p not in net.sources}
                assert prune_parent_set(net, v, i) == want


def test_prune_empty_when_unrelated():
    net = fig3d1d2()
    # v1's only parent is s1, a source
    assert prune_parent_set(net, "v1", 1) == frozenset()


def test_fig3_certificate():
    assert find_bottlenecks(fig3d1d2(), 1) == [BottleneckCertificate(1, "v5", 3, ("v2", "v3", "v4"), 3)]
    assert find_bottlenecks(fig3d1d2(), 2) == []


def test_fig2_certificate():
    assert find_bottlenecks(fig2d1d2(), 1) == [BottleneckCertificate(1, "v4", 3, ("v2", "v3"), 2)]


def test_set_size_to_rank_certificate():
    net = set_size_to_rank(1)
    (cert,) = find_bottlenecks(net, 1)
    assert cert.rho == 3
    assert len(prune_parent_set(net, "v5", 1)) == 4
    assert len(min_cut_subset(net, "v5", 1)) == 4


@pytest.mark.parametrize("i", [1, 2])
def test_no_bottleneck_networks(i):
    assert find_bottlenecks(fig_full_dof(), i) == []
    assert find_bottlenecks(d1d2_one_half(), i) == []


@pytest.mark.parametrize("m", range(2, 7))
def test_two_bounds_certificates(m):
    certs = find_all_bottlenecks(two_bounds(m))
    assert [(c.dest_index, c.node, c.rho) for c in certs] == [(1, f"v{m + 2}", m), (2, f"v{3 * m + 5}", m)]


@pytest.mark.parametrize(
    "net",
    [fig2d1d2(), fig3d1d2(), fig_full_dof(), d1d2_one_half(), m_d1d2(3), two_bounds(2), set_size_to_rank(2)]
    + [random_layered((3, 3), 0.5, s) for s in range(12)]
    + [random_layered((2, 3, 2), 0.6, s) for s in range(12)],
)
def test_certificates_match_brute_force(net):
    for i in (1, 2):
        got = {c.node: c.rho for c in find_bottlenecks(net, i)}
        assert got == _brute_certificates(net, i)


def test_certificate_invariants():
    for net in (fig3d1d2(), two_bounds(3), set_size_to_rank(3), m_d1d2(5)):
        for c in find_all_bottlenecks(net):
            other = net.sources[2 - c.dest_index]
            assert is_cut(net, {c.node}, set(net.sources), {net.destinations[c.dest_index - 1]})
            assert set(c.parent_set) <= parents(net, c.node)
            assert is_cut(net, set(c.parent_set), {other}, set(net.destinations))
            assert c.rho == structural_rank(transfer_pattern(net, c.parent_set, c.layer - 1))
            assert c.rho <= len(c.parent_set)
            full = prune_parent_set(net, c.node, c.dest_index)
            assert c.rho <= structural_rank(transfer_pattern(net, full, c.layer - 1))


def test_rho_one_implies_omniscient():
    for seed in range(40):
        net = random_layered((2, 2), 0.6, seed)
        omni = {(o.dest_index, o.node) for o in find_omniscient(net)}
        for c in find_all_bottlenecks(net):
            if c.rho == 1:
                assert (c.dest_index, c.node) in omni


def test_certificates_sorted():
    certs = find_bottlenecks(random_layered((3, 3, 3), 0.5, 2), 1)
    keys = [(c.rho, c.layer) for c in certs]
    assert keys == sorted(keys)


def test_cap_exceeded():
    with pytest.raises(CapExceeded) as info:
        find_bottlenecks(set_size_to_rank(2), 1, subset_cap=4)
    assert "--subset-cap" in str(info.value)
    with pytest.raises(ValueError):
        find_bottlenecks(fig3d1d2(), 1, subset_cap=0)


def test_prior_bounds():
    net = set_size_to_rank(1)
    (cert,) = find_bottlenecks(net, 1)
    assert prior_bound(cert, net) == HalfPlane(4, 1, 4)
    (cert3,) = find_bottlenecks(fig3d1d2(), 1)
    assert prior_bound(cert3, fig3d1d2()) == HalfPlane(3, 1, 3)


def test_certificate_json():
    net = set_size_to_rank(2)
    (cert,) = find_bottlenecks(net, 1)
    assert certificate_json(cert, net) == {
        "dest": 1, "node": "v5", "layer": 3, "M": ["v2", "v3", "v4", "v8", "v9"], "rho": 3, "prior_M_size": 5,
    }


def test_degraded_bc_fig3():
    net = fig3d1d2()
    (cert,) = find_bottlenecks(net, 1)
    bc = construct_degraded_bc(net, cert, seed=0)
    assert bc.tx_antennas == 4
    assert len(bc.rx2_rows) == 3
    assert bc.rx2_rows[0] == bc.rx1_row
    assert bc.rx1_row == tuple((u, "v5") in net.edges for u in net.layer(2))


def test_degraded_bc_m3_spans_dense_block():
    net = m_d1d2(3)
    (cert,) = find_bottlenecks(net, 1)
    bc = construct_degraded_bc(net, cert)
    assert bc.tx_antennas == 4 and bc.rx2_nodes == ("v5", "v6", "v7")


def test_chain_relay_is_omniscient_but_not_a_bottleneck():
    # its parents are the sources themselves, which no cut may contain
    assert find_all_bottlenecks(_chain()) == []


def test_degraded_bc_rho_one():
    net = LayeredNetwork(
        [["s1", "s2"], ["w1", "w2"], ["x", "y"], ["d1", "d2"]],
        [("s1", "w1"), ("s2", "w2"), ("w1", "x"), ("w2", "x"), ("w2", "y"), ("x", "d1"), ("y", "d2")],
        ("s1", "s2"),
        ("d1", "d2"),
    )
    (cert,) = find_bottlenecks(net, 1)
    assert (cert.node, cert.parent_set, cert.rho) == ("x", ("w2",), 1)
    bc = construct_degraded_bc(net, cert)
    assert bc.rx2_rows == (bc.rx1_row,)
