"""Cuts, omniscient nodes and rho-bottleneck nodes of a layered two-unicast network."""

from dataclasses import dataclass
from itertools import combinations

from . import ffield
from ._seeding import derive_rng
from .errors import CapExceeded, InternalInconsistency, OverlapError
from .network import natural_key, parents
from .region import HalfPlane
from .rank import draw_gains, field_rank, structural_rank, transfer_pattern

__all__ = [
    "BottleneckCertificate",
    "OmniscientCertificate",
    "BcModel",
    "is_cut",
    "find_omniscient",
    "prune_parent_set",
    "find_bottlenecks",
    "find_all_bottlenecks",
    "min_cut_subset",
    "prior_bound",
    "construct_degraded_bc",
    "certificate_json",
]

DEFAULT_SUBSET_CAP = 16


def _names(nodes):
    return tuple(sorted(nodes, key=natural_key))


@dataclass(frozen=True)
class BottleneckCertificate:
    dest_index: int
    node: str
    layer: int
    parent_set: tuple
    rho: int

    @property
    def other(self):
        return 3 - self.dest_index


@dataclass(frozen=True)
class OmniscientCertificate:
    dest_index: int
    node: str
    witness: str


@dataclass(frozen=True)
class BcModel:
    """Degraded MIMO broadcast channel built around a bottleneck node.

    The transmitter has one antenna per node of the layer feeding the bottleneck.
    Receiver 1 is a single-antenna replica of the bottleneck node; receiver 2
    has ``rho`` antennas whose first one is that same replica.
    """

    tx_nodes: tuple
    parent_set: tuple
    rx1_node: str
    rx1_row: tuple
    rx2_nodes: tuple
    rx2_rows: tuple

    @property
    def tx_antennas(self):
        return len(self.tx_nodes)


def is_cut(net, cut, sources, sinks):
    """True iff removing ``cut`` leaves no directed path from ``sources`` to ``sinks``."""
    cut, sources, sinks = set(cut), set(sources), set(sinks)
    if cut & (sources | sinks):
        raise OverlapError("a cut may not contain its own endpoints")
    seen = set(sources)
    stack = list(sources)
    while stack:
        u = stack.pop()
        if u in sinks:
            return False
        for w in net._children[u]:
            if w not in seen and w not in cut:
                seen.add(w)
                stack.append(w)
    return True


def _dest_cut(net, v, i):
    return is_cut(net, {v}, net.sources, {net.destinations[i - 1]})


def _other_source(net, i):
    return net.sources[2 - i]


def _candidates(net):
    """Relays in layer order: the only nodes that can cut anything."""
    return [v for v in net.relays]


def find_omniscient(net):
    """All ``(dest, v, u)`` with v cutting both sources from d_i and u in
    I(v) + {v} cutting the other source from both destinations."""
    out = []
    for i in (1, 2):
        other = _other_source(net, i)
        for v in _candidates(net):
            if not _dest_cut(net, v, i):
                continue
            pool = [u for u in parents(net, v) if u not in net.sources] + [v]
            for u in _names(pool):
                if is_cut(net, {u}, {other}, net.destinations):
                    out.append(OmniscientCertificate(i, v, u))
    return sorted(
        out, key=lambda c: (c.dest_index, net.layer_of[c.node], natural_key(c.node), natural_key(c.witness))
    )


def _on_paths_from(net, src):
    """Nodes lying on some directed path from ``src`` to either destination."""
    forward = {src}
    stack = [src]
    while stack:
        u = stack.pop()
        for w in net._children[u]:
            if w not in forward:
                forward.add(w)
                stack.append(w)
    backward = set(net.destinations)
    stack = list(net.destinations)
    while stack:
        u = stack.pop()
        for w in net._parents.get(u, ()):
            if w not in backward:
                backward.add(w)
                stack.append(w)
    return forward & backward


def prune_parent_set(net, v, dest_index):
    """Parents of ``v`` that carry flow from the other session's source.

    Parents off every such path can never be needed in a cut and would only
    inflate the rank, so they are dropped.  Sources are never returned.
    """
    relevant = _on_paths_from(net, _other_source(net, dest_index))
    return frozenset(u for u in parents(net, v) if u in relevant and u not in net.sources)


def _minimal_cuts(net, pool, other):
    """Inclusion-minimal subsets of ``pool`` that cut ``other`` from both destinations,
    in order of size then lexicographic name order."""
    found = []
    for size in range(1, len(pool) + 1):
        for combo in combinations(pool, size):
            s = set(combo)
            if any(f <= s for f in found):
                continue
            if is_cut(net, s, {other}, net.destinations):
                found.append(s)
                yield combo


def _check_cap(v, pool, cap):
    if cap < 1:
        raise ValueError("subset_cap must be >= 1")
    if len(pool) > cap:
        raise CapExceeded(v, len(pool), cap)


def _best_certificate(net, v, i, cap):
    pool = _names(prune_parent_set(net, v, i))
    _check_cap(v, pool, cap)
    layer = net.layer_of[v]
    best = None
    for combo in _minimal_cuts(net, pool, _other_source(net, i)):
        rho = structural_rank(transfer_pattern(net, combo, layer - 1))
        key = (rho, [natural_key(x) for x in combo])
        if best is None or key < best[0]:
            best = (key, combo, rho)
    if best is None:
        return None
    return BottleneckCertificate(i, v, layer, best[1], best[2])


def find_bottlenecks(net, dest_index, subset_cap=DEFAULT_SUBSET_CAP):
    """One minimum-rho certificate per bottleneck node for ``d_{dest_index}``.

    The rank of a transfer matrix can only grow with its column set, so the
    minimum over all cutting parent subsets is attained on an
    inclusion-minimal cut; only those are ranked.  Ties go to the
    lexicographically smallest parent set.
    """
    certs = []
    for v in _candidates(net):
        if _dest_cut(net, v, dest_index):
            cert = _best_certificate(net, v, dest_index, subset_cap)
            if cert is not None:
                certs.append(cert)
    return sorted(certs, key=lambda c: (c.rho, c.layer, natural_key(c.node)))


def find_all_bottlenecks(net, subset_cap=DEFAULT_SUBSET_CAP):
    return find_bottlenecks(net, 1, subset_cap) + find_bottlenecks(net, 2, subset_cap)


def min_cut_subset(net, v, dest_index, subset_cap=DEFAULT_SUBSET_CAP):
    """Smallest subset of the pruned parent set of ``v`` cutting the other source."""
    pool = _names(prune_parent_set(net, v, dest_index))
    _check_cap(v, pool, subset_cap)
    return next(_minimal_cuts(net, pool, _other_source(net, dest_index)), None)


def prior_bound(cert, net, subset_cap=DEFAULT_SUBSET_CAP):
    """The cardinality bound ``|M| D_i + D_other <= |M|`` for the node of ``cert``."""
    smallest = min_cut_subset(net, cert.node, cert.dest_index, subset_cap)
    if smallest is None:
        raise InternalInconsistency(f"certificate node {cert.node!r} has no cutting parent set")
    return HalfPlane.bottleneck(cert.dest_index, len(smallest))


def construct_degraded_bc(net, cert, seed=0, prime=ffield.DEFAULT_PRIME):
    """Build the degraded broadcast channel used in the converse for ``cert``.

    Receiver-2 rows are the bottleneck node's row followed by rows of the
    transfer pattern picked greedily whenever they raise the generic rank on
    the parent-set columns (rows with full generic rank form a matroid, so
    greedy reaches ``rho``).  The selection is re-checked with one random
    field evaluation drawn from ``seed``.
    """
    if cert.rho < 1:
        raise ValueError("certificate rank must be positive")
    layer = cert.layer - 1
    tx_nodes = net.layer(layer)
    full = transfer_pattern(net, tx_nodes, layer)
    on_m = full.submatrix(cols=cert.parent_set)
    chosen = [cert.node]
    for r in full.rows:
        if len(chosen) == cert.rho:
            break
        if r in chosen:
            continue
        if structural_rank(on_m.submatrix(rows=chosen + [r])) == len(chosen) + 1:
            chosen.append(r)
    sub = on_m.submatrix(rows=chosen)
    if structural_rank(sub) != cert.rho or len(chosen) != cert.rho:
        raise InternalInconsistency(f"could not select {cert.rho} independent rows for {cert.node!r}")
    edges = [(c, r) for r, row in zip(sub.rows, sub.entries) for c, x in zip(sub.cols, row) if x]
    gains = draw_gains(edges, [1], prime, derive_rng(seed))
    if field_rank(sub, gains) > cert.rho:
        raise InternalInconsistency("field rank above structural rank")
    rows = {r: full.entries[full.rows.index(r)] for r in chosen}
    return BcModel(
        tx_nodes=tuple(tx_nodes),
        parent_set=tuple(cert.parent_set),
        rx1_node=cert.node,
        rx1_row=rows[cert.node],
        rx2_nodes=tuple(chosen),
        rx2_rows=tuple(rows[r] for r in chosen),
    )


def certificate_json(cert, net, subset_cap=DEFAULT_SUBSET_CAP):
    smallest = min_cut_subset(net, cert.node, cert.dest_index, subset_cap)
    return {
        "dest": cert.dest_index,
        "node": cert.node,
        "layer": cert.layer,
        "M": list(cert.parent_set),
        "rho": cert.rho,
        "prior_M_size": len(smallest),
    }
