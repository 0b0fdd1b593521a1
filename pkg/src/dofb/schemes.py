"""Built-in achievability schemes, each bundled with the network it runs on.

Hop h lists, per slot, what the nodes of layer h send.  Relays in the middle
of a three-hop block follow one recipe: the s2-side relays first push their
b-receptions into the bottleneck node, then one of them cancels that
interference by resending the bottleneck's earlier reception while the a-side
relay sends fresh a-symbols.  The bottleneck node ends up with clean a-rows.
"""

from dataclasses import dataclass

from .engine import CleanRow, OwnSymbol, Reception, Reconstructed, SchemeProgram, Send, SymbolSpace
from .errors import InvalidParams
from .families import fig3d1d2, fig_full_dof, fig2d1d2, m_d1d2, two_bounds

__all__ = [
    "SchemeBundle",
    "SCHEMES",
    "get_scheme",
    "scheme_2d1d2",
    "scheme_example1",
    "scheme_example2",
    "scheme_m_d1d2",
    "scheme_two_bounds",
]


@dataclass(frozen=True)
class SchemeBundle:
    network: object
    program: SchemeProgram
    space: SymbolSpace


def _send(ref):
    return Send.of(ref)


def _v(i):
    return f"v{i}"


def _check_m(m):
    if int(m) != m or m < 2:
        raise InvalidParams(f"scheme needs an integer m >= 2, got {m!r}")
    return int(m)


def _sources_hop(slots, a_slots, b_slots):
    """s1 sends a_1, a_2, ... in ``a_slots``; s2 sends b_1, ... in ``b_slots``."""
    hop = [{} for _ in range(slots)]
    for i, t in enumerate(a_slots, 1):
        hop[t - 1]["s1"] = _send(OwnSymbol(i))
    for i, t in enumerate(b_slots, 1):
        hop[t - 1]["s2"] = _send(OwnSymbol(i))
    return hop


def _round_robin(relays, slots, hop):
    """Relay j forwards its own receptions; one equation per slot, relays taken in turn."""
    out = [{} for _ in range(slots)]
    used = {r: 0 for r in relays}
    for t in range(slots):
        r = relays[t % len(relays)]
        used[r] += 1
        out[t][r] = _send(Reception(hop, used[r]))
    return out


def _merge(*hops):
    slots = max(len(h) for h in hops)
    out = [{} for _ in range(slots)]
    for h in hops:
        for t, actions in enumerate(h):
            out[t].update(actions)
    return out


def _relay_block(a_relay, b_relays, bottleneck, hop, slots, a_count, tail=()):
    """Middle hop of the three-hop block.

    Slot 1: each b-relay forwards the b-row it got in slot j of the previous hop.
    Slot 2: ``a_relay`` sends its first a-row; the first b-relay resends the
    bottleneck's slot-1 reception so the bottleneck can cancel it.
    Slots 3..: ``a_relay`` keeps sending a-rows.  ``tail`` adds extra
    ``(slot, rx_slot)`` sends by ``a_relay``.
    """
    out = [{} for _ in range(slots)]
    for j, r in enumerate(b_relays, 1):
        out[0][r] = _send(Reception(hop - 1, j))
    out[1][a_relay] = _send(Reception(hop - 1, 1))
    out[1][b_relays[0]] = _send(Reconstructed(bottleneck, hop, 1))
    for t in range(3, a_count + 2):
        out[t - 1][a_relay] = _send(Reception(hop - 1, t - 1))
    for t, rx in tail:
        out[t - 1][a_relay] = _send(Reception(hop - 1, rx))
    return out


def _clean_hop(node, which, slots_used, slots):
    out = [{} for _ in range(slots)]
    for i, t in enumerate(slots_used, 1):
        out[t - 1][node] = _send(CleanRow(which, i))
    return out


def scheme_m_d1d2(m):
    """((m-1)/m, 1) over m slots on the m-relay bottleneck network."""
    m = _check_m(m)
    net = m_d1d2(m)
    bottleneck = _v(m + 2)
    relays2 = [_v(j) for j in range(2, m + 2)]
    layer3_rest = [_v(j) for j in range(m + 3, 2 * m + 2)]
    hop1 = _sources_hop(m, range(1, m), range(1, m + 1))
    hop2 = _relay_block("v1", relays2, bottleneck, 2, m, m - 1)
    hop3 = _merge(
        _clean_hop(bottleneck, "a", range(1, m), m),
        _round_robin(layer3_rest, m, 2),
    )
    return SchemeBundle(net, SchemeProgram(f"m-d1d2-{m}", [hop1, hop2, hop3]), SymbolSpace(m - 1, m))


def scheme_2d1d2():
    """(1/2, 1) in two slots on the smallest bottleneck network."""
    inner = scheme_m_d1d2(2)
    if inner.network != fig2d1d2():
        raise AssertionError("fig2d1d2 must coincide with the m = 2 bottleneck network")
    return SchemeBundle(fig2d1d2(), SchemeProgram("2d1d2", inner.program.hops), inner.space)


def scheme_example1():
    """(2/3, 1) in three slots."""
    net = fig3d1d2()
    hop1 = _sources_hop(3, [1, 2], [1, 2, 3])
    hop2 = _relay_block("v1", ["v2", "v3", "v4"], "v5", 2, 3, 2)
    # any b-relay could cancel; v3 is used because it reaches all of layer 3
    hop2[0] = {"v2": _send(Reception(1, 1)), "v3": _send(Reception(1, 2)), "v4": _send(Reception(1, 3))}
    hop2[1] = {"v1": _send(Reception(1, 1)), "v3": _send(Reconstructed("v5", 2, 1))}
    hop3 = [
        {"v5": _send(CleanRow("a", 1)), "v6": _send(Reception(2, 1))},
        {"v5": _send(CleanRow("a", 2)), "v7": _send(Reception(2, 1))},
        {"v6": _send(Reception(2, 2))},
    ]
    return SchemeBundle(net, SchemeProgram("example1", [hop1, hop2, hop3]), SymbolSpace(2, 3))


def scheme_example2():
    """(1, 1) in three slots: two extra a-relays let v6 and v7 cancel b-interference
    after the fact."""
    net = fig_full_dof()
    hop1 = _sources_hop(3, [1, 2, 3], [1, 2, 3])
    hop2 = [
        {"v3": _send(Reception(1, 1)), "v4": _send(Reception(1, 2)), "v5": _send(Reception(1, 3))},
        {"v1": _send(Reception(1, 1)), "v2": _send(Reception(1, 2)), "v3": _send(Reconstructed("v6", 2, 1))},
        {"v1": _send(Reception(1, 3)), "v4": _send(Reconstructed("v7", 2, 1))},
    ]
    hop3 = [
        {"v6": _send(CleanRow("a", 1)), "v8": _send(Reception(2, 1))},
        {"v7": _send(CleanRow("a", 1)), "v8": _send(Reception(2, 2))},
        {"v7": _send(CleanRow("a", 2)), "v8": _send(Reception(2, 3))},
    ]
    return SchemeBundle(net, SchemeProgram("example2", [hop1, hop2, hop3]), SymbolSpace(3, 3))


def scheme_two_bounds(m):
    """(m/(m+1), m/(m+1)) in m+1 slots: the bottleneck block, then its mirror."""
    m = _check_m(m)
    T = m + 1
    net = two_bounds(m)
    bott1, bott2 = _v(m + 2), _v(3 * m + 5)
    relays2 = [_v(j) for j in range(2, m + 2)]
    layer3_rest = [_v(j) for j in range(m + 3, 2 * m + 2)]
    b1, b2 = _v(2 * m + 2), _v(2 * m + 3)
    single = _v(2 * m + 4)
    relays5 = [_v(j) for j in range(2 * m + 5, 3 * m + 5)]
    layer6_rest = [_v(j) for j in range(3 * m + 6, 4 * m + 5)]

    # last slot: s2 is silent and s1 sends its m-th symbol
    hop1 = _sources_hop(T, list(range(1, m)) + [T], range(1, m + 1))
    hop2 = _relay_block("v1", relays2, bott1, 2, T, m - 1, tail=[(T, T)])
    hop3 = _merge(
        _clean_hop(bott1, "a", range(1, m + 1), T),
        _round_robin(layer3_rest, m, 2),
    )
    # mirror: b2 feeds the single relay as s1 did, b1 feeds the dense relays as s2 did
    hop4 = _merge(
        _clean_hop(b1, "a", range(1, m + 1), T),
        _clean_hop(b2, "b", list(range(1, m)) + [T], T),
    )
    hop5 = _relay_block(single, relays5, bott2, 5, T, m - 1, tail=[(T, T)])
    hop6 = _merge(
        _clean_hop(bott2, "b", range(1, m + 1), T),
        _round_robin(layer6_rest, m, 5),
    )
    program = SchemeProgram(f"two-bounds-{m}", [hop1, hop2, hop3, hop4, hop5, hop6])
    return SchemeBundle(net, program, SymbolSpace(m, m))


SCHEMES = {
    "2d1d2": scheme_2d1d2,
    "example1": scheme_example1,
    "example2": scheme_example2,
    "m-d1d2": scheme_m_d1d2,
    "two-bounds": scheme_two_bounds,
}

_NEEDS_M = {"m-d1d2", "two-bounds"}


def get_scheme(name, m=None):
    try:
        build = SCHEMES[name]
    except KeyError:
        raise InvalidParams(f"unknown scheme {name!r}; choose from {', '.join(SCHEMES)}") from None
    if name in _NEEDS_M:
        if m is None:
            raise InvalidParams(f"scheme {name!r} needs --m")
        return build(m)
    return build()
