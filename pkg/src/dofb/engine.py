"""Hop-by-hop execution of linear delayed-CSIT schemes over GF(P).

Every node holds a list of linear functionals of the global symbol vector
``(a1..ap, b1..bq)``.  A scheme says, slot by slot, which nodes of the
transmitting layer send which combination of things they know.  Receivers in
the next layer append the gain-weighted sum of what their parents sent.

A node may also resend another node's past reception (delayed CSIT: gains are
known everywhere one slot later), but only if that row already lies in the
span of its own knowledge.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Union

from . import ffield
from ._seeding import derive_rng
from .errors import (
    CausalityViolation,
    IllegalAction,
    IllegalReconstruction,
    InternalInconsistency,
    UnknownRef,
)
from .rank import draw_gains

__all__ = [
    "SymbolSpace",
    "OwnSymbol",
    "Reception",
    "Reconstructed",
    "CleanRow",
    "Send",
    "SILENT",
    "SchemeProgram",
    "KnowledgeState",
    "RunResult",
    "SimReport",
    "run_scheme",
    "reconstruct_row",
    "decode_check",
    "achieved_dof",
    "simulate",
    "program_json",
    "program_from_json",
]


@dataclass(frozen=True)
class SymbolSpace:
    p: int
    q: int

    def __post_init__(self):
        if self.p < 0 or self.q < 0 or self.p + self.q < 1:
            raise ValueError("need p, q >= 0 and p + q >= 1")

    @property
    def dim(self):
        return self.p + self.q

    def cols(self, which):
        if which == "a":
            return list(range(self.p))
        if which == "b":
            return list(range(self.p, self.dim))
        raise ValueError("which must be 'a' or 'b'")

    def unit(self, which, index):
        cols = self.cols(which)
        if not 1 <= index <= len(cols):
            raise IndexError(index)
        row = [0] * self.dim
        row[cols[index - 1]] = 1
        return row


# -- knowledge references ---------------------------------------------------


@dataclass(frozen=True)
class OwnSymbol:
    """A source's own symbol, 1-based."""

    index: int


@dataclass(frozen=True)
class Reception:
    """What this node received at ``(hop, slot)``."""

    hop: int
    slot: int


@dataclass(frozen=True)
class Reconstructed:
    """What ``node`` received at ``(hop, slot)``, rebuilt from delayed CSI."""

    node: str
    hop: int
    slot: int


@dataclass(frozen=True)
class CleanRow:
    """The ``index``-th canonical basis row of this node's knowledge that
    involves only session ``which`` symbols (``'a'`` or ``'b'``)."""

    which: str
    index: int


KnowledgeRef = Union[OwnSymbol, Reception, Reconstructed, CleanRow]


@dataclass(frozen=True)
class Send:
    terms: tuple  # ((coef, KnowledgeRef), ...)

    @classmethod
    def of(cls, ref, coef=1):
        return cls(((coef, ref),))


class _Silent:
    def __repr__(self):
        return "SILENT"


SILENT = _Silent()


@dataclass(frozen=True)
class SchemeProgram:
    """``hops[h-1][t-1]`` maps transmitting node -> action for slot t of hop h."""

    name: str
    hops: tuple

    def __post_init__(self):
        hops = tuple(tuple(dict(slot) for slot in hop) for hop in self.hops)
        object.__setattr__(self, "hops", hops)

    @property
    def slot_counts(self):
        return [len(h) for h in self.hops]


# -- state ----------------------------------------------------------------


@dataclass
class KnowledgeState:
    rows: list = field(default_factory=list)
    tags: list = field(default_factory=list)
    received: dict = field(default_factory=dict)  # (hop, slot) -> row
    _clean: dict = field(default_factory=dict, repr=False)

    def append(self, row, tag):
        self.rows.append(row)
        self.tags.append(tag)
        self._clean.clear()

    def clean_rows(self, space, which, prime):
        if which not in self._clean:
            self._clean[which] = ffield.restricted_basis(self.rows, space.cols(which), prime)
        return self._clean[which]


@dataclass
class RunResult:
    states: dict
    trace: list
    reconstructions: list  # (requester, row) for every reconstruction served


def _initial_states(net, space):
    states = {v: KnowledgeState() for v in net.nodes}
    for which, src in zip("ab", net.sources):
        count = space.p if which == "a" else space.q
        for i in range(1, count + 1):
            states[src].append(space.unit(which, i), ("own", i))
    return states


def reconstruct_row(states, requester, ref, position, prime):
    """Row that ``requester`` rebuilds for ``ref`` at execution ``position``.

    ``position`` is ``(hop, slot)`` of the current slot; the referenced slot
    must be strictly earlier.
    """
    hop, slot = position
    if (ref.hop, ref.slot) >= (hop, slot):
        raise CausalityViolation(
            f"cannot reconstruct {ref.node!r} at hop {ref.hop} slot {ref.slot} before it has passed",
            hop, slot, requester,
        )
    target = states.get(ref.node)
    if target is None or (ref.hop, ref.slot) not in target.received:
        raise UnknownRef(
            f"{ref.node!r} received nothing at hop {ref.hop} slot {ref.slot}", hop, slot, requester
        )
    row = target.received[(ref.hop, ref.slot)]
    if not ffield.in_span(row, states[requester].rows, prime):
        raise IllegalReconstruction(
            f"reception of {ref.node!r} at hop {ref.hop} slot {ref.slot} is outside its knowledge",
            hop, slot, requester,
        )
    return row


def _resolve(ref, node, states, net, space, position, prime, served):
    hop, slot = position
    state = states[node]
    if isinstance(ref, OwnSymbol):
        if node not in net.sources:
            raise UnknownRef("only sources own symbols", hop, slot, node)
        which = "a" if node == net.sources[0] else "b"
        try:
            return space.unit(which, ref.index)
        except IndexError:
            raise UnknownRef(f"no own symbol {ref.index}", hop, slot, node) from None
    if isinstance(ref, Reception):
        if (ref.hop, ref.slot) >= position or (ref.hop, ref.slot) not in state.received:
            raise UnknownRef(f"no reception at hop {ref.hop} slot {ref.slot}", hop, slot, node)
        return state.received[(ref.hop, ref.slot)]
    if isinstance(ref, Reconstructed):
        row = reconstruct_row(states, node, ref, position, prime)
        served.append((node, row))
        return row
    if isinstance(ref, CleanRow):
        rows = state.clean_rows(space, ref.which, prime)
        if not 1 <= ref.index <= len(rows):
            raise UnknownRef(
                f"only {len(rows)} clean {ref.which}-rows available, asked for {ref.index}",
                hop, slot, node,
            )
        return rows[ref.index - 1]
    raise UnknownRef(f"unsupported reference {ref!r}", hop, slot, node)


def run_scheme(net, scheme, space, gains):
    """Execute ``scheme`` on ``net`` and return final knowledge plus a trace."""
    prime = gains.prime
    if len(scheme.hops) > net.depth - 1:
        raise IllegalAction(f"scheme has {len(scheme.hops)} hops, network only {net.depth - 1}")
    states = _initial_states(net, space)
    trace, served = [], []
    for h, hop in enumerate(scheme.hops, 1):
        tx_layer = set(net.layer(h))
        for t, actions in enumerate(hop, 1):
            sent = {}
            for node, action in actions.items():
                if node not in tx_layer:
                    raise IllegalAction(f"{node!r} is not in transmitting layer {h}", h, t, node)
                if action is SILENT:
                    continue
                if not isinstance(action, Send) or not action.terms:
                    raise IllegalAction(f"bad action {action!r}", h, t, node)
                parts = [
                    (coef, _resolve(ref, node, states, net, space, (h, t), prime, served))
                    for coef, ref in action.terms
                ]
                sent[node] = ffield.combine(parts, prime)
                trace.append({"hop": h, "slot": t, "node": node, "row": sent[node]})
            for u in net.layer(h + 1):
                heard = [(gains[(n, u, t)], sent[n]) for n in net._parents[u] if n in sent]
                if not heard:
                    continue
                row = ffield.combine(heard, prime)
                states[u].append(row, ("rx", h, t))
                states[u].received[(h, t)] = row
    for requester, row in served:
        if not ffield.in_span(row, states[requester].rows, prime):
            raise InternalInconsistency(f"reconstruction by {requester!r} left its span")
    return RunResult(states, trace, served)


def decode_check(rows, space, which, prime=ffield.DEFAULT_PRIME):
    """True iff the session-``which`` symbols are determined by ``rows``
    whatever the other session's symbols are."""
    want = space.cols(which)
    if not want:
        return True
    if not rows:
        return False
    other = space.cols("b" if which == "a" else "a")
    restricted = [[r[j] for j in other] for r in rows] if other else []
    r_other = ffield.rank(restricted, prime) if other else 0
    return ffield.rank(rows, prime) - r_other == len(want)


def achieved_dof(scheme, space):
    if not scheme.hops:
        raise ValueError("scheme has no hops")
    T = max(scheme.slot_counts)
    return Fraction(space.p, T), Fraction(space.q, T)


@dataclass(frozen=True)
class SimReport:
    trials: int
    seed: int
    verdicts: tuple  # (d1_ok, d2_ok) per trial
    achieved_dof: tuple | None

    @property
    def decode_d1(self):
        return sum(a for a, _ in self.verdicts)

    @property
    def decode_d2(self):
        return sum(b for _, b in self.verdicts)

    @property
    def all_decoded(self):
        return self.achieved_dof is not None

    def to_json(self):
        dof = self.achieved_dof
        return {
            "trials": self.trials,
            "seed": self.seed,
            "decode_d1": self.decode_d1,
            "decode_d2": self.decode_d2,
            "achieved_dof": None if dof is None else [str(x) for x in dof],
        }


def simulate(net, scheme, space, trials=100, seed=0, prime=ffield.DEFAULT_PRIME):
    """Run ``scheme`` under ``trials`` independent random gain draws."""
    if trials < 1:
        raise ValueError("trials must be >= 1")
    slots = range(1, max(scheme.slot_counts, default=0) + 1)
    verdicts = []
    for trial in range(trials):
        gains = draw_gains(net.edges, slots, prime, derive_rng(seed, trial))
        states = run_scheme(net, scheme, space, gains).states
        d1, d2 = net.destinations
        verdicts.append(
            (decode_check(states[d1].rows, space, "a", prime), decode_check(states[d2].rows, space, "b", prime))
        )
    ok = all(a and b for a, b in verdicts)
    return SimReport(trials, seed, tuple(verdicts), achieved_dof(scheme, space) if ok else None)


# -- JSON ---------------------------------------------------------------------


def _ref_json(ref):
    if isinstance(ref, OwnSymbol):
        return {"own": ref.index}
    if isinstance(ref, Reception):
        return {"rx": [ref.hop, ref.slot]}
    if isinstance(ref, Reconstructed):
        return {"recon": [ref.node, ref.hop, ref.slot]}
    if isinstance(ref, CleanRow):
        return {"clean": [ref.which, ref.index]}
    raise TypeError(ref)


def _ref_from_json(doc):
    (kind, value), = doc.items()
    if kind == "own":
        return OwnSymbol(value)
    if kind == "rx":
        return Reception(*value)
    if kind == "recon":
        return Reconstructed(*value)
    if kind == "clean":
        return CleanRow(*value)
    raise ValueError(f"unknown reference kind {kind!r}")


def program_json(scheme, space):
    hops = []
    for hop in scheme.hops:
        slots = []
        for actions in hop:
            slots.append({
                node: [[coef, _ref_json(ref)] for coef, ref in action.terms]
                for node, action in sorted(actions.items())
                if action is not SILENT
            })
        hops.append(slots)
    return {"name": scheme.name, "p": space.p, "q": space.q, "hops": hops}


def program_from_json(doc):
    hops = [
        [
            {node: Send(tuple((coef, _ref_from_json(r)) for coef, r in terms)) for node, terms in slot.items()}
            for slot in hop
        ]
        for hop in doc["hops"]
    ]
    return SchemeProgram(doc["name"], hops), SymbolSpace(doc["p"], doc["q"])
