"""Layered two-unicast networks: data model, validation and JSON persistence."""

import json
import re
from dataclasses import dataclass
from functools import cached_property

from .errors import IncompatibleBoundary, LayerMismatch, ParseError, UnknownNode, ValidationError

__all__ = [
    "LayeredNetwork",
    "natural_key",
    "validate",
    "parents",
    "parse_network",
    "serialize_network",
    "flip",
    "concatenate",
]

_SCHEMA_KEYS = ("layers", "edges", "sources", "destinations")


def natural_key(name):
    """Sort key that orders ``v2`` before ``v10``."""
    parts = re.split(r"(\d+)", name)
    return [int(s) if i % 2 else s for i, s in enumerate(parts)]


@dataclass(frozen=True)
class LayeredNetwork:
    """A layered directed graph with sources ``(s1, s2)`` and destinations ``(d1, d2)``.

    Node lists inside each layer and the edge list are kept in canonical
    (natural-sorted) order, so two networks with the same structure compare equal.
    ``sources`` and ``destinations`` are ordered by session and are never sorted.
    Construction does not validate; call :func:`validate`.
    """

    layers: tuple
    edges: tuple
    sources: tuple
    destinations: tuple

    def __post_init__(self):
        layers = tuple(tuple(sorted(layer, key=natural_key)) for layer in self.layers)
        edges = tuple(
            sorted(
                ((str(u), str(v)) for u, v in self.edges),
                key=lambda e: (natural_key(e[0]), natural_key(e[1])),
            )
        )
        object.__setattr__(self, "layers", layers)
        object.__setattr__(self, "edges", edges)
        object.__setattr__(self, "sources", tuple(self.sources))
        object.__setattr__(self, "destinations", tuple(self.destinations))

    @property
    def nodes(self):
        return [v for layer in self.layers for v in layer]

    @property
    def relays(self):
        return [v for layer in self.layers[1:-1] for v in layer]

    @cached_property
    def layer_of(self):
        """Map node -> 1-based layer index."""
        return {v: i for i, layer in enumerate(self.layers, 1) for v in layer}

    @cached_property
    def _parents(self):
        out = {v: [] for v in self.nodes}
        for u, v in self.edges:
            out.setdefault(v, []).append(u)
        return {v: tuple(ps) for v, ps in out.items()}

    @cached_property
    def _children(self):
        out = {v: [] for v in self.nodes}
        for u, v in self.edges:
            out.setdefault(u, []).append(v)
        return {v: tuple(cs) for v, cs in out.items()}

    def children(self, v):
        if v not in self.layer_of:
            raise UnknownNode(v)
        return self._children[v]

    def layer(self, index):
        """Nodes of 1-based layer ``index``."""
        return self.layers[index - 1]

    @property
    def depth(self):
        return len(self.layers)


def validate(net):
    """Return the list of violated invariants; empty means valid."""
    out = []
    seen = set()
    for i, layer in enumerate(net.layers, 1):
        for v in layer:
            if not isinstance(v, str) or not v.strip():
                out.append(f"empty node name in layer {i}")
            elif v in seen:
                out.append(f"duplicate node name {v!r}")
            seen.add(v)
    if len(net.layers) < 2:
        out.append("network needs at least two layers")
        return out
    if len(net.sources) != 2 or len(net.destinations) != 2:
        out.append("exactly two sources and two destinations required")
        return out
    terminals = list(net.sources) + list(net.destinations)
    if len(set(terminals)) != 4:
        out.append("s1, s2, d1, d2 must be distinct")
    if set(net.layers[0]) != set(net.sources) or len(net.layers[0]) != 2:
        out.append("V_1 must equal {s1,s2}")
    if set(net.layers[-1]) != set(net.destinations) or len(net.layers[-1]) != 2:
        out.append("V_r must equal {d1,d2}")
    layer_of = {}
    for i, layer in enumerate(net.layers, 1):
        for v in layer:
            layer_of.setdefault(v, i)
    edge_seen = set()
    for u, v in net.edges:
        if u == v:
            out.append(f"self-loop on {u!r}")
            continue
        if (u, v) in edge_seen:
            out.append(f"duplicate edge ({u!r}, {v!r})")
            continue
        edge_seen.add((u, v))
        missing = [x for x in (u, v) if x not in layer_of]
        if missing:
            out.append(f"edge ({u!r}, {v!r}) references unknown node {missing[0]!r}")
        elif layer_of[v] != layer_of[u] + 1:
            out.append(f"edge ({u!r}, {v!r}) not between adjacent layers")
    return out


def parents(net, v):
    """Parent set I(v): nodes of the previous layer with an edge into ``v``."""
    if v not in net.layer_of:
        raise UnknownNode(v)
    if net.layer_of[v] == 1:
        raise LayerMismatch(f"{v!r} is in layer 1 and has no parents")
    return frozenset(net._parents[v])


def _to_doc(net):
    return {
        "layers": [list(layer) for layer in net.layers],
        "edges": [list(e) for e in net.edges],
        "sources": list(net.sources),
        "destinations": list(net.destinations),
    }


def serialize_network(net):
    """Canonical JSON text: sorted keys, natural-sorted node lists, one layer or
    edge per line, LF line endings."""
    doc = _to_doc(net)
    fields = []
    for key in sorted(doc):
        value = doc[key]
        if key in ("layers", "edges") and value:
            inner = ",\n".join(f"    {json.dumps(item)}" for item in value)
            fields.append(f"  {json.dumps(key)}: [\n{inner}\n  ]")
        else:
            fields.append(f"  {json.dumps(key)}: {json.dumps(value)}")
    return "{\n" + ",\n".join(fields) + "\n}\n"


def _string_list(value, what, length=None):
    if not isinstance(value, list) or not all(isinstance(x, str) for x in value):
        raise ParseError(f"{what} must be a list of strings")
    if length is not None and len(value) != length:
        raise ParseError(f"{what} must have exactly {length} entries")
    return value


def parse_network(text):
    """Parse and validate a network document.

    Raises :class:`ParseError` for malformed documents and
    :class:`ValidationError` when the graph breaks a layering invariant.
    """
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"malformed JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise ParseError("network document must be a JSON object")
    missing = [k for k in _SCHEMA_KEYS if k not in doc]
    if missing:
        raise ParseError(f"missing key(s): {', '.join(missing)}")
    unknown = sorted(set(doc) - set(_SCHEMA_KEYS))
    if unknown:
        raise ParseError(f"unknown key(s): {', '.join(unknown)}")
    if not isinstance(doc["layers"], list):
        raise ParseError("layers must be a list")
    layers = [_string_list(layer, "each layer") for layer in doc["layers"]]
    if not isinstance(doc["edges"], list):
        raise ParseError("edges must be a list")
    edges = [tuple(_string_list(e, "each edge", 2)) for e in doc["edges"]]
    sources = _string_list(doc["sources"], "sources", 2)
    destinations = _string_list(doc["destinations"], "destinations", 2)
    net = LayeredNetwork(layers, edges, sources, destinations)
    violations = validate(net)
    if violations:
        raise ValidationError(violations)
    return net


def flip(net):
    """Swap the roles of the two sessions (s1<->s2, d1<->d2). An involution."""
    return LayeredNetwork(
        net.layers, net.edges, net.sources[::-1], net.destinations[::-1]
    )


def concatenate(first, second):
    """Glue ``second`` after ``first``.

    ``first``'s destination for session i is identified with ``second``'s source
    for session i and becomes a relay.  The merged network has
    ``depth(first) + depth(second) - 1`` layers.  Nodes are renamed: sources
    ``s1, s2``, destinations ``d1, d2`` (by session) and relays ``v1, v2, ...``
    numbered layer by layer, boundary relays in session order.
    """
    for net, side, terminals, layer in (
        (first, "first", first.destinations, first.layers[-1] if first.layers else ()),
        (second, "second", second.sources, second.layers[0] if second.layers else ()),
    ):
        if len(terminals) != 2 or len(layer) != 2 or set(layer) != set(terminals):
            raise IncompatibleBoundary(
                f"{side} network must have exactly two boundary nodes matching its terminals"
            )

    rename_first = {first.sources[0]: "s1", first.sources[1]: "s2"}
    rename_second = {second.destinations[0]: "d1", second.destinations[1]: "d2"}
    counter = 0

    def fresh():
        nonlocal counter
        counter += 1
        return f"v{counter}"

    layers = [["s1", "s2"]]
    for layer in first.layers[1:-1]:
        rename_first.update((v, fresh()) for v in layer)
        layers.append([rename_first[v] for v in layer])
    boundary = []
    for a, b in zip(first.destinations, second.sources):
        name = fresh()
        rename_first[a] = name
        rename_second[b] = name
        boundary.append(name)
    layers.append(boundary)
    for layer in second.layers[1:-1]:
        rename_second.update((v, fresh()) for v in layer)
        layers.append([rename_second[v] for v in layer])
    layers.append(["d1", "d2"])

    edges = [(rename_first[u], rename_first[v]) for u, v in first.edges]
    edges += [(rename_second[u], rename_second[v]) for u, v in second.edges]
    return LayeredNetwork(layers, edges, ("s1", "s2"), ("d1", "d2"))
