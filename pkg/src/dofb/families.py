"""Generators for the network families used throughout the package.

The small named topologies (``fig2d1d2``, ``fig3d1d2``, ``figFullDof``,
``d1d2OneHalf``) are fixed reconstructions chosen so that their bottleneck
structure and achievable schemes match the published claims.
"""

import enum
from dataclasses import dataclass

from ._seeding import derive_rng
from .errors import InvalidParams
from .network import LayeredNetwork, validate

__all__ = ["Family", "FamilyParams", "gen_family", "random_layered"]

MAX_RANDOM_ATTEMPTS = 1000


class Family(str, enum.Enum):
    FIG2D1D2 = "fig2d1d2"
    FIG3D1D2 = "fig3d1d2"
    FIG_FULL_DOF = "figFullDof"
    M_D1D2 = "mD1D2"
    TWO_BOUNDS = "twoBounds"
    SET_SIZE_TO_RANK = "setSizeToRank"
    D1D2_ONE_HALF = "d1d2OneHalf"
    RANDOM_LAYERED = "randomLayered"


@dataclass(frozen=True)
class FamilyParams:
    family: Family
    m: int = None
    k: int = 0
    layer_sizes: tuple = (3, 3)
    density: float = 0.5
    seed: int = 0

    def check(self):
        fam = Family(self.family)
        if fam in (Family.M_D1D2, Family.TWO_BOUNDS):
            if self.m is None or int(self.m) != self.m or self.m < 2:
                # m = 1 is the degenerate instance; see the README
                raise InvalidParams(f"{fam.value} needs an integer m >= 2, got {self.m!r}")
        if fam is Family.SET_SIZE_TO_RANK and (int(self.k) != self.k or self.k < 0):
            raise InvalidParams(f"k must be a non-negative integer, got {self.k!r}")
        if fam is Family.RANDOM_LAYERED:
            if not self.layer_sizes or any(int(s) != s or s < 1 for s in self.layer_sizes):
                raise InvalidParams("layer_sizes must be a non-empty list of positive integers")
            if not 0 < self.density <= 1:
                raise InvalidParams(f"density must lie in (0, 1], got {self.density!r}")
            if self.seed < 0:
                raise InvalidParams("seed must be non-negative")
        return fam


def _net(layers, edges):
    return LayeredNetwork(layers, edges, ("s1", "s2"), ("d1", "d2"))


def _fan(tails, heads):
    return [(u, v) for u in tails for v in heads]


def _vs(lo, hi):
    return [f"v{i}" for i in range(lo, hi + 1)]


def fig2d1d2():
    return _net(
        [["s1", "s2"], _vs(1, 3), _vs(4, 5), ["d1", "d2"]],
        [("s1", "v1"), ("s2", "v2"), ("s2", "v3")]
        + _fan(["v1", "v2", "v3"], ["v4"])
        + _fan(["v2", "v3"], ["v5"])
        + [("v4", "d1"), ("v5", "d2")],
    )


def fig3d1d2():
    return _net(
        [["s1", "s2"], _vs(1, 4), _vs(5, 7), ["d1", "d2"]],
        [("s1", "v1")]
        + _fan(["s2"], ["v2", "v3", "v4"])
        + [("v1", "v5"), ("v2", "v5"), ("v2", "v6")]
        + _fan(["v3"], ["v5", "v6", "v7"])
        + [("v4", "v5"), ("v4", "v7")]
        + [("v5", "d1"), ("v6", "d2"), ("v7", "d2")],
    )


def fig_full_dof():
    # No v7 -> d2 edge: with it, v7 would be heard by both destinations and the
    # three-slot third hop could not deliver interference-free rows to either.
    return _net(
        [["s1", "s2"], _vs(1, 5), _vs(6, 8), ["d1", "d2"]],
        _fan(["s1"], ["v1", "v2"])
        + _fan(["s2"], ["v3", "v4", "v5"])
        + _fan(["v1", "v2"], ["v6", "v7"])
        + _fan(["v3"], ["v6", "v8"])
        + _fan(["v4", "v5"], ["v6", "v7", "v8"])
        + [("v6", "d1"), ("v7", "d1"), ("v8", "d2")],
    )


def d1d2_one_half():
    return _net(
        [["s1", "s2"], _vs(1, 3), ["d1", "d2"]],
        _fan(["s1"], ["v1", "v2"])
        + _fan(["s2"], ["v1", "v2", "v3"])
        + _fan(["v1", "v2"], ["d1", "d2"])
        + [("v3", "d2")],
    )


def m_d1d2(m):
    """Four layers; v1 carries s1 alone into v_{m+2}, v2..v_{m+1} are fully connected."""
    v1, bottleneck = "v1", f"v{m + 2}"
    relays2 = _vs(2, m + 1)
    layer3 = _vs(m + 2, 2 * m + 1)
    return _net(
        [["s1", "s2"], [v1] + relays2, layer3, ["d1", "d2"]],
        [("s1", v1)]
        + _fan(["s2"], relays2)
        + [(v1, bottleneck)]
        + _fan(relays2, layer3)
        + [(bottleneck, "d1")]
        + _fan(layer3[1:], ["d2"]),
    )


def two_bounds(m):
    """``m_d1d2(m)`` followed by its session-swapped copy, built edge by edge.

    Layer 4 holds the boundary relays ``v_{2m+2}`` (session 1) and
    ``v_{2m+3}`` (session 2); layer 5 starts with the single relay fed by the
    session-2 boundary node; layer 6 starts with the bottleneck node for d2.
    """
    relays2 = _vs(2, m + 1)
    layer3 = _vs(m + 2, 2 * m + 1)
    b1, b2 = f"v{2 * m + 2}", f"v{2 * m + 3}"
    single = f"v{2 * m + 4}"
    relays5 = _vs(2 * m + 5, 3 * m + 4)
    layer6 = _vs(3 * m + 5, 4 * m + 4)
    return _net(
        [["s1", "s2"], ["v1"] + relays2, layer3, [b1, b2], [single] + relays5, layer6, ["d1", "d2"]],
        [("s1", "v1")]
        + _fan(["s2"], relays2)
        + [("v1", layer3[0])]
        + _fan(relays2, layer3)
        + [(layer3[0], b1)]
        + _fan(layer3[1:], [b2])
        + [(b2, single)]
        + _fan([b1], relays5)
        + [(single, layer6[0])]
        + _fan(relays5, layer6)
        + [(layer6[0], "d2")]
        + _fan(layer6[1:], ["d1"]),
    )


def set_size_to_rank(k):
    """``fig3d1d2`` plus k second-layer nodes v8, v9, ... fed by s2 into v5, v6, v7."""
    base = fig3d1d2()
    extra = _vs(8, 7 + k)
    layers = [list(layer) for layer in base.layers]
    layers[1] += extra
    edges = list(base.edges) + _fan(["s2"], extra) + _fan(extra, ["v5", "v6", "v7"])
    return _net(layers, edges)


def _reaches(net, src, dst):
    seen, stack = {src}, [src]
    while stack:
        u = stack.pop()
        if u == dst:
            return True
        for w in net._children[u]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return False


def random_layered(layer_sizes, density, seed):
    """Random layered network with relay layers of the given sizes.

    Each edge between adjacent layers is kept with probability ``density``.
    Draws are rejected until paths s1->d1 and s2->d2 both exist.
    """
    rng = derive_rng(seed)
    names = [["s1", "s2"]]
    n = 0
    for size in layer_sizes:
        names.append([f"v{n + i}" for i in range(1, size + 1)])
        n += size
    names.append(["d1", "d2"])
    for _ in range(MAX_RANDOM_ATTEMPTS):
        edges = [
            (u, v)
            for a, b in zip(names, names[1:])
            for u in a
            for v in b
            if rng.random() < density
        ]
        net = _net(names, edges)
        if _reaches(net, "s1", "d1") and _reaches(net, "s2", "d2"):
            return net
    raise InvalidParams(
        f"no network with s1->d1 and s2->d2 paths after {MAX_RANDOM_ATTEMPTS} draws; raise density"
    )


def gen_family(params):
    fam = params.check()
    if fam is Family.FIG2D1D2:
        net = fig2d1d2()
    elif fam is Family.FIG3D1D2:
        net = fig3d1d2()
    elif fam is Family.FIG_FULL_DOF:
        net = fig_full_dof()
    elif fam is Family.D1D2_ONE_HALF:
        net = d1d2_one_half()
    elif fam is Family.M_D1D2:
        net = m_d1d2(params.m)
    elif fam is Family.TWO_BOUNDS:
        net = two_bounds(params.m)
    elif fam is Family.SET_SIZE_TO_RANK:
        net = set_size_to_rank(params.k)
    else:
        net = random_layered(tuple(params.layer_sizes), params.density, params.seed)
    assert not validate(net), validate(net)
    return net
