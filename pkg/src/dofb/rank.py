"""Generic rank of transfer matrices.

A transfer matrix whose non-zero entries are independent, continuously
distributed gains has, almost surely, the rank of its support pattern's
maximum bipartite matching.  That matching size is the source of truth here;
random evaluations over GF(P) are kept as an independent cross-check.
"""

from dataclasses import dataclass, field

from . import ffield
from ._seeding import derive_rng
from .errors import InternalInconsistency, LayerMismatch, MissingGain
from .network import natural_key

__all__ = [
    "SupportPattern",
    "GainAssignment",
    "RankReport",
    "transfer_pattern",
    "structural_rank",
    "field_rank",
    "generic_rank",
    "draw_gains",
]

DEFAULT_TRIALS = 8


@dataclass(frozen=True)
class SupportPattern:
    """Boolean support of a transfer matrix: ``entries[i][j]`` is true iff
    column node ``cols[j]`` has an edge into row node ``rows[i]``."""

    rows: tuple
    cols: tuple
    entries: tuple

    def __post_init__(self):
        object.__setattr__(self, "rows", tuple(self.rows))
        object.__setattr__(self, "cols", tuple(self.cols))
        entries = tuple(tuple(bool(x) for x in row) for row in self.entries)
        if len(entries) != len(self.rows) or any(len(r) != len(self.cols) for r in entries):
            raise ValueError("pattern entries do not match the row/column labels")
        object.__setattr__(self, "entries", entries)

    @classmethod
    def from_matrix(cls, matrix):
        """Pattern with synthetic labels ``r0.., c0..`` from a 0/1 matrix."""
        matrix = [list(r) for r in matrix]
        ncols = len(matrix[0]) if matrix else 0
        return cls(
            [f"r{i}" for i in range(len(matrix))],
            [f"c{j}" for j in range(ncols)],
            matrix,
        )

    @property
    def shape(self):
        return len(self.rows), len(self.cols)

    def submatrix(self, rows=None, cols=None):
        ri = range(len(self.rows)) if rows is None else [self.rows.index(r) for r in rows]
        ci = range(len(self.cols)) if cols is None else [self.cols.index(c) for c in cols]
        return SupportPattern(
            [self.rows[i] for i in ri],
            [self.cols[j] for j in ci],
            [[self.entries[i][j] for j in ci] for i in ri],
        )


class GainAssignment:
    """Non-zero field gains keyed by ``(tx, rx, slot)``.

    For a :class:`SupportPattern` the edge ``(col, row)`` plays ``(tx, rx)``.
    """

    def __init__(self, values, prime=ffield.DEFAULT_PRIME):
        self._values = dict(values)
        self.prime = prime
        if any(not 0 < v < prime for v in self._values.values()):
            raise ValueError("gains must be non-zero field elements")

    def __getitem__(self, key):
        try:
            return self._values[key]
        except KeyError:
            raise MissingGain(key) from None

    def __contains__(self, key):
        return key in self._values

    def __len__(self):
        return len(self._values)

    def keys(self):
        return self._values.keys()


def draw_gains(edges, slots, prime, rng):
    """Uniform non-zero gains for every ``(edge, slot)`` pair."""
    slots = list(slots)
    return GainAssignment(
        {(u, v, t): rng.randrange(1, prime) for u, v in edges for t in slots}, prime
    )


def transfer_pattern(net, members, layer):
    """Support of the transfer matrix from ``members`` (inside ``layer``) to ``layer + 1``."""
    if not 1 <= layer < net.depth:
        raise LayerMismatch(f"layer index {layer} out of range 1..{net.depth - 1}")
    tx_layer = set(net.layer(layer))
    bad = sorted((v for v in members if v not in tx_layer), key=natural_key)
    if bad:
        raise LayerMismatch(f"nodes {bad} are not in layer {layer}")
    cols = sorted(members, key=natural_key)
    rows = net.layer(layer + 1)
    edges = set(net.edges)
    return SupportPattern(rows, cols, [[(w, u) in edges for w in cols] for u in rows])


def structural_rank(pat):
    """Size of a maximum matching between rows and columns over true entries."""
    adj = [[j for j, x in enumerate(row) if x] for row in pat.entries]
    match_col = {}

    def augment(i, seen):
        for j in adj[i]:
            if j in seen:
                continue
            seen.add(j)
            if j not in match_col or augment(match_col[j], seen):
                match_col[j] = i
                return True
        return False

    return sum(augment(i, set()) for i in range(len(adj)))


def field_rank(pat, gains, slot=1):
    """Rank over GF(P) of the pattern with true entries replaced by their gains."""
    p = gains.prime
    matrix = [
        [gains[(c, r, slot)] if x else 0 for c, x in zip(pat.cols, row)]
        for r, row in zip(pat.rows, pat.entries)
    ]
    if not pat.cols:
        return 0
    return ffield.rank(matrix, p)


@dataclass
class RankReport:
    structural: int
    field_ranks: list = field(default_factory=list)

    @property
    def field_max(self):
        return max(self.field_ranks, default=0)

    @property
    def agree(self):
        return self.field_max == self.structural


def generic_rank(pat, trials=DEFAULT_TRIALS, seed=0, prime=ffield.DEFAULT_PRIME):
    """Generic rank of ``pat`` plus a report of ``trials`` random field evaluations.

    Raises :class:`InternalInconsistency` if an evaluation exceeds the
    structural rank, which no gain assignment can do.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    report = RankReport(structural_rank(pat))
    edges = [
        (c, r) for r, row in zip(pat.rows, pat.entries) for c, x in zip(pat.cols, row) if x
    ]
    for t in range(trials):
        gains = draw_gains(edges, [1], prime, derive_rng(seed, t))
        fr = field_rank(pat, gains)
        if fr > report.structural:
            raise InternalInconsistency(
                f"field rank {fr} exceeds structural rank {report.structural} (trial {t})"
            )
        report.field_ranks.append(fr)
    return report.structural, report
