"""The acceptance suite as plain code, shared by ``dofb verify-all`` and the tests.

Each check returns a :class:`CriterionResult` with one table row per family
instance.  Nothing here uses tolerances: every comparison is between exact
rationals or integers.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from pathlib import Path

from . import ffield
from ._seeding import derive_rng
from .bottleneck import construct_degraded_bc, find_all_bottlenecks, find_bottlenecks, find_omniscient, prior_bound
from .engine import decode_check, run_scheme, simulate
from .families import (
    Family,
    FamilyParams,
    d1d2_one_half,
    fig2d1d2,
    fig3d1d2,
    fig_full_dof,
    gen_family,
    m_d1d2,
    set_size_to_rank,
    two_bounds,
)
from .network import parse_network, serialize_network
from .rank import SupportPattern, draw_gains, field_rank, structural_rank
from .region import (
    HalfPlane,
    build_region,
    compare_bounds,
    expressible_by_bottleneck_bounds,
    format_rational,
    in_S,
    region_from_constraints,
    sum_dof,
)
from .schemes import scheme_2d1d2, scheme_example1, scheme_example2, scheme_m_d1d2, scheme_two_bounds

__all__ = ["CriterionResult", "CRITERIA", "run_all", "golden_networks", "default_golden_dir"]

TRIALS = 100
SEEDS_PER_SCHEME = 5

# file name -> FamilyParams; the criterion that owns each file is in _GOLDEN_OWNER
GOLDEN = {
    "fig2d1d2.json": FamilyParams(Family.FIG2D1D2),
    "fig3d1d2.json": FamilyParams(Family.FIG3D1D2),
    "figFullDof.json": FamilyParams(Family.FIG_FULL_DOF),
    "d1d2OneHalf.json": FamilyParams(Family.D1D2_ONE_HALF),
    "mD1D2-4.json": FamilyParams(Family.M_D1D2, m=4),
    "twoBounds-3.json": FamilyParams(Family.TWO_BOUNDS, m=3),
    "setSizeToRank-2.json": FamilyParams(Family.SET_SIZE_TO_RANK, k=2),
}
_GOLDEN_OWNER = {
    "fig3d1d2.json": 1,
    "fig2d1d2.json": 2,
    "figFullDof.json": 3,
    "d1d2OneHalf.json": 3,
    "mD1D2-4.json": 4,
    "twoBounds-3.json": 5,
    "setSizeToRank-2.json": 6,
}


@dataclass
class CriterionResult:
    number: int
    title: str
    rows: list = field(default_factory=list)

    @property
    def passed(self):
        return bool(self.rows) and all(r["ok"] for r in self.rows)

    def add(self, family, expected, computed, ok=None):
        if ok is None:
            ok = expected == computed
        self.rows.append({"family": family, "expected": str(expected), "computed": str(computed), "ok": bool(ok)})

    def to_json(self):
        return {"criterion": self.number, "title": self.title, "passed": self.passed, "rows": self.rows}


def default_golden_dir():
    return Path(str(resources.files("dofb") / "data" / "golden"))


def golden_networks(directory):
    """Regenerate every golden network; returns ``{file: (expected_text, found_text | None)}``."""
    directory = Path(directory)
    out = {}
    for name, params in GOLDEN.items():
        path = directory / name
        found = path.read_text(encoding="utf-8") if path.is_file() else None
        out[name] = (serialize_network(gen_family(params)), found)
    return out


def _check_golden(res, golden_dir):
    if golden_dir is None:
        return
    for name, (expected, found) in golden_networks(golden_dir).items():
        if _GOLDEN_OWNER[name] != res.number:
            continue
        res.add(f"golden {name}", "matches generator", "missing" if found is None else
                ("matches generator" if found == expected else "differs"))


def _cert_tuple(c):
    return (f"d{c.dest_index}", c.node, "{" + ",".join(c.parent_set) + "}", c.rho)


def _vertices(region):
    return "[" + ", ".join(f"({format_rational(x)},{format_rational(y)})" for x, y in region.vertices) + "]"


def _sim_all_seeds(bundle, seed, seeds=SEEDS_PER_SCHEME, trials=TRIALS, prime=ffield.DEFAULT_PRIME):
    reports = [simulate(bundle.network, bundle.program, bundle.space, trials, seed + i, prime) for i in range(seeds)]
    ok = all(r.decode_d1 == trials and r.decode_d2 == trials for r in reports)
    dofs = {r.achieved_dof for r in reports}
    return ok, (dofs.pop() if len(dofs) == 1 else None)


def _pair(x, y):
    return f"({format_rational(x)},{format_rational(y)})"


def criterion_1(seed, golden_dir=None):
    res = CriterionResult(1, "fig3d1d2: single rho=3 certificate for d1, region and sum DoF")
    net = fig3d1d2()
    certs = find_all_bottlenecks(net)
    res.add("fig3d1d2 certificates", [("d1", "v5", "{v2,v3,v4}", 3)], [_cert_tuple(c) for c in certs])
    region = build_region(certs)
    res.add("fig3d1d2 vertices", "[(0,0), (1,0), (2/3,1), (0,1)]", _vertices(region))
    res.add("fig3d1d2 sum DoF", "5/3", format_rational(sum_dof(region)))
    res.add("fig3d1d2 bound", "3 D1 + D2 <= 3", ", ".join(str(HalfPlane.bottleneck(c.dest_index, c.rho)) for c in certs))
    _check_golden(res, golden_dir)
    return res


def criterion_2(seed, golden_dir=None):
    res = CriterionResult(2, "fig2d1d2: rho=2 bottleneck and the (1/2,1) scheme")
    net = fig2d1d2()
    certs = find_all_bottlenecks(net)
    res.add("fig2d1d2 certificates", [("d1", "v4", "{v2,v3}", 2)], [_cert_tuple(c) for c in certs])
    res.add("fig2d1d2 bound", "2 D1 + D2 <= 2", ", ".join(str(HalfPlane.bottleneck(c.dest_index, c.rho)) for c in certs))
    ok, dof = _sim_all_seeds(scheme_2d1d2(), seed)
    res.add(f"2d1d2 scheme, {SEEDS_PER_SCHEME} seeds x {TRIALS} trials", "all decode, (1/2,1)",
            f"{'all decode' if ok else 'decode failures'}, {_pair(*dof) if dof else 'unstable'}")
    _check_golden(res, golden_dir)
    return res


def criterion_3(seed, golden_dir=None):
    res = CriterionResult(3, "figFullDof and d1d2OneHalf: no bottleneck, (1,1) scheme")
    for name, net in (("figFullDof", fig_full_dof()), ("d1d2OneHalf", d1d2_one_half())):
        res.add(f"{name} certificates", 0, len(find_all_bottlenecks(net)))
        res.add(f"{name} omniscient nodes", 0, len(find_omniscient(net)))
    b = scheme_example2()
    rep = simulate(b.network, b.program, b.space, TRIALS, seed)
    res.add("example2 scheme", f"{TRIALS}/{TRIALS}, (1,1)",
            f"{min(rep.decode_d1, rep.decode_d2)}/{TRIALS}, {_pair(*rep.achieved_dof) if rep.achieved_dof else 'none'}")
    _check_golden(res, golden_dir)
    return res


def criterion_4(seed, golden_dir=None):
    res = CriterionResult(4, "mD1D2(m), m=2..8: rho=m, ((m-1)/m,1) achieved at a vertex")
    for m in range(2, 9):
        net = m_d1d2(m)
        certs = find_all_bottlenecks(net)
        res.add(f"m-d1d2 m={m} rho", [m], [c.rho for c in certs])
        b = scheme_m_d1d2(m)
        rep = simulate(b.network, b.program, b.space, TRIALS, seed)
        want = (Fraction(m - 1, m), Fraction(1))
        got = rep.achieved_dof
        res.add(f"m-d1d2 m={m} achieved", _pair(*want), _pair(*got) if got else "none")
        res.add(f"m-d1d2 m={m} vertex", "yes", "yes" if got and build_region(certs).is_vertex(got) else "no")
    _check_golden(res, golden_dir)
    return res


def criterion_5(seed, golden_dir=None):
    res = CriterionResult(5, "twoBounds(m), m=2..6: two rho=m bounds, sum DoF 2-2/(m+1) in S, achieved")
    for m in range(2, 7):
        net = two_bounds(m)
        certs = find_all_bottlenecks(net)
        res.add(f"two-bounds m={m} certificates", [(1, m), (2, m)], [(c.dest_index, c.rho) for c in certs])
        total = sum_dof(build_region(certs))
        want = 2 - Fraction(2, m + 1)
        res.add(f"two-bounds m={m} sum", f"sum {want} | in_S yes",
                f"sum {total} | in_S {'yes' if in_S(total) else 'no'}")
        b = scheme_two_bounds(m)
        rep = simulate(b.network, b.program, b.space, TRIALS, seed)
        got = rep.achieved_dof
        res.add(f"two-bounds m={m} achieved", f"{TRIALS}/{TRIALS}, {_pair(Fraction(m, m + 1), Fraction(m, m + 1))}",
                f"{min(rep.decode_d1, rep.decode_d2)}/{TRIALS}, {_pair(*got) if got else 'none'}")
    _check_golden(res, golden_dir)
    return res


def criterion_6(seed, golden_dir=None):
    res = CriterionResult(6, "setSizeToRank(k), k=0..5: rho stays 3, prior intercept grows toward 1")
    previous = None
    for k in range(6):
        net = set_size_to_rank(k)
        certs = find_bottlenecks(net, 1)
        res.add(f"set-size-to-rank k={k} rho", [3], [c.rho for c in certs])
        if len(certs) != 1:
            continue
        gap = compare_bounds(HalfPlane.bottleneck(1, certs[0].rho), prior_bound(certs[0], net))
        res.add(f"set-size-to-rank k={k} intercepts", f"new 2/3, prior {Fraction(2 + k, 3 + k)}",
                f"new {gap.new_intercept}, prior {gap.prior_intercept}")
        if previous is not None:
            res.add(f"set-size-to-rank k={k} increase", "yes", "yes" if gap.prior_intercept > previous else "no")
        previous = gap.prior_intercept
    _check_golden(res, golden_dir)
    return res


def matching_size_by_masks(entries):
    """Largest k such that some k x k submatrix has a full-support diagonal.

    Exhaustive over partial assignments: row by row, every reachable set of
    used columns is kept.  Shares no code with the augmenting-path matcher.
    """
    reachable = {0}
    for row in entries:
        step = set(reachable)
        for used in reachable:
            for j, x in enumerate(row):
                if x and not used >> j & 1:
                    step.add(used | 1 << j)
        reachable = step
    return max(bin(u).count("1") for u in reachable)


def _random_pattern(rng):
    rows, cols = rng.randint(1, 8), rng.randint(1, 8)
    density = rng.choice([0.15, 0.3, 0.5, 0.8])
    return SupportPattern.from_matrix([[rng.random() < density for _ in range(cols)] for _ in range(rows)])


def criterion_7(seed, golden_dir=None, count=200, draws=8, prime=ffield.DEFAULT_PRIME):
    res = CriterionResult(7, "structural rank matches an exhaustive oracle; field rank never exceeds it")
    mismatches = above = 0
    for i in range(count):
        rng = derive_rng(seed, 7, i)
        pat = _random_pattern(rng)
        s = structural_rank(pat)
        if s != matching_size_by_masks(pat.entries):
            mismatches += 1
        edges = [(c, r) for r, row in zip(pat.rows, pat.entries) for c, x in zip(pat.cols, row) if x]
        for d in range(draws):
            if field_rank(pat, draw_gains(edges, [1], prime, derive_rng(seed, 7, i, d + 1))) > s:
                above += 1
    res.add(f"{count} random patterns, oracle mismatches", 0, mismatches)
    res.add(f"{count * draws} gain draws, field rank above structural", 0, above)
    return res


def criterion_8(seed, golden_dir=None):
    res = CriterionResult(8, "expressibility by m D_i + D_other <= m bounds")
    sum_region = region_from_constraints([HalfPlane(1, 1, Fraction(3, 2))])
    ok, _ = expressible_by_bottleneck_bounds(sum_region)
    res.add("box and D1 + D2 <= 3/2", "not expressible", "expressible" if ok else "not expressible")
    ok, witness = expressible_by_bottleneck_bounds(build_region(find_all_bottlenecks(fig3d1d2())))
    res.add("fig3d1d2 region", "expressible (3, inf)",
            f"expressible ({', '.join(format_rational(w) for w in witness)})" if ok else "not expressible")
    return res


def _library_bundles():
    yield scheme_2d1d2()
    yield scheme_example1()
    yield scheme_example2()
    for m in (2, 3, 4):
        yield scheme_m_d1d2(m)
    for m in (2, 3):
        yield scheme_two_bounds(m)


def criterion_9(seed, golden_dir=None, cases=1000):
    """Seeded random sweep over the invariants also covered by the property tests."""
    res = CriterionResult(9, "invariant sweep: reconstruction soundness, determinism, inner in outer, round-trip")
    bundles = list(_library_bundles())
    done = {"soundness": 0, "determinism": 0, "inner_in_outer": 0, "round_trip": 0}
    bad = dict.fromkeys(done, 0)
    per_bundle = max(1, (cases - 100) // (2 * len(bundles)))
    for j, b in enumerate(bundles):
        region = build_region(find_all_bottlenecks(b.network))
        verdicts = set()
        for t in range(per_bundle):
            gains = draw_gains(b.network.edges, range(1, max(b.program.slot_counts) + 1),
                               ffield.DEFAULT_PRIME, derive_rng(seed, 9, j, t))
            run = run_scheme(b.network, b.program, b.space, gains)
            done["soundness"] += 1
            # run_scheme re-checks each served row at the end; check again against the requester
            if any(not ffield.in_span(row, run.states[n].rows, gains.prime) for n, row in run.reconstructions):
                bad["soundness"] += 1
            verdicts.add(tuple(
                decode_check(run.states[d].rows, b.space, w) for d, w in zip(b.network.destinations, "ab")
            ))
            done["determinism"] += 1
        if len(verdicts) != 1:
            bad["determinism"] += 1
        rep = simulate(b.network, b.program, b.space, per_bundle, seed + j)
        done["inner_in_outer"] += per_bundle
        if rep.achieved_dof is None or not region.contains(rep.achieved_dof):
            bad["inner_in_outer"] += 1
    for i in range(100):
        rng = derive_rng(seed, 9, 10_000 + i)
        sizes = tuple(rng.randint(1, 4) for _ in range(rng.randint(1, 3)))
        net = gen_family(FamilyParams(Family.RANDOM_LAYERED, layer_sizes=sizes, density=rng.choice([0.4, 0.6, 0.9]),
                                      seed=rng.randrange(2**32)))
        done["round_trip"] += 1
        if parse_network(serialize_network(net)) != net:
            bad["round_trip"] += 1
    for key in done:
        res.add(f"{key} ({done[key]} cases)", 0, bad[key])
    res.add("total cases", f">= {cases}", sum(done.values()), sum(done.values()) >= cases)
    return res


def criterion_10(seed, golden_dir=None):
    res = CriterionResult(10, "degraded broadcast model: rank rho, row 0 is the bottleneck row")
    nets = [("fig3d1d2", fig3d1d2()), ("fig2d1d2", fig2d1d2())]
    nets += [(f"m-d1d2 m={m}", m_d1d2(m)) for m in range(2, 9)]
    nets += [(f"two-bounds m={m}", two_bounds(m)) for m in range(2, 7)]
    for name, net in nets:
        for cert in find_all_bottlenecks(net):
            bc = construct_degraded_bc(net, cert, seed)
            cols = [bc.tx_nodes.index(c) for c in bc.parent_set]
            restricted = SupportPattern.from_matrix([[row[j] for j in cols] for row in bc.rx2_rows])
            ok = (
                bc.rx2_rows[0] == bc.rx1_row
                and bc.rx2_nodes[0] == cert.node
                and len(bc.rx2_rows) == cert.rho
                and structural_rank(restricted) == cert.rho
                and bc.tx_antennas == len(net.layer(cert.layer - 1))
            )
            res.add(f"{name} d{cert.dest_index} {cert.node}", f"rank {cert.rho}, degraded",
                    f"rank {structural_rank(restricted)}, {'degraded' if bc.rx2_rows[0] == bc.rx1_row else 'not degraded'}",
                    ok)
    return res


CRITERIA = [
    criterion_1, criterion_2, criterion_3, criterion_4, criterion_5,
    criterion_6, criterion_7, criterion_8, criterion_9, criterion_10,
]


def run_all(seed=0, golden_dir=None):
    """Run every criterion; ``golden_dir=None`` skips the golden-file comparisons."""
    return [check(seed, golden_dir) for check in CRITERIA]


def summary_json(results, seed):
    return {
        "seed": seed,
        "passed": all(r.passed for r in results),
        "criteria": [r.to_json() for r in results],
    }


def dumps(doc):
    return json.dumps(doc, indent=2, sort_keys=False) + "\n"
