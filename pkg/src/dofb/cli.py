"""``dofb`` command line.

stdout always carries exactly one JSON document; everything else goes to stderr.
Exit codes: 0 ok, 1 acceptance failure, 2 input error, 3 subset cap exceeded,
4 scheme/network mismatch, 5 decode failure.
"""

import argparse
import json
import sys
from pathlib import Path

from . import ffield
from .bottleneck import (
    DEFAULT_SUBSET_CAP,
    certificate_json,
    find_all_bottlenecks,
    find_omniscient,
    prior_bound,
)
from .engine import program_json, simulate
from .errors import CapExceeded, DofbError, InvalidParams, ParseError, SchemeError, ValidationError
from .families import Family, FamilyParams, gen_family
from .network import parse_network, serialize_network
from .region import (
    HalfPlane,
    build_region,
    expressible_by_bottleneck_bounds,
    format_rational,
    in_S,
    region_csv,
    region_json,
    sum_dof,
)
from .schemes import SCHEMES, get_scheme
from .verify import default_golden_dir, run_all, summary_json

EXIT_OK, EXIT_ACCEPTANCE, EXIT_INPUT, EXIT_CAP, EXIT_MISMATCH, EXIT_DECODE = range(6)

FAMILY_FLAGS = {
    "fig-2d1d2": Family.FIG2D1D2,
    "fig-3d1d2": Family.FIG3D1D2,
    "fig-full-dof": Family.FIG_FULL_DOF,
    "m-d1d2": Family.M_D1D2,
    "two-bounds": Family.TWO_BOUNDS,
    "set-size-to-rank": Family.SET_SIZE_TO_RANK,
    "d1d2-one-half": Family.D1D2_ONE_HALF,
    "random": Family.RANDOM_LAYERED,
}

# scheme used by `simulate` when only --family is given
DEFAULT_SCHEME = {
    Family.FIG2D1D2: "2d1d2",
    Family.FIG3D1D2: "example1",
    Family.FIG_FULL_DOF: "example2",
    Family.M_D1D2: "m-d1d2",
    Family.TWO_BOUNDS: "two-bounds",
}


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(message)


def _emit(doc):
    sys.stdout.write(json.dumps(doc, indent=2) + "\n")


def _fail(code, message):
    print(f"dofb: {message}", file=sys.stderr)
    return code


def _layer_sizes(text):
    try:
        return tuple(int(x) for x in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError("layer sizes must be comma-separated integers") from None


def _network_args(p):
    p.add_argument("--family", choices=sorted(FAMILY_FLAGS))
    p.add_argument("--m", type=int)
    p.add_argument("--k", type=int, default=0)
    p.add_argument("--layer-sizes", type=_layer_sizes, default=(3, 3), help="random family only")
    p.add_argument("--density", type=float, default=0.5, help="random family only")
    p.add_argument("--seed", type=int, default=0)


def _build_parser():
    parser = _Parser(prog="dofb", description="Bottleneck analysis of layered two-unicast networks.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    gen = sub.add_parser("generate", help="write a family network as canonical JSON")
    _network_args(gen)
    gen.add_argument("--out")

    ana = sub.add_parser("analyze", help="certificates, bounds and outer region")
    _network_args(ana)
    ana.add_argument("--net")
    ana.add_argument("--subset-cap", type=int, default=DEFAULT_SUBSET_CAP)

    sim = sub.add_parser("simulate", help="run a built-in scheme over random field gains")
    _network_args(sim)
    sim.add_argument("--net")
    sim.add_argument("--scheme", choices=sorted(SCHEMES))
    sim.add_argument("--trials", type=int, default=100)
    sim.add_argument("--out")
    sim.add_argument("--export-scheme", help="also write the scheme program as JSON")

    reg = sub.add_parser("region", help="outer-region vertices as CSV")
    _network_args(reg)
    reg.add_argument("--net")
    reg.add_argument("--subset-cap", type=int, default=DEFAULT_SUBSET_CAP)
    reg.add_argument("--out", help="CSV destination")

    ver = sub.add_parser("verify-all", help="run the acceptance suite")
    ver.add_argument("--seed", type=int, default=0)
    ver.add_argument("--golden-dir", default=None)
    return parser


def _params(args):
    if args.family is None:
        raise InvalidParams("give --net or --family")
    return FamilyParams(
        FAMILY_FLAGS[args.family],
        m=args.m,
        k=args.k,
        layer_sizes=args.layer_sizes,
        density=args.density,
        seed=args.seed,
    )


def _load_network(args):
    if getattr(args, "net", None):
        if args.family:
            raise InvalidParams("give either --net or --family, not both")
        try:
            text = Path(args.net).read_text(encoding="utf-8")
        except OSError as exc:
            raise InvalidParams(f"cannot read {args.net}: {exc.strerror}") from None
        return parse_network(text)
    return gen_family(_params(args))


def _check_cap(args):
    if args.subset_cap < 1:
        raise InvalidParams("--subset-cap must be >= 1")


def cmd_generate(args):
    net = gen_family(_params(args))
    text = serialize_network(net)
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8", newline="\n")
        _emit({"out": args.out, "family": FAMILY_FLAGS[args.family].value, "nodes": len(net.nodes),
               "layers": [len(layer) for layer in net.layers]})
    else:
        sys.stdout.write(text)
    return EXIT_OK


def analysis_report(net, subset_cap=DEFAULT_SUBSET_CAP, seed=0):
    certs = find_all_bottlenecks(net, subset_cap)
    region = build_region(certs)
    total = sum_dof(region)
    ok, witness = expressible_by_bottleneck_bounds(region)
    return {
        "seed": seed,
        "omniscient": [{"dest": o.dest_index, "node": o.node, "witness": o.witness} for o in find_omniscient(net)],
        "certificates": [certificate_json(c, net, subset_cap) for c in certs],
        "bounds": {
            "new": [str(HalfPlane.bottleneck(c.dest_index, c.rho)) for c in certs],
            "prior": [str(prior_bound(c, net, subset_cap)) for c in certs],
        },
        "region": region_json(region),
        "sum_dof": format_rational(total),
        "in_S": in_S(total),
        "expressible": {"value": ok, "witness": [format_rational(w) for w in witness] if ok else None},
    }


def cmd_analyze(args):
    _check_cap(args)
    net = _load_network(args)
    _emit(analysis_report(net, args.subset_cap, args.seed))
    return EXIT_OK


def _infer_m(name, net, given):
    if given is not None:
        return given
    # both m-parameterized families have m nodes in layer 3
    if net.depth < 4:
        raise InvalidParams(f"scheme {name!r} needs --m")
    return len(net.layer(3))


def _scheme_for(net):
    """Name of the library scheme built on exactly this network, if any."""
    m = len(net.layer(3)) if net.depth >= 4 else None
    for name in sorted(SCHEMES):
        try:
            bundle = get_scheme(name, m if name in ("m-d1d2", "two-bounds") else None)
        except InvalidParams:
            continue
        if bundle.network == net:
            return name
    return None


def cmd_simulate(args):
    if args.trials < 1:
        raise InvalidParams("--trials must be >= 1")
    prime = ffield.prime_from_env()
    net = _load_network(args)
    name = args.scheme
    if name is None and args.family is None:
        name = _scheme_for(net)
    if name is None:
        fam = FAMILY_FLAGS.get(args.family)
        if fam not in DEFAULT_SCHEME:
            raise InvalidParams("give --scheme (no default scheme for this network)")
        name = DEFAULT_SCHEME[fam]
    m = _infer_m(name, net, args.m) if name in ("m-d1d2", "two-bounds") else None
    try:
        bundle = get_scheme(name, m)
    except InvalidParams as exc:
        raise SchemeError(f"scheme {name!r} does not fit this network: {exc}") from None
    if bundle.network != net:
        raise SchemeError(f"scheme {name!r} is not defined for this network")
    if args.export_scheme:
        Path(args.export_scheme).write_text(
            json.dumps(program_json(bundle.program, bundle.space), indent=2) + "\n", encoding="utf-8"
        )
    report = simulate(net, bundle.program, bundle.space, args.trials, args.seed, prime)
    doc = report.to_json()
    if args.out:
        Path(args.out).write_text(json.dumps(doc, indent=2) + "\n", encoding="utf-8")
    _emit(doc)
    if not report.all_decoded:
        print(
            f"dofb: decoding failed (d1 {report.decode_d1}/{report.trials}, d2 {report.decode_d2}/{report.trials})",
            file=sys.stderr,
        )
        return EXIT_DECODE
    return EXIT_OK


def cmd_region(args):
    _check_cap(args)
    net = _load_network(args)
    region = build_region(find_all_bottlenecks(net, args.subset_cap))
    csv_text = region_csv(region)
    if args.out:
        Path(args.out).write_text(csv_text, encoding="utf-8", newline="\n")
    doc = region_json(region)
    doc["csv"] = args.out if args.out else csv_text
    _emit(doc)
    return EXIT_OK


def _table(results):
    lines = []
    for r in results:
        lines.append(f"[{'PASS' if r.passed else 'FAIL'}] criterion {r.number}: {r.title}")
        for row in r.rows:
            mark = "ok " if row["ok"] else "BAD"
            lines.append(f"    {mark} {row['family']} | expected {row['expected']} | computed {row['computed']}")
    return "\n".join(lines)


def cmd_verify_all(args):
    golden = Path(args.golden_dir) if args.golden_dir else default_golden_dir()
    if not golden.is_dir():
        raise InvalidParams(f"golden directory {golden} does not exist")
    results = run_all(args.seed, golden)
    print(_table(results), file=sys.stderr)
    _emit(summary_json(results, args.seed))
    failed = [r.number for r in results if not r.passed]
    if failed:
        print(f"dofb: failed criteria: {', '.join(map(str, failed))}", file=sys.stderr)
        return EXIT_ACCEPTANCE
    return EXIT_OK


COMMANDS = {
    "generate": cmd_generate,
    "analyze": cmd_analyze,
    "simulate": cmd_simulate,
    "region": cmd_region,
    "verify-all": cmd_verify_all,
}


def main(argv=None):
    try:
        args = _build_parser().parse_args(argv)
    except _UsageError as exc:
        return _fail(EXIT_INPUT, str(exc))
    try:
        return COMMANDS[args.command](args)
    except CapExceeded as exc:
        return _fail(EXIT_CAP, str(exc))
    except SchemeError as exc:
        return _fail(EXIT_MISMATCH, str(exc))
    except ValidationError as exc:
        return _fail(EXIT_INPUT, "invalid network: " + "; ".join(exc.violations))
    except (ParseError, InvalidParams, ValueError) as exc:
        return _fail(EXIT_INPUT, str(exc))
    except DofbError as exc:
        return _fail(EXIT_INPUT, str(exc))


if __name__ == "__main__":
    sys.exit(main())
