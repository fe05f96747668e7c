# -*- coding: utf-8 -*-
"""
Command-line interface.

    triway region --snr 4,16,64 --which thm1
    triway gap --snr 10,100,1000 --n3 5 --grouped
    triway sweep --decades 3 6 --format csv
    triway scd --gammas 64,16 --levels 3 --topology one-to-many
    triway alloc --n-tilde 7,5,3 --demand 1,0,1,0,0,0
    triway simulate --config sim.json
    triway special --snr 10,100,1000 --kind MacConferencing
    triway adaptation --g1 3 --g2 1024

Every subcommand accepts `--config FILE` (a JSON object whose keys are the
long option names with dashes replaced by underscores); options given on the
command line override the file. Documents go to stdout or `--out`.

Exit status is 0 on success, 2 on invalid input (a JSON error object with a
`code` is written to stderr) and 1 on internal errors or when a simulation
does not recover every message.

"""

import argparse
import json
import logging
import sys
from typing import List, Optional

from triway.alloc import DemandTuple, allocate, feasible, max_weighted_demand, validate_n_tilde
from triway.core import TriwayError, parse_snr, validate_snr
from triway.docreader import DocReader
from triway.docwriter import DocWriter
from triway.polytope import per_dimension_gap
from triway.regions import (adaptation_gap, cutset_region, lemma1_outer, prop1_y_region, prop2_3wc_region,
                            special_case_region, sum_capacity, theorem1_region)
from triway.scd import Topology, decompose_many_to_one, decompose_one_to_many, decompose_p2p
from triway.scenarios import Scenario, registered_scenarios
from triway.sim import SimConfig, run
from triway.sweep import CSV_COLUMNS, N3Policy, sweep

logger = logging.getLogger(__name__)


class UsageError(TriwayError):
    code = "usage"


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _ints(text) -> List[int]:
    if isinstance(text, (list, tuple)):
        return [int(x) for x in text]
    try:
        return [int(p) for p in str(text).replace(" ", "").split(",") if p != ""]
    except ValueError:
        raise UsageError("expected comma separated integers, got %r" % (text,)) from None


def _floats(text) -> List[float]:
    if isinstance(text, (list, tuple)):
        return [float(x) for x in text]
    try:
        return [float(p) for p in str(text).replace(" ", "").split(",") if p != ""]
    except ValueError:
        raise UsageError("expected comma separated numbers, got %r" % (text,)) from None


def _snr(opts, tag="ThreeWay"):
    val = opts.get("snr")
    if val is None:
        raise UsageError("--snr is required")
    if isinstance(val, (list, tuple)):
        return validate_snr(*(float(x) for x in val), tag=tag)
    return parse_snr(str(val), tag)


def _require(opts, key):
    if opts.get(key) is None:
        raise UsageError("--%s is required" % key.replace("_", "-"))
    return opts[key]


def cmd_region(opts):
    which = opts.get("which") or "thm1"
    if which == "prop1":
        s = _snr(opts, opts.get("tag") or "Ystar")
        return prop1_y_region(s, int(_require(opts, "n1_tilde")), bool(opts.get("grouped")))
    s = _snr(opts, opts.get("tag") or "ThreeWay")
    if which == "thm1":
        return theorem1_region(s)
    if which == "lemma1":
        return lemma1_outer(s)
    if which == "cutset":
        return cutset_region(s, bool(opts.get("relaxed")))
    if which == "prop2":
        return prop2_3wc_region(s, int(_require(opts, "n3")), bool(opts.get("grouped")))
    if which == "sumcap":
        total, corner = sum_capacity(s)
        return {"snr": s, "sum_capacity": total, "corner": corner.to_dict()}
    raise UsageError("unknown region %r" % which)


def cmd_gap(opts):
    s = _snr(opts)
    outer = lemma1_outer(s)
    if opts.get("inner") == "thm1":
        inner = theorem1_region(s)
    else:
        inner = prop2_3wc_region(s, int(_require(opts, "n3")), bool(opts.get("grouped")))
    return per_dimension_gap(outer, inner)


def _grid(opts):
    grid = []
    for item in opts.get("snr") or []:
        grid.append(validate_snr(*item) if isinstance(item, (list, tuple)) else parse_snr(item))
    dec = opts.get("decades")
    if dec:
        lo, hi = int(dec[0]), int(dec[1])
        for k in range(lo, hi + 1):
            g3 = 10.0 ** k
            grid.append(validate_snr(g3 ** (1 / 3), g3 ** (2 / 3), g3))
    if not grid:
        raise UsageError("sweep needs --snr or --decades")
    return grid


def cmd_sweep(opts):
    points = sweep(_grid(opts), N3Policy(opts.get("policy") or N3Policy.MIN.value), opts.get("threads"))
    if opts.get("format") == "csv":
        return [row for p in points for row in p.csv_rows()]
    return {"points": [p.to_dict() for p in points]}


def cmd_scd(opts):
    gammas = _floats(_require(opts, "gammas"))
    levels = int(_require(opts, "levels"))
    topo = opts.get("topology") or "p2p"
    if topo in ("p2p", Topology.P2P.value):
        return decompose_p2p(gammas[0], levels)
    if topo in ("many-to-one", Topology.MANY_TO_ONE.value):
        plan, rate = decompose_many_to_one(gammas, levels, int(opts.get("kappa") or 1))
    elif topo in ("one-to-many", Topology.ONE_TO_MANY.value):
        plan, rate = decompose_one_to_many(gammas, levels)
    else:
        raise UsageError("unknown topology %r" % topo)
    return {"plan": plan, "strategy_rate": rate}


def cmd_alloc(opts):
    nt, n1 = validate_n_tilde(_ints(_require(opts, "n_tilde")))
    if opts.get("weights") is not None:
        w = _floats(opts["weights"])
        if len(w) != 6:
            raise UsageError("--weights needs 6 values")
        best = max_weighted_demand(dict(zip(("R21", "R31", "R12", "R32", "R13", "R23"), w)), nt)
        return {"demand": best.demand, "value": best.value, "optimal": best.optimal}
    d = DemandTuple(_ints(_require(opts, "demand")))
    return {"feasible": feasible(d, nt), "allocation": allocate(d, nt, n1)}


def cmd_simulate(opts):
    base = dict()
    if opts.get("n_tilde") is not None:
        base["N_tilde"] = _ints(opts["n_tilde"])
    if opts.get("N_tilde") is not None:
        base["N_tilde"] = _ints(opts["N_tilde"])
    for key, dest in (("demand", "demand"), ("q", "q"), ("blocks", "blocks"), ("seed", "seed"),
                      ("allocation", "allocation"), ("messages", "messages")):
        if opts.get(key) is not None:
            base[dest] = opts[key]
    if isinstance(base.get("demand"), str):
        base["demand"] = _ints(base["demand"])
    trace = run(SimConfig.from_dict(base))
    return trace


def cmd_special(opts):
    if opts.get("list"):
        names = registered_scenarios()
        return {"scenarios": names,
                "parameters": {name: Scenario.build_registered(name).describe_params() for name in names}}
    s = _snr(opts)
    params = dict()
    for item in opts.get("param") or []:
        name, sep, value = str(item).partition("=")
        if not sep:
            raise UsageError("--param expects NAME=VALUE, got %r" % item)
        params[name] = float(value)
    res = special_case_region(opts.get("kind") or "MacConferencing", s, int(opts.get("grid") or 64), **params)
    return res


def cmd_adaptation(opts):
    g1 = float(_require(opts, "g1"))
    g2 = float(_require(opts, "g2"))
    return {"g1": g1, "g2": g2, "adaptation_gap": adaptation_gap(g1, g2)}


COMMANDS = {
    "region": cmd_region,
    "gap": cmd_gap,
    "sweep": cmd_sweep,
    "scd": cmd_scd,
    "alloc": cmd_alloc,
    "simulate": cmd_simulate,
    "special": cmd_special,
    "adaptation": cmd_adaptation,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="JSON file with option values")
    common.add_argument("--format", choices=("json", "csv", "jsonl"))
    common.add_argument("--out", help="write the document to this file")
    common.add_argument("-v", "--verbose", action="count", default=0)

    parser = _Parser(prog="triway", description="Rate regions and protocols of the 3-way channel.")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)

    p = sub.add_parser("region", parents=[common], help="build a rate region")
    p.add_argument("--snr")
    p.add_argument("--tag", choices=("ThreeWay", "Ystar"))
    p.add_argument("--which", choices=("thm1", "lemma1", "cutset", "prop1", "prop2", "sumcap"))
    p.add_argument("--n3", type=int)
    p.add_argument("--n1-tilde", type=int)
    p.add_argument("--grouped", action="store_true", default=None)
    p.add_argument("--relaxed", action="store_true", default=None)

    p = sub.add_parser("gap", parents=[common], help="gap between the outer bound and an inner region")
    p.add_argument("--snr")
    p.add_argument("--n3", type=int)
    p.add_argument("--grouped", action="store_true", default=None)
    p.add_argument("--inner", choices=("prop2", "thm1"))

    p = sub.add_parser("sweep", parents=[common], help="gap sweep over SNR triples")
    p.add_argument("--snr", action="append")
    p.add_argument("--decades", nargs=2, type=int, metavar=("LO", "HI"),
                   help="g3 = 10^k for k in LO..HI with g1 = g3^(1/3), g2 = g3^(2/3)")
    p.add_argument("--policy", choices=[x.value for x in N3Policy])
    p.add_argument("--threads", type=int)

    p = sub.add_parser("scd", parents=[common], help="successive channel decomposition")
    p.add_argument("--gammas")
    p.add_argument("--levels", type=int)
    p.add_argument("--topology", choices=("p2p", "many-to-one", "one-to-many"))
    p.add_argument("--kappa", type=int)

    p = sub.add_parser("alloc", parents=[common], help="sub-channel allocation")
    p.add_argument("--n-tilde")
    p.add_argument("--demand", help="r21,r31,r12,r32,r13,r23")
    p.add_argument("--weights", help="maximize the weighted demand instead")

    p = sub.add_parser("simulate", parents=[common], help="symbolic protocol simulation")
    p.add_argument("--n-tilde")
    p.add_argument("--demand")
    p.add_argument("--q", type=int)
    p.add_argument("--blocks", type=int)
    p.add_argument("--seed", type=int)
    p.add_argument("--decode-log", action="store_true", default=None, help="emit only the decode log")

    p = sub.add_parser("special", parents=[common], help="cooperative MAC / BC special cases")
    p.add_argument("--snr")
    p.add_argument("--kind")
    p.add_argument("--grid", type=int)
    p.add_argument("--param", action="append", help="NAME=VALUE")
    p.add_argument("--list", action="store_true", default=None)

    p = sub.add_parser("adaptation", parents=[common], help="rate lost without adaptation")
    p.add_argument("--g1", type=float)
    p.add_argument("--g2", type=float)
    return parser


def _options(args) -> dict:
    given = {k: v for k, v in vars(args).items() if k not in ("config", "verbose", "command")}
    if args.config:
        return DocReader.merge(DocReader().read(args.config), given)
    return {k: v for k, v in given.items() if v is not None}


def _setup_logging(verbose: int):
    level = logging.WARNING if verbose == 0 else logging.INFO if verbose == 1 else logging.DEBUG
    logging.basicConfig(level=level, format="%(levelname)s %(name)s: %(message)s")


def _fail(code: str, message: str, status: int) -> int:
    sys.stderr.write(json.dumps({"error": code, "message": message}, sort_keys=True) + "\n")
    return status


def main(argv: Optional[List[str]] = None) -> int:
    """
    Entry point of the `triway` command.

    Parameters
    ----------
    argv : list of str, optional
        Arguments without the program name; defaults to sys.argv[1:].

    Returns
    -------
    int
        The exit status.

    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if not args.command:
            raise UsageError("a subcommand is required: %s" % ", ".join(COMMANDS))
        _setup_logging(args.verbose)
        opts = _options(args)
        doc = COMMANDS[args.command](opts)
        writer = DocWriter()
        fmt = opts.get("format") or "json"
        status = 0
        if args.command == "simulate":
            status = 0 if doc.success else 1
            if opts.get("decode_log"):
                doc = {"log": doc.log, "success": doc.success}
            elif fmt == "jsonl":
                doc = doc.records()
        if fmt == "csv":
            if args.command == "gap":
                doc = [doc.csv_row()]
            elif args.command != "sweep":
                raise UsageError("csv output is available for gap and sweep only")
        elif fmt == "jsonl" and not isinstance(doc, list):
            raise UsageError("jsonl output is available for simulate only")
        data = writer.emit(doc, fmt, CSV_COLUMNS)
        writer.write(data, opts.get("out"), sys.stdout.buffer)
        return status
    except TriwayError as err:
        return _fail(err.code, str(err), 2)
    except Exception as err:  # noqa: B902
        logger.debug("internal error", exc_info=True)
        return _fail("internal", "%s: %s" % (type(err).__name__, err), 1)


if __name__ == "__main__":
    sys.exit(main())
