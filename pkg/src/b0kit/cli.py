"""Command-line interface.

Every subcommand is a pure function of a JSON ``inputs`` dict (files are
embedded by content), which makes a printed manifest replayable.

Exit codes: 0 success, 1 bad input, 2 budget exceeded, 3 verification failed.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path

from . import catalog as cat
from .certcheck import check_report_json
from .cohomology import b0_order, default_budget, inflation_image
from .errors import B0Error, BudgetExceeded, VerificationFailed
from .exceptional import exceptional_case, main_theorem
from .h1sigma import ActionModule, module_from_group, sigma_injective
from .manifest import RunManifest, Stopwatch
from .matrices import EXCEPTIONAL_PAIRS, field_for
from .numbers import prime_factors
from .wedge import WedgeExtension, b0_class2, group_from_extension, named_basis_check, search_nontrivial, ut3f4_extension
from .witness import CONCLUSION_DEFERRED, commutator_witness, default_grid, verify_psl_grid

EXIT_OK, EXIT_INPUT, EXIT_BUDGET, EXIT_VERIFY = 0, 1, 2, 3


# ---------------------------------------------------------------------------
# command implementations: inputs -> (results, ok)
# ---------------------------------------------------------------------------

def _group(inputs: dict):
    return cat.group_from_json(inputs["group"])


def _primes(G, inputs: dict) -> list[int]:
    if inputs.get("p"):
        return [int(inputs["p"])]
    return prime_factors(G.n) if G.n > 1 else []


def run_verify_psl(inputs: dict, threads: int):
    reports = verify_psl_grid([tuple(nq) for nq in inputs["grid"]], threads)
    ok = all(r.b0_zero or r.conclusion == CONCLUSION_DEFERRED for r in reports)
    return {"reports": [r.to_json() for r in reports]}, ok


def run_witness(inputs: dict, threads: int):
    cert = commutator_witness(int(inputs["m"]), int(inputs["p"]), int(inputs["n"]), field_for(int(inputs["q"])))
    return cert.to_json(), cert.verified


def _count_certificates(node) -> int:
    if isinstance(node, dict):
        own = node.get("kind") == "commutator-witness"
        return own + sum(_count_certificates(v) for v in node.values())
    if isinstance(node, list):
        return sum(_count_certificates(v) for v in node)
    return 0


def run_check_cert(inputs: dict, threads: int):
    doc = inputs["document"]
    fails = check_report_json(doc)
    return {"certificates": _count_certificates(doc), "failures": fails}, not fails


def run_b0(inputs: dict, threads: int):
    G = _group(inputs)
    reports = []
    for p in _primes(G, inputs):
        rep = b0_order(G, p, stabilize=bool(inputs.get("stabilize")), threads=threads,
                       max_order=inputs.get("max_order"))
        reports.append(rep.to_json())
    return {"group": G.name, "order": G.n, "reports": reports}, True


def _oracle_agreement(ext: WedgeExtension, res) -> dict:
    """Rebuild the group and compare oracle invariants with the wedge."""
    G = group_from_extension(ext)
    if G.n > default_budget(ext.p):
        return {"order": G.n, "checked": False}
    rep = b0_order(G, ext.p)
    return {"order": G.n, "checked": True, "oracle_invariants": rep.invariants,
            "wedge_invariants": res.invariants, "agree": rep.invariants == res.invariants}


def run_wedge(inputs: dict, threads: int):
    mode = inputs["mode"]
    if mode == "builtin":
        ext = ut3f4_extension()
        res = b0_class2(ext)
        chk = named_basis_check()
        return {"extension": ext.to_json(), "result": res.to_json(), "basis_check": chk.to_json()}, chk.ok
    if mode == "lambda":
        ext = WedgeExtension.from_json(inputs["extension"])
        res = b0_class2(ext)
        out = {"extension": ext.to_json(), "result": res.to_json()}
        if inputs.get("confirm"):
            out["oracle"] = _oracle_agreement(ext, res)
            return out, out["oracle"].get("agree", True)
        return out, True
    out = search_nontrivial(int(inputs["p"]), int(inputs["r"]), int(inputs["s"]), int(inputs["seed"]),
                            int(inputs.get("trials", 2000)))
    d = {"search": out.to_json()}
    if out.found is not None and inputs.get("confirm", True):
        d["oracle"] = _oracle_agreement(out.found, out.result)
        return d, d["oracle"].get("agree", True)
    return d, True


def run_sigma(inputs: dict, threads: int):
    if "module" in inputs:
        m = ActionModule.from_json(inputs["module"])
    else:
        G = _group(inputs)
        m = module_from_group(G, int(inputs.get("p") or 2))
    return {"module": m.to_json(), "verdict": sigma_injective(m).to_json()}, True


def run_inflate(inputs: dict, threads: int):
    G = _group(inputs)
    out = []
    for p in _primes(G, inputs):
        inf = inflation_image(G, p, max_order=inputs.get("max_order"))
        out.append({"p": p, **inf.to_json()})
    return {"group": G.name, "order": G.n, "images": out}, True


def run_exceptional(inputs: dict, threads: int):
    reps = [exceptional_case(tuple(pr), inputs.get("max_order")) for pr in inputs["pairs"]]
    return {"reports": [r.to_json() for r in reps]}, all(r.b0_zero for r in reps)


def run_main_theorem(inputs: dict, threads: int):
    man = main_theorem([tuple(nq) for nq in inputs["grid"]], threads, inputs.get("max_order"))
    return man.results, man.ok


def run_catalog(inputs: dict, threads: int):
    if not inputs.get("name"):
        return {"zoo": [cat.zoo_name(n, p) for n, p in cat.ZOO]}, True
    name, params = cat.parse_name(inputs["name"])
    G = cat.catalog(name, params)
    return {
        "name": G.name,
        "order": G.n,
        "abelian": G.is_abelian(),
        "exponent": _lcm(G.element_orders()),
        "generators": [G.label(g) for g in G.generators],
    }, True


def _lcm(values) -> int:
    out = 1
    for v in values:
        out = math.lcm(out, int(v))
    return out


def run_replay(inputs: dict, threads: int):
    old = RunManifest.from_json(inputs["manifest"])
    results, ok = execute(old.command, old.inputs, threads)
    new = RunManifest(old.command, old.inputs, results, ok, old.seed)
    return {"command": old.command, "identical": old.same_results(new)}, old.same_results(new)


COMMANDS = {
    "verify-psl": run_verify_psl,
    "witness": run_witness,
    "check-cert": run_check_cert,
    "b0": run_b0,
    "wedge": run_wedge,
    "sigma": run_sigma,
    "inflate": run_inflate,
    "exceptional": run_exceptional,
    "main-theorem": run_main_theorem,
    "catalog": run_catalog,
    "replay": run_replay,
}


def execute(command: str, inputs: dict, threads: int = 1) -> tuple[dict, bool]:
    """Run one subcommand on fully materialized inputs."""
    try:
        fn = COMMANDS[command]
    except KeyError:
        raise ValueError(f"unknown command {command!r}") from None
    return fn(inputs, threads)


def run(command: str, inputs: dict, threads: int = 1) -> RunManifest:
    with Stopwatch() as sw:
        results, ok = execute(command, inputs, threads)
    return RunManifest(command, inputs, results, ok, inputs.get("seed"), timing={"seconds": sw.seconds})


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    """Usage errors exit 1 so that 2 keeps meaning "budget exceeded"."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def _read_json(path: str):
    return json.loads(Path(path).read_text())


def _grid_arg(value: str) -> list[list[int]]:
    if value == "default":
        return [list(nq) for nq in default_grid()]
    if value == "exceptional":
        return [list(nq) for nq in EXCEPTIONAL_PAIRS]
    return [[int(n), int(q)] for n, q in _read_json(value)]


def _global_options(parser: argparse.ArgumentParser, suppress: bool) -> None:
    d = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    parser.add_argument("--json", action="store_true", default=d(False), help="print the run manifest as JSON")
    parser.add_argument("--seed", type=int, default=d(0), help="seed for randomized searches")
    parser.add_argument("--threads", type=int, default=d(1), help="worker threads")
    parser.add_argument("--max-order", type=int, default=d(None), dest="max_order",
                        help="override the oracle order budget")
    parser.add_argument("--output", default=d(None), help="also write the manifest to this file")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="b0kit", description="Bogomolov multiplier computations for finite groups and PSL(n, q)")
    _global_options(parser, suppress=False)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, help_):
        sp = sub.add_parser(name, help=help_)
        _global_options(sp, suppress=True)
        return sp

    sp = add("verify-psl", "commutator-witness certificates for PSL(n, q)")
    sp.add_argument("--n", type=int)
    sp.add_argument("--q", type=int)
    sp.add_argument("--grid", nargs="?", const="default",
                    help="'default', 'exceptional', or a JSON file of [n, q] pairs")

    sp = add("witness", "A, B in SL(m, q) with [A, B] a scalar of order p^n")
    for k in ("m", "p", "n", "q"):
        sp.add_argument(f"--{k}", type=int, required=True)

    sp = add("check-cert", "re-verify every certificate in a JSON report")
    sp.add_argument("file")

    sp = add("b0", "B0(G)_(p) by the cocycle oracle")
    src = sp.add_mutually_exclusive_group(required=True)
    src.add_argument("--group", help="group-description JSON file")
    src.add_argument("--catalog", help="catalog name such as dihedral:n=8")
    sp.add_argument("--p", type=int, help="prime (default: every prime dividing |G|)")
    sp.add_argument("--stabilize", action="store_true", help="repeat with a + 1 and compare")

    sp = add("wedge", "B0 of a class-2 extension via S / S_Lambda")
    sp.add_argument("--p", type=int)
    sp.add_argument("--r", type=int)
    sp.add_argument("--s", type=int)
    src = sp.add_mutually_exclusive_group(required=True)
    src.add_argument("--lambda", dest="lam", help="extension JSON file")
    src.add_argument("--builtin", choices=["ut3f4"])
    src.add_argument("--search-nontrivial", action="store_true")
    sp.add_argument("--trials", type=int, default=2000)
    sp.add_argument("--confirm", action="store_true", help="cross-check with the oracle on the rebuilt group")

    sp = add("sigma", "sigma-injectivity for an elementary abelian action")
    src = sp.add_mutually_exclusive_group(required=True)
    src.add_argument("--group")
    src.add_argument("--module")
    sp.add_argument("--p", type=int, default=2)

    sp = add("inflate", "image of inflation from the abelianization")
    src = sp.add_mutually_exclusive_group(required=True)
    src.add_argument("--group")
    src.add_argument("--catalog")
    sp.add_argument("--p", type=int)

    sp = add("exceptional", "drivers for the five exceptional (n, q)")
    sp.add_argument("--n", type=int)
    sp.add_argument("--q", type=int)

    sp = add("main-theorem", "B0(PSL(n, q)) = 0 over a grid")
    sp.add_argument("--grid", default="default", help="'default', 'exceptional', or a JSON file of [n, q] pairs")

    sp = add("catalog", "describe a catalog group, or list the test zoo")
    sp.add_argument("name", nargs="?")

    sp = add("replay", "rerun a manifest and compare results")
    sp.add_argument("manifest")
    return parser


def _group_input(args) -> dict:
    if getattr(args, "group", None):
        return _read_json(args.group)
    name, params = cat.parse_name(args.catalog)
    return {"catalog": {"name": name, "params": params}}


def inputs_from_args(args) -> dict:
    c = args.command
    if c == "verify-psl":
        if args.grid is not None:
            return {"grid": _grid_arg(args.grid)}
        if args.n is None or args.q is None:
            raise ValueError("verify-psl needs --n and --q, or --grid")
        return {"grid": [[args.n, args.q]]}
    if c == "witness":
        return {"m": args.m, "p": args.p, "n": args.n, "q": args.q}
    if c == "check-cert":
        return {"document": _read_json(args.file)}
    if c == "b0":
        return {"group": _group_input(args), "p": args.p, "stabilize": args.stabilize, "max_order": args.max_order}
    if c == "wedge":
        if args.builtin:
            return {"mode": "builtin", "name": args.builtin}
        if args.lam:
            ext = _read_json(args.lam)
            for k in ("p", "r", "s"):
                if getattr(args, k) is not None:
                    ext[k] = getattr(args, k)
            return {"mode": "lambda", "extension": ext, "confirm": args.confirm}
        if None in (args.p, args.r, args.s):
            raise ValueError("--search-nontrivial needs --p, --r and --s")
        return {"mode": "search", "p": args.p, "r": args.r, "s": args.s, "seed": args.seed,
                "trials": args.trials, "confirm": True}
    if c == "sigma":
        if args.module:
            return {"module": _read_json(args.module)}
        return {"group": _read_json(args.group), "p": args.p}
    if c == "inflate":
        return {"group": _group_input(args), "p": args.p, "max_order": args.max_order}
    if c == "exceptional":
        if args.n is None and args.q is None:
            pairs = [list(pr) for pr in EXCEPTIONAL_PAIRS]
        else:
            pairs = [[args.n, args.q]]
        return {"pairs": pairs, "max_order": args.max_order}
    if c == "main-theorem":
        return {"grid": _grid_arg(args.grid), "max_order": args.max_order}
    if c == "catalog":
        return {"name": args.name}
    if c == "replay":
        return {"manifest": _read_json(args.manifest)}
    raise ValueError(c)


def summarize(man: RunManifest) -> list[str]:
    r, c = man.results, man.command
    if c in ("verify-psl",):
        return [f"PSL({e['params']['n']},{e['params']['q']}): {e['conclusion']}" for e in r["reports"]]
    if c == "witness":
        return [f"SL({r['m']}, F_{r['field']['p'] ** r['field']['e']}): [A,B] = mu I with mu of order "
                f"{r['p']}^{r['n']}, case {r['case_tag']}, verified={r['verified']}"]
    if c == "check-cert":
        return [f"{r['certificates']} certificate(s) checked, {len(r['failures'])} failure(s)"] + r["failures"]
    if c == "b0":
        return [f"{r['group']} (order {r['order']}), p = {x['p']}: B0 invariants {x['B0_invariants'] or 'trivial'}"
                for x in r["reports"]]
    if c == "wedge":
        if "search" in r:
            s = r["search"]
            lines = [f"search p={s['p']} r={s['r']} s={s['s']} seed={s['seed']}: tried {s['tried']}, "
                     f"found {'yes' if s['found'] else 'no'}"]
            if "oracle" in r:
                lines.append(f"oracle on order {r['oracle']['order']}: agree={r['oracle'].get('agree')}")
            return lines
        return [f"rank(S/S_Lambda) = {r['result']['rank']}, invariants {r['result']['invariants'] or 'trivial'}"]
    if c == "sigma":
        return [f"sigma injective: {r['verdict']['injective']}"]
    if c == "inflate":
        return [f"p = {x['p']}: inflation image of order {x['order']}" for x in r["images"]]
    if c == "exceptional":
        return [f"PSL{tuple(x['pair'])}: {x['conclusion']} via {', '.join(x['routes'])}" for x in r["reports"]]
    if c == "main-theorem":
        lines = [f"PSL({e['n']},{e['q']}): {'B0=0' if e['b0_zero'] else 'not established'}" for e in r["entries"]]
        return lines + [f"{r['count']} pair(s): {r['conclusion']}"]
    if c == "catalog":
        if "zoo" in r:
            return r["zoo"]
        return [f"{r['name']}: order {r['order']}, exponent {r['exponent']}, abelian={r['abelian']}"]
    if c == "replay":
        return [f"replay of {r['command']}: {'identical' if r['identical'] else 'DIFFERENT'}"]
    return [json.dumps(r)]


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        inputs = inputs_from_args(args)
        man = run(args.command, inputs, args.threads)
    except BudgetExceeded as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except VerificationFailed as exc:
        print(f"verification failed: {exc}", file=sys.stderr)
        return EXIT_VERIFY
    except (B0Error, ValueError, KeyError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    doc = man.to_json()
    if args.output:
        Path(args.output).write_text(json.dumps(doc, indent=2) + "\n")
    if args.json:
        print(json.dumps(doc, indent=2))
    else:
        for line in summarize(man):
            print(line)
    return EXIT_OK if man.ok else EXIT_VERIFY


if __name__ == "__main__":
    sys.exit(main())
