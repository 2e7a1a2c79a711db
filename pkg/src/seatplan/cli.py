"""``seatplan`` command-line front end.

Exit codes: 0 success / property holds, 1 nothing found or property fails,
2 search budget exhausted, 64 usage error, 65 malformed input file.
Payloads go to stdout as JSON, diagnostics to stderr.
"""

from __future__ import annotations

import argparse
import sys
import time
from fractions import Fraction

from . import construct, dynamics, evaluate, exact, gen
from . import io as sio
from .model import (
    Arrangement,
    InvalidInstanceError,
    classify_preferences,
    classify_seat_graph,
    validate_instance,
)

EXIT_OK, EXIT_NO, EXIT_INCONCLUSIVE, EXIT_USAGE, EXIT_DATA = 0, 1, 2, 64, 65


class UsageError(Exception):
    pass


class DataError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _rational(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--json", action="store_true", help="JSON output (the only mode; accepted for clarity)")
    common.add_argument("--seed", type=int, default=0)

    p = _Parser(prog="seatplan", description="Seat arrangement solver and verifier.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    g = sub.add_parser("generate", parents=[common], help="build a reduction or random instance")
    g.add_argument(
        "--reduction",
        required=True,
        choices=["pit-b", "pit-s-strict", "pit-w-binary", "pit-w-strict", "binpack-1d", "random"],
    )
    g.add_argument("--source", help="PIT or Bin Packing source JSON")
    g.add_argument("--epsilon", type=_rational, help="item spacing perturbation for binpack-1d")
    g.add_argument("--out", help="write the instance here instead of into the report")
    g.add_argument("--forward-out", help="write the forward arrangement (yes-instances only)")
    g.add_argument("--n", type=int, default=6)
    g.add_argument("--graph-class", default="arbitrary", choices=gen.GRAPH_CLASSES)
    g.add_argument("--utility", default="S", choices=["B", "S", "W"])
    for flag in ("symmetric", "binary", "strict", "nonnegative", "positive", "one-dimensional", "unique-positions"):
        g.add_argument(f"--{flag}", action="store_true")

    s = sub.add_parser("solve", parents=[common], help="run a polynomial construction")
    s.add_argument("--instance", required=True)
    s.add_argument("--method", required=True, choices=["algorithm1", "consecutive"])
    s.add_argument("--out")

    e = sub.add_parser("exact", parents=[common], help="exact search at desk scale")
    e.add_argument("--instance", required=True)
    e.add_argument("--problem", required=True, choices=["mwa", "mua", "efa", "sta", "threshold"])
    e.add_argument("--threshold", type=_rational)
    e.add_argument("--max-nodes", type=int, default=exact.SearchBudget().max_nodes)
    e.add_argument("--time-limit", type=float)
    e.add_argument("--dedup", action=argparse.BooleanOptionalAction, default=True)
    e.add_argument("--out")

    d = sub.add_parser("dynamics", parents=[common], help="swap dynamics, one JSON line per step")
    d.add_argument("--instance", required=True)
    d.add_argument("--start", help="starting arrangement (default: agent i on vertex i)")
    d.add_argument("--policy", default="first", choices=["first", "first-by-index", "best", "best-improvement", "random"])
    d.add_argument("--max-steps", type=int)
    d.add_argument("--detect-cycles", action="store_true")
    d.add_argument("--out")

    c = sub.add_parser("check", parents=[common], help="verify a property of an arrangement")
    c.add_argument("--instance", required=True)
    c.add_argument("--arrangement", required=True)
    c.add_argument(
        "--property", required=True, choices=["envy-free", "exchange-stable", "min-utility", "welfare"]
    )
    c.add_argument("--threshold", type=_rational)

    i = sub.add_parser("info", parents=[common], help="classify an instance")
    i.add_argument("--instance", required=True)
    return p


# ---------------------------------------------------------------------------
# helpers


def _read(path: str) -> str:
    try:
        with open(path, encoding="utf-8") as f:
            return f.read()
    except OSError as e:
        raise DataError(f"cannot read {path}: {e.strerror}") from None


def _write(path: str, text: str):
    with open(path, "w", encoding="utf-8") as f:
        f.write(text)


def _load_instance(path: str) -> sio.InstanceDocument:
    try:
        doc = sio.read_instance(_read(path))
    except sio.MalformedInputError as e:
        raise DataError(f"{path}: {e}") from None
    problems = validate_instance(doc.instance)
    if problems:
        raise DataError(f"{path}: " + "; ".join(problems))
    return doc


def _load_arrangement(path: str, n: int) -> Arrangement:
    try:
        arr = sio.read_arrangement(_read(path))
    except sio.MalformedInputError as e:
        raise DataError(f"{path}: {e}") from None
    if len(arr) != n:
        raise DataError(f"{path}: arrangement has {len(arr)} seats, instance has {n} agents")
    return arr


def _q(x):
    return None if x is None else sio.encode_rational(x)


def _potential(snap):
    if snap is None:
        return None
    if snap.kind == "score_vector":
        value = {"levels": [_q(x) for x in snap.value.levels], "counts": list(snap.value.counts)}
    else:
        value = _q(snap.value)
    return {"kind": snap.kind, "value": value, "guaranteed": snap.guaranteed}


def _arrangement_payload(inst, arr: Arrangement) -> dict:
    return {
        "arrangement": sio.arrangement_to_dict(arr),
        "welfare": _q(evaluate.welfare(inst, arr)),
        "min_utility": _q(evaluate.min_utility(inst, arr)) if inst.n else None,
        "envy_free": evaluate.is_envy_free(inst, arr),
        "exchange_stable": evaluate.is_exchange_stable(inst, arr),
    }


# ---------------------------------------------------------------------------
# commands; each returns (exit code, payload, instance dict for the digest)


def cmd_generate(a):
    forward = None
    if a.reduction == "random":
        if a.source:
            raise UsageError("--source is not used with --reduction random")
        try:
            inst = gen.gen_random(
                a.n,
                a.graph_class,
                a.seed,
                a.utility,
                symmetric=a.symmetric,
                binary=a.binary,
                strict=a.strict,
                nonnegative=a.nonnegative,
                positive=a.positive,
                one_dimensional=a.one_dimensional,
                unique_positions=a.unique_positions,
            )
        except ValueError as e:
            raise UsageError(str(e)) from None
        doc = sio.InstanceDocument(inst)
        answer = None
    else:
        if not a.source:
            raise UsageError(f"--source is required for --reduction {a.reduction}")
        kind = "binpacking" if a.reduction == "binpack-1d" else "pit"
        try:
            src = sio.read_source(_read(a.source), kind)
        except sio.MalformedInputError as e:
            raise DataError(f"{a.source}: {e}") from None
        try:
            if kind == "pit":
                make = {
                    "pit-b": gen.gen_pit_to_efa_b,
                    "pit-s-strict": gen.gen_pit_to_efa_s_strict,
                    "pit-w-binary": gen.gen_pit_to_efa_w_binary,
                    "pit-w-strict": gen.gen_pit_to_efa_w_strict,
                }[a.reduction]
                gi = make(src)
                witness = gen.solve_pit_bruteforce(src) if src.n_vertices <= gen.PIT_BRUTEFORCE_LIMIT else None
                if witness is not None:
                    forward = gen.arrangement_from_triangle_partition(gi, witness)
            else:
                gi = gen.gen_binpacking_to_1d_b(src, a.epsilon)
                witness = (
                    gen.solve_binpacking_bruteforce(src)
                    if len(src.sizes) <= gen.BINPACK_BRUTEFORCE_LIMIT
                    else None
                )
                if witness is not None:
                    forward = gen.arrangement_from_packing(gi, witness)
        except InvalidInstanceError as e:
            raise DataError(f"{a.source}: {e}") from None
        except ValueError as e:
            raise UsageError(str(e)) from None
        doc = sio.InstanceDocument.from_generated(gi)
        answer = None if witness is None else [list(t) for t in witness] if kind == "pit" else list(witness)
    d = sio.instance_to_dict(doc)
    payload = {"agents": doc.instance.n, "source_witness": answer}
    if a.out:
        _write(a.out, sio.dumps(d))
        payload["instance_file"] = a.out
    else:
        payload["instance"] = d
    if forward is not None:
        payload["forward_arrangement"] = sio.arrangement_to_dict(forward)
        if a.forward_out:
            _write(a.forward_out, sio.write_arrangement(forward))
    return EXIT_OK, payload, d


def cmd_solve(a):
    doc = _load_instance(a.instance)
    inst = doc.instance
    try:
        arr = construct.algorithm1(inst) if a.method == "algorithm1" else construct.oned_consecutive(inst)
    except ValueError as e:
        raise UsageError(f"{a.method}: {e}") from None
    if a.out:
        _write(a.out, sio.write_arrangement(arr))
    return EXIT_OK, {"method": a.method, **_arrangement_payload(inst, arr)}, sio.instance_to_dict(doc)


def cmd_exact(a):
    if a.problem == "threshold" and a.threshold is None:
        raise UsageError("--problem threshold needs --threshold")
    doc = _load_instance(a.instance)
    inst = doc.instance
    budget = exact.SearchBudget(a.max_nodes, a.time_limit)
    run = {
        "mwa": exact.solve_mwa_exact,
        "mua": exact.solve_mua_exact,
        "efa": exact.find_envy_free_exact,
        "sta": exact.find_exchange_stable_exact,
    }
    if a.problem == "threshold":
        res = exact.find_min_utility_at_least(inst, a.threshold, budget, dedup=a.dedup)
    else:
        res = run[a.problem](inst, budget, dedup=a.dedup)
    payload = {
        "problem": a.problem,
        "status": res.status,
        "objective": _q(res.objective),
        "nodes_explored": res.nodes_explored,
        "witness": None if res.witness is None else sio.arrangement_to_dict(res.witness),
    }
    if a.problem == "threshold":
        payload["threshold"] = _q(a.threshold)
    if res.witness is not None and a.out:
        _write(a.out, sio.write_arrangement(res.witness))
    code = {"found": EXIT_OK, "none_exists": EXIT_NO, "inconclusive": EXIT_INCONCLUSIVE}[res.status]
    return code, payload, sio.instance_to_dict(doc)


def cmd_dynamics(a, out):
    doc = _load_instance(a.instance)
    inst = doc.instance
    start = _load_arrangement(a.start, inst.n) if a.start else Arrangement.identity(inst.n)
    if a.max_steps is not None and a.max_steps < 0:
        raise UsageError("--max-steps must be non-negative")
    policy = dynamics.PairSelectionPolicy.parse(a.policy, a.seed)
    trace = dynamics.run_swap_dynamics(inst, start, policy, a.max_steps, a.detect_cycles)
    for k, step in enumerate(trace.steps, 1):
        out.write(sio.dumps({"step": k, "pair": list(step.pair), "potential": _potential(step.potential)}))
    if a.out:
        _write(a.out, sio.write_arrangement(trace.final))
    payload = {
        "policy": policy.kind,
        "steps": trace.step_count,
        "terminated": trace.terminated,
        "termination_guaranteed": trace.guaranteed,
        "cycle_detected": trace.cycle_detected,
        "initial_potential": _potential(trace.initial_potential),
        "final": sio.arrangement_to_dict(trace.final),
    }
    return (EXIT_OK if trace.terminated else EXIT_INCONCLUSIVE), payload, sio.instance_to_dict(doc)


def cmd_check(a):
    doc = _load_instance(a.instance)
    inst = doc.instance
    arr = _load_arrangement(a.arrangement, inst.n)
    payload = {"property": a.property, **_arrangement_payload(inst, arr)}
    payload["utilities"] = [_q(u) for u in evaluate.utilities(inst, arr)]
    if a.property == "envy-free":
        ok = payload["envy_free"]
        envy = evaluate.find_envy(inst, arr)
        payload["envy"] = None if envy is None else list(envy)
    elif a.property == "exchange-stable":
        ok = payload["exchange_stable"]
        payload["blocking_pairs"] = [[b.p, b.q] for b in evaluate.find_blocking_pairs(inst, arr)]
    else:
        if a.threshold is None:
            raise UsageError(f"--property {a.property} needs --threshold")
        value = evaluate.min_utility(inst, arr) if a.property == "min-utility" else evaluate.welfare(inst, arr)
        ok = value >= a.threshold
        payload["threshold"] = _q(a.threshold)
    payload["holds"] = ok
    return (EXIT_OK if ok else EXIT_NO), payload, sio.instance_to_dict(doc)


def cmd_info(a):
    doc = _load_instance(a.instance)
    inst = doc.instance
    gc = classify_seat_graph(inst.seats)
    pc = classify_preferences(inst)
    payload = {
        "agents": inst.n,
        "utility": inst.utility.value,
        "family": doc.family,
        "preferences": {k: v for k, v in pc.__dict__.items()},
        "graph": {
            "is_matching": gc.is_matching,
            "is_path_graph": gc.is_path_graph,
            "is_cycle_graph": gc.is_cycle_graph,
            "is_cluster_graph": gc.is_cluster_graph,
            "max_degree": gc.max_degree,
            "components": [[k, s] for k, s in gc.summary()],
        },
    }
    return EXIT_OK, payload, sio.instance_to_dict(doc)


def run(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    t0 = time.perf_counter()
    try:
        a = parser.parse_args(argv)
        if a.command == "dynamics":
            code, payload, d = cmd_dynamics(a, out)
        else:
            code, payload, d = {
                "generate": cmd_generate,
                "solve": cmd_solve,
                "exact": cmd_exact,
                "check": cmd_check,
                "info": cmd_info,
            }[a.command](a)
    except UsageError as e:
        err.write(f"seatplan: usage error: {e}\n")
        return EXIT_USAGE
    except DataError as e:
        err.write(f"seatplan: malformed input: {e}\n")
        return EXIT_DATA
    report = {
        "command": argv,
        "instance_digest": sio.digest(d),
        "result": payload,
        "timing": {"seconds": round(time.perf_counter() - t0, 6)},
    }
    out.write(sio.dumps(report))
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
