"""``stabforge`` command-line interface.

Exit codes: 0 success, 1 usage error, 2 invalid input, 3 verification
failure.  Wherever a code file is expected, ``builtin:<name>`` selects a
catalog code.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

from . import __version__
from .circuit import CircuitError, gate_counts, optimize_trivial_z, parse_circuit, serialize
from .codes import (
    CodeSpecError,
    compile_code,
    exhaustive_cases,
    load_code,
    verify_roundtrip,
)
from .f2linalg import F2Error, bits_text
from .pauli import PauliError, PauliString, parse_pauli
from .route import (
    RoutingError,
    decompose_swaps,
    is_compliant,
    load_layout,
    route,
)
from .sim import DEFAULT_TOL, SimulationError, dump, init_basis, run
from .synth import CodePropertyError, synth_syndrome, syndrome_table

SCHEMA_VERSION = 1

EXIT_OK, EXIT_USAGE, EXIT_INVALID, EXIT_FAILED = 0, 1, 2, 3

REPORT_KINDS = ("H", "S", "X", "Y", "Z", "CX", "CY", "CZ", "CCX", "SWAP", "MEASURE")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _default_seed() -> int:
    env = os.environ.get("STABFORGE_SEED")
    if env is None:
        return 0
    try:
        return int(env)
    except ValueError:
        raise UsageError(f"STABFORGE_SEED must be an integer, got {env!r}") from None


def _emit_json(payload: dict) -> None:
    print(json.dumps({"schema_version": SCHEMA_VERSION, **payload}, indent=2, sort_keys=True))


def _read_circuit(path: str):
    text = sys.stdin.read() if path == "-" else Path(path).read_text()
    return parse_circuit(text)


def _row_text(row) -> str:
    n = len(row) // 2
    return f"{bits_text(row[:n])}|{bits_text(row[n:])}"


def cmd_standard_form(args) -> int:
    spec = load_code(args.code)
    sf = spec.standard_form()
    perm_text = ", ".join(f"{i}<-{p}" for i, p in enumerate(sf.perm))
    if args.json:
        _emit_json(
            {
                "code": spec.name,
                "n": spec.n,
                "k": spec.k,
                "hq": [_row_text(r) for r in spec.check_matrix.joint],
                "hs": [_row_text(r) for r in sf.hs.joint],
                "r": sf.r,
                "perm": list(sf.perm),
                "xbar": [_row_text(r) for r in sf.xlogical],
                "zbar": [_row_text(r) for r in sf.zlogical],
            }
        )
        return EXIT_OK
    print(f"code {spec.name} [[{spec.n},{spec.k}]]")
    print("H_q =")
    print(spec.check_matrix.text())
    print("H_s =")
    print(sf.hs.text())
    print(f"r = {sf.r}")
    print(f"permutation (new<-old, 0-based) = {perm_text}")
    for i, row in enumerate(sf.xlogical):
        print(f"Xbar[{i}] = {_row_text(row)}")
    for i, row in enumerate(sf.zlogical):
        print(f"Zbar[{i}] = {_row_text(row)}")
    return EXIT_OK


def cmd_synth(args) -> int:
    if args.encoder == args.syndrome:
        raise UsageError("choose exactly one of --encoder or --syndrome")
    spec = load_code(args.code)
    if args.encoder:
        enc = compile_code(spec, optimize=args.optimize)
        circ = enc.encoder
        header = f"# encoder for {spec.name}; qubit order {list(enc.perm)}"
    else:
        circ = synth_syndrome(spec.generators, spec.n)
        if args.optimize:
            circ = optimize_trivial_z(circ, range(spec.n, circ.nqubits))
        header = f"# syndrome measurement for {spec.name}"
    sys.stdout.write(header + "\n" + serialize(circ))
    return EXIT_OK


def cmd_table(args) -> int:
    spec = load_code(args.code)
    if args.encoder_order:
        spec = spec.relabelled(spec.standard_form().perm, spec.name)
    table = syndrome_table(spec.generators, spec.n, spec.correctable)
    if args.json:
        _emit_json(
            {
                "code": spec.name,
                "generators": [g.letters for g in table.generators],
                "rows": table.rows(),
            }
        )
    elif args.lines:
        print(table.to_lines())
    else:
        print(table.to_text())
    return EXIT_OK


def cmd_simulate(args) -> int:
    circ = _read_circuit(args.circuit)
    bits = args.init if args.init is not None else "0" * circ.nqubits
    if len(bits) != circ.nqubits:
        raise SimulationError(f"--init has {len(bits)} bits but circuit has {circ.nqubits} qubits")
    result = run(circ, init_basis(circ.nqubits, bits), seed=args.seed, tol=args.tol)
    if args.json:
        _emit_json(
            {
                "state": dump(result.final).splitlines(),
                "cbits": "".join(map(str, result.cbits)),
                "measurements": [
                    {"qubit": m.qubit, "cbit": m.cbit, "p1": m.p1, "outcome": m.outcome,
                     "deterministic": m.deterministic}
                    for m in result.transcript
                ],
            }
        )
        return EXIT_OK
    print(dump(result.final))
    if circ.ncbits:
        print(f"cbits {''.join(map(str, result.cbits))}")
    return EXIT_OK


def cmd_verify(args) -> int:
    spec = load_code(args.code)
    if args.exhaustive:
        cases = exhaustive_cases(spec)
    else:
        bits = args.logical if args.logical is not None else "0" * spec.k
        err = parse_pauli(args.error) if args.error else PauliString.identity(spec.n)
        if err.n != spec.n:
            raise PauliError(f"--error has width {err.n}, code has n={spec.n}")
        cases = [(bits, err)]
    enc = compile_code(spec)

    def one(case):
        bits, err = case
        return verify_roundtrip(spec, bits, err, seed=args.seed, tol=args.tol, encoding=enc)

    if args.jobs > 1:
        with ThreadPoolExecutor(max_workers=args.jobs) as pool:
            reports = list(pool.map(one, cases))
    else:
        reports = [one(c) for c in cases]
    passed = sum(r.verdict for r in reports)
    if args.json:
        _emit_json(
            {
                "code": spec.name,
                "passed": passed,
                "total": len(reports),
                "cases": [r.to_dict() for r in reports],
            }
        )
    else:
        for r in reports:
            print(r.line())
        print(f"{passed}/{len(reports)} cases passed")
    return EXIT_OK if passed == len(reports) else EXIT_FAILED


def cmd_route(args) -> int:
    circ = _read_circuit(args.circuit)
    graph, layout = load_layout(args.layout)
    res = route(circ, graph, layout)
    out = decompose_swaps(res.circuit) if args.decompose else res.circuit
    compliant = is_compliant(out, graph, layout)
    counts = gate_counts(out)
    if args.json:
        _emit_json(
            {
                "circuit": serialize(out),
                "swap_count": res.swap_count,
                "reference_swaps": args.reference,
                "compliant": compliant,
                "placement": list(res.placement),
                "final_layout": list(res.final_layout.sites),
                "gate_counts": counts,
            }
        )
    else:
        sys.stdout.write(serialize(out))
        print(f"# swaps {res.swap_count}" + (
            f" (reference {args.reference})" if args.reference is not None else ""))
        print(f"# compliant {'yes' if compliant else 'no'}")
        print(f"# placement wire->site {list(res.placement)}")
        print(f"# final layout logical->site {list(res.final_layout.sites)}")
        print(f"# CX {counts['CX']} SWAP {counts['SWAP']}")
    return EXIT_OK if compliant else EXIT_FAILED


def cmd_report(args) -> int:
    rows = []
    for path in args.circuits:
        counts = gate_counts(_read_circuit(path))
        rows.append((path, counts))
    if args.json:
        _emit_json({"circuits": [{"path": p, "gate_counts": c} for p, c in rows]})
        return EXIT_OK
    kinds = [k for k in REPORT_KINDS if k in ("H", "S", "CX", "CY", "CZ")
             or any(c[k] for _, c in rows)]
    name_w = max(len("gate"), *(len(p) for p, _ in rows))
    print("gate".ljust(10) + " ".join(p.rjust(name_w) for p, _ in rows))
    for k in kinds:
        print(k.ljust(10) + " ".join(str(c[k]).rjust(name_w) for _, c in rows))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="stabforge", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"stabforge {__version__}")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def tolerant(sp):
        sp.add_argument("--seed", type=int, default=None,
                        help="RNG seed (default: $STABFORGE_SEED or 0)")
        sp.add_argument("--tol", type=float, default=DEFAULT_TOL,
                        help="determinism/fidelity tolerance (default 1e-9)")

    sp = sub.add_parser("standard-form", help="show H_q, H_s, r, permutation and logicals")
    sp.add_argument("code")
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=cmd_standard_form)

    sp = sub.add_parser("synth", help="write an encoder or syndrome circuit to stdout")
    sp.add_argument("code")
    sp.add_argument("--encoder", action="store_true")
    sp.add_argument("--syndrome", action="store_true")
    sp.add_argument("--optimize", action="store_true",
                    help="drop Z/CZ gates acting on qubits still in |0>")
    sp.set_defaults(func=cmd_synth)

    sp = sub.add_parser("table", help="single-qubit error syndrome table")
    sp.add_argument("code")
    sp.add_argument("--json", action="store_true")
    sp.add_argument("--lines", action="store_true",
                    help="'error=... syndrome=... decimal=...' rows")
    sp.add_argument("--encoder-order", action="store_true",
                    help="relabel qubits into the standard-form order first")
    sp.set_defaults(func=cmd_table)

    sp = sub.add_parser("simulate", help="run a circuit file from a basis state")
    sp.add_argument("circuit")
    sp.add_argument("--init", help="initial basis bits (default all zero)")
    sp.add_argument("--json", action="store_true")
    tolerant(sp)
    sp.set_defaults(func=cmd_simulate)

    sp = sub.add_parser("verify", help="encode/corrupt/correct round trips")
    sp.add_argument("code")
    sp.add_argument("--exhaustive", action="store_true",
                    help="all logical basis inputs x all correctable single-qubit errors")
    sp.add_argument("--logical", help="logical input bits (default all zero)")
    sp.add_argument("--error", help="injected Pauli, e.g. XIIII (default identity)")
    sp.add_argument("--jobs", type=int, default=1)
    sp.add_argument("--json", action="store_true")
    tolerant(sp)
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("route", help="insert SWAPs for a grid layout")
    sp.add_argument("circuit")
    sp.add_argument("--layout", required=True)
    sp.add_argument("--decompose", action="store_true", help="expand SWAP into 3 CX")
    sp.add_argument("--reference", type=int, help="reference swap count to print alongside")
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=cmd_route)

    sp = sub.add_parser("report", help="gate-count table for circuit files")
    sp.add_argument("circuits", nargs="+")
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=cmd_report)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if getattr(args, "seed", 0) is None:
            args.seed = _default_seed()
        return args.func(args)
    except UsageError as exc:
        print(f"stabforge: usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (
        CodeSpecError,
        CodePropertyError,
        F2Error,
        PauliError,
        CircuitError,
        SimulationError,
        RoutingError,
        OSError,
        ValueError,
    ) as exc:
        print(f"stabforge: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
