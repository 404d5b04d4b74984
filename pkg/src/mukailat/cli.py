"""Batch command line interface.

Reads newline-delimited JSON requests (one document per line) from a file or
stdin and writes one JSON response per request, in input order.  Integers
may be given as JSON numbers or as decimal strings of any size; rational
results are rendered as reduced strings ``"p/q"`` with positive ``q``
(plain ``"p"`` when integral).  Output is byte-stable for identical input,
including under concurrent execution (``--jobs``).

Exit status: 0 when every response is ok, 1 when any request failed,
2 when the input stream itself could not be read.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction

from . import moduli, ptype
from .errors import LatticeError
from .intlinalg import smith_normal_form
from .lattice import IntegralLattice
from .mukai import MukaiSetup, kummer_bbf_lattice, kummer_mukai_setup, rank_one_setup

DEFAULT_BOUND = 10


class SchemaError(Exception):
    pass


def _as_int(value, field):
    if isinstance(value, bool):
        raise SchemaError(f"{field}: expected an integer, got a boolean")
    if isinstance(value, int):
        return value
    if isinstance(value, str):
        try:
            return int(value, 10)
        except ValueError:
            raise SchemaError(f"{field}: {value!r} is not a decimal integer") from None
    raise SchemaError(f"{field}: expected an integer, got {type(value).__name__}")


def _as_vector(value, field):
    if not isinstance(value, list):
        raise SchemaError(f"{field}: expected a list")
    return tuple(_as_int(x, field) for x in value)


def _as_matrix(value, field):
    if not isinstance(value, list) or not all(isinstance(row, list) for row in value):
        raise SchemaError(f"{field}: expected a list of lists")
    return tuple(_as_vector(row, field) for row in value)


def _require(payload, field):
    if field not in payload:
        raise SchemaError(f"missing field {field!r}")
    return payload[field]


def _parse_preset(name):
    if not isinstance(name, str):
        raise SchemaError("setup: expected a preset string")
    head, _, arg = name.partition(":")
    if head == "kummer-mukai":
        if arg:
            raise SchemaError("setup: kummer-mukai takes no parameter")
        return ("setup", kummer_mukai_setup())
    if head == "ns-rank1":
        return ("setup", rank_one_setup(_as_int(arg, "setup parameter")))
    if head == "kummer-bbf":
        return ("lattice", kummer_bbf_lattice(_as_int(arg, "setup parameter")))
    raise SchemaError(f"setup: unknown preset {name!r}")


def _setup_from(payload) -> MukaiSetup:
    if "ns" in payload:
        return MukaiSetup(_as_matrix(payload["ns"], "ns"))
    if "setup" in payload:
        kind, value = _parse_preset(payload["setup"])
        if kind != "setup":
            raise SchemaError("setup: this command needs a Mukai setup, not a bare lattice")
        return value
    raise SchemaError("need 'ns' (Gram matrix) or 'setup' (preset)")


def _lattice_from(payload) -> IntegralLattice:
    if "gram" in payload:
        return IntegralLattice(_as_matrix(payload["gram"], "gram"))
    if "setup" in payload:
        kind, value = _parse_preset(payload["setup"])
        return value.ambient if kind == "setup" else value
    raise SchemaError("need 'gram' (Gram matrix) or 'setup' (preset)")


def _fraction_str(q: Fraction) -> str:
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def _rational_vector(coords) -> list[str]:
    return [_fraction_str(Fraction(x)) for x in coords]


def _line_class_doc(lc: moduli.LineClass) -> dict:
    return {
        "r": _rational_vector(lc.coords),
        "square": _fraction_str(lc.square),
        "disc_order": lc.disc_order,
        "two_r": list(lc.two_r) if lc.two_r is not None else None,
    }


def _cmd_snf(payload, bound):
    result = smith_normal_form(_as_matrix(_require(payload, "matrix"), "matrix"))
    return {
        "d": [list(row) for row in result.d],
        "u": [list(row) for row in result.u],
        "v": [list(row) for row in result.v],
        "diagonal": list(result.diagonal),
    }


def _cmd_disc(payload, bound):
    group = _lattice_from(payload).discriminant_group()
    return {"factors": list(group.invariant_factors), "order": group.order}


def _cmd_saturate(payload, bound):
    basis = _as_matrix(_require(payload, "basis"), "basis")
    if "gram" in payload or "setup" in payload:
        ambient = _lattice_from(payload)
    else:
        width = len(basis[0]) if basis else 0
        ambient = IntegralLattice([[1 if i == j else 0 for j in range(width)] for i in range(width)])
    sub = ambient.span(basis)
    sat = sub.saturate()
    return {"basis": [list(row) for row in sat.basis], "index": sub.saturation_index()}


def _cmd_pair(payload, bound):
    lattice = _lattice_from(payload)
    x = _as_vector(_require(payload, "x"), "x")
    y = _as_vector(_require(payload, "y"), "y")
    return {"value": lattice.pair(x, y)}


def _pointed_from(payload):
    setup = _setup_from(payload)
    v = setup.vector_from_coords(_as_vector(_require(payload, "v"), "v"))
    generators = _as_matrix(_require(payload, "generators"), "generators")
    return setup, ptype.PointedSublattice.span(setup, v, generators)


def _cmd_ptype_check(payload, bound):
    setup, lattice = _pointed_from(payload)
    return {
        "p_type": lattice.is_p_type(),
        "census": [list(a.coords) for a in lattice.isotropic_classes().classes],
        "v_square": setup.square(lattice.v),
        "basis": [list(row) for row in lattice.basis],
    }


def _cmd_ptype_decompose(payload, bound):
    setup, lattice = _pointed_from(payload)
    dec = lattice.decomposition()
    return {
        "s": list(dec.s.coords),
        "t": list(dec.t.coords),
        "s_pairing": setup.pair(dec.s, lattice.v),
        "cross": setup.pair(dec.s, dec.t),
    }


def _cmd_ptype_enumerate(payload, bound):
    setup = _setup_from(payload)
    v = setup.vector_from_coords(_as_vector(_require(payload, "v"), "v"))
    if "bound" in payload:
        bound = _as_int(payload["bound"], "bound")
    lattices = ptype.enumerate_p_type(setup, v, bound)
    return {
        "count": len(lattices),
        "lattices": [
            {
                "basis": [list(row) for row in lat.basis],
                "gram2": [list(row) for row in lat.gram2],
            }
            for lat in lattices
        ],
    }


def _cmd_line_class(payload, bound):
    setup = _setup_from(payload)
    v = setup.vector_from_coords(_as_vector(_require(payload, "v"), "v"))
    a = setup.vector_from_coords(_as_vector(_require(payload, "a"), "a"))
    return _line_class_doc(moduli.theta_dual(setup, v, a))


def _cmd_classify(payload, bound):
    setup = _setup_from(payload)
    v = setup.vector_from_coords(_as_vector(_require(payload, "v"), "v"))
    a = setup.vector_from_coords(_as_vector(_require(payload, "a"), "a"))
    verdict = moduli.classify_line_class(setup, v, a)
    return {
        "n": verdict.n,
        "square": _fraction_str(verdict.line_class.square),
        "disc_order": verdict.line_class.disc_order,
        "square_ok": verdict.square_ok,
        "torsion_ok": verdict.torsion_ok,
        "isotropic_witness_ok": verdict.isotropic_witness_ok,
        "all_ok": verdict.all_ok,
        "h_basis": [list(row) for row in verdict.lattice.basis] if verdict.lattice else None,
    }


def _cmd_mori(payload, bound):
    setup = _setup_from(payload)
    v = setup.vector_from_coords(_as_vector(_require(payload, "v"), "v"))
    h = setup.vector_from_coords(_as_vector(_require(payload, "h"), "h"))
    if "bound" in payload:
        bound = _as_int(payload["bound"], "bound")
    candidates = moduli.mori_candidates(setup, v, h, bound)
    return {
        "count": len(candidates),
        "candidates": [
            {
                "a": list(cand.a.coords),
                "r": _rational_vector(cand.line_class.coords),
                "square": _fraction_str(cand.line_class.square),
                "disc_order": cand.line_class.disc_order,
                "lagrangian": cand.lagrangian,
            }
            for cand in candidates
        ],
    }


def _partition_doc(report: moduli.PartitionReport) -> dict:
    return {
        "m": report.m,
        "jh_ok": report.jh_ok,
        "ext1_budget_ok": report.ext1_budget_ok,
        "ext1_cross": report.ext1_cross,
        "dim_identity_ok": report.dim_identity_ok,
    }


def _cmd_jh_check(payload, bound):
    setup = _setup_from(payload)
    v = setup.vector_from_coords(_as_vector(_require(payload, "v"), "v"))
    parts = _as_matrix(_require(payload, "parts"), "parts")
    return _partition_doc(moduli.jh_feasibility(setup, v, parts))


def _cmd_budget_check(payload, bound):
    setup = _setup_from(payload)
    v = setup.vector_from_coords(_as_vector(_require(payload, "v"), "v"))
    parts = _as_matrix(_require(payload, "parts"), "parts")
    return _partition_doc(moduli.contraction_budget(setup, v, parts))


COMMANDS = {
    "snf": _cmd_snf,
    "disc": _cmd_disc,
    "saturate": _cmd_saturate,
    "pair": _cmd_pair,
    "ptype-check": _cmd_ptype_check,
    "ptype-decompose": _cmd_ptype_decompose,
    "ptype-enumerate": _cmd_ptype_enumerate,
    "line-class": _cmd_line_class,
    "classify": _cmd_classify,
    "mori": _cmd_mori,
    "jh-check": _cmd_jh_check,
    "budget-check": _cmd_budget_check,
}

SCHEMA = {
    "format": "newline-delimited JSON; one request per line, one response per line, order preserved",
    "request": {
        "command": sorted(COMMANDS),
        "integers": "JSON numbers or decimal strings, arbitrary precision",
        "setup": "preset string: kummer-mukai | ns-rank1:<2d> | kummer-bbf:<n>",
        "ns": "explicit NS Gram matrix (alternative to setup for Mukai commands)",
        "gram": "explicit Gram matrix (alternative to setup for lattice commands)",
    },
    "response": {
        "ok": {"command": "echoed", "status": "ok", "result": "per command", "diagnostics": []},
        "error": {
            "command": "echoed or null",
            "status": "error",
            "code": "parse-error | schema-error | <domain code>",
            "result": None,
            "diagnostics": ["message"],
        },
        "rationals": "strings 'p/q' with q > 0, 'p' when integral",
    },
    "commands": {
        "snf": {"payload": ["matrix"], "result": ["d", "u", "v", "diagonal"]},
        "disc": {"payload": ["gram|setup"], "result": ["factors", "order"]},
        "saturate": {"payload": ["basis", "gram|setup?"], "result": ["basis", "index"]},
        "pair": {"payload": ["gram|setup", "x", "y"], "result": ["value"]},
        "ptype-check": {
            "payload": ["ns|setup", "v", "generators"],
            "result": ["p_type", "census", "v_square", "basis"],
        },
        "ptype-decompose": {
            "payload": ["ns|setup", "v", "generators"],
            "result": ["s", "t", "s_pairing", "cross"],
        },
        "ptype-enumerate": {
            "payload": ["ns|setup", "v", "bound?"],
            "result": ["count", "lattices"],
        },
        "line-class": {
            "payload": ["ns|setup", "v", "a"],
            "result": ["r", "square", "disc_order", "two_r"],
        },
        "classify": {
            "payload": ["ns|setup", "v", "a"],
            "result": [
                "n",
                "square",
                "disc_order",
                "square_ok",
                "torsion_ok",
                "isotropic_witness_ok",
                "all_ok",
                "h_basis",
            ],
        },
        "mori": {"payload": ["ns|setup", "v", "h", "bound?"], "result": ["count", "candidates"]},
        "jh-check": {
            "payload": ["ns|setup", "v", "parts"],
            "result": ["m", "jh_ok", "ext1_budget_ok", "ext1_cross", "dim_identity_ok"],
        },
        "budget-check": {
            "payload": ["ns|setup", "v", "parts"],
            "result": ["m", "jh_ok", "ext1_budget_ok", "ext1_cross", "dim_identity_ok"],
        },
    },
    "flags": {
        "--bound": "default box radius for enumerations (10) when the payload has none",
        "--jobs": "worker threads; never affects output bytes",
        "--seed": "accepted for compatibility; results never depend on it",
    },
    "exit_codes": {"0": "all responses ok", "1": "some response failed", "2": "unreadable input"},
}


def canonical_json(doc) -> str:
    return json.dumps(doc, sort_keys=True, separators=(",", ":"), ensure_ascii=True)


def _error(command, code, message) -> str:
    return canonical_json(
        {
            "command": command,
            "status": "error",
            "code": code,
            "result": None,
            "diagnostics": [message],
        }
    )


def handle_line(line: str, bound: int) -> tuple[str, bool] | None:
    """Process one request line; returns (response, ok) or None for a blank line."""
    text = line.strip()
    if not text:
        return None
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        return _error(None, "parse-error", f"invalid JSON: {exc.msg} at column {exc.colno}"), False
    if not isinstance(doc, dict):
        return _error(None, "schema-error", "request must be a JSON object"), False
    command = doc.get("command")
    handler = COMMANDS.get(command)
    if handler is None:
        return _error(command, "schema-error", f"unknown command {command!r}"), False
    try:
        result = handler(doc, bound)
    except SchemaError as exc:
        return _error(command, "schema-error", str(exc)), False
    except LatticeError as exc:
        return _error(command, exc.code, str(exc)), False
    response = canonical_json(
        {"command": command, "status": "ok", "result": result, "diagnostics": []}
    )
    return response, True


def run_batch(lines, bound: int, jobs: int, out) -> int:
    def worker(line):
        return handle_line(line, bound)

    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            outcomes = list(pool.map(worker, lines))
    else:
        outcomes = [worker(line) for line in lines]
    failed = False
    for outcome in outcomes:
        if outcome is None:
            continue
        response, ok = outcome
        out.write(response + "\n")
        if not ok:
            failed = True
    return 1 if failed else 0


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="mukailat",
        description="Exact Mukai-lattice computations over newline-delimited JSON requests.",
    )
    parser.add_argument("input", nargs="?", help="request file (defaults to stdin)")
    parser.add_argument("--bound", type=int, default=DEFAULT_BOUND, help="default enumeration box radius")
    parser.add_argument("--jobs", type=int, default=1, help="worker threads for batch processing")
    parser.add_argument("--seed", type=int, default=0, help="ignored; output never depends on it")
    parser.add_argument("--schema", action="store_true", help="print the request/response schema and exit")
    args = parser.parse_args(argv)

    if args.schema:
        print(canonical_json(SCHEMA))
        return 0

    try:
        if args.input is None:
            lines = sys.stdin.read().splitlines()
        else:
            with open(args.input, "r", encoding="utf-8") as handle:
                lines = handle.read().splitlines()
    except OSError as exc:
        print(f"mukailat: cannot read input: {exc}", file=sys.stderr)
        return 2
    except UnicodeDecodeError as exc:
        print(f"mukailat: input is not valid UTF-8: {exc}", file=sys.stderr)
        return 2

    return run_batch(lines, args.bound, max(1, args.jobs), sys.stdout)


if __name__ == "__main__":
    sys.exit(main())
