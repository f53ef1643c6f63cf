"""Command-line front end.

    intlift <command> --input FILE [--output FILE] [--pretty] [--timing]

``FILE`` may be ``fixture:NAME`` for one of the bundled examples.  The
report is a JSON object ``{"command", "status", "result"}`` (plus ``error``
on failure and ``timing_ms`` with ``--timing``).  Keys are sorted, so the
same input always gives the same bytes.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
import time
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

import jsonschema

from . import serialize as ser
from .algebroid import is_discrete, is_integrable, verify_morphism_functoriality
from .complex import betti_numbers, homology, periods
from .equivariant import (
    check_assumptions,
    check_equivariance,
    coefficient_matrices,
    equivariant_derham_certificate,
    tautological_form,
)
from .errors import InputUnavailable, IntliftError, ParseError, VerificationFailed
from .lift import almeida_molino_lift, derham_lift, verify_lift

log = logging.getLogger("intlift")

COMMANDS = ("homology", "integrability", "lift-am", "lift-dr", "verify", "equivariant")
FIXTURES = ("am-s2xs2", "derham-s2xs2", "tetra-boundary", "z2-swap-action")

_INT_LIST = {"type": "array", "items": {"type": "integer"}}

RESULT_SCHEMAS = {
    "homology": {
        "type": "object",
        "required": ["dims", "betti", "torsion", "euler_characteristic", "groups"],
        "properties": {
            "dims": _INT_LIST,
            "betti": _INT_LIST,
            "torsion": {"type": "array", "items": _INT_LIST},
            "euler_characteristic": {"type": "integer"},
            "groups": {"type": "array", "items": ser.HOMOLOGY_SCHEMA},
        },
    },
    "integrability": {
        "type": "object",
        "required": ["presentation", "monodromy", "integrable"],
        "properties": {
            "presentation": ser.PRESENTATION_SCHEMA,
            "monodromy": ser.MONODROMY_SCHEMA,
            "integrable": {"type": "boolean"},
        },
    },
    "lift-am": ser.LIFT_SCHEMA,
    "lift-dr": ser.LIFT_SCHEMA,
    "verify": {
        "type": "object",
        "required": ["verified", "functorial", "discrete"],
        "properties": {
            "verified": {"type": "boolean"},
            "functorial": {"type": "boolean"},
            "discrete": {"type": "boolean"},
        },
    },
    "equivariant": {
        "type": "object",
        "required": ["assumptions", "coefficient_matrices", "certificate", "theta_equivariant"],
        "properties": {
            "assumptions": {"type": "boolean"},
            "coefficient_matrices": {"type": "array"},
            "certificate": ser.MONODROMY_SCHEMA,
            "theta_equivariant": {"type": "boolean"},
        },
    },
}


def fixture_path(name: str) -> Path:
    if name not in FIXTURES:
        raise InputUnavailable(f"no bundled fixture {name!r}; have {', '.join(FIXTURES)}")
    return Path(str(resources.files("intlift") / "fixtures" / f"{name}.json"))


def load_input(path: str):
    if path.startswith("fixture:"):
        p = fixture_path(path[len("fixture:"):])
    else:
        p = Path(path)
    try:
        text = p.read_text(encoding="utf-8")
    except OSError as exc:
        raise InputUnavailable(f"cannot read {path}: {exc.strerror}") from None
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: {exc}") from None
    # a previous report can be fed back in
    if isinstance(doc, dict) and {"command", "status", "result"} <= doc.keys():
        doc = doc["result"]
    return doc


# command bodies ---------------------------------------------------------------
# each returns (status, result)


def _homology(doc):
    c = ser.complex_from_json(doc)
    groups = [homology(c, k) for k in range(c.top + 1)]
    return "ok", {
        "dims": list(c.dims),
        "betti": [g.betti for g in groups],
        "torsion": [list(g.torsion) for g in groups],
        "euler_characteristic": c.euler_characteristic(),
        "groups": [ser.homology_to_json(g) for g in groups],
    }


def _integrability(doc):
    p = ser.presentation_from_json(doc)
    rep = is_integrable(p)
    log.info("free rank %d, real span %d", rep.free_rank, rep.real_span_dim)
    out = {
        "presentation": ser.presentation_to_json(p),
        "monodromy": ser.monodromy_to_json(rep),
        "integrable": rep.discrete,
    }
    return ("ok" if rep.discrete else "not-integrable"), out


def _lift(build):
    def run(doc):
        lr = build(ser.presentation_from_json(doc))
        log.info("%s lift: n=%d, fiber rank %d", lr.kind, lr.n, lr.total.ell)
        return "ok", ser.lift_to_json(lr)

    return run


def _verify(doc):
    lr = ser.lift_from_json(doc)
    functorial = verify_morphism_functoriality(lr.total, lr.base, lr.fiber_map)
    discrete = is_discrete(lr.total.periods).discrete
    ok = verify_lift(lr)
    out = {"verified": ok, "functorial": functorial, "discrete": discrete}
    if not ok:
        raise VerificationFailed(
            f"lift does not verify (functorial={functorial}, discrete={discrete})"
        )
    return "ok", out


def _equivariant(doc):
    ser.validate(doc, ser.EQUIVARIANT_SCHEMA, "equivariant input")
    c = ser.complex_from_json(doc["complex"])
    action = ser.action_from_json(doc, c)
    e = ser.forms_from_json(doc, c)
    h = homology(c, 2)
    ok = check_assumptions(action, e, h)
    cert = equivariant_derham_certificate(action, e, h)
    theta = tautological_form(e)
    rs = coefficient_matrices(action, e)
    return "ok", {
        "assumptions": ok,
        "betti": betti_numbers(c),
        "coefficient_matrices": [ser.kmatrix_to_json(r) for r in rs],
        "periods": ser.kmatrix_to_json(periods(c, theta, h)),
        "certificate": ser.monodromy_to_json(cert),
        "theta_equivariant": check_equivariance(action, theta, e),
    }


HANDLERS = {
    "homology": _homology,
    "integrability": _integrability,
    "lift-am": _lift(almeida_molino_lift),
    "lift-dr": _lift(derham_lift),
    "verify": _verify,
    "equivariant": _equivariant,
}


@dataclass
class Job:
    command: str
    input_path: str
    output_path: str | None = None
    options: dict = field(default_factory=dict)


def run_job(job: Job) -> tuple[dict, int]:
    """Run ``job``, write its report if it names an output, return ``(report, code)``."""
    report, code = run(job.command, job.input_path, timing=job.options.get("timing", False))
    if job.output_path:
        text = render(report, job.options.get("pretty", False))
        Path(job.output_path).write_text(text, encoding="utf-8")
    return report, code


def run(command: str, input_path: str, *, timing: bool = False) -> tuple[dict, int]:
    """Execute one job and return ``(report, exit_code)``."""
    if command not in HANDLERS:
        raise ValueError(f"unknown command {command!r}")
    start = time.perf_counter()
    try:
        status, result = HANDLERS[command](load_input(input_path))
        jsonschema.validate(result, RESULT_SCHEMAS[command])
        report = {"command": command, "status": status, "result": result}
    except (IntliftError, ValueError, TypeError) as exc:
        # stray ValueErrors come from malformed nested input
        log.debug("job failed", exc_info=True)
        status = "error"
        code = exc.code if isinstance(exc, IntliftError) else "MalformedInput"
        report = {
            "command": command,
            "status": status,
            "result": None,
            "error": {"code": code, "message": str(exc)},
        }
    if timing:
        report["timing_ms"] = round((time.perf_counter() - start) * 1000, 3)
    code = {"ok": 0, "not-integrable": 2, "error": 1}[status]
    return report, code


def render(report: dict, pretty: bool = False) -> str:
    if pretty:
        return json.dumps(report, sort_keys=True, indent=2, ensure_ascii=False) + "\n"
    return json.dumps(report, sort_keys=True, separators=(",", ":"), ensure_ascii=False) + "\n"


def _setup_logging():
    level = os.environ.get("INTLIFT_LOG", "WARNING").upper()
    logging.basicConfig(
        level=getattr(logging, level, logging.WARNING),
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )


class _Parser(argparse.ArgumentParser):
    # exit status 2 means "not integrable", so usage errors use 1
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="intlift",
        description="Integrability of abelian transitive Lie algebroids, decided exactly.",
    )
    parser.add_argument("command", choices=COMMANDS)
    parser.add_argument("--input", required=True, help="JSON file, or fixture:NAME")
    parser.add_argument("--output", help="write the report here instead of stdout")
    parser.add_argument("--pretty", action="store_true", help="indent the JSON report")
    parser.add_argument("--timing", action="store_true", help="include timing_ms in the report")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    _setup_logging()
    job = Job(args.command, args.input, args.output, {"timing": args.timing, "pretty": args.pretty})
    report, code = run_job(job)
    if not job.output_path:
        sys.stdout.write(render(report, args.pretty))
    if code == 1:
        err = report["error"]
        log.error("%s: %s", err["code"], err["message"])
    return code


if __name__ == "__main__":
    sys.exit(main())
