"""Command-line front end: exact invariant tables, single invariants, and
the verification suites, with deterministic text/csv/json output.

Exit codes: 0 success, 1 verification failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

from .equivariant import (
    check_exponential_regularity,
    check_mirror_identity,
    check_polynomiality,
    check_recursivity,
    phi_series,
    y_equivariant_family,
)
from .errors import RangeError, SqmirrorError, TheoremDomainError, UsageError
from .frames import random_frames
from .hurwitz import (
    l0_identity_check,
    m02d_psi_integral,
    m02d_psi_integral_recursive,
    hurwitz_identity_sides,
)
from .mirror import (
    TABLE1_GOLDEN,
    InvariantRecord,
    gw_invariant,
    sq_invariant,
    table1,
)

#: Default tuples exercised by the verification suites when none is given.
DEFAULT_TUPLES: tuple[tuple[int, tuple[int, ...]], ...] = (
    (2, ()),
    (3, (2,)),
    (5, (5,)),
    (5, (3, -1)),
    (5, (-2,)),
)

#: Tuples for the mirror-identity and regularity suites (|a| <= n only).
MIRROR_TUPLES: tuple[tuple[int, tuple[int, ...]], ...] = (
    (5, (5,)),
    (4, (2,)),
    (6, (5,)),
    (5, (3, -1)),
)


@dataclass(frozen=True)
class RunConfig:
    """Validated command-line configuration."""

    command: str
    n: int | None
    a: tuple[int, ...] | None
    d_max: int
    h_order: int | None
    z_max: int
    seed: int
    frames: int
    fmt: str

    def __post_init__(self):
        if self.d_max < 1:
            raise UsageError("--d-max must be >= 1")
        if self.frames < 1:
            raise UsageError("--frames must be >= 1")
        if self.a is not None and any(e == 0 for e in self.a):
            raise UsageError("--a entries must be nonzero")
        if self.fmt not in ("text", "csv", "json"):
            raise UsageError(f"unknown format {self.fmt!r}")


def _parse_tuple(text: str) -> tuple[int, ...]:
    text = text.strip()
    if not text:
        return ()
    try:
        return tuple(int(part) for part in text.split(","))
    except ValueError as exc:
        raise UsageError(f"--a must be comma-separated integers, got {text!r}") from exc


def _fmt_rational(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def _emit(line: str, out) -> None:
    out.write(line + "\n")


# ---------------------------------------------------------------------------
# table1
# ---------------------------------------------------------------------------

_TABLE1_HEADERS = ("d", "gw_tau1_over_d", "sq_tau0", "sq_tau1_over_d", "sq_tau2_neghalf")


def cmd_table1(config: RunConfig, out=sys.stdout, err=sys.stderr) -> int:
    rows = table1(config.d_max)
    if config.fmt == "json":
        payload = [
            {
                "d": row.d,
                "gw_tau1_over_d": f"{row.gw_tau1_over_d.numerator}/{row.gw_tau1_over_d.denominator}",
                "sq_tau0": f"{row.sq_tau0.numerator}/{row.sq_tau0.denominator}",
                "sq_tau1_over_d": f"{row.sq_tau1_over_d.numerator}/{row.sq_tau1_over_d.denominator}",
                "sq_tau2_neghalf": f"{row.sq_tau2_neghalf.numerator}/{row.sq_tau2_neghalf.denominator}",
            }
            for row in rows
        ]
        _emit(json.dumps(payload, sort_keys=True), out)
    elif config.fmt == "csv":
        _emit(",".join(_TABLE1_HEADERS), out)
        for row in rows:
            _emit(
                ",".join([str(row.d)] + [_fmt_rational(v) for v in row.values()]), out
            )
    else:
        widths = [6, 24, 24, 26, 28]
        header = "".join(h.ljust(w) for h, w in zip(_TABLE1_HEADERS, widths))
        _emit(header, out)
        for row in rows:
            cells = [str(row.d)] + [_fmt_rational(v) for v in row.values()]
            _emit("".join(c.ljust(w) for c, w in zip(cells, widths)), out)
    status = 0
    for row in rows:
        golden = TABLE1_GOLDEN.get(row.d)
        if golden is None:
            continue
        expected = tuple(Fraction(g) for g in golden)
        if row.values() != expected:
            status = 1
            _emit(
                f"mismatch at d={row.d}: computed "
                f"{tuple(_fmt_rational(v) for v in row.values())}, expected {golden}",
                err,
            )
    return status


# ---------------------------------------------------------------------------
# invariant
# ---------------------------------------------------------------------------


def cmd_invariant(config: RunConfig, flavor: str, d: int, p: int, out=sys.stdout, err=sys.stderr) -> int:
    if config.n is None or config.a is None:
        raise UsageError("invariant requires --n and --a")
    try:
        record: InvariantRecord
        if flavor == "SQ":
            record = sq_invariant(config.n, config.a, d, p, h_order=config.h_order)
        else:
            record = gw_invariant(config.n, config.a, d, p, h_order=config.h_order)
    except (RangeError, TheoremDomainError) as exc:
        raise UsageError(str(exc)) from exc
    if config.fmt == "json":
        _emit(json.dumps(record.to_json(), sort_keys=True), out)
    elif config.fmt == "csv":
        _emit("n,a,flavor,d,p,value", out)
        _emit(
            f"{record.n},{';'.join(map(str, record.a))},{record.flavor},"
            f"{record.d},{record.p},{_fmt_rational(record.value)}",
            out,
        )
    else:
        _emit(
            f"{record.flavor} invariant, n={record.n}, a={list(record.a)}, "
            f"d={record.d}, p={record.p}: {_fmt_rational(record.value)}",
            out,
        )
    return 0


# ---------------------------------------------------------------------------
# verify
# ---------------------------------------------------------------------------


def _suite_tuples(config: RunConfig, pool) -> list[tuple[int, tuple[int, ...]]]:
    if config.n is not None:
        if config.a is None:
            raise UsageError("--a is required when --n is given")
        return [(config.n, tuple(config.a))]
    return list(pool)


def _suite_recursivity(config: RunConfig) -> list[dict]:
    records = []
    for n, a in _suite_tuples(config, DEFAULT_TUPLES):
        for frame in random_frames(n, a, config.d_max, config.frames, config.seed):
            family = y_equivariant_family(frame, a, config.d_max)
            for d_star in range(0, config.d_max + 1):
                report = check_recursivity(frame, family, a, d_star)
                records.append(report.to_json())
                if not report.passed:
                    return records
    return records


def _suite_polynomiality(config: RunConfig) -> list[dict]:
    records = []
    for n, a in _suite_tuples(config, DEFAULT_TUPLES):
        for frame in random_frames(n, a, config.d_max, config.frames, config.seed):
            family = y_equivariant_family(frame, a, config.d_max)
            phi = phi_series(frame, a, family, config.d_max, config.z_max)
            report = check_polynomiality(phi)
            record = report.to_json()
            record.update(
                {"frame": frame.to_json(), "n": n, "a": list(a), "d_max": config.d_max}
            )
            records.append(record)
    return records


def _suite_mirror(config: RunConfig) -> list[dict]:
    records = []
    for n, a in _suite_tuples(config, MIRROR_TUPLES):
        for frame in random_frames(n, a, config.d_max, config.frames, config.seed):
            records.append(check_mirror_identity(frame, a, config.d_max).to_json())
    return records


def _suite_hurwitz(config: RunConfig) -> list[dict]:
    records = []
    for n, a in _suite_tuples(config, DEFAULT_TUPLES):
        for frame in random_frames(n, a, config.d_max, config.frames, config.seed):
            lhs, rhs = hurwitz_identity_sides(frame, a, config.d_max, (3, 3))
            passed = lhs == rhs
            witness = None
            if not passed:
                diff = lhs - rhs
                key = min(diff.coeffs, key=lambda e: (sum(e), e))
                witness = f"first mismatch at (h1inv, h2inv, q) = {key}"
            records.append(
                {
                    "check": "hurwitz",
                    "frame": frame.to_json(),
                    "n": n,
                    "a": list(a),
                    "d_max": config.d_max,
                    "pass": passed,
                    "witness": witness,
                }
            )
    return records


def _suite_regularity(config: RunConfig) -> list[dict]:
    records = []
    for n, a in _suite_tuples(config, MIRROR_TUPLES):
        for frame in random_frames(n, a, config.d_max, config.frames, config.seed):
            records.append(check_exponential_regularity(frame, a, config.d_max).to_json())
    return records


def _compositions(total: int, slots: int):
    """All ways to split ``total`` over ``slots`` ordered nonnegative parts."""
    if slots == 0:
        if total == 0:
            yield ()
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, slots - 1):
            yield (first,) + rest


def exponent_splits(d: int):
    """All (a1, a2, b_list) with a1 + a2 + sum(b) = d - 1."""
    for a1 in range(0, d):
        for a2 in range(0, d - a1):
            for b_list in _compositions(d - 1 - a1 - a2, d):
                yield a1, a2, b_list


def _suite_lemma24(config: RunConfig) -> list[dict]:
    d_top = max(config.d_max, 6)
    failures = []
    total = 0
    for d in range(1, d_top + 1):
        for a1, a2, b_list in exponent_splits(d):
            total += 1
            closed = m02d_psi_integral(d, a1, a2, b_list)
            recursive = m02d_psi_integral_recursive(d, a1, a2, b_list)
            if closed != recursive:
                failures.append((d, a1, a2, b_list, str(closed), str(recursive)))
    return [
        {
            "check": "lemma24",
            "frame": [],
            "n": None,
            "a": [],
            "d_max": d_top,
            "pass": not failures,
            "witness": None if not failures else f"first failure {failures[0]}",
            "cases": total,
        }
    ]


def _suite_l0(config: RunConfig) -> list[dict]:
    d_top = max(config.d_max, 6)
    report = l0_identity_check(d_top, (d_top, d_top))
    record = report.to_json()
    record.update({"check": "l0", "frame": [], "n": None, "a": [], "d_max": d_top})
    return [record]


_SUITES: dict[str, Callable[[RunConfig], list[dict]]] = {
    "recursivity": _suite_recursivity,
    "polynomiality": _suite_polynomiality,
    "mirror": _suite_mirror,
    "hurwitz": _suite_hurwitz,
    "regularity": _suite_regularity,
    "lemma24": _suite_lemma24,
    "l0": _suite_l0,
}


def cmd_verify(config: RunConfig, suite: str, out=sys.stdout, err=sys.stderr) -> int:
    records = _SUITES[suite](config)
    passed = all(r["pass"] for r in records)
    if config.fmt == "json":
        _emit(json.dumps(records, sort_keys=True), out)
    else:
        for r in records:
            status = "pass" if r["pass"] else "FAIL"
            label = f"n={r.get('n')} a={r.get('a')}" if r.get("n") else ""
            _emit(f"[{status}] {r['check']} {label} d_max={r.get('d_max')}", out)
            if r.get("witness"):
                _emit(f"        witness: {r['witness']}", out)
    return 0 if passed else 1


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sqmirror",
        description=(
            "Exact twisted one-point invariants of projective spaces via"
            " hypergeometric mirror series, plus order-by-order verification"
            " suites for their structural identities."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser, d_max_default: int) -> None:
        p.add_argument("--n", type=int, default=None, help="ambient dimension parameter")
        p.add_argument(
            "--a",
            type=str,
            default=None,
            help="comma-separated nonzero twisting integers, e.g. 3,-1",
        )
        p.add_argument("--d-max", type=int, default=d_max_default, dest="d_max")
        p.add_argument("--h-order", type=int, default=None, dest="h_order")
        p.add_argument("--z-max", type=int, default=3, dest="z_max")
        p.add_argument("--seed", type=int, default=7)
        p.add_argument("--frames", type=int, default=3)
        p.add_argument(
            "--format", choices=("text", "csv", "json"), default="text", dest="fmt"
        )

    p_table = sub.add_parser("table1", help="exact quintic invariant table")
    common(p_table, d_max_default=5)

    p_inv = sub.add_parser("invariant", help="one twisted invariant")
    common(p_inv, d_max_default=5)
    p_inv.add_argument("--flavor", choices=("SQ", "GW"), required=True)
    p_inv.add_argument("--d", type=int, required=True)
    p_inv.add_argument("--p", type=int, required=True)

    p_verify = sub.add_parser("verify", help="run a verification suite")
    common(p_verify, d_max_default=4)
    p_verify.add_argument("--suite", choices=sorted(_SUITES), required=True)
    return parser


def main(argv: Sequence[str] | None = None, out=sys.stdout, err=sys.stderr) -> int:
    parser = _build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on usage errors and 0 on --help; preserve it
        return int(exc.code or 0)
    try:
        config = RunConfig(
            command=ns.command,
            n=ns.n,
            a=_parse_tuple(ns.a) if ns.a is not None else None,
            d_max=ns.d_max,
            h_order=ns.h_order,
            z_max=ns.z_max,
            seed=ns.seed,
            frames=ns.frames,
            fmt=ns.fmt,
        )
        if ns.command == "table1":
            return cmd_table1(config, out, err)
        if ns.command == "invariant":
            return cmd_invariant(config, ns.flavor, ns.d, ns.p, out, err)
        return cmd_verify(config, ns.suite, out, err)
    except UsageError as exc:
        _emit(f"error: {exc}", err)
        return 2
    except SqmirrorError as exc:
        _emit(f"error: {exc}", err)
        return 1


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
