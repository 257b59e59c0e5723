"""Command-line front door.

Subcommands: entropy, delta, koszul, verify, transfer.  Reports are
deterministic: identical invocations produce byte-identical stdout (wall
time goes to stderr).  Exit codes: 0 success, 2 malformed input, 3 failed
hypothesis (finite length, regularity, commutation), 4 failed verdict.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import math
import shlex
import sys
import time
from dataclasses import dataclass, field

from .errors import (
    HypothesisError,
    NotFiniteLengthError,
    NotRegularError,
    RegionOverflowError,
    SpecError,
    SquareCommutationError,
)
from .monomials import (
    MonomialIdeal,
    colength,
    colength_bruteforce,
    ideal_sum,
    pure_power_bounds,
)
from .endos import image_ideal, iterate
from .koszul import (
    DEFAULT_MAX_SIDE,
    build_koszul,
    generator_profile,
    h0_length,
    homology_lengths,
    pullback,
)
from .entropy import (
    diagonal_closed_form,
    estimate_limit,
    frobenius_prediction,
    int_log,
    local_entropy_sequence,
    sandwich,
    sandwich_violations,
    transfer_check,
)
from .specfile import parse_spec

BRUTE_BOX_CAP = 200_000

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_HYPOTHESIS = 3
EXIT_VERDICT = 4


@dataclass
class RunReport:
    command: str
    digest: str
    columns: list[str]
    rows: list[list[str]] = field(default_factory=list)
    notices: list[str] = field(default_factory=list)
    footer: list[tuple[str, ...]] = field(default_factory=list)
    verdicts: list[tuple[str, bool, str]] = field(default_factory=list)

    @property
    def failed(self) -> bool:
        return any(not ok for _, ok, _ in self.verdicts)


def _fmt(x: float) -> str:
    s = f"{x:.12g}"
    return "0" if s in ("-0", "-0.0") else s


def _render_tsv(report: RunReport) -> str:
    lines = [f"# command\t{report.command}", f"# input\t{report.digest}"]
    lines += [f"# notice\t{n}" for n in report.notices]
    lines.append("\t".join(report.columns))
    lines += ["\t".join(row) for row in report.rows]
    lines += ["# " + "\t".join(item) for item in report.footer]
    lines += [
        f"# verdict\t{name}\t{'PASS' if ok else 'FAIL'}\t{detail}"
        for name, ok, detail in report.verdicts
    ]
    return "\n".join(lines) + "\n"


def _render_json(report: RunReport) -> str:
    obj = {
        "command": report.command,
        "input": report.digest,
        "notices": report.notices,
        "columns": report.columns,
        "rows": report.rows,
        "footer": [list(item) for item in report.footer],
        "verdicts": [
            {"name": name, "status": "PASS" if ok else "FAIL", "detail": detail}
            for name, ok, detail in report.verdicts
        ],
    }
    return json.dumps(obj, sort_keys=True, separators=(",", ":")) + "\n"


def _digest(path: str) -> str:
    try:
        with open(path, "rb") as handle:
            data = handle.read()
    except OSError as exc:
        raise SpecError(f"cannot read spec file {path}: {exc}") from None
    return "sha256:" + hashlib.sha256(data).hexdigest()


def _log_scale(base: str) -> float:
    return {"e": 1.0, "2": 1.0 / math.log(2), "10": 1.0 / math.log(10)}[base]


def _parse_t(raw: str) -> list[float]:
    try:
        values = [float(tok) for tok in raw.split(",") if tok.strip()]
    except ValueError:
        raise SpecError(f"cannot parse --t value {raw!r}") from None
    if not values:
        raise SpecError("--t lists no values")
    return values


def _prediction(spec) -> tuple[str, float] | None:
    ring, mono_map = spec.ring, spec.map
    p = ring.characteristic
    if p and mono_map.is_diagonal() and all(
        mono_map.matrix[i][i] == p for i in range(ring.dim_ambient)
    ):
        return "frobenius", frobenius_prediction(ring, p)
    if ring.regular and mono_map.is_diagonal():
        diag = [mono_map.matrix[i][i] for i in range(ring.dim_ambient)]
        return "diagonal", diagonal_closed_form(diag)
    if ring.regular and mono_map.is_monomial_matrix():
        det = 1
        for row in mono_map.matrix:
            det *= max(row)
        return "monomial-matrix", math.log(det)
    return None


def _box_volume(ideal: MonomialIdeal, ring) -> int | None:
    bounds = pure_power_bounds(ideal_sum(ideal, ring.quotient))
    if bounds is None:
        return None
    volume = 1
    for b in bounds:
        volume *= b
    return volume


def _oracle_lengths_verdict(ring, mono_map, ideal, n_max, name):
    checked = 0
    for n in range(1, n_max + 1):
        image = image_ideal(iterate(mono_map, n), ideal)
        volume = _box_volume(image, ring)
        if volume is None or volume > BRUTE_BOX_CAP:
            break
        if colength(image, ring) != colength_bruteforce(image, ring):
            return (name, False, f"box enumeration disagrees at n = {n}")
        checked = n
    if checked:
        return (name, True, f"box enumeration agrees for n <= {checked}")
    return (name, True, "box too large at n = 1; cross-check skipped")


def _cmd_entropy(args, spec) -> RunReport:
    scale = _log_scale(args.log_base)
    seq = local_entropy_sequence(
        spec.ring, spec.map, spec.reference_ideal(), args.max_iter
    )
    report = RunReport(
        command="", digest="", columns=["n", "length", "log_length", "a_n"]
    )
    for row in seq.rows:
        log_len = int_log(row.length)
        report.rows.append(
            [
                str(row.n),
                str(row.length),
                _fmt(log_len * scale),
                _fmt(row.log_average * scale),
            ]
        )
    if args.max_iter >= 3:
        est = estimate_limit(seq)
        report.footer.append(("slope", _fmt(est.estimate * scale)))
        report.footer.append(("slope_method", est.method))
        report.footer.append(("last_a_n", _fmt(est.last_log_average * scale)))
    pred = _prediction(spec)
    if pred is not None:
        report.footer.append(("prediction", pred[0], _fmt(pred[1] * scale)))
    if args.oracle:
        ideal = spec.reference_ideal() or spec.ring.maximal_ideal()
        report.verdicts.append(
            _oracle_lengths_verdict(
                spec.ring, spec.map, ideal, args.max_iter, "oracle-colength"
            )
        )
    return report


def _cmd_delta(args, spec) -> RunReport:
    scale = _log_scale(args.log_base)
    t_values = _parse_t(args.t)
    ring = spec.ring
    x = spec.koszul_sequence() or [
        g for g in ring.maximal_ideal().generators
    ]
    report = RunReport(command="", digest="", columns=[])
    if ring.regular:
        reports = sandwich(ring, spec.map, x, t_values, args.max_iter)
        report.columns = ["t", "n", "lower_logavg", "upper_logavg", "gap_bound"]
        problems: list[str] = []
        for rep in reports:
            problems += sandwich_violations(rep)
            for row in rep.rows:
                report.rows.append(
                    [
                        _fmt(rep.t),
                        str(row.n),
                        _fmt(row.lower_logavg * scale),
                        _fmt(row.upper_logavg * scale),
                        _fmt(row.gap_bound * scale),
                    ]
                )
        profile = reports[0].profile
        report.footer.append(
            ("profile", f"max_length={profile.peak}", f"width={profile.width}")
        )
        report.footer.append(
            ("h_loc", _fmt(reports[0].h_loc_reference * scale))
        )
        report.verdicts.append(
            ("sandwich", not problems, problems[0] if problems else
             "lower <= upper and gap within bound at every n")
        )
    else:
        report.notices.append(
            "ring is not regular: the upper tower-count bound is not "
            "certified; reporting the lower bound only"
        )
        base = build_koszul(ring, x)
        profile = generator_profile(base)
        peak_log = int_log(profile.peak)
        report.columns = ["t", "n", "lower_logavg"]
        h0_logs = []
        for n in range(1, args.max_iter + 1):
            pulled = pullback(base, iterate(spec.map, n))
            h0_logs.append(int_log(h0_length(pulled)))
        for t in t_values:
            shift = peak_log + profile.width * abs(t)
            for n in range(1, args.max_iter + 1):
                report.rows.append(
                    [
                        _fmt(t),
                        str(n),
                        _fmt((h0_logs[n - 1] - shift) / n * scale),
                    ]
                )
        report.footer.append(
            ("profile", f"max_length={profile.peak}", f"width={profile.width}")
        )
    if args.oracle:
        report.verdicts.append(
            _oracle_lengths_verdict(
                ring,
                spec.map,
                MonomialIdeal(tuple(x), ring.dim_ambient),
                args.max_iter,
                "oracle-colength",
            )
        )
    return report


def _cmd_koszul(args, spec) -> RunReport:
    scale = _log_scale(args.log_base)
    if spec.koszul_sequence() is None:
        raise SpecError("sequence field is required for the koszul command")
    complex_ = build_koszul(spec.ring, spec.koszul_sequence())
    if args.pullback_iter:
        complex_ = pullback(complex_, iterate(spec.map, args.pullback_iter))
    lengths = homology_lengths(complex_, max_side=args.max_side)
    profile = generator_profile(complex_, lengths)
    report = RunReport(
        command="", digest="", columns=["degree", "length", "log_length"]
    )
    for degree in range(-complex_.m, 1):
        value = lengths.length(degree)
        log_txt = _fmt(int_log(value) * scale) if value else ""
        report.rows.append([str(degree), str(value), log_txt])
    report.footer.append(
        ("profile", f"max_length={profile.peak}", f"width={profile.width}")
    )
    report.footer.append(("region", ",".join(str(s) for s in lengths.region)))
    if args.oracle:
        padded = homology_lengths(
            complex_, max_side=2 * args.max_side, pad=max(lengths.region)
        )
        ok = padded.lengths == lengths.lengths
        detail = (
            f"lengths unchanged on the padded region "
            f"{','.join(str(s) for s in padded.region)}"
            if ok
            else "padded region changed the lengths"
        )
        report.verdicts.append(("oracle-region", ok, detail))
    return report


def _cmd_transfer(args, spec) -> RunReport:
    scale = _log_scale(args.log_base)
    square = spec.square()
    result = transfer_check(square, args.max_iter, args.tolerance)
    report = RunReport(
        command="", digest="", columns=["ring", "n", "length", "a_n"]
    )
    for label, ring, mono_map in (
        ("source", square.source_ring, square.psi),
        ("target", square.target_ring, square.phi),
    ):
        seq = local_entropy_sequence(ring, mono_map, None, args.max_iter)
        for row in seq.rows:
            report.rows.append(
                [label, str(row.n), str(row.length), _fmt(row.log_average * scale)]
            )
    report.footer.append(("source_estimate", _fmt(result.source_estimate * scale)))
    report.footer.append(("target_estimate", _fmt(result.target_estimate * scale)))
    report.footer.append(("tolerance", _fmt(args.tolerance)))
    report.footer.append(("agree", "yes" if result.agree else "no"))
    report.footer.append(("conclusion", result.conclusion))
    return report


def _verify_diagonal(args, spec, report, scale):
    ring, mono_map = spec.ring, spec.map
    if not ring.regular:
        raise HypothesisError("verify diagonal requires a regular ring")
    if not mono_map.is_diagonal():
        raise HypothesisError("verify diagonal requires a diagonal map")
    diag = [mono_map.matrix[i][i] for i in range(ring.dim_ambient)]
    predicted = diagonal_closed_form(diag)
    growth = 1
    for e in diag:
        growth *= e
    seq = local_entropy_sequence(ring, mono_map, None, args.max_iter)
    _fill_sequence_rows(report, seq, scale)
    exact = all(row.length == growth ** row.n for row in seq.rows)
    report.verdicts.append(
        ("exact-lengths", exact, f"length_n == {growth}^n for every n")
    )
    worst = max(abs(row.log_average - predicted) for row in seq.rows)
    report.verdicts.append(
        ("log-averages", worst < 1e-9, f"max |a_n - predicted| = {worst:.3e}")
    )
    est = estimate_limit(seq).estimate
    report.verdicts.append(
        ("slope", abs(est - predicted) < 1e-9,
         f"|slope - predicted| = {abs(est - predicted):.3e}")
    )
    report.footer.append(("prediction", "diagonal", _fmt(predicted * scale)))


def _verify_monomial_matrix(args, spec, report, scale):
    ring, mono_map = spec.ring, spec.map
    if not ring.regular:
        raise HypothesisError("verify monomial-matrix requires a regular ring")
    if not mono_map.is_monomial_matrix():
        raise HypothesisError(
            "verify monomial-matrix requires exactly one positive entry in "
            "every row and column"
        )
    det = 1
    for row in mono_map.matrix:
        det *= max(row)
    seq = local_entropy_sequence(ring, mono_map, None, args.max_iter)
    _fill_sequence_rows(report, seq, scale)
    exact = all(row.length == det ** row.n for row in seq.rows)
    report.verdicts.append(
        ("determinant-lengths", exact, f"length_n == {det}^n for every n")
    )
    est = estimate_limit(seq).estimate
    predicted = math.log(det)
    report.verdicts.append(
        ("slope", abs(est - predicted) < 1e-9,
         f"|slope - log det| = {abs(est - predicted):.3e}")
    )
    report.footer.append(
        ("prediction", "monomial-matrix", _fmt(predicted * scale))
    )


def _verify_frobenius(args, spec, report, scale):
    ring, mono_map = spec.ring, spec.map
    p = ring.characteristic
    if not p:
        raise HypothesisError("verify frobenius requires positive characteristic")
    expected = tuple(
        tuple(p if i == j else 0 for j in range(ring.dim_ambient))
        for i in range(ring.dim_ambient)
    )
    if mono_map.matrix != expected:
        raise HypothesisError(
            "verify frobenius requires the map raising every variable to "
            f"the power {p}"
        )
    predicted = frobenius_prediction(ring, p)
    seq = local_entropy_sequence(ring, mono_map, None, args.max_iter)
    _fill_sequence_rows(report, seq, scale)
    est = estimate_limit(seq).estimate
    report.verdicts.append(
        ("slope", abs(est - predicted) < 1e-6,
         f"predicted {_fmt(predicted * scale)}; |slope - predicted| = "
         f"{abs(est - predicted):.3e} < 1e-06")
    )
    report.footer.append(("prediction", "frobenius", _fmt(predicted * scale)))


def _verify_ideal_independence(args, spec, report, scale):
    ring, mono_map = spec.ring, spec.map
    ideal = spec.reference_ideal()
    if ideal is None:
        raise SpecError(
            "ideal field is required for the ideal-independence suite"
        )
    seq_q = local_entropy_sequence(ring, mono_map, ideal, args.max_iter)
    seq_m = local_entropy_sequence(ring, mono_map, None, args.max_iter)
    for row_q, row_m in zip(seq_q.rows, seq_m.rows):
        report.rows.append(
            [
                str(row_q.n),
                str(row_q.length),
                _fmt(row_q.log_average * scale),
                str(row_m.length),
                _fmt(row_m.log_average * scale),
            ]
        )
    report.columns = ["n", "length_q", "a_n_q", "length_m", "a_n_m"]
    est_q = estimate_limit(seq_q).estimate
    est_m = estimate_limit(seq_m).estimate
    envelope = (
        2
        * max(int_log(colength(ideal, ring)), int_log(colength(ring.maximal_ideal(), ring)))
        / args.max_iter
    )
    gap = abs(est_q - est_m)
    report.verdicts.append(
        ("slopes-agree", gap <= envelope + 1e-9,
         f"|slope_q - slope_m| = {gap:.3e} within envelope "
         f"{envelope + 1e-9:.3e}")
    )
    report.footer.append(("slope_q", _fmt(est_q * scale)))
    report.footer.append(("slope_m", _fmt(est_m * scale)))


def _verify_sandwich(args, spec, report, scale):
    ring = spec.ring
    if not ring.regular:
        raise HypothesisError("verify sandwich requires a regular ring")
    x = spec.koszul_sequence() or [g for g in ring.maximal_ideal().generators]
    t_values = _parse_t(args.t)
    reports = sandwich(ring, spec.map, x, t_values, args.max_iter)
    report.columns = ["t", "n", "lower_logavg", "upper_logavg", "gap_bound"]
    problems: list[str] = []
    for rep in reports:
        problems += sandwich_violations(rep)
        for row in rep.rows:
            report.rows.append(
                [
                    _fmt(rep.t),
                    str(row.n),
                    _fmt(row.lower_logavg * scale),
                    _fmt(row.upper_logavg * scale),
                    _fmt(row.gap_bound * scale),
                ]
            )
    report.verdicts.append(
        ("sandwich", not problems,
         problems[0] if problems else
         "lower <= upper and gap within bound at every n")
    )
    report.footer.append(("h_loc", _fmt(reports[0].h_loc_reference * scale)))


def _verify_transfer(args, spec, report, scale):
    square = spec.square()
    result = transfer_check(square, args.max_iter, args.tolerance)
    report.columns = ["quantity", "value"]
    report.rows.append(["source_estimate", _fmt(result.source_estimate * scale)])
    report.rows.append(["target_estimate", _fmt(result.target_estimate * scale)])
    gap = abs(result.source_estimate - result.target_estimate)
    report.verdicts.append(
        ("entropies-agree", result.agree,
         f"|target - source| = {gap:.3e} against tolerance "
         f"{_fmt(args.tolerance)}")
    )
    report.footer.append(("conclusion", result.conclusion))


_SUITES = {
    "diagonal": _verify_diagonal,
    "monomial-matrix": _verify_monomial_matrix,
    "frobenius": _verify_frobenius,
    "ideal-independence": _verify_ideal_independence,
    "sandwich": _verify_sandwich,
    "transfer": _verify_transfer,
}


def _fill_sequence_rows(report: RunReport, seq, scale: float):
    report.columns = ["n", "length", "log_length", "a_n"]
    for row in seq.rows:
        report.rows.append(
            [
                str(row.n),
                str(row.length),
                _fmt(int_log(row.length) * scale),
                _fmt(row.log_average * scale),
            ]
        )


def _cmd_verify(args, spec) -> RunReport:
    scale = _log_scale(args.log_base)
    report = RunReport(command="", digest="", columns=["n"])
    _SUITES[args.suite](args, spec, report, scale)
    return report


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="entrolab",
        description=(
            "Exact colength growth, Koszul cohomology, and entropy bound "
            "reports for monomial endomorphisms of monomial quotient rings."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(sp, *, t=False, oracle=False, tolerance=False):
        sp.add_argument("--spec", required=True, help="ring specification file")
        sp.add_argument(
            "--format", choices=("tsv", "report"), default="tsv",
            help="tsv table or a single JSON object",
        )
        sp.add_argument(
            "--log-base", choices=("e", "2", "10"), default="e",
            help="display base for logarithms (rescales display only)",
        )
        sp.add_argument("--max-iter", type=int, default=8, metavar="N")
        if t:
            sp.add_argument(
                "--t", default="-1,0,1",
                help="comma-separated real parameters for the bounds",
            )
        if oracle:
            sp.add_argument(
                "--oracle", action="store_true",
                help="cross-check against brute-force enumeration",
            )
        if tolerance:
            sp.add_argument("--tolerance", type=float, default=1e-6)

    sp = sub.add_parser("entropy", help="colength growth of the iterates")
    common(sp, oracle=True)

    sp = sub.add_parser("delta", help="lower/upper complexity bound tables")
    common(sp, t=True, oracle=True)

    sp = sub.add_parser("koszul", help="cohomology lengths of a Koszul complex")
    common(sp, oracle=True)
    sp.add_argument("--pullback-iter", type=int, default=0, metavar="N")
    sp.add_argument("--max-side", type=int, default=DEFAULT_MAX_SIDE)

    sp = sub.add_parser("verify", help="verdict suites with stated tolerances")
    sp.add_argument("suite", choices=sorted(_SUITES))
    common(sp, t=True, tolerance=True)

    sp = sub.add_parser("transfer", help="compare growth across a commuting square")
    common(sp, tolerance=True)

    return parser


_DISPATCH = {
    "entropy": _cmd_entropy,
    "delta": _cmd_delta,
    "koszul": _cmd_koszul,
    "verify": _cmd_verify,
    "transfer": _cmd_transfer,
}


def main(argv: list[str] | None = None) -> int:
    if argv is None:
        argv = sys.argv[1:]
    parser = build_parser()
    args = parser.parse_args(argv)
    started = time.perf_counter()
    try:
        digest = _digest(args.spec)
        spec = parse_spec(args.spec)
        report = _DISPATCH[args.command](args, spec)
    except SpecError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (
        NotFiniteLengthError,
        NotRegularError,
        SquareCommutationError,
        HypothesisError,
        RegionOverflowError,
    ) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_HYPOTHESIS
    report.command = shlex.join(argv)
    report.digest = digest
    rendered = (
        _render_json(report) if args.format == "report" else _render_tsv(report)
    )
    sys.stdout.write(rendered)
    elapsed = time.perf_counter() - started
    print(f"elapsed {elapsed:.3f}s", file=sys.stderr)
    return EXIT_VERDICT if report.failed else EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
