"""Growth-rate estimators and certified complexity bounds for the derived
pullback along finite-length monomial endomorphisms.

Everything here reports finite-n data: length sequences, log averages, a
slope extrapolation, and per-n lower/upper tower-count bounds whose log
averages sandwich the functor entropy.  No limit is ever claimed beyond
the printed error envelopes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import (
    NotFiniteLengthError,
    NotRegularError,
    SquareCommutationError,
)
from .monomials import (
    MonomialIdeal,
    RingSpec,
    colength,
    ideal_sum,
    is_m_primary,
    krull_dimension,
)
from .endos import (
    MonomialMap,
    TransferSquare,
    check_square,
    compose,
    image_ideal,
    is_finite_length,
    iterate,
)
from .koszul import (
    GeneratorProfile,
    build_koszul,
    generator_profile,
    h0_length,
    pullback,
)

_LN2 = math.log(2)


def int_log(n: int) -> float:
    """Natural log of a positive integer of any size.

    Splits off the high 64 bits so the float conversion never overflows;
    the relative error stays below 1e-12.
    """
    if n <= 0:
        raise ValueError("int_log requires a positive integer")
    shift = max(n.bit_length() - 64, 0)
    return math.log(n >> shift) + shift * _LN2


@dataclass(frozen=True)
class EntropyRow:
    n: int
    length: int
    log_average: float  # log(length) / n


@dataclass(frozen=True)
class EntropySequence:
    """Colength growth data for the iterates of a map against a fixed
    reference ideal."""

    rows: tuple[EntropyRow, ...]
    ideal_used: MonomialIdeal
    map: MonomialMap


@dataclass(frozen=True)
class LimitEstimate:
    """Finite-n surrogate for the growth rate.

    ``estimate`` is the headline number: the difference-accelerated slope
    when the log-length differences still move geometrically, otherwise
    the least-squares slope over the final half of the rows.  The
    diagnostics keep both raw readings and their gap.
    """

    estimate: float
    least_squares_slope: float
    last_log_average: float
    difference: float
    method: str


@dataclass(frozen=True)
class SandwichRow:
    n: int
    lower_logavg: float
    upper_logavg: float
    gap_bound: float


@dataclass(frozen=True)
class SandwichReport:
    """Per-t table of lower/upper complexity bounds in log-average form.

    Row invariants: lower_logavg <= upper_logavg, and their gap is at most
    (log(peak) + width*|t|)/n.
    """

    t: float
    rows: tuple[SandwichRow, ...]
    profile: GeneratorProfile
    h_loc_reference: float


@dataclass(frozen=True)
class TransferReport:
    target_estimate: float
    source_estimate: float
    agree: bool
    tolerance: float
    shared_value: float | None
    conclusion: str


def local_entropy_sequence(
    ring: RingSpec,
    phi: MonomialMap,
    ideal: MonomialIdeal | None = None,
    n_max: int = 8,
) -> EntropySequence:
    """lengths of ring/(n-th iterate image of the reference ideal) for
    n = 1..n_max, with their log averages.

    The reference ideal defaults to the maximal ideal; any ideal primary
    to it yields the same growth rate.
    """
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    if phi.ring != ring:
        raise ValueError("map does not act on the given ring")
    if not is_finite_length(phi):
        raise NotFiniteLengthError("endomorphism is not of finite length")
    if ideal is None:
        ideal = ring.maximal_ideal()
    if any(sum(g) == 0 for g in ideal.generators):
        raise ValueError("reference ideal must be proper")
    if not is_m_primary(ideal_sum(ideal, ring.quotient)):
        raise NotFiniteLengthError(
            "reference ideal is not primary to the maximal ideal"
        )
    rows = []
    power = phi
    for n in range(1, n_max + 1):
        if n > 1:
            power = compose(phi, power)
        length = colength(image_ideal(power, ideal), ring)
        rows.append(EntropyRow(n, length, int_log(length) / n))
    return EntropySequence(tuple(rows), ideal, phi)


def _least_squares_slope(points: list[tuple[int, float]]) -> float:
    k = len(points)
    mean_x = sum(x for x, _ in points) / k
    mean_y = sum(y for _, y in points) / k
    sxx = sum((x - mean_x) ** 2 for x, _ in points)
    sxy = sum((x - mean_x) * (y - mean_y) for x, y in points)
    return sxy / sxx


def estimate_limit(seq: EntropySequence) -> LimitEstimate:
    """Extrapolate the growth rate from a finite sequence (>= 3 rows).

    The least-squares slope of log(length) against n over the final half
    of the rows is always computed.  When at least three consecutive
    log-length differences are available and still vary, one step of
    difference acceleration removes the leading geometric correction and
    becomes the headline estimate; for already-flat sequences the
    least-squares slope is the headline.
    """
    rows = seq.rows
    if len(rows) < 3:
        raise ValueError("estimate_limit needs at least 3 rows")
    logs = [int_log(r.length) for r in rows]
    points = list(zip((r.n for r in rows), logs))
    slope = _least_squares_slope(points[len(points) // 2:])
    last = rows[-1].log_average
    estimate, method = slope, "least-squares"
    if len(rows) >= 4:
        diffs = [b - a for a, b in zip(logs, logs[1:])]
        d1, d2, d3 = diffs[-3:]
        denom = d3 - 2 * d2 + d1
        if abs(denom) > 1e-9 * max(1.0, abs(d3)):
            estimate = d3 - (d3 - d2) ** 2 / denom
            method = "accelerated-difference"
    return LimitEstimate(
        estimate=estimate,
        least_squares_slope=slope,
        last_log_average=last,
        difference=slope - last,
        method=method,
    )


def complexity_upper_bound(ring: RingSpec, phi: MonomialMap, n: int) -> int:
    """Tower count bounding the complexity of the n-th pullback from above
    on a regular ring: the length of ring/(n-th iterate image of the
    maximal ideal).  Independent of t, since every tower step carries
    shift zero."""
    if not ring.regular:
        raise NotRegularError(
            "the upper complexity bound is only certified over a regular ring"
        )
    if not is_finite_length(phi):
        raise NotFiniteLengthError("endomorphism is not of finite length")
    if n < 1:
        raise ValueError("n must be >= 1")
    return colength(image_ideal(iterate(phi, n), ring.maximal_ideal()), ring)


def _lower_bound_log(profile: GeneratorProfile, h0_len: int, t: float) -> float:
    return int_log(h0_len) - int_log(profile.peak) - profile.width * abs(t)


def complexity_lower_bound(
    profile: GeneratorProfile, h0_len: int, t: float
) -> float:
    """Certified lower bound for the complexity of the n-th pullback of a
    generator with the given profile: h0_len / (peak * e^(width*|t|))."""
    return math.exp(_lower_bound_log(profile, h0_len, t))


def sandwich(
    ring: RingSpec,
    phi: MonomialMap,
    sequence,
    t_values,
    n_max: int = 8,
) -> list[SandwichReport]:
    """Per-t tables sandwiching the pullback functor entropy between the
    log averages of the certified lower and upper tower counts.

    The ring must be regular and the sequence must generate an ideal of
    finite colength; the generator profile comes from the Koszul complex
    on the sequence, the upper bound from the maximal ideal.
    """
    if not ring.regular:
        raise NotRegularError("sandwich requires a regular ring")
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    base = build_koszul(ring, sequence)
    profile = generator_profile(base)
    reference_seq = local_entropy_sequence(ring, phi, None, n_max)
    if n_max >= 3:
        h_ref = estimate_limit(reference_seq).estimate
    else:
        h_ref = reference_seq.rows[-1].log_average
    peak_log = int_log(profile.peak)
    h0_logs = []
    upper_logs = []
    for n in range(1, n_max + 1):
        pulled = pullback(base, iterate(phi, n))
        h0_logs.append(int_log(h0_length(pulled)))
        upper_logs.append(int_log(complexity_upper_bound(ring, phi, n)))
    reports = []
    for t in t_values:
        shift = peak_log + profile.width * abs(t)
        rows = tuple(
            SandwichRow(
                n=n,
                lower_logavg=(h0_logs[n - 1] - shift) / n,
                upper_logavg=upper_logs[n - 1] / n,
                gap_bound=shift / n,
            )
            for n in range(1, n_max + 1)
        )
        reports.append(
            SandwichReport(
                t=float(t), rows=rows, profile=profile, h_loc_reference=h_ref
            )
        )
    return reports


def sandwich_violations(
    report: SandwichReport, tol: float = 1e-9
) -> list[str]:
    """Messages for any row breaking the sandwich invariants; empty when
    the report is consistent."""
    problems = []
    for row in report.rows:
        if row.lower_logavg > row.upper_logavg + tol:
            problems.append(
                f"t={report.t} n={row.n}: lower bound {row.lower_logavg!r} "
                f"exceeds upper bound {row.upper_logavg!r}"
            )
        if row.upper_logavg - row.lower_logavg > row.gap_bound + tol:
            problems.append(
                f"t={report.t} n={row.n}: bound gap exceeds "
                f"{row.gap_bound!r}"
            )
    return problems


def diagonal_closed_form(exponents) -> float:
    """Growth rate of the map sending each variable to its own power:
    the sum of the logs of the exponents."""
    exps = [int(e) for e in exponents]
    if any(e < 1 for e in exps):
        raise ValueError("diagonal exponents must be positive")
    return sum(math.log(e) for e in exps)


def frobenius_prediction(ring: RingSpec, p: int) -> float:
    """Growth rate of the p-th power map: Krull dimension times log(p)."""
    if ring.characteristic != p:
        raise ValueError(
            f"characteristic mismatch: ring has characteristic "
            f"{ring.characteristic}, map raises to the power {p}"
        )
    dim = krull_dimension(ring.quotient, ring.dim_ambient)
    return dim * math.log(p)


def transfer_check(
    square: TransferSquare,
    n_max: int = 8,
    tolerance: float = 1e-6,
) -> TransferReport:
    """Compare the growth rates of the two maps of a commuting square.

    When the estimates agree within the tolerance, the pullback entropy of
    the target map is constant in t and equals the shared value; otherwise
    only the one-sided chain
    local rate(target) <= functor entropy(target) <= local rate(source)
    is reported.
    """
    if n_max < 3:
        raise ValueError("transfer_check needs n_max >= 3 to extrapolate")
    if not check_square(square):
        raise SquareCommutationError("transfer square does not commute")
    source_seq = local_entropy_sequence(
        square.source_ring, square.psi, None, n_max
    )
    target_seq = local_entropy_sequence(
        square.target_ring, square.phi, None, n_max
    )
    source_est = estimate_limit(source_seq).estimate
    target_est = estimate_limit(target_seq).estimate
    agree = abs(source_est - target_est) <= tolerance
    if agree:
        shared = source_est
        conclusion = (
            "pullback entropy of the target map is constant in t and equal "
            f"to {shared:.12g}"
        )
    else:
        shared = None
        conclusion = (
            "estimates disagree; only the one-sided chain holds: "
            f"{target_est:.12g} <= functor entropy <= {source_est:.12g}"
        )
    return TransferReport(
        target_estimate=target_est,
        source_estimate=source_est,
        agree=agree,
        tolerance=tolerance,
        shared_value=shared,
        conclusion=conclusion,
    )
