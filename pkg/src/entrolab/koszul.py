"""Koszul complexes with signed monomial differentials and exact
multigraded cohomology lengths.

The complex on monomials x_1, ..., x_m sits in cohomological degrees
-m .. 0 with the free module in degree -j spanned by the j-element
subsets of {1..m}; the differential drops one element at a time with the
sign (-1)^(position of the dropped index inside the sorted subset).  Each
multidegree v carries a finite complex of vector spaces over the prime
field (or the rationals in characteristic 0) whose matrices have entries
0 and +-1; cohomology lengths are summed slice by slice with exact ranks,
never floating point.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import comb

from .errors import NotFiniteLengthError, RegionOverflowError
from .monomials import (
    MonomialIdeal,
    RingSpec,
    Vec,
    colength,
    ideal_sum,
    pure_power_bounds,
)
from .endos import MonomialMap, apply_to_monomial, is_finite_length

DEFAULT_MAX_SIDE = 512


def _rank_mod_p(rows: list[list[int]], p: int) -> int:
    mat = [[x % p for x in row] for row in rows]
    nr, nc = len(mat), len(mat[0])
    rank = 0
    for col in range(nc):
        piv = next((r for r in range(rank, nr) if mat[r][col]), None)
        if piv is None:
            continue
        mat[rank], mat[piv] = mat[piv], mat[rank]
        inv = pow(mat[rank][col], p - 2, p)
        top = mat[rank] = [(x * inv) % p for x in mat[rank]]
        for r in range(rank + 1, nr):
            f = mat[r][col]
            if f:
                mat[r] = [(a - f * b) % p for a, b in zip(mat[r], top)]
        rank += 1
        if rank == nr:
            break
    return rank


def _rank_bareiss(rows: list[list[int]]) -> int:
    # fraction-free elimination over the integers; all divisions are exact
    mat = [list(row) for row in rows]
    nr, nc = len(mat), len(mat[0])
    rank = 0
    prev = 1
    for col in range(nc):
        piv = next((r for r in range(rank, nr) if mat[r][col]), None)
        if piv is None:
            continue
        mat[rank], mat[piv] = mat[piv], mat[rank]
        pivot = mat[rank][col]
        for r in range(rank + 1, nr):
            f = mat[r][col]
            mat[r][col] = 0
            for c in range(col + 1, nc):
                mat[r][c] = (pivot * mat[r][c] - f * mat[rank][c]) // prev
        prev = pivot
        rank += 1
        if rank == nr:
            break
    return rank


def exact_rank(rows: list[list[int]], characteristic: int) -> int:
    """Rank of an integer matrix over the prime field of the given
    characteristic (the rationals when it is 0)."""
    if not rows or not rows[0]:
        return 0
    if characteristic:
        return _rank_mod_p(rows, characteristic)
    return _rank_bareiss(rows)


@dataclass
class HomologyLengths:
    """Length of each cohomology module, keyed by cohomological degree,
    together with the multidegree box that was swept to obtain it."""

    lengths: dict[int, int]
    region: tuple[int, ...]

    def length(self, degree: int) -> int:
        return self.lengths.get(degree, 0)


@dataclass(frozen=True)
class GeneratorProfile:
    """Shape constants of a generator: ``peak`` is the largest cohomology
    length, ``width`` the largest |degree| with nonzero cohomology."""

    peak: int
    width: int


class KoszulComplex:
    """Strictly perfect complex built from a monomial sequence; see
    ``build_koszul``."""

    def __init__(self, ring: RingSpec, sequence):
        seq = tuple(tuple(int(e) for e in w) for w in sequence)
        d = ring.dim_ambient
        for w in seq:
            if len(w) != d:
                raise NotFiniteLengthError(
                    f"sequence entry {w} does not have {d} exponents"
                )
            if sum(w) == 0:
                raise NotFiniteLengthError(
                    "sequence entries must lie in the maximal ideal"
                )
        generated = ideal_sum(MonomialIdeal(seq, d), ring.quotient)
        if pure_power_bounds(generated) is None:
            raise NotFiniteLengthError(
                "sequence does not generate an ideal of finite colength"
            )
        self.ring = ring
        self.sequence = seq
        self.m = len(seq)
        self._jgens = ring.quotient.generators
        self._build_tables()
        self._verify_dd_zero()

    def _build_tables(self):
        m = self.m
        d = self.ring.dim_ambient
        self.levels = [
            list(itertools.combinations(range(m), j)) for j in range(m + 1)
        ]
        index = [
            {subset: i for i, subset in enumerate(level)} for level in self.levels
        ]
        self.shifts = [
            [
                tuple(sum(self.sequence[i][c] for i in subset) for c in range(d))
                for subset in level
            ]
            for level in self.levels
        ]
        # diff[j][source index] = [(target index at level j-1, sign, dropped i)]
        self.diff = [[] for _ in range(m + 1)]
        for j in range(1, m + 1):
            table = []
            for subset in self.levels[j]:
                entries = []
                for pos, i in enumerate(subset):
                    target = subset[:pos] + subset[pos + 1:]
                    sign = 1 if pos % 2 == 0 else -1
                    entries.append((index[j - 1][target], sign, i))
                table.append(entries)
            self.diff[j] = table

    def _verify_dd_zero(self):
        for j in range(2, self.m + 1):
            acc: dict[tuple, int] = {}
            for src in range(len(self.levels[j])):
                for mid, s1, i1 in self.diff[j][src]:
                    for tgt, s2, i2 in self.diff[j - 1][mid]:
                        w = tuple(
                            a + b for a, b in zip(self.sequence[i1], self.sequence[i2])
                        )
                        key = (src, tgt, w)
                        acc[key] = acc.get(key, 0) + s1 * s2
            if any(acc.values()):
                raise AssertionError("differential does not square to zero")

    def module_rank(self, degree: int) -> int:
        """Rank of the free module in the given cohomological degree."""
        if -self.m <= degree <= 0:
            return comb(self.m, -degree)
        return 0

    def _standard(self, u: Vec) -> bool:
        for g in self._jgens:
            for a, b in zip(g, u):
                if a > b:
                    break
            else:
                return False
        return True

    def slice_dims(self, v: Vec) -> dict[int, int]:
        """Cohomology dimensions of the single multidegree-v slice,
        keyed by cohomological degree.  Independent of any other slice."""
        m = self.m
        active: list[list[int]] = []
        for level_shifts in self.shifts:
            acts = []
            for si, shift in enumerate(level_shifts):
                u = tuple(a - b for a, b in zip(v, shift))
                if min(u, default=0) >= 0 and self._standard(u):
                    acts.append(si)
            active.append(acts)
        ranks = [0] * (m + 2)
        char = self.ring.characteristic
        for j in range(1, m + 1):
            cols = active[j]
            rows = active[j - 1]
            if not cols or not rows:
                continue
            rowpos = {si: r for r, si in enumerate(rows)}
            mat = [[0] * len(cols) for _ in rows]
            for c, si in enumerate(cols):
                for tgt, sign, _ in self.diff[j][si]:
                    r = rowpos.get(tgt)
                    if r is not None:
                        mat[r][c] = sign
            ranks[j] = exact_rank(mat, char)
        return {
            -j: len(active[j]) - ranks[j] - ranks[j + 1] for j in range(m + 1)
        }


def build_koszul(ring: RingSpec, sequence) -> KoszulComplex:
    """Build the Koszul complex on a sequence of monomials in the maximal
    ideal that generates, together with the quotient, an ideal of finite
    colength.  The differential is checked to square to zero."""
    return KoszulComplex(ring, sequence)


def pullback(complex_: KoszulComplex, phi: MonomialMap) -> KoszulComplex:
    """Inverse image of the complex along phi: the Koszul complex on the
    image monomials.  For a strictly perfect complex this plain base change
    already represents the derived pullback."""
    if phi.ring != complex_.ring:
        raise ValueError("map acts on a different ring than the complex")
    if not is_finite_length(phi):
        raise NotFiniteLengthError(
            "pullback requires an endomorphism of finite length"
        )
    images = tuple(apply_to_monomial(phi, w) for w in complex_.sequence)
    return KoszulComplex(complex_.ring, images)


def _region_bounds(complex_: KoszulComplex) -> tuple[list[int], list[int]]:
    ring = complex_.ring
    d = ring.dim_ambient
    generated = ideal_sum(
        MonomialIdeal(complex_.sequence, d), ring.quotient
    )
    powers = pure_power_bounds(generated)
    total_shift = [sum(w[i] for w in complex_.sequence) for i in range(d)]
    quotient_height = [
        max((g[i] for g in ring.quotient.generators), default=0) for i in range(d)
    ]
    start = [powers[i] + total_shift[i] for i in range(d)]
    # Every slice with v_i >= powers_i + quotient_height_i + total_shift_i in
    # some coordinate is acyclic: either X_i^powers_i lies in the quotient and
    # the slice is empty, or some sequence entry is a pure power of X_i and
    # multiplication by it is bijective on the relevant graded pieces, making
    # the slice a cone over an isomorphism.
    guaranteed = [
        powers[i] + quotient_height[i] + total_shift[i] for i in range(d)
    ]
    return start, guaranteed


def homology_lengths(
    complex_: KoszulComplex,
    max_side: int = DEFAULT_MAX_SIDE,
    pad: int = 0,
) -> HomologyLengths:
    """Exact length of every cohomology module, summed multidegree by
    multidegree.

    The sweep starts on the pure-power box of the generated ideal enlarged
    by the total multidegree shift of the basis (plus ``pad`` on every
    side), then grows by unit shells until two consecutive shells are
    homology-free everywhere and the swept box contains the region outside
    which slices are provably acyclic.  Hitting ``max_side`` first raises
    RegionOverflowError rather than returning a silently truncated answer.
    """
    start, guaranteed = _region_bounds(complex_)
    start = [s + pad for s in start]
    d = complex_.ring.dim_ambient
    m = complex_.m
    totals = {-j: 0 for j in range(m + 1)}

    def sweep(sides: list[int], previous: list[int] | None) -> bool:
        contributed = False
        for v in itertools.product(*(range(s) for s in sides)):
            if previous is not None and all(
                v[i] < previous[i] for i in range(d)
            ):
                continue
            for degree, dim in complex_.slice_dims(v).items():
                if dim:
                    totals[degree] += dim
                    contributed = True
        return contributed

    if any(s > max_side for s in start):
        raise RegionOverflowError(
            f"initial search box {start} exceeds the side cap {max_side}"
        )
    sweep(start, None)
    shell = 0
    zero_streak = 0
    sides = list(start)
    while not (
        zero_streak >= 2 and all(s >= g for s, g in zip(sides, guaranteed))
    ):
        shell += 1
        previous = sides
        sides = [s + 1 for s in previous]
        if any(s > max_side for s in sides):
            raise RegionOverflowError(
                f"cohomology search did not stabilize within the side cap "
                f"{max_side}"
            )
        contributed = sweep(sides, previous)
        zero_streak = 0 if contributed else zero_streak + 1
    return HomologyLengths(totals, tuple(sides))


def h0_length(complex_: KoszulComplex) -> int:
    """Length of the degree-0 cohomology: the colength of the generated
    ideal.  Agrees with ``homology_lengths`` at degree 0."""
    ideal = MonomialIdeal(complex_.sequence, complex_.ring.dim_ambient)
    return colength(ideal, complex_.ring)


def generator_profile(
    complex_: KoszulComplex, lengths: HomologyLengths | None = None
) -> GeneratorProfile:
    """Peak cohomology length and cohomological width of the complex."""
    if lengths is None:
        lengths = homology_lengths(complex_)
    peak = max(lengths.lengths.values(), default=0)
    if peak == 0:
        raise ValueError("zero complex has no generator profile")
    width = max(-k for k, v in lengths.lengths.items() if v > 0)
    return GeneratorProfile(peak=peak, width=width)
