"""Exact arithmetic on exponent vectors and monomial ideals.

A monomial in k[X_1, ..., X_d] is represented by its exponent vector, a
tuple of d nonnegative ints.  A MonomialIdeal stores the unique minimal
generating set in lexicographic order, so two representations of the same
ideal compare equal.  All lengths are exact Python integers.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .errors import DimensionMismatchError, NotFiniteLengthError

Vec = tuple[int, ...]

# Inclusion-exclusion over generator subsets is exponential; past this many
# minimal generators fall back to direct box enumeration.
INCLUSION_EXCLUSION_CAP = 20


def _check_vec(v, ambient_dim: int | None = None) -> Vec:
    vec = tuple(int(e) for e in v)
    if any(e < 0 for e in vec):
        raise ValueError(f"exponent vector {vec} has a negative entry")
    if ambient_dim is not None and len(vec) != ambient_dim:
        raise DimensionMismatchError(
            f"exponent vector {vec} has length {len(vec)}, expected {ambient_dim}"
        )
    return vec


def divides(u: Vec, v: Vec) -> bool:
    """True iff X^u divides X^v, i.e. u <= v componentwise."""
    if len(u) != len(v):
        raise DimensionMismatchError(
            f"cannot compare exponent vectors of lengths {len(u)} and {len(v)}"
        )
    return all(a <= b for a, b in zip(u, v))


@dataclass(frozen=True)
class MonomialIdeal:
    """A monomial ideal, held as its minimal generating set.

    Construction minimalizes and sorts the generators, so the stored form
    is canonical.  The empty generating set is the zero ideal.
    """

    generators: tuple[Vec, ...]
    ambient_dim: int

    def __post_init__(self):
        gens = {_check_vec(g, self.ambient_dim) for g in self.generators}
        minimal = [
            g for g in gens if not any(h != g and divides(h, g) for h in gens)
        ]
        object.__setattr__(self, "generators", tuple(sorted(minimal)))

    @property
    def is_zero(self) -> bool:
        return not self.generators


def minimalize(gens, ambient_dim: int | None = None) -> MonomialIdeal:
    """The unique minimal generating set of the ideal generated by ``gens``.

    Idempotent and independent of input order.  ``ambient_dim`` is required
    only when ``gens`` is empty.
    """
    gens = [tuple(g) for g in gens]
    if ambient_dim is None:
        if not gens:
            raise ValueError("ambient_dim is required for an empty generating set")
        ambient_dim = len(gens[0])
    return MonomialIdeal(tuple(gens), ambient_dim)


def contains(ideal: MonomialIdeal, v: Vec) -> bool:
    """Monomial membership: X^v lies in the ideal iff some generator divides v."""
    v = _check_vec(v, ideal.ambient_dim)
    return any(divides(g, v) for g in ideal.generators)


def ideal_sum(a: MonomialIdeal, b: MonomialIdeal) -> MonomialIdeal:
    """The ideal generated by both generating sets, minimalized."""
    if a.ambient_dim != b.ambient_dim:
        raise DimensionMismatchError(
            f"cannot add ideals in {a.ambient_dim} and {b.ambient_dim} variables"
        )
    return MonomialIdeal(a.generators + b.generators, a.ambient_dim)


def pure_power_bounds(ideal: MonomialIdeal) -> tuple[int, ...] | None:
    """For each variable i, the least a with X_i^a among the generators.

    Returns None when some variable has no pure-power generator.  Presence
    of a full tuple is exactly the radical-equals-maximal-ideal condition.
    """
    bounds = []
    for i in range(ideal.ambient_dim):
        powers = [
            g[i]
            for g in ideal.generators
            if all(e == 0 for j, e in enumerate(g) if j != i)
        ]
        if not powers:
            return None
        bounds.append(min(powers))
    return tuple(bounds)


def is_m_primary(ideal: MonomialIdeal) -> bool:
    """True iff the ideal contains a power of every variable."""
    return pure_power_bounds(ideal) is not None


def krull_dimension(ideal: MonomialIdeal, ambient_dim: int) -> int:
    """Krull dimension of k[X_1..X_d]/ideal.

    Equals the largest size of a variable subset C such that no generator
    has support inside C; the zero ideal gives the full dimension d.
    """
    if ideal.ambient_dim != ambient_dim:
        raise DimensionMismatchError(
            f"ideal lives in {ideal.ambient_dim} variables, expected {ambient_dim}"
        )
    supports = [frozenset(i for i, e in enumerate(g) if e) for g in ideal.generators]
    if any(not s for s in supports):
        raise ValueError("unit ideal has no Krull dimension")
    for size in range(ambient_dim, -1, -1):
        for combo in itertools.combinations(range(ambient_dim), size):
            chosen = set(combo)
            if all(not s <= chosen for s in supports):
                return size
    raise AssertionError("unreachable: the empty subset always works")


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    f = 3
    while f * f <= p:
        if p % f == 0:
            return False
        f += 2
    return True


@dataclass(frozen=True)
class RingSpec:
    """A quotient k[X_1..X_d]/J of a polynomial ring by a monomial ideal,
    viewed as a local ring at the ideal of the variables.

    ``characteristic`` is 0 or a prime; ``quotient`` may be the zero ideal
    (the ring is then regular).  Every quotient generator must involve at
    least one variable, so the ring really is local with maximal ideal
    (X_1, ..., X_d).
    """

    characteristic: int
    dim_ambient: int
    quotient: MonomialIdeal

    def __post_init__(self):
        if self.characteristic != 0 and not _is_prime(self.characteristic):
            raise ValueError(
                f"characteristic must be 0 or prime, got {self.characteristic}"
            )
        if self.dim_ambient < 1:
            raise ValueError("need at least one variable")
        if self.quotient.ambient_dim != self.dim_ambient:
            raise DimensionMismatchError(
                "quotient ideal does not match the ambient variable count"
            )
        for g in self.quotient.generators:
            if sum(g) == 0:
                raise ValueError(
                    "quotient generator 1 found; the quotient must sit inside "
                    "the ideal of the variables"
                )

    @property
    def regular(self) -> bool:
        return self.quotient.is_zero

    @classmethod
    def polynomial(cls, characteristic: int, dim: int) -> "RingSpec":
        """The polynomial ring itself (zero quotient)."""
        return cls(characteristic, dim, MonomialIdeal((), dim))

    def maximal_ideal(self) -> MonomialIdeal:
        gens = tuple(
            tuple(1 if j == i else 0 for j in range(self.dim_ambient))
            for i in range(self.dim_ambient)
        )
        return MonomialIdeal(gens, self.dim_ambient)


def _finite_colength_data(ideal: MonomialIdeal, ring: RingSpec):
    total = ideal_sum(ideal, ring.quotient)
    bounds = pure_power_bounds(total)
    if bounds is None:
        raise NotFiniteLengthError(
            "quotient by the ideal is not finite dimensional: some variable "
            "has no pure power in the ideal"
        )
    return total, bounds


def colength(ideal: MonomialIdeal, ring: RingSpec) -> int:
    """Number of standard monomials of ideal + quotient, i.e. the k-dimension
    of the ring modulo the ideal.

    Computed by inclusion-exclusion over subsets of the minimal generators:
    inside the box cut out by the least pure powers (a_1, ..., a_d), the
    monomials divisible by the lcm of a subset number prod max(0, a_i - lcm_i).
    Subsets whose lcm already escapes the box are pruned with all their
    supersets.
    """
    total, bounds = _finite_colength_data(ideal, ring)
    gens = total.generators
    if len(gens) > INCLUSION_EXCLUSION_CAP:
        return colength_bruteforce(ideal, ring)
    d = total.ambient_dim
    acc = 0

    def visit(start: int, lcm: Vec, sign: int):
        nonlocal acc
        count = 1
        for a, l in zip(bounds, lcm):
            if l >= a:
                return  # every superset also counts zero monomials
            count *= a - l
        acc += sign * count
        for j in range(start, len(gens)):
            visit(j + 1, tuple(map(max, lcm, gens[j])), -sign)

    visit(0, (0,) * d, 1)
    return acc


def colength_bruteforce(ideal: MonomialIdeal, ring: RingSpec) -> int:
    """Independent oracle for colength: enumerate the pure-power box and
    count the monomials divisible by no generator."""
    total, bounds = _finite_colength_data(ideal, ring)
    gens = total.generators
    count = 0
    for v in itertools.product(*(range(b) for b in bounds)):
        for g in gens:
            if all(a <= b for a, b in zip(g, v)):
                break
        else:
            count += 1
    return count
