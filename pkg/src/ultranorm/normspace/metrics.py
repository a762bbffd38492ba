"""Successive minima, spectral measures, d_p distances and relative volume."""
from __future__ import annotations

from bisect import bisect_left, bisect_right
from dataclasses import dataclass
from decimal import Decimal, localcontext
from fractions import Fraction
from typing import Sequence

from ..errors import InvalidP, ModeError
from ..valfield import INF, as_rat
from .joint import joint_diagonalize, same_valuation
from .norms import DiagonalNorm, check_compatible

DECIMAL_DIGITS = 20


@dataclass(frozen=True)
class SpectralMeasure:
    """Uniform probability measure on a finite multiset of rational atoms.

    Atoms are kept sorted in decreasing order.
    """

    atoms: tuple

    def __post_init__(self):
        atoms = tuple(sorted((as_rat(x) for x in self.atoms), reverse=True))
        if not atoms:
            raise ValueError("a spectral measure needs at least one atom")
        object.__setattr__(self, "atoms", atoms)

    @property
    def size(self) -> int:
        return len(self.atoms)

    @property
    def mass(self) -> Fraction:
        return Fraction(1, len(self.atoms))

    def mean(self) -> Fraction:
        return sum(self.atoms, Fraction(0)) / len(self.atoms)

    def moment(self, p: int) -> Fraction:
        """``integral |x|^p``."""
        return sum((abs(x) ** p for x in self.atoms), Fraction(0)) / len(self.atoms)

    def cdf(self, x) -> Fraction:
        """``sigma((-inf, x])``."""
        asc = self._ascending
        return Fraction(bisect_right(asc, x), len(asc))

    def cdf_left(self, x) -> Fraction:
        """``sigma((-inf, x))``."""
        asc = self._ascending
        return Fraction(bisect_left(asc, x), len(asc))

    @property
    def _ascending(self) -> tuple:
        asc = self.__dict__.get("_asc")
        if asc is None:
            asc = tuple(reversed(self.atoms))
            self.__dict__["_asc"] = asc
        return asc

    def rescale(self, s) -> "SpectralMeasure":
        """Pushforward by ``x -> s*x``."""
        s = as_rat(s)
        return SpectralMeasure(tuple(s * x for x in self.atoms))


def _comparable(a: DiagonalNorm, b: DiagonalNorm) -> None:
    check_compatible(a, b)
    if not same_valuation(a, b):
        raise ModeError("successive minima need two norms or two filtrations")


def successive_minima(a: DiagonalNorm, b: DiagonalNorm) -> tuple:
    """``lambda_i = u_i - w_i`` on a joint basis, sorted decreasing."""
    _comparable(a, b)
    return tuple(sorted(joint_diagonalize(a, b).differences(), reverse=True))


def spectral_measure(a: DiagonalNorm, b: DiagonalNorm) -> SpectralMeasure:
    return SpectralMeasure(successive_minima(a, b))


def measure_pushforward(m: SpectralMeasure, kind: str, c=None) -> SpectralMeasure:
    """Pushforward by ``-x`` (``"negate"``), ``x + c`` (``"shift"``) or ``max(x, c)`` (``"clamp"``)."""
    if kind == "negate":
        return SpectralMeasure(tuple(-x for x in m.atoms))
    if c is None:
        raise ValueError(f"pushforward {kind!r} needs a constant")
    c = as_rat(c)
    if kind == "shift":
        return SpectralMeasure(tuple(x + c for x in m.atoms))
    if kind == "clamp":
        return SpectralMeasure(tuple(max(x, c) for x in m.atoms))
    raise ValueError(f"unknown pushforward {kind!r}")


def parse_p(p):
    """Normalise an exponent: a positive integer or ``INF``."""
    if isinstance(p, str) and p.strip().lower() in ("inf", "infinity", "oo"):
        return INF
    if isinstance(p, float) and p == INF:
        return INF
    try:
        q = as_rat(p)
    except Exception as exc:
        raise InvalidP(f"bad exponent {p!r}") from exc
    if q < 1:
        raise InvalidP(f"p must be >= 1, got {q}")
    if q.denominator != 1:
        raise InvalidP(f"only integer p is supported, got {q}")
    return int(q)


def dp_from_minima(lams: Sequence, p) -> Fraction:
    """d_p^p (finite p) or max |lambda| (p = inf) of a list of minima."""
    p = parse_p(p)
    if p == INF:
        return max(abs(x) for x in lams)
    return sum((abs(x) ** p for x in lams), Fraction(0)) / len(lams)


def dp_distance(a: DiagonalNorm, b: DiagonalNorm, p) -> Fraction:
    """Exact ``d_p(a, b)^p`` for integer ``p``; ``d_inf(a, b)`` for ``p = inf``."""
    p = parse_p(p)
    return dp_from_minima(successive_minima(a, b), p)


def d_inf(a: DiagonalNorm, b: DiagonalNorm) -> Fraction:
    return dp_distance(a, b, INF)


def d_one(a: DiagonalNorm, b: DiagonalNorm) -> Fraction:
    return dp_distance(a, b, 1)


def volume(a: DiagonalNorm, b: DiagonalNorm) -> Fraction:
    """Mean of the successive minima."""
    lams = successive_minima(a, b)
    return sum(lams, Fraction(0)) / len(lams)


def norms_equal(a: DiagonalNorm, b: DiagonalNorm) -> bool:
    """Same function on V, whatever the presentations."""
    return d_inf(a, b) == 0


def max_norm(a: DiagonalNorm, b: DiagonalNorm) -> DiagonalNorm:
    """Pointwise maximum ``a v b`` (weightwise minimum on a joint basis)."""
    check_compatible(a, b)
    if a.mode != b.mode:
        raise ModeError("max_norm needs two norms of the same mode")
    jp = joint_diagonalize(a, b)
    return DiagonalNorm(a.field, a.mode, jp.basis, tuple(min(u, w) for u, w in jp.pairs))


# --- measure comparisons ----------------------------------------------------


def sup_cdf_distance(m1: SpectralMeasure, m2: SpectralMeasure) -> Fraction:
    """Kolmogorov distance ``sup_x |F1(x) - F2(x)|`` between two atomic measures."""
    points = set(m1.atoms) | set(m2.atoms)
    return max(abs(m1.cdf(x) - m2.cdf(x)) for x in points)


def sup_cdf_distance_uniform(m: SpectralMeasure, lo=0, hi=1) -> Fraction:
    """Kolmogorov distance from ``m`` to Lebesgue measure on ``[lo, hi]``."""
    lo, hi = as_rat(lo), as_rat(hi)
    if hi <= lo:
        raise ValueError("empty interval")

    def F(x):
        return min(max((x - lo) / (hi - lo), Fraction(0)), Fraction(1))

    best = Fraction(0)
    for x in set(m.atoms):
        best = max(best, abs(m.cdf(x) - F(x)), abs(m.cdf_left(x) - F(x)))
    return best


# --- decimal rendering ------------------------------------------------------


def to_decimal(x, digits: int = DECIMAL_DIGITS) -> str:
    if x == INF:
        return "inf"
    x = as_rat(x)
    with localcontext() as ctx:
        ctx.prec = digits
        return str(Decimal(x.numerator) / Decimal(x.denominator))


def root_decimal(power, p, digits: int = DECIMAL_DIGITS) -> str:
    """Decimal rendering of ``power ** (1/p)``."""
    p = parse_p(p)
    if p == INF or p == 1:
        return to_decimal(power, digits)
    power = as_rat(power)
    if power == 0:
        return "0"
    with localcontext() as ctx:
        ctx.prec = digits + 10
        d = Decimal(power.numerator) / Decimal(power.denominator)
        r = (d.ln() / p).exp()
        ctx.prec = digits
        return str(+r)


__all__ = [
    "SpectralMeasure",
    "d_inf",
    "d_one",
    "dp_distance",
    "dp_from_minima",
    "max_norm",
    "measure_pushforward",
    "norms_equal",
    "parse_p",
    "root_decimal",
    "spectral_measure",
    "successive_minima",
    "sup_cdf_distance",
    "sup_cdf_distance_uniform",
    "to_decimal",
    "volume",
]
