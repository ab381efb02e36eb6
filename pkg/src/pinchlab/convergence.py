"""Pinched-surface families and their convergence functionals.

A level-N surface with its cusps replaced by paired geodesics of length t
carries an arithmetic ladder of short geodesics k*t. This module builds that
family, evaluates the two convergence criteria on it (the normalized
spectral-side sum and the simple-geodesic count ratio), certifies huge ladder
sums, and classifies pinch schedules by the trend of the criteria.
"""

from __future__ import annotations

import math
import sys
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .certified import CertifiedValue
from .congruence import surface_data
from .errors import DomainError, NumericsError, ValidityError
from .hyperbolic import crossing_length_bound, length_from_trace

# Decimal-intended floats get a 1e-12 relative grace at the cutoff, so a
# ladder with t = 0.2, R = 1 has five rungs even though float(0.2) > 1/5.
_CUTOFF_SLACK = Fraction(1, 10**12)
_EXACT_LIMIT = 10**7  # largest ladder summed term by term on the auto path
_HEAD_COUNT = 10**6  # exact head length in front of the certified tail
_MIN_PINCH = 1e-300  # certified tail formulas need t*t representable


def _as_int(name: str, x) -> int:
    if isinstance(x, bool) or int(x) != x:
        raise DomainError(f"{name} must be an integer, got {x!r}")
    return int(x)


def _validate_pinch(t) -> float:
    t = float(t)
    if not (math.isfinite(t) and t > 0.0):
        raise DomainError(f"pinch length must be a positive finite real, got {t!r}")
    if t < _MIN_PINCH:
        raise DomainError(
            f"pinch length {t!r} is below the representable floor {_MIN_PINCH}; "
            "a schedule rule has likely underflowed"
        )
    return t


def _validate_radius(r) -> float:
    r = float(r)
    if not (math.isfinite(r) and r > 0.0):
        raise DomainError(f"radius must be a positive finite real, got {r!r}")
    return r


@dataclass(frozen=True)
class CompactedSurface:
    """The closed surface obtained by trading every cusp for a pinched geodesic."""

    level: int
    pinch_length: float
    pinched_count: int
    genus: int
    volume: float


@dataclass(frozen=True)
class GeodesicClass:
    """One length-spectrum entry: total length, primitive length, multiplicity."""

    length: float
    primitive_length: float
    multiplicity: int

    def __post_init__(self) -> None:
        if not (math.isfinite(self.primitive_length) and self.primitive_length > 0.0):
            raise DomainError(f"primitive_length must be positive, got {self.primitive_length!r}")
        if isinstance(self.multiplicity, bool) or int(self.multiplicity) != self.multiplicity:
            raise DomainError(f"multiplicity must be an integer, got {self.multiplicity!r}")
        if self.multiplicity < 1:
            raise DomainError(f"multiplicity must be >= 1, got {self.multiplicity!r}")
        ratio = self.length / self.primitive_length
        k = round(ratio)
        if k < 1 or abs(ratio - k) > 1e-9 * k:
            raise DomainError(
                f"length {self.length!r} is not a positive integer multiple of "
                f"primitive_length {self.primitive_length!r}"
            )


def _ladder_count(t: float, radius: float) -> int:
    q = Fraction(radius) * (1 + _CUTOFF_SLACK) / Fraction(t)
    return math.floor(q)


class PinchLadder:
    """Lazy ladder of geodesic classes with lengths k*t, k = 1..count.

    Indexing and iteration produce genuine GeodesicClass records; ``count``
    may exceed anything a materialized list (or ``len``) could hold, so the
    summation routines consume the ladder arithmetically.
    """

    __slots__ = ("pinch_length", "radius", "multiplicity", "count")

    def __init__(self, pinch_length: float, radius: float, multiplicity: int) -> None:
        t = _validate_pinch(pinch_length)
        r = _validate_radius(radius)
        m = _as_int("multiplicity", multiplicity)
        if m < 1:
            raise DomainError(f"multiplicity must be >= 1, got {m}")
        self.pinch_length = t
        self.radius = r
        self.multiplicity = m
        self.count = _ladder_count(t, r)

    def __len__(self) -> int:
        if self.count > sys.maxsize:
            raise OverflowError(f"ladder has {self.count} rungs; use .count")
        return self.count

    def __getitem__(self, k: int) -> GeodesicClass:
        if isinstance(k, bool) or int(k) != k:
            raise TypeError(f"ladder indices must be integers, got {k!r}")
        k = int(k)
        if k < 0:
            k += self.count
        if not 0 <= k < self.count:
            raise IndexError(f"ladder index {k} out of range for {self.count} rungs")
        return GeodesicClass(
            length=(k + 1) * self.pinch_length,
            primitive_length=self.pinch_length,
            multiplicity=self.multiplicity,
        )

    def __iter__(self):
        for k in range(self.count):
            yield GeodesicClass(
                length=(k + 1) * self.pinch_length,
                primitive_length=self.pinch_length,
                multiplicity=self.multiplicity,
            )

    def __repr__(self) -> str:
        return (
            f"PinchLadder(pinch_length={self.pinch_length!r}, radius={self.radius!r}, "
            f"multiplicity={self.multiplicity}, count={self.count})"
        )


def compacted_surface(level, pinch_length) -> CompactedSurface:
    """Record of the closed surface with cusps of level N traded for paired
    geodesics of length t: pinched_count = cusps/2, genus gains one handle per
    pair, and the volume matches the cusped area pi*d/6 exactly."""
    t = _validate_pinch(pinch_length)
    sd = surface_data(level)
    pairs = sd.cusps // 2
    genus = sd.genus + pairs
    # Euler characteristic of the gluing: index = 24*(genus - 1), exactly
    if sd.index_d != 24 * (genus - 1):
        raise NumericsError(
            f"volume bookkeeping failed at level {sd.level}: d = {sd.index_d}, genus = {genus}"
        )
    return CompactedSurface(
        level=sd.level,
        pinch_length=t,
        pinched_count=pairs,
        genus=genus,
        volume=math.pi * (sd.index_d / 6.0),
    )


def other_geodesic_floor(level, pinch_length) -> float:
    """Minimum of the three lower bounds for any closed geodesic that is not a
    power of a pinched one: the crossing bound, the distorted simple-geodesic
    bound, and the distorted figure-eight bound."""
    n = _as_int("level", level)
    if n < 3:
        raise DomainError(f"level must be >= 3, got {n}")
    t = _validate_pinch(pinch_length)
    if t >= 0.5:
        raise DomainError(
            f"pinch length must be < 1/2 for the distortion bound to apply, got {t!r}"
        )
    half_sys = 0.5 * length_from_trace(n * n - 2)
    distort = 1.0 + 1.25 * t * t
    crossing = crossing_length_bound(t)
    simple_far = half_sys / distort
    figure_eight = 2.0 * half_sys / distort  # never the minimum, kept for the record
    return min(crossing, simple_far, figure_eight)


def validity_check(level, pinch_length, radius) -> bool:
    """True iff every closed geodesic of length <= radius is a power of a
    pinched geodesic, so the ladder below is the complete short spectrum."""
    r = _validate_radius(radius)
    return other_geodesic_floor(level, pinch_length) > r


def short_spectrum(level, pinch_length, radius) -> PinchLadder:
    """Complete length spectrum up to ``radius`` as a lazy ladder.

    Raises ValidityError outside the certified radius; use pinch_ladder for
    the raw ladder without the completeness claim.
    """
    floor = other_geodesic_floor(level, pinch_length)
    r = _validate_radius(radius)
    if not floor > r:
        raise ValidityError(
            f"radius {r} is not below the guaranteed floor {floor:.6g} for level "
            f"{level}, t = {pinch_length}; the ladder would be incomplete"
        )
    pairs = surface_data(level).cusps // 2
    return PinchLadder(pinch_length, r, pairs)


def pinch_ladder(pinch_length, radius, multiplicity) -> PinchLadder:
    """The raw arithmetic ladder, with no claim that it exhausts the spectrum."""
    return PinchLadder(pinch_length, radius, multiplicity)


def _ladder_exact(t: float, k_hi: int) -> tuple[float, float]:
    """Sum of t/sinh(k t/2) for k = 1..k_hi by chunked vectorized summation."""
    chunk = 2_000_000
    parts = []
    for start in range(1, k_hi + 1, chunk):
        k = np.arange(start, min(start + chunk - 1, k_hi) + 1, dtype=float)
        y = 0.5 * t * k
        small = y < 1e-8
        terms = np.where(small, 2.0 / k, t / np.sinh(np.where(small, 1.0, y)))
        parts.append(float(np.sum(terms)))
    value = math.fsum(parts)
    # pairwise chunk sums keep the roundoff near machine level; padded estimate
    return value, 5e-15 * value


def _ladder_tail(t: float, k_lo: int, k_hi: int) -> tuple[float, float]:
    """Certified sum of t/sinh(k t/2) for k = k_lo..k_hi via the midpoint
    Euler-Maclaurin form; the antiderivative is 2 log tanh(x t/4)."""
    lo = k_lo - 0.5
    hi = k_hi + 0.5
    value = 2.0 * (math.log(math.tanh(0.25 * t * hi)) - math.log(math.tanh(0.25 * t * lo)))
    # midpoint cells: |sum - integral| <= (|f'(lo)| + f''(lo))/24 for convex f
    y0 = 0.5 * t * lo
    if y0 < 1e-6:
        fp = 2.0 / (lo * lo) * 1.001
        fpp = 4.0 / (lo * lo * lo) * 1.001
    else:
        ch = math.cosh(y0)
        sh = math.sinh(y0)
        fp = 0.5 * t * t * ch / (sh * sh)
        fpp = 0.25 * t * t * t * (ch * ch + 1.0) / (sh * sh * sh)
    radius = (fp + fpp) / 24.0 + 1e-15 * abs(value)
    return value, radius


def _ladder_plancherel(t: float, count: int, multiplicity: int, method: str) -> CertifiedValue:
    if count == 0:
        return CertifiedValue(0.0, 0.0)
    if method not in ("auto", "exact", "bracket"):
        raise DomainError(f"method must be auto, exact, or bracket, got {method!r}")
    use_exact = method == "exact" or (method == "auto" and count <= _EXACT_LIMIT)
    if use_exact:
        if count > 10**8:
            raise NumericsError(
                f"exact summation of {count} terms refused; use the bracket path"
            )
        value, radius = _ladder_exact(t, count)
    else:
        if count <= _HEAD_COUNT:
            value, radius = _ladder_exact(t, count)
        else:
            head, head_radius = _ladder_exact(t, _HEAD_COUNT)
            tail, tail_radius = _ladder_tail(t, _HEAD_COUNT + 1, count)
            value = head + tail
            radius = head_radius + tail_radius + 2e-16 * abs(value)
    return CertifiedValue(multiplicity * value, multiplicity * radius + 2e-16 * multiplicity * value)


def plancherel_sum(spectrum, radius, *, method: str = "auto") -> CertifiedValue:
    """Spectral-criterion sum over the given classes: multiplicity *
    primitive_length / sinh(length/2), with a certified error radius.

    Ladders above 10^7 rungs are summed as an exact head plus an
    integral-certified tail; the radius stays below 1e-9 relative. Explicit
    class lists are summed term by term.
    """
    r = _validate_radius(radius)
    grace = r * (1.0 + 1e-12)
    if isinstance(spectrum, PinchLadder):
        if spectrum.count > 0 and spectrum.count * spectrum.pinch_length > grace + spectrum.pinch_length * 1e-9:
            raise DomainError(
                f"ladder reaches {spectrum.count * spectrum.pinch_length!r}, beyond radius {r!r}"
            )
        return _ladder_plancherel(spectrum.pinch_length, spectrum.count, spectrum.multiplicity, method)
    terms = []
    for cls in spectrum:
        if cls.length > grace:
            raise DomainError(f"class length {cls.length!r} exceeds radius {r!r}")
        y = 0.5 * cls.length
        if y > 350.0:
            s = math.exp(y - math.log(2.0))  # sinh to machine precision, overflow-safe
        elif y < 1e-8:
            s = y * (1.0 + y * y / 6.0)
        else:
            s = math.sinh(y)
        terms.append(cls.multiplicity * cls.primitive_length / s)
    value = math.fsum(terms)
    return CertifiedValue(value, 3e-16 * math.fsum(abs(x) for x in terms))


def plancherel_normalized(level, pinch_length, radius) -> CertifiedValue:
    """The criterion sum over the complete short spectrum divided by the
    surface volume; the quantity that must vanish along a convergent family."""
    ladder = short_spectrum(level, pinch_length, radius)
    vol = compacted_surface(level, pinch_length).volume
    s = plancherel_sum(ladder, radius)
    return CertifiedValue(float(s) / vol, s.radius / vol + 2e-16 * abs(float(s)) / vol)


def bs_ratio(level, pinch_length, radius) -> float:
    """Count of simple closed geodesics up to ``radius`` divided by volume.

    Inside the validity radius the count is exactly the number of pinched
    pairs, and the ratio collapses to 3/(2 pi N); returns 0 when even the
    pinched geodesics are longer than the radius.
    """
    n = _as_int("level", level)
    r = _validate_radius(radius)
    floor = other_geodesic_floor(n, pinch_length)
    if not floor > r:
        raise ValidityError(
            f"radius {r} is not below the guaranteed floor {floor:.6g}; "
            "the simple-geodesic count is not certified"
        )
    if float(pinch_length) > r:
        return 0.0
    return 3.0 / (2.0 * math.pi * n)


def harmonic_sum(n) -> float:
    """H_n, exactly summed up to 10^8 terms, then by the asymptotic expansion
    ln n + gamma + 1/(2n) - 1/(12 n^2), whose error is below 1/(120 n^4)."""
    n = _as_int("n", n)
    if n < 1:
        raise DomainError(f"n must be >= 1, got {n}")
    if n <= 10**8:
        chunk = 5_000_000
        parts = []
        for start in range(1, n + 1, chunk):
            k = np.arange(start, min(start + chunk - 1, n) + 1, dtype=float)
            parts.append(float(np.sum(1.0 / k)))
        return math.fsum(parts)
    inv = 1.0 / n
    return math.log(n) + float(np.euler_gamma) + 0.5 * inv - inv * inv / 12.0


def sandwich_bounds(level, pinch_length, radius) -> tuple[float, float]:
    """Explicit-constant bracket for the ladder criterion sum:

    lower = (R/sinh(R/2)) * pairs * |log t|, from term-by-term monotonicity of
    x/sinh(x/2) and the harmonic sum exceeding log(R/t); upper = 2 * pairs *
    (log(R/t) + 1), from x <= sinh(x) and the harmonic sum below log n + 1.
    Pure ladder inequalities: no completeness claim about the spectrum is
    needed, so only t < min(1, R) and R >= 1 are required.
    """
    n = _as_int("level", level)
    if n < 3:
        raise DomainError(f"level must be >= 3, got {n}")
    t = _validate_pinch(pinch_length)
    r = float(radius)
    if not (math.isfinite(r) and r >= 1.0):
        raise DomainError(f"radius must be >= 1 for the explicit constants, got {radius!r}")
    if not t < 1.0:
        raise DomainError(f"pinch length must be < min(1, radius) = 1, got {t!r}")
    pairs = surface_data(n).cusps // 2
    if r > 700.0:
        factor = 2.0 * r * math.exp(-0.5 * r)
    else:
        factor = r / math.sinh(0.5 * r)
    lower = factor * pairs * (-math.log(t))
    upper = 2.0 * pairs * (math.log(r / t) + 1.0)
    return lower, upper


_RULES = {
    "reciprocal": lambda n: 1.0 / n,
    "exponential": lambda n: math.exp(-float(n)),
    "superexponential": lambda n: math.exp(-float(n * n)),
}


@dataclass(frozen=True)
class Schedule:
    """A named sequence of (level, pinch length) pairs with t nonincreasing."""

    name: str
    levels: tuple[int, ...]
    pinch_lengths: tuple[float, ...]
    rule: str = "explicit"

    def __post_init__(self) -> None:
        if not isinstance(self.name, str) or not self.name:
            raise DomainError(f"schedule name must be a nonempty string, got {self.name!r}")
        if not self.levels:
            raise DomainError("schedule must contain at least one level")
        levels = tuple(_as_int("level", n) for n in self.levels)
        for n in levels:
            if n < 3:
                raise DomainError(f"levels must be >= 3, got {n}")
        if any(b <= a for a, b in zip(levels, levels[1:])):
            raise DomainError("levels must be strictly increasing")
        if len(self.pinch_lengths) != len(levels):
            raise DomainError(
                f"{len(self.pinch_lengths)} pinch lengths for {len(levels)} levels"
            )
        pinch = tuple(_validate_pinch(t) for t in self.pinch_lengths)
        if any(b > a for a, b in zip(pinch, pinch[1:])):
            raise DomainError("pinch lengths must be nonincreasing")
        object.__setattr__(self, "levels", levels)
        object.__setattr__(self, "pinch_lengths", pinch)

    @classmethod
    def from_rule(cls, name: str, levels, rule: str) -> "Schedule":
        if rule not in _RULES:
            raise DomainError(
                f"unknown pinch rule {rule!r}; expected one of {sorted(_RULES)} or explicit lengths"
            )
        levels = tuple(levels)
        pinch = tuple(_RULES[rule](_as_int("level", n)) for n in levels)
        return cls(name=name, levels=levels, pinch_lengths=pinch, rule=rule)

    @classmethod
    def explicit(cls, name: str, levels, pinch_lengths) -> "Schedule":
        return cls(
            name=name,
            levels=tuple(levels),
            pinch_lengths=tuple(pinch_lengths),
            rule="explicit",
        )


@dataclass(frozen=True)
class ScheduleRow:
    """One evaluated schedule entry; criterion fields are NaN on invalid rows.

    ``lower`` and ``upper`` are the sandwich bounds divided by the surface
    volume, so they bracket ``pl_norm`` directly.
    """

    j: int
    level: int
    pinch: float
    b_pairs: int
    genus: int
    volume: float
    bs_ratio: float
    pl_sum: float
    pl_sum_radius: float
    pl_norm: float
    lower: float
    upper: float
    valid: bool


@dataclass(frozen=True)
class ScheduleReport:
    schedule_name: str
    radius: float
    rows: tuple[ScheduleRow, ...]
    plancherel_verdict: str
    bs_verdict: str


def _trend(values: list[float]) -> str:
    if len(values) < 4:
        return "inconclusive"
    tail = values[len(values) // 2 :]
    if all(b > a for a, b in zip(tail, tail[1:])):
        return "divergent"
    if values[-1] < 0.5 * values[len(values) // 3]:
        return "vanishing"
    return "bounded away from zero"


def classify_schedule(schedule: Schedule, radius, j_max) -> ScheduleReport:
    """Evaluate both criteria along a schedule and attach trend verdicts.

    Rows whose pinch length defeats the validity floor are flagged rather
    than fatal; their criterion fields are NaN.
    """
    r = _validate_radius(radius)
    j_cap = _as_int("j_max", j_max)
    if j_cap < 1:
        raise DomainError(f"j_max must be >= 1, got {j_cap}")
    rows = []
    nan = math.nan
    for j in range(1, min(j_cap, len(schedule.levels)) + 1):
        n = schedule.levels[j - 1]
        t = schedule.pinch_lengths[j - 1]
        sd = surface_data(n)
        pairs = sd.cusps // 2
        surface = compacted_surface(n, t)
        valid = t < 0.5 and other_geodesic_floor(n, t) > r
        if valid:
            s = plancherel_sum(PinchLadder(t, r, pairs), r)
            norm = float(s) / surface.volume
            ratio = 0.0 if t > r else 3.0 / (2.0 * math.pi * n)
            if r >= 1.0 and t < 1.0:
                lo, up = sandwich_bounds(n, t, r)
                lower, upper = lo / surface.volume, up / surface.volume
            else:
                lower, upper = nan, nan
            rows.append(
                ScheduleRow(
                    j=j, level=n, pinch=t, b_pairs=pairs, genus=surface.genus,
                    volume=surface.volume, bs_ratio=ratio, pl_sum=float(s),
                    pl_sum_radius=s.radius, pl_norm=norm, lower=lower, upper=upper,
                    valid=True,
                )
            )
        else:
            rows.append(
                ScheduleRow(
                    j=j, level=n, pinch=t, b_pairs=pairs, genus=surface.genus,
                    volume=surface.volume, bs_ratio=nan, pl_sum=nan,
                    pl_sum_radius=nan, pl_norm=nan, lower=nan, upper=nan,
                    valid=False,
                )
            )
    norms = [row.pl_norm for row in rows if row.valid]
    bs_verdict = "vanishing" if len(rows) >= 2 else "inconclusive"
    return ScheduleReport(
        schedule_name=schedule.name,
        radius=r,
        rows=tuple(rows),
        plancherel_verdict=_trend(norms),
        bs_verdict=bs_verdict,
    )
