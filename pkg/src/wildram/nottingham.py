"""Wild automorphisms ``x + a_2 x**2 + ...`` and their break sequences."""
from __future__ import annotations

import enum
import json
import math
from dataclasses import asdict, dataclass, field
from fractions import Fraction

from .power_series import (
    PrecisionExhausted,
    Series,
    is_exhausted,
    ps_comp_inverse,
    ps_compose,
    ps_valuation,
)


class Automorphism:
    """A series ``sigma(x) = x + O(x**2)`` viewed as an automorphism of k((x))."""

    __slots__ = ("series",)

    def __init__(self, series: Series):
        if any(series.coord(0)):
            raise ValueError("automorphism must have zero constant term")
        if series.precision >= 1 and series.coord(1) != series.ring.one_coords():
            raise ValueError("wild automorphism must have linear coefficient 1")
        self.series = series

    @classmethod
    def identity(cls, ring, precision: int) -> "Automorphism":
        return cls(Series.identity(ring, precision))

    @classmethod
    def from_dict(cls, ring, terms: dict, precision: int) -> "Automorphism":
        return cls(Series.from_dict(ring, {1: 1, **terms}, precision))

    @property
    def ring(self):
        return self.series.ring

    @property
    def p(self) -> int:
        return self.series.ring.p

    @property
    def precision(self) -> int:
        return self.series.precision

    def __matmul__(self, other: "Automorphism") -> "Automorphism":
        return compose(self, other)

    def __pow__(self, k: int) -> "Automorphism":
        return group_power(self, k)

    def inverse(self) -> "Automorphism":
        return Automorphism(ps_comp_inverse(self.series))

    def truncate(self, precision: int) -> "Automorphism":
        return Automorphism(self.series.truncate(precision))

    def __eq__(self, other):
        return isinstance(other, Automorphism) and self.series == other.series

    def __hash__(self):
        return hash(self.series)

    def __repr__(self):
        return f"Automorphism({self.series!r})"


def compose(sigma: Automorphism, tau: Automorphism) -> Automorphism:
    """The series ``sigma(tau(x))``."""
    return Automorphism(ps_compose(sigma.series, tau.series))


def depth_i(sigma: Automorphism):
    """``i(sigma) = v_x(sigma(x)/x - 1)``, or :class:`PrecisionExhausted`."""
    s = sigma.series
    v = ps_valuation(s - Series.identity(s.ring, s.precision))
    if is_exhausted(v):
        return v
    return v - 1


def group_power(sigma: Automorphism, k: int) -> Automorphism:
    """``k``-fold composition of ``sigma`` by binary powering; negative ``k`` inverts."""
    if k < 0:
        return group_power(sigma.inverse(), -k)
    result = Automorphism.identity(sigma.ring, sigma.precision)
    base = sigma
    first = True
    while k:
        if k & 1:
            result = base if first else compose(result, base)
            first = False
        k >>= 1
        if k:
            base = compose(base, base)
    return result


def combination(sigma: Automorphism, tau: Automorphism, a: int, b: int) -> Automorphism:
    """``sigma**a`` composed with ``tau**b``."""
    if a == 0:
        return group_power(tau, b)
    if b == 0:
        return group_power(sigma, a)
    return compose(group_power(sigma, a), group_power(tau, b))


@dataclass
class BreakSequence:
    """Certified values ``i_0 < i_1 < ... < i_t`` of ``i_n = i(sigma**(p**n))``."""

    p: int
    values: list[int]
    precision_used: int
    certified_to: int = field(default=None)

    def __post_init__(self):
        self.values = [int(v) for v in self.values]
        if self.certified_to is None:
            self.certified_to = len(self.values) - 1
        if self.certified_to != len(self.values) - 1:
            raise ValueError("certified_to must index the last value")
        if any(b <= a for a, b in zip(self.values, self.values[1:])):
            raise ValueError(f"break sequence {self.values} is not strictly increasing")

    def __len__(self):
        return len(self.values)

    def __getitem__(self, n):
        return self.values[n]

    def to_record(self) -> dict:
        return asdict(self)

    def to_text(self) -> str:
        return json.dumps(self.to_record())

    @classmethod
    def from_record(cls, rec: dict) -> "BreakSequence":
        return cls(p=rec["p"], values=rec["values"], precision_used=rec["precision_used"],
                   certified_to=rec.get("certified_to"))

    @classmethod
    def from_text(cls, text: str) -> "BreakSequence":
        return cls.from_record(json.loads(text))


def i_sequence(sigma: Automorphism, n_max: int, p: int | None = None) -> BreakSequence:
    """Break sequence up to ``n_max``; stops early when precision runs out.

    ``i_n`` is kept only if its witnessing coefficient (degree ``i_n + 1``)
    lies within the stored precision, so every returned value is exact.
    """
    if n_max < 0:
        raise ValueError("n_max must be >= 0")
    p = p or sigma.p
    values = []
    cur = sigma
    for n in range(n_max + 1):
        d = depth_i(cur)
        if is_exhausted(d):
            break
        values.append(d)
        if n < n_max:
            cur = group_power(cur, p)
    return BreakSequence(p=p, values=values, precision_used=sigma.precision)


@dataclass
class SenReport:
    passed: bool
    checked: int
    violation: dict | None = None


def sen_check(seq: BreakSequence) -> SenReport:
    """Check ``i_{n+1} = i_n (mod p**(n+1))`` on consecutive certified pairs."""
    vals, p = seq.values, seq.p
    if len(vals) < 2:
        raise ValueError("Sen check needs at least two certified values")
    for n in range(len(vals) - 1):
        mod = p ** (n + 1)
        if (vals[n + 1] - vals[n]) % mod:
            return SenReport(False, n + 1, {"n": n, "i_n": vals[n], "i_n+1": vals[n + 1], "modulus": mod})
    return SenReport(True, len(vals) - 1)


@dataclass
class HeightProfile:
    ratios: list[Fraction]
    log_ratios: list[float]


def height_profile(seq: BreakSequence) -> HeightProfile:
    """Exact ratios ``i_n / i_{n-1}`` and their base-p logarithms (display only)."""
    vals = seq.values
    if len(vals) < 2:
        raise ValueError("height profile needs at least two certified values")
    ratios = [Fraction(b, a) for a, b in zip(vals, vals[1:])]
    return HeightProfile(ratios, [math.log(float(r), seq.p) for r in ratios])


class CharClass(enum.Enum):
    CHAR0 = "Char0"
    CHARP = "CharP"
    INCONCLUSIVE = "Inconclusive"

    def __str__(self):
        return self.value


@dataclass
class Classification:
    label: CharClass
    evidence: list[dict]
    window_start: int

    def to_record(self) -> dict:
        return {"class": str(self.label), "window_start": self.window_start, "evidence": self.evidence}


def difference_ratios(values: list[int]) -> list[Fraction | None]:
    """``(i_{n+1} - i_n)/(i_n - i_{n-1})`` indexed by ``n`` (entry 0 is None)."""
    out: list[Fraction | None] = [None]
    for n in range(1, len(values) - 1):
        out.append(Fraction(values[n + 1] - values[n], values[n] - values[n - 1]))
    return out


def char_classify_rank1(seq: BreakSequence, window_start: int = 1) -> Classification:
    """Height-1 test on a single break sequence.

    Char0 when the difference ratio is exactly ``p`` for every certified
    ``n >= window_start``; otherwise CharP when some pair satisfies
    ``i_{n+1} >= (p**2 - p + 1) i_n``; otherwise Inconclusive.
    """
    vals, p = seq.values, seq.p
    if len(vals) < 3:
        raise ValueError("rank-1 classification needs at least three certified values")
    window_start = max(1, window_start)
    ratios = difference_ratios(vals)
    windows = [{"n": n, "ratio": str(ratios[n])} for n in range(window_start, len(vals) - 1)]
    if windows and all(ratios[n] == p for n in range(window_start, len(vals) - 1)):
        return Classification(CharClass.CHAR0, windows, window_start)
    bound = p * p - p + 1
    witnesses = [
        {"n": n, "i_n": vals[n], "i_n+1": vals[n + 1], "bound": bound * vals[n]}
        for n in range(len(vals) - 1)
        if vals[n + 1] >= bound * vals[n]
    ]
    if witnesses:
        return Classification(CharClass.CHARP, witnesses, window_start)
    return Classification(CharClass.INCONCLUSIVE, windows, window_start)


@dataclass
class RamIndex:
    e: Fraction
    consistent: bool
    per_window: list[Fraction]
    window_start: int

    def to_record(self) -> dict:
        return {"e": str(self.e), "consistent": self.consistent,
                "per_window": [str(x) for x in self.per_window], "window_start": self.window_start}


def ram_index_rank1(seq: BreakSequence, window_start: int = 1) -> RamIndex:
    """``e = (i_{n+1} - i_n) / p**(n+1)`` on the last certified window.

    ``consistent`` is False when that value is not a positive integer or the
    windows from ``window_start - 1`` on disagree.
    """
    cls = char_classify_rank1(seq, window_start)
    if cls.label is not CharClass.CHAR0:
        raise ValueError(f"ramification index needs a Char0 sequence, got {cls.label}")
    vals, p = seq.values, seq.p
    start = max(0, window_start - 1)
    per = [Fraction(vals[n + 1] - vals[n], p ** (n + 1)) for n in range(start, len(vals) - 1)]
    e = per[-1]
    consistent = e.denominator == 1 and e > 0 and all(x == e for x in per)
    return RamIndex(e, consistent, per, window_start)


def closed_form_rank1(i_m: int, m: int, n: int, e, p: int) -> Fraction:
    """``i_n = i_m + (e p/(p-1)) (p**n - p**m)`` for a height-1 sequence."""
    return i_m + Fraction(e) * p / (p - 1) * (p**n - p**m)


__all__ = [
    "Automorphism", "BreakSequence", "CharClass", "Classification", "HeightProfile",
    "PrecisionExhausted", "RamIndex", "SenReport", "char_classify_rank1", "closed_form_rank1",
    "combination", "compose", "depth_i", "difference_ratios", "group_power", "height_profile",
    "i_sequence", "ram_index_rank1", "sen_check",
]
