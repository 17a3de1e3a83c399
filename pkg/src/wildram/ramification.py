"""Ramification data for closed subgroups ``<sigma>`` and ``<sigma, tau>``.

Lower breaks come from depths ``i(g)``; the Hasse-Herbrand function
``phi(r) = integral_0^r dt / [G : G[t]]`` is kept as an exact rational
piecewise-linear function.  Labels derived from finitely many terms
(depth, characteristic) always record the window they were read from.
"""
from __future__ import annotations

import enum
import json
import math
from bisect import bisect_right
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product

from .nottingham import (
    Automorphism,
    BreakSequence,
    CharClass,
    Classification,
    compose,
    depth_i,
    difference_ratios,
    group_power,
    i_sequence,
)
from .power_series import is_exhausted


# ---------------------------------------------------------------------------
# Hasse-Herbrand functions


@dataclass(frozen=True)
class PiecewiseLinearFn:
    """Continuous increasing piecewise-linear map; ``slopes[k]`` applies right of ``knots[k]``."""

    knots: tuple[tuple[Fraction, Fraction], ...]
    slopes: tuple[Fraction, ...]

    def __post_init__(self):
        if not self.knots or self.knots[0] != (0, 0):
            raise ValueError("a Hasse-Herbrand function starts at (0, 0)")
        if len(self.slopes) != len(self.knots):
            raise ValueError("need one slope per knot (the last one extends to infinity)")
        xs = [k[0] for k in self.knots]
        if any(b <= a for a, b in zip(xs, xs[1:])):
            raise ValueError("knot abscissas must increase strictly")
        if any(s <= 0 for s in self.slopes):
            raise ValueError("slopes must be positive")
        for (x0, y0), (x1, y1), s in zip(self.knots, self.knots[1:], self.slopes):
            if y0 + s * (x1 - x0) != y1:
                raise ValueError("knots are inconsistent with slopes")

    def __call__(self, r) -> Fraction:
        r = Fraction(r)
        if r < 0:
            raise ValueError("defined for r >= 0 only")
        k = bisect_right([x for x, _ in self.knots], r) - 1
        x, y = self.knots[k]
        return y + self.slopes[k] * (r - x)

    def inverse(self) -> "PiecewiseLinearFn":
        return PiecewiseLinearFn(tuple((y, x) for x, y in self.knots), tuple(1 / s for s in self.slopes))

    def is_concave(self) -> bool:
        return all(b <= a for a, b in zip(self.slopes, self.slopes[1:]))

    def to_record(self) -> dict:
        return {"knots": [[str(x), str(y)] for x, y in self.knots], "slopes": [str(s) for s in self.slopes]}


def psi_eval(f: PiecewiseLinearFn, r) -> Fraction:
    """Evaluate the inverse of ``f`` at ``r``."""
    r = Fraction(r)
    if r < 0:
        raise ValueError("psi is defined for r >= 0 only")
    k = bisect_right([y for _, y in f.knots], r) - 1
    x, y = f.knots[k]
    return x + (r - y) / f.slopes[k]


# ---------------------------------------------------------------------------
# Filtrations


@dataclass
class FiltrationTable:
    """Lower breaks ``b`` with ``[G : G[b + eps]] = index_after``."""

    entries: list[tuple[int, int]]
    rank: int
    p: int
    bound: int | None = None
    level: int | None = None
    certified: bool = True
    degenerate: bool = False
    note: str = ""

    def __post_init__(self):
        self.entries = [(int(b), int(i)) for b, i in self.entries]

    def validate(self) -> None:
        breaks = [b for b, _ in self.entries]
        idx = [1] + [i for _, i in self.entries]
        if any(b <= a for a, b in zip(breaks, breaks[1:])):
            raise ValueError("breaks must increase strictly")
        if breaks and breaks[0] < 0:
            raise ValueError("breaks must be nonnegative")
        for a, b in zip(idx, idx[1:]):
            if b % a or b // a not in (self.p, self.p**2):
                raise ValueError(f"index jump {a} -> {b} is not p or p^2")

    @property
    def breaks(self) -> list[int]:
        return [b for b, _ in self.entries]

    def index_at(self, t) -> int:
        """``[G : G[t]]``; ``G[t]`` only drops strictly after a break."""
        t = Fraction(t)
        idx = 1
        for b, i in self.entries:
            if t > b:
                idx = i
        return idx

    def index_after(self, b) -> int:
        return self.index_at(Fraction(b) + Fraction(1, 2))

    def to_record(self) -> dict:
        return {"entries": [list(e) for e in self.entries], "rank": self.rank, "p": self.p,
                "bound": self.bound, "level": self.level, "certified": self.certified,
                "degenerate": self.degenerate, "note": self.note}

    def to_text(self) -> str:
        return json.dumps(self.to_record())

    @classmethod
    def from_record(cls, rec: dict) -> "FiltrationTable":
        return cls(entries=[tuple(e) for e in rec["entries"]], rank=rec["rank"], p=rec["p"],
                   bound=rec.get("bound"), level=rec.get("level"),
                   certified=rec.get("certified", True), degenerate=rec.get("degenerate", False),
                   note=rec.get("note", ""))

    @classmethod
    def from_text(cls, text: str) -> "FiltrationTable":
        return cls.from_record(json.loads(text))


def rank1_table(seq: BreakSequence) -> FiltrationTable:
    """Filtration of ``<sigma>``: after ``i_n`` the index is ``p**(n+1)``."""
    return FiltrationTable([(v, seq.p ** (n + 1)) for n, v in enumerate(seq.values)], rank=1, p=seq.p,
                           bound=seq.values[-1] if seq.values else None)


def phi_from_breaks(table: FiltrationTable, horizon=None) -> PiecewiseLinearFn:
    """Exact ``phi_G`` with slope ``1/[G:G[t]]`` on each segment."""
    table.validate()
    breaks = table.breaks
    if horizon is None:
        horizon = breaks[-1] if breaks else 0
    horizon = Fraction(horizon)
    if breaks and horizon < breaks[-1]:
        raise ValueError("horizon must be at least the last break")
    knots = [(Fraction(0), Fraction(0))]
    slopes = [Fraction(1)]
    for b, idx in table.entries:
        b = Fraction(b)
        x0, y0 = knots[-1]
        y = y0 + slopes[-1] * (b - x0)
        if b == x0:
            slopes[-1] = Fraction(1, idx)
            continue
        knots.append((b, y))
        slopes.append(Fraction(1, idx))
    if horizon > knots[-1][0]:
        x0, y0 = knots[-1]
        knots.append((horizon, y0 + slopes[-1] * (horizon - x0)))
        slopes.append(slopes[-1])
    return PiecewiseLinearFn(tuple(knots), tuple(slopes))


def upper_breaks(table: FiltrationTable, lower) -> list[Fraction]:
    phi = phi_from_breaks(table, max([*table.breaks, *lower], default=0))
    return [phi(b) for b in lower]


# ---------------------------------------------------------------------------
# Joint filtration of <sigma, tau> by enumeration


def primitive_directions(p: int) -> list[tuple[int, int]]:
    """Projective representatives ``(1, b)`` and ``(0, 1)`` with balanced ``b``."""
    half = (p - 1) // 2
    bs = range(-half, p - half)
    return [(1, b) for b in bs] + [(0, 1)]


def breaks_rank2(sigma: Automorphism, tau: Automorphism, bound: int, level: int = 2,
                 max_level: int = 6) -> FiltrationTable:
    """Lower filtration of ``<sigma, tau>`` up to ``bound`` by coset enumeration.

    Every ``sigma**a o tau**b`` with ``0 <= a, b < p**K`` is formed and binned
    by depth.  The table is exact once ``sigma**(p**K)`` and ``tau**(p**K)``
    both have depth above ``bound`` (then depths up to ``bound`` are
    constant on cosets of ``p**K G``); ``K`` is raised until that holds.
    The generators are also checked to be independent: no primitive
    combination may vanish to the working precision.
    """
    p = sigma.p
    N = bound + 2
    if sigma.precision < N or tau.precision < N:
        raise ValueError(f"generators need precision >= bound + 2 = {N}")
    s, t = sigma.truncate(N), tau.truncate(N)

    for a, b in primitive_directions(p):
        g = compose(group_power(s, a), group_power(t, b)) if a else group_power(t, b)
        if is_exhausted(depth_i(g)):
            return FiltrationTable([], rank=2, p=p, bound=bound, level=level, certified=False,
                                   degenerate=True,
                                   note=f"sigma^{a} tau^{b} is the identity to precision {N}")

    K = level
    while True:
        size = p**K
        s_pows = [Automorphism.identity(s.ring, N)]
        for _ in range(size):
            s_pows.append(compose(s_pows[-1], s))
        t_pows = [Automorphism.identity(t.ring, N)]
        for _ in range(size):
            t_pows.append(compose(t_pows[-1], t))
        closed = all(_beyond(depth_i(x), bound) for x in (s_pows[size], t_pows[size]))
        if closed or K >= max_level:
            break
        K += 1

    depths = []
    for a, b in product(range(size), repeat=2):
        if a == 0 and b == 0:
            continue
        g = s_pows[a] if b == 0 else t_pows[b] if a == 0 else compose(s_pows[a], t_pows[b])
        d = depth_i(g)
        depths.append(None if _beyond(d, bound) else d)
    total = size * size
    found = sorted({d for d in depths if d is not None})
    entries = []
    for br in found:
        deeper = 1 + sum(1 for d in depths if d is None or d > br)
        if total % deeper:
            raise ArithmeticError(f"coset count {deeper} does not divide {total}")
        entries.append((br, total // deeper))
    table = FiltrationTable(entries, rank=2, p=p, bound=bound, level=K, certified=closed,
                            note="" if closed else f"level {K} does not close above bound {bound}")
    return table


def _beyond(d, bound: int) -> bool:
    return is_exhausted(d) or d > bound


# ---------------------------------------------------------------------------
# Rank-two profiles


class Depth(enum.Enum):
    DEPTH1 = "Depth1"
    DEPTH2 = "Depth2"
    IRREGULAR = "Irregular"

    def __str__(self):
        return self.value


@dataclass
class GammaEstimate:
    """Per-window estimates of ``lim i_n / p**(2n)``."""

    primary: list[Fraction]
    secondary: list[Fraction]
    stable: bool
    window_start: int

    @property
    def value(self) -> Fraction | None:
        return self.primary[-1] if self.primary else None

    def to_record(self) -> dict:
        return {"primary": [str(x) for x in self.primary], "secondary": [str(x) for x in self.secondary],
                "stable": self.stable, "window_start": self.window_start}


def gamma_estimate(seq: BreakSequence, window_start: int = 0) -> GammaEstimate:
    """``(i_{n+1} - i_n) / ((p**2 - 1) p**(2n))`` per window, plus ``i_n / p**(2n)``.

    Stable when at least two windows from ``window_start`` agree exactly.
    """
    vals, p = seq.values, seq.p
    if len(vals) < 2:
        raise ValueError("gamma estimate needs at least two certified values")
    primary = [Fraction(vals[n + 1] - vals[n], (p * p - 1) * p ** (2 * n)) for n in range(len(vals) - 1)]
    secondary = [Fraction(v, p ** (2 * n)) for n, v in enumerate(vals)]
    tail = primary[window_start:]
    stable = len(tail) >= 2 and all(x == tail[0] for x in tail)
    return GammaEstimate(primary, secondary, stable, window_start)


@dataclass
class Alignment:
    n: int
    m: int
    pattern: Depth
    sigma_first: bool = True
    overlap: int = 0

    def to_record(self) -> dict:
        return {"n": self.n, "m": self.m, "pattern": str(self.pattern),
                "sigma_first": self.sigma_first, "overlap": self.overlap}


def _offsets(ls: int, lt: int):
    pairs = [(n, m) for n in range(ls) for m in range(lt) if n == 0 or m == 0]
    return sorted(pairs, key=lambda nm: (nm[0] + nm[1], nm))


def find_alignment(s: list[int], t: list[int]) -> Alignment:
    """Offsets making the two break sequences coincide or interleave."""
    for n, m in _offsets(len(s), len(t)):
        ov = min(len(s) - n, len(t) - m)
        if ov >= 2 and all(s[n + j] == t[m + j] for j in range(ov)):
            return Alignment(n, m, Depth.DEPTH2, True, ov)
    for n, m in _offsets(len(s), len(t)):
        for first, second, flip in ((s, t, False), (t, s, True)):
            a, b = (m, n) if flip else (n, m)
            checks = [(first[a + j], second[b + j], first[a + j + 1])
                      for j in range(len(first)) if a + j + 1 < len(first) and b + j < len(second)]
            if len(checks) >= 2 and all(x < y < z for x, y, z in checks):
                return Alignment(n, m, Depth.DEPTH1, not flip, len(checks))
    return Alignment(0, 0, Depth.IRREGULAR, True, 0)


@dataclass
class RankTwoProfile:
    seq_sigma: BreakSequence
    seq_tau: BreakSequence
    alignment: Alignment
    gamma1: GammaEstimate
    gamma2: GammaEstimate
    samples: dict = field(default_factory=dict)

    @property
    def pattern(self) -> Depth:
        return self.alignment.pattern

    @property
    def p(self) -> int:
        return self.seq_sigma.p

    def to_record(self) -> dict:
        return {
            "seq_sigma": self.seq_sigma.to_record(),
            "seq_tau": self.seq_tau.to_record(),
            "alignment": self.alignment.to_record(),
            "gamma1": self.gamma1.to_record(),
            "gamma2": self.gamma2.to_record(),
            "samples": {f"{a},{b}": s.values for (a, b), s in self.samples.items()},
        }


def profile_from_sequences(seq_sigma: BreakSequence, seq_tau: BreakSequence,
                           samples: dict | None = None) -> RankTwoProfile:
    return RankTwoProfile(seq_sigma, seq_tau, find_alignment(seq_sigma.values, seq_tau.values),
                          gamma_estimate(seq_sigma), gamma_estimate(seq_tau), dict(samples or {}))


def rank_two_profile(sigma: Automorphism, tau: Automorphism, n_max: int = 2,
                     sample: bool = True) -> RankTwoProfile:
    """Break sequences of both generators and, optionally, of ``sigma * tau**b``."""
    seq_s = i_sequence(sigma, n_max)
    seq_t = i_sequence(tau, n_max)
    samples = {}
    if sample:
        for a, b in primitive_directions(sigma.p):
            if (a, b) in ((1, 0), (0, 1)):
                continue
            g = compose(sigma, group_power(tau, b))
            samples[(a, b)] = i_sequence(g, n_max)
    return profile_from_sequences(seq_s, seq_t, samples)


@dataclass
class DepthResult:
    pattern: Depth
    alignment: Alignment
    gamma_parity: str | None  # "even", "odd" or None when undecidable
    agrees: bool | None


def depth_classify(prof: RankTwoProfile) -> DepthResult:
    """Depth pattern from the sequences, cross-checked with the parity of log_p(gamma1/gamma2)."""
    pattern = prof.alignment.pattern
    parity = None
    if prof.gamma1.stable and prof.gamma2.stable:
        L = exact_log(prof.gamma1.value / prof.gamma2.value, prof.p)
        if L is not None:
            parity = "even" if L % 2 == 0 else "odd"
    agrees = None
    if parity is not None and pattern is not Depth.IRREGULAR:
        agrees = (parity == "even") == (pattern is Depth.DEPTH2)
    return DepthResult(pattern, prof.alignment, parity, agrees)


def char_classify_rank2(prof: RankTwoProfile, window_start: int = 1) -> Classification:
    """Height-2 test on sigma, tau and the sampled combinations.

    Char0 when every tested sequence has difference ratio exactly ``p**2``
    for all certified ``n >= window_start``.  Sampled combinations with fewer
    than three certified values are listed as insufficient and skipped.  CharP when some tested
    sequence meets ``i_{n+1} >= (p**3 - p**2 + 1) i_n`` or
    ``i_{n+2} >= (p**5 - p**4) i_n + i_{n+1}``.
    """
    p = prof.p
    tested = {"sigma": prof.seq_sigma, "tau": prof.seq_tau}
    tested.update({f"sigma*tau^{b}": s for (a, b), s in prof.samples.items()})
    window_start = max(1, window_start)
    evidence = []
    all_char0 = True
    for name, seq in list(tested.items()):
        vals = seq.values
        if len(vals) < 3:
            if name in ("sigma", "tau"):
                raise ValueError(f"{name}: rank-2 classification needs at least three certified values")
            # too deep to test at this precision; recorded, not counted
            evidence.append({"element": name, "values": vals, "insufficient": True})
            del tested[name]
            continue
        ratios = difference_ratios(vals)
        rng = range(window_start, len(vals) - 1)
        ok = len(rng) > 0 and all(ratios[n] == p * p for n in rng)
        all_char0 &= ok
        evidence.append({"element": name, "values": vals,
                         "ratios": {n: str(ratios[n]) for n in rng}, "ratio_p2": ok})
    if all_char0:
        return Classification(CharClass.CHAR0, evidence, window_start)
    witnesses = []
    for name, seq in tested.items():
        vals = seq.values
        for n in range(len(vals) - 1):
            if vals[n + 1] >= (p**3 - p**2 + 1) * vals[n]:
                witnesses.append({"element": name, "n": n, "bound": "(p^3-p^2+1) i_n",
                                  "i_n": vals[n], "i_n+1": vals[n + 1]})
        for n in range(len(vals) - 2):
            if vals[n + 2] >= (p**5 - p**4) * vals[n] + vals[n + 1]:
                witnesses.append({"element": name, "n": n, "bound": "(p^5-p^4) i_n + i_n+1",
                                  "i_n": vals[n], "i_n+2": vals[n + 2]})
    if witnesses:
        return Classification(CharClass.CHARP, witnesses, window_start)
    return Classification(CharClass.INCONCLUSIVE, evidence, window_start)


# ---------------------------------------------------------------------------
# Ramification index of Z_p x Z_p


def exact_log(x: Fraction, p: int) -> int | None:
    """``L`` with ``x = p**L`` exactly, else None."""
    x = Fraction(x)
    if x <= 0:
        return None
    L = 0
    num, den = x.numerator, x.denominator
    while num % p == 0:
        num //= p
        L += 1
    while den % p == 0:
        den //= p
        L -= 1
    return L if num == den == 1 else None


def rational_sqrt(x: Fraction) -> Fraction | None:
    x = Fraction(x)
    if x < 0:
        return None
    a, b = math.isqrt(x.numerator), math.isqrt(x.denominator)
    return Fraction(a, b) if a * a == x.numerator and b * b == x.denominator else None


def depth2_index(g1, g2, p: int) -> Fraction | None:
    root = rational_sqrt(Fraction(g1) * Fraction(g2))
    return None if root is None else Fraction(p * p - 1, p * p) * root


def depth1_index(g1, g2, p: int, a: int) -> Fraction:
    return Fraction(p - 1) / Fraction(p) ** (a + 1) * Fraction(g1) + Fraction(p - 1) / Fraction(p) ** (2 - a) * Fraction(g2)


def branch_identity(g1, g2, p: int) -> tuple[Fraction, Fraction]:
    """Both index formulas when ``log_p(g1/g2) = 2a`` is even."""
    L = exact_log(Fraction(g1) / Fraction(g2), p)
    if L is None or L % 2:
        raise ValueError("the identity needs log_p(gamma1/gamma2) even")
    return depth2_index(g1, g2, p), depth1_index(g1, g2, p, L // 2)


@dataclass
class HypothesisCheck:
    flagged: bool
    mismatches: list[dict]
    checked: int


def hypothesis_check(prof: RankTwoProfile, table: FiltrationTable) -> HypothesisCheck:
    """Compare the enumerated filtration with the shape forced by
    ``G(u) = <sigma**(p**n), tau**(p**m)>`` at the aligned breaks."""
    al = prof.alignment
    p = prof.p
    s, t = prof.seq_sigma.values, prof.seq_tau.values
    predicted = []
    if al.pattern is Depth.DEPTH2:
        for j in range(min(len(s) - al.n, len(t) - al.m)):
            predicted.append((s[al.n + j], p ** (al.n + al.m + 2 + 2 * j)))
    elif al.pattern is Depth.DEPTH1:
        first, second = (s, t) if al.sigma_first else (t, s)
        a, b = (al.n, al.m) if al.sigma_first else (al.m, al.n)
        for j in range(len(first)):
            if a + j < len(first):
                predicted.append((first[a + j], p ** (al.n + al.m + 2 * j + 1)))
            if b + j < len(second):
                predicted.append((second[b + j], p ** (al.n + al.m + 2 * j + 2)))
    mismatches = []
    checked = 0
    limit = table.bound if table.bound is not None else max(table.breaks, default=0)
    for br, idx in sorted(predicted):
        if br > limit:
            continue
        checked += 1
        have = table.index_after(br) if br in table.breaks else None
        if have != idx:
            mismatches.append({"break": br, "predicted_index": idx, "table_index": have})
    return HypothesisCheck(bool(mismatches) or not table.certified, mismatches, checked)


def e_from_filtration(table: FiltrationTable, seq: BreakSequence) -> list[Fraction]:
    """``phi_G(i_{n+1}) - phi_G(i_n)`` for consecutive breaks of one generator inside the table."""
    inside = [v for v in seq.values if table.bound is None or v <= table.bound]
    ups = upper_breaks(table, inside)
    return [b - a for a, b in zip(ups, ups[1:])]


@dataclass
class RankTwoIndex:
    e: Fraction | None
    branch: str | None
    gamma1: Fraction | None
    gamma2: Fraction | None
    log_ratio: int | None
    a: int | None = None
    branch_identity: tuple[Fraction, Fraction] | None = None
    alignment_consistent: bool | None = None
    hypothesis_flag: bool = False
    hypothesis: HypothesisCheck | None = None
    e_filtration: list[Fraction] = field(default_factory=list)
    error: str | None = None

    def to_record(self) -> dict:
        f = lambda x: None if x is None else str(x)
        return {
            "e": f(self.e), "branch": self.branch, "gamma": [f(self.gamma1), f(self.gamma2)],
            "log_ratio": self.log_ratio, "a": self.a,
            "branch_identity": None if self.branch_identity is None else [str(x) for x in self.branch_identity],
            "alignment_consistent": self.alignment_consistent,
            "hypothesis_flag": self.hypothesis_flag,
            "hypothesis_mismatches": self.hypothesis.mismatches if self.hypothesis else [],
            "e_filtration": [str(x) for x in self.e_filtration], "error": self.error,
        }


def ram_index_rank2(prof: RankTwoProfile, table: FiltrationTable | None = None) -> RankTwoIndex:
    """Absolute ramification index from ``gamma1``, ``gamma2``.

    Even ``log_p(gamma1/gamma2)``: ``e = (p**2-1)/p**2 sqrt(gamma1 gamma2)``.
    Odd: ``e = (p-1)/p**(a+1) gamma1 + (p-1)/p**(2-a) gamma2`` with ``a`` the
    integer strictly between ``L/2`` and ``L/2 + 1``.  A supplied filtration
    table is checked against the generator-shape hypothesis.
    """
    p = prof.p
    g1, g2 = prof.gamma1, prof.gamma2
    if not (g1.stable and g2.stable):
        return RankTwoIndex(None, None, g1.value, g2.value, None, error="gamma estimates are not stable")
    gamma1, gamma2 = g1.value, g2.value
    L = exact_log(gamma1 / gamma2, p)
    if L is None:
        return RankTwoIndex(None, None, gamma1, gamma2, None,
                            error=f"gamma1/gamma2 = {gamma1 / gamma2} is not a power of {p}")
    out = RankTwoIndex(None, None, gamma1, gamma2, L)
    al = prof.alignment
    if L % 2 == 0:
        out.branch = "depth2"
        out.e = depth2_index(gamma1, gamma2, p)
        if out.e is None:
            out.error = "gamma1*gamma2 is not a rational square"
        out.branch_identity = branch_identity(gamma1, gamma2, p)
        out.alignment_consistent = al.pattern is Depth.DEPTH2
    else:
        out.branch = "depth1"
        out.a = (L + 1) // 2
        out.e = depth1_index(gamma1, gamma2, p, out.a)
        if al.pattern is Depth.DEPTH1:
            a_align = al.m - al.n
            out.alignment_consistent = a_align == out.a
        else:
            out.alignment_consistent = False
    if table is not None:
        out.hypothesis = hypothesis_check(prof, table)
        out.hypothesis_flag = out.hypothesis.flagged
        out.e_filtration = e_from_filtration(table, prof.seq_sigma)
    return out


# ---------------------------------------------------------------------------
# Predicates on computed filtrations


def upper_breaks_grow_by_p(seq: BreakSequence) -> bool:
    """Upper breaks of ``<sigma>`` satisfy ``u_{n+1} >= p u_n``."""
    ups = upper_breaks(rank1_table(seq), seq.values)
    return all(b >= seq.p * a for a, b in zip(ups, ups[1:]))


def upper_breaks_step_by_e(seq: BreakSequence, e, start: int = 0) -> bool:
    """Upper breaks of ``<sigma>`` step by exactly ``e`` from ``start`` on."""
    ups = upper_breaks(rank1_table(seq), seq.values)
    diffs = [b - a for a, b in zip(ups, ups[1:])][start:]
    return bool(diffs) and all(d == e for d in diffs)


def interleaving_ratios(prof: RankTwoProfile) -> list[Fraction]:
    """``(i_{m+j}(tau) - i_{n+j}(sigma)) / p**(n+m+1+2j)`` over the aligned window."""
    al, p = prof.alignment, prof.p
    s, t = prof.seq_sigma.values, prof.seq_tau.values
    if not al.sigma_first:
        s, t = t, s
    n, m = al.n, al.m
    return [Fraction(t[m + j] - s[n + j], p ** (n + m + 1 + 2 * j))
            for j in range(min(len(s) - n, len(t) - m))]


def depth2_ratios(seq: BreakSequence, n: int, m: int) -> list[Fraction]:
    """``(i_{n+j} - i_{n+j-1}) / p**(n+m+2j)`` for ``j >= 1``."""
    v, p = seq.values, seq.p
    return [Fraction(v[n + j] - v[n + j - 1], p ** (n + m + 2 * j)) for j in range(1, len(v) - n)]
