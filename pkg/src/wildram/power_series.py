"""Truncated power series over a coefficient ring, stored densely.

A :class:`Series` of precision ``N`` knows the coefficients of
``x**0 .. x**N``; everything beyond is unknown, not zero.  Binary
operations return the smaller of the two precisions and never extend it.

Composition cost model
----------------------
``compose_horner`` evaluates ``f(g)`` by Horner's rule: ``N`` truncated
series products, i.e. ``O(N**3)`` coefficient operations with the products
done by ``numpy.convolve``.  ``compose_bsgs`` is the baby-step giant-step
(Brent-Kung) variant: with ``k = ceil(sqrt(N + 1))`` it forms
``g**0 .. g**k`` (k products), evaluates the ``N/k`` inner blocks with one
ring matrix product, then runs Horner in ``g**k`` (another ``N/k``
products), for ``O(N**2.5)`` overall.  Both return identical results;
``compose`` uses the second.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .rings import CoefficientRing


@dataclass(frozen=True)
class PrecisionExhausted:
    """The valuation exceeds the stored precision ``beyond``."""

    beyond: int

    def __str__(self):
        return f"exhausted(>{self.beyond})"


def is_exhausted(value) -> bool:
    return isinstance(value, PrecisionExhausted)


class Series:
    """Truncated power series ``sum_k c_k x**k`` with ``0 <= k <= precision``."""

    __slots__ = ("ring", "data")

    def __init__(self, ring: CoefficientRing, data, precision: int | None = None):
        arr = ring.asarray(data)
        if arr.ndim == 1:
            arr = arr.reshape(ring.m, -1) if ring.m == 1 else arr
        if arr.ndim != 2 or arr.shape[0] != ring.m:
            raise ValueError(f"coefficient array must have shape ({ring.m}, N+1), got {arr.shape}")
        if precision is not None:
            arr = _fit(ring, arr, precision + 1)
        if arr.shape[1] < 1:
            raise ValueError("precision must be >= 0")
        arr.setflags(write=False)
        self.ring = ring
        self.data = arr

    # -- constructors --------------------------------------------------------

    @classmethod
    def from_coeffs(cls, ring, coeffs, precision: int) -> "Series":
        """Build from a list of per-degree coordinates or ring elements."""
        cols = []
        for c in coeffs:
            if hasattr(c, "coeffs") and not isinstance(c, (int, tuple, list)):
                c = c.coeffs
            elif hasattr(c, "coords"):
                c = c.coords
            if isinstance(c, int):
                c = (c,) + (0,) * (ring.m - 1)
            cols.append(tuple(int(v) for v in c))
        arr = ring.zeros(precision + 1)
        for k, c in enumerate(cols[: precision + 1]):
            for j, v in enumerate(c):
                arr[j, k] = v % ring.n
        return cls(ring, arr)

    @classmethod
    def from_dict(cls, ring, terms: dict, precision: int) -> "Series":
        """``{degree: coordinates}``; degrees above ``precision`` are dropped."""
        coeffs = [ring.zero_coords()] * (precision + 1)
        for k, c in terms.items():
            if k <= precision:
                coeffs[k] = (c,) + (0,) * (ring.m - 1) if isinstance(c, int) else tuple(c)
        return cls.from_coeffs(ring, coeffs, precision)

    @classmethod
    def identity(cls, ring, precision: int) -> "Series":
        return cls.from_dict(ring, {1: 1}, precision)

    @classmethod
    def constant(cls, ring, value, precision: int) -> "Series":
        return cls.from_dict(ring, {0: value}, precision)

    # -- basic accessors -----------------------------------------------------

    @property
    def precision(self) -> int:
        return self.data.shape[1] - 1

    @property
    def coeffs(self) -> list:
        return [self[k] for k in range(self.precision + 1)]

    def coord(self, k: int) -> tuple[int, ...]:
        return tuple(int(v) for v in self.data[:, k])

    def __getitem__(self, k: int):
        return self.ring.element(self.coord(k))

    def __len__(self):
        return self.precision + 1

    def truncate(self, precision: int) -> "Series":
        if precision > self.precision:
            raise ValueError("truncate cannot extend precision")
        return Series(self.ring, self.data[:, : precision + 1])

    def _check(self, other: "Series"):
        if not isinstance(other, Series):
            raise TypeError(f"expected Series, got {type(other).__name__}")
        if other.ring != self.ring:
            raise ValueError(f"ring mismatch: {self.ring} vs {other.ring}")

    def __eq__(self, other):
        if not isinstance(other, Series):
            return NotImplemented
        return (
            self.ring == other.ring
            and self.precision == other.precision
            and bool(np.array_equal(self.data, other.data))
        )

    def __hash__(self):
        return hash((self.ring, self.precision, tuple(map(int, self.data.ravel()))))

    def __repr__(self):
        terms = []
        for k in range(self.precision + 1):
            c = self.coord(k)
            if any(c):
                terms.append(f"({','.join(map(str, c))})x^{k}")
        body = " + ".join(terms) if terms else "0"
        return f"Series[{self.ring!r}, N={self.precision}]({body})"

    # -- ring arithmetic -----------------------------------------------------

    def __add__(self, other: "Series") -> "Series":
        self._check(other)
        L = min(len(self), len(other))
        return Series(self.ring, (self.data[:, :L] + other.data[:, :L]) % self.ring.n)

    def __sub__(self, other: "Series") -> "Series":
        self._check(other)
        L = min(len(self), len(other))
        return Series(self.ring, (self.data[:, :L] - other.data[:, :L]) % self.ring.n)

    def __neg__(self) -> "Series":
        return Series(self.ring, (-self.data) % self.ring.n)

    def __mul__(self, other: "Series") -> "Series":
        return ps_mul(self, other)

    def scale(self, coords) -> "Series":
        return Series(self.ring, self.ring.scale(self.data, coords))

    def __call__(self, g: "Series") -> "Series":
        return ps_compose(self, g)

    def valuation(self):
        return ps_valuation(self)

    def derivative(self) -> "Series":
        """Formal derivative; precision drops by one."""
        N = self.precision
        if N == 0:
            raise ValueError("derivative of a precision-0 series is undefined")
        k = self.ring.asarray(np.arange(1, N + 1))
        return Series(self.ring, (self.data[:, 1:] * k) % self.ring.n)

    def is_zero(self) -> bool:
        return not self.data.any()

    # -- text format ---------------------------------------------------------

    def to_text(self, provenance: dict | None = None) -> str:
        lines = [f"# {k}={v}" for k, v in (provenance or {}).items()]
        lines.append(self.ring.header())
        lines.append(f"N={self.precision}")
        lines.extend(",".join(map(str, self.coord(k))) for k in range(self.precision + 1))
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> tuple["Series", dict]:
        from .finite_field import FieldSpec

        provenance = {}
        body = []
        for line in text.splitlines():
            if line.startswith("#"):
                key, _, val = line[1:].strip().partition("=")
                provenance[key.strip()] = val.strip()
            elif line.strip():
                body.append(line.strip())
        if len(body) < 2:
            raise ValueError("series file needs a field header and an N= line")
        spec = FieldSpec.parse(body[0])
        if not body[1].startswith("N="):
            raise ValueError(f"expected 'N=<precision>', got {body[1]!r}")
        N = int(body[1][2:])
        rows = body[2:]
        if len(rows) != N + 1:
            raise ValueError(f"expected {N + 1} coefficient lines, got {len(rows)}")
        coeffs = [tuple(int(c) for c in row.split(",")) for row in rows]
        for c in coeffs:
            if len(c) != spec.m or any(not 0 <= v < spec.p for v in c):
                raise ValueError(f"bad coefficient {c} for {spec.header()}")
        return cls.from_coeffs(spec, coeffs, N), provenance

    def write(self, path, provenance: dict | None = None) -> None:
        Path(path).write_text(self.to_text(provenance))

    @classmethod
    def read(cls, path) -> tuple["Series", dict]:
        return cls.from_text(Path(path).read_text())


def _fit(ring, arr: np.ndarray, length: int) -> np.ndarray:
    if arr.shape[1] >= length:
        return arr[:, :length]
    out = ring.zeros(length)
    out[:, : arr.shape[1]] = arr
    return out


def ps_mul(f: Series, g: Series) -> Series:
    f._check(g)
    L = min(len(f), len(g))
    return Series(f.ring, f.ring.convolve(f.data[:, :L], g.data[:, :L], L))


def ps_valuation(f: Series):
    nz = np.flatnonzero(f.data.any(axis=0))
    if nz.size == 0:
        return PrecisionExhausted(f.precision)
    return int(nz[0])


def _check_composable(f: Series, g: Series):
    f._check(g)
    if any(g.coord(0)):
        raise ValueError("inner series must have zero constant term")


def compose_horner(f: Series, g: Series) -> Series:
    """``f(g)`` by Horner's rule; the reference implementation."""
    _check_composable(f, g)
    ring = f.ring
    L = min(len(f), len(g))
    gd = g.data[:, :L]
    acc = ring.zeros(L)
    acc[:, 0] = f.data[:, L - 1]
    for k in range(L - 2, -1, -1):
        acc = ring.convolve(acc, gd, L)
        acc[:, 0] = (acc[:, 0] + f.data[:, k]) % ring.n
    return Series(ring, acc)


def compose_bsgs(f: Series, g: Series) -> Series:
    """``f(g)`` by baby-step giant-step; agrees with :func:`compose_horner`."""
    _check_composable(f, g)
    ring = f.ring
    L = min(len(f), len(g))
    if L <= 8:
        return compose_horner(f.truncate(L - 1), g.truncate(L - 1))
    k = math.isqrt(L - 1) + 1
    gd = g.data[:, :L]
    # baby steps: powers[:, i, :] = g**i
    powers = ring.zeros(k * L).reshape(ring.m, k, L) if ring.dtype is object else np.zeros((ring.m, k, L), dtype=np.int64)
    powers[:, 0, 0] = ring.one_coords()
    cur = powers[:, 0, :].copy()
    for i in range(1, k):
        cur = ring.convolve(cur, gd, L)
        powers[:, i, :] = cur
    giant = ring.convolve(cur, gd, L)
    blocks = -(-L // k)
    fcoef = _fit(ring, f.data[:, :L], blocks * k).reshape(ring.m, blocks, k)
    inner = ring.matmul(fcoef, powers)  # inner[:, j, :] = F_j(g)
    acc = inner[:, blocks - 1, :].copy()
    for j in range(blocks - 2, -1, -1):
        acc = (ring.convolve(acc, giant, L) + inner[:, j, :]) % ring.n
    return Series(ring, acc)


def ps_compose(f: Series, g: Series) -> Series:
    """``f(g(x))`` to precision ``min(N_f, N_g)``; ``g`` needs zero constant term."""
    return compose_bsgs(f, g)


def ps_inverse(u: Series) -> Series:
    """Multiplicative inverse of a series with unit constant term (Newton)."""
    ring = u.ring
    c0 = ring.inv_coords(u.coord(0))
    N = u.precision
    v = Series.constant(ring, c0, 0)
    prec = 0
    while prec < N:
        prec = min(2 * prec + 1, N)
        uu = u.truncate(prec)
        vv = Series(ring, _fit(ring, v.data, prec + 1))
        two = Series.constant(ring, 2, prec)
        v = vv * (two - uu * vv)
    return v


def ps_comp_inverse(f: Series) -> Series:
    """Compositional inverse ``h`` with ``f(h) = h(f) = x`` to precision ``N``.

    Newton iteration ``h <- h - (f(h) - x) / f'(h)``, doubling the working
    precision each round.
    """
    ring = f.ring
    N = f.precision
    if any(f.coord(0)):
        raise ValueError("compositional inverse needs f(0) = 0")
    if N < 1:
        raise ValueError("compositional inverse needs precision >= 1")
    lead_inv = ring.inv_coords(f.coord(1))
    h = Series.from_dict(ring, {1: lead_inv}, 1)
    prec = 1
    df = None
    while prec < N:
        prec = min(2 * prec, N)
        ff = f.truncate(prec)
        hh = Series(ring, _fit(ring, h.data, prec + 1))
        resid = ps_compose(ff, hh) - Series.identity(ring, prec)
        df = _fit_series(ff.derivative(), prec)
        h = hh - resid * ps_inverse(ps_compose(df, hh))
    return h


def _fit_series(s: Series, precision: int) -> Series:
    return Series(s.ring, _fit(s.ring, s.data, precision + 1))
