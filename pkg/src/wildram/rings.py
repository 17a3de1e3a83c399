"""Coordinate arithmetic shared by every coefficient ring in the package.

Both coefficient domains used here are free modules of rank ``m`` (1 or 2)
over ``Z/nZ`` with a single quadratic relation ``g**2 = s + t*g``:

* the residue fields ``F_p`` and ``F_p[z]/(h)`` (``n = p``),
* truncated rings of integers ``Z_p[g]/(p**M)`` (``n = p**M``).

Elements are stored as integer coordinate vectors; arrays of elements have
shape ``(m, L)``.  Everything below works on those arrays so that series
arithmetic can be vectorised with numpy.
"""
from __future__ import annotations

import numpy as np

# int64 headroom: convolution sums are bounded by 4 * length * n**2
_INT64_BUDGET = 2**62
_MAX_LENGTH = 1 << 14
# float64 FFT products are exact after rounding while sums stay well below 2**53
_FFT_EXACT = 2**36
_FFT_MIN_LENGTH = 96


class CoefficientRing:
    """Base class for rank-``m`` algebras over ``Z/nZ``."""

    n: int
    m: int
    s: int
    t: int

    def _setup_arith(self) -> None:
        safe = 4 * _MAX_LENGTH * (self.n - 1) ** 2
        object.__setattr__(self, "_dtype", np.int64 if safe < _INT64_BUDGET else object)

    @property
    def dtype(self):
        return self._dtype

    # -- array construction -------------------------------------------------

    def zeros(self, length: int) -> np.ndarray:
        if self._dtype is object:
            return np.array([[0] * length for _ in range(self.m)], dtype=object).reshape(self.m, length)
        return np.zeros((self.m, length), dtype=np.int64)

    def asarray(self, data) -> np.ndarray:
        if self._dtype is object:
            arr = np.array(data, dtype=object)
        else:
            arr = np.asarray(data, dtype=np.int64)
        return arr % self.n

    # -- vectorised coordinate arithmetic ------------------------------------

    def mul_vec(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        """Elementwise product of two ``(m, L)`` arrays."""
        n = self.n
        if self.m == 1:
            return (x * y) % n
        x0, x1 = x[0], x[1]
        y0, y1 = y[0], y[1]
        hh = (x1 * y1) % n
        out0 = (x0 * y0 + self.s * hh) % n
        out1 = (x0 * y1 + x1 * y0 + self.t * hh) % n
        return np.stack([out0, out1])

    def scale(self, x: np.ndarray, c) -> np.ndarray:
        """Multiply every element of ``x`` by the element with coordinates ``c``."""
        cc = self.asarray([[int(v)] for v in c])
        return self.mul_vec(x, cc)

    def dot(self, x: np.ndarray, y: np.ndarray) -> tuple[int, ...]:
        """``sum_i x_i * y_i`` as a coordinate tuple."""
        n = self.n
        if x.shape[1] == 0:
            return (0,) * self.m
        if self.m == 1:
            return (int(np.dot(x[0], y[0]) % n),)
        a = int(np.dot(x[0], y[0]) % n)
        b = int(np.dot(x[1], y[1]) % n)
        c = int((np.dot(x[0], y[1]) + np.dot(x[1], y[0])) % n)
        return ((a + self.s * b) % n, (c + self.t * b) % n)

    def convolve(self, x: np.ndarray, y: np.ndarray, length: int) -> np.ndarray:
        """Truncated Cauchy product of two coefficient arrays."""
        n = self.n
        short = min(x.shape[1], y.shape[1])
        if (self._dtype is not object and short >= _FFT_MIN_LENGTH
                and short * (n - 1) ** 2 < _FFT_EXACT):
            return self._convolve_fft(x, y, length)
        if self.m == 1:
            return (np.convolve(x[0], y[0])[:length] % n).reshape(1, -1)
        x0, x1 = x[0], x[1]
        y0, y1 = y[0], y[1]
        lo = np.convolve(x0, y0)[:length] % n
        hi = np.convolve(x1, y1)[:length] % n
        mid = np.convolve((x0 + x1) % n, (y0 + y1) % n)[:length]
        out0 = (lo + self.s * hi) % n
        out1 = (mid - lo - hi + self.t * hi) % n
        return np.stack([out0, out1])

    def _convolve_fft(self, x: np.ndarray, y: np.ndarray, length: int) -> np.ndarray:
        n = self.n
        size = 1 << (x.shape[1] + y.shape[1] - 2).bit_length()
        fx = np.fft.rfft(x.astype(np.float64), size, axis=1)
        fy = np.fft.rfft(y.astype(np.float64), size, axis=1)
        length = min(length, x.shape[1] + y.shape[1] - 1)

        def back(f):
            return np.rint(np.fft.irfft(f, size)[:length]).astype(np.int64) % n

        if self.m == 1:
            return back(fx[0] * fy[0]).reshape(1, -1)
        lo, hi = back(fx[0] * fy[0]), back(fx[1] * fy[1])
        mid = back(fx[0] * fy[1] + fx[1] * fy[0])
        return np.stack([(lo + self.s * hi) % n, (mid + self.t * hi) % n])

    def matmul(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        """Ring matrix product: ``a`` has shape (m, r, k), ``b`` shape (m, k, L)."""
        n = self.n
        if self.m == 1:
            return ((a[0] @ b[0]) % n)[None]
        lo = (a[0] @ b[0]) % n
        hi = (a[1] @ b[1]) % n
        mid = (a[0] @ b[1] + a[1] @ b[0]) % n
        return np.stack([(lo + self.s * hi) % n, (mid + self.t * hi) % n])

    # -- scalar helpers ------------------------------------------------------

    def mul_coords(self, x: tuple[int, ...], y: tuple[int, ...]) -> tuple[int, ...]:
        n = self.n
        if self.m == 1:
            return (x[0] * y[0] % n,)
        hh = x[1] * y[1]
        return ((x[0] * y[0] + self.s * hh) % n, (x[0] * y[1] + x[1] * y[0] + self.t * hh) % n)

    def norm(self, x: tuple[int, ...]) -> int:
        if self.m == 1:
            return x[0] % self.n
        a, b = x
        return (a * a + a * b * self.t - b * b * self.s) % self.n

    def inv_coords(self, x: tuple[int, ...]) -> tuple[int, ...]:
        """Inverse of a unit; raises ``ZeroDivisionError`` for non-units."""
        nrm = self.norm(x)
        try:
            ninv = pow(nrm, -1, self.n)
        except ValueError:
            raise ZeroDivisionError("element is not invertible") from None
        if self.m == 1:
            return (ninv,)
        a, b = x
        return ((a + b * self.t) * ninv % self.n, (-b) * ninv % self.n)

    def one_coords(self) -> tuple[int, ...]:
        return (1,) + (0,) * (self.m - 1)

    def zero_coords(self) -> tuple[int, ...]:
        return (0,) * self.m
