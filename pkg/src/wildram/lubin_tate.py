"""Lubin-Tate endomorphisms over truncated O_F and their reductions.

Three base rings are supported, each a quotient ``O_F / p**M``:

``qp``          O_F = Z_p, uniformizer p, [p](x) = p x + x**p
``unramified``  O_F = Z_p[zeta], zeta**2 = s + t zeta lifting the residue
                modulus, uniformizer p, [p](x) = p x + x**(p**2)
``ramified``    O_F = Z_p[pi], pi**2 = p, uniformizer pi, [pi](x) = pi x + x**p

Solving for [alpha]
-------------------
Writing ``F = alpha x + sum_{d>=2} c_d x**d`` and comparing the ``x**d``
coefficients of ``F([pi](x)) = pi F(x) + F(x)**q`` gives

    c_d (pi**d - pi) = (F**q)_d - sum_{k>=1} c_j binom(j, k) pi**(d - k q),
    j = d - k (q - 1),

where the right side only involves ``c_j`` with ``j < d``.  Since
``pi**d - pi = pi (pi**(d-1) - 1)``, each step divides by ``pi`` once.

Precision accounting: if ``c_j`` is known modulo ``pi**A_j`` then
``(F**q)_d`` is known modulo ``pi**(min A_j + 1)`` (every first-order error
term of a q-th power carries a binomial factor divisible by p, and the pure
``delta**q`` term has valuation ``q A_j``), and the sum term modulo
``pi**(A_j + d - k q)``.  Dividing by ``pi`` costs one digit.  The solver
propagates these bounds exactly, which yields a per-coefficient certified
precision ``A_d``; the reduction mod ``pi`` is certified when every
``A_d >= 1``.  Losses only happen along ``d -> d/q`` chains, so about
``log_q N`` digits are consumed.
"""
from __future__ import annotations

import ast
import enum
from dataclasses import dataclass, field

import numpy as np

from .finite_field import FieldSpec, default_modulus, is_prime
from .nottingham import Automorphism
from .power_series import PrecisionExhausted, Series, ps_compose
from .rings import CoefficientRing


class Kind(enum.Enum):
    QP = "qp"
    UNRAMIFIED = "unramified"
    RAMIFIED = "ramified"

    def __str__(self):
        return self.value


class CertificateFailure(RuntimeError):
    """The p-adic working precision was too small to certify the result."""


@dataclass(frozen=True, eq=False)
class BaseRing(CoefficientRing):
    """``O_F / p**pdigits`` in coordinates ``a + b g`` (``g`` = zeta or pi)."""

    kind: Kind
    p: int
    pdigits: int
    residue_modulus: tuple[int, ...] = field(default=())

    def __post_init__(self):
        kind = Kind(self.kind)
        object.__setattr__(self, "kind", kind)
        p, M = self.p, self.pdigits
        if not is_prime(p):
            raise ValueError(f"p={p} is not prime")
        if M < 1:
            raise ValueError("pdigits must be >= 1")
        n = p**M
        if kind is Kind.QP:
            m, s, t = 1, 0, 0
            res = FieldSpec(p, 1)
        elif kind is Kind.RAMIFIED:
            if p == 2:
                raise ValueError("the ramified example uses pi**2 = p and needs odd p")
            m, s, t = 2, p % n, 0
            res = FieldSpec(p, 1)
        else:
            mod = tuple(self.residue_modulus) or default_modulus(p, 2)
            res = FieldSpec(p, 2, mod)
            c0, c1 = res.modulus[0], res.modulus[1]
            m, s, t = 2, (-c0) % n, (-c1) % n
        object.__setattr__(self, "residue_modulus", res.modulus)
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "m", m)
        object.__setattr__(self, "s", s)
        object.__setattr__(self, "t", t)
        object.__setattr__(self, "residue_field", res)
        self._setup_arith()

    def __eq__(self, other):
        return isinstance(other, BaseRing) and self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def _key(self):
        return (self.kind, self.p, self.pdigits, self.residue_modulus)

    def __repr__(self):
        return f"BaseRing({self.kind}, p={self.p}, M={self.pdigits})"

    def with_pdigits(self, pdigits: int) -> "BaseRing":
        return BaseRing(self.kind, self.p, pdigits, self.residue_modulus)

    @property
    def ramification(self) -> int:
        """``v_F(p)``."""
        return 2 if self.kind is Kind.RAMIFIED else 1

    @property
    def pi_precision(self) -> int:
        """Working precision in units of ``v_F``: elements are known mod pi**this."""
        return self.ramification * self.pdigits

    @property
    def q(self) -> int:
        return self.p**2 if self.kind is Kind.UNRAMIFIED else self.p

    def uniformizer(self) -> "RingElem":
        return self.element((0, 1) if self.kind is Kind.RAMIFIED else (self.p,))

    def gen(self) -> "RingElem":
        if self.m == 1:
            raise ValueError("Z_p has no adjoined generator")
        return self.element((0, 1))

    def element(self, coords) -> "RingElem":
        coords = tuple(int(c) % self.n for c in coords)
        return RingElem(self, coords + (0,) * (self.m - len(coords)))

    def __call__(self, *coords) -> "RingElem":
        return self.element(coords)

    def one(self) -> "RingElem":
        return self.element(self.one_coords())

    def zero(self) -> "RingElem":
        return self.element(self.zero_coords())

    def header(self) -> str:
        raise TypeError("series over O_F have no text format; reduce them first")

    # coordinate-level helpers used by the solver

    def valuation_coords(self, c: tuple[int, ...]):
        n, p = self.n, self.p

        def vp(a):
            a %= n
            if a == 0:
                return None
            v = 0
            while a % p == 0:
                a //= p
                v += 1
            return v

        vals = []
        for j, a in enumerate(c):
            v = vp(a)
            if v is None:
                continue
            vals.append(2 * v + j if self.kind is Kind.RAMIFIED else v)
        if not vals:
            return PrecisionExhausted(self.pi_precision - 1)
        return min(vals)

    def divide_by_uniformizer(self, c: tuple[int, ...]) -> tuple[int, ...]:
        """Exact division by pi; the top digit of the result is undetermined."""
        p, n = self.p, self.n
        if self.kind is Kind.RAMIFIED:
            a, b = c
            if a % p:
                raise ArithmeticError(f"{c} is not divisible by pi")
            return (b % n, (a // p) % n)
        if any(a % p for a in c):
            raise ArithmeticError(f"{c} is not divisible by p")
        return tuple((a // p) % n for a in c)

    def reduce_coords(self, c: tuple[int, ...]) -> tuple[int, ...]:
        """Image in the residue field."""
        if self.kind is Kind.UNRAMIFIED:
            return (c[0] % self.p, c[1] % self.p)
        return (c[0] % self.p,)


@dataclass(frozen=True)
class RingElem:
    ring: BaseRing
    coords: tuple[int, ...]

    def _check(self, other):
        if not isinstance(other, RingElem) or other.ring != self.ring:
            raise ValueError("ring mismatch")

    def __add__(self, other):
        return of_arith(self, other, "+")

    def __sub__(self, other):
        return of_arith(self, other, "-")

    def __mul__(self, other):
        return of_arith(self, other, "*")

    def __truediv__(self, other):
        return of_arith(self, other, "/")

    def __neg__(self):
        return self.ring.element(tuple(-c for c in self.coords))

    def __pow__(self, k: int):
        result, base = self.ring.one(), self
        if k < 0:
            base, k = self.inverse(), -k
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def inverse(self) -> "RingElem":
        return self.ring.element(self.ring.inv_coords(self.coords))

    def is_unit(self) -> bool:
        return self.ring.norm(self.coords) % self.ring.p != 0

    def valuation(self):
        return of_valuation(self)

    def is_zero(self) -> bool:
        return not any(self.coords)

    def __repr__(self):
        g = "pi" if self.ring.kind is Kind.RAMIFIED else "zeta"
        if self.ring.m == 1:
            return f"O({self.coords[0]})"
        return f"O({self.coords[0]}+{self.coords[1]}{g})"


def of_arith(a: RingElem, b: RingElem, op: str) -> RingElem:
    """``a op b`` in O_F / p**M for ``op`` in ``+ - * /``.

    Division by a non-unit ``b = pi**v u`` needs ``v_F(a) >= v``; the result
    then loses ``v`` digits at the top.
    """
    a._check(b)
    ring, n = a.ring, a.ring.n
    if op == "+":
        return ring.element(tuple((x + y) % n for x, y in zip(a.coords, b.coords)))
    if op == "-":
        return ring.element(tuple((x - y) % n for x, y in zip(a.coords, b.coords)))
    if op == "*":
        return ring.element(ring.mul_coords(a.coords, b.coords))
    if op == "/":
        vb = of_valuation(b)
        if isinstance(vb, PrecisionExhausted):
            raise ZeroDivisionError("division by zero")
        unit, num = b.coords, a.coords
        for _ in range(vb):
            unit = ring.divide_by_uniformizer(unit)
            num = ring.divide_by_uniformizer(num)
        return ring.element(ring.mul_coords(num, ring.inv_coords(unit)))
    raise ValueError(f"unknown operation {op!r}")


def of_valuation(a: RingElem):
    """``v_F`` with ``v_F(pi) = 1``; :class:`PrecisionExhausted` for zero mod p**M."""
    return a.ring.valuation_coords(a.coords)


def parse_element(ring: BaseRing, text: str) -> RingElem:
    """Evaluate expressions such as ``1+pi``, ``1+p``, ``1+zeta*p`` or ``3,2``."""
    text = text.strip()
    if "," in text and not any(ch.isalpha() for ch in text):
        return ring.element(tuple(int(c) for c in text.split(",")))
    names = {"p": ring.element((ring.p,))}
    if ring.kind is Kind.RAMIFIED:
        names["pi"] = ring.gen()
    elif ring.kind is Kind.UNRAMIFIED:
        names["zeta"] = names["z"] = ring.gen()

    def ev(node):
        if isinstance(node, ast.Expression):
            return ev(node.body)
        if isinstance(node, ast.Constant) and isinstance(node.value, int):
            return ring.element((node.value,))
        if isinstance(node, ast.Name):
            if node.id not in names:
                raise ValueError(f"unknown symbol {node.id!r} for {ring.kind} ring")
            return names[node.id]
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, ast.USub):
            return -ev(node.operand)
        if isinstance(node, ast.BinOp):
            left = ev(node.left)
            if isinstance(node.op, (ast.Pow, ast.BitXor)):
                if not isinstance(node.right, ast.Constant):
                    raise ValueError("exponents must be integer literals")
                return left ** int(node.right.value)
            right = ev(node.right)
            ops = {ast.Add: "+", ast.Sub: "-", ast.Mult: "*"}
            if type(node.op) in ops:
                return of_arith(left, right, ops[type(node.op)])
        raise ValueError(f"cannot parse element {text!r}")

    return ev(ast.parse(text.replace("^", "**"), mode="eval"))


@dataclass
class LTContext:
    """The Lubin-Tate series ``[pi](x) = pi x + x**q`` over ``ring`` to precision N."""

    ring: BaseRing
    precision: int

    @property
    def q(self) -> int:
        return self.ring.q

    @property
    def pi_series(self) -> Series:
        r = self.ring
        return Series.from_dict(r, {1: r.uniformizer().coords, self.q: 1}, self.precision)

    def with_pdigits(self, pdigits: int) -> "LTContext":
        return LTContext(self.ring.with_pdigits(pdigits), self.precision)


@dataclass
class LTEndomorphism:
    """``[alpha](x)`` together with its precision certificate."""

    ctx: LTContext
    alpha: RingElem
    series: Series
    digits: list[int]  # certified v_F precision of each coefficient
    commutes: bool

    @property
    def certified(self) -> bool:
        return self.commutes and min(self.digits[1:], default=1) >= 1

    @property
    def min_digits(self) -> int:
        return min(self.digits[1:], default=self.ctx.ring.pi_precision)


def _binomial_table(rows: int, cols: int, n: int, dtype) -> np.ndarray:
    tab = np.zeros((rows, cols), dtype=dtype)
    tab[:, 0] = 1
    for j in range(1, rows):
        tab[j, 1:] = (tab[j - 1, 1:] + tab[j - 1, :-1]) % n
    return tab


def _pi_powers(ring: BaseRing, count: int) -> np.ndarray:
    """Coordinates of pi**e for e < count (zero once pi**e = 0 mod p**M)."""
    out = ring.zeros(count)
    cur = ring.one_coords()
    pi = ring.uniformizer().coords
    for e in range(count):
        out[:, e] = cur
        cur = ring.mul_coords(cur, pi)
    return out


def _power_chain(p: int, q: int):
    """Factor pairs realising F**q online: entries (left, right, low_left, low_right)."""
    chain = []
    # arrays: 0 = F, then F**2..F**p, then (F**p)**2..(F**p)**p
    low = {0: 1}
    idx = 0
    for k in range(2, p + 1):
        chain.append((idx, 0, low[idx], 1))
        idx = len(chain)
        low[idx] = k
    if q == p * p:
        base = idx
        for k in range(2, p + 1):
            chain.append((idx, base, low[idx], low[base]))
            idx = len(chain)
            low[idx] = p * k
    return chain


def lt_endomorphism(ctx: LTContext, alpha: RingElem) -> LTEndomorphism:
    """Solve ``[alpha] o [pi] = [pi] o [alpha]`` degree by degree.

    Raises :class:`CertificateFailure` when the working precision does not
    certify every coefficient mod pi; callers retry with more ``pdigits``
    (see :func:`construct_endomorphism`).
    """
    ring, N, q, p = ctx.ring, ctx.precision, ctx.q, ctx.ring.p
    if alpha.ring != ring:
        raise ValueError("alpha lives in a different ring")
    if N < 1:
        raise ValueError("precision must be >= 1")
    n, Mpi = ring.n, ring.pi_precision
    c = ring.zeros(N + 1)
    c[:, 1] = alpha.coords
    chain = _power_chain(p, q)
    arrays = [c] + [ring.zeros(N + 1) for _ in chain]
    kmax = N // q
    binom = _binomial_table(N + 1, kmax + 1, n, ring.dtype)
    pipow = _pi_powers(ring, Mpi)
    digits = [Mpi] * (N + 1)
    prefmin = [Mpi] * (N + 1)

    for d in range(2, N + 1):
        for out, (li, ri, lo_l, lo_r) in enumerate(chain, start=1):
            X, Y = arrays[li], arrays[ri]
            hi = d - lo_r
            if hi < lo_l:
                continue
            xs = X[:, lo_l : hi + 1]
            ys = Y[:, d - hi : d - lo_l + 1][:, ::-1]
            arrays[out][:, d] = ring.dot(xs, ys)
        rhs = tuple(int(v) for v in arrays[-1][:, d])
        bound = Mpi
        if d >= q:
            bound = min(bound, prefmin[d - q + 1] + 1)
        if kmax and d >= q:
            ks = np.arange(1, d // q + 1)
            js = d - ks * (q - 1)
            es = d - ks * q
            live = es < Mpi
            if live.any():
                ks_l, js_l, es_l = ks[live], js[live], es[live]
                coef = ring.mul_vec(pipow[:, es_l], _scalar_rows(ring, binom[js_l, ks_l]))
                terms = ring.mul_vec(c[:, js_l], coef)
                total = tuple(int(v) for v in terms.sum(axis=1) % n)
                rhs = tuple((a - b) % n for a, b in zip(rhs, total))
            for j, e in zip(js.tolist(), es.tolist()):
                bound = min(bound, digits[j] + e)
        try:
            num = ring.divide_by_uniformizer(rhs)
        except ArithmeticError as exc:
            raise CertificateFailure(f"degree {d}: right-hand side lost integrality ({exc})") from None
        unit = tuple(int(v) for v in pipow[:, d - 1]) if d - 1 < Mpi else ring.zero_coords()
        unit = tuple((u - o) % n for u, o in zip(unit, ring.one_coords()))
        c[:, d] = ring.mul_coords(num, ring.inv_coords(unit))
        digits[d] = bound - 1
        prefmin[d] = min(prefmin[d - 1], digits[d])

    series = Series(ring, c)
    lhs = ps_compose(series, ctx.pi_series)
    rhs_series = ps_compose(ctx.pi_series, series)
    result = LTEndomorphism(ctx, alpha, series, digits, lhs == rhs_series)
    if not result.commutes:
        raise CertificateFailure("commutation check failed at working precision")
    if result.min_digits < 1:
        raise CertificateFailure(
            f"pdigits={ring.pdigits} leaves {result.min_digits} certified digits at some degree <= {N}")
    return result


def _scalar_rows(ring, scalars: np.ndarray) -> np.ndarray:
    out = ring.zeros(len(scalars))
    out[0, :] = scalars
    return out


def construct_endomorphism(kind, p: int, alpha, precision: int, pdigits: int = 4,
                           max_pdigits: int = 64, residue_modulus=()) -> LTEndomorphism:
    """Adaptive wrapper: double ``pdigits`` until the certificate passes."""
    M = pdigits
    last = None
    while M <= max_pdigits:
        ring = BaseRing(kind, p, M, residue_modulus)
        a = parse_element(ring, alpha) if isinstance(alpha, str) else ring.element(
            alpha.coords if isinstance(alpha, RingElem) else alpha)
        try:
            return lt_endomorphism(LTContext(ring, precision), a)
        except CertificateFailure as exc:
            last = exc
            M *= 2
    raise CertificateFailure(f"no certificate up to pdigits={max_pdigits}: {last}")


def lt_reduce(F) -> Automorphism:
    """Reduce ``[alpha]`` coefficientwise mod the maximal ideal.

    Accepts an :class:`LTEndomorphism` (its certificate is checked) or a bare
    series over a :class:`BaseRing`.
    """
    if isinstance(F, LTEndomorphism):
        if not F.certified:
            raise CertificateFailure("endomorphism is not certified mod pi")
        F = F.series
    ring: BaseRing = F.ring
    lead = ring.reduce_coords(F.coord(1))
    if lead != ring.residue_field.one_coords():
        raise ValueError("leading coefficient is not 1 mod the maximal ideal; not a wild automorphism")
    res = ring.residue_field
    coeffs = [ring.reduce_coords(F.coord(k)) for k in range(F.precision + 1)]
    return Automorphism(Series.from_coeffs(res, coeffs, F.precision))


def reduced_automorphism(kind, p: int, alpha, precision: int, pdigits: int = 4,
                         residue_modulus=()) -> Automorphism:
    """``sigma_alpha`` over the residue field, built from scratch."""
    return lt_reduce(construct_endomorphism(kind, p, alpha, precision, pdigits,
                                            residue_modulus=residue_modulus))


@dataclass
class ComposeCheck:
    passed: bool
    lifted: bool
    reduced: bool
    digits: int


def lt_compose_check(ctx: LTContext, alpha: RingElem, beta: RingElem) -> ComposeCheck:
    """``[alpha] o [beta] = [alpha beta]`` to certified precision, and the same
    identity after reduction (reduce-then-compose vs compose-then-reduce)."""
    fa = lt_endomorphism(ctx, alpha)
    fb = lt_endomorphism(ctx, beta)
    fab = lt_endomorphism(ctx, alpha * beta)
    comp = ps_compose(fa.series, fb.series)
    digits = min(fa.min_digits, fb.min_digits, fab.min_digits)
    ring = ctx.ring
    diff = comp - fab.series
    lifted = True
    for k in range(diff.precision + 1):
        v = ring.valuation_coords(diff.coord(k))
        if not isinstance(v, PrecisionExhausted) and v < digits:
            lifted = False
            break
    reduced = True
    if ring.reduce_coords(alpha.coords) == ring.residue_field.one_coords() and \
            ring.reduce_coords(beta.coords) == ring.residue_field.one_coords():
        sa, sb, sab = lt_reduce(fa), lt_reduce(fb), lt_reduce(fab)
        reduced = (sa @ sb) == sab and lt_reduce(comp) == sab
    return ComposeCheck(lifted and reduced, lifted, reduced, digits)
