"""Exact arithmetic in F_q = F_p[z]/(h(z)) for q = p or p**2."""
from __future__ import annotations

import random
from dataclasses import dataclass, field

from .rings import CoefficientRing


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def default_modulus(p: int, m: int) -> tuple[int, ...]:
    """Default defining polynomial, low degree first.

    ``z**2 + 1`` when p = 3 mod 4, ``z**2 + z + 1`` for p = 2, and
    ``z**2 - c`` with ``c`` the least quadratic non-residue otherwise.
    """
    if m == 1:
        return (0, 1)
    if m != 2:
        raise ValueError("only m in {1, 2} is supported")
    if p == 2:
        return (1, 1, 1)
    if p % 4 == 3:
        return (1, 0, 1)
    squares = {(a * a) % p for a in range(p)}
    c = next(c for c in range(2, p) if c not in squares)
    return ((-c) % p, 0, 1)


class SpecMismatch(ValueError):
    """Raised when elements from different fields are combined."""


@dataclass(frozen=True, eq=False)
class FieldSpec(CoefficientRing):
    """The field F_p[z]/(modulus).  ``modulus`` is listed low degree first."""

    p: int
    m: int = 1
    modulus: tuple[int, ...] = field(default=())

    def __post_init__(self):
        p, m = self.p, self.m
        if not is_prime(p):
            raise ValueError(f"p={p} is not prime")
        if m not in (1, 2):
            raise ValueError("only m in {1, 2} is supported")
        mod = tuple(int(c) % p for c in (self.modulus or default_modulus(p, m)))
        if len(mod) != m + 1 or mod[-1] != 1:
            raise ValueError(f"modulus {mod} is not monic of degree {m}")
        if m == 2 and any((r * r + mod[1] * r + mod[0]) % p == 0 for r in range(p)):
            raise ValueError(f"modulus {mod} has a root in F_{p}")
        object.__setattr__(self, "modulus", mod)
        object.__setattr__(self, "n", p)
        # z**2 = s + t z
        object.__setattr__(self, "s", (-mod[0]) % p if m == 2 else 0)
        object.__setattr__(self, "t", (-mod[1]) % p if m == 2 else 0)
        self._setup_arith()

    def __eq__(self, other):
        return isinstance(other, FieldSpec) and (self.p, self.m, self.modulus) == (other.p, other.m, other.modulus)

    def __hash__(self):
        return hash((self.p, self.m, self.modulus))

    def __repr__(self):
        return f"FieldSpec({self.header()})"

    @property
    def q(self) -> int:
        return self.p**self.m

    def header(self) -> str:
        return f"p={self.p};m={self.m};mod={','.join(map(str, self.modulus))}"

    @classmethod
    def parse(cls, text: str) -> "FieldSpec":
        parts = dict(item.split("=", 1) for item in text.strip().split(";"))
        p, m = int(parts["p"]), int(parts["m"])
        mod = tuple(int(c) for c in parts["mod"].split(",")) if "mod" in parts else ()
        return cls(p, m, mod)

    def __call__(self, *coeffs) -> "FieldElem":
        if len(coeffs) == 1 and not isinstance(coeffs[0], int):
            coeffs = tuple(coeffs[0])
        coeffs = tuple(int(c) % self.p for c in coeffs)
        coeffs = coeffs + (0,) * (self.m - len(coeffs))
        if len(coeffs) != self.m:
            raise ValueError(f"expected {self.m} coordinates, got {len(coeffs)}")
        return FieldElem(self, coeffs)

    def zero(self) -> "FieldElem":
        return FieldElem(self, self.zero_coords())

    def one(self) -> "FieldElem":
        return FieldElem(self, self.one_coords())

    def gen(self) -> "FieldElem":
        if self.m == 1:
            raise ValueError("F_p has no adjoined generator")
        return FieldElem(self, (0, 1))

    def elements(self):
        if self.m == 1:
            return [FieldElem(self, (a,)) for a in range(self.p)]
        return [FieldElem(self, (a, b)) for b in range(self.p) for a in range(self.p)]

    def random_element(self, rng: random.Random, nonzero: bool = False) -> "FieldElem":
        while True:
            e = FieldElem(self, tuple(rng.randrange(self.p) for _ in range(self.m)))
            if not (nonzero and e.is_zero()):
                return e

    def parse_element(self, text: str) -> "FieldElem":
        return self(*(int(c) for c in text.strip().split(",")))

    def element(self, coords) -> "FieldElem":
        return FieldElem(self, tuple(int(c) % self.p for c in coords))


@dataclass(frozen=True)
class FieldElem:
    spec: FieldSpec
    coeffs: tuple[int, ...]

    def _check(self, other: "FieldElem"):
        if not isinstance(other, FieldElem) or other.spec != self.spec:
            raise SpecMismatch(f"cannot combine elements of {self.spec} and {getattr(other, 'spec', other)}")

    def __add__(self, other):
        self._check(other)
        p = self.spec.p
        return FieldElem(self.spec, tuple((a + b) % p for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other):
        self._check(other)
        p = self.spec.p
        return FieldElem(self.spec, tuple((a - b) % p for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self):
        p = self.spec.p
        return FieldElem(self.spec, tuple((-a) % p for a in self.coeffs))

    def __mul__(self, other):
        return ff_mul(self, other)

    def __pow__(self, k: int):
        if k < 0:
            return ff_inv(self) ** (-k)
        result, base = self.spec.one(), self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def is_one(self) -> bool:
        return self.coeffs == self.spec.one_coords()

    def __str__(self):
        return ",".join(map(str, self.coeffs))

    def __repr__(self):
        if self.spec.m == 1:
            return f"F{self.spec.p}({self.coeffs[0]})"
        a, b = self.coeffs
        return f"F{self.spec.q}({a}+{b}z)"


def ff_mul(a: FieldElem, b: FieldElem) -> FieldElem:
    a._check(b)
    return FieldElem(a.spec, a.spec.mul_coords(a.coeffs, b.coeffs))


def ff_inv(a: FieldElem) -> FieldElem:
    if a.is_zero():
        raise ZeroDivisionError("zero has no inverse")
    return FieldElem(a.spec, a.spec.inv_coords(a.coeffs))


def ff_frobenius(a: FieldElem) -> FieldElem:
    """``a**p``."""
    return a ** a.spec.p
