"""Exact scalar fields: F_p, F_{p^d} (d <= 8) and Q.

A field object does arithmetic on *raw* values: ``int`` residues for F_p,
coefficient tuples (little-endian in the generator ``t``) for F_{p^d}, and
``fractions.Fraction`` for Q.  Raw values are always canonical, so ``==`` and
hashing on them are exact.  ``Scalar`` wraps a raw value with its field for
operator-style use.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from functools import lru_cache
from itertools import product
from math import isqrt
from typing import Any, Iterator

from ..errors import UsageError

MAX_EXTENSION_DEGREE = 8

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, exact for n < 3.3e24."""
    if n < 2:
        return False
    for b in _MR_BASES:
        if n % b == 0:
            return n == b
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


class Field:
    """Common interface.  Subclasses fill in the raw arithmetic."""

    kind: str
    characteristic: int
    zero: Any
    one: Any

    @property
    def order(self) -> int | None:
        return None

    @property
    def is_finite(self) -> bool:
        return self.order is not None

    def add(self, a, b):
        raise NotImplementedError

    def sub(self, a, b):
        raise NotImplementedError

    def neg(self, a):
        raise NotImplementedError

    def mul(self, a, b):
        raise NotImplementedError

    def inv(self, a):
        raise NotImplementedError

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow(self, a, n: int):
        if n < 0:
            return self.pow(self.inv(a), -n)
        result = self.one
        while n:
            if n & 1:
                result = self.mul(result, a)
            a = self.mul(a, a)
            n >>= 1
        return result

    def from_int(self, n: int):
        raise NotImplementedError

    def parse(self, v):
        raise NotImplementedError

    def format(self, a):
        raise NotImplementedError

    def random(self, rng: random.Random):
        raise NotImplementedError

    def elements(self) -> Iterator:
        raise UsageError(f"{self} is infinite")

    def to_json(self) -> dict:
        raise NotImplementedError

    def __call__(self, v) -> "Scalar":
        return Scalar(self, self.parse(v))

    def sum(self, values):
        acc = self.zero
        for v in values:
            acc = self.add(acc, v)
        return acc


@dataclass(frozen=True)
class PrimeField(Field):
    p: int
    kind: str = dc_field(default="prime", init=False, repr=False)

    def __post_init__(self):
        if not is_prime(self.p):
            raise UsageError(f"{self.p} is not prime")

    @property
    def characteristic(self):
        return self.p

    @property
    def zero(self):
        return 0

    @property
    def one(self):
        return 1

    @property
    def order(self):
        return self.p

    @property
    def degree(self):
        return 1

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def neg(self, a):
        return -a % self.p

    def mul(self, a, b):
        return a * b % self.p

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of 0")
        return pow(a, -1, self.p)

    def pow(self, a, n):
        if n < 0:
            return pow(self.inv(a), -n, self.p)
        return pow(a, n, self.p)

    def from_int(self, n):
        return n % self.p

    def parse(self, v):
        if isinstance(v, Scalar):
            return v.value
        if isinstance(v, bool):
            raise UsageError("booleans are not field elements")
        if isinstance(v, int):
            return v % self.p
        if isinstance(v, Fraction):
            return self.div(v.numerator % self.p, v.denominator % self.p)
        if isinstance(v, str):
            try:
                return self.parse(Fraction(v.strip()))
            except (ValueError, ZeroDivisionError) as exc:
                raise UsageError(f"cannot read {v!r} in F_{self.p}") from exc
        raise UsageError(f"cannot read {v!r} in F_{self.p}")

    def format(self, a):
        return str(a)

    def random(self, rng):
        return rng.randrange(self.p)

    def elements(self):
        return iter(range(self.p))

    def pth_root(self, a):
        return a

    def to_json(self):
        return {"kind": "prime", "p": self.p}

    def __str__(self):
        return f"F_{self.p}"


@dataclass(frozen=True)
class ExtensionField(Field):
    """F_p[t]/(modulus).  ``modulus`` is monic, little-endian, irreducible."""

    p: int
    modulus: tuple
    kind: str = dc_field(default="extension", init=False, repr=False)

    def __post_init__(self):
        from .poly import is_irreducible

        if not is_prime(self.p):
            raise UsageError(f"{self.p} is not prime")
        m = tuple(int(c) % self.p for c in self.modulus)
        object.__setattr__(self, "modulus", m)
        d = len(m) - 1
        if d < 1 or m[-1] != 1:
            raise UsageError("extension modulus must be monic of degree >= 1")
        if d > MAX_EXTENSION_DEGREE:
            raise UsageError(f"extension degree {d} exceeds {MAX_EXTENSION_DEGREE}")
        if not is_irreducible(PrimeField(self.p), m):
            raise UsageError(f"modulus {list(m)} is reducible over F_{self.p}")

    @property
    def degree(self):
        return len(self.modulus) - 1

    @property
    def characteristic(self):
        return self.p

    @property
    def order(self):
        return self.p ** self.degree

    @property
    def zero(self):
        return (0,) * self.degree

    @property
    def one(self):
        return (1,) + (0,) * (self.degree - 1)

    @property
    def generator(self):
        """The class of t."""
        if self.degree == 1:
            return (-self.modulus[0] % self.p,)
        return (0, 1) + (0,) * (self.degree - 2)

    def add(self, a, b):
        p = self.p
        return tuple((x + y) % p for x, y in zip(a, b))

    def sub(self, a, b):
        p = self.p
        return tuple((x - y) % p for x, y in zip(a, b))

    def neg(self, a):
        p = self.p
        return tuple(-x % p for x in a)

    def mul(self, a, b):
        return _ext_mul(self.p, self.modulus, a, b)

    def inv(self, a):
        if a == self.zero:
            raise ZeroDivisionError("inverse of 0")
        return self.pow(a, self.order - 2)

    def from_int(self, n):
        return (n % self.p,) + (0,) * (self.degree - 1)

    def parse(self, v):
        if isinstance(v, Scalar):
            return v.value
        if isinstance(v, (list, tuple)):
            if len(v) > self.degree:
                raise UsageError(f"too many coefficients for {self}")
            c = [PrimeField(self.p).parse(x) for x in v]
            return tuple(c + [0] * (self.degree - len(c)))
        return self.from_int(PrimeField(self.p).parse(v))

    def format(self, a):
        if all(c == 0 for c in a[1:]):
            return str(a[0])
        return list(a)

    def random(self, rng):
        return tuple(rng.randrange(self.p) for _ in range(self.degree))

    def elements(self):
        return (tuple(c) for c in product(range(self.p), repeat=self.degree))

    def pth_root(self, a):
        # x -> x^p is an automorphism of order d
        return self.pow(a, self.order // self.p)

    def to_json(self):
        return {"kind": "extension", "p": self.p, "deg": self.degree,
                "modulus": list(self.modulus)}

    def __str__(self):
        return f"F_{self.p}^{self.degree}"


@lru_cache(maxsize=1 << 16)
def _ext_mul(p, m, a, b):
    d = len(m) - 1
    prod = [0] * (2 * d - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    prod[i + j] += x * y
    for k in range(2 * d - 2, d - 1, -1):
        c = prod[k] % p
        if c:
            for i in range(d):
                prod[k - d + i] -= c * m[i]
    return tuple(v % p for v in prod[:d])


@dataclass(frozen=True)
class RationalField(Field):
    kind: str = dc_field(default="rationals", init=False, repr=False)

    characteristic = 0

    @property
    def zero(self):
        return Fraction(0)

    @property
    def one(self):
        return Fraction(1)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of 0")
        return 1 / a

    def div(self, a, b):
        if b == 0:
            raise ZeroDivisionError("division by 0")
        return a / b

    def pow(self, a, n):
        return a ** n

    def from_int(self, n):
        return Fraction(n)

    def parse(self, v):
        if isinstance(v, Scalar):
            return v.value
        if isinstance(v, bool):
            raise UsageError("booleans are not field elements")
        if isinstance(v, (int, Fraction)):
            return Fraction(v)
        if isinstance(v, str):
            try:
                return Fraction(v.strip())
            except (ValueError, ZeroDivisionError) as exc:
                raise UsageError(f"cannot read {v!r} as a rational") from exc
        raise UsageError(f"cannot read {v!r} as a rational")

    def format(self, a):
        return str(a)

    def random(self, rng):
        return Fraction(rng.randint(-9, 9), rng.randint(1, 4))

    def to_json(self):
        return {"kind": "rationals"}

    def __str__(self):
        return "Q"


QQ = RationalField()


@lru_cache(maxsize=None)
def default_modulus(p: int, d: int) -> tuple:
    """Smallest monic irreducible of degree d over F_p in base-p order."""
    from .poly import is_irreducible

    if d < 1 or d > MAX_EXTENSION_DEGREE:
        raise UsageError(f"extension degree must be in 1..{MAX_EXTENSION_DEGREE}")
    Fp = PrimeField(p)
    for n in range(p ** d):
        low = [(n // p ** i) % p for i in range(d)]
        f = tuple(low) + (1,)
        if f[0] != 0 or d == 1:
            if is_irreducible(Fp, f):
                return f
    raise AssertionError("no irreducible polynomial found")  # impossible


def GF(q: int, modulus=None) -> Field:
    """F_q for q = p or q = p^d; the modulus defaults to ``default_modulus``."""
    if q < 2:
        raise UsageError(f"{q} is not a prime power")
    p = next((f for f in range(2, isqrt(q) + 1) if q % f == 0), q)
    d, r = 0, q
    while r % p == 0:
        r //= p
        d += 1
    if r != 1 or not is_prime(p):
        raise UsageError(f"{q} is not a prime power")
    if d == 1 and modulus is None:
        return PrimeField(p)
    return ExtensionField(p, tuple(modulus) if modulus is not None else default_modulus(p, d))


def field_from_json(obj: dict) -> Field:
    try:
        kind = obj["kind"]
        if kind == "prime":
            return PrimeField(int(obj["p"]))
        if kind == "extension":
            p = int(obj["p"])
            if "modulus" in obj:
                f = ExtensionField(p, tuple(int(c) for c in obj["modulus"]))
                if "deg" in obj and int(obj["deg"]) != f.degree:
                    raise UsageError("'deg' disagrees with the modulus")
                return f
            return ExtensionField(p, default_modulus(p, int(obj["deg"])))
        if kind == "rationals":
            return QQ
    except (KeyError, TypeError) as exc:
        raise UsageError(f"bad field specification {obj!r}") from exc
    raise UsageError(f"unknown field kind {obj.get('kind')!r}")


class Scalar:
    """A field element with operators.  Integers coerce into the field."""

    __slots__ = ("field", "value")

    def __init__(self, field: Field, value):
        self.field = field
        self.value = value

    def _coerce(self, other):
        if isinstance(other, Scalar):
            if other.field != self.field:
                raise UsageError(f"mixing {self.field} and {other.field}")
            return other.value
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.field.parse(other)
        return NotImplemented

    def _wrap(self, v):
        return Scalar(self.field, v)

    def __add__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else self._wrap(self.field.add(self.value, o))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else self._wrap(self.field.sub(self.value, o))

    def __rsub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else self._wrap(self.field.sub(o, self.value))

    def __mul__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else self._wrap(self.field.mul(self.value, o))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else self._wrap(self.field.div(self.value, o))

    def __rtruediv__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else self._wrap(self.field.div(o, self.value))

    def __neg__(self):
        return self._wrap(self.field.neg(self.value))

    def __pow__(self, n: int):
        return self._wrap(self.field.pow(self.value, n))

    def inverse(self):
        return self._wrap(self.field.inv(self.value))

    def __eq__(self, other):
        try:
            o = self._coerce(other)
        except UsageError:
            return False
        return o is not NotImplemented and self.value == o

    def __hash__(self):
        return hash((self.field, self.value))

    def __bool__(self):
        return self.value != self.field.zero

    def __repr__(self):
        return f"{self.field}({self.field.format(self.value)!r})"
