"""Instrumented finite fields.

Two kinds of field are supported: odd prime fields F_p and binary fields
F_{2^k} in a polynomial basis. Elements support the usual Python operators;
those are *uncounted* and exist for oracles and tests. Formula code routes
every operation through a :class:`CountingContext`, which tallies

    M  general multiplications
    S  squarings
    m  multiplications by registered constants
    I  inversions
    A  additions, subtractions, negations, and multiplications by small
       integer literals

Small integer literals (2, 3, 4, 8, ...) are not constants in the ``m`` sense;
multiplying by them is a handful of additions and is counted in ``A``.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Optional, Union

import numpy as np


class FieldError(ValueError):
    pass


class SpecMismatchError(FieldError):
    pass


class ContractViolation(FieldError):
    """A documented precondition does not hold."""


class UnsupportedOperation(FieldError):
    pass


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    small = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
    for q in small:
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    # deterministic for n < 3.3e24
    for a in small:
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


# --- GF(2)[x] helpers on integer bitmasks ---------------------------------

def _clmul(a: int, b: int) -> int:
    r = 0
    while b:
        if b & 1:
            r ^= a
        a <<= 1
        b >>= 1
    return r


def _pmod(a: int, m: int) -> int:
    dm = m.bit_length()
    while a.bit_length() >= dm:
        a ^= m << (a.bit_length() - dm)
    return a


def _pgcd(a: int, b: int) -> int:
    while b:
        a, b = b, _pmod(a, b)
    return a


def is_irreducible_gf2(poly: int) -> bool:
    """Ben-Or irreducibility test for a polynomial over F_2 given as a bitmask."""
    k = poly.bit_length() - 1
    if k < 1:
        return False
    if k == 1:
        return True
    if not poly & 1:
        return False
    x = 0b10
    t = x
    for _ in range(k // 2):
        t = _pmod(_clmul(t, t), poly)
        if _pgcd(poly, t ^ x) != 1:
            return False
    return True


# Fixed irreducible polynomials, one per degree. Trinomials where one exists.
BINARY_POLYS = {
    2: 0b111,
    3: 0b1011,
    4: 0b10011,
    5: 0b100101,
    6: 0b1000011,
    7: 0b10000011,
    8: 0x11B,  # x^8 + x^4 + x^3 + x + 1
    9: 0x211,
    10: 0x409,
    11: 0x805,
    12: 0x1009,
    13: 0x201B,
    14: 0x4021,
    15: 0x8003,
    16: 0x1002B,
}


# --- field specs -----------------------------------------------------------

@dataclass(frozen=True)
class PrimeField:
    p: int

    kind = "odd-prime"

    def __post_init__(self):
        if self.p < 5 or not is_prime(self.p):
            raise FieldError(f"p must be a prime >= 5, got {self.p}")
        if self.p >= 1 << 64:
            raise FieldError("p must fit in 64 bits")

    @property
    def characteristic(self) -> int:
        return self.p

    @property
    def order(self) -> int:
        return self.p

    def __call__(self, value: int) -> "FieldElement":
        return FieldElement(value % self.p, self)

    def from_int(self, n: int) -> "FieldElement":
        return FieldElement(n % self.p, self)

    def elements(self) -> Iterator["FieldElement"]:
        for v in range(self.p):
            yield FieldElement(v, self)

    def _add(self, x: int, y: int) -> int:
        return (x + y) % self.p

    def _sub(self, x: int, y: int) -> int:
        return (x - y) % self.p

    def _neg(self, x: int) -> int:
        return -x % self.p

    def _mul(self, x: int, y: int) -> int:
        return x * y % self.p

    def _inv(self, x: int) -> int:
        if x == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(x, -1, self.p)

    def _int(self, n: int) -> int:
        return n % self.p

    def __str__(self):
        return f"F_{self.p}"


@dataclass(frozen=True)
class BinaryField:
    k: int
    poly: int = 0

    kind = "binary"

    def __post_init__(self):
        if not 2 <= self.k <= 16:
            raise FieldError(f"binary fields need 2 <= k <= 16, got {self.k}")
        if self.poly == 0:
            object.__setattr__(self, "poly", BINARY_POLYS[self.k])
        if self.poly.bit_length() - 1 != self.k or not is_irreducible_gf2(self.poly):
            raise FieldError(f"{self.poly:#x} is not an irreducible polynomial of degree {self.k}")

    @property
    def characteristic(self) -> int:
        return 2

    @property
    def order(self) -> int:
        return 1 << self.k

    def __call__(self, value: int) -> "FieldElement":
        """Element from its polynomial-basis bitmask."""
        return FieldElement(_pmod(value, self.poly) if value >> self.k else value, self)

    def from_int(self, n: int) -> "FieldElement":
        return FieldElement(n & 1, self)

    def elements(self) -> Iterator["FieldElement"]:
        for v in range(1 << self.k):
            yield FieldElement(v, self)

    def _add(self, x: int, y: int) -> int:
        return x ^ y

    _sub = _add

    def _neg(self, x: int) -> int:
        return x

    def _mul(self, x: int, y: int) -> int:
        return _pmod(_clmul(x, y), self.poly)

    def _inv(self, x: int) -> int:
        if x == 0:
            raise ZeroDivisionError("inverse of zero")
        # x^(2^k - 2)
        r, base, e = 1, x, (1 << self.k) - 2
        while e:
            if e & 1:
                r = self._mul(r, base)
            base = self._mul(base, base)
            e >>= 1
        return r

    def _int(self, n: int) -> int:
        return n & 1

    def __str__(self):
        return f"F_2^{self.k}"


FieldSpec = Union[PrimeField, BinaryField]


class FieldElement:
    """Canonical field element. Operators are uncounted."""

    __slots__ = ("value", "spec")

    def __init__(self, value: int, spec: FieldSpec):
        self.value = value
        self.spec = spec

    def _coerce(self, other) -> int:
        if isinstance(other, FieldElement):
            if other.spec is not self.spec and other.spec != self.spec:
                raise SpecMismatchError(f"{self.spec} vs {other.spec}")
            return other.value
        if isinstance(other, int):
            return self.spec._int(other)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.spec._add(self.value, o), self.spec)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.spec._sub(self.value, o), self.spec)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.spec._sub(o, self.value), self.spec)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.spec._mul(self.value, o), self.spec)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.spec._mul(self.value, self.spec._inv(o)), self.spec)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.spec._mul(o, self.spec._inv(self.value)), self.spec)

    def __neg__(self):
        return FieldElement(self.spec._neg(self.value), self.spec)

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        r, base = 1, self.value
        mul = self.spec._mul
        while e:
            if e & 1:
                r = mul(r, base)
            base = mul(base, base)
            e >>= 1
        return FieldElement(r, self.spec)

    def inverse(self) -> "FieldElement":
        return FieldElement(self.spec._inv(self.value), self.spec)

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.value == other.value and self.spec == other.spec
        if isinstance(other, int):
            return self.value == self.spec._int(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.value, self.spec))

    def __bool__(self):
        return self.value != 0

    def __int__(self):
        return self.value

    def __repr__(self):
        if self.spec.kind == "binary":
            return f"{self.value:#x}"
        return str(self.value)

    def is_square(self) -> bool:
        if self.spec.kind == "binary" or self.value == 0:
            return True
        p = self.spec.p
        return pow(self.value, (p - 1) // 2, p) == 1


# --- counting --------------------------------------------------------------

@dataclass
class OpCounter:
    M: int = 0
    S: int = 0
    m: int = 0
    I: int = 0
    A: int = 0

    def __sub__(self, other: "OpCounter") -> "OpCounter":
        return OpCounter(self.M - other.M, self.S - other.S, self.m - other.m,
                         self.I - other.I, self.A - other.A)

    def copy(self) -> "OpCounter":
        return OpCounter(self.M, self.S, self.m, self.I, self.A)

    def as_dict(self) -> dict:
        return {"M": self.M, "S": self.S, "m": self.m, "I": self.I, "A": self.A}

    @property
    def ms(self) -> tuple[int, int]:
        return (self.M, self.S)


class CountingContext:
    """Routes field operations and counts them.

    A context belongs to one field. Constants multiplied in with
    :meth:`mul_const` must be registered first.
    """

    def __init__(self, spec: FieldSpec, constants: Iterable[FieldElement] = ()):
        self.spec = spec
        self.counter = OpCounter()
        self.constants: set[int] = set()
        self.register(*constants)

    def register(self, *constants: FieldElement) -> None:
        for c in constants:
            self._check(c)
            self.constants.add(c.value)

    def _check(self, a: FieldElement) -> None:
        if a.spec is not self.spec and a.spec != self.spec:
            raise SpecMismatchError(f"element of {a.spec} used in context over {self.spec}")

    def elem(self, value: int) -> FieldElement:
        return self.spec(value)

    # counted operations

    def mul(self, a: FieldElement, b: FieldElement) -> FieldElement:
        self._check(a)
        self._check(b)
        self.counter.M += 1
        return FieldElement(self.spec._mul(a.value, b.value), self.spec)

    def square(self, a: FieldElement) -> FieldElement:
        self._check(a)
        self.counter.S += 1
        return FieldElement(self.spec._mul(a.value, a.value), self.spec)

    def cube(self, a: FieldElement) -> FieldElement:
        """a^3 as (a^2)*a: 1S + 1M."""
        return self.mul(self.square(a), a)

    def mul_const(self, c: FieldElement, a: FieldElement) -> FieldElement:
        self._check(c)
        self._check(a)
        if c.value not in self.constants:
            raise ContractViolation(f"constant {c!r} is not registered")
        self.counter.m += 1
        return FieldElement(self.spec._mul(c.value, a.value), self.spec)

    def mul_int(self, n: int, a: FieldElement) -> FieldElement:
        self._check(a)
        self.counter.A += 1
        return FieldElement(self.spec._mul(self.spec._int(n), a.value), self.spec)

    def inv(self, a: FieldElement) -> FieldElement:
        self._check(a)
        if a.value == 0:
            raise ZeroDivisionError("inverse of zero")
        self.counter.I += 1
        return FieldElement(self.spec._inv(a.value), self.spec)

    def add(self, *terms: FieldElement) -> FieldElement:
        acc = terms[0].value
        self._check(terms[0])
        for t in terms[1:]:
            self._check(t)
            acc = self.spec._add(acc, t.value)
        self.counter.A += len(terms) - 1
        return FieldElement(acc, self.spec)

    def sub(self, a: FieldElement, b: FieldElement) -> FieldElement:
        self._check(a)
        self._check(b)
        self.counter.A += 1
        return FieldElement(self.spec._sub(a.value, b.value), self.spec)

    def neg(self, a: FieldElement) -> FieldElement:
        self._check(a)
        self.counter.A += 1
        return FieldElement(self.spec._neg(a.value), self.spec)

    def snapshot(self) -> OpCounter:
        return self.counter.copy()

    def snapshot_and_reset(self) -> OpCounter:
        out = self.counter
        self.counter = OpCounter()
        return out


def counter_snapshot_and_reset(ctx: CountingContext) -> OpCounter:
    return ctx.snapshot_and_reset()


# --- roots -----------------------------------------------------------------

def sqrt(a: FieldElement) -> Optional[FieldElement]:
    """Square root in F_p (Tonelli-Shanks), the smaller of the two roots."""
    spec = a.spec
    if spec.kind != "odd-prime":
        raise UnsupportedOperation("sqrt is only provided for odd prime fields")
    p, n = spec.p, a.value
    if n == 0:
        return spec(0)
    if pow(n, (p - 1) // 2, p) != 1:
        return None
    q, s = p - 1, 0
    while q % 2 == 0:
        q //= 2
        s += 1
    z = 2
    while pow(z, (p - 1) // 2, p) != p - 1:
        z += 1
    m, c, t, r = s, pow(z, q, p), pow(n, q, p), pow(n, (q + 1) // 2, p)
    while t != 1:
        i, t2 = 0, t
        while t2 != 1:
            t2 = t2 * t2 % p
            i += 1
        b = pow(c, 1 << (m - i - 1), p)
        m, c = i, b * b % p
        t, r = t * c % p, r * b % p
    return spec(min(r, p - r))


def cube_root_of_unity(spec: FieldSpec) -> Optional[FieldElement]:
    """Smallest primitive cube root of unity in F_p, if p = 1 mod 3."""
    if spec.kind != "odd-prime":
        raise UnsupportedOperation("cube roots of unity are only provided for odd prime fields")
    p = spec.p
    if p % 3 != 1:
        return None
    g = 2
    while True:
        w = pow(g, (p - 1) // 3, p)
        if w != 1:
            return spec(min(w, w * w % p))
        g += 1


def solve_artin_schreier(beta: FieldElement) -> Optional[FieldElement]:
    """A root z of z^2 + z = beta in F_{2^k}, or None.

    The map z -> z^2 + z is F_2-linear; solve it as a k x k system over F_2.
    The root with the clear lowest free bit is returned (the other is z + 1).
    """
    spec = beta.spec
    if spec.kind != "binary":
        raise UnsupportedOperation("Artin-Schreier equations only arise in characteristic 2")
    k = spec.k
    cols = [spec._mul(1 << i, 1 << i) ^ (1 << i) for i in range(k)]
    # rows of augmented matrix: bit j of sum_i z_i cols[i] == bit j of beta
    rows = []
    for j in range(k):
        r = 0
        for i in range(k):
            if cols[i] >> j & 1:
                r |= 1 << i
        rows.append([r, beta.value >> j & 1])
    pivots = []
    rank = 0
    for i in range(k):
        piv = next((r for r in range(rank, k) if rows[r][0] >> i & 1), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        for r in range(k):
            if r != rank and rows[r][0] >> i & 1:
                rows[r][0] ^= rows[rank][0]
                rows[r][1] ^= rows[rank][1]
        pivots.append(i)
        rank += 1
    if any(rows[r][1] for r in range(rank, k)):
        return None
    z = 0
    for r, i in enumerate(pivots):
        if rows[r][1]:
            z |= 1 << i
    return spec(z)


# --- deterministic sampling ------------------------------------------------

class SeedStream:
    """Reproducible 64-bit stream on numpy's Philox4x64 counter-based generator.

    Only ``random_raw`` output is consumed, which numpy keeps bit-stable
    across releases. ``split(i)`` derives an independent child stream keyed
    by ``(seed, path..., i)``.
    """

    def __init__(self, seed: int, path: tuple[int, ...] = ()):
        self.seed = seed
        self.path = path
        ss = np.random.SeedSequence([seed & (2**64 - 1), *path])
        self._bg = np.random.Philox(ss)

    def next_u64(self) -> int:
        return int(self._bg.random_raw())

    def below(self, n: int) -> int:
        """Uniform integer in [0, n) by masked rejection."""
        if n <= 0:
            raise ValueError("n must be positive")
        bits = (n - 1).bit_length()
        mask = (1 << bits) - 1
        while True:
            r = self.next_u64() & mask
            if r < n:
                return r

    def split(self, i: int) -> "SeedStream":
        return SeedStream(self.seed, self.path + (i,))


def sample_uniform(spec: Union[FieldSpec, "CountingContext"], stream: SeedStream) -> FieldElement:
    """Uniform element; ``spec`` may also be a counting context."""
    spec = getattr(spec, "spec", spec)
    return FieldElement(stream.below(spec.order), spec)


def sample_nonzero(spec: FieldSpec, stream: SeedStream) -> FieldElement:
    return FieldElement(1 + stream.below(spec.order - 1), spec)


def field_from_selector(prime: Optional[int] = None, binary: Optional[int] = None) -> FieldSpec:
    if (prime is None) == (binary is None):
        raise FieldError("give exactly one of prime / binary")
    return PrimeField(prime) if prime is not None else BinaryField(binary)
