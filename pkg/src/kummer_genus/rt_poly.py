"""The polynomial ring F_q[T], its monic irreducibles, and residue fields."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Optional, Sequence

from .errors import (
    DeskBoundExceeded,
    DivisionByZero,
    DivisionByZeroPoly,
    InputError,
    MixedFields,
    NotMonic,
    ZeroPolynomial,
)
from .fq_arith import FieldParams, FqElem, prime_factors

MAX_ENUMERATION = 1 << 16


def _trim(coeffs: Iterable[int]) -> tuple[int, ...]:
    c = list(coeffs)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


@dataclass(frozen=True)
class Poly:
    """Dense polynomial, ascending coefficients (integer encodings), no trailing zeros."""

    field: FieldParams
    coeffs: tuple[int, ...]

    def __post_init__(self):
        if self.coeffs and self.coeffs[-1] == 0:
            object.__setattr__(self, "coeffs", _trim(self.coeffs))

    @classmethod
    def of(cls, field: FieldParams, coeffs: Sequence) -> "Poly":
        return cls(field, _trim(field(c).value for c in coeffs))

    @classmethod
    def T(cls, field: FieldParams) -> "Poly":
        return cls(field, (0, 1))

    @classmethod
    def const(cls, field: FieldParams, c) -> "Poly":
        return cls(field, _trim([field(c).value]))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def lc(self) -> FqElem:
        if not self.coeffs:
            return self.field.zero
        return self.field(self.coeffs[-1])

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def coefficients(self) -> list[FqElem]:
        return [self.field(c) for c in self.coeffs]

    def sort_key(self) -> tuple:
        return (self.degree, tuple(reversed(self.coeffs)))

    def _check(self, other: "Poly") -> None:
        if other.field != self.field:
            raise MixedFields("polynomials over different fields")

    def __add__(self, other: "Poly") -> "Poly":
        self._check(other)
        F = self.field
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, y in enumerate(b):
            out[i] = F.add(out[i], y)
        return Poly(F, _trim(out))

    def __neg__(self) -> "Poly":
        return Poly(self.field, tuple(self.field.neg(c) for c in self.coeffs))

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def __mul__(self, other) -> "Poly":
        F = self.field
        if isinstance(other, (FqElem, int)):
            c = F(other).value
            return Poly(F, _trim(F.mul(x, c) for x in self.coeffs))
        self._check(other)
        if not self.coeffs or not other.coeffs:
            return Poly(F, ())
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, x in enumerate(self.coeffs):
            if x:
                for j, y in enumerate(other.coeffs):
                    if y:
                        out[i + j] = F.add(out[i + j], F.mul(x, y))
        return Poly(F, _trim(out))

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "Poly":
        if e < 0:
            raise InputError("negative polynomial power")
        result = Poly(self.field, (1,))
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __divmod__(self, other: "Poly"):
        self._check(other)
        if other.is_zero():
            raise DivisionByZeroPoly("polynomial division by zero")
        F = self.field
        rem = list(self.coeffs)
        db = other.degree
        if len(rem) - 1 < db:
            return Poly(F, ()), self
        inv_lead = F.inv(other.coeffs[-1])
        quot = [0] * (len(rem) - db)
        for k in range(len(rem) - 1 - db, -1, -1):
            c = F.mul(rem[k + db], inv_lead)
            quot[k] = c
            if c:
                for j, y in enumerate(other.coeffs):
                    rem[k + j] = F.sub(rem[k + j], F.mul(c, y))
        return Poly(F, _trim(quot)), Poly(F, _trim(rem[:db]))

    def __floordiv__(self, other: "Poly") -> "Poly":
        return divmod(self, other)[0]

    def __mod__(self, other: "Poly") -> "Poly":
        return divmod(self, other)[1]

    def monic(self) -> "Poly":
        if self.is_zero():
            raise ZeroPolynomial("zero polynomial has no monic associate")
        return self * self.lc.inverse()

    def gcd(self, other: "Poly") -> "Poly":
        a, b = self, other
        while not b.is_zero():
            a, b = b, a % b
        return a if a.is_zero() else a.monic()

    def eval(self, x) -> FqElem:
        F = self.field
        xv = F(x).value
        acc = 0
        for c in reversed(self.coeffs):
            acc = F.add(F.mul(acc, xv), c)
        return F(acc)

    def pow_mod(self, e: int, m: "Poly") -> "Poly":
        result = Poly(self.field, (1,)) % m
        base = self % m
        while e:
            if e & 1:
                result = (result * base) % m
            base = (base * base) % m
            e >>= 1
        return result

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if not c:
                continue
            cs = str(self.field(c).to_json())
            mono = "" if i == 0 else ("T" if i == 1 else f"T^{i}")
            if not mono:
                terms.append(cs)
            elif c == 1:
                terms.append(mono)
            else:
                terms.append(f"{cs}*{mono}")
        return " + ".join(terms)

    def to_json(self) -> list:
        return [self.field(c).to_json() for c in self.coeffs]


def _monic_polys(field: FieldParams, d: int):
    q = field.q
    for idx in range(q**d):
        low = []
        for _ in range(d):
            low.append(idx % q)
            idx //= q
        yield Poly(field, tuple(low) + (1,))


@lru_cache(maxsize=None)
def _irreducibles(field: FieldParams, d: int) -> tuple["IrreduciblePoly", ...]:
    if field.q**d > MAX_ENUMERATION:
        raise DeskBoundExceeded(f"q^d = {field.q**d} exceeds enumeration bound")
    if d == 1:
        out = [Poly(field, (field.neg(c), 1)) for c in range(field.q)]
    else:
        small = [P.poly for e in range(1, d // 2 + 1) for P in _irreducibles(field, e)]
        out = [
            f for f in _monic_polys(field, d)
            if all(not (f % g).is_zero() for g in small)
        ]
    out.sort(key=Poly.sort_key)
    return tuple(IrreduciblePoly(P, _verified=True) for P in out)


def enumerate_monic_irreducibles(field: FieldParams, d: int) -> list["IrreduciblePoly"]:
    """All monic irreducibles of degree exactly d, in canonical order."""
    if d < 1:
        raise InputError("degree must be positive")
    return list(_irreducibles(field, d))


def is_irreducible(P: Poly) -> bool:
    """Trial division by every monic irreducible of degree <= deg P / 2."""
    if not P.is_monic():
        raise NotMonic(f"{P} is not monic")
    if P.degree < 1:
        raise InputError("irreducibility needs degree >= 1")
    for e in range(1, P.degree // 2 + 1):
        for g in _irreducibles(P.field, e):
            if (P % g.poly).is_zero():
                return False
    return True


@dataclass(frozen=True, init=False)
class IrreduciblePoly:
    """A monic irreducible polynomial (verified at construction)."""

    poly: Poly

    def __init__(self, poly: Poly, _verified: bool = False):
        if not _verified and not is_irreducible(poly):
            raise InputError(f"{poly} is not irreducible")
        object.__setattr__(self, "poly", poly)

    @property
    def field(self) -> FieldParams:
        return self.poly.field

    @property
    def degree(self) -> int:
        return self.poly.degree

    def split_degree(self, l: int) -> tuple[int, int]:
        """(c, d) with deg = c * l^d and l not dividing c."""
        c, d = self.degree, 0
        while c % l == 0:
            c //= l
            d += 1
        return c, d

    def sort_key(self) -> tuple:
        return self.poly.sort_key()

    def __lt__(self, other: "IrreduciblePoly") -> bool:
        return self.sort_key() < other.sort_key()

    def __str__(self) -> str:
        return str(self.poly)

    def to_json(self) -> list:
        return self.poly.to_json()


def star(field: FieldParams, kappa: FqElem, factors: Sequence[tuple[IrreduciblePoly, int]]):
    """Twist kappa * prod P^e by (-1)^deg: returns ((-1)^deg * kappa, factors)."""
    if kappa.is_zero():
        raise ZeroPolynomial("star of the zero polynomial")
    deg = sum(P.degree * e for P, e in factors)
    sign = field.one if deg % 2 == 0 else field(field.minus_one)
    return sign * kappa, list(factors)


@dataclass(frozen=True)
class ResidueField:
    """F_q[T]/(P), elements represented by reduced polynomials."""

    modulus: IrreduciblePoly

    @property
    def base(self) -> FieldParams:
        return self.modulus.field

    @property
    def size(self) -> int:
        return self.base.q ** self.modulus.degree

    def reduce(self, N: Poly) -> Poly:
        return N % self.modulus.poly

    def mul(self, a: Poly, b: Poly) -> Poly:
        return (a * b) % self.modulus.poly

    def pow(self, a: Poly, e: int) -> Poly:
        return a.pow_mod(e, self.modulus.poly)

    def is_one(self, a: Poly) -> bool:
        return a.coeffs == (1,)

    def element(self, idx: int) -> Poly:
        """The idx-th residue in canonical enumeration (base-q digits)."""
        q = self.base.q
        digits = []
        for _ in range(self.modulus.degree):
            digits.append(idx % q)
            idx //= q
        return Poly(self.base, _trim(digits))

    def order(self, a: Poly) -> int:
        if a.is_zero():
            raise DivisionByZero("zero has no order")
        n = self.size - 1
        order = n
        for r in prime_factors(n):
            while order % r == 0 and self.is_one(self.pow(a, order // r)):
                order //= r
        return order

    @property
    def generator(self) -> Poly:
        return _residue_generator(self.modulus)

    def units(self) -> list[Poly]:
        if self.size > MAX_ENUMERATION:
            raise DeskBoundExceeded("residue field too large to enumerate")
        return [self.element(i) for i in range(1, self.size)]


@lru_cache(maxsize=None)
def _residue_generator(P: IrreduciblePoly) -> Poly:
    R = ResidueField(P)
    for idx in range(1, R.size):
        a = R.element(idx)
        if R.order(a) == R.size - 1:
            return a
    raise AssertionError("residue field has no generator")  # pragma: no cover


def residue_field(P: IrreduciblePoly) -> ResidueField:
    if P.field.q ** P.degree > MAX_ENUMERATION * 16:
        raise DeskBoundExceeded("residue field exceeds desk bound")
    return ResidueField(P)


def parse_poly(field: FieldParams, coeffs: Sequence, *, require_monic: bool = False) -> Poly:
    P = Poly.of(field, coeffs)
    if require_monic and not P.is_monic():
        raise NotMonic(f"{P} is not monic")
    return P


def product(field: FieldParams, factors: Iterable[tuple[IrreduciblePoly, int]],
            kappa: Optional[FqElem] = None) -> Poly:
    out = Poly(field, (1,))
    for P, e in factors:
        out = out * P.poly**e
    if kappa is not None:
        out = out * kappa
    return out


def field_for_order(q: int) -> FieldParams:
    """F_q with the first monic irreducible of degree f over F_p as modulus."""
    from sympy import factorint

    from .fq_arith import make_field

    fac = factorint(q)
    if q < 2 or len(fac) != 1:
        raise InputError(f"{q} is not a prime power")
    (p, f), = fac.items()
    if f == 1:
        return make_field(p)
    mod = enumerate_monic_irreducibles(make_field(p), f)[0]
    return make_field(p, f, mod.poly.coeffs)
