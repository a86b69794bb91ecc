"""Finite fields F_q = F_{p^f} with discrete-log storage.

Elements of a :class:`FieldParams` have two faces:

* an *integer encoding* ``0 .. q-1`` (base-``p`` digits are the coefficients of
  the polynomial representation modulo ``modulus``), used internally by the
  polynomial code because it is cheap to hash and compare;
* :class:`FqElem`, the public value type, which stores the discrete log with
  respect to the field's fixed generator (``None`` for zero).

The module also builds explicit radical towers ``F_q(beta^(1/l^n))`` used as an
independent oracle for the constant-field degree computed by
:func:`power_class`.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterator, Optional, Sequence

from sympy import factorint, isprime

from .errors import (
    DeskBoundExceeded,
    DivisionByZero,
    InputError,
    KummerHypothesisViolated,
    MixedFields,
    NoGeneratorFound,
    NotPrime,
    ReducibleModulus,
)

MAX_FIELD_SIZE = 1 << 16
MAX_TOWER_DEGREE = 64


def valuation(x: int, l: int) -> Optional[int]:
    """l-adic valuation of an integer; ``None`` stands for +infinity (x = 0)."""
    if x == 0:
        return None
    v = 0
    while x % l == 0:
        x //= l
        v += 1
    return v


def vmin(x: int, l: int, cap: int) -> int:
    """``min(cap, v_l(x))`` with v_l(0) = infinity."""
    v = valuation(x, l)
    return cap if v is None else min(cap, v)


def prime_factors(n: int) -> list[int]:
    return sorted(factorint(n))


# -- polynomials over F_p as ascending int lists (only used to build F_{p^f}) --

def _fp_trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _fp_mulmod(a: Sequence[int], b: Sequence[int], m: Sequence[int], p: int) -> list[int]:
    prod = [0] * (len(a) + len(b) - 1) if a and b else []
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                prod[i + j] = (prod[i + j] + x * y) % p
    return _fp_rem(prod, m, p)


def _fp_rem(a: Sequence[int], m: Sequence[int], p: int) -> list[int]:
    a = _fp_trim(list(a))
    dm = len(m) - 1
    inv_lead = pow(m[-1], -1, p)
    while len(a) - 1 >= dm and a:
        c = a[-1] * inv_lead % p
        shift = len(a) - 1 - dm
        for i, y in enumerate(m):
            a[shift + i] = (a[shift + i] - c * y) % p
        _fp_trim(a)
    return a


def _fp_monic_polys(p: int, d: int) -> Iterator[list[int]]:
    for idx in range(p**d):
        coeffs = []
        for _ in range(d):
            coeffs.append(idx % p)
            idx //= p
        yield coeffs + [1]


def _fp_is_irreducible(m: Sequence[int], p: int) -> bool:
    d = len(m) - 1
    for e in range(1, d // 2 + 1):
        for cand in _fp_monic_polys(p, e):
            if not _fp_rem(m, cand, p):
                return False
    return True


class FieldParams:
    """The field F_q with a fixed multiplicative generator.

    Instances are immutable; equality and hashing use ``(p, f, modulus,
    generator)`` so two independently built copies of the same field compare
    equal.
    """

    __slots__ = ("p", "f", "q", "modulus", "generator", "_exp", "_log", "_add", "_neg", "_frozen")

    def __init__(self, p: int, f: int, modulus: Optional[tuple[int, ...]], generator: int,
                 exp: list[int]):
        self.p = p
        self.f = f
        self.q = p**f
        self.modulus = modulus
        self.generator = generator
        self._exp = tuple(exp)
        log = [-1] * self.q
        for e, x in enumerate(exp):
            log[x] = e
        self._log = tuple(log)
        if f == 1:
            self._add = None
            self._neg = None
        else:
            self._add = tuple(
                tuple(self._digit_add(a, b) for b in range(self.q)) for a in range(self.q)
            )
            self._neg = tuple(self._digit_neg(a) for a in range(self.q))
        self._frozen = True

    def __setattr__(self, name, value):
        if getattr(self, "_frozen", False):
            raise AttributeError("FieldParams is immutable")
        object.__setattr__(self, name, value)

    def _key(self):
        return (self.p, self.f, self.modulus, self.generator)

    def __eq__(self, other):
        return isinstance(other, FieldParams) and self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        if self.f == 1:
            return f"FieldParams(q={self.q}, g={self.generator})"
        return f"FieldParams(q={self.q}, modulus={self.modulus}, g={self.generator})"

    # integer-encoding arithmetic
    def _digits(self, a: int) -> list[int]:
        out = []
        for _ in range(self.f):
            out.append(a % self.p)
            a //= self.p
        return out

    def _undigits(self, ds: Sequence[int]) -> int:
        a = 0
        for d in reversed(ds):
            a = a * self.p + d
        return a

    def _digit_add(self, a: int, b: int) -> int:
        return self._undigits([(x + y) % self.p for x, y in zip(self._digits(a), self._digits(b))])

    def _digit_neg(self, a: int) -> int:
        return self._undigits([(-x) % self.p for x in self._digits(a)])

    def add(self, a: int, b: int) -> int:
        if self._add is None:
            return (a + b) % self.p
        return self._add[a][b]

    def neg(self, a: int) -> int:
        if self._neg is None:
            return (-a) % self.p
        return self._neg[a]

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return self._exp[(self._log[a] + self._log[b]) % (self.q - 1)]

    def inv(self, a: int) -> int:
        if a == 0:
            raise DivisionByZero("inverse of zero in F_%d" % self.q)
        return self._exp[(-self._log[a]) % (self.q - 1)]

    def pow(self, a: int, e: int) -> int:
        if a == 0:
            if e < 0:
                raise DivisionByZero("negative power of zero")
            return 1 if e == 0 else 0
        return self._exp[(self._log[a] * e) % (self.q - 1)]

    def log(self, a: int) -> int:
        if a == 0:
            raise DivisionByZero("discrete log of zero")
        return self._log[a]

    def exp(self, e: int) -> int:
        return self._exp[e % (self.q - 1)]

    @property
    def minus_one(self) -> int:
        return self.neg(1)

    # FqElem construction
    def __call__(self, value) -> "FqElem":
        if isinstance(value, FqElem):
            if value.field != self:
                raise MixedFields("element of %r used in %r" % (value.field, self))
            return value
        if isinstance(value, int):
            if self.f == 1:
                value %= self.p
            elif not 0 <= value < self.q:
                raise InputError(f"integer encoding {value} out of range for F_{self.q}")
            return FqElem(self, None if value == 0 else self._log[value])
        if isinstance(value, str):
            return parse_elem(self, value)
        raise TypeError(f"cannot coerce {value!r} into F_{self.q}")

    def from_log(self, e: int) -> "FqElem":
        return FqElem(self, e % (self.q - 1))

    @property
    def zero(self) -> "FqElem":
        return FqElem(self, None)

    @property
    def one(self) -> "FqElem":
        return FqElem(self, 0)

    @property
    def gen(self) -> "FqElem":
        return FqElem(self, 1 % (self.q - 1))

    def elements(self) -> list["FqElem"]:
        return [self(i) for i in range(self.q)]

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "f": self.f,
            "modulus": list(self.modulus) if self.modulus is not None else None,
            "generator": self.generator if self.f == 1 else self._digits(self.generator),
        }


def make_field(p: int, f: int = 1, modulus: Optional[Sequence[int]] = None) -> FieldParams:
    """Build F_{p^f}; ``modulus`` (ascending F_p coefficients) is required when f > 1."""
    if not isinstance(p, int) or not isprime(p):
        raise NotPrime(f"{p} is not prime")
    if f < 1:
        raise InputError("extension degree must be positive")
    q = p**f
    if q > MAX_FIELD_SIZE:
        raise DeskBoundExceeded(f"q = {q} exceeds desk bound {MAX_FIELD_SIZE}")
    if f == 1:
        if modulus is not None and len(modulus) not in (0, 2):
            raise InputError("modulus must have degree 1 when f = 1")
        mod = None
    else:
        if modulus is None:
            raise InputError("modulus required when f > 1")
        mod = tuple(int(c) % p for c in modulus)
        if len(mod) != f + 1 or mod[-1] != 1:
            raise InputError(f"modulus must be monic of degree {f}")
        if not _fp_is_irreducible(mod, p):
            raise ReducibleModulus(f"modulus {list(mod)} is reducible over F_{p}")

    def mul(a: int, b: int) -> int:
        if mod is None:
            return a * b % p
        da = [(a // p**i) % p for i in range(f)]
        db = [(b // p**i) % p for i in range(f)]
        prod = _fp_mulmod(_fp_trim(da), _fp_trim(db), mod, p)
        return sum(c * p**i for i, c in enumerate(prod))

    for cand in range(1, q):
        powers = [1]
        x = cand
        while x != 1:
            powers.append(x)
            x = mul(x, cand)
            if len(powers) > q:
                break
        if len(powers) == q - 1:
            return FieldParams(p, f, mod, cand, powers)
    raise NoGeneratorFound(f"no element of order {q - 1}; modulus is not irreducible")


@dataclass(frozen=True)
class FqElem:
    """Nonzero elements carry their discrete log; zero carries ``None``."""

    field: FieldParams
    log: Optional[int]

    @property
    def value(self) -> int:
        """Integer encoding of the element."""
        return 0 if self.log is None else self.field.exp(self.log)

    def is_zero(self) -> bool:
        return self.log is None

    def _other(self, other) -> "FqElem":
        if isinstance(other, FqElem):
            if other.field != self.field:
                raise MixedFields("elements of different fields")
            return other
        return self.field(other)

    def __add__(self, other):
        o = self._other(other)
        return self.field(self.field.add(self.value, o.value))

    __radd__ = __add__

    def __neg__(self):
        return self.field(self.field.neg(self.value))

    def __sub__(self, other):
        o = self._other(other)
        return self.field(self.field.sub(self.value, o.value))

    def __rsub__(self, other):
        return self._other(other) - self

    def __mul__(self, other):
        o = self._other(other)
        if self.log is None or o.log is None:
            return self.field.zero
        return FqElem(self.field, (self.log + o.log) % (self.field.q - 1))

    __rmul__ = __mul__

    def inverse(self) -> "FqElem":
        if self.log is None:
            raise DivisionByZero("inverse of zero")
        return FqElem(self.field, (-self.log) % (self.field.q - 1))

    def __truediv__(self, other):
        return self * self._other(other).inverse()

    def __pow__(self, e: int):
        if self.log is None:
            if e < 0:
                raise DivisionByZero("negative power of zero")
            return self.field.one if e == 0 else self
        return FqElem(self.field, (self.log * e) % (self.field.q - 1))

    def order(self) -> int:
        if self.log is None:
            raise DivisionByZero("zero has no multiplicative order")
        from math import gcd

        return (self.field.q - 1) // gcd(self.log, self.field.q - 1)

    def __str__(self):
        if self.log is None:
            return "0"
        return f"g^{self.log}"

    def __repr__(self):
        return f"FqElem({self}, q={self.field.q})"

    def to_json(self):
        """Integers for prime fields, ``"g^e"`` strings otherwise."""
        if self.field.f == 1:
            return self.value
        return str(self)


def parse_elem(field: FieldParams, token) -> FqElem:
    if isinstance(token, int):
        return field(token)
    s = str(token).strip()
    if s == "0":
        return field.zero
    if s.startswith("g^"):
        try:
            return field.from_log(int(s[2:]))
        except ValueError as exc:
            raise InputError(f"bad element {token!r}") from exc
    if field.f == 1:
        try:
            return field(int(s))
        except ValueError as exc:
            raise InputError(f"bad element {token!r}") from exc
    raise InputError(f"bad element {token!r}: use \"g^e\" in F_{field.q}")


def _check_kummer(field: FieldParams, l: int, n: int) -> None:
    if not isprime(l):
        raise NotPrime(f"{l} is not prime")
    if n < 0 or (field.q - 1) % l**n:
        raise KummerHypothesisViolated(f"{l}^{n} does not divide q - 1 = {field.q - 1}")


def power_class(beta: FqElem, l: int, n: int) -> int:
    """The s in [0, n] with [F_q(beta^(1/l^n)) : F_q] = l^s.

    beta lies in (F_q*)^(l^j) exactly when l^j divides its discrete log (for
    j <= n <= v_l(q-1)), so s = n - min(n, v_l(log beta)).
    """
    _check_kummer(beta.field, l, n)
    if beta.is_zero():
        raise DivisionByZero("power class of zero")
    return n - vmin(beta.log, l, n)


def is_power(beta: FqElem, m: int) -> bool:
    """Membership in (F_q*)^m by direct exponentiation (m | q - 1)."""
    q = beta.field.q
    if (q - 1) % m:
        raise KummerHypothesisViolated(f"{m} does not divide q - 1")
    x = beta.value
    return beta.field.pow(x, (q - 1) // m) == 1 if x else False


# -- explicit radical towers --------------------------------------------------

class _Ground:
    """F_q seen as the bottom of a tower; elements are integer encodings."""

    depth = 0

    def __init__(self, field: FieldParams):
        self.field = field
        self.size = field.q
        self.zero = 0
        self.one = 1

    def add(self, a, b):
        return self.field.add(a, b)

    def sub(self, a, b):
        return self.field.sub(a, b)

    def mul(self, a, b):
        return self.field.mul(a, b)

    def ground_value(self, x) -> Optional[int]:
        return x

    def random(self, rng: random.Random):
        return rng.randrange(self.size)


class _RadicalExtension:
    """base[Y] / (Y^l - a) for a non-l-th power a; elements are l-tuples."""

    def __init__(self, base, l: int, a):
        self.base = base
        self.l = l
        self.a = a
        self.size = base.size**l
        self.depth = base.depth + 1
        self.zero = (base.zero,) * l
        self.one = (base.one,) + (base.zero,) * (l - 1)
        self.Y = (base.zero, base.one) + (base.zero,) * (l - 2)

    def add(self, x, y):
        return tuple(self.base.add(u, v) for u, v in zip(x, y))

    def sub(self, x, y):
        return tuple(self.base.sub(u, v) for u, v in zip(x, y))

    def mul(self, x, y):
        b, l = self.base, self.l
        acc = [b.zero] * l
        for i, u in enumerate(x):
            if u == b.zero:
                continue
            for j, v in enumerate(y):
                if v == b.zero:
                    continue
                t = b.mul(u, v)
                k = i + j
                if k >= l:
                    k -= l
                    t = b.mul(t, self.a)
                acc[k] = b.add(acc[k], t)
        return tuple(acc)

    def embed(self, x):
        """Embed an element of the immediate base field."""
        return (x,) + (self.base.zero,) * (self.l - 1)

    def ground_value(self, x) -> Optional[int]:
        if any(c != self.base.zero for c in x[1:]):
            return None
        return self.base.ground_value(x[0])

    def random(self, rng: random.Random):
        return tuple(self.base.random(rng) for _ in range(self.l))


def _tpow(F, x, e: int):
    result = F.one
    while e:
        if e & 1:
            result = F.mul(result, x)
        x = F.mul(x, x)
        e >>= 1
    return result


def _is_lth_power(F, x, l: int) -> bool:
    return _tpow(F, x, (F.size - 1) // l) == F.one


def _lth_root(F, x, l: int):
    """An l-th root of an l-th power x (Adleman-Manders-Miller style)."""
    order = F.size - 1
    v, w = 0, order
    while w % l == 0:
        w //= l
        v += 1
    if l**v > MAX_FIELD_SIZE:
        raise DeskBoundExceeded("l-Sylow subgroup too large for exhaustive logs")
    u = pow(l, -1, w) if w > 1 else 0
    x0 = _tpow(F, x, u)
    b = _tpow(F, x0, l)
    # b = x^(u*l); want y in the l-Sylow subgroup with y^l = x / b
    target = F.mul(x, _tpow(F, b, order - 1))
    rng = random.Random(0x5EED)
    for _ in range(1000):
        z = F.random(rng)
        if z != F.zero and not _is_lth_power(F, z, l):
            break
    else:  # pragma: no cover - probability (1/l)^1000
        raise NoGeneratorFound("no non-l-th power found")
    c = _tpow(F, z, w)
    table = {}
    cur = F.one
    for i in range(l**v):
        table[cur] = i
        cur = F.mul(cur, c)
    e = table[target]
    if e % l:
        raise KummerHypothesisViolated("element is not an l-th power")
    return F.mul(x0, _tpow(F, c, e // l))


@dataclass(frozen=True)
class RadicalTower:
    """An explicit field containing a chosen root mu of X^(l^n) - beta."""

    top: object
    mu: tuple | int
    adjoined: int  # number of degree-l steps above F_q

    @property
    def degree(self) -> int:
        F, d = self.top, 1
        while F.depth:
            d *= F.l
            F = F.base
        return d


def root_tower(beta: FqElem, l: int, n: int) -> RadicalTower:
    """Adjoin successive l-th roots of beta, extending only when none exists."""
    _check_kummer(beta.field, l, n)
    if beta.is_zero():
        raise DivisionByZero("root of zero")
    if l**n > MAX_TOWER_DEGREE:
        raise DeskBoundExceeded(f"tower degree {l**n} exceeds {MAX_TOWER_DEGREE}")
    F = _Ground(beta.field)
    a = beta.value
    steps = 0
    for _ in range(n):
        if _is_lth_power(F, a, l):
            a = _lth_root(F, a, l)
        else:
            F = _RadicalExtension(F, l, a)
            a = F.Y
            steps += 1
    tower = RadicalTower(F, a, steps)
    if _tpow(F, a, l**n) != _embed_from_ground(F, beta.value):
        raise AssertionError("constructed root does not satisfy X^(l^n) = beta")
    return tower


def _embed_from_ground(F, x: int):
    chain = []
    G = F
    while G.depth:
        chain.append(G)
        G = G.base
    for G in reversed(chain):
        x = G.embed(x)
    return x


def oracle_root_degree(beta: FqElem, l: int, n: int) -> int:
    """l^s for the least s with mu^(l^s) in F_q, where mu^(l^n) = beta.

    mu is computed in an explicitly constructed tower, so this is independent
    of the discrete-log shortcut in :func:`power_class`.
    """
    tower = root_tower(beta, l, n)
    F, x = tower.top, tower.mu
    for s in range(n + 1):
        if F.ground_value(x) is not None:
            return l**s
        x = _tpow(F, x, l)
    raise AssertionError("mu^(l^n) must lie in F_q")  # pragma: no cover


def frobenius_degree(tower: RadicalTower, q: int) -> int:
    """Least e with mu^(q^e) = mu, i.e. [F_q(mu) : F_q] by Frobenius orbit."""
    F, mu = tower.top, tower.mu
    x = _tpow(F, mu, q)
    e = 1
    while x != mu:
        x = _tpow(F, x, q)
        e += 1
        if e > tower.degree:
            raise AssertionError("Frobenius orbit longer than tower degree")  # pragma: no cover
    return e


def minus_one_is_power(field: FieldParams, l: int, kappa: int) -> bool:
    """Whether -1 lies in (F_q*)^(l^kappa), by exponentiation."""
    return is_power(field(field.minus_one), l**kappa)
