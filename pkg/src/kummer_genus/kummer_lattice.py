"""Kummer lattices: subgroups of k*/(k*)^(l^n) supported on finitely many primes.

A radicand kappa * prod P_j^(e_j) is encoded by the row vector
``(e_1, ..., e_r, log kappa) mod l^n``; the constant coordinate is always the
last column.  Under l^n | q - 1 the field k(W^(1/l^n)) has degree |W| over k,
so field questions (degree, inclusion, compositum, ramification at finite
primes) become questions about subgroups of (Z/l^n)^(r+1).  Subgroups are kept
in Howell form, which is unique, so equality is equality of row tuples.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field
from math import prod
from typing import Iterable, Optional, Sequence

import numpy as np

from .errors import IncompatibleLattices, InputError, KummerHypothesisViolated, UnsupportedPrime
from .fq_arith import FieldParams, FqElem, valuation
from .rt_poly import IrreduciblePoly


class _InfinitePlace:
    """Label of the single column of a local lattice at p_infinity."""

    def sort_key(self):
        return (-1,)

    def __repr__(self):
        return "PI_INF"

    def __str__(self):
        return "pi_inf"

    def to_json(self):
        return "pi_inf"


PI_INF = _InfinitePlace()


def _val(x: int, l: int, n: int) -> int:
    v = valuation(x % l**n, l)
    return n if v is None else v


def howell_form(rows: Iterable[Sequence[int]], l: int, n: int, ncols: int) -> tuple[tuple[int, ...], ...]:
    """Howell normal form of the row span over Z/l^n.

    Pivots are powers of l, entries above a pivot l^k lie in [0, l^k), and the
    span of rows whose pivot is at or after column c is exactly the set of span
    vectors vanishing before c.
    """
    N = l**n
    work = [[x % N for x in r] for r in rows]
    work = [r for r in work if any(r)]
    result: list[list[int]] = []
    for col in range(ncols):
        best, best_v = None, n
        for i, r in enumerate(work):
            if r[col]:
                v = _val(r[col], l, n)
                if v < best_v:
                    best, best_v = i, v
        if best is None:
            continue
        pr = work.pop(best)
        k = best_v
        lk = l**k
        unit_inv = pow(pr[col] // lk, -1, N)
        pr = [x * unit_inv % N for x in pr]
        survivors = []
        for r in work:
            if r[col]:
                c = r[col] // lk
                r = [(x - c * y) % N for x, y in zip(r, pr)]
            if any(r):
                survivors.append(r)
        work = survivors
        if k:
            extra = [x * (N // lk) % N for x in pr]
            if any(extra):
                work.append(extra)
        for r in result:
            if r[col] >= lk:
                c = r[col] // lk
                for j in range(ncols):
                    r[j] = (r[j] - c * pr[j]) % N
        result.append(pr)
    return tuple(tuple(r) for r in result)


def _pivot(row: Sequence[int]) -> int:
    for i, x in enumerate(row):
        if x:
            return i
    raise ValueError("zero row")  # pragma: no cover


@dataclass(frozen=True)
class RadicalGenerator:
    """The field k((coeff * prod P^e)^(1/root_order)); exponents reduced mod root_order."""

    coeff: FqElem
    exponents: tuple[tuple[IrreduciblePoly, int], ...]
    root_order: int

    def __post_init__(self):
        if self.coeff.is_zero():
            raise InputError("radicand coefficient must be nonzero")
        reduced = {}
        for P, e in self.exponents:
            reduced[P] = (reduced.get(P, 0) + e) % self.root_order
        items = tuple(sorted(((P, e) for P, e in reduced.items() if e), key=lambda t: t[0].sort_key()))
        object.__setattr__(self, "exponents", items)

    @classmethod
    def make(cls, coeff: FqElem, exponents, root_order: int) -> "RadicalGenerator":
        if isinstance(exponents, dict):
            exponents = tuple(exponents.items())
        return cls(coeff, tuple(exponents), root_order)

    @property
    def field(self) -> FieldParams:
        return self.coeff.field

    def exponent(self, P: IrreduciblePoly) -> int:
        for Q, e in self.exponents:
            if Q == P:
                return e
        return 0

    @property
    def primes(self) -> tuple[IrreduciblePoly, ...]:
        return tuple(P for P, _ in self.exponents)

    @property
    def monomial_degree(self) -> int:
        return sum(P.degree * e for P, e in self.exponents)

    def sort_key(self):
        return (
            self.root_order,
            tuple((P.sort_key(), e) for P, e in self.exponents),
            -1 if self.coeff.log is None else self.coeff.log,
        )

    def __str__(self):
        mono = "*".join(
            f"({P})" if e == 1 else f"({P})^{e}" for P, e in self.exponents
        ) or "1"
        return f"root[{self.root_order}]({self.coeff.to_json()}*{mono})"

    def to_json(self) -> dict:
        return {
            "root": self.root_order,
            "coeff": self.coeff.to_json(),
            "monomial": [{"poly": P.to_json(), "exp": e} for P, e in self.exponents],
        }


def _check_root(l: int, n: int, root_order: int) -> int:
    e = 0
    r = root_order
    while r % l == 0:
        r //= l
        e += 1
    if r != 1 or e > n:
        raise InputError(f"root order {root_order} is not a power of {l} dividing {l}^{n}")
    return e


def class_vector(gen: RadicalGenerator, support: Sequence[IrreduciblePoly], l: int, n: int) -> tuple[int, ...]:
    """Row vector l^(n-e) * (exponents, log coeff) mod l^n for a root of order l^e."""
    q = gen.field.q
    if (q - 1) % l**n:
        raise KummerHypothesisViolated(f"{l}^{n} does not divide q - 1 = {q - 1}")
    e = _check_root(l, n, gen.root_order)
    scale = l ** (n - e)
    N = l**n
    index = {P: i for i, P in enumerate(support)}
    vec = [0] * (len(support) + 1)
    for P, x in gen.exponents:
        if P not in index:
            raise UnsupportedPrime(f"{P} is not in the lattice support")
        vec[index[P]] = x * scale % N
    vec[-1] = gen.coeff.log * scale % N
    return tuple(vec)


@dataclass(frozen=True)
class KummerSubgroup:
    """A subgroup of (Z/l^n)^(r+1) in Howell form; columns = support primes then constants."""

    field: FieldParams = dc_field(compare=True)
    l: int = 0
    n: int = 0
    support: tuple = ()
    rows: tuple[tuple[int, ...], ...] = ()

    @classmethod
    def from_rows(cls, field: FieldParams, l: int, n: int, support: Sequence, rows) -> "KummerSubgroup":
        support = tuple(support)
        return cls(field, l, n, support, howell_form(rows, l, n, len(support) + 1))

    @classmethod
    def trivial(cls, field: FieldParams, l: int, n: int, support: Sequence = ()) -> "KummerSubgroup":
        return cls(field, l, n, tuple(support), ())

    @property
    def modulus(self) -> int:
        return self.l**self.n

    @property
    def ncols(self) -> int:
        return len(self.support) + 1

    def pivot_orders(self) -> list[int]:
        return [self.l ** (self.n - _val(r[_pivot(r)], self.l, self.n)) for r in self.rows]

    @property
    def order(self) -> int:
        return prod(self.pivot_orders())

    def reduce(self, v: Sequence[int]) -> Optional[tuple[int, ...]]:
        """Residue of v against the rows, or None when v is not in the span."""
        N = self.modulus
        v = [x % N for x in v]
        if len(v) != self.ncols:
            raise InputError("vector length does not match lattice")
        for r in self.rows:
            c = _pivot(r)
            piv = r[c]
            if v[c] % piv:
                return None
            f = v[c] // piv
            v = [(x - f * y) % N for x, y in zip(v, r)]
        return tuple(v)

    def contains(self, v: Sequence[int]) -> bool:
        res = self.reduce(v)
        return res is not None and not any(res)

    def __contains__(self, v) -> bool:
        return self.contains(v)

    def _compatible(self, other: "KummerSubgroup") -> None:
        if (self.l, self.n) != (other.l, other.n):
            raise IncompatibleLattices(
                f"lattices mod {self.l}^{self.n} and {other.l}^{other.n}"
            )
        if self.field != other.field:
            raise IncompatibleLattices("lattices over different fields")

    def align(self, support: Sequence) -> "KummerSubgroup":
        """Re-express on a larger support (zero-extended columns)."""
        support = tuple(support)
        if support == self.support:
            return self
        index = {P: i for i, P in enumerate(support)}
        for P in self.support:
            if P not in index:
                raise UnsupportedPrime(f"{P} missing from target support")
        rows = []
        for r in self.rows:
            new = [0] * (len(support) + 1)
            for P, x in zip(self.support, r):
                new[index[P]] = x
            new[-1] = r[-1]
            rows.append(new)
        return KummerSubgroup.from_rows(self.field, self.l, self.n, support, rows)

    def _common(self, other: "KummerSubgroup"):
        self._compatible(other)
        support = union_support(self.support, other.support)
        return self.align(support), other.align(support)

    def join(self, other: "KummerSubgroup") -> "KummerSubgroup":
        a, b = self._common(other)
        return KummerSubgroup.from_rows(a.field, a.l, a.n, a.support, a.rows + b.rows)

    def __or__(self, other):
        return self.join(other)

    def issubset(self, other: "KummerSubgroup") -> bool:
        a, b = self._common(other)
        return all(b.contains(r) for r in a.rows)

    def __le__(self, other):
        return self.issubset(other)

    def equal(self, other: "KummerSubgroup") -> bool:
        a, b = self._common(other)
        return a.rows == b.rows

    def add_vector(self, v: Sequence[int]) -> "KummerSubgroup":
        return KummerSubgroup.from_rows(self.field, self.l, self.n, self.support, self.rows + (tuple(v),))

    def column_order(self, index: int) -> int:
        """Order of the projection onto one coordinate."""
        vals = [_val(r[index], self.l, self.n) for r in self.rows]
        return self.l ** (self.n - min(vals, default=self.n))

    def finite_ramification(self, P: IrreduciblePoly) -> int:
        if P not in self.support:
            raise UnsupportedPrime(f"{P} is not in the lattice support")
        return self.column_order(self.support.index(P))

    def constant_order(self) -> int:
        """|W intersect constants| = degree of the constant field extension."""
        c = self.ncols - 1
        return prod(
            self.l ** (self.n - _val(r[c], self.l, self.n)) for r in self.rows if _pivot(r) == c
        )

    def elements(self) -> set[tuple[int, ...]]:
        """Brute-force enumeration of the span (tests and oracles only)."""
        N = self.modulus
        orders = self.pivot_orders()
        out = set()
        for coeffs in itertools.product(*(range(o) for o in orders)):
            v = [0] * self.ncols
            for c, r in zip(coeffs, self.rows):
                if c:
                    v = [(x + c * y) % N for x, y in zip(v, r)]
            out.add(tuple(v))
        return out

    def element_array(self) -> np.ndarray:
        """All elements as an int64 array of shape (|W|, r+1)."""
        N = self.modulus
        arr = np.zeros((1, self.ncols), dtype=np.int64)
        for r, o in zip(self.rows, self.pivot_orders()):
            mult = np.arange(o, dtype=np.int64)[:, None] * np.asarray(r, dtype=np.int64)[None, :]
            arr = ((arr[:, None, :] + mult[None, :, :]) % N).reshape(-1, self.ncols)
        return arr

    def generators(self) -> list[RadicalGenerator]:
        """One radical per Howell row, each in lowest terms."""
        out = []
        for r in self.rows:
            j = min(_val(x, self.l, self.n) for x in r)
            root = self.l ** (self.n - j)
            div = self.l**j
            exps = tuple((P, x // div) for P, x in zip(self.support, r[:-1]))
            out.append(RadicalGenerator(self.field.from_log(r[-1] // div), exps, root))
        return out

    def to_json(self) -> dict:
        return {
            "l": self.l,
            "n": self.n,
            "support": [P.to_json() for P in self.support],
            "rows": [list(r) for r in self.rows],
        }


def union_support(*supports: Sequence) -> tuple:
    seen = {}
    for s in supports:
        for P in s:
            seen.setdefault(P, None)
    return tuple(sorted(seen, key=lambda P: P.sort_key()))


def normalize(rows, l: int, n: int, *, field: FieldParams, support: Sequence) -> KummerSubgroup:
    return KummerSubgroup.from_rows(field, l, n, support, rows)


def lattice_of(gens: Iterable[RadicalGenerator], l: int, n: int, *,
               field: Optional[FieldParams] = None,
               support: Optional[Sequence[IrreduciblePoly]] = None) -> KummerSubgroup:
    """The subgroup generated by a set of radicals, inside the l^n lattice."""
    gens = list(gens)
    if field is None:
        if not gens:
            raise InputError("field required for an empty generator set")
        field = gens[0].field
    if support is None:
        support = union_support(*(g.primes for g in gens))
    rows = [class_vector(g, support, l, n) for g in gens]
    return KummerSubgroup.from_rows(field, l, n, support, rows)


def subgroup_order(W: KummerSubgroup) -> int:
    return W.order


def finite_ramification(W: KummerSubgroup, P: IrreduciblePoly) -> int:
    return W.finite_ramification(P)


def span_by_closure(rows: Iterable[Sequence[int]], N: int, ncols: int) -> set[tuple[int, ...]]:
    """Independent brute-force span: BFS closure under addition."""
    gens = [tuple(x % N for x in r) for r in rows]
    zero = (0,) * ncols
    seen = {zero}
    frontier = [zero]
    while frontier:
        nxt = []
        for v in frontier:
            for g in gens:
                w = tuple((x + y) % N for x, y in zip(v, g))
                if w not in seen:
                    seen.add(w)
                    nxt.append(w)
        frontier = nxt
    return seen
