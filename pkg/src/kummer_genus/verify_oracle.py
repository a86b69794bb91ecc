"""Brute-force ground truth, sharing no code path with the explicit constructions.

* power residue symbols by exponentiation in F_q[T]/P;
* e_P as the order of a character component;
* genus and extended genus lattices by enumerating the whole support lattice
  and keeping the classes that leave every finite ramification index and the
  local class group at infinity unchanged.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Optional, Sequence

import numpy as np

from .errors import (
    EnumerationBoundExceeded,
    InputError,
    InternalInconsistency,
    SharedFactor,
)
from .fq_arith import (
    FieldParams,
    oracle_root_degree,
    root_tower,
    frobenius_degree,
)
from .kummer_lattice import KummerSubgroup, RadicalGenerator, lattice_of, union_support
from .rt_poly import IrreduciblePoly, Poly, residue_field

ORACLE_BOUND = 1 << 16


@dataclass(frozen=True)
class SymbolValue:
    value: Poly
    order: int


def legendre_symbol(N: Poly, P: IrreduciblePoly, l: int, n: int) -> SymbolValue:
    R = residue_field(P)
    q_d = R.size
    if (q_d - 1) % l**n:
        raise InputError(f"{l}^{n} does not divide {q_d} - 1")
    base = R.reduce(N)
    if base.is_zero():
        raise SharedFactor(f"{P} divides {N}")
    value = R.pow(base, (q_d - 1) // l**n)
    return SymbolValue(value, R.order(value))


def char_component_order(P: IrreduciblePoly, alpha: int, l: int, n: int) -> int:
    """Order of chi_P^alpha, the P-part of the character of root[l^n]((P^alpha)*)."""
    R = residue_field(P)
    chi = legendre_symbol(R.generator, P, l, n).value
    return R.order(R.pow(chi, alpha % l**n))


def generator_ramification(gen: RadicalGenerator, P: IrreduciblePoly, l: int, n: int) -> int:
    """e_P of k(gen) through the character route (scaled into the l^n lattice)."""
    scale = l**n // gen.root_order
    return char_component_order(P, gen.exponent(P) * scale, l, n)


def character_extended_genus(gens: Sequence[RadicalGenerator], l: int, n: int,
                             field: FieldParams, support: Optional[Sequence] = None) -> KummerSubgroup:
    """Span of the roots of P* of order e_P, with e_P from characters (lcm over gens)."""
    if support is None:
        support = union_support(*(g.primes for g in gens))
    out = []
    for P in support:
        e = max(generator_ramification(g, P, l, n) for g in gens)
        if e > 1:
            sign = field.one if P.degree % 2 == 0 else field(field.minus_one)
            out.append(RadicalGenerator(sign, ((P, 1),), e))
    return lattice_of(out, l, n, field=field, support=support)


# -- genus oracle -----------------------------------------------------------

@lru_cache(maxsize=16)
def _ambient(N: int, ncols: int) -> np.ndarray:
    codes = np.arange(N**ncols, dtype=np.int64)
    digits = np.empty((codes.size, ncols), dtype=np.int64)
    for i in range(ncols):
        digits[:, i] = (codes // N ** (ncols - 1 - i)) % N
    digits.setflags(write=False)
    return digits


def _encode(arr: np.ndarray, N: int) -> np.ndarray:
    out = np.zeros(arr.shape[0], dtype=np.int64)
    for i in range(arr.shape[1]):
        out = out * N + arr[:, i]
    return out


def _local(arr: np.ndarray, degs: np.ndarray, N: int) -> np.ndarray:
    val = (-(arr[:, :-1] @ degs)) % N
    return val * N + arr[:, -1]


def oracle_genus(X: KummerSubgroup, *, extended: bool = False, seed: int = 0) -> KummerSubgroup:
    """Largest W >= X (on X's support) with the same e_P everywhere and the same
    local classes at infinity; ``extended`` relaxes infinity to X_loc + <-pi_inf>.
    """
    N, c = X.modulus, X.ncols
    if N**c > ORACLE_BOUND:
        raise EnumerationBoundExceeded(f"ambient lattice has {N**c} elements")
    amb = _ambient(N, c)
    degs = np.asarray([P.degree for P in X.support], dtype=np.int64)
    xs = X.element_array()

    ok = np.ones(amb.shape[0], dtype=bool)
    for j in range(c - 1):
        proj = np.zeros(N, dtype=bool)
        proj[np.unique(xs[:, j])] = True
        ok &= proj[amb[:, j]]

    loc_allowed = np.zeros(N * N, dtype=bool)
    xloc = np.unique(_local(xs, degs, N))
    if extended:
        h = X.field(X.field.minus_one).log % N
        val, const = xloc // N, xloc % N
        for s in range(N):
            loc_allowed[((val + s) % N) * N + (const + s * h) % N] = True
    else:
        loc_allowed[xloc] = True
    ok &= loc_allowed[_local(amb, degs, N)]

    in_w = np.zeros(amb.shape[0], dtype=bool)
    in_w[_encode(xs, N)] = True
    if not ok[in_w].all():
        raise InternalInconsistency("the starting lattice is not admissible")
    perm = np.random.default_rng(seed).permutation(amb.shape[0])
    W = X
    while True:
        cand = ok[perm] & ~in_w[perm]
        if not cand.any():
            break
        v = amb[perm[int(np.argmax(cand))]]
        W = W.add_vector(tuple(int(x) for x in v))
        in_w[_encode(W.element_array(), N)] = True
    if not np.array_equal(in_w, ok):
        raise InternalInconsistency("admissible classes are not closed under joins")
    return W


# -- constants ----------------------------------------------------------------

def constant_degree_oracle(beta, l: int, n: int) -> tuple[int, int]:
    """(tower route, Frobenius route) for [F_q(beta^(1/l^n)) : F_q]."""
    tower = root_tower(beta, l, n)
    return oracle_root_degree(beta, l, n), frobenius_degree(tower, beta.field.q)
