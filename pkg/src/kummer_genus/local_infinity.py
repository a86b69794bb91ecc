"""Local computations at the infinite prime of F_q(T).

At p_inf every nonzero x factors as (1/T)^(n_x) * lambda_x * (one-unit).  For
l != p one-units are l^n-th powers, so the class of x in k_inf*/(k_inf*)^(l^n)
is the pair (n_x mod l^n, log lambda_x mod l^n).  A radicand kappa * M with M
monic has n_x = -deg M and lambda_x = kappa.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Union

from .errors import InternalInconsistency, KummerHypothesisViolated, NotApplicable, WildPrime, ZeroInput
from .fq_arith import FieldParams, FqElem, is_power, valuation
from .kummer_lattice import PI_INF, KummerSubgroup, RadicalGenerator, lattice_of


@dataclass(frozen=True)
class LocalClass:
    val: int
    const: FqElem
    l: int
    n: int

    def vector(self) -> tuple[int, int]:
        return (self.val, self.const.log % self.l**self.n)

    def to_json(self) -> dict:
        return {"val": self.val, "const": self.const.to_json()}


@dataclass(frozen=True)
class InfinityData:
    e_inf: int
    f_inf: int
    deg_P_inf: int
    local_order: int

    def to_json(self) -> dict:
        return {"e_inf": self.e_inf, "f_inf": self.f_inf, "deg_P_inf": self.deg_P_inf}


@dataclass(frozen=True)
class LocalNorm:
    """N_inf(prime element) = sign * theta * pi_inf^pi_power."""

    sign: FqElem
    theta: FqElem
    pi_power: int

    @property
    def constant(self) -> FqElem:
        return self.sign * self.theta

    def to_json(self) -> dict:
        return {"sign": self.sign.to_json(), "theta": self.theta.to_json(), "pi_power": self.pi_power}


def _guard(field: FieldParams, l: int, n: int) -> None:
    if l == field.p:
        raise WildPrime(f"l = {l} equals the characteristic")
    if (field.q - 1) % l**n:
        raise KummerHypothesisViolated(f"{l}^{n} does not divide q - 1 = {field.q - 1}")


def sign_phi(kappa: FqElem, monomial: Iterable = ()) -> FqElem:
    """Leading coefficient of kappa * (monic monomial): kappa itself."""
    if kappa.is_zero():
        raise ZeroInput("sign of zero")
    return kappa


def local_class(gen: RadicalGenerator, l: int, n: int) -> LocalClass:
    _guard(gen.field, l, n)
    e = valuation(gen.root_order, l) or 0
    scale = l ** (n - e)
    N = l**n
    return LocalClass(-gen.monomial_degree * scale % N, gen.coeff**scale, l, n)


def local_lattice(W: KummerSubgroup) -> KummerSubgroup:
    """Image of W under x -> (-sum deg P_j x_j, x_const): the class group at infinity."""
    _guard(W.field, W.l, W.n)
    N = W.modulus
    degs = [P.degree for P in W.support]
    rows = [
        (-sum(d * x for d, x in zip(degs, r[:-1])) % N, r[-1])
        for r in W.rows
    ]
    return KummerSubgroup.from_rows(W.field, W.l, W.n, (PI_INF,), rows)


def _as_lattice(W, l: Optional[int], n: Optional[int]) -> KummerSubgroup:
    if isinstance(W, KummerSubgroup):
        return W
    gens = list(W)
    if l is None or n is None:
        raise ZeroInput("l and n are required for a generator set")
    return lattice_of(gens, l, n)


def infinity_data(W: Union[KummerSubgroup, Iterable[RadicalGenerator]],
                  l: Optional[int] = None, n: Optional[int] = None) -> InfinityData:
    """e, f and the degree of the infinite prime of k(W^(1/l^n)).

    e is the order of the valuation projection of the local lattice.  The
    infinite prime's degree is counted separately as the number of constant
    classes at infinity over the global constant classes.
    """
    W = _as_lattice(W, l, n)
    loc = local_lattice(W)
    e_inf = loc.column_order(0)
    f_inf = loc.order // e_inf
    deg = loc.constant_order() // W.constant_order()
    return InfinityData(e_inf, f_inf, deg, loc.order)


def minus_one_log(field: FieldParams, l: int, n: int) -> int:
    """dlog(-1) reduced mod l^n (0 in characteristic 2)."""
    return field(field.minus_one).log % l**n


def pairing_constant_degree(W: KummerSubgroup) -> int:
    """Constant degree of the extended Hilbert class field, read off the local lattice.

    The tame symbol pairs local classes (a, x), (b, y) to h*a*b + x*b - y*a with
    h = dlog(-1).  Its kernel against pi_inf's sign-kernel generator (1, h) is
    the functional (b, y) -> y - h*b, whose image order is the answer.
    """
    loc = local_lattice(W)
    h = minus_one_log(W.field, W.l, W.n)
    N = W.modulus
    vals = [(r[1] - h * r[0]) % N for r in loc.rows]
    v = min((valuation(x, W.l) for x in vals if x), default=W.n)
    return W.l ** (W.n - v)


def _cd_field(cd) -> FieldParams:
    return cd.gamma.field


def find_theta(cd) -> Optional[FqElem]:
    """theta with gamma^c1 = theta^(l^(delta-lambda)) and theta not an l-th power."""
    l, n, delta, lam = cd.l, cd.n, cd.delta, cd.lam
    if delta >= n:
        return None
    F = _cd_field(cd)
    N = l**n
    c = cd.deg_D // l**delta
    c1 = (-pow(c, -1, N)) % N
    target = cd.gamma**c1
    k = l ** (delta - lam)
    for x in F.elements():
        if x.is_zero():
            continue
        if x**k == target and not is_power(x, l):
            return x
    return None


def local_norm_prime(cd) -> LocalNorm:
    l, n, delta, lam = cd.l, cd.n, cd.delta, cd.lam
    theta = find_theta(cd)
    if theta is None:
        raise NotApplicable("no theta outside (F_q*)^l: local prime element construction does not apply")
    F = _cd_field(cd)
    sign = F.one if (l ** (n - delta + lam) + 1) % 2 == 0 else F(F.minus_one)
    return LocalNorm(sign, theta, l**lam)


@dataclass(frozen=True)
class HPlusResult:
    degree: int
    route: str


def hplus_details(cd, K_lattice: Optional[KummerSubgroup] = None) -> HPlusResult:
    """Constant degree of K_{H+} with the route used.

    ``"norm-search"``: minimal s with (sign*theta)^s in (F_q*)^(l^(n-delta)),
    times deg of the local prime element.  Other configurations fall back to the
    pairing on K's local lattice (``"case-n1"`` for n = 1, ``"pairing"`` else).
    """
    l, n = cd.l, cd.n
    if n >= 2 and cd.delta < n:
        try:
            norm = local_norm_prime(cd)
        except NotApplicable:
            norm = None
        if norm is not None:
            base = norm.constant
            m = l ** (n - cd.delta)
            bound = l**n * (base.field.q - 1)
            for s in range(1, bound + 1):
                if is_power(base**s, m):
                    return HPlusResult(s * norm.pi_power, "norm-search")
            raise InternalInconsistency("norm search exceeded its bound")
    if K_lattice is None:
        K_lattice = lattice_of([cd.K_generator], l, n)
    route = "case-n1" if n == 1 else "pairing"
    return HPlusResult(pairing_constant_degree(K_lattice), route)


def hplus_constant_exponent(cd, K_lattice: Optional[KummerSubgroup] = None) -> int:
    return hplus_details(cd, K_lattice).degree
