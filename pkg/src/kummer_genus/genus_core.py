"""Genus and extended genus fields of cyclic Kummer extensions k(root[l^n](gamma*D)).

Every field is produced as a set of :class:`RadicalGenerator` and checked as a
:class:`KummerSubgroup`.  :func:`bookkeeping` assembles everything and checks
the degree, ramification and constant-field identities tying the fields
together.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import prod
from typing import Optional, Sequence

from sympy import isprime

from .errors import (
    EmptyFactorization,
    InputError,
    InternalInconsistency,
    ScopeViolation,
)
from .fq_arith import FieldParams, FqElem, power_class, valuation
from .kummer_lattice import KummerSubgroup, RadicalGenerator, lattice_of, union_support
from .local_infinity import InfinityData, hplus_details, infinity_data, pairing_constant_degree
from .rt_poly import IrreduciblePoly

GENERIC = "Generic"
EXCEPTIONAL = "Exceptional"


@dataclass(frozen=True)
class ComponentSpec:
    l: int
    n: int
    gamma: FqElem
    factors: tuple[tuple[IrreduciblePoly, int], ...]


@dataclass(frozen=True)
class ExtensionSpec:
    field: FieldParams
    components: tuple[ComponentSpec, ...]


@dataclass(frozen=True)
class CyclicData:
    """Derived constants of one component; index lists follow the sorted prime order."""

    field: FieldParams
    l: int
    n: int
    gamma: FqElem
    primes: tuple[IrreduciblePoly, ...]
    alphas: tuple[int, ...]
    a: tuple[int, ...]
    b: tuple[int, ...]
    c: tuple[int, ...]
    d: tuple[int, ...]
    deg_D: int
    delta: int
    d_cap: int
    t: int
    m: int
    i0: int
    bezout: Optional[tuple[int, int]]
    z: dict
    y: dict
    eps: FqElem
    alpha_H: int
    lam: int
    maximizer_unique: bool

    @property
    def r(self) -> int:
        return len(self.primes)

    @property
    def H_order(self) -> int:
        return self.l**self.alpha_H

    @property
    def support(self) -> tuple[IrreduciblePoly, ...]:
        return tuple(sorted(self.primes, key=lambda P: P.sort_key()))

    @property
    def K_generator(self) -> RadicalGenerator:
        return RadicalGenerator(self.gamma, tuple(zip(self.primes, self.alphas)), self.l**self.n)

    @property
    def E_generator(self) -> RadicalGenerator:
        return RadicalGenerator(_sign(self.field, self.deg_D), tuple(zip(self.primes, self.alphas)), self.l**self.n)

    def factor_branch(self, j: int) -> str:
        if j < self.i0:
            return "before"
        if j == self.i0:
            return "pivot"
        return "after" if self.d[j] >= self.d[self.i0] else "after-lower"

    def to_json(self) -> dict:
        return {
            "l": self.l,
            "n": self.n,
            "gamma": self.gamma.to_json(),
            "primes": [P.to_json() for P in self.primes],
            "alpha": list(self.alphas),
            "a": list(self.a),
            "b": list(self.b),
            "c": list(self.c),
            "d": list(self.d),
            "deg_D": self.deg_D,
            "delta": self.delta,
            "t": self.t,
            "m": self.m,
            "i_0": self.i0 + 1,
            "bezout": list(self.bezout) if self.bezout else None,
            "z": {str(j + 1): v for j, v in sorted(self.z.items())},
            "y": {str(j + 1): v for j, v in sorted(self.y.items())},
            "epsilon": self.eps.to_json(),
            "H_order": self.H_order,
            "lambda": self.lam,
        }


def _sign(field: FieldParams, degree: int) -> FqElem:
    return field.one if degree % 2 == 0 else field(field.minus_one)


def _split(x: int, l: int) -> tuple[int, int]:
    """(u, v) with x = u * l^v and l not dividing u."""
    v = valuation(x, l) or 0
    return x // l**v, v


def star_root(P: IrreduciblePoly, root: int) -> RadicalGenerator:
    """root-th root of P* = (-1)^deg P * P."""
    return RadicalGenerator(_sign(P.field, P.degree), ((P, 1),), root)


def check_scope(field: FieldParams, comp: ComponentSpec) -> None:
    l, n = comp.l, comp.n
    if not isprime(l) or n < 1:
        raise ScopeViolation(f"need a prime l and n >= 1, got l={l}, n={n}")
    if l == field.p:
        raise ScopeViolation(f"l = {l} is the characteristic: not a Kummer component")
    if (field.q - 1) % l**n:
        raise ScopeViolation(f"{l}^{n} does not divide q - 1 = {field.q - 1}")
    if comp.gamma.field != field or comp.gamma.is_zero():
        raise InputError("gamma must be a nonzero element of the base field")
    if not comp.factors:
        raise EmptyFactorization("D has no prime factors")
    seen = set()
    for P, alpha in comp.factors:
        if P.field != field:
            raise InputError(f"{P} is over a different field")
        if P in seen:
            raise InputError(f"prime {P} repeated")
        seen.add(P)
        if not 1 <= alpha <= l**n - 1:
            raise InputError(f"exponent {alpha} outside [1, {l**n - 1}]")
    if all(alpha % l == 0 for _, alpha in comp.factors):
        raise ScopeViolation("every exponent is divisible by l: the extension has degree below l^n")


def analyze_component(field: FieldParams, comp: ComponentSpec) -> CyclicData:
    check_scope(field, comp)
    l, n = comp.l, comp.n
    N = l**n
    order = sorted(comp.factors, key=lambda f: (_split(f[1], l)[1], f[0].sort_key()))
    primes = tuple(P for P, _ in order)
    alphas = tuple(x for _, x in order)
    b, a = zip(*(_split(x, l) for x in alphas))
    c, d = zip(*(_split(P.degree, l) for P in primes))
    deg_D = sum(x * P.degree for P, x in order)
    delta = valuation(deg_D, l) or 0
    d_cap = min(n, delta)
    t = n - d_cap
    vals = [n - a[j] - min(n - a[j], d[j]) for j in range(len(primes))]  # v_l e_inf(E_j)
    m = max(vals)
    if t > m:
        raise InternalInconsistency(f"t = {t} exceeds m = {m}")
    candidates = [
        i for i in range(len(primes))
        if vals[i] == m and all(n - a[j] - d[j] < m for j in range(i + 1, len(primes)))
    ]
    if not candidates:
        raise InternalInconsistency("no index satisfies the pivot side condition")
    i0 = max(candidates)
    bezout = None
    z: dict[int, int] = {}
    y: dict[int, int] = {}
    if m > 0:
        ba = pow(c[i0], -1, N)
        bb = (l ** d[i0] - ba * primes[i0].degree) // N
        bezout = (ba, bb)
        for j in range(i0):
            z[j] = (-ba * c[j] * l ** (d[j] - d[i0])) % N
        cinv = pow(c[i0], -1, N)
        for j in range(i0 + 1, len(primes)):
            y[j] = (-c[j] * cinv) % N
    eps = _sign(field, deg_D) * comp.gamma
    alpha_H = power_class(eps, l, n) - power_class(eps, l, d_cap)
    lam = power_class(comp.gamma, l, d_cap)
    return CyclicData(
        field=field, l=l, n=n, gamma=comp.gamma, primes=primes, alphas=alphas,
        a=tuple(a), b=tuple(b), c=tuple(c), d=tuple(d), deg_D=deg_D, delta=delta,
        d_cap=d_cap, t=t, m=m, i0=i0, bezout=bezout, z=z, y=y, eps=eps,
        alpha_H=alpha_H, lam=lam, maximizer_unique=vals.count(m) == 1,
    )


def extended_genus_E(cd: CyclicData) -> list[RadicalGenerator]:
    return [star_root(P, cd.l ** (cd.n - a)) for P, a in zip(cd.primes, cd.a)]


def _explicit_factor(cd: CyclicData, j: int) -> RadicalGenerator:
    l, n, i0 = cd.l, cd.n, cd.i0
    P, Pi = cd.primes[j], cd.primes[i0]
    one = cd.field.one
    branch = cd.factor_branch(j)
    if branch == "before":
        return RadicalGenerator(one, ((P, 1), (Pi, cd.z[j])), l ** (n - cd.a[j]))
    if branch == "pivot":
        return star_root(Pi, l ** (cd.d[i0] + cd.t))
    if branch == "after":
        return RadicalGenerator(one, ((P, 1), (Pi, cd.y[j] * l ** (cd.d[j] - cd.d[i0]))), l ** (n - cd.a[j]))
    shift = cd.d[i0] - cd.d[j]
    return RadicalGenerator(one, ((P, l**shift), (Pi, cd.y[j])), l ** (n - cd.a[j] + shift))


def explicit_genus_E(cd: CyclicData) -> list[RadicalGenerator]:
    """The explicit F_1, ..., F_r generating the genus field of E (needs m > 0)."""
    if cd.m == 0:
        raise InternalInconsistency("explicit genus generators need m > 0")
    return [_explicit_factor(cd, j) for j in range(cd.r)]


def genus_E(cd: CyclicData) -> list[RadicalGenerator]:
    if cd.m == cd.t:
        return extended_genus_E(cd)
    return explicit_genus_E(cd)


def _F(cd: CyclicData) -> list[RadicalGenerator]:
    return explicit_genus_E(cd) if cd.m > 0 else extended_genus_E(cd)


def genus_E_H(cd: CyclicData) -> list[RadicalGenerator]:
    """Fixed field of the decomposition group inside g E: pivot factor shrunk by |H|."""
    F = _F(cd)
    i0 = cd.i0
    e = cd.n - cd.a[i0] - cd.m + cd.t - cd.alpha_H
    if e < 0:
        raise InternalInconsistency(f"negative pivot root exponent {e}")
    gens = [g for j, g in enumerate(F) if j != i0]
    if e:
        gens.append(star_root(cd.primes[i0], cd.l**e))
    return gens


def genus_K(cd: CyclicData) -> list[RadicalGenerator]:
    return genus_E_H(cd) + [cd.K_generator]


def extended_genus_K_component(cd: CyclicData) -> list[RadicalGenerator]:
    return extended_genus_E(cd) + [cd.K_generator]


def lattice(cd: CyclicData, gens: Sequence[RadicalGenerator], n: Optional[int] = None) -> KummerSubgroup:
    return lattice_of(gens, cd.l, n or cd.n, field=cd.field, support=cd.support)


def classify(cd: CyclicData) -> str:
    K = lattice(cd, [cd.K_generator])
    E = lattice(cd, [cd.E_generator])
    if (not K.equal(E) and cd.H_order != 1 and cd.t == cd.m > 0 and cd.maximizer_unique):
        return EXCEPTIONAL
    return GENERIC


def extended_genus_K(spec: ExtensionSpec) -> list[RadicalGenerator]:
    out: list[RadicalGenerator] = []
    for comp in spec.components:
        out.extend(extended_genus_K_component(analyze_component(spec.field, comp)))
    return sorted(set(out), key=RadicalGenerator.sort_key)


# -- report --------------------------------------------------------------------

FIELD_NAMES = ("K", "E", "geE", "gE", "gK", "geK")


@dataclass
class ComponentReport:
    cd: CyclicData
    case: str
    generators: dict[str, list[RadicalGenerator]]
    lattices: dict[str, KummerSubgroup]
    infinity: dict[str, InfinityData]
    ramification: dict[str, list[int]]
    constants: dict[str, int]
    hplus_route: str
    identities: dict[str, bool]

    def degree(self, name: str) -> int:
        return self.lattices[name].order

    def to_json(self) -> dict:
        return {
            "data": self.cd.to_json(),
            "case": self.case,
            "generators": {
                k: [g.to_json() for g in sorted(v, key=RadicalGenerator.sort_key)]
                for k, v in self.generators.items()
            },
            "degrees": {k: W.order for k, W in self.lattices.items()},
            "lattices": {k: W.to_json() for k, W in self.lattices.items()},
            "ramification": {
                "primes": [P.to_json() for P in self.lattices["K"].support],
                **self.ramification,
            },
            "infinity": {k: v.to_json() for k, v in self.infinity.items()},
            "constants": self.constants,
            "hplus_route": self.hplus_route,
            "identities": self.identities,
        }


@dataclass
class CompositumReport:
    """One lattice per prime l; degrees multiply across different l."""

    lattices: dict[int, dict[str, KummerSubgroup]]
    identities: dict[str, bool]

    def degree(self, name: str) -> int:
        return prod(parts[name].order for parts in self.lattices.values())

    def to_json(self) -> dict:
        return {
            "parts": [
                {
                    "l": l,
                    "n": parts["K"].n,
                    "generators": {
                        k: [g.to_json() for g in sorted(W.generators(), key=RadicalGenerator.sort_key)]
                        for k, W in parts.items()
                    },
                }
                for l, parts in sorted(self.lattices.items())
            ],
            "degrees": {k: self.degree(k) for k in ("K", "E", "geE", "geK")},
            "identities": self.identities,
        }


@dataclass
class GenusReport:
    field: FieldParams
    components: list[ComponentReport]
    compositum: Optional[CompositumReport] = None

    def identities(self) -> dict[str, bool]:
        out = {}
        for i, c in enumerate(self.components):
            for k, v in c.identities.items():
                out[f"components[{i}].{k}"] = v
        if self.compositum:
            for k, v in self.compositum.identities.items():
                out[f"compositum.{k}"] = v
        return out

    def failed(self) -> list[str]:
        return [k for k, v in self.identities().items() if not v]

    def to_json(self) -> dict:
        doc = {
            "field": self.field.to_json(),
            "components": [c.to_json() for c in self.components],
        }
        if self.compositum is not None:
            doc["compositum"] = self.compositum.to_json()
        return doc


def component_report(field: FieldParams, comp: ComponentSpec) -> ComponentReport:
    cd = analyze_component(field, comp)
    l = cd.l
    gens = {
        "K": [cd.K_generator],
        "E": [cd.E_generator],
        "geE": extended_genus_E(cd),
        "gE": genus_E(cd),
        "gK": genus_K(cd),
        "geK": extended_genus_K_component(cd),
    }
    gens = {k: sorted(set(v), key=RadicalGenerator.sort_key) for k, v in gens.items()}
    lat = {k: lattice(cd, v) for k, v in gens.items()}
    gEH = lattice(cd, genus_E_H(cd))
    inf = {k: infinity_data(W) for k, W in lat.items()}
    ram = {k: [W.finite_ramification(P) for P in W.support] for k, W in lat.items()}
    const = {k: W.constant_order() for k, W in lat.items()}
    hp = hplus_details(cd, lat["K"])
    const["KH+"] = hp.degree
    const["geE_K"] = lat["geE"].join(lat["K"]).constant_order()

    ids: dict[str, bool] = {}
    ids["E_in_gE_in_geE"] = lat["E"] <= lat["gE"] <= lat["geE"]
    ids["K_in_gK_in_geK"] = lat["K"] <= lat["gK"] <= lat["geK"]
    ids["geE_degree"] = lat["geE"].order == prod(l ** (cd.n - a) for a in cd.a)
    ids["gE_unramified"] = ram["gE"] == ram["E"]
    ids["gK_unramified"] = ram["gK"] == ram["K"]
    ids["geE_unramified"] = ram["geE"] == ram["E"]
    ids["E_K_same_ramification"] = ram["E"] == ram["K"] and inf["E"].e_inf == inf["K"].e_inf
    ids["e_inf_gE"] = inf["gE"].e_inf == l**cd.t
    ids["e_inf_E"] = inf["E"].e_inf == l**cd.t
    ids["gE_split_infinity"] = inf["gE"].local_order == inf["E"].local_order
    ids["gK_split_infinity"] = inf["gK"].local_order == inf["K"].local_order
    ids["ef_product"] = all(v.e_inf * v.f_inf == v.local_order for v in inf.values())
    ids["f_inf_is_deg_P_inf"] = all(
        inf[k].f_inf == inf[k].deg_P_inf for k in ("K", "E", "geE", "gE") if const[k] == 1
    )
    ratio_E = lat["geE"].order // lat["gE"].order
    ratio_K = lat["geK"].order // lat["gK"].order
    ids["geK_gK_degree"] = ratio_K == ratio_E * cd.H_order
    ids["geK_gK_divides_q_minus_1"] = (field.q - 1) % ratio_K == 0
    ids["f_inf_geK_over_gK"] = inf["geK"].f_inf == inf["gK"].f_inf * cd.H_order
    ids["e_inf_geK_over_gK"] = inf["geK"].e_inf == inf["gK"].e_inf * ratio_E
    ids["gK_constants"] = const["gK"] == inf["K"].f_inf == l**cd.lam
    ids["geK_constants"] = const["geK"] == cd.H_order * inf["K"].deg_P_inf
    ids["hplus_constants"] = hp.degree == const["geK"] == const["geE_K"] == pairing_constant_degree(lat["K"])
    if cd.m == cd.t and cd.m > 0:
        ids["explicit_form_when_m_eq_t"] = lattice(cd, explicit_genus_E(cd)).equal(lat["geE"])
    ids["gEH_in_gE"] = gEH <= lat["gE"] and lat["gE"].order == gEH.order * cd.H_order
    return ComponentReport(cd, classify(cd), gens, lat, inf, ram, const, hp.route, ids)


def compositum_report(spec: ExtensionSpec, parts: list[ComponentReport]) -> CompositumReport:
    by_l: dict[int, list[ComponentReport]] = {}
    for rep in parts:
        by_l.setdefault(rep.cd.l, []).append(rep)
    lattices: dict[int, dict[str, KummerSubgroup]] = {}
    ids: dict[str, bool] = {}
    for l, reps in sorted(by_l.items()):
        n = max(r.cd.n for r in reps)
        support = union_support(*(r.cd.support for r in reps))
        def lat(gens):
            return lattice_of(gens, l, n, field=spec.field, support=support)
        K = lat([g for r in reps for g in r.generators["K"]])
        E = lat([g for r in reps for g in r.generators["E"]])
        geE = lat([g for r in reps for g in r.generators["geE"]])
        geK = geE.join(K)
        lattices[l] = {"K": K, "E": E, "geE": geE, "geK": geK}
        ram_E = [E.finite_ramification(P) for P in support]
        ids[f"l{l}.geE_unramified"] = [geE.finite_ramification(P) for P in support] == ram_E
        ids[f"l{l}.geE_degree"] = geE.order == prod(ram_E)
        ids[f"l{l}.geK_contains_K"] = K <= geK
    return CompositumReport(lattices, ids)


def bookkeeping(spec: ExtensionSpec, *, strict: bool = True) -> GenusReport:
    parts = [component_report(spec.field, comp) for comp in spec.components]
    report = GenusReport(spec.field, parts)
    if len(parts) > 1:
        report.compositum = compositum_report(spec, parts)
    failed = report.failed()
    if strict and failed:
        raise InternalInconsistency("identities failed: " + ", ".join(failed))
    return report
