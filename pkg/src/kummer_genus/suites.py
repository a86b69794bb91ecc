"""Deterministic verification suites comparing the constructions with the oracles."""

from __future__ import annotations

import random
from collections import Counter
from dataclasses import dataclass, field as dc_field
from typing import Optional

from .errors import GenusError
from .fq_arith import FieldParams, make_field, power_class
from .genus_core import (
    EXCEPTIONAL,
    ComponentSpec,
    ExtensionSpec,
    analyze_component,
    bookkeeping,
    extended_genus_E,
    genus_E_H,
    lattice,
)
from .kummer_lattice import RadicalGenerator, lattice_of, union_support
from .rt_poly import IrreduciblePoly, Poly, enumerate_monic_irreducibles, field_for_order
from .schema import spec_to_document
from .verify_oracle import (
    ORACLE_BOUND,
    character_extended_genus,
    constant_degree_oracle,
    generator_ramification,
    oracle_genus,
)

ACCEPTANCE_GRID = ((5, 2, 2), (13, 2, 2), (13, 3, 1), (17, 2, 4), (9, 2, 3), (7, 3, 1))
SMALL_GRID = ((5, 2, 2), (13, 3, 1), (7, 3, 1))


def grid_field(q: int) -> FieldParams:
    return field_for_order(q)


@dataclass
class Failure:
    spec: dict
    check: str
    expected: object
    got: object

    def to_json(self) -> dict:
        return {"spec": self.spec, "check": self.check, "expected": self.expected, "got": self.got}


@dataclass
class SuiteResult:
    suite: str
    seed: int
    trials: int = 0
    failures: list[Failure] = dc_field(default_factory=list)
    stats: Counter = dc_field(default_factory=Counter)

    @property
    def ok(self) -> bool:
        return not self.failures

    def to_json(self) -> dict:
        return {
            "suite": self.suite,
            "seed": self.seed,
            "trials": self.trials,
            "failures": [f.to_json() for f in self.failures],
            "stats": dict(sorted(self.stats.items())),
        }


# -- sampling -------------------------------------------------------------------

def random_prime(rng: random.Random, F: FieldParams, max_deg: int) -> IrreduciblePoly:
    deg = rng.randint(1, max_deg)
    return rng.choice(enumerate_monic_irreducibles(F, deg))


def random_component(rng: random.Random, F: FieldParams, l: int, n: int, *,
                     max_r: int = 3, max_deg: int = 3, cyclotomic: bool = False) -> ComponentSpec:
    N = l**n
    r = rng.randint(1, max_r)
    primes: list[IrreduciblePoly] = []
    while len(primes) < r:
        P = random_prime(rng, F, max_deg)
        if P not in primes:
            primes.append(P)
    alphas = [rng.randint(1, N - 1) for _ in primes]
    if all(a % l == 0 for a in alphas):
        k = rng.randrange(r)
        alphas[k] = rng.choice([a for a in range(1, N) if a % l])
    if cyclotomic:
        deg = sum(a * P.degree for P, a in zip(primes, alphas))
        gamma = F.one if deg % 2 == 0 else F(F.minus_one)
    else:
        gamma = F.from_log(rng.randrange(F.q - 1))
    return ComponentSpec(l, n, gamma, tuple(zip(primes, alphas)))


# -- per-spec checks ---------------------------------------------------------------

class _Checker:
    def __init__(self, result: SuiteResult):
        self.result = result

    def fail(self, spec: ExtensionSpec, check: str, expected, got) -> None:
        self.result.failures.append(Failure(spec_to_document(spec), check, expected, got))

    def expect(self, spec, check: str, expected, got) -> bool:
        if expected != got:
            self.fail(spec, check, expected, got)
            return False
        return True

    def spec(self, spec: ExtensionSpec) -> None:
        self.result.trials += 1
        stats = self.result.stats
        try:
            report = bookkeeping(spec, strict=False)
        except GenusError as exc:
            self.fail(spec, "pipeline", "report", f"{type(exc).__name__}: {exc}")
            return
        for name in report.failed():
            self.fail(spec, name, True, False)
        for rep in report.components:
            cd = rep.cd
            stats[f"case.{rep.case}"] += 1
            stats[f"hplus.{rep.hplus_route}"] += 1
            if cd.m > cd.t:
                for j in range(cd.r):
                    stats[f"branch.{cd.factor_branch(j)}"] += 1
            self._ramification(spec, rep)
            self._oracles(spec, rep)
            self._star(spec, cd)
            self._conditional(spec, rep)
        if report.compositum is not None:
            stats["compositum"] += 1
            self._compositum(spec, report)

    def _ramification(self, spec, rep) -> None:
        cd = rep.cd
        for name, gens in rep.generators.items():
            for g in gens:
                W = lattice_of([g], cd.l, cd.n, field=cd.field, support=cd.support)
                for P in cd.support:
                    self.result.stats["ramification"] += 1
                    self.expect(spec, f"ramification.{name}", generator_ramification(g, P, cd.l, cd.n),
                                W.finite_ramification(P))

    def _oracles(self, spec, rep) -> None:
        lat, cd = rep.lattices, rep.cd
        char = character_extended_genus([cd.E_generator], cd.l, cd.n, cd.field, cd.support)
        self.expect(spec, "geE_character_route", True, char.equal(lat["geE"]))
        if lat["K"].modulus ** lat["K"].ncols > ORACLE_BOUND:
            self.result.stats["oracle.skipped"] += 1
            return
        self.result.stats["oracle"] += 1
        for name, base, extended in (("gE", "E", False), ("gK", "K", False),
                                     ("geE", "E", True), ("geK", "K", True)):
            W = oracle_genus(lat[base], extended=extended)
            if not W.equal(lat[name]):
                self.fail(spec, f"oracle.{name}", W.to_json(), lat[name].to_json())

    def _star(self, spec, cd) -> None:
        """root[l^n](D) and root[l^n](D*) agree except for l = 2, odd deg D, 2^(n+1) not dividing q - 1."""
        mono = tuple(zip(cd.primes, cd.alphas))
        N = cd.l**cd.n
        plain = lattice_of([RadicalGenerator(cd.field.one, mono, N)], cd.l, cd.n)
        starred = lattice_of([cd.E_generator], cd.l, cd.n)
        sensitive = cd.l == 2 and cd.deg_D % 2 == 1 and (cd.field.q - 1) % 2 ** (cd.n + 1) != 0
        self.result.stats[f"star.{'sensitive' if sensitive else 'insensitive'}"] += 1
        self.expect(spec, "star_sensitivity", not sensitive, plain.equal(starred))

    def _conditional(self, spec, rep) -> None:
        cd, lat, ram = rep.cd, rep.lattices, rep.ramification
        gEH = lattice(cd, genus_E_H(cd))
        ram_gEH = [gEH.finite_ramification(P) for P in gEH.support]
        if ram_gEH != ram["geE"]:
            self.result.stats["cond.ramified_over_gEH"] += 1
            self.expect(spec, "ramified_over_gEH_implies_geE_eq_gE", True, lat["geE"].equal(lat["gE"]))
        i0 = cd.i0
        target = cd.n - cd.a[i0] - cd.d[i0]
        if any(cd.n - cd.a[j] - cd.d[j] == target for j in range(i0)):
            self.result.stats["cond.tied_pivot"] += 1
            self.expect(spec, "tied_pivot_keeps_ramification", ram["geE"], ram_gEH)
        if rep.case == EXCEPTIONAL:
            self.expect(spec, "exceptional_gE_eq_geE", True, lat["gE"].equal(lat["geE"]))

    def _compositum(self, spec, report) -> None:
        comp = report.compositum
        for l, parts in comp.lattices.items():
            reps = [r for r in report.components if r.cd.l == l]
            n = parts["K"].n
            gens = [r.cd.E_generator for r in reps]
            char = character_extended_genus(gens, l, n, spec.field, parts["K"].support)
            self.expect(spec, f"compositum.l{l}.geE_character_route", True, char.equal(parts["geE"]))
            if parts["K"].modulus ** parts["K"].ncols <= ORACLE_BOUND:
                W = oracle_genus(parts["K"], extended=True)
                self.expect(spec, f"compositum.l{l}.geK_oracle", True, W.equal(parts["geK"]))

    def pair(self, F: FieldParams, c1: ComponentSpec, c2: ComponentSpec) -> None:
        """ge(E1 E2) against the join of the two extended genus fields."""
        self.result.trials += 1
        self.result.stats["pairs"] += 1
        l, n = c1.l, c1.n
        spec = ExtensionSpec(F, (c1, c2))
        cds = [analyze_component(F, c) for c in (c1, c2)]
        support = union_support(*(cd.support for cd in cds))
        join = lattice_of([g for cd in cds for g in extended_genus_E(cd)], l, n, field=F, support=support)
        E12 = lattice_of([cd.E_generator for cd in cds], l, n, field=F, support=support)
        char = character_extended_genus([cd.E_generator for cd in cds], l, n, F, support)
        self.expect(spec, "compositum_law.character", True, char.equal(join))
        if E12.modulus ** E12.ncols <= ORACLE_BOUND:
            self.result.stats["pairs.oracle"] += 1
            W = oracle_genus(E12, extended=True)
            self.expect(spec, "compositum_law.oracle", True, W.equal(join))

    def constants(self, F: FieldParams, l: int, n: int) -> None:
        for beta in F.elements():
            if beta.is_zero():
                continue
            self.result.trials += 1
            self.result.stats["constants"] += 1
            spec = ExtensionSpec(F, ())
            closed = l ** power_class(beta, l, n)
            tower, frob = constant_degree_oracle(beta, l, n)
            if not (closed == tower == frob):
                self.result.failures.append(Failure(
                    {"field": spec_to_document(spec)["field"], "beta": beta.to_json(), "l": l, "n": n},
                    "constant_degree", closed, [tower, frob]))


# -- fixed corpora -------------------------------------------------------------------

def _poly(F: FieldParams, *coeffs) -> IrreduciblePoly:
    return IrreduciblePoly(Poly.of(F, coeffs))


def regression_specs() -> list[ExtensionSpec]:
    """The F_5 worked thread plus fixtures hitting every explicit-genus branch."""
    F5 = make_field(5)
    T, T1, T2 = _poly(F5, 0, 1), _poly(F5, 1, 1), _poly(F5, 2, 1)
    Q = _poly(F5, 2, 0, 1)  # T^2 + 2
    c = lambda g, facs, l=2, n=2: ComponentSpec(l, n, F5(g), tuple(facs))
    out = [
        ExtensionSpec(F5, (c(2, [(T, 1)]),)),
        ExtensionSpec(F5, (c(1, [(T, 1)]),)),
        ExtensionSpec(F5, (c(4, [(T, 1)]),)),
        ExtensionSpec(F5, (c(1, [(T, 1), (T1, 1)]),)),
        ExtensionSpec(F5, (c(3, [(T, 1), (T1, 2), (T2, 3)]),)),
        # pivot of degree 2 followed by a linear prime with larger a: the lower-d branch
        ExtensionSpec(F5, (c(1, [(T, 1), (Q, 1), (T1, 2)]),)),
        ExtensionSpec(F5, (c(2, [(Q, 1), (T, 2)]),)),
        ExtensionSpec(F5, (c(2, [(T, 1)]), c(1, [(T1, 3)]))),
    ]
    # two tied quadratic pivots and a linear prime with a = 2: lower-d branch (needs n = 3)
    F9 = grid_field(9)
    Q1, Q2 = enumerate_monic_irreducibles(F9, 2)[:2]
    L1 = enumerate_monic_irreducibles(F9, 1)[0]
    out.append(ExtensionSpec(F9, (ComponentSpec(2, 3, F9.one, ((Q1, 1), (Q2, 1), (L1, 4))),)))
    out.append(ExtensionSpec(F9, (ComponentSpec(2, 3, F9.gen, ((Q1, 3), (Q2, 1), (L1, 4))),)))
    F13 = make_field(13)
    out.append(ExtensionSpec(F13, (
        ComponentSpec(2, 2, F13(2), ((_poly(F13, 0, 1), 1),)),
        ComponentSpec(3, 1, F13(2), ((_poly(F13, 1, 1), 1),)),
    )))
    return out


@dataclass(frozen=True)
class SuiteConfig:
    grid: tuple
    specs_per_point: int
    pairs_per_point: int
    multi_per_point: int
    constants: bool
    regression: bool


SUITES = {
    "empty": SuiteConfig((), 0, 0, 0, False, False),
    "regression": SuiteConfig((), 0, 0, 0, False, True),
    "kummer-small": SuiteConfig(SMALL_GRID, 15, 5, 3, False, True),
    "acceptance": SuiteConfig(ACCEPTANCE_GRID, 200, 100, 10, True, True),
}


def run_suite(name: str = "kummer-small", seed: int = 0, *,
              counts: Optional[dict] = None) -> SuiteResult:
    """Run a named suite; ``counts`` overrides specs/pairs/multi per grid point."""
    if name not in SUITES:
        raise KeyError(name)
    cfg = SUITES[name]
    counts = counts or {}
    specs_n = counts.get("specs", cfg.specs_per_point)
    pairs_n = counts.get("pairs", cfg.pairs_per_point)
    multi_n = counts.get("multi", cfg.multi_per_point)
    result = SuiteResult(name, seed)
    check = _Checker(result)
    if cfg.regression:
        for spec in regression_specs():
            check.spec(spec)
    for q, l, n in cfg.grid:
        F = grid_field(q)
        rng = random.Random(f"{seed}:{q}:{l}:{n}")
        if cfg.constants:
            check.constants(F, l, n)
        for _ in range(specs_n):
            check.spec(ExtensionSpec(F, (random_component(rng, F, l, n),)))
        for _ in range(pairs_n):
            c1 = random_component(rng, F, l, n, max_r=2, cyclotomic=True)
            c2 = random_component(rng, F, l, n, max_r=2, cyclotomic=True)
            check.pair(F, c1, c2)
        for _ in range(multi_n):
            comps = (random_component(rng, F, l, n, max_r=2), random_component(rng, F, l, n, max_r=1))
            check.spec(ExtensionSpec(F, comps))
    return result


def verify_spec(spec: ExtensionSpec, seed: int = 0) -> SuiteResult:
    result = SuiteResult("spec", seed)
    _Checker(result).spec(spec)
    return result
