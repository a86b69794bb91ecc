"""Spec documents: pydantic models, semantic checks and conversion to ExtensionSpec."""

from __future__ import annotations

import json
from typing import Literal, Optional, Union

from pydantic import BaseModel, ConfigDict, Field, ValidationError

from .errors import GenusError, SchemaError
from .fq_arith import make_field, parse_elem
from .genus_core import ComponentSpec, ExtensionSpec
from .rt_poly import IrreduciblePoly, is_irreducible, parse_poly

Elem = Union[int, str]


class _Model(BaseModel):
    model_config = ConfigDict(extra="forbid", strict=True)


class FieldModel(_Model):
    p: int
    f: int = 1
    modulus: Optional[list[int]] = None


class FactorModel(_Model):
    poly: list[Elem] = Field(min_length=2)
    alpha: int


class ComponentModel(_Model):
    l: int
    n: int
    gamma: Elem
    factors: list[FactorModel] = Field(min_length=1)


class OptionsModel(_Model):
    emit: Literal["json", "text"] = "json"
    verify: bool = False
    seed: Optional[int] = None
    suite: Optional[str] = None


class SpecDocument(_Model):
    field: FieldModel
    components: list[ComponentModel] = Field(min_length=1)
    options: Optional[OptionsModel] = None


def _path(loc) -> str:
    out = ""
    for part in loc:
        if isinstance(part, int):
            out += f"[{part}]"
        else:
            out += ("." if out else "") + str(part)
    return out or "$"


def parse_spec(text: str) -> SpecDocument:
    """Structural validation plus the range checks that need l and n."""
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError("$", f"invalid JSON: {exc.msg} at line {exc.lineno}") from exc
    try:
        doc = SpecDocument.model_validate(raw)
    except ValidationError as exc:
        err = exc.errors()[0]
        raise SchemaError(_path(err["loc"]), err["msg"]) from exc
    for i, comp in enumerate(doc.components):
        if comp.n < 1:
            raise SchemaError(f"components[{i}].n", "must be at least 1")
        if comp.l < 2:
            raise SchemaError(f"components[{i}].l", "must be a prime")
        for j, fac in enumerate(comp.factors):
            if not 1 <= fac.alpha <= comp.l**comp.n - 1:
                raise SchemaError(
                    f"components[{i}].factors[{j}].alpha",
                    f"must satisfy 1 <= alpha <= {comp.l**comp.n - 1}",
                )
    return doc


def to_extension_spec(doc: SpecDocument) -> ExtensionSpec:
    try:
        F = make_field(doc.field.p, doc.field.f, doc.field.modulus)
    except GenusError as exc:
        raise SchemaError("field", str(exc)) from exc
    comps = []
    for i, comp in enumerate(doc.components):
        try:
            gamma = parse_elem(F, comp.gamma)
        except GenusError as exc:
            raise SchemaError(f"components[{i}].gamma", str(exc)) from exc
        if gamma.is_zero():
            raise SchemaError(f"components[{i}].gamma", "must be nonzero")
        factors = []
        seen = set()
        for j, fac in enumerate(comp.factors):
            where = f"components[{i}].factors[{j}].poly"
            try:
                P = parse_poly(F, [parse_elem(F, c) for c in fac.poly], require_monic=True)
                if P.degree < 1 or not is_irreducible(P):
                    raise SchemaError(where, "not a monic irreducible of positive degree")
            except SchemaError:
                raise
            except GenusError as exc:
                raise SchemaError(where, str(exc)) from exc
            if P in seen:
                raise SchemaError(where, "prime repeated")
            seen.add(P)
            factors.append((IrreduciblePoly(P, _verified=True), fac.alpha))
        comps.append(ComponentSpec(comp.l, comp.n, gamma, tuple(factors)))
    return ExtensionSpec(F, tuple(comps))


def spec_to_document(spec: ExtensionSpec) -> dict:
    F = spec.field
    fdoc: dict = {"p": F.p, "f": F.f}
    if F.f > 1:
        fdoc["modulus"] = list(F.modulus)
    return {
        "field": fdoc,
        "components": [
            {
                "l": c.l,
                "n": c.n,
                "gamma": c.gamma.to_json(),
                "factors": [{"poly": P.to_json(), "alpha": a} for P, a in c.factors],
            }
            for c in spec.components
        ],
    }


def render_spec(spec: ExtensionSpec) -> str:
    return json.dumps(spec_to_document(spec), sort_keys=True)


def load_spec(text: str) -> ExtensionSpec:
    return to_extension_spec(parse_spec(text))
