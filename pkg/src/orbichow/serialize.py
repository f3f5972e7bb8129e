"""Serialization: JSON schemas, Singular / Macaulay2 / LaTeX renderers.

Exact rationals serialize as ``"numerator/denominator"`` strings everywhere
(including integers, e.g. ``"3/1"``), so parsing is uniform.  All emitters
iterate sorted structures; output for fixed input is byte-identical across
runs.
"""

from __future__ import annotations

import json
from fractions import Fraction
from math import lcm
from typing import Mapping, Sequence

from .deformed import GradedQuotient
from .fibration import FiberedMonomial
from .lattice import Q, Vec, WeightVector
from .presentation import AffinePresentation, Relation, mono


def frac_str(q) -> str:
    q = Q(q)
    return f"{q.numerator}/{q.denominator}"


def parse_frac(s: str) -> Fraction:
    return Q(s)


def vec_strs(v: Sequence) -> list[str]:
    return [frac_str(x) for x in v]


def parse_vec(items: Sequence[str]) -> Vec:
    return tuple(Q(x) for x in items)


def dumps(payload: dict) -> str:
    return json.dumps(payload, sort_keys=True, indent=2) + "\n"


# -- presentations ----------------------------------------------------------


def presentation_to_json(pres: AffinePresentation) -> dict:
    return {
        "schema": "presentation@1",
        "kind": pres.kind,
        "p": list(pres.p.entries),
        "w": list(pres.w.entries) if pres.w is not None else None,
        "ambient_dim": pres.ambient_dim,
        "generators": [
            {
                "name": name,
                "t_exp": frac_str(pres.generators[name].t_exp),
                "z_exp": vec_strs(pres.generators[name].z_exp),
            }
            for name in pres.generator_order
        ],
        "relations": [
            [dict(rel.lhs), dict(rel.rhs) if rel.rhs is not None else None]
            for rel in pres.relations
        ],
        "extra_relations": [
            [[frac_str(coeff), dict(m)] for coeff, m in combo]
            for combo in pres.extra_relations
        ],
    }


def presentation_from_json(payload: Mapping) -> AffinePresentation:
    if payload.get("schema") != "presentation@1":
        raise ValueError("not a presentation payload")
    p = WeightVector.p(payload["p"])
    w = WeightVector.w(payload["w"]) if payload.get("w") is not None else None
    order = tuple(g["name"] for g in payload["generators"])
    gens = {
        g["name"]: FiberedMonomial(parse_frac(g["t_exp"]), parse_vec(g["z_exp"]))
        for g in payload["generators"]
    }
    relations = [
        Relation(
            mono(*((k, v) for k, v in lhs.items())),
            mono(*((k, v) for k, v in rhs.items())) if rhs is not None else None,
        )
        for lhs, rhs in payload["relations"]
    ]
    extra = [
        tuple((parse_frac(c), mono(*((k, v) for k, v in m.items()))) for c, m in combo)
        for combo in payload.get("extra_relations", [])
    ]
    return AffinePresentation(
        kind=payload["kind"],
        p=p,
        w=w,
        generator_order=order,
        generators=gens,
        relations=relations,
        extra_relations=extra,
    )


def _mono_text(m, mul: str = "*", power: str = "^") -> str:
    if not m:
        return "1"
    parts = []
    for name, exp in m:
        parts.append(name if exp == 1 else f"{name}{power}{exp}")
    return mul.join(parts)


def _extra_integer_terms(combo) -> list[tuple[int, object]]:
    """Clear denominators of a rational combination of formal monomials."""
    den = 1
    for coeff, _ in combo:
        den = lcm(den, Q(coeff).denominator)
    return [(int(Q(coeff) * den), m) for coeff, m in combo]


def presentation_to_singular(pres: AffinePresentation) -> str:
    names = ",".join(pres.generator_order)
    polys = []
    for rel in pres.relations:
        if rel.rhs is None:
            polys.append(_mono_text(rel.lhs))
        else:
            polys.append(f"{_mono_text(rel.lhs)}-{_mono_text(rel.rhs)}")
    for combo in pres.extra_relations:
        terms = []
        for coeff, m in _extra_integer_terms(combo):
            if coeff == 0:
                continue
            sign = "-" if coeff < 0 else ("+" if terms else "")
            mag = abs(coeff)
            body = _mono_text(m) if mag == 1 else f"{mag}*{_mono_text(m)}"
            terms.append(f"{sign}{body}")
        polys.append("".join(terms))
    ideal = ",\n  ".join(polys) if polys else "0"
    return (
        f"ring r = 0, ({names}), dp;\n"
        f"ideal i = {ideal};\n"
        "i;\n"
        "quit;\n"
    )


def presentation_to_macaulay2(pres: AffinePresentation) -> str:
    names = ",".join(pres.generator_order)
    polys = []
    for rel in pres.relations:
        if rel.rhs is None:
            polys.append(_mono_text(rel.lhs))
        else:
            polys.append(f"{_mono_text(rel.lhs)}-{_mono_text(rel.rhs)}")
    for combo in pres.extra_relations:
        terms = []
        for coeff, m in _extra_integer_terms(combo):
            if coeff == 0:
                continue
            sign = "-" if coeff < 0 else ("+" if terms else "")
            mag = abs(coeff)
            body = _mono_text(m) if mag == 1 else f"{mag}*{_mono_text(m)}"
            terms.append(f"{sign}{body}")
        polys.append("".join(terms))
    ideal = ", ".join(polys) if polys else "0"
    return (
        f"R = QQ[{names}];\n"
        f"I = ideal({ideal});\n"
        "I\n"
    )


def _latex_name(name: str) -> str:
    head = name.rstrip("0123456789")
    tail = name[len(head):]
    if not tail:
        return head
    return f"{head}_{{{tail}}}" if len(tail) > 1 else f"{head}_{tail}"


def _latex_mono(m) -> str:
    if not m:
        return "1"
    parts = []
    for name, exp in m:
        base = _latex_name(name)
        parts.append(base if exp == 1 else f"{base}^{{{exp}}}")
    return " ".join(parts)


def presentation_to_latex(pres: AffinePresentation) -> str:
    lines = []
    for rel in pres.relations:
        rhs = "0" if rel.rhs is None else _latex_mono(rel.rhs)
        lines.append(f"{_latex_mono(rel.lhs)} &= {rhs} \\\\")
    for combo in pres.extra_relations:
        terms = []
        for coeff, m in combo:
            coeff = Q(coeff)
            sign = "-" if coeff < 0 else ("+" if terms else "")
            mag = abs(coeff)
            if mag == 1:
                body = _latex_mono(m)
            elif mag.denominator == 1:
                body = f"{mag.numerator} {_latex_mono(m)}"
            else:
                body = f"\\frac{{{mag.numerator}}}{{{mag.denominator}}} {_latex_mono(m)}"
            terms.append(f"{sign}{body}" if sign else body)
        lines.append(" ".join(terms) + " &= 0 \\\\")
    body = "\n".join(lines)
    return "\\begin{align*}\n" + body + "\n\\end{align*}\n"


# -- graded quotients -------------------------------------------------------


def quotient_to_json(quot: GradedQuotient) -> dict:
    triples = []
    for (i, j), expansion in sorted(quot.structure_constants.items()):
        for k, coeff in sorted(expansion.items()):
            triples.append([i, j, k, frac_str(coeff)])
    return {
        "schema": "quotient@1",
        "p": list(quot.p.entries),
        "w": list(quot.w.entries),
        "degree_cap": frac_str(quot.degree_cap),
        "degrees": [frac_str(d) for d in quot.degrees],
        "dims": [quot.dims[d] for d in quot.degrees],
        "total_dim": quot.total_dim,
        "basis": [[vec_strs(b) for b in quot.basis[d]] for d in quot.degrees],
        "structure_constants": triples,
    }


def quotient_to_latex(payload: Mapping) -> str:
    lines = ["\\begin{align*}"]
    nonzero = [
        (d, k) for d, k in zip(payload["degrees"], payload["dims"]) if k
    ]
    for d, k in nonzero:
        q = Q(d)
        if q.denominator == 1:
            deg = str(q.numerator)
        else:
            deg = f"\\frac{{{q.numerator}}}{{{q.denominator}}}"
        lines.append(f"\\dim A^{{{deg}}} &= {k} \\\\")
    lines.append(f"\\dim A^{{\\bullet}} &= {payload['total_dim']}")
    lines.append("\\end{align*}")
    return "\n".join(lines) + "\n"


# -- reports and dispatch ---------------------------------------------------


def export(obj, fmt: str) -> str:
    """Render a presentation, quotient, or report in the requested format."""
    if isinstance(obj, AffinePresentation):
        if fmt == "json":
            return dumps(presentation_to_json(obj))
        if fmt == "singular":
            return presentation_to_singular(obj)
        if fmt == "macaulay2":
            return presentation_to_macaulay2(obj)
        if fmt == "latex":
            return presentation_to_latex(obj)
        raise ValueError(f"unsupported format {fmt!r} for a presentation")
    if isinstance(obj, GradedQuotient):
        if fmt == "json":
            return dumps(quotient_to_json(obj))
        if fmt == "latex":
            return quotient_to_latex(quotient_to_json(obj))
        raise ValueError(f"unsupported format {fmt!r} for a graded quotient")
    if hasattr(obj, "to_json"):
        if fmt == "json":
            return dumps(obj.to_json())
        raise ValueError(f"unsupported format {fmt!r} for a report")
    raise ValueError(f"cannot export object of type {type(obj).__name__}")


def rerender(payload: Mapping, fmt: str) -> str:
    """Re-render a stored JSON payload in another format."""
    schema = payload.get("schema", "")
    if schema == "presentation@1":
        return export(presentation_from_json(payload), fmt)
    if schema == "quotient@1":
        if fmt == "json":
            return dumps(dict(payload))
        if fmt == "latex":
            return quotient_to_latex(payload)
        raise ValueError(f"unsupported format {fmt!r} for a stored quotient")
    if fmt == "json":
        return dumps(dict(payload))
    raise ValueError(f"cannot re-render schema {schema!r} as {fmt!r}")
