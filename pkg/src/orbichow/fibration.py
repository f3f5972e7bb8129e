"""Coordinate ring of the mirror fibration and its zero-fiber Jacobian algebra.

Monomials ``t^g z^b`` carry a curve exponent ``g`` in the value semigroup T
and an exponent vector ``b`` in S.  The single rewriting rule

    z^b  =  t^gamma(b) z^alpha(b)

has the unique normal forms ``gamma(z-part) == 0``; multiplication adds raw
exponents and renormalizes, and (unlike the deformed product) never kills a
product of monomials.  Setting every positive power of t to zero recovers the
deformed group ring, and running the quotient construction on this side gives
an independent route to the same graded data; the agreement of the two routes
is asserted.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Optional, Sequence

from .deformed import (
    DeformedElement,
    GradedQuotient,
    ScaledVec,
    _scaled_degree_key,
    assemble_quotient,
    orbifold_chow,
)
from .lattice import (
    InternalCheckError,
    Q,
    Vec,
    WeightVector,
    alpha,
    as_vec,
    as_weights,
    dual_kernel_basis,
    gamma,
    in_alpha_image,
    theta_value,
)
from .semigroup import s_generators


@dataclass(frozen=True, order=True)
class FiberedMonomial:
    """Normal-form monomial t^(t_exp) z^(z_exp) with gamma(z_exp) == 0."""

    t_exp: Fraction
    z_exp: Vec


class FiberedElement:
    """Finite rational combination of normal-form fibered monomials."""

    __slots__ = ("p", "terms")

    def __init__(self, p: "WeightVector | Sequence[int]", terms: Mapping[FiberedMonomial, Fraction]):
        pw = as_weights(p)
        clean: dict[FiberedMonomial, Fraction] = {}
        for mono, coeff in terms.items():
            coeff = Q(coeff)
            if coeff == 0:
                continue
            if len(mono.z_exp) != len(pw):
                raise ValueError("exponent length does not match the weights")
            clean[mono] = coeff
        self.p = pw
        self.terms = clean

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, FiberedElement)
            and self.p == other.p
            and self.terms == other.terms
        )

    def __add__(self, other: "FiberedElement") -> "FiberedElement":
        if self.p != other.p:
            raise ValueError("weight mismatch")
        out = dict(self.terms)
        for mono, coeff in other.terms.items():
            out[mono] = out.get(mono, Q(0)) + coeff
        return FiberedElement(self.p, out)

    def __rmul__(self, scalar) -> "FiberedElement":
        s = Q(scalar)
        return FiberedElement(self.p, {m: s * v for m, v in self.terms.items()})

    def __mul__(self, other: "FiberedElement") -> "FiberedElement":
        return multiply_fibered(self, other)

    def __repr__(self) -> str:
        if not self.terms:
            return "FiberedElement(0)"
        parts = [
            f"{coeff}*t^{mono.t_exp}*z^{tuple(str(x) for x in mono.z_exp)}"
            for mono, coeff in sorted(self.terms.items())
        ]
        return "FiberedElement(" + " + ".join(parts) + ")"


def normalize_monomial(
    gamma0, b_raw: Sequence, p: "WeightVector | Sequence[int]", validate: bool = True
) -> FiberedMonomial:
    """Unique normal form (gamma0 + gamma(b), alpha(b)) of a raw monomial."""
    pw = as_weights(p)
    bv = as_vec(b_raw)
    g = gamma(bv, pw)
    z = tuple(x - g * pi for x, pi in zip(bv, pw.entries))
    if validate and not in_alpha_image(z, pw):
        raise ValueError(f"{bv} does not reduce to a boundary representative")
    return FiberedMonomial(Q(gamma0) + g, z)


def z_monomial(p: "WeightVector | Sequence[int]", b_raw: Sequence, coeff=Q(1)) -> FiberedElement:
    pw = as_weights(p)
    return FiberedElement(pw, {normalize_monomial(0, b_raw, pw): Q(coeff)})


def t_monomial(p: "WeightVector | Sequence[int]", t_exp, coeff=Q(1)) -> FiberedElement:
    pw = as_weights(p)
    zero = tuple(Q(0) for _ in range(len(pw)))
    return FiberedElement(pw, {FiberedMonomial(Q(t_exp), zero): Q(coeff)})


def multiply_fibered(x: FiberedElement, y: FiberedElement) -> FiberedElement:
    """Bilinear product; raw exponents add and the result is renormalized.

    Normal forms are closed under this product, so no validation is needed:
    a product of monomials is never zero, in contrast with the deformed ring.
    """
    if x.p != y.p:
        raise ValueError("weight mismatch")
    pw = x.p
    out: dict[FiberedMonomial, Fraction] = {}
    for m1, a1 in x.terms.items():
        for m2, a2 in y.terms.items():
            raw = tuple(u + v for u, v in zip(m1.z_exp, m2.z_exp))
            mono = normalize_monomial(m1.t_exp + m2.t_exp, raw, pw, validate=False)
            out[mono] = out.get(mono, Q(0)) + a1 * a2
    return FiberedElement(pw, out)


def restrict_zero_fiber(x: FiberedElement) -> DeformedElement:
    """Kill every monomial with positive t-exponent; z-exponents survive."""
    return DeformedElement(
        x.p, {m.z_exp: coeff for m, coeff in x.terms.items() if m.t_exp == 0}
    )


def build_f(
    p: "WeightVector | Sequence[int]", w: "WeightVector | Sequence[int]"
) -> FiberedElement:
    """The potential sum_i z_i^(w_i) as a fibered element."""
    pw = as_weights(p, "p")
    ww = as_weights(w, "w")
    if len(pw) != len(ww):
        raise ValueError("length mismatch")
    out = FiberedElement(pw, {})
    for i in range(len(pw)):
        raw = tuple(Q(ww[i]) if j == i else Q(0) for j in range(len(pw)))
        out = out + z_monomial(pw, raw)
    return out


def phi_star(m: FiberedMonomial, p: "WeightVector | Sequence[int]") -> Vec:
    """Torus-character exponent b - gamma * p of a normal-form monomial.

    Injective: the t-exponent is recovered as minus the smallest ratio of the
    image, so distinct normal forms have distinct images.
    """
    pw = as_weights(p)
    return tuple(b - m.t_exp * pi for b, pi in zip(m.z_exp, pw.entries))


def phi_star_preimage(v: Sequence, p: "WeightVector | Sequence[int]") -> FiberedMonomial:
    """Inverse of phi_star on its image."""
    pw = as_weights(p)
    vv = as_vec(v)
    g = -gamma(vv, pw)
    return FiberedMonomial(g, tuple(x + g * pi for x, pi in zip(vv, pw.entries)))


def xi_fibered(theta: Sequence[int], x: FiberedElement) -> FiberedElement:
    """Derivation t^g z^b -> theta(b) t^g z^b along the fibration."""
    if theta_value(theta, x.p.entries) != 0:
        raise ValueError(f"functional {tuple(theta)} does not annihilate {x.p.entries}")
    return FiberedElement(
        x.p, {m: theta_value(theta, m.z_exp) * v for m, v in x.terms.items()}
    )


@dataclass(frozen=True)
class FibrationMaps:
    """The four exponent-level maps of the torus / fibration square."""

    p: WeightVector

    def phi_star(self, gamma0, b: Sequence) -> Vec:
        return tuple(Q(x) - Q(gamma0) * pi for x, pi in zip(b, self.p.entries))

    def pi_star(self, gamma0) -> tuple[Fraction, Vec]:
        return (Q(gamma0), tuple(Q(0) for _ in range(len(self.p))))

    def rho_star(self, lam) -> Vec:
        return tuple(Q(lam) * pi for pi in self.p.entries)

    def psi_star(self, gamma0) -> Fraction:
        return -Q(gamma0)

    def square_commutes(self, samples: Iterable) -> bool:
        """phi* after pi* equals rho* after psi* on the given curve exponents."""
        for g in samples:
            if self.phi_star(*self.pi_star(g)) != self.rho_star(self.psi_star(g)):
                return False
        return True


def _bfs_monomials(
    pw: WeightVector, ww: WeightVector, cap_key: int
) -> dict[int, list[ScaledVec]]:
    """Boundary representatives generated from the semigroup generators.

    Walks sums of the S-generators, pruning anything that leaves the boundary
    (no zero coordinate) or exceeds the degree cap.  Every representative is
    reached this way because its generator decompositions stay on the
    boundary prefix by prefix.  This is deliberately a different enumeration
    from the sector scan used by the deformed-ring route.
    """
    m = pw.lcm
    sg = s_generators(pw)
    gens: list[ScaledVec] = [
        tuple(m if j == i else 0 for j in range(len(pw))) for i in range(len(pw))
    ]
    for g, _, _ in sg.fractional_dedup():
        gens.append(tuple(int(x * m) for x in g))
    start: ScaledVec = (0,) * len(pw)
    seen = {start}
    frontier = [start]
    while frontier:
        nxt = []
        for c in frontier:
            for g in gens:
                cand = tuple(a + b for a, b in zip(c, g))
                if cand in seen or all(cand):
                    continue
                if _scaled_degree_key(cand, ww) > cap_key:
                    continue
                seen.add(cand)
                nxt.append(cand)
        frontier = nxt
    buckets: dict[int, list[ScaledVec]] = {}
    for c in seen:
        buckets.setdefault(_scaled_degree_key(c, ww), []).append(c)
    for key in buckets:
        buckets[key].sort()
    return buckets


def jacobian_algebra_zero_fiber(
    p: "WeightVector | Sequence[int]",
    w: "WeightVector | Sequence[int] | None" = None,
    degree_cap=None,
    check: bool = True,
) -> GradedQuotient:
    """Graded Jacobian algebra of the potential on the zero fiber.

    Builds the quotient entirely on the fibration side: monomial spaces come
    from semigroup generation, relation rows from fibered products of the
    derivative images of the potential followed by restriction to the zero
    fiber.  By construction the result must coincide with
    :func:`orbichow.deformed.orbifold_chow`; with ``check=True`` (default)
    the equality is verified and a mismatch raises ``InternalCheckError``.
    """
    pw = as_weights(p, "p")
    ww = as_weights(w, "w") if w is not None else WeightVector.w((1,) * len(pw))
    if len(pw) != len(ww):
        raise ValueError("length mismatch")
    n = pw.n
    cap = Q(degree_cap) if degree_cap is not None else Q(n + 1)
    if cap < n:
        raise ValueError(f"degree cap {cap} is below the orbifold dimension {n}")

    m = pw.lcm
    lkey = m * ww.lcm
    cap_key = int(cap * lkey)
    monos = _bfs_monomials(pw, ww, cap_key)
    f = build_f(pw, ww)
    xi_images = [xi_fibered(theta, f) for theta in dual_kernel_basis(pw)]
    pents = pw.entries

    # the derivative images of the potential, in scaled exponents
    xi_scaled: list[list[tuple[ScaledVec, int]]] = []
    for xf in xi_images:
        terms = []
        for fm, coeff in sorted(xf.terms.items()):
            if fm.t_exp != 0 or coeff.denominator != 1:
                raise InternalCheckError("potential term off the zero fiber")
            terms.append((tuple(int(x * m) for x in fm.z_exp), coeff.numerator))
        xi_scaled.append(terms)

    def rows_for(key: int) -> Iterable[dict[ScaledVec, int]]:
        # fibered product followed by zero-fiber restriction: raw exponents
        # add, the curve exponent of the product is its smallest weight
        # ratio, and only curve exponent zero survives
        prev = monos.get(key - lkey, [])
        out = []
        for mono_scaled in prev:
            for terms in xi_scaled:
                row: dict[ScaledVec, int] = {}
                for step, coeff in terms:
                    raw = tuple(a + b for a, b in zip(mono_scaled, step))
                    j = 0
                    for i in range(1, len(raw)):
                        if raw[i] * pents[j] < raw[j] * pents[i]:
                            j = i
                    q, r = divmod(raw[j], pents[j])
                    if q == 0 and r == 0:
                        row[raw] = row.get(raw, 0) + coeff
                row = {k: v for k, v in row.items() if v}
                if row:
                    out.append(row)
        return out

    quotient = assemble_quotient(pw, ww, cap, monos, rows_for)
    if check:
        reference = orbifold_chow(pw, ww, cap)
        if quotient != reference:
            raise InternalCheckError(
                "fibration-side Jacobian algebra disagrees with the deformed-ring quotient"
            )
    return quotient
