"""Weight-rescaling isomorphisms between mirror fibrations.

Scaling the first n weights by a factor ``a`` coprime to the last weight
produces an isomorphic stack with the last multiplicity scaled instead:
the curve coordinate maps by t -> t^(1/a) and the last exponent coordinate
by b_n -> b_n / a.  ``chow_invariance`` verifies the resulting equality of
graded Chow data and transports relations and structure constants through
the explicit monomial correspondence.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Optional, Sequence

from .deformed import GradedQuotient, orbifold_chow
from .lattice import Q, Vec, WeightVector, as_vec, as_weights, gamma, in_alpha_image
from .linalg import fraction_rows_rank
from .presentation import affine_embedding
from .semigroup import decompose_over_t


@dataclass(frozen=True)
class RescalePair:
    """Weights p together with a factor a coprime to the last weight."""

    p: WeightVector
    a: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "p", as_weights(self.p))
        if self.a < 1:
            raise ValueError("rescale factor must be positive")
        if gcd(self.a, self.p.entries[-1]) != 1:
            raise ValueError(
                f"factor {self.a} must be coprime to the last weight {self.p.entries[-1]}"
            )

    @property
    def p_prime(self) -> WeightVector:
        scaled = tuple(self.a * x for x in self.p.entries[:-1]) + (self.p.entries[-1],)
        return WeightVector.p(scaled)

    def w_prime(self, w: "WeightVector | Sequence[int]") -> WeightVector:
        ww = as_weights(w, "w")
        if len(ww) != len(self.p):
            raise ValueError("length mismatch")
        return WeightVector.w(ww.entries[:-1] + (self.a * ww.entries[-1],))


def remainder_identity(
    p: "WeightVector | Sequence[int]", a: int, i: int, j: int, k: int
) -> bool:
    """(1/p_i) (k p_j mod p_i) equals (1/(a p_i)) (k a p_j mod a p_i).

    Pure division arithmetic; holds for all inputs and is used as an oracle.
    """
    pw = as_weights(p)
    if not (0 <= i < len(pw) and 0 <= j < len(pw)):
        raise ValueError("index out of range")
    if k < 0 or a < 1:
        raise ValueError("need k >= 0 and a >= 1")
    lhs = Q((k * pw[j]) % pw[i], pw[i])
    rhs = Q((k * a * pw[j]) % (a * pw[i]), a * pw[i])
    return lhs == rhs


def h_star(gamma0, pair: RescalePair) -> Fraction:
    """Curve-side map gamma -> gamma / a; the image is checked to lie in T(p')."""
    g = Q(gamma0) / pair.a
    if g != 0 and decompose_over_t(g, pair.p_prime) is None:
        raise ValueError(f"{gamma0}/{pair.a} is not in the curve semigroup of {pair.p_prime.entries}")
    return g


def phi_star_scale(b: Sequence, pair: RescalePair) -> Vec:
    """Exponent-side map dividing the last coordinate by a; image validity checked."""
    bv = as_vec(b)
    out = bv[:-1] + (bv[-1] / pair.a,)
    if not in_alpha_image(out, pair.p_prime):
        raise ValueError(f"{bv} does not map into the boundary representatives of {pair.p_prime.entries}")
    return out


@dataclass
class RescaleReport:
    """Comparison of the two graded quotients related by a rescaling."""

    p: WeightVector
    w: WeightVector
    a: int
    ok: bool
    dims_left: dict[Fraction, int]
    dims_right: dict[Fraction, int]
    witnesses: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "schema": "rescale_report@1",
            "p": list(self.p.entries),
            "w": list(self.w.entries),
            "a": self.a,
            "pass": self.ok,
            "degree_dims_left": [
                [f"{d.numerator}/{d.denominator}", k] for d, k in sorted(self.dims_left.items())
            ],
            "degree_dims_right": [
                [f"{d.numerator}/{d.denominator}", k] for d, k in sorted(self.dims_right.items())
            ],
            "witnesses": self.witnesses,
        }


def chow_invariance(
    w: "WeightVector | Sequence[int]",
    p: "WeightVector | Sequence[int]",
    a: int,
    degree_cap=None,
    embed_bound: int = 3,
) -> RescaleReport:
    """Verify that rescaling weights does not change the graded Chow data.

    Left side: weights (a p_0, ..., a p_(n-1), p_n) with multiplicities w.
    Right side: weights p with multiplicities (w_0, ..., a w_n).  Checks,
    in order: identical degree lists and dimensions; transport of a bounded
    relation set through the monomial correspondence; bijectivity of the
    induced map on every graded piece; and agreement of all structure
    constants under the correspondence.
    """
    pw = as_weights(p, "p")
    ww = as_weights(w, "w")
    pair = RescalePair(pw, a)
    left = orbifold_chow(pair.p_prime, ww, degree_cap)
    right = orbifold_chow(pw, pair.w_prime(ww), degree_cap)

    witnesses: dict = {}
    ok = True

    if left.degrees != right.degrees or left.dims != right.dims:
        ok = False
    if left.total_dim != right.total_dim:
        ok = False
    witnesses["total_dim"] = [left.total_dim, right.total_dim]

    def scale_vec(b: Vec) -> Vec:
        return b[:-1] + (b[-1] / pair.a,)

    # relation transport: renormalizing after the map agrees with mapping the
    # normal forms, exercised on an embedded relation set of the right side
    transported = 0
    if pw.n >= 1:
        emb = affine_embedding(pw, embed_bound)
        for rel in emb.relations:
            sides = []
            for m in (rel.lhs, rel.rhs):
                t_raw = Q(0)
                z_raw = [Q(0)] * len(pw)
                for name, exp in m:
                    g = emb.generators[name]
                    t_raw += exp * g.t_exp
                    z_raw = [x + exp * y for x, y in zip(z_raw, g.z_exp)]
                g0 = gamma(z_raw, pw)
                z_rep = tuple(x - g0 * pi for x, pi in zip(z_raw, pw.entries))
                mapped_t = (t_raw + g0) / pair.a
                mapped = scale_vec(z_rep)
                # renormalize on the scaled side: must already be normal
                g1 = gamma(mapped, pair.p_prime)
                sides.append((mapped_t + g1, tuple(x - g1 * pi for x, pi in zip(mapped, pair.p_prime.entries))))
            if sides[0] != sides[1]:
                ok = False
                witnesses.setdefault("failed_relations", []).append(
                    [dict(rel.lhs), dict(rel.rhs)]
                )
            transported += 1
    witnesses["relations_transported"] = transported

    # graded bijectivity and structure-constant transport through
    # Phi(m) = reduce_left(scale(m)), in flat basis coordinates
    left_index = left.basis_index()
    right_flat = right.basis_flat()
    phi_images: list[dict[int, Fraction]] = []
    for m in right_flat:
        image = left.reduce_element({scale_vec(m): Q(1)})
        phi_images.append({left_index[b]: c for b, c in image.items()})

    def flat_degrees(quot: GradedQuotient) -> list[Fraction]:
        return [d for d in quot.degrees for _ in quot.basis[d]]

    left_deg = flat_degrees(left)
    right_deg = flat_degrees(right)
    bijective = True
    for deg in sorted(set(right_deg)):
        r_idx = [i for i, d in enumerate(right_deg) if d == deg]
        l_idx = [i for i, d in enumerate(left_deg) if d == deg]
        pos = {li: col for col, li in enumerate(l_idx)}
        rows = []
        for i in r_idx:
            row = [Q(0)] * len(l_idx)
            for li, c in phi_images[i].items():
                row[pos[li]] = c
            rows.append(row)
        if fraction_rows_rank(rows) != len(r_idx):
            bijective = False
    witnesses["phi_graded_bijective"] = bijective
    ok = ok and bijective

    sc_ok = True
    for (i, j), expansion in right.structure_constants.items():
        lhs = left.multiply_classes(phi_images[i], phi_images[j])
        rhs: dict[int, Fraction] = {}
        for k, c in expansion.items():
            for li, lc in phi_images[k].items():
                v = rhs.get(li, Q(0)) + c * lc
                if v:
                    rhs[li] = v
                else:
                    rhs.pop(li, None)
        if lhs != rhs:
            sc_ok = False
    witnesses["structure_constants_match"] = sc_ok
    ok = ok and sc_ok

    return RescaleReport(
        p=pw, w=ww, a=a, ok=ok, dims_left=left.dims, dims_right=right.dims, witnesses=witnesses
    )
