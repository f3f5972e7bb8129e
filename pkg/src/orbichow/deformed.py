"""The deformed group ring, its derivations, and the graded Chow quotient.

Monomials are boundary representatives (see :mod:`orbichow.lattice`); the
product of two monomials is their sum when the supports miss a common
coordinate and zero otherwise.  Every integer functional ``theta`` vanishing
on the weights acts as a derivation ``y^c -> theta(c) y^c``, and the orbifold
Chow ring of the root stack with multiplicities ``w`` over the weighted
projective space with weights ``p`` is the quotient of this ring by the ideal
generated by the derivative images of ``sum_i y^(w_i e_i)``.

The quotient is computed degree by degree in the grading
``nu(b) = sum_i b_i / w_i`` by exact sparse row reduction; the result records
per-degree monomial bases, rewriting data for the eliminated monomials, and
the multiplication table of the surviving basis.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Mapping, Optional, Sequence

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
    same_cone,
    theta_value,
)
from .linalg import IntRowReducer

ScaledVec = tuple[int, ...]


class DeformedElement:
    """Finite rational combination of boundary-representative monomials."""

    __slots__ = ("p", "terms")

    def __init__(self, p: "WeightVector | Sequence[int]", terms: Mapping[Vec, Fraction]):
        pw = as_weights(p)
        clean: dict[Vec, Fraction] = {}
        for c, coeff in terms.items():
            coeff = Q(coeff)
            if coeff == 0:
                continue
            cv = as_vec(c)
            if len(cv) != len(pw):
                raise ValueError("exponent length does not match the weights")
            clean[cv] = coeff
        self.p = pw
        self.terms = clean

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, DeformedElement)
            and self.p == other.p
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.p, tuple(sorted(self.terms.items()))))

    def __add__(self, other: "DeformedElement") -> "DeformedElement":
        if self.p != other.p:
            raise ValueError("weight mismatch")
        out = dict(self.terms)
        for c, coeff in other.terms.items():
            out[c] = out.get(c, Q(0)) + coeff
        return DeformedElement(self.p, out)

    def __sub__(self, other: "DeformedElement") -> "DeformedElement":
        return self + (-1) * other

    def __rmul__(self, scalar) -> "DeformedElement":
        s = Q(scalar)
        return DeformedElement(self.p, {c: s * v for c, v in self.terms.items()})

    def __mul__(self, other: "DeformedElement") -> "DeformedElement":
        return multiply(self, other)

    def __repr__(self) -> str:
        if not self.terms:
            return "DeformedElement(0)"
        parts = [f"{coeff}*y^{tuple(str(x) for x in c)}" for c, coeff in sorted(self.terms.items())]
        return "DeformedElement(" + " + ".join(parts) + ")"


def monomial_element(
    p: "WeightVector | Sequence[int]", c: Sequence, coeff=Q(1), validate: bool = True
) -> DeformedElement:
    """Single monomial y^c; validates that c is a boundary representative."""
    pw = as_weights(p)
    cv = as_vec(c)
    if validate and not in_alpha_image(cv, pw):
        raise ValueError(f"{cv} is not a boundary representative for {pw.entries}")
    return DeformedElement(pw, {cv: Q(coeff)})


def multiply(x: DeformedElement, y: DeformedElement) -> DeformedElement:
    """Deformed product: y^c1 * y^c2 = y^(c1+c2) on a shared cone, else 0."""
    if x.p != y.p:
        raise ValueError("weight mismatch")
    out: dict[Vec, Fraction] = {}
    for c1, a1 in x.terms.items():
        for c2, a2 in y.terms.items():
            if same_cone(c1, c2):
                # the sum keeps the common zero coordinate, so it is already
                # its own boundary representative
                key = tuple(u + v for u, v in zip(c1, c2))
                out[key] = out.get(key, Q(0)) + a1 * a2
    return DeformedElement(x.p, out)


def xi_derivation(theta: Sequence[int], x: DeformedElement) -> DeformedElement:
    """Derivation scaling each monomial y^c by theta(c).

    Well defined on classes because theta annihilates the weight vector; the
    value on a representative equals the value on any integer lift.
    """
    if theta_value(theta, x.p.entries) != 0:
        raise ValueError(f"functional {tuple(theta)} does not annihilate {x.p.entries}")
    return DeformedElement(
        x.p, {c: theta_value(theta, c) * v for c, v in x.terms.items()}
    )


def degree_nu(c: Sequence, w: "WeightVector | Sequence[int]") -> Fraction:
    """Grading sum_i c_i / w_i under which the quotient relations are linear."""
    ww = as_weights(w, "w")
    if len(c) != len(ww):
        raise ValueError("length mismatch")
    return sum((Q(ci) / wi for ci, wi in zip(c, ww.entries)), Q(0))


def jacobian_generators(
    p: "WeightVector | Sequence[int]", w: "WeightVector | Sequence[int]"
) -> list[DeformedElement]:
    """Derivative images of sum_i y^(w_i e_i), one per dual basis functional.

    Each generator is sum_i w_i theta_i y^(w_i e_i) and is homogeneous of
    degree 1 in the nu-grading.
    """
    pw = as_weights(p, "p")
    ww = as_weights(w, "w")
    if len(pw) != len(ww):
        raise ValueError("length mismatch")
    gens = []
    for theta in dual_kernel_basis(pw):
        terms: dict[Vec, Fraction] = {}
        for i in range(len(pw)):
            coeff = Q(ww[i] * theta[i])
            if coeff:
                mono = tuple(Q(ww[i]) if j == i else Q(0) for j in range(len(pw)))
                terms[mono] = terms.get(mono, Q(0)) + coeff
        gens.append(DeformedElement(pw, terms))
    return gens


# ---------------------------------------------------------------------------
# scaled-integer engine
#
# Internally monomials are tuples of integers c_i = b_i * lcm(p); degrees are
# integers key = nu * lcm(p) * lcm(w).  All arithmetic below is on plain ints.
# ---------------------------------------------------------------------------


def _alpha_scaled(c: ScaledVec, pents: tuple[int, ...]) -> ScaledVec:
    j = 0
    for i in range(1, len(c)):
        if c[i] * pents[j] < c[j] * pents[i]:
            j = i
    q, r = divmod(c[j], pents[j])
    if r:
        raise InternalCheckError(f"scaled vector {c} has non-lattice minimum ratio")
    if q == 0:
        return c
    return tuple(ci - q * pi for ci, pi in zip(c, pents))


def _enumerate_scaled(
    pw: WeightVector, ww: WeightVector, cap_key: int
) -> dict[int, list[ScaledVec]]:
    """All boundary representatives with nu * lcm(p) * lcm(w) <= cap_key.

    Classes are enumerated sector by sector: the residue x of the line
    parameter determines the fractional parts (-x * p_i mod lcm(p)) of every
    coordinate at once, and what remains is a finite integer box cut out by
    the degree bound.  A representative is kept when some coordinate with
    zero fractional part has zero integer part, which is exactly the boundary
    condition gamma = 0.
    """
    n1 = len(pw)
    m = pw.lcm
    wbig = ww.lcm
    wf = tuple(wbig // wi for wi in ww.entries)
    buckets: dict[int, list[ScaledVec]] = {}
    for x in range(m):
        f = tuple((-x * pi) % m for pi in pw.entries)
        base_key = sum(fi * wfi for fi, wfi in zip(f, wf))
        if base_key > cap_key or all(f):
            continue
        steps = tuple(m * wfi for wfi in wf)
        stack: list[int] = []

        def rec(i: int, key: int) -> None:
            if i == n1:
                if any(f[j] == 0 and stack[j] == 0 for j in range(n1)):
                    c = tuple(f[j] + m * stack[j] for j in range(n1))
                    buckets.setdefault(key, []).append(c)
                return
            top = (cap_key - key) // steps[i]
            for mi in range(top + 1):
                stack.append(mi)
                rec(i + 1, key + mi * steps[i])
                stack.pop()

        rec(0, base_key)
    for key in buckets:
        buckets[key].sort()
    return buckets


def _scaled_degree_key(c: ScaledVec, ww: WeightVector) -> int:
    wbig = ww.lcm
    return sum(ci * (wbig // wi) for ci, wi in zip(c, ww.entries))


@dataclass(eq=True)
class GradedQuotient:
    """Graded data of the Chow quotient: bases, rewriting rules, products.

    ``degrees`` lists every degree (up to the cap) whose ambient monomial
    space is nonempty; ``dims`` and ``basis`` are indexed by those degrees.
    ``reducers`` expands each eliminated monomial over the surviving basis of
    its degree.  ``structure_constants`` maps canonically ordered pairs
    (i, j) of flat basis indices (the concatenation of the per-degree bases)
    to the expansion of the product over flat indices; an empty dict is the
    zero product.  Dimensions vanish for every computed degree above the
    orbifold dimension; degrees beyond the cap are zero by the vanishing of
    the Chow ring above the dimension.
    """

    p: WeightVector
    w: WeightVector
    degree_cap: Fraction
    degrees: list[Fraction]
    dims: dict[Fraction, int]
    basis: dict[Fraction, list[Vec]]
    reducers: dict[Fraction, dict[Vec, dict[Vec, Fraction]]]
    structure_constants: dict[tuple[int, int], dict[int, Fraction]]
    total_dim: int

    def nonzero_dims(self) -> dict[Fraction, int]:
        return {d: k for d, k in self.dims.items() if k}

    def basis_flat(self) -> list[Vec]:
        return [b for d in self.degrees for b in self.basis[d]]

    def basis_index(self) -> dict[Vec, int]:
        return {b: i for i, b in enumerate(self.basis_flat())}

    def degree_of(self, b: Vec) -> Fraction:
        return degree_nu(b, self.w)

    def reduce_monomial(self, b: Vec) -> dict[Vec, Fraction]:
        """Expand an ambient monomial over the surviving basis of its degree."""
        d = self.degree_of(b)
        if d > self.degree_cap:
            if d <= self.p.n:
                raise InternalCheckError(f"degree {d} beyond cap but not in vanishing range")
            return {}
        if b in self.reducers.get(d, {}):
            return dict(self.reducers[d][b])
        if b in self.basis.get(d, ()):
            return {b: Q(1)}
        raise ValueError(f"{b} is not an ambient monomial of computed degree {d}")

    def reduce_element(self, element: Mapping[Vec, Fraction]) -> dict[Vec, Fraction]:
        out: dict[Vec, Fraction] = {}
        for mono, coeff in element.items():
            for b, c in self.reduce_monomial(mono).items():
                v = out.get(b, Q(0)) + coeff * c
                if v:
                    out[b] = v
                else:
                    out.pop(b, None)
        return out

    def sc(self, i: int, j: int) -> dict[int, Fraction]:
        """Structure constants of two flat basis indices (order-insensitive)."""
        return self.structure_constants[(i, j) if i <= j else (j, i)]

    def multiply_basis(self, b1: Vec, b2: Vec) -> dict[Vec, Fraction]:
        """Product of two basis monomials, expanded over basis monomials."""
        index = self.basis_index()
        flat = self.basis_flat()
        return {flat[k]: v for k, v in self.sc(index[b1], index[b2]).items()}

    def multiply_classes(
        self, x: Mapping[int, Fraction], y: Mapping[int, Fraction]
    ) -> dict[int, Fraction]:
        """Product of two elements written in flat basis coordinates."""
        out: dict[int, Fraction] = {}
        for i, a1 in x.items():
            for j, a2 in y.items():
                for k, c in self.sc(i, j).items():
                    v = out.get(k, Q(0)) + a1 * a2 * c
                    if v:
                        out[k] = v
                    else:
                        out.pop(k, None)
        return out


RowsFor = Callable[[int], Iterable[dict[ScaledVec, int]]]


def assemble_quotient(
    pw: WeightVector,
    ww: WeightVector,
    cap: Fraction,
    monos_by_key: dict[int, list[ScaledVec]],
    rows_for: RowsFor,
) -> GradedQuotient:
    """Row-reduce relation slices degree by degree and package the quotient.

    ``monos_by_key`` buckets the ambient monomials by scaled degree;
    ``rows_for`` produces the relation rows of one slice as sparse integer
    vectors keyed by scaled monomials.  Raises when a dimension above the
    orbifold dimension fails to vanish.
    """
    n = pw.n
    m = pw.lcm
    lkey = m * ww.lcm
    cap_key = int(cap * lkey)

    degrees: list[Fraction] = []
    dims: dict[Fraction, int] = {}
    basis: dict[Fraction, list[Vec]] = {}
    reducers: dict[Fraction, dict[Vec, dict[Vec, Fraction]]] = {}
    basis_scaled: dict[int, list[ScaledVec]] = {}
    reducers_scaled: dict[int, dict[ScaledVec, dict[ScaledVec, Fraction]]] = {}

    vec_cache: dict[ScaledVec, Vec] = {}

    def to_vec(c: ScaledVec) -> Vec:
        v = vec_cache.get(c)
        if v is None:
            v = tuple(Q(ci, m) for ci in c)
            vec_cache[c] = v
        return v

    for key in sorted(monos_by_key):
        cols = monos_by_key[key]
        index = {mono: i for i, mono in enumerate(cols)}
        red = IntRowReducer()
        for row in rows_for(key):
            red.add_row({index[mono]: v for mono, v in row.items()})
        pivot_idx = set(red.pivot_rows)
        surv = [mono for i, mono in enumerate(cols) if i not in pivot_idx]
        deg = Q(key, lkey)
        if key > n * lkey and surv:
            raise InternalCheckError(
                f"dimension {len(surv)} at degree {deg} > {n}; expected vanishing"
            )
        degrees.append(deg)
        dims[deg] = len(surv)
        basis[deg] = [to_vec(mono) for mono in surv]
        basis_scaled[key] = surv
        red_map_scaled: dict[ScaledVec, dict[ScaledVec, Fraction]] = {}
        red_map: dict[Vec, dict[Vec, Fraction]] = {}
        for piv in red.pivot_rows:
            expansion = red.reducer(piv)
            red_map_scaled[cols[piv]] = {cols[c]: v for c, v in expansion.items()}
            red_map[to_vec(cols[piv])] = {to_vec(cols[c]): v for c, v in expansion.items()}
        reducers_scaled[key] = red_map_scaled
        reducers[deg] = red_map

    flat = [(key, mono) for key in sorted(basis_scaled) for mono in basis_scaled[key]]
    flat_index = {mono: i for i, (_, mono) in enumerate(flat)}
    structure: dict[tuple[int, int], dict[int, Fraction]] = {}
    pents = pw.entries
    one = Q(1)
    for i1 in range(len(flat)):
        k1, m1 = flat[i1]
        for i2 in range(i1, len(flat)):
            k2, m2 = flat[i2]
            ksum = k1 + k2
            if ksum > cap_key:
                # both factors live in degrees <= n, so the product degree
                # exceeds n and the class vanishes; later pairs only grow
                for i3 in range(i2, len(flat)):
                    structure[(i1, i3)] = {}
                break
            if not any(a == 0 and b == 0 for a, b in zip(m1, m2)):
                structure[(i1, i2)] = {}
                continue
            prod = _alpha_scaled(tuple(a + b for a, b in zip(m1, m2)), pents)
            expansion = reducers_scaled[ksum].get(prod)
            if expansion is None:
                structure[(i1, i2)] = {flat_index[prod]: one}
            else:
                structure[(i1, i2)] = {flat_index[c]: v for c, v in expansion.items()}
    return GradedQuotient(
        p=pw,
        w=ww,
        degree_cap=Q(cap),
        degrees=degrees,
        dims=dims,
        basis=basis,
        reducers=reducers,
        structure_constants=structure,
        total_dim=sum(dims.values()),
    )


def monomials_of_degree(
    p: "WeightVector | Sequence[int]", w: "WeightVector | Sequence[int]", d
) -> list[Vec]:
    """All boundary representatives of exact nu-degree d, sorted lexicographically."""
    pw = as_weights(p, "p")
    ww = as_weights(w, "w")
    if len(pw) != len(ww):
        raise ValueError("length mismatch")
    d = Q(d)
    if d < 0:
        raise ValueError("degree must be nonnegative")
    key = d * pw.lcm * ww.lcm
    if key.denominator != 1:
        return []
    buckets = _enumerate_scaled(pw, ww, key.numerator)
    m = pw.lcm
    return [tuple(Q(ci, m) for ci in c) for c in buckets.get(key.numerator, [])]


def orbifold_chow(
    p: "WeightVector | Sequence[int]",
    w: "WeightVector | Sequence[int] | None" = None,
    degree_cap=None,
) -> GradedQuotient:
    """Chow quotient of the deformed group ring modulo the derivation ideal.

    Relation slices are spanned by monomial multiples of the homogeneous
    degree-1 generators, so degree d is cut out by the rows
    {y^m * g : nu(m) = d - 1, g a generator}.  The default cap n + 1 computes
    one full unit of degree beyond the orbifold dimension and checks that
    every dimension there vanishes.
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
    monos = _enumerate_scaled(pw, ww, cap_key)
    thetas = dual_kernel_basis(pw)
    pents = pw.entries
    gen_terms = [
        [
            (i, tuple(m * ww[i] if j == i else 0 for j in range(len(pw))), ww[i] * theta[i])
            for i in range(len(pw))
            if theta[i]
        ]
        for theta in thetas
    ]

    def rows_for(key: int) -> Iterable[dict[ScaledVec, int]]:
        prev = monos.get(key - lkey, [])
        out = []
        for mono in prev:
            zero_other = [j for j, c in enumerate(mono) if c == 0]
            for terms in gen_terms:
                row: dict[ScaledVec, int] = {}
                for i, step, coeff in terms:
                    if any(j != i for j in zero_other):
                        target = _alpha_scaled(
                            tuple(a + b for a, b in zip(mono, step)), pents
                        )
                        row[target] = row.get(target, 0) + coeff
                row = {k: v for k, v in row.items() if v}
                if row:
                    out.append(row)
        return out

    return assemble_quotient(pw, ww, cap, monos, rows_for)
