"""Generators and membership for the exponent semigroups S and T.

``S`` is the semigroup of all boundary representatives (sums of alpha-images)
inside the nonnegative orthant, ``T`` the semigroup of all values gamma takes
on S.  Both have small explicit generating sets:

  * S is generated by the unit vectors together with, for each index i, the
    fractional vectors (1/p_i) * (k*p_0 mod p_i, ..., k*p_n mod p_i) for
    k = 1 .. p_i - 1;
  * T is generated by the numbers 1/lcm(p_i, p_j) over index pairs i < j.

``verify_lemma31`` sweeps both statements exhaustively over a box and reports
witnesses or counterexamples.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from math import ceil, gcd, lcm
from typing import Optional, Sequence

from .lattice import (
    Q,
    Vec,
    WeightVector,
    alpha,
    as_vec,
    as_weights,
    gamma,
    in_alpha_image,
)


@dataclass(frozen=True)
class SGeneratorSet:
    """Generating set of S: unit vectors plus per-index fractional generators.

    ``fractional[i]`` lists, in order of the multiplier k = 1 .. p_i - 1, the
    vectors (1/p_i) * (k*p_j mod p_i)_j.  Entry i of every member of
    ``fractional[i]`` is zero, and distinct k give distinct vectors because
    the weights are globally coprime.
    """

    weights: WeightVector
    unit_vectors: tuple[Vec, ...]
    fractional: tuple[tuple[Vec, ...], ...]

    def fractional_dedup(self) -> list[tuple[Vec, int, int]]:
        """Distinct fractional generators with their first (i, k) origin."""
        seen: dict[Vec, tuple[int, int]] = {}
        for i, gens in enumerate(self.fractional):
            for k, g in enumerate(gens, start=1):
                if g not in seen:
                    seen[g] = (i, k)
        return [(g, i, k) for g, (i, k) in sorted(seen.items(), key=lambda t: (t[1], t[0]))]

    def all_generators(self) -> list[Vec]:
        """Unit vectors followed by the distinct fractional generators."""
        return list(self.unit_vectors) + [g for g, _, _ in self.fractional_dedup()]

    def pruned_fractional(self) -> list[tuple[Vec, int, int]]:
        """Fractional generators not decomposable over the remaining ones.

        Redundant generators (for example the double of a smaller generator
        with the same support) are removed; used when naming generators for
        presentation output.
        """
        gens = self.fractional_dedup()
        kept = list(gens)
        changed = True
        while changed:
            changed = False
            for entry in list(kept):
                others = [g for g, _, _ in kept if g != entry[0]]
                others += list(self.unit_vectors)
                if decompose_in_semigroup(entry[0], others) is not None:
                    kept.remove(entry)
                    changed = True
        return kept


@dataclass(frozen=True)
class TGeneratorSet:
    """Generators 1/lcm(p_i, p_j) of T, plus ell = 1/lcm(all weights)."""

    weights: WeightVector
    generators: tuple[Fraction, ...]
    ell: Fraction

    def __post_init__(self) -> None:
        for g in self.generators:
            if (g / self.ell).denominator != 1:
                raise ValueError(f"generator {g} is not a multiple of ell = {self.ell}")


def s_generators(p: "WeightVector | Sequence[int]") -> SGeneratorSet:
    pw = as_weights(p)
    units = tuple(
        tuple(Q(1) if j == i else Q(0) for j in range(len(pw)))
        for i in range(len(pw))
    )
    fractional = []
    for i, pi in enumerate(pw.entries):
        gens_i = []
        for k in range(1, pi):
            gens_i.append(tuple(Q((k * pj) % pi, pi) for pj in pw.entries))
        fractional.append(tuple(gens_i))
    return SGeneratorSet(pw, units, tuple(fractional))


def t_generators(p: "WeightVector | Sequence[int]") -> TGeneratorSet:
    pw = as_weights(p)
    if pw.n < 1:
        raise ValueError("t_generators needs at least two weights")
    vals = sorted(
        {Q(1, lcm(pw[i], pw[j])) for i in range(len(pw)) for j in range(i + 1, len(pw))},
        reverse=True,
    )
    return TGeneratorSet(pw, tuple(vals), Q(1, pw.lcm))


def t_membership(q: Fraction, p: "WeightVector | Sequence[int]", bound: int) -> bool:
    """Whether q is a sum of at most ``bound`` T-generators (with repeats)."""
    q = Q(q)
    if q < 0:
        raise ValueError("t_membership expects q >= 0")
    if q == 0:
        return True
    gens = t_generators(p).generators

    def search(remaining: Fraction, idx: int, budget: int) -> bool:
        if remaining == 0:
            return True
        if idx == len(gens) or budget == 0:
            return False
        g = gens[idx]
        top = min(budget, int(remaining / g))
        for c in range(top, -1, -1):
            if search(remaining - c * g, idx + 1, budget - c):
                return True
        return False

    return search(q, 0, bound)


def decompose_over_t(q: Fraction, p: "WeightVector | Sequence[int]") -> Optional[list[int]]:
    """Complete decomposition of q over the T-generators, or None.

    Complete because every coefficient is bounded by q / min(generators).
    """
    q = Q(q)
    gens = t_generators(p).generators
    coeffs = [0] * len(gens)

    def search(remaining: Fraction, idx: int) -> bool:
        if remaining == 0:
            return True
        if idx == len(gens):
            return False
        g = gens[idx]
        for c in range(int(remaining / g), -1, -1):
            coeffs[idx] = c
            if search(remaining - c * g, idx + 1):
                return True
        coeffs[idx] = 0
        return False

    if q < 0:
        return None
    return coeffs if search(q, 0) else None


def decompose_in_semigroup(target: Sequence, gens: Sequence[Vec]) -> Optional[list[int]]:
    """Nonnegative integer combination of ``gens`` equal to ``target``, or None.

    Exhaustive: each generator is nonzero and nonnegative, so its coefficient
    is bounded componentwise by the remaining vector.
    """
    tv = as_vec(target)
    if any(x < 0 for x in tv):
        return None
    gen_list = [as_vec(g) for g in gens]
    coeffs = [0] * len(gen_list)

    def max_mult(remaining: Vec, g: Vec) -> int:
        best: Optional[int] = None
        for r, x in zip(remaining, g):
            if x > 0:
                c = int(r / x)
                best = c if best is None else min(best, c)
        return 0 if best is None else best

    def search(remaining: Vec, idx: int) -> bool:
        if all(x == 0 for x in remaining):
            return True
        if idx == len(gen_list):
            return False
        g = gen_list[idx]
        for c in range(max_mult(remaining, g), -1, -1):
            coeffs[idx] = c
            nxt = tuple(r - c * x for r, x in zip(remaining, g))
            if search(nxt, idx + 1):
                return True
        coeffs[idx] = 0
        return False

    return coeffs if search(tv, 0) else None


def decompose_alpha_witness(
    a: Sequence[int], p: "WeightVector | Sequence[int]"
) -> Optional[dict]:
    """Constructive decomposition of alpha(a) over the S-generators.

    With j a minimizing index of a_i/p_i and k = u*p_j - a_j the distance to
    the next multiple of p_j, alpha(a) splits as the fractional generator of
    index j and multiplier k plus a nonnegative integer vector.  Returns the
    witness {"fractional": (j, k) or None, "units": [...]} after verifying it
    exactly, or None if the verification fails.
    """
    pw = as_weights(p)
    av = tuple(int(x) for x in a)
    b = alpha(av, pw)
    j = min(range(len(pw)), key=lambda i: (Q(av[i], pw[i]), i))
    u = -((-av[j]) // pw[j])  # ceil(a_j / p_j)
    k = u * pw[j] - av[j]
    if k == 0:
        frac = None
        rest = b
    else:
        frac_vec = tuple(Q((k * pi) % pw[j], pw[j]) for pi in pw.entries)
        frac = (j, k)
        rest = tuple(x - y for x, y in zip(b, frac_vec))
    units = []
    for x in rest:
        if x < 0 or x.denominator != 1:
            return None
        units.append(x.numerator)
    return {"fractional": frac, "units": units}


def realize_gamma(p: "WeightVector | Sequence[int]", i: int, j: int) -> Vec:
    """An S-element b with gamma(b) exactly 1/lcm(p_i, p_j).

    When p_i divides p_j an integer vector with b_j = 1 suffices.  Otherwise
    a fractional generator of index i with multiplier l chosen so that
    l*p_j = gcd(p_i, p_j) mod p_i pins coordinate j to the target ratio, and
    the other coordinates are padded with large enough integers.
    """
    pw = as_weights(p)
    if i == j:
        raise ValueError("indices must differ")
    pi, pj = pw[i], pw[j]
    m = lcm(pi, pj)
    if pi % pj == 0 and pj % pi != 0:
        i, j = j, i
        pi, pj = pj, pi
    if pj % pi == 0:
        # target 1/p_j is hit by an integer vector: b_j = 1, pad the rest
        b = [Q(ceil(Q(pk, m))) for pk in pw.entries]
        b[j] = Q(1)
        out = tuple(b)
        if gamma(out, pw) != Q(1, m):
            raise ValueError(f"construction failed for p={pw.entries}, i={i}, j={j}")
        return out
    g = gcd(pi, pj)
    ell = next(l for l in range(1, pi + 1) if (l * pj) % pi == g)
    b = []
    for idx, pk in enumerate(pw.entries):
        fr = Q((ell * pk) % pi, pi)
        if idx == j:
            b.append(fr)
        else:
            pad = max(0, ceil(Q(pk, m) - fr))
            b.append(fr + pad)
    out = tuple(b)
    if gamma(out, pw) != Q(1, m):
        raise ValueError(f"construction failed for p={pw.entries}, i={i}, j={j}")
    return out


@dataclass
class Lemma31Report:
    """Outcome of the exhaustive generator sweep for S and T."""

    p: WeightVector
    box: int
    ok: bool
    counterexamples: list[dict] = field(default_factory=list)
    checked_alpha: int = 0
    checked_sums: int = 0

    def to_json(self) -> dict:
        return {
            "schema": "lemma31_report@1",
            "lemma": "semigroup_generation",
            "p": list(self.p.entries),
            "box": self.box,
            "pass": self.ok,
            "checked_alpha": self.checked_alpha,
            "checked_sums": self.checked_sums,
            "counterexamples": self.counterexamples,
        }


def verify_lemma31(p: "WeightVector | Sequence[int]", box: int) -> Lemma31Report:
    """Exhaustively check the S and T generator statements over a box.

    Part (a): for every integer vector a with |a_i| <= box, alpha(a) is a
    nonnegative integer combination of the S-generators (constructive witness,
    verified exactly).  Part (b): gamma of every sum of at most ``box``
    S-generators decomposes over the T-generators, and each 1/lcm(p_i, p_j)
    is realized as gamma of an explicit S-element.
    """
    pw = as_weights(p)
    if box < 1:
        raise ValueError("box must be >= 1")
    report = Lemma31Report(p=pw, box=box, ok=True)
    sg = s_generators(pw)

    seen: set[Vec] = set()
    for a in itertools.product(range(-box, box + 1), repeat=len(pw)):
        b = alpha(a, pw)
        if b in seen:
            continue
        seen.add(b)
        witness = decompose_alpha_witness(a, pw)
        if witness is None or not _witness_matches(witness, b, sg):
            report.counterexamples.append({"part": "a", "a": list(a)})
        report.checked_alpha += 1

    gens = sg.all_generators()
    for size in range(1, box + 1):
        for combo in itertools.combinations_with_replacement(gens, size):
            total = tuple(sum(col, Q(0)) for col in zip(*combo))
            g = gamma(total, pw)
            if pw.n >= 1:
                if decompose_over_t(g, pw) is None:
                    report.counterexamples.append(
                        {"part": "b", "sum": [str(x) for x in total], "gamma": str(g)}
                    )
            elif g != int(g):
                report.counterexamples.append({"part": "b", "gamma": str(g)})
            report.checked_sums += 1

    if pw.n >= 1:
        for i in range(len(pw)):
            for j in range(i + 1, len(pw)):
                try:
                    b = realize_gamma(pw, i, j)
                except ValueError:
                    report.counterexamples.append({"part": "b-witness", "pair": [i, j]})
                    continue
                if decompose_in_semigroup(b, gens) is None:
                    report.counterexamples.append(
                        {"part": "b-witness", "pair": [i, j], "b": [str(x) for x in b]}
                    )

    report.ok = not report.counterexamples
    return report


def _witness_matches(witness: dict, b: Vec, sg: SGeneratorSet) -> bool:
    total = [Q(0)] * len(sg.weights)
    if witness["fractional"] is not None:
        j, k = witness["fractional"]
        if not 1 <= k < sg.weights[j]:
            return False
        fv = sg.fractional[j][k - 1]
        total = [x + y for x, y in zip(total, fv)]
    for i, c in enumerate(witness["units"]):
        total[i] += c
    return tuple(total) == b
