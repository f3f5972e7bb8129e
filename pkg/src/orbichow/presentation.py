"""Affine presentations of the fibration and of the Chow quotient.

Generators are named monomials; relations are binomials between formal
monomials in the names (or ``monomial = 0`` after restricting to the zero
fiber).  Relation discovery enumerates all products of generators up to a
degree bound, buckets them by normal form, and connects each bucket with a
minimal number of moves: a relation is only emitted when the bucket is not
already connected by the relations found so far, which is checked by
union-find over single-move rewriting edges.  The emitted set therefore
generates every relation between products of at most ``degree_bound``
generators.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .deformed import jacobian_generators
from .fibration import FiberedMonomial, normalize_monomial
from .lattice import Q, Vec, WeightVector, as_weights
from .linalg import fraction_rows_rank
from .semigroup import decompose_in_semigroup, s_generators, t_generators

# formal monomial in generator names: sorted (name, positive exponent) pairs
Monomial = tuple[tuple[str, int], ...]

ONE: tuple = ()

LETTER_POOL = "uvwabcdefghjklmoqr"


def mono(*pairs: tuple[str, int]) -> tuple:
    """Formal monomial from (name, exponent) pairs."""
    out: dict[str, int] = {}
    for name, exp in pairs:
        if exp < 0:
            raise ValueError("exponents must be nonnegative")
        if exp:
            out[name] = out.get(name, 0) + exp
    return tuple(sorted(out.items()))


def mono_mul(a: tuple, b: tuple) -> tuple:
    out = dict(a)
    for name, exp in b:
        out[name] = out.get(name, 0) + exp
    return tuple(sorted(out.items()))


def mono_total_degree(a: tuple) -> int:
    return sum(exp for _, exp in a)


def mono_contains(a: tuple, b: tuple) -> bool:
    da = dict(a)
    return all(da.get(name, 0) >= exp for name, exp in b)


def mono_replace(a: tuple, sub: tuple, rep: tuple) -> tuple:
    out = dict(a)
    for name, exp in sub:
        out[name] -= exp
        if not out[name]:
            del out[name]
    for name, exp in rep:
        out[name] = out.get(name, 0) + exp
    return tuple(sorted(out.items()))


def _mono_key(a: tuple) -> tuple:
    return (mono_total_degree(a), a)


@dataclass(frozen=True)
class Relation:
    """Binomial lhs = rhs between formal monomials; rhs None means lhs = 0."""

    lhs: tuple
    rhs: Optional[tuple]


@dataclass(eq=True)
class AffinePresentation:
    """Named generators with verified relations, ready for export."""

    kind: str  # "fibration" or "chow"
    p: WeightVector
    w: Optional[WeightVector]
    generator_order: tuple[str, ...]
    generators: dict[str, FiberedMonomial]
    relations: list[Relation]
    extra_relations: list[tuple[tuple[Fraction, tuple], ...]] = field(default_factory=list)

    @property
    def ambient_dim(self) -> int:
        return len(self.generator_order)

    def evaluate(self, m: tuple) -> FiberedMonomial:
        """Normal form of a formal monomial in the generators."""
        t_total = Q(0)
        z_total = [Q(0)] * len(self.p)
        for name, exp in m:
            if name not in self.generators:
                raise ValueError(f"unknown generator {name!r}")
            g = self.generators[name]
            t_total += exp * g.t_exp
            z_total = [a + exp * b for a, b in zip(z_total, g.z_exp)]
        return normalize_monomial(t_total, z_total, self.p, validate=False)

    def binomial_moves(self) -> list[tuple[tuple, tuple]]:
        return [(r.lhs, r.rhs) for r in self.relations if r.rhs is not None]


def verify_relation(pres: AffinePresentation, rel: Relation) -> bool:
    """Whether the two sides have equal normal form (or the side vanishes)."""
    lhs = pres.evaluate(rel.lhs)
    if rel.rhs is None:
        return lhs.t_exp > 0
    return lhs == pres.evaluate(rel.rhs)


def is_chain_weights(p: "WeightVector | Sequence[int]") -> bool:
    pw = as_weights(p)
    return (
        pw.n >= 1
        and pw[0] == 1
        and all(pw[i + 1] % pw[i] == 0 for i in range(pw.n))
    )


def chain_presentation(p: "WeightVector | Sequence[int]") -> AffinePresentation:
    """Presentation for divisible weights 1 = p_0 | p_1 | ... | p_n.

    Generators v_i = z_0^(p_0/p_i) ... z_(i-1)^(p_(i-1)/p_i) satisfy the
    ladder v_1^(d_1) = z_0, v_(i+1)^(d_(i+1)) = v_i z_i with d_i the
    consecutive ratios, and the curve coordinate is s = v_n z_n.
    """
    pw = as_weights(p)
    if not is_chain_weights(pw):
        raise ValueError("weights must start at 1 and each divide the next")
    n = pw.n
    gens: dict[str, FiberedMonomial] = {}
    order: list[str] = []
    for i in range(1, n + 1):
        vi = tuple(Q(pw[j], pw[i]) if j < i else Q(0) for j in range(len(pw)))
        gens[f"v{i}"] = normalize_monomial(0, vi, pw)
        order.append(f"v{i}")
    for i in range(len(pw)):
        ei = tuple(Q(1) if j == i else Q(0) for j in range(len(pw)))
        gens[f"z{i}"] = normalize_monomial(0, ei, pw)
        order.append(f"z{i}")
    gens["s"] = FiberedMonomial(Q(1, pw[n]), tuple(Q(0) for _ in range(len(pw))))
    order.append("s")

    relations = [Relation(mono(("v1", pw[1] // pw[0])), mono(("z0", 1)))]
    for i in range(1, n):
        d = pw[i + 1] // pw[i]
        relations.append(
            Relation(mono((f"v{i + 1}", d)), mono((f"v{i}", 1), (f"z{i}", 1)))
        )
    relations.append(Relation(mono((f"v{n}", 1), (f"z{n}", 1)), mono(("s", 1))))

    pres = AffinePresentation(
        kind="fibration",
        p=pw,
        w=None,
        generator_order=tuple(order),
        generators=gens,
        relations=relations,
    )
    for rel in relations:
        if not verify_relation(pres, rel):
            raise ValueError(f"chain relation failed to verify: {rel}")
    return pres


def _named_generators(pw: WeightVector) -> tuple[tuple[str, ...], dict[str, FiberedMonomial]]:
    """Deterministic generator naming: units, fractional by denominator, curve.

    Unit vectors are z0..zn.  Pruned fractional generators are grouped by the
    weight they divide, groups get letters in ascending weight order, and
    members are numbered by their multiplier.  Curve generators are named s
    (single) or s1..sk in ascending denominator order.
    """
    n1 = len(pw)
    gens: dict[str, FiberedMonomial] = {}
    order: list[str] = []
    for i in range(n1):
        ei = tuple(Q(1) if j == i else Q(0) for j in range(n1))
        gens[f"z{i}"] = FiberedMonomial(Q(0), ei)
        order.append(f"z{i}")

    pruned = s_generators(pw).pruned_fractional()
    groups: dict[int, list[tuple[Vec, int, int]]] = {}
    for vec, i, k in pruned:
        groups.setdefault(pw[i], []).append((vec, i, k))
    for letter_idx, key in enumerate(sorted(groups)):
        if letter_idx >= len(LETTER_POOL):
            raise ValueError("too many fractional generator groups to name")
        letter = LETTER_POOL[letter_idx]
        members = sorted(groups[key], key=lambda t: (t[2], t[1]))
        for num, (vec, _, _) in enumerate(members, start=1):
            name = f"{letter}{num}"
            gens[name] = FiberedMonomial(Q(0), vec)
            order.append(name)

    tg = t_generators(pw)
    zero = tuple(Q(0) for _ in range(n1))
    if len(tg.generators) == 1:
        gens["s"] = FiberedMonomial(tg.generators[0], zero)
        order.append("s")
    else:
        for idx, val in enumerate(sorted(tg.generators, reverse=True), start=1):
            gens[f"s{idx}"] = FiberedMonomial(val, zero)
            order.append(f"s{idx}")
    return tuple(order), gens


class _UnionFind:
    def __init__(self, items: Iterable):
        self.parent = {x: x for x in items}

    def find(self, x):
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a, b) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[max(ra, rb, key=_mono_key)] = min(ra, rb, key=_mono_key)


def affine_embedding(
    p: "WeightVector | Sequence[int]", degree_bound: int = 4
) -> AffinePresentation:
    """Embed the fibration by naming generators and discovering relations.

    Products of up to ``degree_bound`` generators are bucketed by normal
    form; each bucket is connected with union-find over the moves emitted so
    far, and one new binomial per missing connection is added.  The result
    generates all relations among products of at most ``degree_bound``
    generators, with no claim of minimality beyond the connectivity pruning.
    """
    pw = as_weights(p)
    if pw.n < 1:
        raise ValueError("need at least two weights to embed the fibration")
    if degree_bound < 2:
        raise ValueError("degree_bound must be at least 2")
    order, gens = _named_generators(pw)
    pres = AffinePresentation(
        kind="fibration",
        p=pw,
        w=None,
        generator_order=order,
        generators=gens,
        relations=[],
    )

    fibers: dict[FiberedMonomial, list[tuple]] = {}
    for size in range(1, degree_bound + 1):
        for combo in itertools.combinations_with_replacement(order, size):
            m = mono(*((name, 1) for name in combo))
            fibers.setdefault(pres.evaluate(m), []).append(m)

    moves: list[tuple[tuple, tuple]] = []
    relations: list[Relation] = []
    for nf in sorted(fibers, key=lambda fm: (fm.t_exp, fm.z_exp)):
        members = sorted(set(fibers[nf]), key=_mono_key)
        if len(members) < 2:
            continue
        member_set = set(members)
        uf = _UnionFind(members)
        for m in members:
            for a, b in moves:
                for src, dst in ((a, b), (b, a)):
                    if mono_contains(m, src):
                        img = mono_replace(m, src, dst)
                        if img in member_set:
                            uf.union(m, img)
        components: dict[tuple, list[tuple]] = {}
        for m in members:
            components.setdefault(uf.find(m), []).append(m)
        reps = sorted((min(ms, key=_mono_key) for ms in components.values()), key=_mono_key)
        canonical = reps[0]
        for rep in reps[1:]:
            # connection may exist through products slightly above the bound;
            # only emit when bounded rewriting cannot reach the canonical form
            if rewrites_to(
                moves, rep, canonical, max_nodes=4000, max_degree=degree_bound + 2
            ):
                continue
            relations.append(Relation(rep, canonical))
            moves.append((rep, canonical))
    pres.relations = relations
    return pres


def rewrites_to(
    moves: Sequence[tuple[tuple, tuple]],
    start: tuple,
    target: tuple,
    max_nodes: int = 20000,
    max_degree: Optional[int] = None,
) -> bool:
    """Breadth-first bounded rewriting: can ``start`` reach ``target``?"""
    if start == target:
        return True
    seen = {start}
    frontier = [start]
    while frontier and len(seen) < max_nodes:
        nxt: list[tuple] = []
        for m in frontier:
            for a, b in moves:
                for src, dst in ((a, b), (b, a)):
                    if mono_contains(m, src):
                        img = mono_replace(m, src, dst)
                        if img == target:
                            return True
                        if max_degree is not None and mono_total_degree(img) > max_degree:
                            continue
                        if img not in seen:
                            seen.add(img)
                            nxt.append(img)
        frontier = nxt
    return False


def relation_implied(
    moves: Sequence[tuple[tuple, tuple]],
    rel: Relation,
    max_nodes: int = 20000,
    max_degree: Optional[int] = None,
) -> bool:
    if rel.rhs is None:
        raise ValueError("implication check only handles binomial relations")
    return rewrites_to(moves, rel.lhs, rel.rhs, max_nodes, max_degree)


def decompose_named(pres: AffinePresentation, target: FiberedMonomial) -> Optional[tuple]:
    """Express a normal-form monomial as a formal monomial in the generators."""
    t_names = [
        name
        for name in pres.generator_order
        if pres.generators[name].t_exp > 0
    ]
    z_names = [
        name
        for name in pres.generator_order
        if pres.generators[name].t_exp == 0
    ]
    z_coeffs = decompose_in_semigroup(
        target.z_exp, [pres.generators[name].z_exp for name in z_names]
    )
    if z_coeffs is None:
        return None
    remaining = target.t_exp
    t_exps: dict[str, int] = {}
    # complete search over curve generators, largest first
    t_vals = [(name, pres.generators[name].t_exp) for name in t_names]
    t_vals.sort(key=lambda t: t[1], reverse=True)

    def search(rem: Fraction, idx: int) -> bool:
        if rem == 0:
            return True
        if idx == len(t_vals):
            return False
        name, val = t_vals[idx]
        for c in range(int(rem / val), -1, -1):
            if c:
                t_exps[name] = c
            if search(rem - c * val, idx + 1):
                return True
            t_exps.pop(name, None)
        return False

    if not search(remaining, 0):
        return None
    pairs = [(name, c) for name, c in zip(z_names, z_coeffs) if c]
    pairs += list(t_exps.items())
    return mono(*pairs)


def presentation_implies(
    source: AffinePresentation,
    target: AffinePresentation,
    max_nodes: int = 20000,
    max_degree_slack: int = 4,
) -> bool:
    """Whether every binomial of ``target`` follows from ``source`` by rewriting.

    Target generators are first rewritten as products of source generators
    (exactly, exponent by exponent), then each translated binomial must be
    reachable under the source moves.
    """
    gen_map: dict[str, tuple] = {}
    for name in target.generator_order:
        image = decompose_named(source, target.generators[name])
        if image is None:
            return False
        gen_map[name] = image

    def translate(m: tuple) -> tuple:
        out: tuple = ONE
        for name, exp in m:
            for _ in range(exp):
                out = mono_mul(out, gen_map[name])
        return out

    moves = source.binomial_moves()
    for rel in target.relations:
        if rel.rhs is None:
            continue
        lhs, rhs = translate(rel.lhs), translate(rel.rhs)
        bound = max(mono_total_degree(lhs), mono_total_degree(rhs)) + max_degree_slack
        if not rewrites_to(moves, lhs, rhs, max_nodes, bound):
            return False
    return True


def presentations_equivalent(
    a: AffinePresentation, b: AffinePresentation, max_nodes: int = 20000
) -> bool:
    return presentation_implies(a, b, max_nodes) and presentation_implies(b, a, max_nodes)


def chow_presentation(
    p: "WeightVector | Sequence[int]",
    w: "WeightVector | Sequence[int]",
    degree_bound: int = 4,
) -> AffinePresentation:
    """Chow-ring presentation: curve coordinates set to zero, grading relations added.

    From the embedding, binomials not involving curve generators survive;
    generator products whose normal form acquires a positive curve exponent
    become ``monomial = 0`` relations (only inclusion-minimal ones are kept).
    The added linear relations (w_i/p_i) z_i^(w_i) = (w_(i+1)/p_(i+1))
    z_(i+1)^(w_(i+1)) span the same degree-1 space as the derivation images
    of the potential; this equality of spans is asserted.
    """
    pw = as_weights(p, "p")
    ww = as_weights(w, "w")
    if len(pw) != len(ww):
        raise ValueError("length mismatch")
    emb = affine_embedding(pw, degree_bound)
    t_names = {name for name in emb.generator_order if emb.generators[name].t_exp > 0}
    order = tuple(name for name in emb.generator_order if name not in t_names)
    gens = {name: emb.generators[name] for name in order}

    def touches_t(m: tuple) -> bool:
        return any(name in t_names for name, _ in m)

    relations = [
        rel
        for rel in emb.relations
        if not touches_t(rel.lhs) and (rel.rhs is None or not touches_t(rel.rhs))
    ]

    pres = AffinePresentation(
        kind="chow",
        p=pw,
        w=ww,
        generator_order=order,
        generators=gens,
        relations=relations,
    )

    zero_relations: list[Relation] = []
    kept: list[tuple] = []
    for size in range(1, degree_bound + 1):
        for combo in itertools.combinations_with_replacement(order, size):
            m = mono(*((name, 1) for name in combo))
            if any(mono_contains(m, z) for z in kept):
                continue
            if pres.evaluate(m).t_exp > 0:
                kept.append(m)
                zero_relations.append(Relation(m, None))
    pres.relations = relations + zero_relations

    extra: list[tuple[tuple[Fraction, tuple], ...]] = []
    for i in range(pw.n):
        extra.append(
            (
                (Q(ww[i], pw[i]), mono((f"z{i}", ww[i]))),
                (-Q(ww[i + 1], pw[i + 1]), mono((f"z{i + 1}", ww[i + 1]))),
            )
        )
    pres.extra_relations = extra

    _assert_degree_one_span(pres, pw, ww)
    return pres


def _assert_degree_one_span(
    pres: AffinePresentation, pw: WeightVector, ww: WeightVector
) -> None:
    """The added linear relations and the derivation images span the same space."""
    monomials = [
        tuple(Q(ww[i]) if j == i else Q(0) for j in range(len(pw)))
        for i in range(len(pw))
    ]
    index = {m: i for i, m in enumerate(monomials)}

    extra_rows = []
    for combo in pres.extra_relations:
        row = [Q(0)] * len(monomials)
        for coeff, m in combo:
            row[index[pres.evaluate(m).z_exp]] += coeff
        extra_rows.append(row)
    gen_rows = []
    for g in jacobian_generators(pw, ww):
        row = [Q(0)] * len(monomials)
        for c, coeff in g.terms.items():
            row[index[c]] += coeff
        gen_rows.append(row)

    r1 = fraction_rows_rank(extra_rows)
    r2 = fraction_rows_rank(gen_rows)
    r3 = fraction_rows_rank(extra_rows + gen_rows)
    if not (r1 == r2 == r3 == pw.n):
        raise ValueError(
            f"degree-1 spans differ: ranks {r1}, {r2}, joint {r3}, expected {pw.n}"
        )
