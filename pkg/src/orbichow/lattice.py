"""Integer and rational lattice arithmetic for weighted fans.

Everything is exact: vectors are tuples of ``fractions.Fraction``, weights are
tuples of positive integers.  No floating point is used anywhere in the
package.

The two basic maps are ``gamma`` and ``alpha``.  For a weight vector
``p = (p_0, ..., p_n)`` and a rational vector ``a``,

    gamma(a) = min_i a_i / p_i
    alpha(a) = a - gamma(a) * p

so ``alpha(a)`` is the point where the line ``a + t*p`` meets the boundary of
the nonnegative orthant (the locus where some coordinate vanishes).  ``alpha``
is constant on classes modulo ``Z*p`` and its value is the canonical
representative used for exponent bookkeeping throughout the package.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Iterator, Sequence

Q = Fraction
Vec = tuple[Fraction, ...]
IntVec = tuple[int, ...]


class InternalCheckError(RuntimeError):
    """A cross-checked internal identity failed; indicates a bug."""


@dataclass(frozen=True)
class WeightVector:
    """Positive integer weights, either projective weights or root multiplicities.

    ``kind`` is ``"p"`` for the grading weights of the quotient torus action
    (the gcd of all entries must then be 1) and ``"w"`` for the divisor
    multiplicities, which carry no gcd constraint.
    """

    entries: tuple[int, ...]
    kind: str = "p"

    def __post_init__(self) -> None:
        if self.kind not in ("p", "w"):
            raise ValueError(f"kind must be 'p' or 'w', got {self.kind!r}")
        entries = tuple(int(e) for e in self.entries)
        object.__setattr__(self, "entries", entries)
        if not entries:
            raise ValueError("weight vector must be nonempty")
        if any(e < 1 for e in entries):
            raise ValueError(f"weights must be >= 1, got {entries}")
        if self.kind == "p" and gcd(*entries) != 1:
            raise ValueError(f"gcd of weights must be 1, got {entries}")

    @classmethod
    def p(cls, entries: Iterable[int]) -> "WeightVector":
        return cls(tuple(entries), "p")

    @classmethod
    def w(cls, entries: Iterable[int]) -> "WeightVector":
        return cls(tuple(entries), "w")

    @property
    def n(self) -> int:
        """Ambient projective dimension: one less than the number of entries."""
        return len(self.entries) - 1

    @property
    def lcm(self) -> int:
        return lcm(*self.entries)

    @property
    def well_formed(self) -> bool:
        """True when every n-subset of the entries is coprime.

        Reported for information; nothing in the package requires it.
        """
        if self.n == 0:
            return self.entries[0] == 1
        return all(
            gcd(*(e for j, e in enumerate(self.entries) if j != i)) == 1
            for i in range(len(self.entries))
        )

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self) -> Iterator[int]:
        return iter(self.entries)

    def __getitem__(self, i: int) -> int:
        return self.entries[i]


def as_weights(p: "WeightVector | Sequence[int]", kind: str = "p") -> WeightVector:
    """Coerce a sequence of ints to a WeightVector (no-op on WeightVector)."""
    if isinstance(p, WeightVector):
        return p
    return WeightVector(tuple(p), kind)


def as_vec(a: Sequence) -> Vec:
    return tuple(Q(x) for x in a)


def _check_length(a: Sequence, p: WeightVector) -> None:
    if len(a) != len(p):
        raise ValueError(f"length mismatch: vector of length {len(a)} vs {len(p)} weights")


def gamma(a: Sequence, p: "WeightVector | Sequence[int]") -> Fraction:
    """Smallest ratio a_i / p_i, exactly."""
    pw = as_weights(p)
    _check_length(a, pw)
    return min(Q(ai) / pi for ai, pi in zip(a, pw.entries))


def alpha(a: Sequence, p: "WeightVector | Sequence[int]") -> Vec:
    """Boundary representative a - gamma(a)*p of the class of ``a``.

    The result is nonnegative with at least one coordinate ``b_i = 0`` at a
    minimizing index, so ``gamma(alpha(a)) == 0``.
    """
    pw = as_weights(p)
    g = gamma(a, pw)
    return tuple(Q(ai) - g * pi for ai, pi in zip(a, pw.entries))


def same_cone(b1: Sequence, b2: Sequence) -> bool:
    """Whether two boundary representatives lie in a common fan cone.

    For nonnegative representatives this happens exactly when the supports
    miss a common coordinate, i.e. some index has ``b1_i == b2_i == 0``.
    """
    if len(b1) != len(b2):
        raise ValueError("length mismatch")
    return any(x == 0 and y == 0 for x, y in zip(b1, b2))


def in_alpha_image(b: Sequence, p: "WeightVector | Sequence[int]") -> bool:
    """Whether ``b`` is the boundary representative of an integer class.

    Holds exactly when gamma(b) == 0 and b + t*p is an integer vector for
    some rational t.  Any such t has denominator dividing lcm(p), so the
    search over residues is finite.
    """
    pw = as_weights(p)
    _check_length(b, pw)
    bv = as_vec(b)
    if any(x < 0 for x in bv):
        raise ValueError("in_alpha_image expects a nonnegative vector")
    if gamma(bv, pw) != 0:
        return False
    m = pw.lcm
    scaled = []
    for x in bv:
        s = x * m
        if s.denominator != 1:
            return False
        scaled.append(s.numerator)
    return any(
        all((c + x * pi) % m == 0 for c, pi in zip(scaled, pw.entries))
        for x in range(m)
    )


def theta_value(theta: Sequence[int], v: Sequence) -> Fraction:
    """Evaluate an integer functional on a rational vector."""
    if len(theta) != len(v):
        raise ValueError("length mismatch")
    return sum((Q(t) * Q(x) for t, x in zip(theta, v)), Q(0))


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return (g, x, y) with x*a + y*b == g == gcd(a, b), g >= 0."""
    old_r, r = a, b
    old_x, x = 1, 0
    old_y, y = 0, 1
    while r:
        qt = old_r // r
        old_r, r = r, old_r - qt * r
        old_x, x = x, old_x - qt * x
        old_y, y = y, old_y - qt * y
    if old_r < 0:
        old_r, old_x, old_y = -old_r, -old_x, -old_y
    return old_r, old_x, old_y


def dual_kernel_basis(p: "WeightVector | Sequence[int]") -> list[IntVec]:
    """Basis of the lattice of integer functionals vanishing on ``p``.

    Column-reduces the 1 x (n+1) matrix ``p`` by unimodular operations; the
    columns sent to zero give n independent kernel vectors spanning the full
    kernel lattice.  The result is verified: every vector annihilates ``p``
    and the basis matrix has all invariant factors equal to 1.
    """
    pw = as_weights(p)
    m = len(pw)
    u = [[1 if i == j else 0 for j in range(m)] for i in range(m)]
    v = list(pw.entries)
    for j in range(1, m):
        a, b = v[0], v[j]
        g, x, y = _xgcd(a, b)
        for i in range(m):
            c0, cj = u[i][0], u[i][j]
            u[i][0] = x * c0 + y * cj
            u[i][j] = (a // g) * cj - (b // g) * c0
        v[0], v[j] = g, 0
    basis = [tuple(u[i][j] for i in range(m)) for j in range(1, m)]
    for theta in basis:
        if sum(t * pi for t, pi in zip(theta, pw.entries)) != 0:
            raise InternalCheckError(f"kernel vector {theta} does not annihilate {pw.entries}")
    if m > 1 and smith_invariant_factors(basis) != [1] * (m - 1):
        raise InternalCheckError("kernel basis does not span the full kernel lattice")
    return basis


def hermite_normal_form(rows: Iterable[Sequence[int]]) -> tuple[IntVec, ...]:
    """Row-style Hermite normal form; canonical for lattice-equality tests."""
    a = [list(r) for r in rows if any(r)]
    if not a:
        return ()
    ncols = len(a[0])
    r = 0
    for c in range(ncols):
        while True:
            nz = [i for i in range(r, len(a)) if a[i][c]]
            if not nz:
                break
            i0 = min(nz, key=lambda i: (abs(a[i][c]), i))
            a[r], a[i0] = a[i0], a[r]
            clean = True
            for i in range(r + 1, len(a)):
                if a[i][c]:
                    q = a[i][c] // a[r][c]
                    a[i] = [x - q * y for x, y in zip(a[i], a[r])]
                    if a[i][c]:
                        clean = False
            if clean:
                break
        if r < len(a) and a[r][c]:
            if a[r][c] < 0:
                a[r] = [-x for x in a[r]]
            for i in range(r):
                q = a[i][c] // a[r][c]
                if q:
                    a[i] = [x - q * y for x, y in zip(a[i], a[r])]
            r += 1
    return tuple(tuple(row) for row in a[:r])


def smith_invariant_factors(rows: Iterable[Sequence[int]]) -> list[int]:
    """Nonzero invariant factors d_1 | d_2 | ... of an integer matrix."""
    a = [list(r) for r in rows]
    if not a or not a[0]:
        return []
    nrows, ncols = len(a), len(a[0])
    factors: list[int] = []
    t = 0
    while t < min(nrows, ncols):
        best = None
        for i, j in itertools.product(range(t, nrows), range(t, ncols)):
            if a[i][j] and (best is None or abs(a[i][j]) < abs(a[best[0]][best[1]])):
                best = (i, j)
        if best is None:
            break
        i0, j0 = best
        a[t], a[i0] = a[i0], a[t]
        for row in a:
            row[t], row[j0] = row[j0], row[t]
        while True:
            dirty = False
            for i in range(t + 1, nrows):
                if a[i][t]:
                    q = a[i][t] // a[t][t]
                    a[i] = [x - q * y for x, y in zip(a[i], a[t])]
                    if a[i][t]:
                        a[t], a[i] = a[i], a[t]
                        dirty = True
            for j in range(t + 1, ncols):
                if a[t][j]:
                    q = a[t][j] // a[t][t]
                    for i in range(nrows):
                        a[i][j] -= q * a[i][t]
                    if a[t][j]:
                        for i in range(nrows):
                            a[i][t], a[i][j] = a[i][j], a[i][t]
                        dirty = True
            if not dirty:
                break
        # Divisibility: fold in any entry the pivot misses, then redo.
        piv = abs(a[t][t])
        offender = next(
            (i for i in range(t + 1, nrows)
             for j in range(t + 1, ncols) if a[i][j] % piv),
            None,
        )
        if offender is not None:
            a[t] = [x + y for x, y in zip(a[t], a[offender])]
            continue
        factors.append(piv)
        t += 1
    return factors
