"""Integer-valued functions on strata and their Euler-characteristic calculus.

The integral functional is the unique linear extension of "indicator of a
compact set maps to its Euler characteristic": on a PL model it is the
alternating sum over open simplices, and every slice/halflink integral below
reduces to counting relatively open convex pieces with chi_c = (-1)^dim.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping

from .complexes import (
    EmbeddedComplex,
    Simplex,
    StratumRef,
    as_region,
    closed_star,
    closed_star_of_simplex,
    simplex,
    slice_pieces,
    sort_key,
)
from .errors import DegeneracyError, InputError, UnstableLevelError
from .functions import AffineFunction
from .linalg import Vec, rat, solve_affine, strict_feasibility
from .subdivision import SubdivisionResult, hyperplane_side


@dataclass(eq=False)
class ConstructibleFunction:
    """One integer per open simplex; unlisted simplices carry 0."""

    complex: EmbeddedComplex
    values: dict[Simplex, int]

    def __post_init__(self):
        cleaned: dict[Simplex, int] = {}
        for s, v in self.values.items():
            fs = simplex(s)
            if fs not in self.complex.simplices:
                raise InputError(f"value on unknown simplex {sorted(fs)}")
            if int(v) != v:
                raise InputError(f"non-integer value {v!r} on {sorted(fs)}")
            if v != 0:
                cleaned[fs] = int(v)
        self.values = cleaned

    def value(self, s: Iterable[int]) -> int:
        return self.values.get(simplex(s), 0)

    def support(self) -> list[Simplex]:
        return sorted(self.values, key=sort_key)

    def is_zero(self) -> bool:
        return not self.values

    def add(self, other: "ConstructibleFunction") -> "ConstructibleFunction":
        self._check_same_complex(other)
        merged = dict(self.values)
        for s, v in other.values.items():
            merged[s] = merged.get(s, 0) + v
        return ConstructibleFunction(self.complex, merged)

    def scale(self, c: int) -> "ConstructibleFunction":
        if int(c) != c:
            raise InputError("constructible functions scale by integers only")
        return ConstructibleFunction(self.complex, {s: c * v for s, v in self.values.items()})

    def neg(self) -> "ConstructibleFunction":
        return self.scale(-1)

    def restrict(self, region: Iterable[Iterable[int]]) -> "ConstructibleFunction":
        """Pointwise product with the indicator of a set of open simplices."""
        reg = {simplex(s) for s in region}
        return ConstructibleFunction(
            self.complex, {s: v for s, v in self.values.items() if s in reg}
        )

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, ConstructibleFunction)
            and self.complex is other.complex
            and self.values == other.values
        )

    def _check_same_complex(self, other: "ConstructibleFunction") -> None:
        if self.complex is not other.complex:
            raise InputError("constructible functions live on different complexes")


def constant_function(cx: EmbeddedComplex, value: int = 1) -> ConstructibleFunction:
    return ConstructibleFunction(cx, {s: value for s in cx.simplices})


def indicator(cx: EmbeddedComplex, region: Iterable[Iterable[int]]) -> ConstructibleFunction:
    return ConstructibleFunction(cx, {simplex(s): 1 for s in region})


def from_values(cx: EmbeddedComplex, values: Mapping) -> ConstructibleFunction:
    return ConstructibleFunction(cx, {simplex(s): v for s, v in values.items()})


def sign_of_dim(dim: int) -> int:
    return 1 if dim % 2 == 0 else -1


# -- integrals ----------------------------------------------------------


def euler_integral(alpha: ConstructibleFunction, region=None) -> int:
    """Sum of alpha(sigma) * (-1)^dim(sigma), optionally over a subcomplex."""
    if region is None:
        return sum(sign_of_dim(len(s) - 1) * v for s, v in alpha.values.items())
    reg = as_region(alpha.complex, region)
    return sum(
        sign_of_dim(len(s) - 1) * v for s, v in alpha.values.items() if s in reg
    )


def integral_over(alpha: ConstructibleFunction, region) -> int:
    """Integral of 1_region * alpha over a compact (closed) subcomplex."""
    reg = as_region(alpha.complex, region)
    return euler_integral(alpha, reg)


def slice_integral(
    alpha: ConstructibleFunction,
    region,
    f: AffineFunction,
    c,
) -> int:
    """Integral over {f = c} within the region, cell by relatively open cell.

    The level must be combinatorially stable: c may not equal a vertex value
    of any region face on which f is nonconstant, since the slice topology
    jumps exactly at those values.
    """
    cx = alpha.complex
    c = rat(c)
    reg = as_region(cx, region)
    for s in sorted(reg, key=sort_key):
        values = [cx.vertex_value(f, v) for v in sorted(s)]
        if min(values) < max(values) and c in values:
            raise UnstableLevelError(
                f"level {c} hits a vertex of face {sorted(s)} where f is nonconstant",
                witness={"face": tuple(sorted(s)), "level": c},
            )
    total = 0
    for piece in slice_pieces(cx, reg, f, c):
        if piece.nonempty:
            total += alpha.value(piece.face) * sign_of_dim(piece.dim)
    return total


# -- halflink geometry --------------------------------------------------


def star_vertex_ids(cx: EmbeddedComplex, s: Simplex) -> list[int]:
    """Vertices of strict cofaces not in s: the directions spanning the local cone."""
    out: set[int] = set()
    for tau in cx.strict_cofaces(s):
        out |= tau
    return sorted(out - s)


def is_conormal(cx: EmbeddedComplex, S: StratumRef, xi: Vec) -> bool:
    if xi.dim != cx.ambient_dim:
        raise InputError("covector dimension mismatch")
    return all(xi.dot(d) == 0 for d in S.direction_basis)


def _require_conormal(cx: EmbeddedComplex, S: StratumRef, xi: Vec) -> None:
    if not is_conormal(cx, S, xi):
        raise InputError(
            f"covector {xi!r} is not conormal to stratum {sorted(S.simplex)}"
        )


def normal_slice_vertices(
    cx: EmbeddedComplex, S: StratumRef
) -> list[tuple[Simplex, Vec]]:
    """Vertices of the polytopes {cl(tau) meet N} over the closed star of S.

    N is the normal slice through the barycenter.  Each polytope vertex is the
    unique point of aff(phi) meet N for some face phi whose closed simplex
    contains it; minimal faces realize every vertex, so scanning all faces of
    the closed star is exhaustive.
    """
    out: list[tuple[Simplex, Vec]] = []
    b = S.barycenter
    for sigma in sorted(closed_star_of_simplex(cx, S.simplex), key=sort_key):
        verts = cx.coords(sigma)
        k = len(verts)
        eqs: list[tuple[Vec, Fraction]] = [(Vec((Fraction(1),) * k), Fraction(1))]
        for d in S.direction_basis:
            eqs.append((Vec(tuple(d.dot(v) for v in verts)), d.dot(b)))
        sol = solve_affine(eqs, k)
        if sol is None or sol.dim != 0:
            continue
        weights = sol.point
        if any(w < 0 for w in weights):
            continue
        point = Vec.zero(cx.ambient_dim)
        for w, v in zip(weights, verts):
            point = point + v.scale(w)
        out.append((sigma, point))
    return out


def halflink_epsilon(cx: EmbeddedComplex, S: StratumRef, xi: Vec) -> Fraction | None:
    """Half the smallest positive |xi . (w - barycenter)| over tube vertices.

    Any level -eps with 0 < eps below that minimum has the same combinatorial
    slice type, which is what makes the halflink well defined; None when the
    pairing vanishes on the whole tube (empty halflink).
    """
    b = S.barycenter
    best: Fraction | None = None
    for _, w in normal_slice_vertices(cx, S):
        pairing = abs(xi.dot(w - b))
        if pairing != 0 and (best is None or pairing < best):
            best = pairing
    if best is None:
        return None
    return best / 2


def halflink_integral(alpha: ConstructibleFunction, S, xi: Vec) -> int:
    """Integral of alpha over the lower halflink {xi . (y - b) = -eps}.

    The halflink lives in the normal slice N through the barycenter, inside
    the closed-star tube; its cells are the nonempty sets
    relint(sigma) meet N meet {level}, each a bounded relatively open convex
    set contributing alpha(sigma) * (-1)^dim.
    """
    cx = alpha.complex
    if not isinstance(S, StratumRef):
        S = cx.stratum(S)
    _require_conormal(cx, S, xi)
    b = S.barycenter
    for p in star_vertex_ids(cx, S.simplex):
        if xi.dot(cx.vertices[p] - b) == 0:
            raise DegeneracyError(
                f"covector pairs to zero with star vertex {p} of {sorted(S.simplex)}",
                witness={"stratum": tuple(sorted(S.simplex)), "star_vertex": p},
            )
    if not cx.strict_cofaces(S.simplex):
        return 0
    eps = halflink_epsilon(cx, S, xi)
    if eps is None:
        return 0
    level = -eps
    tube = sorted(closed_star_of_simplex(cx, S.simplex), key=sort_key)
    if S.dim == 0:
        # pure vertex-value combinatorics: eps excludes every vertex pairing,
        # so straddling decides nonemptiness without any feasibility call
        total = 0
        for sigma in tube:
            vals = [xi.dot(cx.vertices[v] - b) for v in sorted(sigma)]
            lo, hi = min(vals), max(vals)
            if lo < level < hi:
                # germ value: rays from the stratum into this piece pass
                # through the join simplex, whose value is the local one
                total += alpha.value(sigma | S.simplex) * sign_of_dim(len(sigma) - 2)
        return total
    total = 0
    for sigma in tube:
        verts = cx.coords(sigma)
        k = len(verts)
        eqs: list[tuple[Vec, Fraction]] = [(Vec((Fraction(1),) * k), Fraction(1))]
        for d in S.direction_basis:
            eqs.append((Vec(tuple(d.dot(v) for v in verts)), d.dot(b)))
        eqs.append((Vec(tuple(xi.dot(v) for v in verts)), xi.dot(b) + level))
        stricts = [(Vec.unit(k, i), Fraction(0)) for i in range(k)]
        res = strict_feasibility(eqs, stricts, [], k)
        if res.feasible:
            # join value, as in the vertex fast path above
            total += alpha.value(sigma | S.simplex) * sign_of_dim(res.dim)
    return total


# -- duality and open-side extensions -----------------------------------


def dual(alpha: ConstructibleFunction) -> ConstructibleFunction:
    """Function-level Verdier dual: alternating coface sums per stratum.

    (D alpha)(sigma) = sum over tau in {sigma} + cofaces(sigma) of
    (-1)^dim(tau) * alpha(tau); an involution by binomial cancellation.
    """
    cx = alpha.complex
    values: dict[Simplex, int] = {}
    for s in cx.simplices:
        total = sign_of_dim(len(s) - 1) * alpha.value(s)
        for tau in cx.strict_cofaces(s):
            total += sign_of_dim(len(tau) - 1) * alpha.value(tau)
        values[s] = total
    return ConstructibleFunction(cx, values)


def side_partition(
    cx: EmbeddedComplex, g: AffineFunction, delta
) -> dict[int, list[Simplex]]:
    """Split simplices by side of {g = delta}; input error when one straddles."""
    delta = rat(delta)
    out: dict[int, list[Simplex]] = {-1: [], 0: [], 1: []}
    for s in cx.simplices_sorted():
        out[hyperplane_side(cx, s, g, delta)].append(s)
    return out


def jshriek_extend(
    alpha: ConstructibleFunction,
    g: AffineFunction,
    delta,
    side: str = "below",
) -> ConstructibleFunction:
    """Extension by zero from the open side {g < delta} (or {g > delta}).

    The complex must already be subdivided along the level, so every open
    simplex lies on one side; values off the open side are zeroed.
    """
    if side not in ("below", "above"):
        raise InputError(f"side must be 'below' or 'above', got {side!r}")
    parts = side_partition(alpha.complex, g, delta)
    keep = set(parts[-1 if side == "below" else 1])
    return alpha.restrict(keep)


def jstar_extend(
    alpha: ConstructibleFunction,
    g: AffineFunction,
    delta,
    side: str = "below",
) -> ConstructibleFunction:
    """Open-side extension matching nearby sections: dual . jshriek . dual."""
    return dual(jshriek_extend(dual(alpha), g, delta, side))


def level_restriction(
    alpha: ConstructibleFunction, g: AffineFunction, delta
) -> ConstructibleFunction:
    """alpha restricted to the {g = delta} subcomplex (after subdivision)."""
    parts = side_partition(alpha.complex, g, delta)
    return alpha.restrict(parts[0])


# -- transport through subdivisions -------------------------------------


def transport(alpha: ConstructibleFunction, sub: SubdivisionResult) -> ConstructibleFunction:
    """Carry values through a subdivision: each new open simplex inherits the
    value of the old open simplex containing it."""
    values = {s: alpha.value(old) for s, old in sub.ancestry.items()}
    return ConstructibleFunction(sub.complex, values)


# -- tubes --------------------------------------------------------------


@dataclass(frozen=True)
class TubeSpec:
    """A regular-neighborhood tube around a level-zero core.

    The closed star of the (full) core plays the role of a small closed
    neighborhood; epsilon is any positive rational below every nonzero |f| on
    tube vertices, so the level {f = -eps} is combinatorially stable.
    """

    base: frozenset[Simplex]
    tube: frozenset[Simplex]
    epsilon: Fraction
    level_function: AffineFunction


def build_tube_spec(
    cx: EmbeddedComplex, base, f: AffineFunction
) -> TubeSpec:
    base_reg = as_region(cx, base)
    for s in base_reg:
        for v in s:
            if cx.vertex_value(f, v) != 0:
                raise InputError(
                    f"tube core vertex {v} has nonzero level value {cx.vertex_value(f, v)}"
                )
    tube = closed_star(cx, base_reg)
    best: Fraction | None = None
    for v in {v for s in tube for v in s}:
        val = abs(cx.vertex_value(f, v))
        if val != 0 and (best is None or val < best):
            best = val
    eps = Fraction(1) if best is None else best / 2
    return TubeSpec(frozenset(base_reg), frozenset(tube), eps, f)
