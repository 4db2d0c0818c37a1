"""Characteristic cycles as lazily evaluated chamber multiplicity data.

Over each stratum the nondegenerate conormal covectors fall into finitely
many open cones, cut out by the hyperplanes paired with star vertices; the
cycle is the assignment chamber -> integer multiplicity, with multiplicity
alpha(S) minus the lower-halflink integral.  Nothing is materialized: theorem
checks only ever query finitely many covectors.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from weakref import WeakKeyDictionary

from .complexes import EmbeddedComplex, Simplex, StratumRef, carrier, simplex
from .constructible import (
    ConstructibleFunction,
    dual,
    halflink_integral,
    is_conormal,
    star_vertex_ids,
)
from .errors import DegeneracyError, InputError
from .linalg import Vec, orthogonal_complement, strict_feasibility

SignVector = tuple[tuple[int, int], ...]  # ((star vertex id, sign), ...) sorted


@dataclass(frozen=True)
class ConormalChamber:
    """An open cone of nondegenerate covectors over a stratum.

    sign_vector records, per star vertex p, the sign of xi . (p - barycenter);
    the witness is an exact interior covector (zero for strata without
    cofaces, whose whole conormal space is one chamber).
    """

    stratum: StratumRef
    sign_vector: SignVector
    witness: Vec

    def signs(self) -> dict[int, int]:
        return dict(self.sign_vector)


def conormal_basis(cx: EmbeddedComplex, S: StratumRef) -> tuple[Vec, ...]:
    return orthogonal_complement(list(S.direction_basis), cx.ambient_dim)


def is_nondegenerate(cx: EmbeddedComplex, S, xi: Vec) -> bool:
    """True when xi pairs nonzero with every star vertex direction.

    In the PL model the degenerate covectors over S are exactly the union of
    the hyperplanes {xi . (p - b) = 0}: each is the closure of the conormal
    space of the coface generated by p.
    """
    if not isinstance(S, StratumRef):
        S = cx.stratum(S)
    if not is_conormal(cx, S, xi):
        raise InputError(f"covector not conormal to {sorted(S.simplex)}")
    b = S.barycenter
    return all(xi.dot(cx.vertices[p] - b) != 0 for p in star_vertex_ids(cx, S.simplex))


def strict_sign_vector(cx: EmbeddedComplex, S: StratumRef, xi: Vec) -> SignVector:
    """Chamber key of a nondegenerate covector; degeneracy raises."""
    b = S.barycenter
    out: list[tuple[int, int]] = []
    for p in star_vertex_ids(cx, S.simplex):
        pairing = xi.dot(cx.vertices[p] - b)
        if pairing == 0:
            raise DegeneracyError(
                f"covector pairs to zero with star vertex {p} of {sorted(S.simplex)}",
                witness={"stratum": tuple(sorted(S.simplex)), "star_vertex": p},
            )
        out.append((p, 1 if pairing > 0 else -1))
    return tuple(out)


def weak_sign_vector(cx: EmbeddedComplex, S: StratumRef, xi: Vec) -> SignVector:
    """Like strict_sign_vector but zeros are kept (closure membership tests)."""
    b = S.barycenter
    out: list[tuple[int, int]] = []
    for p in star_vertex_ids(cx, S.simplex):
        pairing = xi.dot(cx.vertices[p] - b)
        out.append((p, 0 if pairing == 0 else (1 if pairing > 0 else -1)))
    return tuple(out)


_CHAMBER_CACHE: "WeakKeyDictionary[EmbeddedComplex, dict[Simplex, tuple[ConormalChamber, ...]]]" = (
    WeakKeyDictionary()
)


def enumerate_chambers(cx: EmbeddedComplex, S) -> list[ConormalChamber]:
    """All realizable strict sign vectors over S, each with an interior witness.

    Incremental construction over the star-vertex hyperplane arrangement in
    the conormal subspace: every chamber of the first i hyperplanes is
    extended by the sign it already realizes for free, and by the opposite
    sign through one exact feasibility call.
    """
    if not isinstance(S, StratumRef):
        S = cx.stratum(S)
    per_complex = _CHAMBER_CACHE.setdefault(cx, {})
    cached = per_complex.get(S.simplex)
    if cached is not None:
        return list(cached)
    sverts = star_vertex_ids(cx, S.simplex)
    if not sverts:
        result = (ConormalChamber(S, (), Vec.zero(cx.ambient_dim)),)
        per_complex[S.simplex] = result
        return list(result)
    basis = conormal_basis(cx, S)
    w = len(basis)
    b = S.barycenter
    functionals = [
        Vec(tuple(e.dot(cx.vertices[p] - b) for e in basis)) for p in sverts
    ]
    partial: list[tuple[list[int], Vec]] = [([], Vec.zero(w))]
    for i, func in enumerate(functionals):
        grown: list[tuple[list[int], Vec]] = []
        for signs, wit_t in partial:
            at_wit = func.dot(wit_t)
            for cand in (1, -1):
                if at_wit != 0 and (1 if at_wit > 0 else -1) == cand:
                    grown.append((signs + [cand], wit_t))
                    continue
                stricts = [
                    (functionals[j].scale(s), Fraction(0))
                    for j, s in enumerate(signs)
                ] + [(func.scale(cand), Fraction(0))]
                res = strict_feasibility([], stricts, [], w)
                if res.feasible:
                    grown.append((signs + [cand], res.witness))
        partial = grown
    chambers = []
    for signs, wit_t in partial:
        xi = Vec.zero(cx.ambient_dim)
        for coeff, e in zip(wit_t, basis):
            xi = xi + e.scale(coeff)
        chambers.append(
            ConormalChamber(S, tuple(zip(sverts, signs)), xi)
        )
    chambers.sort(key=lambda c: c.sign_vector)
    per_complex[S.simplex] = tuple(chambers)
    return list(chambers)


def chamber_witnesses(
    cx: EmbeddedComplex, chamber: ConormalChamber, count: int = 2
) -> list[Vec]:
    """Distinct interior covectors of one chamber, for constancy checks.

    Perturbs the stored witness along conormal basis directions by exact
    margins small enough to preserve every strict sign.
    """
    out = [chamber.witness]
    if not chamber.sign_vector:
        return out[:count]
    S = chamber.stratum
    b = S.barycenter
    dirs = [(p, cx.vertices[p] - b) for p, _ in chamber.sign_vector]
    for e in conormal_basis(cx, S):
        if len(out) >= count:
            break
        margin: Fraction | None = None
        for _, d in dirs:
            denom = abs(e.dot(d))
            if denom != 0:
                bound = abs(chamber.witness.dot(d)) / denom
                if margin is None or bound < margin:
                    margin = bound
        delta = Fraction(1) if margin is None else margin / 2
        cand = chamber.witness + e.scale(delta)
        if all(cand != existing for existing in out):
            out.append(cand)
    return out[:count]


def multiplicity_at(alpha: ConstructibleFunction, S, xi: Vec) -> int:
    """alpha(S) minus the lower-halflink integral; no memoization."""
    cx = alpha.complex
    if not isinstance(S, StratumRef):
        S = cx.stratum(S)
    return alpha.value(S.simplex) - halflink_integral(alpha, S, xi)


class CharacteristicCycle:
    """Lazy multiplicity accessor for CC(alpha).

    Multiplicities are constant on chambers, so they are memoized per
    (stratum, sign vector); the memo is write-once with identical values and
    is safe under concurrent insertion.
    """

    def __init__(self, alpha: ConstructibleFunction):
        self.alpha = alpha
        self.complex = alpha.complex
        self._memo: dict[tuple[Simplex, SignVector], int] = {}
        self._nonzero: dict[Simplex, bool] = {}

    def multiplicity(self, S, xi: Vec) -> int:
        cx = self.complex
        if not isinstance(S, StratumRef):
            S = cx.stratum(S)
        key = (S.simplex, strict_sign_vector(cx, S, xi))
        cached = self._memo.get(key)
        if cached is not None:
            return cached
        value = multiplicity_at(self.alpha, S, xi)
        self._memo[key] = value
        return value

    def chambers(self, s) -> list[ConormalChamber]:
        return enumerate_chambers(self.complex, s)

    def chamber_multiplicities(self, s) -> list[tuple[ConormalChamber, int]]:
        return [(c, self.multiplicity(c.stratum, c.witness)) for c in self.chambers(s)]

    def nonzero_chambers(self, s) -> list[tuple[ConormalChamber, int]]:
        return [(c, m) for c, m in self.chamber_multiplicities(s) if m != 0]

    def has_nonzero_chamber(self, s) -> bool:
        fs = simplex(s)
        cached = self._nonzero.get(fs)
        if cached is None:
            cached = bool(self.nonzero_chambers(fs))
            self._nonzero[fs] = cached
        return cached

    def closure_supports(self, S, xi: Vec) -> bool:
        """Is (base of S, xi) in the closed support, tested at stratum S only?

        True when xi is conormal to S and lies in the closure of some chamber
        with nonzero multiplicity: every weak sign matches or vanishes.
        """
        cx = self.complex
        if not isinstance(S, StratumRef):
            S = cx.stratum(S)
        if not is_conormal(cx, S, xi):
            return False
        weak = dict(weak_sign_vector(cx, S, xi))
        for chamber, _ in self.nonzero_chambers(S.simplex):
            if all(weak[p] == 0 or weak[p] == s for p, s in chamber.sign_vector):
                return True
        return False


def multiplicity(cc: CharacteristicCycle, S, xi: Vec) -> int:
    return cc.multiplicity(S, xi)


def support_contains(cc: CharacteristicCycle, x: Vec, xi: Vec) -> bool:
    """Membership of (x, xi) in |CC(alpha)| = union of closed nonzero chambers.

    x must lie in the complex; the relevant strata are the carrier of x and
    its cofaces, since those are the strata whose closure contains x.
    """
    cx = cc.complex
    sigma = carrier(cx, x)
    if sigma is None:
        raise InputError(f"point {x!r} lies outside the complex")
    for s in [sigma] + list(cx.strict_cofaces(sigma)):
        if cc.closure_supports(s, xi):
            return True
    return False


def antipodal_support_check(alpha: ConstructibleFunction) -> bool:
    """Support of CC(dual alpha) equals the antipodal image of CC(alpha)'s.

    Checked chamber by chamber: the dual's multiplicity at a witness xi is
    nonzero exactly when alpha's multiplicity at -xi is (and -xi is a witness
    of the opposite chamber, so this exhausts both supports).
    """
    cc = CharacteristicCycle(alpha)
    ccd = CharacteristicCycle(dual(alpha))
    cx = alpha.complex
    for s in cx.simplices_sorted():
        for chamber in cc.chambers(s):
            xi = chamber.witness
            lhs = ccd.multiplicity(chamber.stratum, xi) != 0
            rhs = cc.multiplicity(chamber.stratum, xi.scale(-1)) != 0
            if lhs != rhs:
                return False
    return True
