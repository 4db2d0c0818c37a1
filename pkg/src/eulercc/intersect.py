"""Verifiers equating independently computed sides of the index formulas.

Each verifier returns a TheoremReport carrying both integers, the hypothesis
checks that were actually performed (with witnesses), and enough artifacts to
replay the computation.  Violated hypotheses raise; they are never folded
into a boolean.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple

from .charcycle import (
    CharacteristicCycle,
    SignVector,
    chamber_witnesses,
    weak_sign_vector,
)
from .complexes import (
    EmbeddedComplex,
    Simplex,
    StratumRef,
    Subcomplex,
    close_under_faces,
    closed_star,
    closed_star_of_simplex,
    induced_complex,
    simplex,
    sort_key,
)
from .constructible import (
    ConstructibleFunction,
    build_tube_spec,
    euler_integral,
    integral_over,
    is_conormal,
    jshriek_extend,
    jstar_extend,
    side_partition,
    slice_integral,
    star_vertex_ids,
    transport,
)
from .errors import (
    BoundaryCollisionError,
    DegeneracyError,
    HypothesisViolationError,
    InputError,
    NonConvergenceError,
    TransversalityError,
)
from .functions import AffineFunction, QuadAffineFunction, squared_distance_from
from .linalg import Vec, rat
from .morse import (
    PerturbationSchedule,
    RationalSampler,
    stabilized_count,
    stratified_morse_sum,
)
from .subdivision import barycentric_subdivide, subdivide_along_hyperplane


@dataclass(frozen=True)
class TheoremReport:
    """Both sides of one identity plus the audit trail behind them."""

    name: str
    lhs: int
    rhs: int
    holds: bool
    hypothesis_log: tuple[dict, ...]
    artifacts: dict

    def __post_init__(self):
        if self.holds != (self.lhs == self.rhs):
            raise InputError("report consistency: holds must equal lhs == rhs")
        if not self.hypothesis_log:
            raise InputError("report consistency: hypothesis log may not be empty")


class LocusEntry(NamedTuple):
    """One stratum-chamber pair met by the graph of df."""

    simplex: Simplex
    sign_vector: SignVector
    multiplicity: int
    on_level: bool  # f vanishes on the closure of the stratum


def compute_intersection_locus(
    alpha: ConstructibleFunction,
    f: AffineFunction,
    cc: CharacteristicCycle | None = None,
) -> tuple[tuple[LocusEntry, ...], Subcomplex]:
    """Strata whose cycle support meets the constant covector df, and K.

    The graph of df sits over every point at the fixed covector xi = df; it
    meets the closed support over a stratum exactly when xi is conormal there
    and weakly satisfies some nonzero chamber.  K collects the closures of
    the met strata on which f vanishes identically (for affine f a met
    stratum with f = 0 somewhere on its closure is on-level outright, so
    closures of on-level strata are the whole zero-level part of the locus).
    """
    cx = alpha.complex
    if f.dim != cx.ambient_dim:
        raise InputError("level function dimension does not match the complex")
    if cc is None:
        cc = CharacteristicCycle(alpha)
    xi = f.linear
    entries: list[LocusEntry] = []
    for s in cx.simplices_sorted():
        S = cx.stratum(s)
        if not is_conormal(cx, S, xi):
            continue
        weak = dict(weak_sign_vector(cx, S, xi))
        on_level = all(cx.vertex_value(f, v) == 0 for v in s)
        for chamber, m in cc.nonzero_chambers(s):
            if all(weak[p] == 0 or weak[p] == sgn for p, sgn in chamber.sign_vector):
                entries.append(LocusEntry(s, chamber.sign_vector, m, on_level))
    K = frozenset(
        close_under_faces({e.simplex for e in entries if e.on_level})
    )
    return tuple(entries), K


def verify_theorem1(
    alpha: ConstructibleFunction,
    f: AffineFunction,
    seed: int = 0,
    eta_start=Fraction(1, 4),
    eta_ratio=Fraction(1, 4),
    steps: int = 20,
    stability_window: int = 3,
) -> TheoremReport:
    """Intersection count against the relative Euler characteristic over K.

    LHS: integral of alpha over K minus the integral over the tube slice just
    below the zero level (the exact PL stand-in for the relative cohomology
    of the sublevel pair).  RHS: stabilized Morse count of the perturbed
    level function inside the tube.  Requires the met support to sit over
    the zero level; anything else is a hypothesis violation, not a verdict.
    """
    cx = alpha.complex
    hyp: list[dict] = []
    entries, K = compute_intersection_locus(alpha, f)
    on_level = sum(1 for e in entries if e.on_level)
    hyp.append(
        {
            "check": "locus",
            "status": "ok",
            "entries": len(entries),
            "on_level": on_level,
        }
    )
    if not entries:
        hyp.append({"check": "empty-intersection", "status": "ok"})
        return TheoremReport(
            "theorem1",
            0,
            0,
            True,
            tuple(hyp),
            {"locus": (), "K": (), "tube": (), "epsilon": None},
        )
    if not K:
        raise HypothesisViolationError(
            "cycle support meets the covector of f only over strata where f is nonzero",
            witness={
                "off_level": [
                    (tuple(sorted(e.simplex)), e.multiplicity)
                    for e in entries
                    if not e.on_level
                ]
            },
        )
    hyp.append({"check": "zero-level-support", "status": "ok", "K_size": len(K)})

    sub = barycentric_subdivide(cx, 1)
    cx2 = sub.complex
    alpha2 = transport(alpha, sub)
    K2 = sub.transport_region(K)
    spec = build_tube_spec(cx2, K2, f)

    off_level = [e.simplex for e in entries if not e.on_level]
    meets = []
    for s_off in off_level:
        faces_off = close_under_faces({s_off})
        if any(sub.ancestry[t] in faces_off for t in spec.tube):
            meets.append(tuple(sorted(s_off)))
    if meets:
        raise HypothesisViolationError(
            "off-level support reaches the localization tube",
            witness={"strata": meets},
        )
    hyp.append(
        {
            "check": "tube-separation",
            "status": "ok",
            "off_level_strata": len(off_level),
        }
    )

    region_term = integral_over(alpha2, K2)
    slice_term = slice_integral(alpha2, spec.tube, f, -spec.epsilon)
    lhs = region_term - slice_term
    # a sampled bump can be degenerate against the complex for every eta
    # (its gradient at some vertex can pair to zero with a star direction
    # independently of eta), so failed schedules reject the seed, not the run
    rejected: list[dict] = []
    rhs = None
    for attempt in range(8):
        schedule = PerturbationSchedule.from_seed(
            seed + attempt, cx.ambient_dim, eta_start, eta_ratio, steps,
            stability_window,
        )
        try:
            rhs, rep = stabilized_count(alpha2, f, schedule, spec.tube)
        except (BoundaryCollisionError, NonConvergenceError) as exc:
            rejected.append({"seed": seed + attempt, "reason": str(exc)})
            last_error = exc
            continue
        break
    if rhs is None:
        raise last_error
    hyp.append(
        {
            "check": "stabilization",
            "status": "ok",
            "seed_used": schedule.seed,
            "seeds_rejected": len(rejected),
            "window": rep.window,
            "etas_used": len(rep.history),
            "positive_definite": rep.hessians_positive_definite,
        }
    )
    artifacts = {
        "locus": entries,
        "K": tuple(sorted((tuple(sorted(s)) for s in K))),
        "tube_size": len(spec.tube),
        "epsilon": spec.epsilon,
        "region_term": region_term,
        "slice_term": slice_term,
        "schedule_seed": schedule.seed,
        "seeds_rejected": tuple(rejected),
        "stabilization": rep,
    }
    return TheoremReport("theorem1", lhs, rhs, lhs == rhs, tuple(hyp), artifacts)


def global_index(
    alpha: ConstructibleFunction,
    seed: int = 0,
    cc: CharacteristicCycle | None = None,
    attempts: int = 32,
) -> TheoremReport:
    """Euler integral against the Morse count of a seeded convex function.

    The test function is |y - y0|^2 + zeta . y: strictly convex, so every
    restricted Hessian is positive definite and only covector degeneracy can
    reject a seed, in which case the next seed is tried and logged.
    """
    cx = alpha.complex
    dim = cx.ambient_dim
    lhs = euler_integral(alpha)
    if cc is None:
        cc = CharacteristicCycle(alpha)
    hyp: list[dict] = [
        {"check": "compact-support", "status": "ok", "simplices": len(cx.simplices)}
    ]
    rejected: list[dict] = []
    for attempt in range(attempts):
        sampler = RationalSampler(seed + attempt)
        # fine denominators, for the same reason as the schedule sampling:
        # coarse grids collide with some star-direction condition on any
        # moderately subdivided complex
        y0 = sampler.vector(dim, max_den=64)
        zeta = sampler.nonzero_vector(dim, max_den=64)
        func = squared_distance_from(y0).add(QuadAffineFunction(zeta))
        try:
            rhs = stratified_morse_sum(alpha, func, None, cc)
        except DegeneracyError as exc:
            rejected.append({"seed": seed + attempt, "reason": str(exc)})
            continue
        hyp.append(
            {
                "check": "genericity",
                "status": "ok",
                "seed_used": seed + attempt,
                "seeds_rejected": len(rejected),
            }
        )
        artifacts = {
            "seed_used": seed + attempt,
            "center": y0,
            "direction": zeta,
            "rejected": tuple(rejected),
        }
        return TheoremReport(
            "global-index", lhs, rhs, lhs == rhs, tuple(hyp), artifacts
        )
    raise NonConvergenceError(
        "no seed produced nondegenerate covectors at every critical point",
        trace=tuple(rejected),
    )


def _restrict_function(
    alpha: ConstructibleFunction, small: EmbeddedComplex, vmap: dict[int, int]
) -> ConstructibleFunction:
    inv = {new: old for old, new in vmap.items()}
    values: dict[Simplex, int] = {}
    for s in small.simplices:
        val = alpha.value(frozenset(inv[i] for i in s))
        if val:
            values[s] = val
    return ConstructibleFunction(small, values)


def _image_vertex(step, vid: int) -> int:
    for s in step.complex.simplices:
        if len(s) == 1 and step.ancestry[s] == frozenset({vid}):
            return next(iter(s))
    raise InputError(f"vertex {vid} has no image in the subdivision")


def local_index(
    alpha: ConstructibleFunction, v: int, seed: int = 0, max_levels: int = 5
) -> TheoremReport:
    """Stalk value at a vertex against the Morse count in a shrinking tube.

    Counts critical points of |y - v|^2 plus a vanishing seeded tilt inside
    the closed star of v, refining barycentrically until two consecutive
    refinement levels agree.  Work stays local: before each refinement the
    complex is cut down to two closed stars around v, which keeps every
    multiplicity seen by the count exact.
    """
    cx = alpha.complex
    vs = simplex([v])
    if vs not in cx.simplices:
        raise InputError(f"not a vertex of the complex: {v}")
    lhs = alpha.value(vs)
    hyp: list[dict] = [{"check": "vertex", "status": "ok", "vertex": v}]

    star1 = closed_star(cx, [vs])
    star2 = closed_star(cx, star1)
    cx_cur, vmap = induced_complex(cx, star2)
    alpha_cur = _restrict_function(alpha, cx_cur, vmap)
    v_cur = vmap[v]

    levels: list[dict] = []
    prev: int | None = None
    rhs: int | None = None
    for level in range(1, max_levels + 1):
        step = barycentric_subdivide(cx_cur, 1)
        cx_new = step.complex
        alpha_new = transport(alpha_cur, step)
        v_new = _image_vertex(step, v_cur)
        tube = closed_star_of_simplex(cx_new, [v_new])
        center = cx_new.vertices[v_new]
        # a sampled tilt can pair to zero with a star direction for every
        # eta; such seeds are rejected and redrawn, as in the global count
        value = None
        failure = "none"
        for attempt in range(6):
            schedule = PerturbationSchedule.from_seed(
                seed + level - 1 + 9973 * attempt, cx.ambient_dim, center=center
            )
            try:
                value, rep = stabilized_count(
                    alpha_new, squared_distance_from(center), schedule, tube
                )
            except (BoundaryCollisionError, NonConvergenceError) as exc:
                failure = type(exc).__name__
                continue
            break
        if value is None:
            levels.append({"level": level, "status": failure, "value": None})
            prev = None
        else:
            levels.append({"level": level, "status": "stable", "value": value})
            if prev is not None and prev == value:
                rhs = value
                break
            prev = value
        inner1 = closed_star(cx_new, [simplex([v_new])])
        inner2 = closed_star(cx_new, inner1)
        cx_cur, vmap2 = induced_complex(cx_new, inner2)
        alpha_cur = _restrict_function(alpha_new, cx_cur, vmap2)
        v_cur = vmap2[v_new]
    if rhs is None:
        raise NonConvergenceError(
            "refinement levels never produced two consecutive equal counts",
            trace=tuple(levels),
        )
    hyp.append(
        {"check": "radius-stabilization", "status": "ok", "levels_used": len(levels)}
    )
    artifacts = {"vertex": v, "levels": tuple(levels)}
    return TheoremReport("local-index", lhs, rhs, lhs == rhs, tuple(hyp), artifacts)


def _lambda_sign_ok(lam: Fraction, side: str) -> bool:
    return lam >= 0 if side == "shriek" else lam <= 0


def _decomposable(
    cc_alpha: CharacteristicCycle,
    Sp: StratumRef,
    xi: Vec,
    dg: Vec,
    side: str,
) -> bool:
    """Does xi split as omega + lambda*dg with omega in the base support?

    lambda is sign-constrained by the side.  For each stratum over the base
    point, conormality of omega(lambda) either pins lambda to one value or
    allows a full ray; on a ray the weak sign pattern of omega(lambda) at the
    star vertices is piecewise constant in lambda, so testing every
    breakpoint, midpoint, endpoint and one point beyond the last breakpoint
    decides membership exactly.
    """
    cx = cc_alpha.complex
    for s2 in [Sp.simplex] + list(cx.strict_cofaces(Sp.simplex)):
        S2 = cx.stratum(s2)
        forced: Fraction | None = None
        compatible = True
        for d in S2.direction_basis:
            a = dg.dot(d)
            b = xi.dot(d)
            if a == 0:
                if b != 0:
                    compatible = False
                    break
            else:
                lam0 = b / a
                if forced is None:
                    forced = lam0
                elif forced != lam0:
                    compatible = False
                    break
        if not compatible:
            continue
        if forced is not None:
            if _lambda_sign_ok(forced, side) and cc_alpha.closure_supports(
                S2, xi - dg.scale(forced)
            ):
                return True
            continue
        b2 = S2.barycenter
        candidates = {Fraction(0)}
        for p in star_vertex_ids(cx, s2):
            dvec = cx.vertices[p] - b2
            a = dg.dot(dvec)
            if a != 0:
                lam_p = xi.dot(dvec) / a
                if _lambda_sign_ok(lam_p, side):
                    candidates.add(lam_p)
        ordered = sorted(candidates)
        tests = list(ordered)
        for left, right in zip(ordered, ordered[1:]):
            tests.append((left + right) / 2)
        if side == "shriek":
            tests.append(ordered[-1] + 1)
        else:
            tests.append(ordered[0] - 1)
        for lam in tests:
            if cc_alpha.closure_supports(S2, xi - dg.scale(lam)):
                return True
    return False


def boundary_estimate_check(
    alpha: ConstructibleFunction,
    g: AffineFunction,
    delta,
    side: str,
    cc_alpha: CharacteristicCycle | None = None,
) -> TheoremReport:
    """Support estimate for the cut-open extension along one level of g.

    After subdividing along {g = delta}, beta is the open-side extension
    (shriek keeps the open lower side as is; star is its Verdier conjugate).
    Every nonzero chamber of CC(beta) over a level stratum must decompose at
    its witnesses as a base-support covector plus lambda*dg with lambda >= 0
    (shriek) or <= 0 (star).  Violations are counted and carried as exact
    witnesses; the check holds when there are none.
    """
    cx = alpha.complex
    delta = rat(delta)
    if side not in ("shriek", "star"):
        raise InputError(f"side must be 'shriek' or 'star', got {side!r}")
    if g.dim != cx.ambient_dim:
        raise InputError("cut function dimension does not match the complex")
    used = sorted({i for s in cx.simplices for i in s})
    hit = [i for i in used if cx.vertex_value(g, i) == delta]
    if hit:
        raise TransversalityError(
            "cut level passes through vertices of the complex",
            witness={"vertices": hit, "delta": delta},
        )
    hyp: list[dict] = [{"check": "transversality", "status": "ok"}]

    sub = subdivide_along_hyperplane(cx, g, delta)
    cx2 = sub.complex
    alpha2 = transport(alpha, sub)
    if side == "shriek":
        beta = jshriek_extend(alpha2, g, delta, "below")
    else:
        beta = jstar_extend(alpha2, g, delta, "below")
    cc_beta = CharacteristicCycle(beta)
    if cc_alpha is None or cc_alpha.complex is not cx2:
        cc_alpha = CharacteristicCycle(alpha2)
    level = sorted(side_partition(cx2, g, delta)[0], key=sort_key)
    hyp.append({"check": "level-subdivision", "status": "ok", "level_strata": len(level)})

    dg = g.linear
    violations: list[dict] = []
    witnesses_checked = 0
    for s in level:
        S = cx2.stratum(s)
        for chamber, m in cc_beta.nonzero_chambers(s):
            for xi in chamber_witnesses(cx2, chamber, 2):
                witnesses_checked += 1
                if not _decomposable(cc_alpha, S, xi, dg, side):
                    violations.append(
                        {
                            "stratum": tuple(sorted(s)),
                            "sign_vector": chamber.sign_vector,
                            "witness": tuple(xi),
                            "multiplicity": m,
                        }
                    )
    hyp.append(
        {
            "check": "chamber-decompositions",
            "status": "ok",
            "witnesses_checked": witnesses_checked,
        }
    )
    artifacts = {
        "side": side,
        "delta": delta,
        "level_strata": len(level),
        "witnesses_checked": witnesses_checked,
        "violations": tuple(violations),
    }
    return TheoremReport(
        "boundary-estimate",
        len(violations),
        0,
        not violations,
        tuple(hyp),
        artifacts,
    )
