"""Exact rational linear algebra.

Everything here is built on `fractions.Fraction`; no floating point enters at
any stage.  The three workhorses are `solve_affine` (exact affine solve with a
parametrized solution set), `inertia` (signature of a symmetric form by
congruence), and `strict_feasibility` (Fourier-Motzkin decision procedure for
mixed strict/weak linear systems, with an exact interior witness and the
dimension of the feasible set).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, NamedTuple, Sequence

from .errors import InputError

Rational = Fraction


def rat(value) -> Fraction:
    """Coerce ints, Fractions, and 'p/q' strings to Fraction.

    Floats are rejected: exactness is a hard invariant of this package.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value)
        except (ValueError, ZeroDivisionError) as exc:
            raise InputError(f"malformed rational {value!r}: {exc}") from exc
    raise InputError(f"not an exact rational: {value!r} ({type(value).__name__})")


def format_rational(q: Fraction) -> str:
    """Serialize as 'p' or 'p/q' with positive denominator."""
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


@dataclass(frozen=True)
class Vec:
    """Immutable rational vector."""

    entries: tuple[Fraction, ...]

    @staticmethod
    def of(*values) -> "Vec":
        return Vec(tuple(rat(v) for v in values))

    @staticmethod
    def from_seq(values: Iterable) -> "Vec":
        return Vec(tuple(rat(v) for v in values))

    @staticmethod
    def zero(dim: int) -> "Vec":
        return Vec((Fraction(0),) * dim)

    @staticmethod
    def unit(dim: int, i: int) -> "Vec":
        return Vec(tuple(Fraction(1 if j == i else 0) for j in range(dim)))

    @property
    def dim(self) -> int:
        return len(self.entries)

    def __add__(self, other: "Vec") -> "Vec":
        self._check_dim(other)
        return Vec(tuple(a + b for a, b in zip(self.entries, other.entries)))

    def __sub__(self, other: "Vec") -> "Vec":
        self._check_dim(other)
        return Vec(tuple(a - b for a, b in zip(self.entries, other.entries)))

    def scale(self, c) -> "Vec":
        c = rat(c)
        return Vec(tuple(c * a for a in self.entries))

    def dot(self, other: "Vec") -> Fraction:
        self._check_dim(other)
        return sum((a * b for a, b in zip(self.entries, other.entries)), Fraction(0))

    def norm_sq(self) -> Fraction:
        return self.dot(self)

    def is_zero(self) -> bool:
        return all(a == 0 for a in self.entries)

    def _check_dim(self, other: "Vec") -> None:
        if self.dim != other.dim:
            raise InputError(f"dimension mismatch: {self.dim} vs {other.dim}")

    def __getitem__(self, i: int) -> Fraction:
        return self.entries[i]

    def __iter__(self):
        return iter(self.entries)

    def __repr__(self) -> str:
        return "Vec(" + ", ".join(format_rational(a) for a in self.entries) + ")"


@dataclass(frozen=True)
class SymMatrix:
    """Symmetric rational matrix."""

    rows: tuple[tuple[Fraction, ...], ...]

    @staticmethod
    def from_rows(rows: Sequence[Sequence]) -> "SymMatrix":
        data = tuple(tuple(rat(v) for v in row) for row in rows)
        n = len(data)
        for row in data:
            if len(row) != n:
                raise InputError("symmetric matrix must be square")
        for i in range(n):
            for j in range(i):
                if data[i][j] != data[j][i]:
                    raise InputError(f"matrix not symmetric at ({i},{j})")
        return SymMatrix(data)

    @staticmethod
    def identity(n: int) -> "SymMatrix":
        return SymMatrix(
            tuple(tuple(Fraction(1 if i == j else 0) for j in range(n)) for i in range(n))
        )

    @staticmethod
    def zero(n: int) -> "SymMatrix":
        return SymMatrix(tuple((Fraction(0),) * n for _ in range(n)))

    @property
    def n(self) -> int:
        return len(self.rows)

    def apply(self, v: Vec) -> Vec:
        if v.dim != self.n:
            raise InputError("matrix/vector dimension mismatch")
        return Vec(tuple(sum((r[j] * v[j] for j in range(self.n)), Fraction(0)) for r in self.rows))

    def quad_form(self, v: Vec) -> Fraction:
        return v.dot(self.apply(v))

    def scale(self, c) -> "SymMatrix":
        c = rat(c)
        return SymMatrix(tuple(tuple(c * x for x in row) for row in self.rows))

    def add(self, other: "SymMatrix") -> "SymMatrix":
        if self.n != other.n:
            raise InputError("matrix dimension mismatch")
        return SymMatrix(
            tuple(
                tuple(a + b for a, b in zip(r1, r2)) for r1, r2 in zip(self.rows, other.rows)
            )
        )

    def restrict(self, basis: Sequence[Vec]) -> "SymMatrix":
        """Pull back along the linear map sending e_i to basis[i]: B^T A B."""
        images = [self.apply(b) for b in basis]
        return SymMatrix(
            tuple(tuple(basis[i].dot(images[j]) for j in range(len(basis))) for i in range(len(basis)))
        )

    def is_zero(self) -> bool:
        return all(x == 0 for row in self.rows for x in row)


class Inertia(NamedTuple):
    n_pos: int
    n_neg: int
    n_zero: int


@dataclass(frozen=True)
class AffineSubspace:
    """Solution set {point + span(basis)} of an affine system."""

    point: Vec
    basis: tuple[Vec, ...]

    @property
    def dim(self) -> int:
        return len(self.basis)


def _rref(matrix: list[list[Fraction]]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form in place; returns (matrix, pivot column list)."""
    rows = len(matrix)
    cols = len(matrix[0]) if rows else 0
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        pivot_row = None
        for i in range(r, rows):
            if matrix[i][c] != 0:
                pivot_row = i
                break
        if pivot_row is None:
            continue
        matrix[r], matrix[pivot_row] = matrix[pivot_row], matrix[r]
        inv = Fraction(1) / matrix[r][c]
        matrix[r] = [x * inv for x in matrix[r]]
        for i in range(rows):
            if i != r and matrix[i][c] != 0:
                factor = matrix[i][c]
                matrix[i] = [a - factor * b for a, b in zip(matrix[i], matrix[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return matrix, pivots


def matrix_rank(rows: Sequence[Vec]) -> int:
    if not rows:
        return 0
    work = [list(v.entries) for v in rows]
    _, pivots = _rref(work)
    return len(pivots)


def solve_affine(equations: Sequence[tuple[Vec, Fraction]], dim: int) -> AffineSubspace | None:
    """Solve {a_i . x = c_i} exactly.

    Returns the full solution set as a basepoint plus a basis of the homogeneous
    kernel, or None when inconsistent.  `dim` is the number of unknowns; it must
    be given explicitly so the empty system is well defined.
    """
    for a, _ in equations:
        if a.dim != dim:
            raise InputError("equation dimension mismatch")
    if not equations:
        return AffineSubspace(Vec.zero(dim), tuple(Vec.unit(dim, i) for i in range(dim)))
    aug = [list(a.entries) + [rat(c)] for a, c in equations]
    reduced, pivots = _rref(aug)
    n_rows = len(pivots)
    for row in reduced[n_rows:]:
        if row[-1] != 0:
            return None
    if dim in pivots:
        return None  # pivot in the constant column: inconsistent
    pivot_set = set(pivots)
    free = [c for c in range(dim) if c not in pivot_set]
    point = [Fraction(0)] * dim
    for i, c in enumerate(pivots):
        point[c] = reduced[i][-1]
    basis = []
    for f in free:
        direction = [Fraction(0)] * dim
        direction[f] = Fraction(1)
        for i, c in enumerate(pivots):
            direction[c] = -reduced[i][f]
        basis.append(Vec(tuple(direction)))
    return AffineSubspace(Vec(tuple(point)), tuple(basis))


def orthogonal_complement(vectors: Sequence[Vec], dim: int) -> tuple[Vec, ...]:
    """Basis of {x : x . v = 0 for all given v} w.r.t. the standard inner product.

    The input vectors must be linearly independent (exact rank check), matching
    the direction-basis use sites; the empty input yields the standard basis.
    """
    for v in vectors:
        if v.dim != dim:
            raise InputError("vector dimension mismatch")
    if vectors and matrix_rank(vectors) != len(vectors):
        raise InputError("orthogonal_complement requires independent input vectors")
    sol = solve_affine([(v, Fraction(0)) for v in vectors], dim)
    assert sol is not None  # homogeneous system is always consistent
    return sol.basis


def inertia(matrix: SymMatrix) -> Inertia:
    """Signature (n_pos, n_neg, n_zero) by exact congruence diagonalization.

    Sylvester's law makes the triple invariant under A -> B^T A B for
    invertible B, which is the property the tests pin down.
    """
    n = matrix.n
    work = [list(row) for row in matrix.rows]
    n_pos = n_neg = n_zero = 0
    idx = list(range(n))
    start = 0
    while start < n:
        pivot = None
        for i in range(start, n):
            if work[idx[i]][idx[i]] != 0:
                pivot = i
                break
        if pivot is None:
            off = None
            for i in range(start, n):
                for j in range(i + 1, n):
                    if work[idx[i]][idx[j]] != 0:
                        off = (i, j)
                        break
                if off:
                    break
            if off is None:
                n_zero += n - start
                break
            i, j = off
            ri, rj = idx[i], idx[j]
            # congruence by adding row/col j to row/col i makes the diagonal nonzero
            for k in range(n):
                work[ri][k] += work[rj][k]
            for k in range(n):
                work[k][ri] += work[k][rj]
            pivot = i
        idx[start], idx[pivot] = idx[pivot], idx[start]
        p = idx[start]
        d = work[p][p]
        if d > 0:
            n_pos += 1
        else:
            n_neg += 1
        for i2 in range(start + 1, n):
            q = idx[i2]
            if work[q][p] != 0:
                factor = work[q][p] / d
                for k in range(n):
                    work[q][k] -= factor * work[p][k]
                for k in range(n):
                    work[k][q] -= factor * work[k][p]
        start += 1
    return Inertia(n_pos, n_neg, n_zero)


class FeasibilityResult(NamedTuple):
    feasible: bool
    witness: Vec | None
    dim: int  # dimension of the feasible set; -1 when infeasible


# Internal constraint form: coeffs . t  (>|>=)  rhs
_Con = tuple[tuple[Fraction, ...], Fraction, bool]  # (coeffs, rhs, strict)


def _normalize_con(con: _Con) -> _Con:
    coeffs, rhs, strict = con
    lead = next((abs(c) for c in coeffs if c != 0), None)
    if lead is None:
        return con
    inv = Fraction(1) / lead
    return (tuple(c * inv for c in coeffs), rhs * inv, strict)


def _fm_feasible(constraints: list[_Con], k: int) -> Vec | None:
    """Fourier-Motzkin over R^k; returns a witness or None.

    Strictness is tracked through eliminations: a combined bound is strict when
    either parent is strict.
    """
    cons = [_normalize_con(c) for c in constraints]
    levels: list[list[_Con]] = []
    for var in range(k - 1, -1, -1):
        deduped: list[_Con] = []
        seen: set[_Con] = set()
        for c in cons:
            if c not in seen:
                seen.add(c)
                deduped.append(c)
        cons = deduped
        levels.append(cons)
        lowers, uppers, rest = [], [], []
        for coeffs, rhs, strict in cons:
            a = coeffs[var]
            if a > 0:
                lowers.append((coeffs, rhs, strict))
            elif a < 0:
                uppers.append((coeffs, rhs, strict))
            else:
                rest.append((coeffs, rhs, strict))
        new = list(rest)
        for lc, lr, ls in lowers:
            la = lc[var]
            for uc, ur, us in uppers:
                ua = uc[var]
                # eliminate var from la*var >= lr - ... and ua*var >= ur - ... (ua < 0)
                coeffs = tuple(lc[i] * (-ua) + uc[i] * la for i in range(k))
                rhs = lr * (-ua) + ur * la
                new.append(_normalize_con((coeffs, rhs, ls or us)))
        cons = new
    for coeffs, rhs, strict in cons:
        assert all(c == 0 for c in coeffs)
        if strict:
            if not rhs < 0:
                return None
        else:
            if not rhs <= 0:
                return None
    # back-substitute, outermost variable first
    values: list[Fraction] = [Fraction(0)] * k
    for var in range(k):
        level = levels[k - 1 - var]
        lo: Fraction | None = None
        lo_strict = False
        hi: Fraction | None = None
        hi_strict = False
        for coeffs, rhs, strict in level:
            a = coeffs[var]
            if a == 0:
                continue
            # this level still contains vars 0..var; earlier ones are assigned
            bound = rhs - sum(
                (coeffs[i] * values[i] for i in range(var)), Fraction(0)
            )
            bound = bound / a
            if a > 0:
                if lo is None or bound > lo:
                    lo, lo_strict = bound, strict
                elif bound == lo:
                    lo_strict = lo_strict or strict
            else:
                if hi is None or bound < hi:
                    hi, hi_strict = bound, strict
                elif bound == hi:
                    hi_strict = hi_strict or strict
        if lo is not None and hi is not None:
            # feasible FM guarantees lo <= hi, with lo < hi whenever either is strict
            if lo == hi and (lo_strict or hi_strict):
                raise AssertionError("inconsistent bounds after feasible elimination")
            values[var] = lo if lo == hi else (lo + hi) / 2
        elif lo is not None:
            values[var] = lo + 1 if lo_strict else lo
        elif hi is not None:
            values[var] = hi - 1 if hi_strict else hi
        else:
            values[var] = Fraction(0)
    for coeffs, rhs, strict in levels[0]:
        total = sum((coeffs[i] * values[i] for i in range(k)), Fraction(0))
        assert total > rhs if strict else total >= rhs, "witness fails a constraint"
    return Vec(tuple(values))


def strict_feasibility(
    equalities: Sequence[tuple[Vec, Fraction]],
    strict_inequalities: Sequence[tuple[Vec, Fraction]],
    weak_inequalities: Sequence[tuple[Vec, Fraction]],
    dim: int,
) -> FeasibilityResult:
    """Decide {a.x = c} & {a.x > c} & {a.x >= c} exactly.

    Returns (feasible, witness, dim of the feasible set).  The witness
    satisfies every strict constraint strictly; the dimension is that of the
    affine hull of the feasible set (-1 when infeasible).  Weak constraints
    that hold with equality on the whole feasible set are detected by repeated
    feasibility probes, which is exact if slow; call sites keep systems small.
    """
    sol = solve_affine(list(equalities), dim)
    if sol is None:
        return FeasibilityResult(False, None, -1)
    k = sol.dim
    point, basis = sol.point, sol.basis

    def reduce(ineqs: Sequence[tuple[Vec, Fraction]], strict: bool) -> list[_Con] | None:
        out: list[_Con] = []
        for a, c in ineqs:
            if a.dim != dim:
                raise InputError("inequality dimension mismatch")
            c = rat(c)
            coeffs = tuple(a.dot(b) for b in basis)
            rhs = c - a.dot(point)
            if all(x == 0 for x in coeffs):
                if strict:
                    if not rhs < 0:
                        return None
                else:
                    if not rhs <= 0:
                        return None
                continue
            out.append((coeffs, rhs, strict))
        return out

    strict_cons = reduce(strict_inequalities, True)
    weak_cons = reduce(weak_inequalities, False)
    if strict_cons is None or weak_cons is None:
        return FeasibilityResult(False, None, -1)

    def embed(t: Vec) -> Vec:
        x = point
        for coeff, b in zip(t.entries, basis):
            x = x + b.scale(coeff)
        return x

    if k == 0:
        return FeasibilityResult(True, point, 0)

    witness_t = _fm_feasible(strict_cons + weak_cons, k)
    if witness_t is None:
        return FeasibilityResult(False, None, -1)
    if not weak_cons:
        return FeasibilityResult(True, embed(witness_t), k)

    implicit_normals: list[Vec] = []
    probes: list[Vec] = []
    for i, (coeffs, rhs, _) in enumerate(weak_cons):
        others = strict_cons + [w for j, w in enumerate(weak_cons) if j != i]
        probe = _fm_feasible(others + [(coeffs, rhs, True)], k)
        if probe is None:
            implicit_normals.append(Vec(coeffs))
        else:
            probes.append(probe)
    if probes:
        # average of the probes is strictly inside every non-implicit constraint
        acc = Vec.zero(k)
        for p in probes:
            acc = acc + p
        interior_t = acc.scale(Fraction(1, len(probes)))
    else:
        interior_t = witness_t
    rank = matrix_rank(implicit_normals)
    return FeasibilityResult(True, embed(interior_t), k - rank)
