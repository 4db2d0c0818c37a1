"""Affine and affine-plus-quadratic test functions with exact gradients."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import InputError
from .linalg import SymMatrix, Vec, rat


@dataclass(frozen=True)
class AffineFunction:
    """f(y) = linear . y + constant."""

    linear: Vec
    constant: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "constant", rat(self.constant))

    @property
    def dim(self) -> int:
        return self.linear.dim

    def value(self, y: Vec) -> Fraction:
        return self.linear.dot(y) + self.constant

    def gradient(self, y: Vec) -> Vec:
        return self.linear

    def is_constant(self) -> bool:
        return self.linear.is_zero()


@dataclass(frozen=True)
class QuadAffineFunction:
    """f(y) = y^T Q y + linear . y + constant, gradient 2Qy + linear."""

    linear: Vec
    constant: Fraction = Fraction(0)
    quad: SymMatrix | None = None

    def __post_init__(self):
        object.__setattr__(self, "constant", rat(self.constant))
        if self.quad is not None and self.quad.n != self.linear.dim:
            raise InputError("quadratic part dimension mismatch")

    @staticmethod
    def from_affine(f: AffineFunction) -> "QuadAffineFunction":
        return QuadAffineFunction(f.linear, f.constant, None)

    @property
    def dim(self) -> int:
        return self.linear.dim

    def value(self, y: Vec) -> Fraction:
        v = self.linear.dot(y) + self.constant
        if self.quad is not None:
            v += self.quad.quad_form(y)
        return v

    def gradient(self, y: Vec) -> Vec:
        if self.quad is None:
            return self.linear
        return self.linear + self.quad.apply(y).scale(2)

    def hessian(self) -> SymMatrix:
        if self.quad is None:
            return SymMatrix.zero(self.dim)
        return self.quad.scale(2)

    def add(self, other: "QuadAffineFunction") -> "QuadAffineFunction":
        if self.dim != other.dim:
            raise InputError("function dimension mismatch")
        if self.quad is None and other.quad is None:
            quad = None
        else:
            a = self.quad if self.quad is not None else SymMatrix.zero(self.dim)
            b = other.quad if other.quad is not None else SymMatrix.zero(self.dim)
            quad = a.add(b)
        return QuadAffineFunction(self.linear + other.linear, self.constant + other.constant, quad)

    def scale(self, c) -> "QuadAffineFunction":
        c = rat(c)
        return QuadAffineFunction(
            self.linear.scale(c),
            self.constant * c,
            None if self.quad is None else self.quad.scale(c),
        )


def squared_distance_from(center: Vec) -> QuadAffineFunction:
    """|y - center|^2 as an exact quadratic-affine function."""
    return QuadAffineFunction(center.scale(-2), center.norm_sq(), SymMatrix.identity(center.dim))
