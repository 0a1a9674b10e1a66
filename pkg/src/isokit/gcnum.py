"""Dual and Lorentz (hyperbolic) numbers and the plane rotations they generate.

A dual number is ``re + im*eps`` with ``eps**2 == 0``; a Lorentz number is
``re + im*ell`` with ``ell**2 == 1``.  Unit duals ``1 + phi*eps`` act on the
isotropic plane as Galilean rotations, unit spacelike Lorentz numbers
``cosh(phi) + ell*sinh(phi)`` act on the Minkowski plane as boosts.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np


def cosg(phi: float) -> float:
    """Galilean cosine; identically one."""
    return 1.0


def sing(phi: float) -> float:
    """Galilean sine; the identity map."""
    return float(phi)


def _coerce(value, cls):
    if isinstance(value, cls):
        return value
    if isinstance(value, (int, float, np.floating, np.integer)):
        return cls(float(value), 0.0)
    return NotImplemented


@dataclass(frozen=True)
class DualNumber:
    re: float
    im: float = 0.0

    @classmethod
    def unit(cls, phi: float) -> "DualNumber":
        """Unit dual ``cosg(phi) + eps*sing(phi)``."""
        return cls(cosg(phi), sing(phi))

    def __add__(self, other):
        other = _coerce(other, DualNumber)
        if other is NotImplemented:
            return other
        return DualNumber(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __neg__(self):
        return DualNumber(-self.re, -self.im)

    def __sub__(self, other):
        other = _coerce(other, DualNumber)
        if other is NotImplemented:
            return other
        return DualNumber(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = _coerce(other, DualNumber)
        if other is NotImplemented:
            return other
        return dual_mul(self, other)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _coerce(other, DualNumber)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def conjugate(self) -> "DualNumber":
        return DualNumber(self.re, -self.im)

    def inverse(self) -> "DualNumber":
        if self.re == 0.0:
            raise ZeroDivisionError("dual number with zero real part is a zero divisor")
        return DualNumber(1.0 / self.re, -self.im / (self.re * self.re))

    def seminorm(self) -> float:
        return abs(self.re)

    def is_zero_divisor(self, eps: float = 0.0) -> bool:
        return abs(self.re) <= eps

    def angle(self) -> float:
        """Galilean angle ``im/re`` of a dual with non-zero real part."""
        return self.im / self.re

    def matrix(self) -> np.ndarray:
        return np.array([[self.re, 0.0], [self.im, self.re]])

    @classmethod
    def from_matrix(cls, m) -> "DualNumber":
        m = np.asarray(m, dtype=float)
        return cls(float(m[0, 0]), float(m[1, 0]))

    def to_json(self) -> dict:
        return {"re": self.re, "im": self.im}

    @classmethod
    def from_json(cls, data) -> "DualNumber":
        return cls(float(data["re"]), float(data["im"]))

    def __repr__(self):
        return f"DualNumber({self.re!r} + {self.im!r}ε)"


@dataclass(frozen=True)
class LorentzNumber:
    re: float
    im: float = 0.0

    @classmethod
    def from_lightcone(cls, plus: float, minus: float) -> "LorentzNumber":
        """Build ``plus*e_plus + minus*e_minus`` with ``e_pm = (1 ± ell)/2``."""
        return cls(0.5 * (plus + minus), 0.5 * (plus - minus))

    @classmethod
    def unit(cls, phi: float) -> "LorentzNumber":
        """Unit spacelike number ``cosh(phi) + ell*sinh(phi)``."""
        return cls(math.cosh(phi), math.sinh(phi))

    @property
    def plus(self) -> float:
        return self.re + self.im

    @property
    def minus(self) -> float:
        return self.re - self.im

    def __add__(self, other):
        other = _coerce(other, LorentzNumber)
        if other is NotImplemented:
            return other
        return LorentzNumber(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __neg__(self):
        return LorentzNumber(-self.re, -self.im)

    def __sub__(self, other):
        other = _coerce(other, LorentzNumber)
        if other is NotImplemented:
            return other
        return LorentzNumber(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = _coerce(other, LorentzNumber)
        if other is NotImplemented:
            return other
        return lorentz_mul(self, other)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _coerce(other, LorentzNumber)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def conjugate(self) -> "LorentzNumber":
        return LorentzNumber(self.re, -self.im)

    def quadratic_form(self) -> float:
        """``p * conj(p)``, equal to ``re**2 - im**2 == plus*minus``."""
        return self.re * self.re - self.im * self.im

    def inverse(self) -> "LorentzNumber":
        q = self.quadratic_form()
        if q == 0.0:
            raise ZeroDivisionError("Lorentz number on the light cone is a zero divisor")
        return LorentzNumber(self.re / q, -self.im / q)

    def is_zero_divisor(self, eps: float = 0.0) -> bool:
        return abs(self.plus) <= eps or abs(self.minus) <= eps

    def matrix(self) -> np.ndarray:
        return np.array([[self.re, self.im], [self.im, self.re]])

    def lightcone_matrix(self) -> np.ndarray:
        return np.array([[self.plus, 0.0], [0.0, self.minus]])

    @classmethod
    def from_matrix(cls, m) -> "LorentzNumber":
        m = np.asarray(m, dtype=float)
        return cls(float(m[0, 0]), float(m[1, 0]))

    def to_json(self) -> dict:
        return {"re": self.re, "im": self.im}

    @classmethod
    def from_json(cls, data) -> "LorentzNumber":
        return cls(float(data["re"]), float(data["im"]))

    def __repr__(self):
        return f"LorentzNumber({self.re!r} + {self.im!r}ℓ)"


def dual_mul(p: DualNumber, q: DualNumber) -> DualNumber:
    return DualNumber(p.re * q.re, p.re * q.im + q.re * p.im)


def lorentz_mul(p: LorentzNumber, q: LorentzNumber) -> LorentzNumber:
    return LorentzNumber(p.re * q.re + p.im * q.im, p.re * q.im + q.re * p.im)


E_PLUS = LorentzNumber(0.5, 0.5)
E_MINUS = LorentzNumber(0.5, -0.5)

# columns map light-cone coordinates (plus, minus) to (re, im)
LIGHTCONE_BASIS = np.array([[0.5, 0.5], [0.5, -0.5]])
_LIGHTCONE_BASIS_INV = np.array([[1.0, 1.0], [1.0, -1.0]])


def galilean_rotation(phi: float) -> np.ndarray:
    """Matrix of multiplication by the unit dual ``1 + phi*eps``; maps (x, y) to (x, phi*x + y)."""
    return np.array([[cosg(phi), 0.0], [sing(phi), cosg(phi)]])


def hyperbolic_rotation(phi: float) -> np.ndarray:
    """Matrix of multiplication by ``cosh(phi) + ell*sinh(phi)``; preserves x**2 - y**2."""
    c, s = math.cosh(phi), math.sinh(phi)
    return np.array([[c, s], [s, c]])


def to_lightcone(m) -> np.ndarray:
    """Conjugate a 2x2 matrix from the {1, ell} basis into the light-cone basis."""
    return _LIGHTCONE_BASIS_INV @ np.asarray(m, dtype=float) @ LIGHTCONE_BASIS


def from_lightcone(m) -> np.ndarray:
    """Inverse of :func:`to_lightcone`."""
    return LIGHTCONE_BASIS @ np.asarray(m, dtype=float) @ _LIGHTCONE_BASIS_INV
