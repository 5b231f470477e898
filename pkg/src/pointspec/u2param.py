"""Points of the U(2) family of self-adjoint boundary conditions.

A single point interaction on a circle of circumference l (equivalently a box
[0, l] with walls coupled through the junction) is fixed by a unitary 2x2
matrix U acting on the boundary data

    (U - I) Psi + i L0 (U + I) Psi' = 0,
    Psi  = (psi(0), psi(l)),
    Psi' = (psi'(0), -psi'(l)),

with L0 a fixed reference length.  U is stored in the unique form

    U = exp(i xi) [[alpha, beta], [-conj(beta), conj(alpha)]],

with xi in [0, pi) and |alpha|^2 + |beta|^2 = 1.  This module validates such
points, classifies them into the physically distinguished subfamilies, and
converts separated (diagonal) points to their two Robin wall lengths.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .errors import ConstraintError, SubfamilyError

__all__ = [
    "INFINITE_LENGTH",
    "InfiniteLength",
    "U2Params",
    "SubfamilyFlags",
    "SeparatedLengths",
    "make_u2",
    "to_matrix",
    "classify",
    "separated_lengths",
    "twist_angle",
]

#: default absolute tolerance on each defining subfamily equation
CLASSIFY_TOL = 1e-9

_UNIT_NORM_TOL = 1e-12


class InfiniteLength:
    """Tagged stand-in for an infinite Robin length (a pure Neumann wall).

    A dedicated singleton rather than float('inf') so that boundary-condition
    assembly can branch on the wall type exactly.
    """

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "INFINITE_LENGTH"


INFINITE_LENGTH = InfiniteLength()


def is_infinite(value) -> bool:
    """True when `value` is the tagged infinite length."""
    return isinstance(value, InfiniteLength)


@dataclass(frozen=True)
class U2Params:
    """One boundary-condition point: (xi, alpha, beta) plus the length L0.

    Invariants (enforced on construction):
      * |alpha|^2 + |beta|^2 = 1 within 1e-12,
      * xi in [0, pi),
      * L0 > 0.
    """

    xi: float
    alpha: complex
    beta: complex
    L0: float = 1.0

    def __post_init__(self):
        norm2 = abs(self.alpha) ** 2 + abs(self.beta) ** 2
        if abs(norm2 - 1.0) > _UNIT_NORM_TOL:
            raise ConstraintError(
                f"|alpha|^2 + |beta|^2 = {norm2!r} is not 1 within {_UNIT_NORM_TOL}"
            )
        if not (0.0 <= self.xi < math.pi):
            raise ConstraintError(f"xi = {self.xi!r} outside [0, pi)")
        if not self.L0 > 0.0:
            raise ConstraintError(f"L0 = {self.L0!r} must be strictly positive")

    @property
    def alpha_re(self) -> float:
        return self.alpha.real

    @property
    def alpha_im(self) -> float:
        return self.alpha.imag

    @property
    def beta_re(self) -> float:
        return self.beta.real

    @property
    def beta_im(self) -> float:
        return self.beta.imag


@dataclass(frozen=True)
class SubfamilyFlags:
    """Membership of one point in the named subfamilies.

    separated        diagonal U: independent Robin conditions at each wall
    scale_invariant  U has eigenvalues +1 and -1; L0 drops out entirely
    smooth_circle    translation-invariant circle with a twist phase
                     (subset of scale_invariant)
    isospectral      xi = 0, Im(beta) = 0: the spectrum is the Dirichlet one
                     for every point of this sphere
    semi_iso_plus    sin(xi) = +Im(beta): equidistant odd levels interlaced
                     with transcendental ones
    semi_iso_minus   sin(xi) = -Im(beta): even-level analogue
    """

    separated: bool
    scale_invariant: bool
    smooth_circle: bool
    isospectral: bool
    semi_iso_plus: bool
    semi_iso_minus: bool


@dataclass(frozen=True)
class SeparatedLengths:
    """Robin lengths (L+, L-) of a separated point.

    The decoupled wall conditions read, in terms of the inward derivative at
    each wall (+psi'(0) on the left, -psi'(l) on the right),

        psi(0) + l_plus  * psi'(0) = 0,
        psi(l) - l_minus * psi'(l) = 0.

    Each length is a finite float or INFINITE_LENGTH.  phi is the phase of
    alpha; phi_plus/phi_minus are the wall angles (xi +- phi)/2 with
    L(+-) = L0 * cot(phi(+-)).
    """

    l_plus: object
    l_minus: object
    phi: float
    phi_plus: float
    phi_minus: float


def make_u2(xi: float, alpha: complex, beta: complex, L0: float = 1.0) -> U2Params:
    """Validate and build a boundary point.

    No normal-form reduction is attempted: the inputs must already satisfy
    the unit-norm and range invariants, otherwise ConstraintError is raised.
    """
    return U2Params(float(xi), complex(alpha), complex(beta), float(L0))


def to_matrix(p: U2Params) -> np.ndarray:
    """The unitary matrix exp(i xi) [[alpha, beta], [-beta*, alpha*]]."""
    ph = cmath.exp(1j * p.xi)
    return ph * np.array(
        [[p.alpha, p.beta], [-p.beta.conjugate(), p.alpha.conjugate()]],
        dtype=complex,
    )


def classify(p: U2Params, tol: float = CLASSIFY_TOL) -> SubfamilyFlags:
    """Evaluate every subfamily's defining equations within `tol`.

    The scale-invariant family is tested in parameter form (xi = pi/2 and
    Re(alpha) = 0), which is equivalent to det(U - I) = det(U + I) = 0.
    """
    a_r, a_i = p.alpha.real, p.alpha.imag
    b_r, b_i = p.beta.real, p.beta.imag
    sep = abs(b_r) <= tol and abs(b_i) <= tol
    scale_inv = abs(p.xi - math.pi / 2) <= tol and abs(a_r) <= tol
    smooth = scale_inv and abs(a_i) <= tol
    iso = abs(p.xi) <= tol and abs(b_i) <= tol
    s = math.sin(p.xi)
    return SubfamilyFlags(
        separated=sep,
        scale_invariant=scale_inv,
        smooth_circle=smooth,
        isospectral=iso,
        semi_iso_plus=abs(s - b_i) <= tol,
        semi_iso_minus=abs(s + b_i) <= tol,
    )


def _cot_length(phi: float, L0: float):
    """L0 * cot(phi) with exact snapping to 0 and to the tagged infinity."""
    s, c = math.sin(phi), math.cos(phi)
    if abs(s) < 1e-12:
        return INFINITE_LENGTH
    if abs(c) < 1e-12:
        return 0.0
    return L0 * c / s


def separated_lengths(p: U2Params, tol: float = CLASSIFY_TOL) -> SeparatedLengths:
    """Robin lengths of a separated (diagonal-U) point.

    With alpha = exp(i phi), the two walls decouple into independent Robin
    conditions with lengths L(+-) = L0 cot((xi +- phi)/2), each acting on the
    inward derivative at its wall (see SeparatedLengths).  Raises
    SubfamilyError when beta is not zero within `tol`.
    """
    if not classify(p, tol).separated:
        raise SubfamilyError(
            f"point is not separated: beta = {p.beta!r} is nonzero beyond {tol}"
        )
    phi = math.atan2(p.alpha.imag, p.alpha.real) % (2.0 * math.pi)
    phi_p = 0.5 * (p.xi + phi)
    phi_m = 0.5 * (p.xi - phi)
    return SeparatedLengths(
        l_plus=_cot_length(phi_p, p.L0),
        l_minus=_cot_length(phi_m, p.L0),
        phi=phi,
        phi_plus=phi_p,
        phi_minus=phi_m,
    )


def twist_angle(p: U2Params, tol: float = CLASSIFY_TOL) -> float:
    """Spectral angle theta = arccos(-Im beta) of a scale-invariant point.

    theta in [0, pi] alone fixes the spectrum of the whole scale-invariant
    sphere; on the smooth-circle subfamily it is the phase a wavefunction
    picks up once around the circle.
    """
    if not classify(p, tol).scale_invariant:
        raise SubfamilyError("twist angle is defined only on the scale-invariant sphere")
    return math.acos(min(1.0, max(-1.0, -p.beta.imag)))
