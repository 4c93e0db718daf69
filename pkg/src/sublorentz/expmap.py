"""Closed-form exponentials and logarithms on GL+(2,C).

A matrix A = sum_i z_i e_i with complex coefficients z_0..z_3 over the
Hermitian half-basis satisfies A = (z_0/2) I + N with N^2 = w^2 I, where
w = (1/2) sqrt(z_1^2 + z_2^2 + z_3^2).  Hence

  exp(tA) = e^{z_0 t/2} ( cosh(wt) I + (sinh(wt)/w) (z_1 e_1 + z_2 e_2 + z_3 e_3) )

for any square-root branch (cosh is even, sinh(wt)/w is even in w).  The
product-of-exponentials curve exp(t sum_i a_i e_i) exp(-t sum_{i=4..6} a_i e_i)
has closed-form coefficients handled by `ProductExpParams`.

`exp_series` is an independent scaling-and-squaring Taylor oracle used to
cross-validate every closed form in the test suite.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .algebra import AlgCoords, Mat2C, NotInGLPlusError, basis_matrix, to_coords

# Below this magnitude of w, sinh(wt)/w and sin(wt)/w switch to a 3-term even
# Taylor expansion to avoid cancellation; the switch is continuous in (w, t).
SMALL_W = 1e-8

_E = [basis_matrix(i).m for i in range(8)]


class NotHermitianError(ValueError):
    """Input matrix is not Hermitian within tolerance."""


class NotPositiveDefiniteError(ValueError):
    """Input Hermitian matrix has a non-positive eigenvalue."""


def sinch(w: complex, t: float) -> complex:
    """sinh(w t)/w, continuous through w = 0 (value t there)."""
    if abs(w) < SMALL_W:
        x2 = (w * t) ** 2
        return t * (1.0 + x2 / 6.0 + x2 * x2 / 120.0)
    return cmath.sinh(w * t) / w


def sinc_scaled(w: float, t: float) -> float:
    """sin(w t)/w for real w >= 0, continuous through w = 0 (value t there)."""
    if abs(w) < SMALL_W:
        x2 = (w * t) ** 2
        return t * (1.0 - x2 / 6.0 + x2 * x2 / 120.0)
    return math.sin(w * t) / w


@dataclass(frozen=True, eq=False)
class ComplexAlgVec:
    """Coefficients z0..z3 of A = sum z_i e_i with complex z_i."""

    z: np.ndarray

    def __post_init__(self):
        z = np.asarray(self.z, dtype=complex)
        if z.shape != (4,):
            raise ValueError("expected 4 complex coefficients")
        if not (np.all(np.isfinite(z.real)) and np.all(np.isfinite(z.imag))):
            raise ValueError("coefficients must be finite")
        z = z.copy()
        z.setflags(write=False)
        object.__setattr__(self, "z", z)

    @classmethod
    def from_reals(cls, coeffs) -> "ComplexAlgVec":
        return cls(np.asarray(coeffs, dtype=complex))

    @property
    def w(self) -> complex:
        """Principal branch of (1/2) sqrt(z1^2 + z2^2 + z3^2); results are branch-independent."""
        return 0.5 * cmath.sqrt(complex(self.z[1] ** 2 + self.z[2] ** 2 + self.z[3] ** 2))

    def matrix(self) -> Mat2C:
        return Mat2C(sum(self.z[i] * _E[i] for i in range(4)))


def exp_closed(a: ComplexAlgVec, t: float) -> Mat2C:
    """Closed-form exp(t sum z_i e_i); the w = 0 case degenerates to I + t*(traceless part)."""
    w = a.w
    m1 = cmath.cosh(w * t)
    n1 = sinch(w, t)
    scale = cmath.exp(a.z[0] * t / 2.0)
    out = m1 * np.eye(2, dtype=complex)
    out += n1 * (a.z[1] * _E[1] + a.z[2] * _E[2] + a.z[3] * _E[3])
    return Mat2C(scale * out)


def exp_series(m: Mat2C, max_terms: int = 40) -> Mat2C:
    """Matrix exponential by scaling-and-squaring with a truncated power series.

    Independent oracle: makes no use of the closed forms.  The argument is
    scaled so the Taylor series converges to machine precision; relative
    residual is below 1e-14 for norms up to ~32.  Extreme norms that would
    overflow double precision raise OverflowError explicitly.
    """
    a = m.m
    norm = float(np.max(np.sum(np.abs(a), axis=1)))
    if norm > 700.0:
        raise OverflowError(
            f"matrix exponential overflows double precision: norm {norm:.3g} > 700"
        )
    s = max(0, int(math.ceil(math.log2(norm / 0.25))) if norm > 0.25 else 0)
    x = a / (2.0**s)
    acc = np.eye(2, dtype=complex)
    term = np.eye(2, dtype=complex)
    for k in range(1, max_terms + 1):
        term = term @ x / k
        acc = acc + term
        if np.max(np.abs(term)) <= 1e-18 * np.max(np.abs(acc)):
            break
    for _ in range(s):
        acc = acc @ acc
    return Mat2C(acc)


def log_posdef(p: Mat2C, tol: float = 1e-10) -> AlgCoords:
    """Logarithm of a positive definite Hermitian matrix, as coordinates in H.

    Uses the closed-form 2x2 Hermitian eigenstructure: for p with coordinates
    (h0, h1, h2, h3) the eigenvalues are h0/2 +- |h|/2, and log p keeps the
    eigenvectors, so the traceless direction is preserved and only the radial
    coordinates change.  Equal eigenvalues degenerate to log(lambda) * I.
    """
    if not p.is_hermitian(tol):
        raise NotHermitianError("log_posdef requires a Hermitian matrix")
    h = to_coords(p).u
    r = math.sqrt(h[1] ** 2 + h[2] ** 2 + h[3] ** 2)
    lam_plus = (h[0] + r) / 2.0
    lam_minus = (h[0] - r) / 2.0
    if lam_minus <= 0.0 or lam_plus <= 0.0:
        raise NotPositiveDefiniteError(
            f"log_posdef requires positive eigenvalues, got {lam_minus:.3g}, {lam_plus:.3g}"
        )
    out = np.zeros(8)
    out[0] = math.log(lam_plus) + math.log(lam_minus)
    if r > 0.0:
        radial = math.log(lam_plus / lam_minus)
        out[1:4] = (radial / r) * h[1:4]
    return AlgCoords(out)


@dataclass(frozen=True)
class PolarDecomposition:
    """g = e^{xi/2} exp(boost) rotation with boost in H0 and rotation in SU(2)."""

    xi: float
    boost: AlgCoords
    rotation: Mat2C

    def reconstruct(self) -> Mat2C:
        vec = ComplexAlgVec.from_reals(self.boost.u[:4])
        return Mat2C(math.exp(self.xi / 2.0) * (exp_closed(vec, 1.0).m @ self.rotation.m))


def polar_decompose(g: Mat2C, tol: float = 1e-12) -> PolarDecomposition:
    """Unique factorization g = e^{xi/2} exp(X) k, X traceless Hermitian, k unitary.

    Requires det(g) real and positive (imaginary part within tol relative).
    The positive factor is sqrt(g1 g1*) computed through `log_posdef`.
    """
    d = g.det()
    scale = max(1.0, abs(d))
    if abs(d.imag) > tol * scale:
        raise NotInGLPlusError(f"determinant {d} is not real")
    if d.real <= 0.0:
        raise NotInGLPlusError(f"determinant {d} is not positive")
    if abs(d) < 1e-300:
        raise NotInGLPlusError("matrix is singular")
    xi = math.log(d.real)
    g1 = math.exp(-xi / 2.0) * g.m
    q = Mat2C(g1 @ g1.conj().T)
    x = log_posdef(q, tol=1e-9)
    half = x.u / 2.0
    half[0] = 0.0  # det(g1) = 1 forces the trace part to vanish
    boost = AlgCoords(half)
    p_inv = exp_closed(ComplexAlgVec.from_reals(-half[:4]), 1.0)
    k = Mat2C(p_inv.m @ g1)
    return PolarDecomposition(xi, boost, k)


def su2_exp(c) -> Mat2C:
    """exp(c1 e_4 + c2 e_5 + c3 e_6) = cos(|c|/2) I + i sin(|c|/2) (c_hat . sigma)."""
    c = np.asarray(c, dtype=float)
    n = float(np.linalg.norm(c))
    m = math.cos(n / 2.0) * np.eye(2, dtype=complex)
    s = sinc_scaled(n, 0.5)  # sin(n/2)/n, continuous at 0
    m += 1j * s * (c[0] * _E[1] * 2 + c[1] * _E[2] * 2 + c[2] * _E[3] * 2)
    return Mat2C(m)


def axis_angle_rotation(axis, angle: float) -> np.ndarray:
    """Rodrigues rotation matrix about a unit axis."""
    n = np.asarray(axis, dtype=float)
    n = n / np.linalg.norm(n)
    K = np.array([[0, -n[2], n[1]], [n[2], 0, -n[0]], [-n[1], n[0], 0]])
    return np.eye(3) + math.sin(angle) * K + (1 - math.cos(angle)) * (K @ K)


def su2_from_axis_angle(axis, angle: float) -> Mat2C:
    """SU(2) element whose adjoint action rotates coordinate 3-vectors by (axis, angle)."""
    n = np.asarray(axis, dtype=float)
    n = n / np.linalg.norm(n)
    return su2_exp(angle * n)


def aligning_rotation(v) -> tuple[Mat2C, np.ndarray]:
    """(s, R) with R rotating v onto the positive first axis and Ad(s) acting as R.

    For v already along +x returns the identity; for v along -x a half-turn
    about the third axis is used.
    """
    v = np.asarray(v, dtype=float)
    nv = float(np.linalg.norm(v))
    if nv == 0.0:
        return Mat2C.identity(), np.eye(3)
    u = v / nv
    target = np.array([1.0, 0.0, 0.0])
    axis = np.cross(u, target)
    s_norm = float(np.linalg.norm(axis))
    c = float(np.dot(u, target))
    if s_norm < 1e-12:
        if c > 0:
            return Mat2C.identity(), np.eye(3)
        axis, angle = np.array([0.0, 0.0, 1.0]), math.pi
    else:
        axis = axis / s_norm
        angle = math.atan2(s_norm, c)
    R = axis_angle_rotation(axis, angle)
    return su2_from_axis_angle(axis, angle), R


@dataclass(frozen=True, eq=False)
class ProductExpParams:
    """Seven real constants driving the product-of-exponentials curve.

    The curve g(t) = exp(t sum_{i=0..6} a_i e_i) exp(-t sum_{i=4..6} a_i e_i)
    evaluates in closed form through the scalar functions

      w1 = (1/2) sqrt((a1+i a4)^2 + (a2+i a5)^2 + (a3+i a6)^2)
      w2 = (1/2) sqrt(a4^2 + a5^2 + a6^2)
      m1 = cosh(w1 t),  n1 = sinh(w1 t)/w1,  m2 = cos(w2 t),  n2 = sin(w2 t)/w2

    (n1, n2 take the value t at w = 0).  The coefficient formulas below are a
    matrix identity over complex scalars; the assembled matrix is exact.
    """

    alpha: np.ndarray

    def __post_init__(self):
        a = np.asarray(self.alpha, dtype=float)
        if a.shape != (7,):
            raise ValueError("expected 7 real constants")
        if not np.all(np.isfinite(a)):
            raise ValueError("constants must be finite")
        a = a.copy()
        a.setflags(write=False)
        object.__setattr__(self, "alpha", a)

    @property
    def w1(self) -> complex:
        a = self.alpha
        return 0.5 * cmath.sqrt(
            complex(
                (a[1] + 1j * a[4]) ** 2 + (a[2] + 1j * a[5]) ** 2 + (a[3] + 1j * a[6]) ** 2
            )
        )

    @property
    def w2(self) -> float:
        a = self.alpha
        return 0.5 * math.sqrt(a[4] ** 2 + a[5] ** 2 + a[6] ** 2)

    def m1(self, t: float) -> complex:
        return cmath.cosh(self.w1 * t)

    def n1(self, t: float) -> complex:
        return sinch(self.w1, t)

    def m2(self, t: float) -> float:
        return math.cos(self.w2 * t)

    def n2(self, t: float) -> float:
        return sinc_scaled(self.w2, t)

    def coefficients(self, t: float) -> np.ndarray:
        """Complex coefficients (c0..c6, c7) of g(t) over {e_0..e_6, i e_0}."""
        a = self.alpha
        w2 = self.w2
        m1, n1 = self.m1(t), self.n1(t)
        m2, n2 = self.m2(t), self.n2(t)
        ee = math.exp(a[0] * t / 2.0)
        mix = n1 * n2
        c = np.empty(8, dtype=complex)
        c[0] = 2.0 * ee * (m1 * m2 + mix * w2 * w2)
        c[1] = 0.5 * ee * n1 * (2.0 * a[1] * m2 + (a[3] * a[5] - a[2] * a[6]) * n2)
        c[2] = 0.5 * ee * n1 * (2.0 * a[2] * m2 + (a[1] * a[6] - a[3] * a[4]) * n2)
        c[3] = 0.5 * ee * n1 * (2.0 * a[3] * m2 + (a[2] * a[4] - a[1] * a[5]) * n2)
        swing = ee * (m2 * n1 - m1 * n2)
        c[4] = swing * a[4]
        c[5] = swing * a[5]
        c[6] = swing * a[6]
        c[7] = -0.5 * ee * mix * (a[1] * a[4] + a[2] * a[5] + a[3] * a[6])
        return c

    def point(self, t: float) -> Mat2C:
        c = self.coefficients(t)
        m = c[0] * _E[0] + c[7] * _E[7]
        for i in range(1, 7):
            m = m + c[i] * _E[i]
        return Mat2C(m)

    def point_two_factor(self, t: float) -> Mat2C:
        """Same curve evaluated as an explicit product of the two exponentials."""
        a = self.alpha
        first = exp_closed(
            ComplexAlgVec(
                np.array(
                    [a[0], a[1] + 1j * a[4], a[2] + 1j * a[5], a[3] + 1j * a[6]],
                    dtype=complex,
                )
            ),
            t,
        )
        second = su2_exp(-t * a[4:7])
        return Mat2C(first.m @ second.m)
