"""Real <-> complex coefficient basis for conjugate-reciprocal polynomials.

A monic degree-N polynomial with constant term omega (|omega| = 1) whose
complex coefficients satisfy c_{N-n} = omega * conj(c_n) is determined by
N-1 real numbers.  This module builds the unitary change-of-basis matrix
realizing that identification: for any real vector a of length N-1, the
product c = B a satisfies the relation above, and conversely.

Row structure of the omega = 1 matrix (indices 1-based, k the column):

    1 <= j < N/2 : (sqrt(2)/2) * (delta_{j,k} + i * delta_{N-j,k})
    j == N/2     : delta_{j,k}                       (N even only)
    N/2 < j < N  : (sqrt(2)/2) * (delta_{N-j,k} - i * delta_{j,k})

The general-omega matrix is the omega = 1 matrix scaled by the principal
square root of omega; that scaling is what makes the conjugate-reciprocal
relation, unitarity and |det| = 1 hold simultaneously for every unit
omega.  The branch choice (argument in (-pi, pi]) is visible only in raw
matrix dumps, never in |det| or in any downstream quantity.
"""

from dataclasses import dataclass

import numpy as np

from .errors import (
    DimensionMismatchError,
    ImaginaryResidueError,
    InvalidDegreeError,
    NotConjugateReciprocalError,
)

_SQ2 = np.sqrt(2.0) / 2.0


@dataclass(frozen=True)
class BasisMatrix:
    """Unitary map from real coordinates to conjugate-reciprocal coefficients."""

    degree: int
    omega: complex
    entries: np.ndarray  # (N-1, N-1) complex

    @property
    def inverse(self):
        """Inverse of the basis map; conjugate transpose, since the matrix is unitary."""
        return self.entries.conj().T


def build_basis(n, omega=1.0):
    """Build the (N-1) x (N-1) coefficient basis matrix.

    Parameters
    ----------
    n : int
        Polynomial degree, at least 2.
    omega : complex
        Unit-modulus constant term of the polynomial family.

    Returns
    -------
    BasisMatrix
    """
    if n < 2:
        raise InvalidDegreeError(f"degree must be >= 2, got {n}")
    omega = complex(omega)
    if abs(abs(omega) - 1.0) > 1e-12:
        raise ValueError(f"omega must have unit modulus, got |omega| = {abs(omega)}")

    dim = n - 1
    m = np.zeros((dim, dim), dtype=complex)
    for j in range(1, n):  # 1-based row index
        if 2 * j < n:
            m[j - 1, j - 1] = _SQ2
            m[j - 1, n - j - 1] = 1j * _SQ2
        elif 2 * j == n:
            m[j - 1, j - 1] = 1.0
        else:
            m[j - 1, n - j - 1] = _SQ2
            m[j - 1, j - 1] = -1j * _SQ2
    m *= np.sqrt(omega)  # principal branch
    return BasisMatrix(degree=n, omega=omega, entries=m)


def _as_real_vector(a, basis):
    a = np.asarray(a, dtype=float)
    if a.ndim != 1 or a.shape[0] != basis.degree - 1:
        raise DimensionMismatchError(
            f"expected real vector of length {basis.degree - 1}, got shape {a.shape}"
        )
    if not np.isfinite(a).all():
        raise ValueError("coordinates must be finite")
    return a


def real_to_cr(a, basis):
    """Map a real coordinate vector to complex conjugate-reciprocal coefficients.

    The result c satisfies c_{N-n} = omega * conj(c_n) and represents the
    polynomial x^N + sum(c_n x^(N-n)) + omega.
    """
    a = _as_real_vector(a, basis)
    return basis.entries @ a


def cr_relation_residual(c, omega=1.0):
    """Max violation of c_{N-n} = omega * conj(c_n) over n."""
    c = np.asarray(c, dtype=complex)
    return float(np.abs(c[::-1] - omega * c.conj()).max()) if c.size else 0.0


def cr_to_real(c, basis, tol=1e-9):
    """Invert the basis map, checking that the input is genuinely CR.

    Raises NotConjugateReciprocalError when the conjugate-reciprocal
    relation is violated beyond tol (relative to 1 + max|c|), and
    ImaginaryResidueError if the inverse image has imaginary residue
    above the same scaled tolerance.
    """
    c = np.asarray(c, dtype=complex)
    if c.ndim != 1 or c.shape[0] != basis.degree - 1:
        raise DimensionMismatchError(
            f"expected coefficient vector of length {basis.degree - 1}, got shape {c.shape}"
        )
    scale = 1.0 + (np.abs(c).max() if c.size else 0.0)
    resid = cr_relation_residual(c, basis.omega)
    if resid > tol * scale:
        raise NotConjugateReciprocalError(
            f"coefficients violate the conjugate-reciprocal relation: "
            f"residual {resid:.3e} > {tol * scale:.3e}"
        )
    a = basis.inverse @ c
    imag = float(np.abs(a.imag).max()) if a.size else 0.0
    if imag > tol * scale:
        raise ImaginaryResidueError(
            f"inverse image has imaginary residue {imag:.3e} > {tol * scale:.3e}"
        )
    return a.real


def norm_preservation_check(a, basis):
    """Return | ||B a|| - ||a|| |; zero up to rounding since B is unitary."""
    a = _as_real_vector(a, basis)
    return float(abs(np.linalg.norm(basis.entries @ a) - np.linalg.norm(a)))
