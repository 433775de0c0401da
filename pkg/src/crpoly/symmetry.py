"""Vertices and the dihedral isometries of the coefficient region.

The farthest points of the region from the origin are the N vertices,
corresponding to the polynomials (x + z^k)^N for z = exp(2*pi*i/N).  Two
linear maps generate the region's isometries: rotating every root by z
(a diagonal phase on complex coefficients, conjugated into real
coordinates) and conjugating every root (a sign flip on the imaginary
block of the real coordinates).  Together they realize the dihedral group
of order 2N.
"""

import math
from typing import NamedTuple

import numpy as np
from scipy.integrate import quad

from .basis import build_basis
from .errors import NumericFailure
from .membership import EXTERIOR, classify_batch
from .polyroots import discriminant

_ORTHO_ABORT = 1e-8


def _root_of_unity(n):
    return np.exp(2j * np.pi / n)


def vertex(n, k):
    """Real coordinates of the k-th vertex, 1 <= k <= N.

    The complex coefficients are binomial: C(N, m) * z^(k*m) for the m-th
    coefficient, z the primitive N-th root of unity.
    """
    if not 1 <= k <= n:
        raise ValueError(f"vertex index must be in 1..{n}, got {k}")
    basis = build_basis(n)
    z = _root_of_unity(n)
    m = np.arange(1, n)
    c = np.array([math.comb(n, int(j)) for j in m]) * z ** (k * m)
    a = basis.inverse @ c
    return a.real


def vertices(n):
    """All N vertices stacked as rows of an (N, N-1) matrix."""
    return np.stack([vertex(n, k) for k in range(1, n + 1)])


def _realize(n, complex_map):
    """Real matrix of a real-linear map given by its action on complex coeffs."""
    basis = build_basis(n)
    m = basis.inverse @ complex_map(basis.entries)
    imag = float(np.abs(m.imag).max())
    if imag > 1e-10:
        raise NumericFailure(f"isometry matrix has imaginary residue {imag:.3e}")
    real = m.real
    resid = float(np.abs(real.T @ real - np.eye(n - 1)).max())
    if resid > _ORTHO_ABORT:
        raise NumericFailure(f"isometry matrix orthogonality residual {resid:.3e}")
    return real


def rotation_action(n):
    """Orthogonal matrix multiplying every root by the primitive N-th root of unity.

    On complex coefficients the action is the diagonal phase c_m -> z^m c_m;
    the real matrix is that diagonal conjugated by the coefficient basis.
    """
    z = _root_of_unity(n)
    phases = z ** np.arange(1, n)
    return _realize(n, lambda entries: phases[:, None] * entries)


def conjugation_action(n):
    """Orthogonal matrix conjugating every root: c_m -> conj(c_m).

    In real coordinates this is a sign flip of the block of coordinates
    that the basis couples with the imaginary unit.
    """
    return _realize(n, np.conj)


def dihedral_group(n):
    """All distinct words in the two generators; exactly 2N matrices."""
    gens = [rotation_action(n), conjugation_action(n)]
    seen = {}

    def key(m):
        return (np.round(m, 9) + 0.0).tobytes()  # +0.0 folds -0.0 into +0.0

    frontier = [np.eye(n - 1)]
    seen[key(frontier[0])] = frontier[0]
    while frontier:
        nxt = []
        for m in frontier:
            for g in gens:
                prod = g @ m
                k = key(prod)
                if k not in seen:
                    seen[k] = prod
                    nxt.append(prod)
        frontier = nxt
    return list(seen.values())


class IsometryReport(NamedTuple):
    max_distortion: float
    images_inside: bool


def verify_isometry(matrix, pairs, tol=None):
    """Distance distortion of a candidate isometry on sampled point pairs.

    pairs has shape (P, 2, N-1).  Returns the worst |d(Ta, Tb) - d(a, b)|
    together with whether every image still classifies non-Exterior.
    """
    pairs = np.asarray(pairs, dtype=float)
    a, b = pairs[:, 0, :], pairs[:, 1, :]
    ta, tb = a @ matrix.T, b @ matrix.T
    before = np.linalg.norm(a - b, axis=1)
    after = np.linalg.norm(ta - tb, axis=1)
    distortion = float(np.abs(after - before).max()) if len(pairs) else 0.0
    images = np.concatenate([ta, tb], axis=0)
    statuses, _, _, _ = classify_batch(images, tol)
    return IsometryReport(distortion, bool((statuses != EXTERIOR).all()))


def parseval_distance(a1, a2, quadrature_points):
    """Mean squared modulus of the polynomial difference on the unit circle.

    Computed by the P-point rectangle rule on equispaced angles, which is
    exact for trigonometric polynomials once P exceeds twice the degree;
    the result equals ||a1 - a2||^2.
    """
    a1 = np.asarray(a1, dtype=float)
    a2 = np.asarray(a2, dtype=float)
    if a1.shape != a2.shape:
        raise ValueError("coordinate vectors must have equal length")
    n = a1.size + 1
    p = int(quadrature_points)
    if p <= 2 * n:
        raise ValueError(f"need more than {2 * n} quadrature points, got {p}")
    basis = build_basis(n)
    d = basis.entries @ (a1 - a2)
    theta = 2.0 * np.pi * np.arange(p) / p
    freqs = n - np.arange(1, n)  # exponent of x multiplying c_m
    values = np.exp(1j * np.outer(theta, freqs)) @ d
    return float(np.mean(np.abs(values) ** 2))


def binomial_kernel(n, theta):
    """(2 + 2cos(theta))^(N/2), the modulus of (e^{i theta} + 1)^N."""
    return (2.0 + 2.0 * np.cos(theta)) ** (n / 2.0)


def binomial_kernel_selfconv(n, t, epsabs=1e-9):
    """Self-convolution (1/pi) * integral of f(theta) f(t - theta) over [-pi, pi].

    Adaptive Gauss-Kronrod quadrature; the integrand is smooth apart from
    flat points at the ends, which need no special handling.
    """
    val, _ = quad(
        lambda th: binomial_kernel(n, th) * binomial_kernel(n, t - th),
        -np.pi,
        np.pi,
        epsabs=epsabs,
        epsrel=1e-11,
        limit=200,
    )
    return val / np.pi


class VertexDistance(NamedTuple):
    direct: float
    convolution: float


def vertex_distance_squared(n, k):
    """Squared distance between the last vertex and the k-th, both routes.

    The direct route differences the vertex vectors; the second evaluates
    2*C(2N, N) + (-1)^(k+1) * (f*f)(2 pi k / N) with f the binomial kernel.
    The two must agree; indices are taken mod N.
    """
    k = k % n
    if k == 0:
        return VertexDistance(0.0, 0.0)
    direct = float(np.sum((vertex(n, n) - vertex(n, k)) ** 2))
    conv = 2.0 * math.comb(2 * n, n) + (-1.0) ** (k + 1) * binomial_kernel_selfconv(
        n, 2.0 * np.pi * k / n
    )
    return VertexDistance(direct, conv)


class SpanDeterminant(NamedTuple):
    direct: float
    formula: float


def vertex_span_determinant(n):
    """|det| of the first N-1 vertices, directly and by the closed form.

    The closed form multiplies two runs of binomial coefficients by the
    square root of |disc((x^N - 1)/(x - 1))|, with the discriminant
    evaluated from the coefficients.
    """
    rows = np.stack([vertex(n, k) for k in range(1, n)])
    direct = float(abs(np.linalg.det(rows)))
    binoms = 1.0
    for j in range(1, n // 2 + 1):
        binoms *= math.comb(n, j)
    for j in range(1, (n - 1) // 2 + 1):
        binoms *= math.comb(n, j)
    cyclo_trailing = np.ones(n - 1, dtype=complex)  # (x^N - 1)/(x - 1)
    disc = abs(discriminant(cyclo_trailing))
    return SpanDeterminant(direct, binoms * math.sqrt(disc))
