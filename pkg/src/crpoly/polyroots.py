"""Roots, coefficients and discriminants of monic polynomials.

Conventions: a monic polynomial x^N + c_1 x^(N-1) + ... + c_N is passed
around as its trailing coefficient vector (c_1, ..., c_N); the leading 1
is implicit.  Batch variants take a (B, N) array of trailing coefficients
and operate on all rows at once.

The root finder runs Aberth-Ehrlich simultaneous iteration, started on a
circle slightly above the Fujiwara root bound, with a residual stop at the
evaluation noise floor (a multiple root cannot be polished below roughly
eps**(1/m), and its residual cannot drop below eps times the magnitude sum
of the evaluated terms).  Rows that fail to settle within the sweep cap
fall back to companion-matrix eigenvalues.
"""

import numpy as np

from .errors import InvalidDegreeError, NumericFailure

_EPS = np.finfo(float).eps
_MAX_SWEEPS = 200
_RESIDUAL_RTOL = 1e-8  # contract: |p(root)| <= 1e-8 * (1 + ||c||)


def polyval_batch(full, z):
    """Evaluate polynomials row-wise by Horner.  full: (B, N+1) highest-first."""
    acc = np.broadcast_to(full[:, :1], z.shape).copy()
    for j in range(1, full.shape[1]):
        acc = acc * z + full[:, j : j + 1]
    return acc


def coeffs_from_roots(roots):
    """Trailing coefficients of the monic polynomial with the given roots.

    The coefficient of x^(N-n) is (-1)^n times the n-th elementary
    symmetric function of the roots, accumulated by incremental monomial
    multiplication (left-to-right), which is numerically stable and makes
    the result independent of root ordering up to rounding.
    """
    roots = np.asarray(roots, dtype=complex)
    return coeffs_from_roots_batch(roots[None, :])[0]


def coeffs_from_roots_batch(roots):
    """Batch version of coeffs_from_roots; roots: (B, N) -> (B, N)."""
    roots = np.asarray(roots, dtype=complex)
    b, n = roots.shape
    full = np.zeros((b, n + 1), dtype=complex)
    full[:, 0] = 1.0
    for i in range(n):
        full[:, 1 : i + 2] -= roots[:, i : i + 1] * full[:, 0 : i + 1].copy()
    return full[:, 1:]


def _initial_circle(trailing):
    """Starting points on a circle slightly above the Fujiwara root bound."""
    b, n = trailing.shape
    k = np.arange(1, n + 1)
    with np.errstate(divide="ignore"):
        bound = 2.0 * np.max(np.abs(trailing) ** (1.0 / k), axis=1)
    bound = np.maximum(bound, 1e-3)
    # angular offset breaks the symmetry of polynomials like x^N + 1
    angles = 2.0 * np.pi * np.arange(n) / n + 0.4
    return (1.05 * bound)[:, None] * np.exp(1j * angles)[None, :]


def _aberth(trailing, max_sweeps=_MAX_SWEEPS):
    """Aberth-Ehrlich sweep over a batch; returns (roots, unconverged_mask)."""
    b, n = trailing.shape
    full = np.concatenate([np.ones((b, 1), complex), trailing], axis=1)
    deriv = full[:, :-1] * np.arange(n, 0, -1)
    mag = np.abs(full).astype(complex)
    z = _initial_circle(trailing)
    active = np.ones(b, dtype=bool)
    for _ in range(max_sweeps):
        za = z[active]
        p = polyval_batch(full[active], za)
        dp = polyval_batch(deriv[active], za)
        # evaluation noise floor: eps * sum |c_j| |z|^j
        floor = polyval_batch(mag[active], np.abs(za).astype(complex)).real
        at_floor = np.abs(p) <= 4.0 * _EPS * floor
        stuck = dp == 0
        ratio = np.where(at_floor | stuck, 0.0, p / np.where(stuck, 1.0, dp))
        diff = za[:, :, None] - za[:, None, :]
        np.einsum("bii->bi", diff)[...] = np.inf
        repulsion = (1.0 / diff).sum(axis=2)
        denom = 1.0 - ratio * repulsion
        step = ratio / np.where(denom == 0, 1.0, denom)
        # a vanishing derivative away from the floor: nudge instead of stepping
        step = np.where(stuck & ~at_floor, -0.1 * (1.0 + np.abs(za)) * (0.6 + 0.8j), step)
        znew = za - step
        settled = np.abs(step) <= 1e-14 * (1.0 + np.abs(znew))
        z[active] = znew
        done = np.all(settled | at_floor, axis=1)
        idx = np.flatnonzero(active)
        active[idx[done]] = False
        if not active.any():
            break
    return z, active


def _companion_eigvals(trailing):
    """Batched companion-matrix eigenvalues for monic polynomials."""
    b, n = trailing.shape
    comp = np.zeros((b, n, n), dtype=complex)
    idx = np.arange(n - 1)
    comp[:, idx + 1, idx] = 1.0
    comp[:, :, -1] = -trailing[:, ::-1]
    return np.linalg.eigvals(comp)


def residuals(trailing, roots):
    """|p(root)| for each root, row-wise."""
    trailing = np.atleast_2d(np.asarray(trailing, dtype=complex))
    full = np.concatenate([np.ones((trailing.shape[0], 1), complex), trailing], axis=1)
    return np.abs(polyval_batch(full, np.atleast_2d(np.asarray(roots, dtype=complex))))


def roots_from_coeffs_batch(trailing):
    """All roots of each monic polynomial in the batch; (B, N) -> (B, N).

    Multiple roots are returned with multiplicity (as a cluster of nearby
    approximations).  Raises NumericFailure, carrying the best iterate and
    its residuals, if any row fails the residual contract even after the
    companion-matrix fallback.
    """
    trailing = np.atleast_2d(np.asarray(trailing, dtype=complex))
    if trailing.shape[1] < 1:
        raise InvalidDegreeError("need degree >= 1")
    if not np.isfinite(trailing).all():
        raise ValueError("coefficients must be finite")
    if trailing.shape[1] == 1:
        return -trailing.copy()

    roots, unconverged = _aberth(trailing)
    scale = 1.0 + np.linalg.norm(trailing, axis=1)
    resid = residuals(trailing, roots)
    bad = unconverged | (resid.max(axis=1) > _RESIDUAL_RTOL * scale)
    if bad.any():
        fallback = _companion_eigvals(trailing[bad])
        fresid = residuals(trailing[bad], fallback)
        # keep whichever iterate has the smaller worst residual
        better = fresid.max(axis=1) < resid[bad].max(axis=1)
        sub = roots[bad]
        sub[better] = fallback[better]
        roots[bad] = sub
        resid[bad] = residuals(trailing[bad], roots[bad])
        still = resid[bad].max(axis=1) > _RESIDUAL_RTOL * scale[bad]
        if still.any():
            rows = np.flatnonzero(bad)[still]
            raise NumericFailure(
                f"root finding failed the residual contract on rows {rows.tolist()}",
                best=roots[rows],
                residuals=resid[rows],
            )
    return roots


def roots_from_coeffs(trailing):
    """All N roots of the monic polynomial with the given trailing coefficients."""
    return roots_from_coeffs_batch(np.asarray(trailing, dtype=complex)[None, :])[0]


def unit_circle_residual(roots):
    """max_n | |root_n| - 1 |, the distance of the root multiset from the circle."""
    roots = np.asarray(roots, dtype=complex)
    return float(np.abs(np.abs(roots) - 1.0).max())


def _sylvester(p_full, q_full):
    """Sylvester matrix of two polynomials given by full coefficient vectors."""
    n = len(p_full) - 1
    m = len(q_full) - 1
    s = np.zeros((n + m, n + m), dtype=complex)
    for i in range(m):
        s[i, i : i + n + 1] = p_full
    for i in range(n):
        s[m + i, i : i + m + 1] = q_full
    return s


def discriminant(trailing, log_magnitude=False):
    """Discriminant of a monic polynomial from its coefficients.

    Computed as (-1)^(N(N-1)/2) times the resultant of p and p', via the
    Sylvester-matrix determinant; the polynomial is monic so no leading
    coefficient division is needed.  With log_magnitude=True returns
    log|disc| instead (useful when the plain value would overflow).
    """
    trailing = np.asarray(trailing, dtype=complex)
    n = trailing.shape[0]
    if n < 2:
        raise InvalidDegreeError("discriminant needs degree >= 2")
    full = np.concatenate([[1.0 + 0j], trailing])
    dfull = full[:-1] * np.arange(n, 0, -1)
    syl = _sylvester(full, dfull)
    sign = -1.0 if (n * (n - 1) // 2) % 2 else 1.0
    if log_magnitude:
        _, logdet = np.linalg.slogdet(syl)
        return float(logdet)
    return sign * np.linalg.det(syl)


def discriminant_from_roots(roots, log_magnitude=False):
    """Discriminant as the product of squared root differences."""
    roots = np.asarray(roots, dtype=complex)
    n = roots.shape[0]
    if n < 2:
        raise InvalidDegreeError("discriminant needs degree >= 2")
    iu, ju = np.triu_indices(n, k=1)
    diffs = roots[ju] - roots[iu]
    if log_magnitude:
        with np.errstate(divide="ignore"):
            return float(2.0 * np.sum(np.log(np.abs(diffs))))
    return complex(np.prod(diffs**2))
