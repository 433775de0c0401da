"""Volume of the coefficient region: closed form and two Monte Carlo estimators.

The region's volume equals the volume of the (N-1)-ball of radius 2.  Two
independent estimators validate it: an importance-free average of the
root-to-coefficient Jacobian over the angle torus, and plain hit-or-miss
sampling of the circumscribing box with root-based membership tests.

The Jacobian of the angles-to-coefficients map has modulus equal to the
product of pairwise root distances, the final root being determined by the
product constraint.  Its modulus is unchanged by rotating the whole root
multiset, which is what makes the volume reduce to a known circular
ensemble integral.
"""

import math
from dataclasses import dataclass

import numpy as np

from .basis import build_basis
from .errors import InvalidDegreeError
from .membership import EXTERIOR, classify_batch
from .polyroots import coeffs_from_roots_batch

_TWO_PI = 2.0 * np.pi
_LOG_PRODUCT_DEGREE = 20  # switch to log-magnitude accumulation above this


def circumscribed_radius(n):
    """Radius of the smallest origin-centred sphere containing the region."""
    return math.sqrt(math.comb(2 * n, n) - 2)


def roots_from_free_angles(thetas, omega=1.0):
    """Root rows from free angles; the last root enforces the product constraint."""
    thetas = np.atleast_2d(np.asarray(thetas, dtype=float))
    b, nm1 = thetas.shape
    n = nm1 + 1
    roots = np.empty((b, n), dtype=complex)
    roots[:, :nm1] = np.exp(1j * thetas)
    roots[:, nm1] = (-1.0) ** n * omega / roots[:, :nm1].prod(axis=1)
    return roots


def jacobian_abs_batch(thetas, omega=1.0):
    """|Jacobian| of the angles-to-coefficients map for each row of angles.

    Equal to the product of pairwise distances among all N roots.  Above
    degree 20 the product is accumulated as a sum of logs to avoid
    underflow/overflow.
    """
    roots = roots_from_free_angles(thetas, omega)
    b, n = roots.shape
    if n <= _LOG_PRODUCT_DEGREE:
        out = np.ones(b)
        for m in range(n - 1):
            for k in range(m + 1, n):
                out *= np.abs(roots[:, k] - roots[:, m])
        return out
    acc = np.zeros(b)
    with np.errstate(divide="ignore"):
        for m in range(n - 1):
            for k in range(m + 1, n):
                acc += np.log(np.abs(roots[:, k] - roots[:, m]))
    return np.exp(acc)


def jacobian_abs(thetas, omega=1.0):
    """|Jacobian| at a single angle configuration."""
    return float(jacobian_abs_batch(np.asarray(thetas, dtype=float)[None, :], omega)[0])


def log_jacobian_abs(thetas, omega=1.0):
    """log |Jacobian| at a single configuration (log-domain on request)."""
    roots = roots_from_free_angles(np.asarray(thetas, dtype=float)[None, :], omega)[0]
    n = roots.shape[0]
    iu, ju = np.triu_indices(n, k=1)
    with np.errstate(divide="ignore"):
        return float(np.sum(np.log(np.abs(roots[ju] - roots[iu]))))


def jacobian_omega_invariance(thetas, omega):
    """Residual of the modulus identity between the omega and omega=1 maps.

    Multiplying every root by the inverse N-th root of omega turns the
    omega family into the plain one, so |Jac| at angles shifted by
    -arg(omega)/N under omega = 1 equals |Jac| at the original angles
    under omega.  Returns the absolute difference of the two values.
    """
    thetas = np.asarray(thetas, dtype=float)
    n = thetas.size + 1
    shift = np.angle(complex(omega)) / n
    return abs(jacobian_abs(thetas, omega) - jacobian_abs(thetas - shift, 1.0))


def coefficient_map(thetas, omega=1.0):
    """The concrete angles -> real coordinates map (one configuration)."""
    thetas = np.asarray(thetas, dtype=float)
    n = thetas.size + 1
    roots = roots_from_free_angles(thetas[None, :], omega)
    trailing = coeffs_from_roots_batch(roots)[0]
    basis = build_basis(n, omega)
    return (basis.inverse @ trailing[: n - 1]).real


def _min_angular_gap(thetas, omega):
    roots = roots_from_free_angles(np.asarray(thetas, dtype=float)[None, :], omega)[0]
    ang = np.sort(np.mod(np.angle(roots), _TWO_PI))
    gaps = np.diff(ang, append=ang[0] + _TWO_PI)
    return float(gaps.min())


def jacobian_fd_check(thetas, omega=1.0, step=1e-5):
    """Relative error between the finite-difference Jacobian and the product.

    Builds the concrete map, differentiates it by central differences with
    the given step, and compares |det| with the pairwise-distance product.
    Requires the angles (including the constrained one) to be separated by
    more than ten steps.
    """
    thetas = np.asarray(thetas, dtype=float)
    if _min_angular_gap(thetas, omega) <= 10.0 * step:
        raise ValueError(
            "near-singular configuration: angle gap below 10x the FD step"
        )
    dim = thetas.size
    jac = np.empty((dim, dim))
    for j in range(dim):
        hi = thetas.copy()
        lo = thetas.copy()
        hi[j] += step
        lo[j] -= step
        jac[:, j] = (coefficient_map(hi, omega) - coefficient_map(lo, omega)) / (
            2.0 * step
        )
    reference = jacobian_abs(thetas, omega)
    return abs(abs(np.linalg.det(jac)) - reference) / reference


# ---------------------------------------------------------------------------
# estimates


@dataclass(frozen=True)
class VolumeEstimate:
    degree: int
    method: str
    value: float
    std_error: float
    samples: int
    seed: int
    streams: int = 1


def volume_closed_form(n):
    """Exact volume: 2^(N-1) pi^((N-1)/2) / Gamma((N+1)/2), via log-gamma."""
    if n < 2:
        raise InvalidDegreeError(f"degree must be >= 2, got {n}")
    log_v = (n - 1) * math.log(2.0) + 0.5 * (n - 1) * math.log(math.pi) - math.lgamma(
        (n + 1) / 2.0
    )
    return VolumeEstimate(n, "closed-form", math.exp(log_v), 0.0, 0, 0, 1)


def _stream_counts(samples, streams):
    base, extra = divmod(samples, streams)
    return [base + (1 if k < extra else 0) for k in range(streams)]


def _merge_welford(stats):
    """Merge per-stream (count, mean, M2) triples in stream order."""
    count, mean, m2 = 0, 0.0, 0.0
    for c, mu, s in stats:
        if c == 0:
            continue
        delta = mu - mean
        total = count + c
        mean += delta * c / total
        m2 += s + delta * delta * count * c / total
        count = total
    return count, mean, m2


def volume_mc_jacobian(n, samples, seed=0, streams=1):
    """Monte Carlo volume from the mean Jacobian modulus over the angle torus.

    The estimate is (2 pi)^(N-1)/N! times the sample mean over uniform
    angle draws.  The sample budget is split over independent child
    streams (stream id = worker index) and per-stream moments are merged
    in stream order, so the result is a deterministic function of
    (seed, streams).
    """
    if samples < 1:
        raise ValueError("need at least one sample")
    seqs = np.random.SeedSequence(seed).spawn(streams)
    stats = []
    for k, count in enumerate(_stream_counts(samples, streams)):
        if count == 0:
            stats.append((0, 0.0, 0.0))
            continue
        rng = np.random.default_rng(seqs[k])
        thetas = rng.uniform(0.0, _TWO_PI, size=(count, n - 1))
        values = jacobian_abs_batch(thetas)
        mean = float(values.mean())
        stats.append((count, mean, float(((values - mean) ** 2).sum())))
    count, mean, m2 = _merge_welford(stats)
    factor = _TWO_PI ** (n - 1) / math.factorial(n)
    std = math.sqrt(m2 / (count - 1)) if count > 1 else 0.0
    return VolumeEstimate(
        n, "mc-jacobian", factor * mean, factor * std / math.sqrt(count),
        samples, seed, streams,
    )


def volume_mc_hit(n, samples, seed=0, streams=1, tol=None):
    """Hit-or-miss volume: uniform box sampling with root-based membership.

    Samples the cube of half-width equal to the circumscribed radius; a hit
    is any draw whose classification is not Exterior.  The standard error
    is binomial.  Intended for small N; the hit rate decays quickly with
    dimension.
    """
    if samples < 1:
        raise ValueError("need at least one sample")
    half = circumscribed_radius(n)
    box = (2.0 * half) ** (n - 1)
    seqs = np.random.SeedSequence(seed).spawn(streams)
    hits = 0
    for k, count in enumerate(_stream_counts(samples, streams)):
        if count == 0:
            continue
        rng = np.random.default_rng(seqs[k])
        points = rng.uniform(-half, half, size=(count, n - 1))
        statuses, _, _, _ = classify_batch(points, tol)
        hits += int((statuses != EXTERIOR).sum())
    frac = hits / samples
    std = math.sqrt(frac * (1.0 - frac) / samples)
    return VolumeEstimate(
        n, "mc-hit", box * frac, box * std, samples, seed, streams
    )


# ---------------------------------------------------------------------------
# boundary curves


def boundary_curve(n, points):
    """Sampled coordinate vectors of a one-parameter boundary family.

    For N = 3 the double-root family (e^{i phi}, e^{i phi}, -e^{-2 i phi})
    traces the whole boundary, a 3-cusped hypocycloid.  For N = 4 the
    triple-plus-single family (e^{i phi} thrice, e^{-3 i phi}) visits all
    four vertices and its (w1, w3) projection is the 4-cusped hypocycloid
    bounding the projected region.
    """
    phi = np.linspace(0.0, _TWO_PI, int(points), endpoint=False)
    if n == 3:
        roots = np.stack(
            [np.exp(1j * phi), np.exp(1j * phi), -np.exp(-2j * phi)], axis=1
        )
    elif n == 4:
        e = np.exp(1j * phi)
        roots = np.stack([e, e, e, np.exp(-3j * phi)], axis=1)
    else:
        raise ValueError(f"boundary curve supports degrees 3 and 4, got {n}")
    trailing = coeffs_from_roots_batch(roots)
    basis = build_basis(n)
    a = trailing[:, : n - 1] @ basis.inverse.T
    return a.real


def boundary_projection(curve):
    """(w1, w_{N-1}) projection of boundary-curve rows (the plotted plane)."""
    return curve[:, [0, -1]] if curve.shape[1] > 2 else curve
