"""Membership in the unit-circle region and root-multiset partitions.

A real vector a of length N-1 corresponds to a monic conjugate-reciprocal
polynomial of degree N (constant term 1).  The vector belongs to the
region exactly when all N roots lie on the unit circle; the boundary
consists of the vectors whose polynomial has a multiple root.  Interior /
Boundary / Exterior classification is root-based: roots are clustered by
consecutive angular gaps, and the off-circle tolerance for a root in a
cluster of size m is the base tolerance raised to 1/m (an m-fold root is
only computable to about eps**(1/m)).

Non-exterior points also carry a partition: the multiplicities of the
angularly ordered root clusters, listed in circular order.  Partitions are
compared up to rotation only; the canonical representative is the
lexicographically greatest rotation.  Reflection is deliberately not
quotiented out; a separate helper compares up to reflection.
"""

import math
import warnings
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .basis import build_basis
from .errors import OffCircleError, ToleranceDisagreement
from .polyroots import (
    coeffs_from_roots_batch,
    discriminant,
    roots_from_coeffs_batch,
)
from .tolerances import Tolerances, default_tolerances

INTERIOR = "Interior"
BOUNDARY = "Boundary"
EXTERIOR = "Exterior"

_TWO_PI = 2.0 * np.pi


@lru_cache(maxsize=64)
def _cached_basis(n):
    return build_basis(n, 1.0)


# ---------------------------------------------------------------------------
# partitions


def _canonical_rotation(parts):
    tup = tuple(int(p) for p in parts)
    return max(tup[i:] + tup[:i] for i in range(len(tup)))


@dataclass(frozen=True, eq=False)
class Partition:
    """Cyclically ordered multiplicities of the clustered roots."""

    parts: tuple
    canonical_form: tuple

    @classmethod
    def from_parts(cls, parts):
        parts = tuple(int(p) for p in parts)
        if not parts or any(p < 1 for p in parts):
            raise ValueError(f"parts must be positive integers, got {parts}")
        return cls(parts=parts, canonical_form=_canonical_rotation(parts))

    @property
    def total(self):
        return sum(self.parts)

    def __eq__(self, other):
        if not isinstance(other, Partition):
            return NotImplemented
        return self.canonical_form == other.canonical_form

    def __hash__(self):
        return hash(self.canonical_form)

    def __repr__(self):
        return f"Partition{self.canonical_form}"


def partition_reduce(partition):
    """All partitions obtained by merging one cyclically adjacent pair of parts.

    Returns a (possibly empty) set of canonicalized partitions; a partition
    of length 1 reduces to nothing.
    """
    parts = partition.parts
    m = len(parts)
    if m < 2:
        return set()
    out = set()
    for i in range(m):
        if i < m - 1:
            merged = parts[:i] + (parts[i] + parts[i + 1],) + parts[i + 2 :]
        else:
            merged = (parts[-1] + parts[0],) + parts[1:-1]
        out.add(Partition.from_parts(merged))
    return out


def reduce_closure(partition):
    """All partitions reachable from the given one by zero or more reductions."""
    seen = {partition}
    frontier = [partition]
    while frontier:
        nxt = []
        for p in frontier:
            for q in partition_reduce(p):
                if q not in seen:
                    seen.add(q)
                    nxt.append(q)
        frontier = nxt
    return seen


def precedes(lower, upper):
    """Whether lower is reachable from upper by reductions (the face order)."""
    return lower in reduce_closure(upper)


def equal_up_to_reflection(p, q):
    """Cyclic equality allowing orientation reversal."""
    return p == q or _canonical_rotation(tuple(reversed(q.parts))) == p.canonical_form


# ---------------------------------------------------------------------------
# clustering


def _cluster_batch(angles, gap_tol):
    """Circular clustering of each row of angles by consecutive gaps.

    Returns (cluster_id, sizes) where cluster_id[b, i] labels the cluster of
    the i-th root (original order) of row b, and sizes[b, i] is the size of
    that root's cluster.  Cluster labels increase with angular position
    except that a run wrapping through 2*pi keeps the label of its start.
    """
    b, n = angles.shape
    order = np.argsort(angles, axis=1)
    srt = np.take_along_axis(angles, order, axis=1)
    gaps = np.empty_like(srt)
    gaps[:, :-1] = srt[:, 1:] - srt[:, :-1]
    gaps[:, -1] = srt[:, 0] + _TWO_PI - srt[:, -1]

    new_cluster = np.ones((b, n), dtype=bool)
    new_cluster[:, 1:] = gaps[:, :-1] >= gap_tol
    ids_sorted = np.cumsum(new_cluster, axis=1) - 1
    nclusters = ids_sorted[:, -1] + 1
    # wrap-around: if the gap from last back to first is small, the final run
    # is part of cluster 0
    wrap = (gaps[:, -1] < gap_tol) & (nclusters > 1)
    last_id = ids_sorted[:, -1:]
    ids_sorted = np.where(wrap[:, None] & (ids_sorted == last_id), 0, ids_sorted)

    sizes_by_id = np.zeros((b, n), dtype=int)
    np.add.at(sizes_by_id, (np.arange(b)[:, None], ids_sorted), 1)
    sizes_sorted = sizes_by_id[np.arange(b)[:, None], ids_sorted]

    cluster_id = np.empty_like(ids_sorted)
    np.put_along_axis(cluster_id, order, ids_sorted, axis=1)
    sizes = np.empty_like(sizes_sorted)
    np.put_along_axis(sizes, order, sizes_sorted, axis=1)
    return cluster_id, sizes


def _partition_from_row(angles, gap_tol):
    """Partition of one root multiset, parts in circular angular order."""
    ids, _ = _cluster_batch(angles[None, :], gap_tol)
    ids = ids[0]
    order = np.argsort(angles)
    ids_sorted = ids[order]
    parts = []
    for cid in dict.fromkeys(ids_sorted.tolist()):  # preserves angular order
        parts.append(int((ids_sorted == cid).sum()))
    return Partition.from_parts(parts)


def classify_partition(roots, tol=None):
    """Partition of a root multiset that lies on the unit circle.

    Raises OffCircleError if any root is farther from the circle than its
    multiplicity-aware tolerance.
    """
    tol = tol or default_tolerances()
    roots = np.asarray(roots, dtype=complex)
    angles = np.mod(np.angle(roots), _TWO_PI)
    _, sizes = _cluster_batch(angles[None, :], tol.angular_gap)
    resid = np.abs(np.abs(roots) - 1.0)
    limits = tol.unit_residual_base ** (1.0 / sizes[0])
    if (resid > limits).any():
        raise OffCircleError(
            f"root off the unit circle: residual {resid.max():.3e}"
        )
    return _partition_from_row(angles, tol.angular_gap)


# ---------------------------------------------------------------------------
# classification


@dataclass(frozen=True)
class MembershipVerdict:
    status: str
    unit_residual: float
    disc_magnitude: float
    partition: Partition | None


def _region_trailing(points, basis):
    """Trailing coefficient rows [c_1..c_{N-1}, 1] for a batch of real points."""
    c = points @ basis.entries.T
    return np.concatenate([c, np.ones((points.shape[0], 1), complex)], axis=1)


def classify_batch(points, tol=None):
    """Vectorized Interior/Boundary/Exterior statuses for rows of points.

    Returns (statuses, unit_residuals, roots, sizes); statuses is an array
    of the module's status strings.  This is the fast path behind the
    hit-or-miss volume estimator; `classify` adds the partition and the
    discriminant cross-check on top of the same decision rule.
    """
    tol = tol or default_tolerances()
    points = np.atleast_2d(np.asarray(points, dtype=float))
    n = points.shape[1] + 1
    basis = _cached_basis(n)
    roots = roots_from_coeffs_batch(_region_trailing(points, basis))
    resid = np.abs(np.abs(roots) - 1.0)
    angles = np.mod(np.angle(roots), _TWO_PI)
    _, sizes = _cluster_batch(angles, tol.angular_gap)
    limits = tol.unit_residual_base ** (1.0 / sizes)
    exterior = (resid > limits).any(axis=1)
    clustered = (sizes >= 2).any(axis=1)
    statuses = np.where(exterior, EXTERIOR, np.where(clustered, BOUNDARY, INTERIOR))
    return statuses, resid.max(axis=1), roots, sizes


def _floored_disc_scale(roots, same_cluster, sizes, tol):
    """Root-product discriminant magnitude with intra-cluster distances floored.

    Intra-cluster pair distances are replaced by the width an honest m-fold
    cluster may have: the larger of the chord of the angular threshold and
    a few eps**(1/m).
    """
    n = roots.shape[0]
    iu, ju = np.triu_indices(n, k=1)
    d = np.abs(roots[ju] - roots[iu])
    chord = 2.0 * np.sin(tol.angular_gap / 2.0)
    eps = np.finfo(float).eps
    m = np.maximum(sizes[iu], sizes[ju])
    floor = np.maximum(chord, 8.0 * eps ** (1.0 / m))
    d = np.where(same_cluster[iu, ju], np.maximum(d, floor), d)
    with np.errstate(divide="ignore"):
        return float(np.exp(2.0 * np.sum(np.log(d))))


def classify(a, tol=None):
    """Classify one real coordinate vector; attaches the partition when inside.

    The root-cluster criterion is primary.  The coefficient-route
    discriminant is computed as an independent cross-check; when the two
    disagree a ToleranceDisagreement warning is emitted and the cluster
    verdict is kept.
    """
    tol = tol or default_tolerances()
    a = np.asarray(a, dtype=float)
    statuses, max_resid, roots, sizes = classify_batch(a[None, :], tol)
    status = str(statuses[0])
    roots = roots[0]
    sizes = sizes[0]

    trailing = _region_trailing(np.atleast_2d(a), _cached_basis(a.size + 1))[0]
    disc_mag = abs(discriminant(trailing))

    if status == EXTERIOR:
        return MembershipVerdict(status, float(max_resid[0]), disc_mag, None)

    angles = np.mod(np.angle(roots), _TWO_PI)
    ids, _ = _cluster_batch(angles[None, :], tol.angular_gap)
    same = ids[0][:, None] == ids[0][None, :]
    scale = _floored_disc_scale(roots, same, sizes, tol)
    ratio = disc_mag / scale if scale > 0 else np.inf
    if status == BOUNDARY and ratio > 1.0 / tol.disc_cross:
        warnings.warn(
            f"cluster criterion says Boundary but |disc| = {disc_mag:.3e} is large "
            f"(ratio {ratio:.3e} to the cluster-floored scale)",
            ToleranceDisagreement,
            stacklevel=2,
        )
    elif status == INTERIOR and ratio < tol.disc_cross:
        warnings.warn(
            f"cluster criterion says Interior but |disc| = {disc_mag:.3e} is "
            f"effectively zero (ratio {ratio:.3e} to the root-product scale)",
            ToleranceDisagreement,
            stacklevel=2,
        )
    partition = _partition_from_row(angles, tol.angular_gap)
    return MembershipVerdict(status, float(max_resid[0]), disc_mag, partition)


# ---------------------------------------------------------------------------
# coefficient bound shortcut


def coefficient_bounds(n):
    """Componentwise bounds |c_k| <= C(N, k) valid on the whole region."""
    return np.array([math.comb(n, k) for k in range(1, n)], dtype=float)


def coefficient_bound_exceeded(a, tol=1e-8):
    """True when the binomial coefficient bound certifies the point Exterior."""
    a = np.asarray(a, dtype=float)
    n = a.size + 1
    c = _cached_basis(n).entries @ a
    return bool((np.abs(c) > coefficient_bounds(n) + tol).any())


# ---------------------------------------------------------------------------
# sampling


@dataclass(frozen=True)
class RootSample:
    """One sampled root multiset: N angles and the corresponding roots."""

    degree: int
    thetas: np.ndarray  # (N,) including the constrained final angle
    roots: np.ndarray  # (N,) unit-modulus, product (-1)^N


def sample_root_vectors(n, count, rng):
    """Draw root multisets: N-1 free uniform angles plus the constrained root.

    Returns (thetas, roots) with shapes (count, N) and (count, N).  The
    final root is computed from the product constraint, so every row
    satisfies prod(roots) = (-1)^N exactly up to rounding.
    """
    if n < 2:
        raise ValueError(f"degree must be >= 2, got {n}")
    free = rng.uniform(0.0, _TWO_PI, size=(count, n - 1))
    roots = np.empty((count, n), dtype=complex)
    roots[:, : n - 1] = np.exp(1j * free)
    roots[:, n - 1] = (-1.0) ** n / roots[:, : n - 1].prod(axis=1)
    thetas = np.concatenate(
        [free, np.mod(np.angle(roots[:, n - 1 :]), _TWO_PI)], axis=1
    )
    return thetas, roots


def sample_root_vector(n, rng):
    """One sampled root multiset (see sample_root_vectors)."""
    thetas, roots = sample_root_vectors(n, 1, rng)
    return RootSample(degree=n, thetas=thetas[0], roots=roots[0])


def real_coords_from_roots_batch(roots):
    """Map unit-circle root rows to real coordinate vectors.

    The constant coefficient of each row must be 1 (root product equal to
    (-1)^N); the imaginary residue of the inverse basis map is checked and
    discarded.
    """
    roots = np.atleast_2d(np.asarray(roots, dtype=complex))
    n = roots.shape[1]
    trailing = coeffs_from_roots_batch(roots)
    basis = _cached_basis(n)
    a = trailing[:, : n - 1] @ basis.inverse.T
    scale = 1.0 + np.abs(trailing[:, : n - 1]).max(initial=0.0)
    bad = np.abs(a.imag).max(initial=0.0)
    if bad > 1e-9 * scale:
        raise ValueError(
            f"imaginary residue {bad:.3e} too large; roots do not satisfy the "
            "conjugate-reciprocal product constraint"
        )
    return a.real


def sample_points(n, count, rng):
    """Sampled real coordinate vectors of region points, shape (count, N-1)."""
    _, roots = sample_root_vectors(n, count, rng)
    return real_coords_from_roots_batch(roots)
