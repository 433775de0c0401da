"""Tolerance bundle used by membership classification and the CLI.

The unit-circle residual tolerance is multiplicity-aware: a root belonging
to a cluster of size m is allowed to sit within unit_residual_base**(1/m)
of the circle, since an m-fold root is only computable to about eps**(1/m)
in double precision.
"""

import os
from dataclasses import dataclass, replace

_ENV_VAR = "CRPOLY_TOL"


@dataclass(frozen=True)
class Tolerances:
    # base off-circle residual; effective per-root tolerance is base**(1/m)
    unit_residual_base: float = 1e-9
    # two on-circle roots with consecutive angular gap below this are merged;
    # a computed m-fold root scatters by roughly eps**(1/m) (about 1.5e-5 for
    # m = 3), so the default must sit above that to keep triple clusters whole
    angular_gap: float = 5e-5
    # allowed violation of c_{N-n} = omega*conj(c_n), relative to 1+max|c|
    cr_relation: float = 1e-9
    # allowed imaginary residue when mapping coefficients back to real coords
    imag_residue: float = 1e-9
    # discriminant cross-check (one knob, two directions): with
    # ratio = |disc from coefficients| / (cluster-floored root-product scale),
    # an Interior verdict is flagged when ratio < disc_cross and a Boundary
    # verdict when ratio > 1/disc_cross
    disc_cross: float = 1e-8

    def unit_residual(self, cluster_size):
        """Effective off-circle tolerance for a root in a cluster of the given size."""
        m = max(1, int(cluster_size))
        return self.unit_residual_base ** (1.0 / m)

    def with_angular_gap(self, gap):
        return replace(self, angular_gap=float(gap))


def default_tolerances():
    """Default bundle, honoring the CRPOLY_TOL environment override.

    CRPOLY_TOL, when set, replaces the angular cluster threshold (the same
    knob the CLI exposes as --tol).
    """
    tol = Tolerances()
    env = os.environ.get(_ENV_VAR)
    if env:
        tol = tol.with_angular_gap(float(env))
    return tol
