"""Negativity of bipartite states, generic and X-state closed form.

The generic route (eigenvalues of the partial transpose) is the oracle; the
X-state formula is the fast path used by parameter sweeps.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import prod

import numpy as np

from .qla import POSITIVITY_TOL, Operator, default_tol, partial_transpose

X_PATTERN = np.array(
    [
        [1, 0, 0, 1],
        [0, 1, 0, 0],
        [0, 0, 1, 0],
        [1, 0, 0, 1],
    ],
    dtype=bool,
)


@dataclass(frozen=True)
class NegativityValue:
    """Negativity with the raw (unclamped) number kept alongside the
    sanitized value.  Clamping beyond ``tol`` is refused, since a genuinely
    out-of-range number signals an evolution bug.  For qubit pairs the
    attainable range is [0, 1]; for a d x D bipartition it is [0, min-1]."""

    value: float
    raw: float

    @classmethod
    def from_raw(
        cls, raw: float, tol: float = POSITIVITY_TOL, upper: float = 1.0
    ) -> "NegativityValue":
        if raw < -tol or raw > upper + tol:
            raise ValueError(
                f"negativity {raw!r} outside [0, {upper}] by more than tol {tol:.1e}"
            )
        return cls(min(max(raw, 0.0), upper), raw)

    def __float__(self) -> float:
        return self.value


@dataclass(frozen=True)
class XStateCoeffs:
    """The five independent entries of a two-qubit X state: diagonal
    (a, b, c, d) and the outer anti-diagonal coherence f."""

    a: float
    b: float
    c: float
    d: float
    f: complex

    def validate(self, tol: float = POSITIVITY_TOL) -> None:
        diag = (self.a, self.b, self.c, self.d)
        if abs(sum(diag) - 1.0) > tol:
            raise ValueError(f"diagonal sums to {sum(diag)!r}, not 1 within {tol:.1e}")
        if min(diag) < -tol:
            raise ValueError(f"negative diagonal entry {min(diag)!r}")
        if abs(self.f) ** 2 > self.a * self.d + tol:
            raise ValueError(
                f"|f|^2 = {abs(self.f)**2!r} exceeds a*d = {self.a * self.d!r} beyond tol"
            )

    def to_operator(self) -> Operator:
        m = np.zeros((4, 4), dtype=complex)
        m[0, 0], m[1, 1], m[2, 2], m[3, 3] = self.a, self.b, self.c, self.d
        m[0, 3] = self.f
        m[3, 0] = np.conj(self.f)
        return Operator(m, (2, 2))

    @classmethod
    def from_operator(cls, rho: Operator, tol: float | None = None) -> "XStateCoeffs":
        """Extract coefficients, rejecting matrices without the X sparsity
        pattern or with non-real diagonal."""
        tol = default_tol() if tol is None else tol
        if rho.dims != (2, 2):
            raise ValueError(f"expected a two-qubit state, got dims {rho.dims}")
        m = rho.matrix
        stray = float(np.abs(np.where(X_PATTERN, 0.0, m)).max())
        if stray > tol:
            raise ValueError(f"matrix is not X-shaped: off-pattern entry {stray:.3e}")
        if float(np.abs(np.imag(np.diag(m))).max()) > tol:
            raise ValueError("diagonal entries are not real")
        return cls(m[0, 0].real, m[1, 1].real, m[2, 2].real, m[3, 3].real, complex(m[0, 3]))


def negativity(rho: Operator, cut: int = 1, tol: float = POSITIVITY_TOL) -> NegativityValue:
    """Negativity of ``rho`` across the bipartition (dims before ``cut``,
    dims from ``cut`` on): minus twice the sum of negative eigenvalues of
    the partial transpose."""
    n = len(rho.dims)
    if n < 2 or not 1 <= cut <= n - 1:
        raise ValueError(f"cut {cut} does not split dims {rho.dims} in two")
    if not rho.is_density(psd_tol=tol):
        raise ValueError("input is not a density operator (trace/Hermiticity/positivity)")
    transposed = rho
    for k in range(cut, n):
        transposed = partial_transpose(transposed, k)
    eigs = np.linalg.eigvalsh(transposed.matrix)
    raw = float(-2.0 * eigs[eigs < 0].sum())
    d_first = prod(rho.dims[:cut])
    d_second = prod(rho.dims[cut:])
    return NegativityValue.from_raw(raw, tol, upper=float(min(d_first, d_second) - 1))


def negativity_xstate(coeffs: XStateCoeffs, tol: float = POSITIVITY_TOL) -> NegativityValue:
    """Closed-form negativity of an X state:
    max(0, sqrt((b - c)^2 + 4 |f|^2) - (b + c))."""
    coeffs.validate(tol)
    raw = xstate_negativity_raw(coeffs.b, coeffs.c, abs(coeffs.f))
    return NegativityValue.from_raw(float(raw), tol)


def xstate_negativity_raw(b, c, f_abs):
    """Vectorized X-state negativity; accepts scalars or arrays."""
    return np.maximum(0.0, np.sqrt((b - c) ** 2 + 4.0 * f_abs**2) - (b + c))


def schmidt_angle_from_negativity(value: float) -> float:
    """Angle theta in [0, pi/4] whose Schmidt state cos(theta)|00> +
    sin(theta)|11> has the requested negativity |sin 2 theta|."""
    if not 0.0 <= value <= 1.0:
        raise ValueError(f"negativity {value!r} outside [0, 1]")
    return 0.5 * float(np.arcsin(value))
