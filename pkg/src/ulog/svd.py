"""SVD-systems: the unique decomposition M = sum_j sigma_j A_j.

The components ``A_j`` are partial isometries with pairwise orthogonal ranges
and co-ranges. They are computed as ``P^L_j M P_j / sigma_j`` where ``P_j`` and ``P^L_j``
are the orthogonal projectors onto the right and left singular subspaces of
``sigma_j``; projectors do not depend on which singular vectors the solver
returns, so the components are basis independent.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .config import tolerances
from .errors import ToleranceError, ValidationError
from .io import matrix_from_json, matrix_to_json
from .linalg import as_cmatrix, dagger, frob_norm, skew_residual


@dataclass(frozen=True)
class SvdSystem:
    sigmas: np.ndarray          # strictly decreasing, positive
    components: tuple           # of (n, n) complex arrays

    @property
    def order(self) -> int:
        return self.components[0].shape[0]

    def __len__(self):
        return len(self.components)

    def compose(self, coefficients=None) -> np.ndarray:
        """sum_j c_j A_j, with c_j = sigma_j by default."""
        coefficients = self.sigmas if coefficients is None else coefficients
        return sum(c * A for c, A in zip(coefficients, self.components))

    def to_json(self) -> dict:
        return {
            "sigmas": [float(s) for s in self.sigmas],
            "components": [matrix_to_json(A) for A in self.components],
        }

    @classmethod
    def from_json(cls, obj) -> "SvdSystem":
        try:
            sigmas = np.array([float(s) for s in obj["sigmas"]])
            comps = tuple(matrix_from_json(c) for c in obj["components"])
        except (KeyError, TypeError) as exc:
            raise ValidationError(f"malformed SVD-system JSON: {exc}") from exc
        if len(sigmas) != len(comps):
            raise ValidationError("sigmas and components differ in length")
        return cls(sigmas=sigmas, components=comps)


@dataclass(frozen=True)
class SvdReport:
    ok: bool
    max_residual: float


def svd_decompose(M) -> SvdSystem:
    M = as_cmatrix(M, "M")
    u, s, vh = np.linalg.svd(M)
    smax = float(s[0])
    if smax == 0.0:
        raise ValidationError("the zero matrix has no SVD-decomposition")
    tol = tolerances().singular * smax
    if np.any((s > tol) & (s < 10 * tol)):
        raise ToleranceError("a singular value is too close to zero to classify")
    nonzero = np.flatnonzero(s > tol)
    runs: list[list[int]] = []
    for i in nonzero:
        if runs:
            gap = s[runs[-1][-1]] - s[i]
            if gap <= tol:
                runs[-1].append(i)
                continue
            if gap < 10 * tol:
                raise ToleranceError(
                    f"singular values {s[runs[-1][-1]]:.17g} and {s[i]:.17g} are neither "
                    "merged nor separated at the working tolerance"
                )
        runs.append([i])
    v = dagger(vh)
    sigmas, comps = [], []
    for run in runs:
        sigma = float(np.mean(s[run]))
        right, left = v[:, run], u[:, run]
        # the left projector removes round-off leakage into other left singular
        # subspaces, which M P_j / sigma_j amplifies when sigma_j is small
        comps.append(left @ dagger(left) @ M @ right @ dagger(right) / sigma)
        sigmas.append(sigma)
    return SvdSystem(sigmas=np.array(sigmas), components=tuple(comps))


def verify_svd_system(system: SvdSystem) -> SvdReport:
    """Check orthogonality, partial-isometry and ordering axioms; report the worst residual."""
    worst = 0.0
    comps = system.components
    for h, A in enumerate(comps):
        scale = max(1.0, frob_norm(A))
        worst = max(worst, frob_norm(A @ dagger(A) @ A - A) / scale)
        for B in comps[h + 1:]:
            worst = max(worst, frob_norm(dagger(A) @ B), frob_norm(A @ dagger(B)))
    s = np.asarray(system.sigmas, dtype=float)
    ordered = bool(np.all(s > 0) and np.all(np.diff(s) < 0))
    nonzero = all(frob_norm(A) > 0 for A in comps)
    ok = ordered and nonzero and worst <= tolerances().membership
    return SvdReport(ok=ok, max_residual=worst)


def rodrigues_exp(system: SvdSystem, alphas) -> np.ndarray:
    """exp(sum_j alpha_j A_j) = I + sum_j [sin(alpha_j) A_j + (1 - cos(alpha_j)) A_j^2]
    for an SVD-system of skew-Hermitian matrices."""
    alphas = np.asarray(alphas)
    if alphas.ndim != 1 or len(alphas) != len(system):
        raise ValidationError(f"expected {len(system)} coefficients, got {alphas.shape}")
    tol = tolerances().membership
    for A in system.components:
        if skew_residual(A) > tol * max(1.0, frob_norm(A)):
            raise ValidationError("rodrigues_exp needs skew-Hermitian components")
    n = system.order
    out = np.eye(n, dtype=complex)
    for a, A in zip(alphas, system.components):
        out = out + np.sin(a) * A + (1 - np.cos(a)) * (A @ A)
    return out
