"""Canonical matrices and the standard embeddings between matrix algebras.

* ``decomplexify``: C^{h x h} -> R^{2h x 2h}, z -> Re(z) I_2 + Im(z) Omega blockwise.
* ``quaternion_embed``: H^{h x h} -> C^{2h x 2h}, z + w j -> [[z, -w], [conj w, conj z]].
* ``shuffle_permutation``: the permutation B with B^T Omega_n B = Omega^{(+)n}.
"""

from __future__ import annotations

import math

import numpy as np

from .errors import ValidationError
from .linalg import as_cmatrix, check_unitary, dagger, direct_sum

OMEGA = np.array([[0.0, -1.0], [1.0, 0.0]])


def omega_n(n: int) -> np.ndarray:
    """Omega_n = [[0, -I_n], [I_n, 0]]."""
    if n < 1:
        raise ValidationError("omega_n needs n >= 1")
    z = np.zeros((n, n))
    eye = np.eye(n)
    return np.block([[z, -eye], [eye, z]]).astype(complex)


def omega_blocks(n: int) -> np.ndarray:
    """Omega (+) ... (+) Omega, n copies."""
    if n < 1:
        raise ValidationError("omega_blocks needs n >= 1")
    return np.kron(np.eye(n), OMEGA).astype(complex)


def rotation(phi: float) -> np.ndarray:
    c, s = math.cos(phi), math.sin(phi)
    return np.array([[c, -s], [s, c]])


def _check_pq(p: int, q: int) -> None:
    if p < 0 or q < 0 or p + q < 1:
        raise ValidationError(f"need p, q >= 0 and p + q >= 1, got ({p}, {q})")


def e_phi(phi: float, p: int, q: int = 0) -> np.ndarray:
    """E_phi^{(p,q)} = E_phi^{(+)p} (+) (-E_phi)^{(+)q}."""
    _check_pq(p, q)
    E = rotation(phi)
    return direct_sum(*([E] * p + [-E] * q))


def w_matrix(p: int, q: int) -> np.ndarray:
    """W_{(p,q)} = I_p (+) i I_q."""
    _check_pq(p, q)
    return np.diag(np.concatenate([np.ones(p), 1j * np.ones(q)]))


def j_matrix(p: int, q: int) -> np.ndarray:
    """J^{(p,q)} = I_p (+) (-I_q)."""
    _check_pq(p, q)
    return np.diag(np.concatenate([np.ones(p), -np.ones(q)])).astype(complex)


def canonical_matrix(kind: str, **params) -> np.ndarray:
    """Build one of ``omega_n``, ``omega_blocks``, ``E_phi``, ``W``, ``J``."""
    try:
        if kind == "omega_n":
            return omega_n(int(params["n"]))
        if kind == "omega_blocks":
            return omega_blocks(int(params["n"]))
        if kind == "E_phi":
            return e_phi(float(params["phi"]), int(params["p"]), int(params.get("q", 0)))
        if kind == "W":
            return w_matrix(int(params["p"]), int(params["q"]))
        if kind == "J":
            return j_matrix(int(params["p"]), int(params["q"]))
    except KeyError as exc:
        raise ValidationError(f"canonical_matrix({kind!r}) missing parameter {exc}") from exc
    raise ValidationError(f"unknown canonical matrix {kind!r}")


def decomplexify(Z) -> np.ndarray:
    Z = np.atleast_2d(np.asarray(Z, dtype=complex))
    h, k = Z.shape
    out = np.zeros((2 * h, 2 * k))
    out[0::2, 0::2] = Z.real
    out[1::2, 1::2] = Z.real
    out[0::2, 1::2] = -Z.imag
    out[1::2, 0::2] = Z.imag
    return out


def recomplexify(R) -> np.ndarray:
    """Left inverse of :func:`decomplexify` (reads the first column of each 2x2 block)."""
    R = np.asarray(R)
    return (R[0::2, 0::2] + 1j * R[1::2, 0::2]).astype(complex)


def quaternion_embed(z, w) -> np.ndarray:
    """Psi of the quaternion matrix with entries z + w j (z, w complex arrays)."""
    z = np.atleast_2d(np.asarray(z, dtype=complex))
    w = np.atleast_2d(np.asarray(w, dtype=complex))
    if z.shape != w.shape:
        raise ValidationError("quaternion parts must have equal shapes")
    h, k = z.shape
    out = np.zeros((2 * h, 2 * k), dtype=complex)
    out[0::2, 0::2] = z
    out[0::2, 1::2] = -w
    out[1::2, 0::2] = w.conj()
    out[1::2, 1::2] = z.conj()
    return out


def quaternion_parts(X) -> tuple[np.ndarray, np.ndarray]:
    """Left inverse of :func:`quaternion_embed`."""
    X = np.asarray(X, dtype=complex)
    return X[0::2, 0::2].copy(), -X[0::2, 1::2]


def quaternion_conj_map(v: np.ndarray) -> np.ndarray:
    """The antiunitary map v -> Omega^{(+)k} conj(v) on C^{2k}; its square is -1."""
    v = np.asarray(v, dtype=complex)
    out = np.empty_like(v)
    out[0::2] = -v[1::2].conj()
    out[1::2] = v[0::2].conj()
    return out


def shuffle_permutation(n: int) -> np.ndarray:
    if n < 1:
        raise ValidationError("shuffle_permutation needs n >= 1")
    B = np.zeros((2 * n, 2 * n))
    for j in range(1, n + 1):
        B[j - 1, 2 * j - 2] = 1.0
        B[n + j - 1, 2 * j - 1] = 1.0
    return B


AUTOMORPHISMS = ("adV", "adV∘conj", "adV∘negT", "adV∘negAdj")
_ASCII = {"adV-conj": "adV∘conj", "adV-negT": "adV∘negT", "adV-negAdj": "adV∘negAdj"}


def apply_automorphism(family: str, V, A) -> np.ndarray:
    """Evaluate a member of the four automorphism families of gl_n(C).

    ``adV``: V A V^*; ``adV∘conj``: V conj(A) V^*; ``adV∘negT``: -V A^T V^*;
    ``adV∘negAdj``: -V A^* V^*. ASCII spellings with ``-`` are accepted.
    """
    family = _ASCII.get(family, family)
    V = check_unitary(V, "V")
    A = as_cmatrix(A, "A")
    if V.shape != A.shape:
        raise ValidationError("V and A must have the same order")
    if family == "adV":
        inner = A
    elif family == "adV∘conj":
        inner = A.conj()
    elif family == "adV∘negT":
        inner = -A.T
    elif family == "adV∘negAdj":
        inner = -dagger(A)
    else:
        raise ValidationError(f"unknown automorphism family {family!r}")
    return V @ inner @ dagger(V)
