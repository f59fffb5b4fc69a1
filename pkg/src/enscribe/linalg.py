"""Dense complex linear-algebra helpers shared by the higher-level modules."""

from __future__ import annotations

import numpy as np

from .errors import DimensionMismatch, GramMismatch

GRAM_TOL = 1e-10
RANK_TOL = 1e-8


def dagger(m: np.ndarray) -> np.ndarray:
    return m.conj().T


def unit(v: np.ndarray) -> np.ndarray:
    return v / np.linalg.norm(v)


def random_unitary(dim: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-ish random unitary via QR of a complex Gaussian matrix."""
    z = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    q, r = np.linalg.qr(z)
    d = np.diagonal(r)
    return q * (d / np.abs(d))


def swap_operator(dim: int) -> np.ndarray:
    """Exchange of the two tensor factors on C^dim (x) C^dim."""
    p = np.zeros((dim * dim, dim * dim), dtype=complex)
    for i in range(dim):
        for j in range(dim):
            p[i * dim + j, j * dim + i] = 1.0
    return p


def symmetric_basis(dim: int) -> np.ndarray:
    """Isometry whose columns span the swap-symmetric subspace of C^(dim^2)."""
    cols = []
    for i in range(dim):
        e = np.zeros(dim * dim, dtype=complex)
        e[i * dim + i] = 1.0
        cols.append(e)
    for i in range(dim):
        for j in range(i + 1, dim):
            e = np.zeros(dim * dim, dtype=complex)
            e[i * dim + j] = e[j * dim + i] = 1.0 / np.sqrt(2.0)
            cols.append(e)
    return np.column_stack(cols)


def _polar_orthonormal(m: np.ndarray) -> np.ndarray:
    # nearest matrix with orthonormal columns
    u, _, vh = np.linalg.svd(m, full_matrices=False)
    return u @ vh


def complete_orthonormal(cols: np.ndarray) -> np.ndarray:
    """Extend orthonormal columns to a full basis, pivoting on the canonical basis.

    Deterministic: at each step the canonical vector with the largest residual
    (lowest index on ties) is orthogonalized and appended.
    """
    dim, r = cols.shape
    if r == 0:
        return np.eye(dim, dtype=complex)
    resid = np.eye(dim, dtype=complex) - cols @ dagger(cols)
    added = []
    for _ in range(dim - r):
        norms = np.linalg.norm(resid, axis=0)
        j = int(np.argmax(norms))
        v = resid[:, j] / norms[j]
        added.append(v)
        resid -= np.outer(v, v.conj() @ resid)
    if not added:
        return np.empty((dim, 0), dtype=complex)
    return np.column_stack(added)


def unitary_from_correspondence(
    inputs,
    outputs,
    dim: int | None = None,
    gram_tol: float = GRAM_TOL,
    rank_tol: float = RANK_TOL,
) -> np.ndarray:
    """Unitary W with W @ inputs[k] = outputs[k] for Gram-matched vector families.

    Both families are mixed with the same coefficients (from the eigenbasis of
    their common Gram matrix) into orthonormal frames; the map between frames
    is extended deterministically on the orthogonal complements.

    Raises GramMismatch when the two Gram matrices differ by more than
    ``gram_tol`` entrywise, DimensionMismatch on inconsistent shapes.
    """
    a = np.column_stack([np.asarray(v, dtype=complex) for v in inputs]) if len(inputs) else None
    b = np.column_stack([np.asarray(v, dtype=complex) for v in outputs]) if len(outputs) else None
    if (a is None) != (b is None) or (a is not None and a.shape != b.shape):
        raise DimensionMismatch("input and output families must have matching shapes")
    if a is None:
        if dim is None:
            raise DimensionMismatch("dimension required for empty correspondence")
        return np.eye(dim, dtype=complex)
    if dim is not None and a.shape[0] != dim:
        raise DimensionMismatch(f"vectors have length {a.shape[0]}, expected {dim}")
    dim = a.shape[0]
    if a.shape[1] > dim:
        raise DimensionMismatch("more vectors than the space dimension")

    ga = dagger(a) @ a
    gb = dagger(b) @ b
    gap = float(np.max(np.abs(ga - gb)))
    if gap > gram_tol:
        raise GramMismatch(f"Gram matrices differ by {gap:.3e} (> {gram_tol:.1e})")

    w, e = np.linalg.eigh(0.5 * (ga + gb))
    keep = w > rank_tol * max(float(w[-1]), 1e-300)
    mix = e[:, keep] / np.sqrt(w[keep])
    a_frame = _polar_orthonormal(a @ mix)
    b_frame = _polar_orthonormal(b @ mix)
    a_full = np.column_stack([a_frame, complete_orthonormal(a_frame)])
    b_full = np.column_stack([b_frame, complete_orthonormal(b_frame)])
    return b_full @ dagger(a_full)
