"""Finite sets of quantum states: validation, Gram data, classification, equivalence.

A "text" is a finite ordered set of normalized, pairwise non-colinear vectors in
a complex inner-product space (its "language"). The span of the states is the
"dialect"; a text whose dialect fills the language is "thick".
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations

import numpy as np

from . import linalg
from .errors import (
    ColinearPair,
    DimensionMismatch,
    GramMismatch,
    NonUnitState,
    SizeMismatch,
    ZOutOfRange,
)

DEFAULT_TOL = 1e-9
RANK_TOL = 1e-8


@dataclass(frozen=True)
class QuantumText:
    """N pairwise non-colinear unit vectors in a d-dimensional complex space.

    ``states`` holds the vectors column-wise: ``states[:, i]`` is state i.
    Instances are built through :func:`make_text`, which validates the
    invariants (unit norms, no colinear pair).
    """

    dimension: int
    states: np.ndarray

    @property
    def n_states(self) -> int:
        return self.states.shape[1]

    def state(self, i: int) -> np.ndarray:
        return self.states[:, i]

    def subtext(self, indices) -> "QuantumText":
        idx = list(indices)
        return QuantumText(self.dimension, self.states[:, idx].copy())


@dataclass(frozen=True)
class TextClassification:
    classical: bool
    fully_quantum: bool
    efficient: bool
    thick: bool
    dialect_dimension: int


@dataclass(frozen=True)
class EquivalenceWitness:
    """Witness that textA equals textB after relabeling, phases, and a rotation.

    Semantics: ``A.state(i) == phases[i] * unitary @ B.state(permutation[i])``.
    """

    permutation: tuple
    phases: np.ndarray
    unitary: np.ndarray


@dataclass(frozen=True)
class DirectSumSplit:
    """Tablet-induced split of a text into an orthogonal and an overlapping part."""

    classical_indices: tuple
    quantum_indices: tuple
    classical_block_ok: bool
    quantum_block_ok: bool
    cross_ok: bool

    @property
    def consistent(self) -> bool:
        return self.classical_block_ok and self.quantum_block_ok and self.cross_ok


def make_text(dimension: int, raw_states, tol: float = DEFAULT_TOL) -> QuantumText:
    """Validate raw vectors into a QuantumText.

    States whose norm deviates from 1 by less than ``tol`` are re-normalized;
    larger deviations raise NonUnitState. A pair with overlap modulus at or
    above ``1 - tol`` raises ColinearPair.
    """
    if dimension < 1:
        raise DimensionMismatch("dimension must be >= 1")
    vecs = [np.asarray(v, dtype=complex).reshape(-1) for v in raw_states]
    if not vecs:
        raise DimensionMismatch("a text needs at least one state")
    for k, v in enumerate(vecs):
        if v.shape[0] != dimension:
            raise DimensionMismatch(f"state {k} has length {v.shape[0]}, expected {dimension}")
        norm = float(np.linalg.norm(v))
        if abs(norm - 1.0) >= tol:
            raise NonUnitState(f"state {k} has norm {norm}")
        vecs[k] = v / norm
    mat = np.column_stack(vecs)
    g = linalg.dagger(mat) @ mat
    n = mat.shape[1]
    for i in range(n):
        for j in range(i + 1, n):
            if abs(g[i, j]) >= 1.0 - tol:
                raise ColinearPair(f"states {i} and {j} are colinear (|overlap|={abs(g[i, j]):.12f})")
    return QuantumText(dimension, mat)


def gram(text: QuantumText) -> np.ndarray:
    """Matrix of pairwise overlaps <psi_i|psi_j>; Hermitian, unit diagonal, PSD."""
    return linalg.dagger(text.states) @ text.states


def classify(text: QuantumText, tol: float = DEFAULT_TOL, rank_tol: float = RANK_TOL) -> TextClassification:
    """Flags: pairwise-orthogonal, pairwise-overlapping, linearly independent, spanning."""
    g = gram(text)
    n = text.n_states
    off = np.abs(g[np.triu_indices(n, 1)])
    classical = bool(np.all(off < tol)) if off.size else True
    fully_quantum = bool(np.all(off > tol)) if off.size else True
    eigs = np.linalg.eigvalsh(g)
    dialect_dim = int(np.sum(eigs > rank_tol * max(float(eigs[-1]), 1e-300)))
    # one or two valid states are always independent, whatever the eigen cutoff says
    efficient = dialect_dim == n or n <= 2
    if n <= 2:
        dialect_dim = n
    return TextClassification(
        classical=classical,
        fully_quantum=fully_quantum,
        efficient=efficient,
        thick=dialect_dim == text.dimension,
        dialect_dimension=dialect_dim,
    )


def make_real_uniform(n_states: int, z: float) -> QuantumText:
    """N unit vectors in dimension N with constant real pairwise overlap z.

    Built as columns of the principal square root of (1-z) I + z J; for
    z = -1/(N-1) the states span only N-1 dimensions.
    """
    n = int(n_states)
    if n < 1:
        raise DimensionMismatch("n_states must be >= 1")
    if n == 1:
        return make_text(1, [[1.0]])
    z = float(z)
    lo = -1.0 / (n - 1)
    if not (lo <= z < 1.0) or abs(z) >= 1.0 - DEFAULT_TOL:
        raise ZOutOfRange(f"need -1/(N-1) <= z < 1 with |z| < 1, got {z}")
    lam = 1.0 + (n - 1) * z
    a = np.sqrt(1.0 - z)
    b = (np.sqrt(lam) - a) / n
    root = a * np.eye(n) + b * np.ones((n, n))
    return make_text(n, [root[:, i] for i in range(n)])


def direct_sum_decompose(text: QuantumText, tablet, tol: float = DEFAULT_TOL) -> DirectSumSplit:
    """Split indices by orthogonality to the tablet and test the direct-sum pattern.

    The orthogonal part must be pairwise orthogonal, the overlapping part
    pairwise non-orthogonal, and all cross overlaps must vanish; any failure
    means the tablet cannot serve an enscription of this text.
    """
    tab = linalg.unit(np.asarray(tablet, dtype=complex).reshape(-1))
    if tab.shape[0] != text.dimension:
        raise DimensionMismatch("tablet length does not match the language dimension")
    ov = np.abs(linalg.dagger(text.states) @ tab)
    t1 = tuple(int(i) for i in np.nonzero(ov < tol)[0])
    t2 = tuple(int(i) for i in np.nonzero(ov >= tol)[0])
    g = np.abs(gram(text))
    classical_ok = all(g[i, j] < tol for a, i in enumerate(t1) for j in t1[a + 1:])
    quantum_ok = all(g[i, j] > tol for a, i in enumerate(t2) for j in t2[a + 1:])
    cross_ok = all(g[i, j] < tol for i in t1 for j in t2)
    return DirectSumSplit(t1, t2, classical_ok, quantum_ok, cross_ok)


def _phase_witness(source_gram, target_gram, edges, tol):
    """Propagate per-state phases over a spanning forest; check all cycles."""
    n = target_gram.shape[0]
    beta = np.zeros(n, dtype=complex)
    ratio = np.ones((n, n), dtype=complex)
    for i, j in edges:
        ratio[i, j] = target_gram[i, j] / source_gram[i, j]
        ratio[j, i] = np.conj(ratio[i, j])
    adj = [[] for _ in range(n)]
    for i, j in edges:
        adj[i].append(j)
        adj[j].append(i)
    for root in range(n):
        if beta[root] != 0:
            continue
        beta[root] = 1.0
        stack = [root]
        while stack:
            i = stack.pop()
            for j in adj[i]:
                if beta[j] == 0:
                    beta[j] = beta[i] * ratio[i, j]
                    stack.append(j)
    for i, j in edges:
        # Bargmann-invariant consistency: every cycle product must close up
        if abs(np.conj(beta[i]) * beta[j] - ratio[i, j]) > tol:
            return None
    return beta


def equivalent(text_a: QuantumText, text_b: QuantumText, tol: float = 1e-8):
    """Witness that text_a and text_b agree up to permutation, phases, and a unitary.

    Returns an EquivalenceWitness or None. Permutations are enumerated (meant
    for N <= 10), candidate phases are solved along a spanning forest of the
    nonzero-overlap graph and verified on every cycle, and the rotation is
    built from the Gram-matched state correspondence.
    """
    if text_a.dimension != text_b.dimension or text_a.n_states != text_b.n_states:
        raise SizeMismatch("texts must share the state count and language dimension")
    n = text_a.n_states
    za, zb = gram(text_a), gram(text_b)
    abs_a, abs_b = np.abs(za), np.abs(zb)
    row_sig_a = [tuple(np.sort(np.round(abs_a[i], 6))) for i in range(n)]
    row_sig_b = [tuple(np.sort(np.round(abs_b[i], 6))) for i in range(n)]
    for perm in permutations(range(n)):
        # candidate relation: text_a.state(i) == beta_i * V @ text_b.state(perm[i])
        if any(row_sig_b[perm[i]] != row_sig_a[i] for i in range(n)):
            continue
        zb_perm = zb[np.ix_(perm, perm)]
        if np.max(np.abs(np.abs(zb_perm) - abs_a)) > tol:
            continue
        edges = [(i, j) for i in range(n) for j in range(i + 1, n) if abs_a[i, j] > tol]
        beta = _phase_witness(zb_perm, za, edges, tol)
        if beta is None:
            continue
        sources = [text_b.state(perm[i]) for i in range(n)]
        targets = [np.conj(beta[i]) * text_a.state(i) for i in range(n)]
        try:
            v = linalg.unitary_from_correspondence(sources, targets, text_a.dimension, gram_tol=tol)
        except GramMismatch:
            continue
        err = max(
            float(np.linalg.norm(text_a.state(i) - beta[i] * v @ text_b.state(perm[i])))
            for i in range(n)
        )
        if err < tol * 10:
            return EquivalenceWitness(tuple(perm), beta, v)
    return None
