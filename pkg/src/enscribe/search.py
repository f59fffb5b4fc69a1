"""Seeded multi-start numerical search for enscription parameters.

For a fixed tablet and entanglement parameter the output phases can be
eliminated: every pair with a nonzero overlap forces the relative phase, and
a consistent assignment is propagated over a spanning forest of the
nonzero-overlap graph. The remaining objective depends only on the tablet
(and Q when it is not fixed) and vanishes exactly at enscribable parameters.

Each start runs a simplex descent followed by a finite-difference
least-squares polish; the winner over all starts is the lexicographic minimum
of (residual, start index), so results are reproducible for a given seed.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import sqrt

import numpy as np
from scipy.optimize import least_squares, minimize

from . import texts
from .certificates import EnscriptionCertificate, EnscriptionParams, certificate

ACCEPT_TOL = 1e-8
FLOOR_TOL = 1e-4


@dataclass(frozen=True)
class SearchOptions:
    seed: int = 0
    starts: int = 64
    max_iterations: int = 4000
    accept_tol: float = ACCEPT_TOL
    floor_tol: float = FLOOR_TOL
    q_grid: float = 0.01


@dataclass(frozen=True)
class SearchResult:
    """Best certificate found (if any) together with the attained residual."""

    certificate: EnscriptionCertificate | None
    best_residual: float
    verdict: str
    Q: float | None
    start_index: int
    evaluations: int = 0

    @property
    def feasible(self) -> bool:
        return self.certificate is not None


class _Objective:
    """Residual of the phase-eliminated matching condition at (tablet, Q).

    Works on plain Python complex scalars; the problem sizes here (a handful
    of states in a handful of dimensions) make that faster than vectorizing.
    """

    def __init__(self, text: texts.QuantumText, tol: float = 1e-12):
        self.n = text.n_states
        self.d = text.dimension
        self.conj_states = [
            [complex(text.states[k, i]).conjugate() for k in range(self.d)]
            for i in range(self.n)
        ]
        g = texts.gram(text)
        self.pairs = [
            (i, j, complex(g[i, j]), complex(g[i, j]) ** 2)
            for i in range(self.n)
            for j in range(i + 1, self.n)
        ]
        self.z_of = {
            (i, j): complex(g[i, j]) for i in range(self.n) for j in range(self.n)
        }
        self.z2_of = {key: z * z for key, z in self.z_of.items()}
        nz = np.abs(g) > tol
        np.fill_diagonal(nz, False)
        self.forest = self._spanning_forest(nz)

    def _spanning_forest(self, nz: np.ndarray) -> list:
        seen = [False] * self.n
        order = []
        for root in range(self.n):
            if seen[root]:
                continue
            seen[root] = True
            queue = [root]
            while queue:
                i = queue.pop(0)
                for j in range(self.n):
                    if nz[i, j] and not seen[j]:
                        seen[j] = True
                        order.append((i, j))
                        queue.append(j)
        return order

    def tablet_of(self, x) -> list | None:
        d = self.d
        xs = [float(v) for v in x[: 2 * d]]
        norm_sq = sum(v * v for v in xs)
        if norm_sq < 1e-18:
            return None
        inv = 1.0 / sqrt(norm_sq)
        return [complex(xs[k], xs[k + d]) * inv for k in range(d)]

    def q_of(self, x, fixed_q: float | None) -> float:
        if fixed_q is not None:
            return fixed_q
        return min(1.0, max(-1.0 + 1e-9, float(x[-1])))

    def _alphas(self, ov: list, sq: list, big_q: float) -> list:
        alphas = [complex(1.0)] * self.n
        for i, j in self.forest:
            z2 = self.z2_of[(i, j)]
            lhs = self.z_of[(i, j)] + big_q * ov[i] * ov[j].conjugate()
            forced = lhs / (sq[i] * sq[j] * z2)
            mod = abs(forced)
            alphas[j] = alphas[i] * (forced / mod if mod > 0.0 else 1.0)
        return alphas

    def _mismatches(self, tablet: list, big_q: float) -> list:
        ov = [sum(c * t for c, t in zip(row, tablet)) for row in self.conj_states]
        sq = [
            sqrt(max(0.0, 1.0 + big_q * (o.real * o.real + o.imag * o.imag)))
            for o in ov
        ]
        alphas = self._alphas(ov, sq, big_q)
        return [
            z + big_q * ov[i] * ov[j].conjugate() - sq[i] * sq[j] * alphas[i].conjugate() * alphas[j] * z2
            for i, j, z, z2 in self.pairs
        ]

    def phases_for(self, tablet, big_q: float) -> np.ndarray:
        tab = [complex(v) for v in tablet]
        ov = [sum(c * t for c, t in zip(row, tab)) for row in self.conj_states]
        sq = [sqrt(max(0.0, 1.0 + big_q * abs(o) ** 2)) for o in ov]
        return np.array(self._alphas(ov, sq, big_q), dtype=complex)

    def max_residual(self, tablet, big_q: float) -> float:
        if self.n < 2:
            return 0.0
        return max(abs(m) for m in self._mismatches([complex(v) for v in tablet], big_q))

    def rms(self, x, fixed_q: float | None) -> float:
        tablet = self.tablet_of(x)
        if tablet is None:
            return 1e6
        if self.n < 2:
            return 0.0
        ms = self._mismatches(tablet, self.q_of(x, fixed_q))
        return sqrt(sum(m.real * m.real + m.imag * m.imag for m in ms) / len(ms))

    def residual_vector(self, x, fixed_q: float | None) -> np.ndarray:
        tablet = self.tablet_of(x)
        if tablet is None:
            return np.full(max(2 * len(self.pairs), 1), 1e3)
        ms = self._mismatches(tablet, self.q_of(x, fixed_q))
        out = np.empty(2 * len(ms))
        for k, m in enumerate(ms):
            out[2 * k] = m.real
            out[2 * k + 1] = m.imag
        return out


def _structured_tablets(text: texts.QuantumText) -> list:
    cands = []
    total = text.states.sum(axis=1)
    norm = np.linalg.norm(total)
    if norm > 1e-6:
        cands.append(total / norm)
    for i in range(min(text.n_states, 4)):
        cands.append(text.state(i).copy())
    return cands


def _starts_for(text: texts.QuantumText, options: SearchOptions, joint_q: bool) -> list:
    d = text.dimension
    rng = np.random.default_rng(options.seed)
    xs = []
    for tab in _structured_tablets(text):
        x = np.concatenate([tab.real, tab.imag, [0.0]] if joint_q else [tab.real, tab.imag])
        xs.append(x)
    while len(xs) < options.starts:
        vec = rng.standard_normal(2 * d)
        if joint_q:
            vec = np.concatenate([vec, rng.uniform(-0.95, 0.95, 1)])
        xs.append(vec)
    return xs[: options.starts]


def _minimize_start(obj: _Objective, x0: np.ndarray, fixed_q: float | None, options: SearchOptions):
    n = len(x0)
    descent = minimize(
        lambda x: obj.rms(x, fixed_q),
        x0,
        method="Nelder-Mead",
        options={
            "maxfev": min(options.max_iterations, 300 * n),
            "xatol": 1e-10,
            "fatol": 1e-13,
        },
    )
    evals = descent.nfev
    x_best, f_best = descent.x, descent.fun
    polish = least_squares(
        lambda x: obj.residual_vector(x, fixed_q),
        x_best,
        method="trf",
        xtol=3e-16,
        ftol=3e-16,
        gtol=1e-15,
        max_nfev=150,
    )
    evals += polish.nfev * (n + 1)
    f_polish = obj.rms(polish.x, fixed_q)
    if f_polish < f_best:
        x_best, f_best = polish.x, f_polish
    return x_best, evals


def feasibility_search(
    text: texts.QuantumText,
    big_q: float | None = None,
    options: SearchOptions | None = None,
) -> SearchResult:
    """Search tablets (and optionally Q) for a valid enscription certificate.

    ``big_q`` may be a fixed entanglement parameter, an explicit iterable of
    values to sweep, or None to optimize over Q jointly with the tablet.

    A certificate is returned only when the best residual beats the accept
    tolerance; otherwise the result records the attained floor with verdict
    "infeasible" (above the floor tolerance) or "inconclusive" (in between).
    """
    options = options or SearchOptions()
    if big_q is not None and np.iterable(big_q):
        return _grid_search(text, [float(v) for v in big_q], options)
    obj = _Objective(text)
    joint = big_q is None
    fixed_q = None if joint else float(big_q)
    best_x, best_res, best_idx, evals = None, np.inf, -1, 0
    for idx, x0 in enumerate(_starts_for(text, options, joint)):
        x, used = _minimize_start(obj, x0, fixed_q, options)
        evals += used
        tablet = obj.tablet_of(x)
        if tablet is None:
            continue
        res = obj.max_residual(tablet, obj.q_of(x, fixed_q))
        if res < best_res:
            best_x, best_res, best_idx = x, res, idx
    if best_x is None:
        return SearchResult(None, np.inf, "infeasible", fixed_q, -1, evals)
    tablet = np.array(obj.tablet_of(best_x), dtype=complex)
    qv = obj.q_of(best_x, fixed_q)
    if best_res < options.accept_tol:
        params = EnscriptionParams.from_Q(qv, tablet, phases=obj.phases_for(tablet, qv))
        return SearchResult(certificate(text, params), best_res, "feasible", qv, best_idx, evals)
    verdict = "infeasible" if best_res > options.floor_tol else "inconclusive"
    return SearchResult(None, best_res, verdict, qv, best_idx, evals)


def _grid_search(text: texts.QuantumText, grid: list, options: SearchOptions) -> SearchResult:
    best: SearchResult | None = None
    for qv in grid:
        result = feasibility_search(text, qv, options)
        if best is None or result.best_residual < best.best_residual:
            best = result
    return best if best is not None else SearchResult(None, np.inf, "infeasible", None, -1, 0)


def default_q_grid(step: float = 0.01) -> np.ndarray:
    """Grid over (-1, 1] used when sweeping the entanglement parameter."""
    count = int(round(2.0 / step))
    return np.linspace(-1.0 + step, 1.0, count)
