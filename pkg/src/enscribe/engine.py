"""Closed-form enscription solvers, entanglement-parameter ranges, and screens."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import linalg, texts
from .certificates import (
    EnscriptionCertificate,
    EnscriptionParams,
    certificate,
    enscription_residual,
    entangled_input,
)
from .errors import (
    DirectionNotOrthogonal,
    IllegibleText,
    InvalidInputCertificate,
    NotADirectSum,
    RootNotBracketed,
    SizeMismatch,
    TOutOfRange,
    ZOutOfRange,
)

ACCEPT_TOL = 1e-8
RANK_TOL = 1e-8


@dataclass(frozen=True)
class QInterval:
    """Closed/open interval of feasible entanglement parameters.

    Endpoint flavors annotate what is known about the boundary enscription:
    "central", "weakly_central", "quasi_central", "closed" (attained, flavor
    unasserted), or "open" (endpoint excluded).
    """

    lower: float
    upper: float
    lower_closed: bool
    upper_closed: bool
    lower_flavor: str
    upper_flavor: str

    def contains(self, value: float, margin: float = 0.0) -> bool:
        """Membership test; a positive margin shrinks the interval at both ends."""
        lo = self.lower + margin
        hi = self.upper - margin
        lo_ok = value >= lo if self.lower_closed else value > lo
        hi_ok = value <= hi if self.upper_closed else value < hi
        return lo_ok and hi_ok


@dataclass(frozen=True)
class QRangeResult:
    intervals: tuple

    def contains(self, value: float, margin: float = 0.0) -> bool:
        return any(iv.contains(value, margin) for iv in self.intervals)

    @property
    def empty(self) -> bool:
        return len(self.intervals) == 0


@dataclass(frozen=True)
class IllegibilityReport:
    """Outcome of the stack of necessary conditions for enscribability."""

    efficient_ok: bool
    lemma2_pattern_ok: bool
    eigen_sign_ok: bool
    eigen_sign: int | None
    uniform_threshold_ok: bool | None
    verdict: str
    reason: str | None

    @property
    def illegible(self) -> bool:
        return self.reason is not None


def solve_two_text(text: texts.QuantumText) -> EnscriptionCertificate:
    """Central-tablet enscription of a 2-text (always exists).

    A real overlap z is kept as-is while -2z/(1+z)^2 stays inside [-1, 1]
    (that covers all z >= sqrt(3)-2, where the boundary value reaches exactly
    1); otherwise the second state is phase-rotated to make the overlap equal
    |z|, which shows up as a non-trivial output phase.
    """
    if text.n_states != 2:
        raise SizeMismatch("solver only applies to 2-texts")
    z = complex(texts.gram(text)[0, 1])
    direct_ok = abs(z.imag) < 1e-12 and abs(-2.0 * z.real / (1.0 + z.real) ** 2) <= 1.0 + 1e-12
    if direct_ok:
        phase2 = 1.0 + 0j
        zr = z.real
    else:
        phase2 = np.conj(z) / abs(z)
        zr = abs(z)
    tablet = linalg.unit(text.state(0) + phase2 * text.state(1))
    big_q = min(1.0, max(-1.0, -2.0 * zr / (1.0 + zr) ** 2))
    params = EnscriptionParams.from_Q(big_q, tablet, phases=np.array([1.0, phase2]))
    return certificate(text, params)


def q_range_two_text(z_modulus: float) -> QRangeResult:
    """Feasible entanglement parameters of a thick 2-text with overlap modulus z."""
    z = float(z_modulus)
    if not 0.0 <= z < 1.0:
        raise ZOutOfRange(f"overlap modulus must lie in [0, 1), got {z}")
    pos_lo = 2.0 * z / (1.0 + z * z)
    neg_hi = -2.0 * z / (1.0 + z) ** 2
    return QRangeResult(
        intervals=(
            QInterval(-1.0, neg_hi, False, True, "open", "weakly_central"),
            QInterval(pos_lo, 1.0, True, True, "weakly_central", "closed"),
        )
    )


def uniform_sextic(n_states: int, z: float) -> float:
    """Feasibility polynomial of real uniform N-texts evaluated at overlap z."""
    n = int(n_states)
    if n < 3:
        raise SizeMismatch("defined for N >= 3")
    z = float(z)
    return (
        1.0
        + 2.0 * (n - 1) * z
        - 3.0 * (n - 2) * z ** 2
        + 4.0 * (n - 1) * z ** 3
        + 3.0 * (n - 2) * z ** 4
        - 2.0 * (2 * n - 3) * z ** 5
        + (n - 1) * z ** 6
    )


def z0_threshold(n_states: int, tol: float = 1e-10) -> float:
    """Unique root of the feasibility sextic in (-1/(N-1), 0), by bisection.

    Real uniform N-texts with overlap below this threshold admit no
    enscription for any deformation.
    """
    n = int(n_states)
    if n < 3:
        raise SizeMismatch("defined for N >= 3")
    a = -1.0 / (n - 1) + 1e-13
    b = -1e-13
    fa, fb = uniform_sextic(n, a), uniform_sextic(n, b)
    if not (fa < 0.0 < fb):
        raise RootNotBracketed(f"no sign change on ({a}, {b}) for N={n}")
    while b - a > tol:
        mid = 0.5 * (a + b)
        if uniform_sextic(n, mid) < 0.0:
            a = mid
        else:
            b = mid
    return 0.5 * (a + b)


def _uniform_q2(n: int, z: float) -> float:
    return -n * z / ((1.0 + z) * (1.0 + (n - 1) * z))


def _uniform_q1(n: int, z: float) -> float:
    num = -z * (4.0 * z * (1.0 - z * z) * (1.0 - z) + n * (1.0 - 2.0 * z + 3.0 * z ** 2 + 2.0 * z ** 3 - 3.0 * z ** 4))
    den = (1.0 + z) * (1.0 + (n - 1) * z) * (1.0 - z + z * z) ** 2
    return num / den


def q_range_real_uniform(n_states: int, z: float) -> QRangeResult:
    """Feasible entanglement parameters of a thick real uniform N-text, N >= 3.

    The closed-form endpoints are intersected with (-1, 1]; an empty result
    means the text is illegible. The endpoint produced by the central tablet
    is flagged "central"; every other feasible value is quasi-central.
    """
    n = int(n_states)
    if n < 3:
        raise SizeMismatch("defined for N >= 3")
    z = float(z)
    if not -1.0 / (n - 1) < z < 1.0:
        raise ZOutOfRange(f"need -1/(N-1) < z < 1, got {z}")
    if z == 0.0:
        return QRangeResult(intervals=(QInterval(-1.0, 1.0, False, True, "open", "closed"),))
    q2 = _uniform_q2(n, z)
    q1 = _uniform_q1(n, z)
    lo, hi = (q1, q2) if q1 <= q2 else (q2, q1)
    lo_flavor = "central" if lo == q2 else "quasi_central"
    hi_flavor = "central" if hi == q2 else "quasi_central"
    lo_closed = hi_closed = True
    if hi > 1.0:
        hi, hi_closed, hi_flavor = 1.0, True, "quasi_central"
    if lo <= -1.0:
        lo, lo_closed, lo_flavor = -1.0, False, "open"
    if lo > hi or (lo == hi and not (lo_closed and hi_closed)):
        return QRangeResult(intervals=())
    return QRangeResult(intervals=(QInterval(lo, hi, lo_closed, hi_closed, lo_flavor, hi_flavor),))


def _quasi_central_uniform(n: int, z: float, big_q: float) -> EnscriptionParams:
    """Exact quasi-central parameters for a real uniform text at a feasible Q.

    One state keeps a distinct tablet overlap c1 = x + iy while the other
    N-1 share a common real overlap c fixed by Q c^2 = -z/(1+z). The unit-
    tablet constraint is linear in |c1|^2 once x is eliminated, so the
    remaining unimodularity condition reduces to a linear equation.
    """
    lam = 1.0 + (n - 1) * z
    t_c = -z / ((1.0 + z) * big_q)
    if t_c <= 0:
        raise IllegibleText("entanglement parameter has the wrong sign for this overlap")
    c = np.sqrt(t_c)
    a1 = 1.0 + (n - 2) * z
    k1 = a1 / (2.0 * z * (n - 1) * c)
    k0 = ((n - 1) * c * c - (1.0 - z) * lam) / (2.0 * z * (n - 1) * c)
    qc = big_q * c
    z4 = z ** 4 / (1.0 + z)
    coeff1 = 2.0 * (z + qc * k0) * qc * k1 + qc ** 2 - 2.0 * qc ** 2 * k1 * k0 - big_q * z4
    coeff0 = (z + qc * k0) ** 2 - (qc * k0) ** 2 - z4
    s = -coeff0 / coeff1
    x = k1 * s + k0
    y_sq = s - x * x
    if y_sq < -1e-12:
        raise IllegibleText("no quasi-central tablet at this entanglement parameter")
    y = np.sqrt(max(0.0, y_sq))
    overlaps = np.full(n, c, dtype=complex)
    overlaps[0] = x + 1j * y
    weights = (overlaps - z * np.sum(overlaps) / lam) / (1.0 - z)
    tablet = texts.make_real_uniform(n, z).states @ weights
    b1 = 1.0 + big_q * s
    b = 1.0 / (1.0 + z)
    gamma = (z + big_q * overlaps[0] * c) / (np.sqrt(b1 * b) * z * z)
    gamma /= abs(gamma)
    phases = np.concatenate([[1.0 + 0j], np.full(n - 1, gamma)])
    return EnscriptionParams.from_Q(big_q, tablet, phases=phases)


def solve_real_uniform_central(n_states: int, z: float) -> EnscriptionCertificate:
    """Enscription of the real uniform N-text with constant overlap z.

    The uniform superposition of the states is the central tablet whenever its
    entanglement parameter -Nz/((1+z)(1+(N-1)z)) lies inside [-1, 1]; in the
    narrow negative-z band where that value escapes the range but the text is
    still enscribable, a quasi-central certificate at an interior parameter is
    returned instead. Raises IllegibleText when no enscription exists.
    """
    n = int(n_states)
    z = float(z)
    rng = q_range_real_uniform(n, z)
    if rng.empty:
        raise IllegibleText(f"real uniform N={n} text with z={z} admits no enscription")
    text = texts.make_real_uniform(n, z)
    q2 = 0.0 if z == 0.0 else _uniform_q2(n, z)
    if abs(q2) <= 1.0:
        tablet = np.ones(n, dtype=complex) / np.sqrt(n)
        params = EnscriptionParams.from_Q(q2, tablet, n_states=n)
        return certificate(text, params)
    interval = rng.intervals[0]
    interior = 0.5 * (interval.lower + interval.upper)
    params = _quasi_central_uniform(n, z, interior)
    return certificate(text, params)


def direct_sum_enscribe(
    combined_text: texts.QuantumText,
    cert: EnscriptionCertificate,
    quantum_indices,
    tol: float = texts.DEFAULT_TOL,
    accept_tol: float = ACCEPT_TOL,
) -> EnscriptionCertificate:
    """Lift an enscription of an orthogonal subtext to the whole text.

    The remaining states must be pairwise orthogonal and orthogonal to the
    certified subtext. The lifted tablet is the normalized projection of the
    input tablet onto the subtext dialect, and the entanglement parameter is
    scaled by the squared projection norm.
    """
    idx2 = tuple(int(i) for i in quantum_indices)
    idx1 = tuple(i for i in range(combined_text.n_states) if i not in idx2)
    if len(set(idx2)) != len(idx2):
        raise NotADirectSum("duplicate indices in the certified subtext")
    if not idx1:
        return cert
    g = np.abs(texts.gram(combined_text))
    for a, i in enumerate(idx1):
        for j in idx1[a + 1:]:
            if g[i, j] >= tol:
                raise NotADirectSum(f"states {i} and {j} of the complement are not orthogonal")
    for i in idx1:
        for j in idx2:
            if g[i, j] >= tol:
                raise NotADirectSum(f"cross overlap between states {i} and {j} does not vanish")
    subtext = combined_text.subtext(idx2)
    if cert.params.n_states != len(idx2):
        raise InvalidInputCertificate("certificate phase count does not match the subtext")
    if enscription_residual(subtext, cert.params) >= accept_tol:
        raise InvalidInputCertificate("input certificate is not valid on the subtext")
    basis = _dialect_basis(subtext)
    projected = basis @ (linalg.dagger(basis) @ cert.params.tablet)
    norm = float(np.linalg.norm(projected))
    if norm < 1e-9:
        raise InvalidInputCertificate("tablet is orthogonal to the subtext dialect")
    new_q = norm ** 2 * cert.params.Q
    phases = np.ones(combined_text.n_states, dtype=complex)
    for pos, i in enumerate(idx2):
        phases[i] = cert.params.phases[pos]
    params = EnscriptionParams.from_Q(new_q, projected / norm, phases=phases)
    return certificate(combined_text, params)


def _dialect_basis(text: texts.QuantumText) -> np.ndarray:
    u, s, _ = np.linalg.svd(text.states, full_matrices=False)
    rank = int(np.sum(s > RANK_TOL * max(float(s[0]), 1e-300)))
    return u[:, :rank]


def thin_extension_family(
    text: texts.QuantumText,
    cert: EnscriptionCertificate,
    t: float,
    direction,
) -> EnscriptionCertificate:
    """Slide a thin text's tablet out of the dialect, rescaling Q to Q0/t.

    The new tablet is sqrt(t) psi_0 + sqrt(1-t) phi_0 with phi_0 a unit vector
    orthogonal to the dialect; t ranges over [|Q0|, 1] so the rescaled
    parameter stays inside [-1, 1]. Phases are unchanged.
    """
    t = float(t)
    q0 = cert.params.Q
    if not (abs(q0) <= t <= 1.0) or t <= 1e-12:
        raise TOutOfRange(f"need |Q0| <= t <= 1 with t > 0, got t={t}, Q0={q0}")
    phi = np.asarray(direction, dtype=complex).reshape(-1)
    if phi.shape[0] != text.dimension:
        raise DirectionNotOrthogonal("direction length does not match the language dimension")
    phi = linalg.unit(phi)
    basis = _dialect_basis(text)
    if float(np.linalg.norm(linalg.dagger(basis) @ phi)) > 1e-9:
        raise DirectionNotOrthogonal("direction has a component inside the dialect")
    tablet0 = cert.params.tablet
    if float(np.linalg.norm(tablet0 - basis @ (linalg.dagger(basis) @ tablet0))) > 1e-8:
        raise InvalidInputCertificate("input tablet must lie in the dialect")
    new_tablet = np.sqrt(t) * tablet0 + np.sqrt(1.0 - t) * phi
    params = EnscriptionParams.from_Q(q0 / t, new_tablet, phases=cert.params.phases)
    return certificate(text, params)


def q_minus_one_dependence_check(text: texts.QuantumText, tablet) -> bool:
    """True iff the entangled inputs at deformation -1 are linearly dependent.

    For a thick text this always holds, which is what rules out enscriptions
    at entanglement parameter -1.
    """
    tab = np.asarray(tablet, dtype=complex).reshape(-1)
    omegas = np.column_stack(
        [entangled_input(text, i, -1.0, tab) for i in range(text.n_states)]
    )
    s = np.linalg.svd(omegas, compute_uv=False)
    rank = int(np.sum(s > RANK_TOL * max(float(s[0]), 1e-300)))
    return rank < text.n_states


def _uniform_real_overlap(g: np.ndarray, tol: float) -> float | None:
    n = g.shape[0]
    iu = np.triu_indices(n, 1)
    off = g[iu]
    if off.size == 0:
        return None
    if np.max(np.abs(off.imag)) > tol:
        return None
    vals = off.real
    if np.max(vals) - np.min(vals) > 100 * tol:
        return None
    return float(np.mean(vals))


def illegibility_screen(
    text: texts.QuantumText,
    tol: float = texts.DEFAULT_TOL,
    rank_tol: float = RANK_TOL,
) -> IllegibilityReport:
    """Run the necessary conditions for enscribability and report the verdict.

    Checks, in order: linear independence of the states; the zero/nonzero
    overlap pattern must split into an orthogonal block plus a complete
    overlapping block with no cross terms; for an overlapping block of three
    or more states the entrywise-reciprocal Gram matrix must be nonsingular
    with all but one eigenvalue of a single sign (which pins the sign of any
    feasible entanglement parameter); and a real uniform text must sit at or
    above its feasibility threshold.
    """
    cls = texts.classify(text)
    g = texts.gram(text)
    n = text.n_states
    nz = np.abs(g) > tol
    np.fill_diagonal(nz, False)
    busy = [i for i in range(n) if nz[i].any()]
    lemma2_ok = all(nz[i, j] for a, i in enumerate(busy) for j in busy[a + 1:])

    eigen_ok = True
    eps: int | None = None
    if lemma2_ok and len(busy) >= 3:
        block = g[np.ix_(busy, busy)]
        m = 1.0 / block
        eig = np.linalg.eigvalsh(m)
        scale = max(float(np.max(np.abs(eig))), 1e-300)
        if np.min(np.abs(eig)) <= rank_tol * scale:
            eigen_ok = False
        else:
            pos = int(np.sum(eig > 0))
            neg = eig.size - pos
            if pos == eig.size - 1 and neg == 1:
                eps = 1
            elif neg == eig.size - 1 and pos == 1:
                eps = -1
            else:
                eigen_ok = False

    uniform_ok: bool | None = None
    if n >= 3:
        z = _uniform_real_overlap(g, tol)
        if z is not None and abs(z) > tol:
            uniform_ok = z >= z0_threshold(n) - 1e-9

    reason = None
    if not cls.efficient:
        reason = "inefficient"
    elif not lemma2_ok:
        reason = "lemma2_pattern"
    elif not eigen_ok:
        reason = "eigen_sign"
    elif uniform_ok is False:
        reason = "uniform_threshold"
    verdict = "possibly_enscribable" if reason is None else f"illegible({reason})"
    return IllegibilityReport(
        efficient_ok=cls.efficient,
        lemma2_pattern_ok=lemma2_ok,
        eigen_sign_ok=eigen_ok,
        eigen_sign=eps,
        uniform_threshold_ok=uniform_ok,
        verdict=verdict,
        reason=reason,
    )
