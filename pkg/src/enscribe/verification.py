"""Self-contained verification checks for the package's headline guarantees.

Each check builds its own seeded inputs, measures the relevant quantities at
fixed tolerances, and reports pass/fail with the measured values. The CLI
``verify-theorems`` command and the acceptance test suite both run these.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import engine, linalg, machine, procedures, texts
from .certificates import (
    EnscriptionParams,
    certificate,
    enscription_residual,
    entangled_input,
    input_normalizer,
    residual_via_states,
)
from .search import SearchOptions, feasibility_search


@dataclass
class CheckResult:
    name: str
    passed: bool
    details: dict = field(default_factory=dict)


def _random_text(rng: np.random.Generator, n: int, d: int) -> texts.QuantumText:
    while True:
        mat = rng.standard_normal((d, n)) + 1j * rng.standard_normal((d, n))
        mat /= np.linalg.norm(mat, axis=0)
        try:
            cand = texts.make_text(d, [mat[:, i] for i in range(n)])
        except Exception:
            continue
        return cand


def random_classical_text(rng: np.random.Generator, n: int, d: int) -> texts.QuantumText:
    u = linalg.random_unitary(d, rng)
    return texts.make_text(d, [u[:, i] for i in range(n)])


def random_nonclassical_text(
    rng: np.random.Generator, n: int, d: int, lo: float = 0.2, hi: float = 0.9
) -> texts.QuantumText:
    """Random text whose largest overlap modulus lies inside [lo, hi]."""
    while True:
        cand = _random_text(rng, n, d)
        g = texts.gram(cand)
        off = np.abs(g[np.triu_indices(n, 1)])
        if lo <= np.max(off) and np.max(off) <= hi:
            return cand


def random_equivalence_image(rng: np.random.Generator, text: texts.QuantumText):
    """Random relabeling/phase/rotation image of a text, with the used data."""
    n, d = text.n_states, text.dimension
    v = linalg.random_unitary(d, rng)
    beta = np.exp(2j * np.pi * rng.random(n))
    perm = tuple(int(i) for i in rng.permutation(n))
    states = [beta[i] * v @ text.state(perm[i]) for i in range(n)]
    return texts.make_text(d, states), v, beta, perm


def classical_valid_tablet(rng: np.random.Generator, text: texts.QuantumText, k: int) -> np.ndarray:
    """Random tablet orthogonal to all states of a classical text except state k.

    Mixes state k with a random direction outside the dialect when one exists;
    that family is exactly the admissible tablets at nonzero deformation.
    """
    d, n = text.dimension, text.n_states
    phase = np.exp(2j * np.pi * rng.random())
    if d == n:
        return phase * text.state(k)
    comp = linalg.complete_orthonormal(text.states)
    coeff = rng.standard_normal(comp.shape[1]) + 1j * rng.standard_normal(comp.shape[1])
    outside = comp @ coeff
    mix = rng.random()
    vec = np.sqrt(mix) * phase * text.state(k) + np.sqrt(1.0 - mix) * linalg.unit(outside)
    return linalg.unit(vec)


def check_uniform_threshold(seed: int = 0) -> CheckResult:
    """Feasibility-threshold root: value at N=3 and the large-N scaling."""
    z0_3 = engine.z0_threshold(3)
    ok = abs(z0_3 - (-0.203785)) < 1e-5
    details = {"z0_n3": z0_3}
    for n in (50, 100, 200):
        z0_n = engine.z0_threshold(n)
        approx = -1.0 / (2.0 * n)
        rel = abs(z0_n - approx) / abs(approx)
        details[f"z0_n{n}"] = z0_n
        details[f"rel_err_n{n}"] = rel
        ok = ok and rel < 0.2
    return CheckResult("z0-threshold", ok, details)


def check_qubit_example(seed: int = 0) -> CheckResult:
    """Explicit two-qubit procedure: unitarity, action, and swap commutation."""
    text, cert, u = procedures.qubit_example()
    defect = float(np.linalg.norm(linalg.dagger(u) @ u - np.eye(4)))
    action = 0.0
    for i in range(2):
        omega = entangled_input(text, i, cert.params.q, cert.params.tablet)
        target = cert.params.phases[i] * np.kron(text.state(i), text.state(i))
        action = max(action, float(np.linalg.norm(u @ omega - target)))
    swap = linalg.swap_operator(2)
    comm = float(np.linalg.norm(u @ swap - swap @ u))
    overlap = complex(texts.gram(text)[0, 1])
    ok = defect < 1e-12 and action < 1e-10 and comm < 1e-12
    return CheckResult(
        "qubit-example",
        ok,
        {"unitarity_defect": defect, "action_error": action, "swap_commutator": comm,
         "overlap": overlap.real},
    )


def check_no_cloning_boundary(seed: int = 0, starts: int = 64) -> CheckResult:
    """Zero-deformation cloning succeeds exactly on orthogonal texts.

    Classical texts: residual < 1e-12 at sampled entanglement parameters with
    admissible tablets (any tablet at Q=0, tablets orthogonal to all states
    but one otherwise). Non-classical texts: the search floor at Q=0 exceeds
    1e-4.
    """
    rng = np.random.default_rng(seed)
    worst_classical = 0.0
    q_values = [0.0, -0.9, -0.7, -0.5, -0.3, -0.1, 0.1, 0.3, 0.5, 0.9]
    for _ in range(20):
        n = int(rng.integers(2, 5))
        d = int(rng.integers(n, n + 3))
        text = random_classical_text(rng, n, d)
        for big_q in q_values:
            if big_q == 0.0:
                for _ in range(3):
                    tab = linalg.unit(
                        rng.standard_normal(d) + 1j * rng.standard_normal(d)
                    )
                    params = EnscriptionParams.from_Q(0.0, tab, n_states=n)
                    worst_classical = max(worst_classical, enscription_residual(text, params))
            else:
                k = int(rng.integers(n))
                tab = classical_valid_tablet(rng, text, k)
                params = EnscriptionParams.from_Q(float(big_q), tab, n_states=n)
                worst_classical = max(worst_classical, enscription_residual(text, params))
    floor = np.inf
    opts = SearchOptions(seed=seed, starts=starts)
    for _ in range(20):
        n = int(rng.integers(2, 4))
        d = int(rng.integers(n, n + 2))
        text = random_nonclassical_text(rng, n, d)
        result = feasibility_search(text, 0.0, opts)
        floor = min(floor, result.best_residual)
    ok = worst_classical < 1e-12 and floor > 1e-4
    return CheckResult(
        "no-cloning-boundary",
        ok,
        {"classical_worst_residual": worst_classical, "nonclassical_floor": float(floor)},
    )


def check_two_text_q_range(seed: int = 0, starts: int = 64) -> CheckResult:
    """Search feasibility matches the closed-form 2-text parameter intervals."""
    guard = 1e-2
    worst_inside = 0.0
    floor = np.inf
    opts_in = SearchOptions(seed=seed, starts=16)
    opts_out = SearchOptions(seed=seed, starts=starts)
    details = {}
    for z in (0.1, 0.3, 0.5, 0.7):
        text = texts.make_real_uniform(2, z)
        rng_result = engine.q_range_two_text(z)
        neg, pos = rng_result.intervals
        for iv in (pos, neg):
            lo = iv.lower + (guard if not np.isclose(iv.lower, -1.0) else 1e-3)
            hi = iv.upper - (guard if iv.upper < 1.0 else 0.0)
            for big_q in np.linspace(lo, hi, 5):
                res = feasibility_search(text, float(big_q), opts_in)
                worst_inside = max(worst_inside, res.best_residual)
        gap_lo, gap_hi = neg.upper + guard, pos.lower - guard
        for big_q in np.linspace(gap_lo, gap_hi, 5):
            res = feasibility_search(text, float(big_q), opts_out)
            floor = min(floor, res.best_residual)
        details[f"z{z}"] = {"pos_lo": pos.lower, "neg_hi": neg.upper}
    ok = worst_inside < 1e-8 and floor > 1e-4
    details.update({"worst_inside_residual": worst_inside, "gap_floor": float(floor)})
    return CheckResult("two-text-q-range", ok, details)


def check_uniform_q_range(seed: int = 0) -> CheckResult:
    """Real uniform texts: interval emptiness, solver residuals, and sign pattern."""
    ok = True
    details = {}
    worst_residual = 0.0
    for n in (3, 4):
        z0 = engine.z0_threshold(n)
        start = {3: -0.45, 4: -0.30}[n]
        for z in np.arange(start, 0.951, 0.05):
            z = round(float(z), 10)
            rng_result = engine.q_range_real_uniform(n, z)
            expect_nonempty = z >= z0 - 1e-6 if z < 0 else True
            if (not rng_result.empty) != expect_nonempty:
                ok = False
                details[f"mismatch_n{n}_z{z}"] = {
                    "empty": rng_result.empty,
                    "z0": z0,
                }
            if rng_result.empty:
                continue
            cert = engine.solve_real_uniform_central(n, z)
            worst_residual = max(worst_residual, cert.residual)
            if abs(z) > 1e-12:
                if np.sign(cert.params.Q) != -np.sign(z):
                    ok = False
                    details[f"sign_n{n}_z{z}"] = cert.params.Q
                screen = engine.illegibility_screen(texts.make_real_uniform(n, z))
                if screen.eigen_sign is not None and screen.eigen_sign != np.sign(cert.params.Q):
                    ok = False
                    details[f"eps_n{n}_z{z}"] = screen.eigen_sign
    ok = ok and worst_residual < 1e-9
    details["worst_central_residual"] = worst_residual
    return CheckResult("uniform-q-range", ok, details)


def check_eigen_sign_screen(seed: int = 0, starts: int = 16) -> CheckResult:
    """Certified overlapping texts obey the reciprocal-Gram eigenvalue sign rule."""
    rng = np.random.default_rng(seed)
    ok = True
    details = {}
    for count in range(20):
        if rng.random() < 0.5:
            z = float(rng.uniform(0.05, 0.5))
        else:
            z = float(rng.uniform(-0.17, -0.05))
        base = texts.make_real_uniform(3, z)
        image, _, _, _ = random_equivalence_image(rng, base)
        big_q = engine._uniform_q2(3, z)
        result = feasibility_search(image, big_q, SearchOptions(seed=seed + count, starts=starts))
        if not result.feasible:
            ok = False
            details[f"search_failed_{count}"] = {"z": z, "floor": result.best_residual}
            continue
        screen = engine.illegibility_screen(image)
        if screen.eigen_sign is None or not screen.eigen_sign_ok:
            ok = False
            details[f"screen_failed_{count}"] = {"z": z}
        elif np.sign(result.certificate.params.Q) != screen.eigen_sign:
            ok = False
            details[f"sign_mismatch_{count}"] = {"z": z, "Q": result.certificate.params.Q}
    # a single vanishing overlap in an otherwise overlapping triple is fatal
    lemma_ok = True
    for a in np.linspace(0.2, 0.7, 6):
        b = np.sqrt(1.0 - a * a)
        text = texts.make_text(3, [[1, 0, 0], [a, b, 0], [0.0, a, b]])
        if abs(texts.gram(text)[0, 2]) > 1e-12:
            raise AssertionError("one-zero-overlap construction broke")
        screen = engine.illegibility_screen(text)
        if screen.reason != "lemma2_pattern":
            lemma_ok = False
            details[f"lemma2_a{a}"] = screen.verdict
    ok = ok and lemma_ok
    details["lemma2_family_ok"] = lemma_ok
    return CheckResult("eigen-sign-screen", ok, details)


def check_q_minus_one_rank(seed: int = 0) -> CheckResult:
    """Entangled inputs at deformation -1 are dependent for every thick text."""
    rng = np.random.default_rng(seed)
    all_true = True
    for _ in range(10):
        d = int(rng.integers(2, 5))
        n = int(rng.integers(d, d + 2))
        text = random_nonclassical_text(rng, n, d, lo=0.05, hi=0.95)
        if not texts.classify(text).thick:
            continue
        for _ in range(5):
            tab = linalg.unit(rng.standard_normal(d) + 1j * rng.standard_normal(d))
            if not engine.q_minus_one_dependence_check(text, tab):
                all_true = False
    return CheckResult("q-minus-one-rank", all_true, {"all_dependent": all_true})


def check_cloning_machine(seed: int = 0) -> CheckResult:
    """Success probabilities, end-to-end fidelity, saturation, failure parity."""
    rng = np.random.default_rng(seed)
    worst_gap = 0.0
    for _ in range(100):
        n = int(rng.integers(2, 5))
        d = int(rng.integers(n, n + 3))
        text = _random_text(rng, n, d)
        tab = linalg.unit(rng.standard_normal(d) + 1j * rng.standard_normal(d))
        q = float(rng.choice([-1, 1]) * rng.uniform(0.05, 1.0))
        params = EnscriptionParams.from_q(q, tab, n_states=n)
        i = int(rng.integers(n))
        p_general = input_normalizer(text, i, q, params.tablet) / (1.0 + abs(q)) ** 2
        ov = abs(np.vdot(text.state(i), params.tablet)) ** 2
        p_real = (1.0 + params.Q * ov) / (1.0 + abs(params.Q))
        worst_gap = max(worst_gap, abs(p_general - p_real))

    worst_fidelity = 0.0
    parity_ok = True
    for z in (-0.6, -0.3, 0.2, 0.5):
        text = texts.make_real_uniform(2, z)
        cert = engine.solve_two_text(text)
        proc = procedures.build_procedure(text, cert)
        for i in range(2):
            outcome = machine.run_clone(text, cert, i, procedure=proc)
            worst_fidelity = max(worst_fidelity, abs(outcome.fidelity - 1.0))
            report = machine.failure_state_symmetry_check(text, cert, i)
            expected = 1 if cert.params.Q < 0 else -1
            if report.expected_parity is not None and (
                not report.parity_ok or report.expected_parity != expected
            ):
                parity_ok = False

    worst_saturation = 0.0
    for z in (-0.1, -0.3, -0.5, -0.7):
        rep = machine.duan_guo_saturation(z)
        for p in rep.probabilities:
            worst_saturation = max(worst_saturation, abs(p - rep.bound))

    ok = (
        worst_gap < 1e-12
        and worst_fidelity < 1e-8
        and worst_saturation < 1e-10
        and parity_ok
    )
    return CheckResult(
        "cloning-machine",
        ok,
        {
            "probability_form_gap": worst_gap,
            "fidelity_error": worst_fidelity,
            "saturation_error": worst_saturation,
            "failure_parity_ok": parity_ok,
        },
    )


def check_structural_properties(seed: int = 0) -> CheckResult:
    """Equivalence covariance, the dual residual routes, and the lifts."""
    rng = np.random.default_rng(seed)
    worst_cov = 0.0
    worst_proc = 0.0
    for trial in range(20):
        if trial % 2 == 0:
            z = float(rng.uniform(-0.6, 0.8))
            base = texts.make_real_uniform(2, z) if abs(z) > 1e-6 else texts.make_real_uniform(2, 0.3)
            cert = engine.solve_two_text(base)
        else:
            z = float(rng.uniform(0.05, 0.6))
            base = texts.make_real_uniform(3, z)
            cert = engine.solve_real_uniform_central(3, z)
        image, v, beta, perm = random_equivalence_image(rng, base)
        new_phases = np.array(
            [cert.params.phases[perm[i]] * np.conj(beta[i]) for i in range(base.n_states)]
        )
        moved = EnscriptionParams.from_q(cert.params.q, v @ cert.params.tablet, phases=new_phases)
        res_image = enscription_residual(image, moved)
        worst_cov = max(worst_cov, abs(res_image - cert.residual))
        u = procedures.build_procedure(base, cert)
        vv = np.kron(v, v)
        moved_u = vv @ u @ linalg.dagger(vv)
        moved_cert = certificate(image, moved)
        worst_proc = max(worst_proc, procedures.verify_procedure(moved_u, image, moved_cert))

    worst_routes = 0.0
    for _ in range(100):
        n = int(rng.integers(2, 5))
        d = int(rng.integers(n, n + 3))
        text = _random_text(rng, n, d)
        tab = linalg.unit(rng.standard_normal(d) + 1j * rng.standard_normal(d))
        q = complex(rng.uniform(-1.2, 1.2), rng.uniform(-1.2, 1.2))
        phases = np.exp(2j * np.pi * rng.random(n))
        params = EnscriptionParams.from_q(q, tab, phases=phases)
        worst_routes = max(
            worst_routes,
            abs(enscription_residual(text, params) - residual_via_states(text, params)),
        )

    worst_thin = 0.0
    base = texts.make_real_uniform(2, 0.35)
    embedded = texts.make_text(3, [np.concatenate([base.state(i), [0.0]]) for i in range(2)])
    cert = engine.solve_two_text(embedded)
    direction = np.array([0.0, 0.0, 1.0], dtype=complex)
    q0 = abs(cert.params.Q)
    for t in np.linspace(max(q0, 0.05), 1.0, 12):
        lifted = engine.thin_extension_family(embedded, cert, float(t), direction)
        worst_thin = max(worst_thin, lifted.residual)

    worst_sum = 0.0
    for z in (0.3, 0.5, -0.2):
        block = texts.make_real_uniform(2, z)
        states = [
            np.concatenate([np.zeros(2), [1.0, 0.0]]),
            np.concatenate([np.zeros(2), [0.0, 1.0]]),
            np.concatenate([block.state(0), np.zeros(2)]),
            np.concatenate([block.state(1), np.zeros(2)]),
        ]
        combined = texts.make_text(4, states)
        sub = combined.subtext((2, 3))
        cert2 = engine.solve_two_text(sub)
        lifted = engine.direct_sum_enscribe(combined, cert2, (2, 3))
        worst_sum = max(worst_sum, lifted.residual)

    ok = (
        worst_cov < 1e-10
        and worst_proc < 1e-8
        and worst_routes < 1e-10
        and worst_thin < 1e-9
        and worst_sum < 1e-9
    )
    return CheckResult(
        "structural-properties",
        ok,
        {
            "covariance_residual_gap": worst_cov,
            "covariant_procedure_error": worst_proc,
            "residual_route_gap": worst_routes,
            "thin_extension_residual": worst_thin,
            "direct_sum_residual": worst_sum,
        },
    )


ALL_CHECKS = (
    ("z0-threshold", check_uniform_threshold),
    ("qubit-example", check_qubit_example),
    ("no-cloning-boundary", check_no_cloning_boundary),
    ("two-text-q-range", check_two_text_q_range),
    ("uniform-q-range", check_uniform_q_range),
    ("eigen-sign-screen", check_eigen_sign_screen),
    ("q-minus-one-rank", check_q_minus_one_rank),
    ("cloning-machine", check_cloning_machine),
    ("structural-properties", check_structural_properties),
)


def run_checks(only: str | None = None, seed: int = 0) -> list:
    """Run all (or name-filtered by substring) checks and return their results."""
    results = []
    for name, fn in ALL_CHECKS:
        if only and only not in name:
            continue
        results.append(fn(seed=seed))
    return results
