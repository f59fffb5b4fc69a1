import numpy as np
import pytest

from enscribe import (
    direct_sum_enscribe,
    entangled_input,
    gram,
    illegibility_screen,
    make_real_uniform,
    make_text,
    q_minus_one_dependence_check,
    q_range_real_uniform,
    q_range_two_text,
    solve_real_uniform_central,
    solve_two_text,
    thin_extension_family,
    uniform_sextic,
    z0_threshold,
)
from enscribe.errors import (
    DirectionNotOrthogonal,
    IllegibleText,
    NotADirectSum,
    SizeMismatch,
    TOutOfRange,
    ZOutOfRange,
)

from helpers import random_state, random_text, random_unitary

Z_QUBIT = np.sqrt(3.0) - 2.0


def test_solve_two_text_orthogonal_pair():
    cert = solve_two_text(make_real_uniform(2, 0.0))
    assert cert.params.Q == 0.0
    assert cert.residual < 1e-12


def test_solve_two_text_qubit_overlap_reaches_one():
    ap, am = np.sqrt((1 + Z_QUBIT) / 2), np.sqrt((1 - Z_QUBIT) / 2)
    text = make_text(2, [[ap, am], [ap, -am]])
    cert = solve_two_text(text)
    # kept negative, no equivalence reduction: -2z/(1+z)^2 = 1 exactly
    assert abs(cert.params.Q - 1.0) < 1e-12
    assert cert.residual < 1e-10
    assert np.allclose(cert.params.phases, 1.0)


def test_solve_two_text_half_overlap():
    cert = solve_two_text(make_real_uniform(2, 0.5))
    assert abs(cert.params.Q - (-4.0 / 9.0)) < 1e-12
    assert cert.residual < 1e-10
    assert cert.flavor == "central"


def test_solve_two_text_strongly_negative_overlap_reduces():
    cert = solve_two_text(make_real_uniform(2, -0.5))
    assert abs(cert.params.Q) < 1.0
    assert cert.residual < 1e-10
    # reduction flips the second output phase
    assert abs(cert.params.phases[1] + 1.0) < 1e-12


def test_solve_two_text_complex_overlap():
    rng = np.random.default_rng(42)
    for _ in range(5):
        text = random_text(rng, 2, 3)
        cert = solve_two_text(text)
        assert cert.residual < 1e-10
        assert abs(cert.params.Q) <= 1.0


def test_solve_two_text_overlap_sweep():
    for z in np.arange(-0.9, 0.951, 0.05):
        if abs(z) > 0.999:
            continue
        cert = solve_two_text(make_real_uniform(2, float(z)))
        assert cert.residual < 1e-9


def test_solve_two_text_rejects_other_sizes():
    with pytest.raises(SizeMismatch):
        solve_two_text(make_real_uniform(3, 0.3))


def test_q_range_two_text_orthogonal_covers_everything():
    result = q_range_two_text(0.0)
    neg, pos = result.intervals
    assert (neg.lower, neg.upper) == (-1.0, 0.0)
    assert (pos.lower, pos.upper) == (0.0, 1.0)
    assert not neg.lower_closed and pos.upper_closed


def test_q_range_two_text_qubit_boundary():
    # 2|z|/(1+|z|^2) at |z| = 2 - sqrt(3) evaluates to exactly 1/2
    result = q_range_two_text(2.0 - np.sqrt(3.0))
    pos = result.intervals[1]
    assert abs(pos.lower - 0.5) < 1e-12
    assert pos.lower_flavor == "weakly_central"


def test_q_range_interval_membership():
    result = q_range_two_text(0.5)
    assert result.contains(0.9)
    assert result.contains(0.8)          # closed positive boundary
    assert not result.contains(0.3)      # gap
    assert not result.contains(-1.0)     # open endpoint
    assert result.contains(-0.9)
    assert not result.contains(0.805, margin=1e-2)


def test_q_range_two_text_out_of_range():
    with pytest.raises(ZOutOfRange):
        q_range_two_text(1.0)
    with pytest.raises(ZOutOfRange):
        q_range_two_text(-0.1)


def test_uniform_sextic_constant_term():
    for n in (3, 5, 20):
        assert uniform_sextic(n, 0.0) == 1.0


def test_z0_threshold_three_states():
    assert abs(z0_threshold(3) - (-0.203785)) < 1e-5


def test_z0_threshold_large_n_scaling():
    for n in (50, 100, 200):
        z0 = z0_threshold(n)
        approx = -1.0 / (2.0 * n)
        assert abs(z0 - approx) / abs(approx) < 0.2


def test_q_range_real_uniform_known_value():
    result = q_range_real_uniform(3, 0.5)
    iv = result.intervals[0]
    assert abs(iv.upper - (-0.5)) < 1e-12
    assert iv.upper_flavor == "central"


def test_q_range_real_uniform_empties_below_threshold():
    z0 = z0_threshold(3)
    assert not q_range_real_uniform(3, z0 + 1e-3).empty
    assert q_range_real_uniform(3, z0 - 1e-3).empty


def test_q_range_real_uniform_sign_pattern():
    for n in (3, 4):
        for z in (-0.1, 0.2, 0.5, 0.8):
            result = q_range_real_uniform(n, z)
            if result.empty:
                continue
            iv = result.intervals[0]
            assert np.sign(iv.lower) == -np.sign(z)
            assert np.sign(iv.upper) == -np.sign(z)


def test_q_range_real_uniform_validation():
    with pytest.raises(SizeMismatch):
        q_range_real_uniform(2, 0.3)
    with pytest.raises(ZOutOfRange):
        q_range_real_uniform(3, -0.5)


def test_solve_real_uniform_central_basic():
    cert = solve_real_uniform_central(3, 0.3)
    assert cert.flavor == "central"
    assert cert.residual < 1e-9
    assert np.allclose(cert.params.phases, 1.0)


def test_solve_real_uniform_central_orthogonal():
    cert = solve_real_uniform_central(3, 0.0)
    assert cert.params.Q == 0.0
    assert cert.residual < 1e-12


def test_solve_real_uniform_central_negative_overlap():
    cert = solve_real_uniform_central(4, -0.1)
    assert abs(cert.params.Q - 0.4 / (0.9 * 0.7)) < 1e-12
    assert cert.params.Q > 0
    assert cert.residual < 1e-9


def test_solve_real_uniform_quasi_central_band():
    # central parameter exceeds 1 here, yet the text is enscribable
    cert = solve_real_uniform_central(3, -0.20)
    assert cert.flavor == "quasi_central"
    assert cert.residual < 1e-9
    assert 0 < cert.params.Q <= 1.0
    # non-trivial output phases at the interior parameter
    assert abs(cert.params.phases[1] - 1.0) > 1e-3


def test_solve_real_uniform_illegible():
    with pytest.raises(IllegibleText):
        solve_real_uniform_central(3, -0.3)


def test_solve_real_uniform_sweep():
    for n in (3, 4):
        z0 = z0_threshold(n)
        start = {3: -0.45, 4: -0.30}[n]
        for z in np.arange(start, 0.951, 0.05):
            z = float(z)
            if z < 0 and z < z0:
                continue
            cert = solve_real_uniform_central(n, z)
            assert cert.residual < 1e-9


def test_direct_sum_enscribe_empty_complement_is_identity():
    text = make_real_uniform(2, 0.5)
    cert = solve_two_text(text)
    assert direct_sum_enscribe(text, cert, (0, 1)) is cert


def test_direct_sum_enscribe_tablet_in_dialect_keeps_q():
    block = make_real_uniform(2, 0.5)
    states = [
        np.concatenate([block.state(0), [0.0]]),
        np.concatenate([block.state(1), [0.0]]),
        np.array([0.0, 0.0, 1.0]),
    ]
    combined = make_text(3, states)
    sub = combined.subtext((0, 1))
    cert = solve_two_text(sub)
    lifted = direct_sum_enscribe(combined, cert, (0, 1))
    assert abs(lifted.params.Q - cert.params.Q) < 1e-12
    assert lifted.residual < 1e-9


def test_direct_sum_enscribe_classical_pair_plus_two_text():
    block = make_real_uniform(2, 0.5)
    states = [
        np.array([1.0, 0.0, 0.0, 0.0]),
        np.array([0.0, 1.0, 0.0, 0.0]),
        np.concatenate([np.zeros(2), block.state(0)]),
        np.concatenate([np.zeros(2), block.state(1)]),
    ]
    combined = make_text(4, states)
    cert = solve_two_text(combined.subtext((2, 3)))
    lifted = direct_sum_enscribe(combined, cert, (2, 3))
    assert lifted.residual < 1e-9
    # tablet orthogonal to the classical block
    ov = np.abs(combined.states[:, :2].conj().T @ lifted.params.tablet)
    assert np.max(ov) < 1e-9


def test_direct_sum_enscribe_rejects_overlapping_complement():
    text = make_real_uniform(3, 0.4)
    cert = solve_two_text(text.subtext((0, 1)))
    with pytest.raises(NotADirectSum):
        direct_sum_enscribe(text, cert, (0, 1))


def test_thin_extension_endpoints():
    base = make_real_uniform(2, 0.35)
    embedded = make_text(3, [np.concatenate([base.state(i), [0.0]]) for i in range(2)])
    cert = solve_two_text(embedded)
    direction = np.array([0.0, 0.0, 1.0])
    same = thin_extension_family(embedded, cert, 1.0, direction)
    assert abs(same.params.Q - cert.params.Q) < 1e-12
    assert np.allclose(same.params.tablet, cert.params.tablet, atol=1e-12)
    q0 = abs(cert.params.Q)
    extreme = thin_extension_family(embedded, cert, q0, direction)
    assert abs(abs(extreme.params.Q) - 1.0) < 1e-12


def test_thin_extension_residual_along_family():
    base = make_real_uniform(2, 0.35)
    embedded = make_text(3, [np.concatenate([base.state(i), [0.0]]) for i in range(2)])
    cert = solve_two_text(embedded)
    direction = np.array([0.0, 0.0, 1.0])
    lifted = thin_extension_family(embedded, cert, 0.9, direction)
    assert lifted.residual < 1e-9


def test_thin_extension_errors():
    base = make_real_uniform(2, 0.35)
    embedded = make_text(3, [np.concatenate([base.state(i), [0.0]]) for i in range(2)])
    cert = solve_two_text(embedded)
    with pytest.raises(TOutOfRange):
        thin_extension_family(embedded, cert, abs(cert.params.Q) / 2, [0, 0, 1.0])
    with pytest.raises(DirectionNotOrthogonal):
        thin_extension_family(embedded, cert, 0.9, embedded.state(0))


def test_q_minus_one_dependence_thick_two_text():
    text = make_real_uniform(2, 0.4)
    rng = np.random.default_rng(19)
    for _ in range(5):
        assert q_minus_one_dependence_check(text, random_state(rng, 2))


def test_q_minus_one_dependence_thin_text_with_outside_tablet():
    base = make_real_uniform(2, 0.4)
    embedded = make_text(3, [np.concatenate([base.state(i), [0.0]]) for i in range(2)])
    tablet = np.array([0.5, 0.1, 0.0])
    tablet[2] = np.sqrt(1 - np.vdot(tablet, tablet).real)
    assert not q_minus_one_dependence_check(embedded, tablet)
    # independent rank oracle on the explicit vectors
    omegas = np.column_stack(
        [entangled_input(embedded, i, -1.0, tablet) for i in range(2)]
    )
    assert np.linalg.matrix_rank(omegas) == 2


def test_q_minus_one_dependence_single_state():
    text = make_text(2, [[1, 0]])
    assert not q_minus_one_dependence_check(text, np.array([0.0, 1.0]))


def test_illegibility_screen_dependent_text():
    third = np.array([1.0, 1.0]) / np.sqrt(2)
    text = make_text(2, [[1, 0], [0, 1], third])
    report = illegibility_screen(text)
    assert report.reason == "inefficient"
    assert report.verdict == "illegible(inefficient)"


def test_illegibility_screen_one_zero_overlap():
    a, b = 0.4, np.sqrt(1 - 0.16)
    text = make_text(3, [[1, 0, 0], [a, b, 0], [0, a, b]])
    report = illegibility_screen(text)
    assert report.reason == "lemma2_pattern"


def test_illegibility_screen_uniform_eigen_sign():
    text = make_real_uniform(3, 0.4)
    report = illegibility_screen(text)
    assert report.reason is None
    assert report.eigen_sign == -1
    # dense eigensolver oracle on the reciprocal-overlap matrix
    m = 1.0 / gram(text).real
    eig = np.linalg.eigvalsh(m)
    assert int(np.sum(eig < 0)) == 2 and int(np.sum(eig > 0)) == 1


def test_illegibility_screen_uniform_below_threshold():
    report = illegibility_screen(make_real_uniform(3, -0.3))
    assert report.reason in ("uniform_threshold", "eigen_sign")
    assert report.uniform_threshold_ok is False


def test_illegibility_screen_classical_ok():
    rng = np.random.default_rng(3)
    text = make_text(3, random_unitary(rng, 3).T)
    report = illegibility_screen(text)
    assert report.reason is None
    assert report.eigen_sign is None
