import numpy as np
import pytest

from enscribe import files, make_real_uniform, solve_two_text, qubit_example
from enscribe.errors import ParseError

from helpers import random_text


def test_text_round_trip_is_exact(tmp_path):
    rng = np.random.default_rng(2)
    text = random_text(rng, 3, 4)
    path = tmp_path / "text.json"
    files.save_text(text, str(path))
    back = files.load_text(str(path))
    assert back.dimension == text.dimension
    assert np.array_equal(back.states, text.states)


def test_certificate_round_trip(tmp_path):
    cert = solve_two_text(make_real_uniform(2, 0.5))
    path = tmp_path / "cert.json"
    files.save_certificate(cert, str(path))
    back = files.load_certificate(str(path))
    assert back.params.Q == cert.params.Q
    assert np.array_equal(back.params.tablet, cert.params.tablet)
    assert np.array_equal(back.params.phases, cert.params.phases)
    assert back.residual == cert.residual
    assert back.flavor == cert.flavor


def test_certificate_revalidated_against_text(tmp_path):
    text = make_real_uniform(2, 0.5)
    cert = solve_two_text(text)
    path = tmp_path / "cert.json"
    files.save_certificate(cert, str(path))
    back = files.load_certificate(str(path), text)
    assert back.residual < 1e-10


def test_procedure_round_trip(tmp_path):
    _, _, u = qubit_example()
    path = tmp_path / "proc.json"
    files.save_procedure(u, str(path))
    assert np.array_equal(files.load_procedure(str(path)), u)


def test_malformed_inputs_raise_parse_error(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    with pytest.raises(ParseError):
        files.load_text(str(bad))
    bad.write_text('{"dimension": 2}')
    with pytest.raises(ParseError):
        files.load_text(str(bad))


def test_dump_json_is_deterministic():
    cert = solve_two_text(make_real_uniform(2, 0.5))
    a = files.dump_json(files.certificate_to_dict(cert))
    b = files.dump_json(files.certificate_to_dict(cert))
    assert a == b
