import json
import pathlib

import numpy as np
import pytest

import commham

DATA = pathlib.Path(__file__).resolve().parents[2] / "tests" / "data"

X = np.array([[0, 1], [1, 0]], dtype=complex)
Z = np.diag([1.0, -1.0]).astype(complex)
I2 = np.eye(2, dtype=complex)
HAD = np.array([[1, 1], [1, -1]], dtype=complex) / np.sqrt(2)


def conjugated(u, eigs):
    uu = np.kron(u, u)
    return uu @ np.diag(eigs).astype(complex) @ uu.conj().T


def test_classes():
    assert commham.classify(np.kron(Z, Z))["kind"] == "Diagonal"
    assert commham.classify(np.kron(X, I2) + np.kron(I2, X))["kind"] == "NonEntangling"
    assert commham.classify(conjugated(HAD, [0, 1, 1, -2]))["kind"] == "HardSymmetric"
    assert commham.classify(np.kron(X, X) + np.kron(Z, I2))["kind"] == "NonCommuting"


def test_diagonalization_reconstructs():
    rng = np.random.default_rng(3)
    q, _ = np.linalg.qr(rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2)))
    h = conjugated(q, rng.uniform(-2, 2, size=4))
    u, eigs, _ = commham.local_diagonalize(h)
    assert np.linalg.norm(conjugated(u, eigs) - h) < 1e-10
    c = commham.pauli_expand(h)
    assert np.asarray(c).shape == (4, 4)


def test_inverse_and_span():
    h = conjugated(HAD, [0.37, 1, 1, -2.37])
    plan = commham.invert(h, 0.5)
    assert plan["residual"] < 1e-8
    assert commham.lie_span(h)["dimension"] == 6


def test_errors_carry_codes():
    with pytest.raises(commham.Error) as info:
        commham.invert(np.kron(Z, Z), 0.5)
    assert info.value.code == "WrongKind"
    bad = np.zeros((4, 4), dtype=complex)
    bad[0, 1] = 1
    with pytest.raises(commham.Error) as info:
        commham.classify(bad)
    assert info.value.code == "NonHermitian"


def test_circuit_distribution_and_sampling():
    text = (DATA / "circuit.json").read_text()
    dist = commham.output_distribution(text)
    assert abs(dist.sum() - 1) < 1e-10
    assert commham.sample(text, 50, 4) == commham.sample(text, 50, 4)


def test_synthesis_identity():
    h = conjugated(HAD, [0, 1, 1, -2])
    r = commham.synthesize(h, np.eye(2, dtype=complex), seed=1)
    assert r["success"]
    assert json.dumps(r)
