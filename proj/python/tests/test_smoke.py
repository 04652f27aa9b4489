import math

import numpy as np
import pytest

import aep


def bell():
    return np.array([1, 0, 0, 1], dtype=complex) / math.sqrt(2)


def test_entropy_and_concurrence():
    assert aep.entropy(bell()) == pytest.approx(1.0, abs=1e-12)
    assert aep.concurrence(bell()) == pytest.approx(1.0, abs=1e-12)
    product = np.array([1, 0, 0, 0], dtype=complex)
    assert aep.entropy(product) == pytest.approx(0.0, abs=1e-12)
    spectrum = aep.schmidt_spectrum(np.array([1, 0, 0, 0, 1, 0], dtype=complex) / math.sqrt(2), (2, 3))
    assert sorted(spectrum, reverse=True)[:2] == pytest.approx([0.5, 0.5])


def test_connectibility():
    rng = np.random.default_rng(1)
    a = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
    b = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
    h0, h1 = a + a.conj().T, b + b.conj().T
    assert aep.connectible(h0, h1)["connectible"]
    ends = aep.connecting_family(h0, h1, [0.0, 1.0])
    assert np.abs(ends[0] - h0).max() < 1e-8
    assert np.abs(ends[1] - h1).max() < 1e-8
    mismatched = aep.connectible(np.diag([0.0, 1, 1, 1]), np.diag([0.0, 0, 0, 1]))
    assert not mismatched["connectible"]
    assert mismatched["degeneracy_h0"] == [1, 3]


def test_errors_map_to_python_exceptions():
    with pytest.raises(aep.NotHermitian):
        aep.connectible(np.array([[0, 1], [0, 0]], dtype=complex), np.eye(2))
    with pytest.raises(aep.DegeneracyError):
        aep.adiabatic_entangling_power(
            {"kind": "builtin:example0", "bounds": [[-1, 1], [-1, 1], [0, 0]]}, grid=3)
    with pytest.raises(aep.InputError):
        aep.adiabatic_entangling_power("builtin:example9")


def test_exchange_family_reaches_one():
    u = aep.example1_unitary(math.pi / 16, 0.0)
    assert aep.entropy(u @ np.array([0, 1, 0, 0], dtype=complex)) == pytest.approx(1.0, abs=1e-9)
    result = aep.adiabatic_entangling_power("builtin:example1", grid=11, refine=True)
    assert result["value"] == pytest.approx(1.0, abs=1e-6)
    assert result["method"] == "grid+refine"


def test_custom_family_from_arrays():
    sz, one = np.diag([1.0, -1.0]), np.eye(2)
    sp = np.array([[0, 2], [0, 0]], dtype=complex)
    g1 = np.kron(sp, sp.conj().T) + np.kron(sp.conj().T, sp)
    g2 = np.kron(sz, one) - np.kron(one, sz)
    spec = {"kind": "custom", "base": 2 * np.kron(sz, one) + np.kron(one, sz),
            "generators": [g1, g2], "bounds": [[0, 0.4], [0, 0.4]], "split": [2, 2]}
    h = aep.family_hamiltonian(spec, [0.0, 0.0])
    assert np.allclose(h, np.diag([3.0, 1.0, -1.0, -3.0]))
    assert aep.adiabatic_entangling_power(spec, grid=9, refine=True)["value"] == pytest.approx(1.0, abs=1e-6)


def test_magic_family_formula():
    c = aep.example2_max_concurrence(0.3, 0.2, 0.5)
    u = aep.example2_unitary(0.3, 0.2, 0.5)
    entropy, product_in, out = aep.unitary_entangling_power(u, starts=16)
    assert aep.concurrence(out) == pytest.approx(c, abs=1e-4)
    assert aep.entropy(product_in) == pytest.approx(0.0, abs=1e-9)


def test_gate_and_cli():
    result = aep.gate(T=100.0, steps=5000)
    g = result["geometric"]
    assert abs(g[1] + g[2]) < 1e-5
    assert not result["entangling"]
    code, out, err = aep.run_cli(["gate", "--T", "50", "--steps", "2000"])
    assert code == 0 and "verdict:" in out
    assert aep.run_cli(["bogus"])[0] == 1
    assert aep.__version__ == "0.1.0"
