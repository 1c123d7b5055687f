import itertools
import math

import numpy as np
import pytest

import pstwalk as pw
from conftest import basis_state, pair_state, random_connected_graph, random_tree, unit


# explicit 3x3 eigenprojector oracle for the 3-path adjacency matrix
def _p3_projectors():
    v1 = np.array([1.0, math.sqrt(2.0), 1.0]) / 2.0     # eigenvalue sqrt(2)
    v2 = np.array([1.0, 0.0, -1.0]) / math.sqrt(2.0)    # eigenvalue 0
    v3 = np.array([1.0, -math.sqrt(2.0), 1.0]) / 2.0    # eigenvalue -sqrt(2)
    return [np.outer(v, v) for v in (v1, v2, v3)]


def test_support_examples():
    k4 = pw.decompose(pw.hamiltonian(pw.build_complete(4), pw.ADJACENCY))
    prof = pw.support(k4, np.ones(4))
    assert prof.kind == "fixed"
    assert np.allclose(prof.eigenvalues, [3.0])

    k3 = pw.decompose(pw.hamiltonian(pw.build_complete(3), pw.ADJACENCY))
    prof = pw.support(k3, basis_state(3, 0))
    assert prof.kind != "fixed"
    assert np.allclose(prof.eigenvalues, [2.0, -1.0])

    # twin vertices: difference state is an eigenvector
    c4 = pw.decompose(pw.hamiltonian(pw.build_cycle(4), pw.ADJACENCY))
    prof = pw.support(c4, pair_state(4, 0, 2))
    assert prof.kind == "fixed"

    with pytest.raises(pw.InvalidStateError):
        pw.support(k3, np.zeros(3))


def test_support_decomposition_invariant(rng):
    for n in (4, 6, 9):
        g = random_connected_graph(rng, n, 3)
        dec = pw.decompose(pw.hamiltonian(g, pw.ADJACENCY))
        for _ in range(5):
            x = rng.normal(size=n)
            prof = pw.support(dec, x)
            assert np.linalg.norm(x - prof.components.sum(axis=0)) <= 1e-9 * n * np.linalg.norm(x)


def test_strong_cospectrality_p3_oracle():
    g = pw.build_path(3)
    dec = pw.decompose(pw.hamiltonian(g, pw.ADJACENCY))
    x, y = basis_state(3, 0), basis_state(3, 2)
    cert = pw.check_strong_cospectrality(dec, x, y)
    assert np.allclose(sorted(cert.sigma_plus), [-math.sqrt(2.0), math.sqrt(2.0)], atol=1e-9)
    assert np.allclose(cert.sigma_minus, [0.0], atol=1e-9)
    # cross-check classification against the explicit projector oracle
    for proj, expect in zip(_p3_projectors(), (1, -1, 1)):
        assert np.linalg.norm(proj @ x - expect * (proj @ y)) <= 1e-12


def test_strong_cospectrality_sum_difference(rng):
    g = random_connected_graph(rng, 6, 3)
    dec = pw.decompose(pw.hamiltonian(g, pw.LAPLACIAN))
    u1, u2 = dec.eigenvector(0), dec.eigenvector(1)
    cert = pw.check_strong_cospectrality(dec, u1 + u2, u1 - u2)
    assert np.allclose(cert.sigma_plus, [dec.eigenvalues[0]], atol=1e-9)
    assert np.allclose(cert.sigma_minus, [dec.eigenvalues[1]], atol=1e-9)


def test_strong_cospectrality_refusals():
    k3 = pw.decompose(pw.hamiltonian(pw.build_complete(3), pw.ADJACENCY))
    with pytest.raises(pw.NotCospectralError) as err:
        pw.check_strong_cospectrality(k3, basis_state(3, 0), basis_state(3, 1))
    assert err.value.eigenvalue == pytest.approx(-1.0, abs=1e-9)
    with pytest.raises(pw.InvalidPairError):
        pw.check_strong_cospectrality(k3, basis_state(3, 0), 2.0 * basis_state(3, 1))
    with pytest.raises(pw.InvalidPairError):
        pw.check_strong_cospectrality(k3, basis_state(3, 0), -basis_state(3, 0))
    with pytest.raises(pw.FixedStateError):
        pw.check_strong_cospectrality(k3, np.ones(3), unit(np.array([1.0, 1.0, -2.0])) * math.sqrt(3))


def test_enumerate_partners_counts(rng):
    c4 = pw.decompose(pw.hamiltonian(pw.build_cycle(4), pw.ADJACENCY))
    partners = pw.enumerate_partners(c4, basis_state(4, 0))  # support size 3
    assert len(partners) == 3
    for y in partners:
        cert = pw.check_strong_cospectrality(c4, basis_state(4, 0), y)
        assert 0 in cert.plus_positions  # largest eigenvalue kept positive

    k3 = pw.decompose(pw.hamiltonian(pw.build_complete(3), pw.ADJACENCY))
    assert len(pw.enumerate_partners(k3, basis_state(3, 0))) == 1  # support size 2

    with pytest.raises(pw.FixedStateError):
        pw.enumerate_partners(k3, np.ones(3))


def test_enumerate_partners_guard(rng):
    # 22 distinct eigenvalues all in the support: too many bipartitions
    x = unit(rng.normal(size=22))
    y = rng.normal(size=22)
    y = unit(y - (y @ x) * x)
    m = pw.synthesize(pw.SynthesisRequest(x=x, y=y, tau=1.0, m1=11, m2=11))
    dec = pw.decompose(m)
    with pytest.raises(pw.TooManyPartitionsError):
        pw.enumerate_partners(dec, x)


def test_moment_check():
    p3 = pw.decompose(pw.hamiltonian(pw.build_path(3), pw.ADJACENCY))
    assert pw.moment_check(p3, basis_state(3, 0), basis_state(3, 2), 6)
    # (A^2)_00 = 1 but (A^2)_11 = 2: moments differ at k = 2
    assert not pw.moment_check(p3, basis_state(3, 0), basis_state(3, 1), 2)
    x = np.array([0.3, -1.0, 0.2])
    assert pw.moment_check(p3, x, x, 8)


def test_cospectrality_implies_moment_equality(rng):
    for n in (5, 8):
        g = random_connected_graph(rng, n, 3)
        dec = pw.decompose(pw.hamiltonian(g, pw.ADJACENCY))
        x = rng.normal(size=n)
        for y in pw.enumerate_partners(dec, x)[:8]:
            assert pw.moment_check(dec, x, y, 10)


def test_automorphism_fix_check():
    c4 = pw.build_cycle(4)
    ham = pw.hamiltonian(c4, pw.ADJACENCY)
    dec = pw.decompose(ham)
    x, y = basis_state(4, 0), basis_state(4, 2)  # vertex transfer pair in the 4-cycle
    # identity is trivially fine
    assert pw.automorphism_fix_check([0, 1, 2, 3], dec, ham, x, y)
    # oracle: enumerate every automorphism of the 4-cycle among all 24 permutations
    a = ham.matrix
    autos = [
        p for p in itertools.permutations(range(4))
        if np.array_equal(a[np.ix_(p, p)], a)
    ]
    assert len(autos) == 8
    for p in autos:
        assert pw.automorphism_fix_check(list(p), dec, ham, x, y)
    with pytest.raises(pw.InvalidAutomorphismError):
        pw.automorphism_fix_check([1, 0, 2, 3], dec, ham, x, y)  # not an automorphism


def test_automorphism_fix_check_p3_reversal():
    g = pw.build_path(3)
    ham = pw.hamiltonian(g, pw.ADJACENCY)
    dec = pw.decompose(ham)
    # the partner of the end-vertex sum under the reversal symmetry
    y = basis_state(3, 0) + basis_state(3, 2)
    x = math.sqrt(2.0) * basis_state(3, 1)
    reversal = [2, 1, 0]
    assert pw.automorphism_fix_check(reversal, dec, ham, x, y)
    # and explicitly: the reversal fixes both states
    assert np.array_equal(y[::-1], y)
    assert np.array_equal(x[::-1], x)


def test_involution_certificate_property(rng):
    g = random_connected_graph(rng, 7, 4)
    dec = pw.decompose(pw.hamiltonian(g, pw.ADJACENCY))
    x = rng.normal(size=7)
    for y in pw.enumerate_partners(dec, x)[:6]:
        cert = pw.check_strong_cospectrality(dec, x, y)
        q = pw.involution_from_partition(dec, cert)
        assert np.max(np.abs(q @ q - np.eye(7))) <= 1e-8
        assert np.linalg.norm(q @ x - y) <= 1e-8 * np.linalg.norm(x)


def test_covering_radius_support_bound(rng):
    # nonnegative matrix and state: support size exceeds the covering radius
    for trial in range(20):
        n = int(rng.integers(4, 16))
        g = random_tree(rng, n) if trial % 2 == 0 else pw.build_cycle(max(n, 3))
        ham = pw.hamiltonian(g, pw.ADJACENCY)
        dec = pw.decompose(ham)
        x = np.zeros(g.n)
        size = int(rng.integers(1, g.n))
        chosen = rng.choice(g.n, size=size, replace=False)
        x[chosen] = rng.uniform(0.2, 1.0, size=size)
        prof = pw.support(dec, x)
        if prof.kind == "fixed":
            continue
        r = pw.covering_radius(g, x)
        assert prof.size >= r + 1
