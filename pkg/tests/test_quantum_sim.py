import itertools
import warnings

import numpy as np
import pytest
from conftest import GF2, GF3, GF4, random_pair

from conjcodes import quantum_sim as qs
from conjcodes.conjugate_pair import make_pair
from conjcodes.errors import NotRepresentative, TooLarge, UnsupportedField
from conjcodes.linear_codes import LinearCode, vector_index
from conjcodes.symplectic import error_set, interleave

DEPOL = lambda p: np.array([[1 - p, p / 3], [p / 3, p / 3]])  # noqa: E731


def label(x, z):
    return interleave(np.asarray(x), np.asarray(z))


def unit(i, n):
    return np.eye(n, dtype=np.int64)[i]


def test_weyl_examples():
    ket0 = np.array([1, 0], dtype=complex)
    ket1 = np.array([0, 1], dtype=complex)
    assert np.allclose(qs.weyl_apply(ket0, [0, 0], GF2), ket0)
    assert np.allclose(qs.weyl_apply(ket0, [1, 0], GF2), ket1)
    assert np.allclose(qs.weyl_apply(ket1, [0, 1], GF2), -ket1)
    # X|j> = |j - 1> over GF(3)
    ket = np.eye(3, dtype=complex)
    assert np.allclose(qs.weyl_apply(ket[2], [1, 0], GF3), ket[1])
    assert np.allclose(qs.weyl_apply(ket[0], [1, 0], GF3), ket[2])
    assert np.allclose(qs.weyl_apply(ket[1], [0, 1], GF3), qs.omega(3) * ket[1])


def test_weyl_dagger_inverts(rng):
    for field, n in ((GF2, 3), (GF3, 2)):
        psi = rng.normal(size=field.q**n) + 1j * rng.normal(size=field.q**n)
        lab = rng.integers(0, field.q, size=2 * n)
        back = qs.weyl_apply_dagger(qs.weyl_apply(psi, lab, field), lab, field)
        assert np.allclose(back, psi)
        m = qs.weyl_matrix(lab, field)
        assert np.allclose(m.conj().T @ m, np.eye(len(psi)))


def test_commutation_examples(rng):
    assert qs.commutation_check([1, 0], [1, 0], GF2) == 0
    assert qs.commutation_check([1, 0], [0, 1], GF2) == 1
    for _ in range(50):
        a, b = rng.integers(0, 3, size=(2, 4))
        if qs.symp_form(a, b, GF3) == 0:
            assert qs.commutation_check(a, b, GF3) == 0
            break


def test_unsupported_field():
    c = LinearCode([[1, 1]], GF4)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        pair = make_pair(c, c)
    with pytest.raises(UnsupportedField):
        qs.css_basis(pair)


def test_caps(monkeypatch):
    monkeypatch.setenv("CC_MAX_DIM", "4")
    with pytest.raises(TooLarge):
        qs.weyl_matrix([0] * 6, GF2)
    monkeypatch.delenv("CC_MAX_DIM")
    qs.set_max_dim(2)
    try:
        with pytest.raises(TooLarge):
            qs.weyl_matrix([0, 0, 0, 0], GF2)
    finally:
        qs.set_max_dim(None)
    qs.weyl_matrix([0, 0, 0, 0], GF2)


def test_encoded_state_examples(steane, css422):
    full = LinearCode.full(1, GF2)
    one = make_pair(full, full)
    assert np.allclose(qs.encoded_state(one, [0], [0], [1]), [0, 1])
    psi = qs.encoded_state(steane, np.zeros(7, int), np.zeros(7, int), np.zeros(7, int))
    support = np.flatnonzero(np.abs(psi) > 1e-12)
    assert sorted(support) == sorted(vector_index(steane.c2_dual.codewords(), 2))
    assert np.allclose(psi[support], 1 / np.sqrt(8))
    psi = qs.encoded_state(css422, [0] * 4, [0] * 4, [0] * 4)
    expected = np.zeros(16)
    expected[[0, 15]] = 1 / np.sqrt(2)
    assert np.allclose(psi, expected)
    with pytest.raises(NotRepresentative):
        qs.encoded_state(css422, [1, 1, 0, 0], [0] * 4, [0] * 4)


@pytest.mark.parametrize("name", ["steane", "css422", "trivial"])
def test_orthonormal_complete(name, request):
    pair = request.getfixturevalue(name)
    u = qs.css_basis(pair).unitary
    assert u.shape == (2**pair.n, 2**pair.n)
    assert np.allclose(u.conj().T @ u, np.eye(2**pair.n), atol=1e-9)


def test_orthonormal_ternary(rng):
    pair = random_pair(rng, 3, GF3)
    u = qs.css_basis(pair).unitary
    assert np.allclose(u.conj().T @ u, np.eye(27), atol=1e-9)


def test_stabilizer_examples(steane, css422):
    zero7 = np.zeros(7, dtype=np.int64)
    z_exp, x_exp = qs.stabilizer_check(steane, qs.encoded_state(steane, zero7, zero7, zero7))
    assert not z_exp.any() and not x_exp.any()
    e1 = unit(0, 7)
    z_exp, _ = qs.stabilizer_check(steane, qs.encoded_state(steane, e1, zero7, zero7), e1, zero7)
    assert np.array_equal(z_exp, steane.c1.syndrome(e1))
    cb = qs.css_basis(css422)
    z = cb.zs[1]
    _, x_exp = qs.stabilizer_check(css422, cb.state(cb.xs[0], z, cb.vs[0]), cb.xs[0], z)
    assert np.array_equal(x_exp, (css422.c2_dual.gen @ z) % 2)


def test_stabilizers_every_state(steane):
    cb = qs.css_basis(steane)
    for x, z, v in itertools.product(cb.xs, cb.zs, cb.vs):
        qs.stabilizer_check(steane, cb.state(x, z, v), x, z)


def test_mixture_examples(css422):
    full = LinearCode.full(1, GF2)
    one = make_pair(full, full)
    rho = qs.sp_mixture(one, [0], [1])
    assert np.allclose(rho, [[0, 0], [0, 1]])
    rho = qs.sp_mixture(css422, [0] * 4, [0] * 4)
    expected = np.zeros((16, 16))
    expected[0, 0] = expected[15, 15] = 0.5
    assert np.allclose(rho, expected)


def test_mixture_ternary(rng):
    pair = random_pair(rng, 3, GF3)
    cb = qs.css_basis(pair)
    for x, v in itertools.product(cb.xs, cb.vs):
        qs.sp_mixture(pair, x, v)


def test_recover_examples(steane):
    cb = qs.css_basis(steane)
    zero = np.zeros(7, dtype=np.int64)
    psi = cb.state(zero, zero, cb.vs[1])
    assert np.allclose(qs.recover(steane, psi, zero, zero), psi)
    for lab in (label(unit(2, 7), zero), label(unit(0, 7), unit(4, 7))):
        out = qs.recover(steane, qs.weyl_apply(psi, lab, GF2), zero, zero)
        assert abs(abs(np.vdot(psi, out)) - 1) < 1e-9


def test_recover_leader_errors_exhaustive(steane):
    cb = qs.css_basis(steane)
    zero = np.zeros(7, dtype=np.int64)
    block = cb.block(zero, zero)
    for lab in error_set(cb.xs, cb.zs):
        for psi in block.T:
            out = qs.recover(steane, qs.weyl_apply(psi, lab, GF2), zero, zero)
            assert abs(abs(np.vdot(psi, out)) - 1) < 1e-9
    # the enlarged set: add a stabilizer to the X part
    lab = label((unit(3, 7) + steane.c2_dual.gen[0]) % 2, unit(6, 7))
    out = qs.recover(steane, qs.weyl_apply(block[:, 1], lab, GF2), zero, zero)
    assert abs(abs(np.vdot(block[:, 1], out)) - 1) < 1e-9


def test_recover_density(css422):
    cb = qs.css_basis(css422)
    x, z = cb.xs[0], cb.zs[0]
    psi = cb.state(x, z, cb.vs[2])
    noisy = qs.weyl_apply(psi, label(cb.xs[1], cb.zs[1]), GF2)
    rho = qs.recover(css422, np.outer(noisy, noisy.conj()), x, z)
    assert np.isclose(np.trace(rho), 1)
    assert np.isclose(np.real(psi.conj() @ rho @ psi), 1)
    # a different weight-1 X error with the same syndrome is only detected
    other = next(e for e in np.eye(4, dtype=np.int64)
                 if not np.array_equal(e, cb.xs[1]) and css422.c1.syndrome(e) == css422.c1.syndrome(cb.xs[1]))
    noisy = qs.weyl_apply(psi, label(other, [0] * 4), GF2)
    rho = qs.recover(css422, np.outer(noisy, noisy.conj()), x, z)
    assert np.real(psi.conj() @ rho @ psi) < 1 - 1e-6


def kraus_oracle(pair, channel, x, z):
    """Every Kraus operator sqrt(P(l)) R_r N_l written out as a matrix."""
    rec = qs.recovery_kraus(pair, x, z)
    out = []
    for lab, p in zip(channel.labels, channel.probs):
        n_l = qs.weyl_matrix(lab, pair.field)
        out.extend(np.sqrt(p) * r @ n_l for r in rec)
    return np.array(out)


def projector(pair, x, z):
    v = qs.css_basis(pair).block(x, z)
    return v @ v.conj().T / v.shape[1]


def test_fidelity_examples(steane):
    zero = np.zeros(7, dtype=np.int64)
    ident = qs.PauliChannel.identity(7, GF2)
    assert np.isclose(qs.entanglement_fidelity(steane, zero, zero, ident), 1)
    good = qs.PauliChannel.single(label(unit(5, 7), unit(1, 7)), GF2)
    assert np.isclose(qs.entanglement_fidelity(steane, zero, zero, good), 1)
    bad_lab = label((unit(0, 7) + unit(1, 7)) % 2, zero)
    bad = qs.PauliChannel.single(bad_lab, GF2)
    got = qs.entanglement_fidelity(steane, zero, zero, bad)
    expected = qs.fidelity_kraus(projector(steane, zero, zero), kraus_oracle(steane, bad, zero, zero))
    assert got < 1 - 1e-6
    assert abs(got - expected) < 1e-9


@pytest.mark.parametrize("p", [0.03, 0.2])
def test_fidelity_matches_kraus_oracle(css422, p):
    ch = qs.PauliChannel.iid(DEPOL(p), 4, GF2)
    cb = qs.css_basis(css422)
    for x, z in itertools.product(cb.xs, cb.zs):
        got = qs.entanglement_fidelity(css422, x, z, ch)
        expected = qs.fidelity_kraus(projector(css422, x, z), kraus_oracle(css422, ch, x, z))
        assert abs(got - expected) < 1e-9


def test_fidelity_monotone(css422):
    values = [qs.code_fidelity(css422, qs.PauliChannel.iid(DEPOL(p), 4, GF2))
              for p in np.arange(0, 0.201, 0.01)]
    assert np.isclose(values[0], 1)
    assert all(0 <= v <= 1 + 1e-9 for v in values)
    assert all(b <= a + 1e-12 for a, b in zip(values, values[1:]))


def _translation_check(pair, channel):
    cb = qs.css_basis(pair)
    means = [np.mean([qs.entanglement_fidelity(pair, x, z, channel) for z in cb.zs]) for x in cb.xs]
    assert np.ptp(means) < 1e-9


def test_translation_invariance(css422, rng):
    _translation_check(css422, qs.PauliChannel.iid(DEPOL(0.1), 4, GF2))
    table = rng.random((3, 3))
    pair = random_pair(rng, 3, GF3)
    _translation_check(pair, qs.PauliChannel.iid(table / table.sum(), 3, GF3))


def direct_w(rho, kraus):
    return np.array([[np.trace(a @ rho @ b.conj().T) for b in kraus] for a in kraus])


def entropy_of(w):
    eig = np.linalg.eigvalsh(w)
    eig = eig[eig > 1e-14]
    return float(-np.sum(eig * np.log2(eig)))


def test_entropy_exchange_examples(rng):
    rho0 = np.diag([1.0, 0.0]).astype(complex)
    assert abs(qs.entropy_exchange(rho0, [np.eye(2)])) < 1e-12
    u = np.array([[0, 1], [1, 0]], dtype=complex)
    assert abs(qs.entropy_exchange(rho0, u)) < 1e-12
    p = 0.1
    paulis = [qs.weyl_matrix(lab, GF2) for lab in ([0, 0], [1, 0], [1, 1], [0, 1])]
    weights = [1 - p, p / 3, p / 3, p / 3]
    kraus = [np.sqrt(w) * m for w, m in zip(weights, paulis)]
    assert abs(qs.entropy_exchange(rho0, kraus) - entropy_of(direct_w(rho0, kraus))) < 1e-9
    mixed = np.eye(2) / 2
    shannon = -sum(w * np.log2(w) for w in weights)
    assert abs(qs.entropy_exchange(mixed, kraus) - shannon) < 1e-9
    a = rng.normal(size=(3, 3)) + 1j * rng.normal(size=(3, 3))
    rho = a @ a.conj().T
    rho /= np.trace(rho)
    ks = [qs.weyl_matrix([i, j], GF3) / 3 for i in range(3) for j in range(3)]
    assert abs(qs.entropy_exchange(rho, ks) - entropy_of(direct_w(rho, ks))) < 1e-9


def test_code_channel_exchange_matches_direct(css422):
    cb = qs.css_basis(css422)
    ch = qs.PauliChannel.local(DEPOL(0.1), 0, 4, GF2)
    for x, z in ((cb.xs[0], cb.zs[0]), (cb.xs[1], cb.zs[1])):
        s_e, fid = qs.code_channel_exchange(css422, x, z, ch)
        rho = projector(css422, x, z)
        kraus = kraus_oracle(css422, ch, x, z)
        assert abs(s_e - entropy_of(direct_w(rho, kraus))) < 1e-9
        assert abs(fid - qs.fidelity_kraus(rho, kraus)) < 1e-9


def test_knill_laflamme(steane):
    cb = qs.css_basis(steane)
    assert qs.knill_laflamme(steane, error_set(cb.xs, cb.zs))
    zero = np.zeros(7, dtype=np.int64)
    light = np.stack([label(unit(0, 7), zero), label(unit(1, 7), zero), label(zero, zero),
                      label((unit(0, 7) + unit(1, 7)) % 2, zero)])
    assert qs.knill_laflamme(steane, light)  # differences of weight <= 2
    logical = label(cb.vs[1], zero)
    assert not qs.knill_laflamme(steane, np.stack([label(zero, zero), logical]))


def test_channels(rng):
    ch = qs.PauliChannel.iid(DEPOL(0.3), 3, GF2, drop_zero=False)
    assert len(ch) == 64 and np.isclose(ch.probs.sum(), 1)
    sampled = ch.sampled(rng, 1000)
    assert np.isclose(sampled.probs.sum(), 1)
    assert set(vector_index(sampled.labels, 2)) <= set(vector_index(ch.labels, 2))
    kraus = ch.kraus()
    total = sum(k.conj().T @ k for k in kraus)
    assert np.allclose(total, np.eye(8))
