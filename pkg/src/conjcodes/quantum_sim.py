"""Dense simulation of CSS codes on q^n-dimensional state spaces.

Conventions: the computational basis ``|j>`` of ``(C^q)^n`` is indexed by the
row-major index of ``j in F_q^n``; ``X|j> = |j-1>``, ``Z|j> = w^j |j>`` with
``w = exp(2 pi i / q)`` and ``N_[u,w] = X^u Z^w``.  States are complex arrays
whose first axis runs over the basis; extra trailing axes are carried along
so that whole blocks of columns can be pushed through an operator at once.

Only prime alphabets are simulated.  Pairs over GF(p^m) are expanded to
GF(p) first with :func:`conjcodes.conjugate_pair.expand_pair`.
"""

from __future__ import annotations

import functools
import os
from dataclasses import dataclass

import numpy as np

from .conjugate_pair import ConjugatePair, message_representatives
from .errors import (
    EigenvalueMismatch,
    MixtureMismatch,
    NotRepresentative,
    PhaseMismatch,
    TooLarge,
    UnsupportedField,
)
from .finite_field import FieldParams
from .linear_codes import MAX_ENUM, all_vectors, index_vector, vector_index
from .symplectic import interleave, split, symp_form

ATOL = 1e-9

MAX_STATE_DIM = 2**14
MAX_DENSITY_DIM = 2**12
MAX_MATRIX_DIM = 2**10
MAX_KRAUS_DIM = 2**8

_CHUNK = 4096


_override: int | None = None


def set_max_dim(cap: int | None) -> None:
    """Replace every simulator dimension cap (``None`` restores the defaults)."""
    global _override
    _override = cap


def _cap(default: int) -> int:
    if _override is not None:
        return _override
    env = os.environ.get("CC_MAX_DIM")
    return int(env) if env else default


def _check_dim(dim: int, cap: int, what: str) -> None:
    if dim > _cap(cap):
        raise TooLarge(f"{what} of dimension {dim} exceeds cap {_cap(cap)}")


def _require_prime(field: FieldParams) -> None:
    if not field.is_prime_field:
        raise UnsupportedField(
            f"simulation needs a prime alphabet, got GF({field}); expand the pair first")


def omega(q: int) -> complex:
    return np.exp(2j * np.pi / q)


@functools.lru_cache(maxsize=16)
def _words(n: int, q: int) -> np.ndarray:
    return all_vectors(n, q)


def weyl_apply(state, label, field: FieldParams) -> np.ndarray:
    """Apply ``N_[u,w] = X^u Z^w`` (label given interleaved) along axis 0."""
    _require_prime(field)
    state = np.asarray(state, dtype=complex)
    u, w = split(label)
    n, q = u.shape[-1], field.q
    _check_dim(state.shape[0], MAX_STATE_DIM, "state")
    if state.shape[0] != q**n:
        raise ValueError(f"state has {state.shape[0]} amplitudes, expected {q}^{n}")
    words = _words(n, q)
    src = vector_index((words + u) % q, q)
    phase = omega(q) ** (((words + u) % q) @ w % q)
    return phase.reshape((-1,) + (1,) * (state.ndim - 1)) * state[src]


def weyl_apply_dagger(state, label, field: FieldParams) -> np.ndarray:
    """Apply ``N_[u,w]^dagger = Z^-w X^-u``."""
    _require_prime(field)
    state = np.asarray(state, dtype=complex)
    u, w = split(label)
    n, q = u.shape[-1], field.q
    words = _words(n, q)
    src = vector_index((words - u) % q, q)
    phase = omega(q) ** (-(words @ w) % q)
    return phase.reshape((-1,) + (1,) * (state.ndim - 1)) * state[src]


def _weyl_action(labels: np.ndarray, field: FieldParams) -> tuple[np.ndarray, np.ndarray]:
    """Gather indices and phases with ``(N_l psi)[i] = phase[l, i] * psi[src[l, i]]``."""
    q = field.q
    u, w = split(labels)
    words = _words(u.shape[-1], q)
    shifted = (words[None, :, :] + u[:, None, :]) % q
    src = vector_index(shifted, q)
    phase = omega(q) ** (np.einsum("bjn,bn->bj", shifted, w) % q)
    return src, phase


def _weyl_apply_batch(block: np.ndarray, labels: np.ndarray, field: FieldParams) -> np.ndarray:
    """``N_l @ block`` for every label row; result shape ``(len(labels),) + block.shape``."""
    src, phase = _weyl_action(labels, field)
    return phase[..., None] * block[src]


def weyl_matrix(label, field: FieldParams) -> np.ndarray:
    u, _ = split(label)
    dim = field.q ** u.shape[-1]
    _check_dim(dim, MAX_MATRIX_DIM, "operator")
    return weyl_apply(np.eye(dim, dtype=complex), label, field)


def commutation_check(a, b, field: FieldParams) -> int:
    """Exponent ``e`` with ``N_a N_b = w^e N_b N_a``, verified on matrices.

    Raises PhaseMismatch when no such exponent exists or when it disagrees
    with the symplectic form.
    """
    na = weyl_matrix(a, field)
    nb = weyl_matrix(b, field)
    ab = na @ nb
    ba = nb @ na
    q = field.q
    found = [e for e in range(q) if np.allclose(ab, omega(q) ** e * ba, atol=ATOL, rtol=0)]
    if len(found) != 1:
        raise PhaseMismatch(f"no unique commutation phase for {a} and {b}")
    expected = symp_form(a, b, field)
    if found[0] != expected:
        raise PhaseMismatch(f"phase exponent {found[0]} but symplectic form {expected}")
    return found[0]


# CSS code states


class CSSBasis:
    """Encoded states ``|phi_xzv>`` of a conjugate pair, built explicitly.

    ``x`` ranges over the C1 coset leaders, ``z`` over the C2 coset leaders
    and ``v`` over the message transversal of ``C1 / C2^perp``.  Leader
    position equals syndrome index, so ``(ix, iz)`` is also the stabilizer
    syndrome of the block.
    """

    def __init__(self, pair: ConjugatePair) -> None:
        _require_prime(pair.field)
        self.pair = pair
        self.field = pair.field
        self.q = pair.field.q
        self.n = pair.n
        self.dim = self.q**self.n
        _check_dim(self.dim, MAX_STATE_DIM, "code space")
        self.t1 = pair.c1.syndrome_table()
        self.t2 = pair.c2.syndrome_table()
        self.xs = self.t1.leaders
        self.zs = self.t2.leaders
        self.vs = message_representatives(pair)
        self.h = pair.c1_dual.gen  # Z-type stabilizer generators
        self.g = pair.c2_dual.gen  # X-type stabilizer generators
        self.dual_words = pair.c2_dual.codewords()
        self.code_dim = len(self.vs)

    @property
    def n_blocks(self) -> int:
        return len(self.xs) * len(self.zs)

    def block_index(self, x, z) -> int:
        ix = int(self.t1.key(self.t1.syndrome(x)))
        iz = int(self.t2.key(self.t2.syndrome(z)))
        return ix * len(self.zs) + iz

    def _check_reps(self, x, z, v=None) -> None:
        if not self.t1.is_leader(x):
            raise NotRepresentative(f"x={list(x)} is not a C1 coset leader")
        if not self.t2.is_leader(z):
            raise NotRepresentative(f"z={list(z)} is not a C2 coset leader")
        if v is not None and not np.any(np.all(self.vs == v, axis=1)):
            raise NotRepresentative(f"v={list(v)} is not a message representative")

    def state(self, x, z, v) -> np.ndarray:
        x, z, v = (np.asarray(a, dtype=np.int64) for a in (x, z, v))
        self._check_reps(x, z, v)
        return self._state(x, z, v)

    def _state(self, x, z, v) -> np.ndarray:
        q = self.q
        words = (x + v + self.dual_words) % q
        amps = omega(q) ** ((self.dual_words @ z) % q) / np.sqrt(len(self.dual_words))
        out = np.zeros(self.dim, dtype=complex)
        out[vector_index(words, q)] = amps
        return out

    def block(self, x, z) -> np.ndarray:
        """Columns ``|phi_xzv>`` for every message ``v``; shape (dim, q^k)."""
        x, z = np.asarray(x, dtype=np.int64), np.asarray(z, dtype=np.int64)
        self._check_reps(x, z)
        return np.stack([self._state(x, z, v) for v in self.vs], axis=1)

    @functools.cached_property
    def unitary(self) -> np.ndarray:
        """All encoded states as columns, ordered block by block."""
        cols = [self._state(x, z, v) for x in self.xs for z in self.zs for v in self.vs]
        return np.stack(cols, axis=1)

    def correction(self, target_x, target_z, block: int) -> np.ndarray:
        """Weyl label whose inverse moves syndrome block ``block`` back to ``(x, z)``.

        ``X^a Z^b`` maps Q_xz to Q_(x-a, z+b); the guessed error is the pair
        of coset leaders for those syndrome differences.
        """
        F = self.field
        ix, iz = divmod(block, len(self.zs))
        a = self.t1.leader_of(F.sub(target_x, self.xs[ix]))
        b = self.t2.leader_of(F.sub(self.zs[iz], target_z))
        return interleave(a, b)


@functools.lru_cache(maxsize=8)
def css_basis(pair: ConjugatePair) -> CSSBasis:
    return CSSBasis(pair)


def encoded_state(pair: ConjugatePair, x, z, v) -> np.ndarray:
    return css_basis(pair).state(x, z, v)


def _eigen_exponent(before: np.ndarray, after: np.ndarray, q: int) -> int:
    overlap = np.vdot(before, after)
    e = int(np.round(np.angle(overlap) / (2 * np.pi / q))) % q
    if not np.allclose(after, omega(q) ** e * before, atol=ATOL, rtol=0):
        raise EigenvalueMismatch("state is not an eigenvector of the stabilizer generator")
    return e


def stabilizer_check(pair: ConjugatePair, state, x=None, z=None) -> tuple[np.ndarray, np.ndarray]:
    """Eigenphase exponents of the Z-type and X-type stabilizer generators.

    Returns ``(z_exponents, x_exponents)``: the exponents for ``Z^h_j``
    (``h_j`` a basis of C1^perp) and ``X^g_j`` (``g_j`` a basis of
    C2^perp).  When ``x``/``z`` are given they must equal ``x . h_j`` and
    ``z . g_j``, otherwise EigenvalueMismatch is raised.
    """
    cb = css_basis(pair)
    q, n = cb.q, cb.n
    state = np.asarray(state, dtype=complex)
    zero = np.zeros(n, dtype=np.int64)
    z_exp = np.array([_eigen_exponent(state, weyl_apply(state, interleave(zero, h), cb.field), q)
                      for h in cb.h], dtype=np.int64)
    x_exp = np.array([_eigen_exponent(state, weyl_apply(state, interleave(g, zero), cb.field), q)
                      for g in cb.g], dtype=np.int64)
    if x is not None and not np.array_equal(z_exp, (cb.h @ np.asarray(x)) % q):
        raise EigenvalueMismatch(f"Z-type exponents {z_exp} do not match x")
    if z is not None and not np.array_equal(x_exp, (cb.g @ np.asarray(z)) % q):
        raise EigenvalueMismatch(f"X-type exponents {x_exp} do not match z")
    return z_exp, x_exp


def sp_mixture(pair: ConjugatePair, x, v) -> np.ndarray:
    """Uniform mixture over ``z`` of ``|phi_xzv><phi_xzv|``, checked against
    the unentangled mixture of ``|w + v + x>`` over ``w in C2^perp``.

    ``z`` runs over a transversal of F^n / C2, which has ``|C2^perp|``
    members.  Raises MixtureMismatch if the two sides differ.
    """
    cb = css_basis(pair)
    _check_dim(cb.dim, MAX_DENSITY_DIM, "density operator")
    x = np.asarray(x, dtype=np.int64)
    v = np.asarray(v, dtype=np.int64)
    weight = 1.0 / len(cb.dual_words)
    states = np.stack([cb.state(x, z, v) for z in cb.zs], axis=1)
    lhs = weight * states @ states.conj().T
    rhs = np.zeros((cb.dim, cb.dim), dtype=complex)
    idx = vector_index((cb.dual_words + v + x) % cb.q, cb.q)
    rhs[idx, idx] = weight
    if not np.allclose(lhs, rhs, atol=ATOL, rtol=0):
        raise MixtureMismatch(f"max deviation {np.abs(lhs - rhs).max():.3e}")
    return lhs


# recovery


def _recovery_parts(cb: CSSBasis, x, z) -> tuple[np.ndarray, np.ndarray]:
    """Per-block correction labels and ``N^dagger U_r`` for the recovery onto Q_xz."""
    labels = np.stack([cb.correction(x, z, r) for r in range(cb.n_blocks)])
    u = cb.unitary.reshape(cb.dim, cb.n_blocks, cb.code_dim)
    corrected = np.stack([weyl_apply_dagger(u[:, r, :], labels[r], cb.field)
                          for r in range(cb.n_blocks)])
    return labels, corrected


def recovery_kraus(pair: ConjugatePair, x, z) -> np.ndarray:
    """Kraus operators ``N_r^dagger P_r`` of the syndrome recovery onto Q_xz."""
    cb = css_basis(pair)
    _check_dim(cb.dim, MAX_DENSITY_DIM, "Kraus operator")
    _, corrected = _recovery_parts(cb, x, z)
    u = cb.unitary.reshape(cb.dim, cb.n_blocks, cb.code_dim)
    return np.einsum("rik,jrk->rij", corrected, u.conj())


def recover(pair: ConjugatePair, noisy, x, z) -> np.ndarray:
    """Syndrome measurement followed by the leader correction towards Q_xz.

    A state vector comes back as a state vector when its syndrome is sharp
    (a single block carries all the weight) and as a density matrix
    otherwise; a density matrix always comes back as one.
    """
    cb = css_basis(pair)
    x = np.asarray(x, dtype=np.int64)
    z = np.asarray(z, dtype=np.int64)
    cb._check_reps(x, z)
    noisy = np.asarray(noisy, dtype=complex)
    _, corrected = _recovery_parts(cb, x, z)
    u = cb.unitary.reshape(cb.dim, cb.n_blocks, cb.code_dim)
    if noisy.ndim == 1:
        coeffs = np.einsum("jrk,j->rk", u.conj(), noisy)
        norms = np.linalg.norm(coeffs, axis=1)
        live = np.nonzero(norms > ATOL)[0]
        if len(live) == 1:
            return corrected[live[0]] @ coeffs[live[0]]
        images = np.stack([corrected[r] @ coeffs[r] for r in live])
        return images.T @ images.conj()
    _check_dim(cb.dim, MAX_DENSITY_DIM, "density operator")
    kraus = np.einsum("rik,jrk->rij", corrected, u.conj())
    return np.einsum("rij,jk,rlk->il", kraus, noisy, kraus.conj())


# channels and fidelity


@dataclass(frozen=True)
class PauliChannel:
    """A mixture of Weyl operators: ``rho -> sum_l P(l) N_l rho N_l^dagger``.

    ``xs[i]`` and ``zs[i]`` are the X and Z parts of label ``i``.
    """

    xs: np.ndarray
    zs: np.ndarray
    probs: np.ndarray
    field: FieldParams

    def __post_init__(self) -> None:
        p = np.asarray(self.probs, dtype=float)
        if np.any(p < 0) or abs(p.sum() - 1) > 1e-12:
            raise ValueError("label probabilities must be nonnegative and sum to 1")

    @property
    def n(self) -> int:
        return self.xs.shape[1]

    @property
    def labels(self) -> np.ndarray:
        return interleave(self.xs, self.zs)

    def __len__(self) -> int:
        return len(self.probs)

    @classmethod
    def identity(cls, n: int, field: FieldParams) -> PauliChannel:
        zero = np.zeros((1, n), dtype=np.int64)
        return cls(zero, zero.copy(), np.ones(1), field)

    @classmethod
    def single(cls, label, field: FieldParams) -> PauliChannel:
        """The deterministic channel applying one Weyl operator."""
        x, z = split(np.asarray(label, dtype=np.int64)[None, :])
        return cls(x, z, np.ones(1), field)

    @classmethod
    def from_labels(cls, labels, probs, field: FieldParams) -> PauliChannel:
        x, z = split(np.asarray(labels, dtype=np.int64))
        return cls(x, z, np.asarray(probs, dtype=float), field)

    @classmethod
    def iid(cls, table, n: int, field: FieldParams, drop_zero: bool = True) -> PauliChannel:
        """Independent symbols, each hit by ``X^u Z^w`` with probability ``table[u, w]``."""
        table = np.asarray(table, dtype=float)
        q = field.q
        if table.shape != (q, q):
            raise ValueError(f"per-symbol table must be {q}x{q}")
        if q ** (2 * n) > MAX_ENUM:
            raise TooLarge(f"{q}^{2 * n} joint labels")
        sym = index_vector(np.arange(q ** (2 * n)), n, q * q)
        xs, zs = sym // q, sym % q
        probs = np.prod(table[xs, zs], axis=1)
        if drop_zero:
            keep = probs > 0
            xs, zs, probs = xs[keep], zs[keep], probs[keep]
        return cls(xs, zs, probs / probs.sum(), field)

    @classmethod
    def local(cls, table, position: int, n: int, field: FieldParams) -> PauliChannel:
        """Noise ``table`` on one symbol, identity elsewhere."""
        table = np.asarray(table, dtype=float)
        q = field.q
        u, w = np.nonzero(table)
        xs = np.zeros((len(u), n), dtype=np.int64)
        zs = np.zeros((len(u), n), dtype=np.int64)
        xs[:, position] = u
        zs[:, position] = w
        probs = table[u, w]
        if table.shape != (q, q):
            raise ValueError(f"per-symbol table must be {q}x{q}")
        return cls(xs, zs, probs / probs.sum(), field)

    def sampled(self, rng: np.random.Generator, trials: int) -> PauliChannel:
        """Empirical channel from ``trials`` draws (Monte Carlo mode)."""
        picks = rng.choice(len(self.probs), size=trials, p=self.probs)
        idx, counts = np.unique(picks, return_counts=True)
        return PauliChannel(self.xs[idx], self.zs[idx], counts / trials, self.field)

    def kraus(self) -> np.ndarray:
        return np.stack([np.sqrt(p) * weyl_matrix(l, self.field)
                         for p, l in zip(self.probs, self.labels)])


class _ChannelAction:
    """Per-label gather/phase tables of a Weyl channel, reused across syndromes."""

    def __init__(self, channel: PauliChannel) -> None:
        self.channel = channel
        self._cache: list | None = None
        dim = channel.field.q**channel.n
        self._keep = len(channel) * dim <= 2**25

    def chunks(self):
        if self._cache is not None:
            yield from self._cache
            return
        labels, probs = self.channel.labels, self.channel.probs
        built = []
        for start in range(0, len(labels), _CHUNK):
            src, phase = _weyl_action(labels[start:start + _CHUNK], self.channel.field)
            item = (probs[start:start + _CHUNK], src, phase)
            if self._keep:
                built.append(item)
            yield item
        if self._keep:
            self._cache = built


def _channel_images(cb: CSSBasis, v_block: np.ndarray, action: _ChannelAction):
    """Yield ``(probs, G)`` chunks with ``G[r, :, l, :] = U_r^dagger N_l V``."""
    uh = cb.unitary.conj().T
    for probs, src, phase in action.chunks():
        w = phase.T[..., None] * v_block[src.T]  # (dim, B, qk)
        g = uh @ w.reshape(cb.dim, -1)
        yield probs, g.reshape(cb.n_blocks, cb.code_dim, len(probs), cb.code_dim)


def entanglement_fidelity(pair: ConjugatePair, x, z, channel: PauliChannel | _ChannelAction) -> float:
    """``F_e(pi_Q, R o A)`` for the code block Q_xz under a Weyl channel.

    Sums ``|Tr(pi K)|^2`` over the Kraus operators ``sqrt(P(l)) N_r^dagger
    P_r N_l`` of recovery composed with the channel.
    """
    cb = css_basis(pair)
    x = np.asarray(x, dtype=np.int64)
    z = np.asarray(z, dtype=np.int64)
    v_block = cb.block(x, z)
    _, corrected = _recovery_parts(cb, x, z)
    # T_r = V^dagger N_r^dagger U_r, so Tr(V^dagger K V) = Tr(T_r C_r)
    t = np.einsum("ja,rjb->rab", v_block.conj(), corrected)
    action = channel if isinstance(channel, _ChannelAction) else _ChannelAction(channel)
    total = 0.0
    for probs, g in _channel_images(cb, v_block, action):
        tr = np.einsum("rab,rbla->lr", t, g) / cb.code_dim
        total += float(probs @ np.sum(np.abs(tr) ** 2, axis=1))
    return total


def code_fidelity(pair: ConjugatePair, channel: PauliChannel) -> float:
    """Entanglement fidelity averaged uniformly over every syndrome ``(x, z)``."""
    cb = css_basis(pair)
    action = _ChannelAction(channel)
    vals = [entanglement_fidelity(pair, x, z, action) for x in cb.xs for z in cb.zs]
    return float(np.mean(vals))


def knill_laflamme(pair: ConjugatePair, labels, x=None, z=None) -> bool:
    """Whether ``P N_a^dagger N_b P`` is proportional to ``P`` for all labels a, b.

    This is the quantum condition for the code block to correct the
    operator set; it needs no recovery map.
    """
    cb = css_basis(pair)
    n = cb.n
    x = np.zeros(n, dtype=np.int64) if x is None else np.asarray(x, dtype=np.int64)
    z = np.zeros(n, dtype=np.int64) if z is None else np.asarray(z, dtype=np.int64)
    v_block = cb.block(x, z)
    imgs = _weyl_apply_batch(v_block, np.asarray(labels, dtype=np.int64).reshape(-1, 2 * n),
                             cb.field)
    gram = np.einsum("aij,bik->abjk", imgs.conj(), imgs)
    diag = np.einsum("abjj->abj", gram)
    scalar = diag.mean(axis=-1)
    eye = np.eye(cb.code_dim)
    return bool(np.allclose(gram, scalar[..., None, None] * eye, atol=ATOL, rtol=0))


def fidelity_kraus(rho, kraus) -> float:
    """``sum_i |Tr(rho K_i)|^2`` for explicit Kraus matrices."""
    rho = np.asarray(rho, dtype=complex)
    return float(sum(abs(np.trace(rho @ k)) ** 2 for k in kraus))


def _entropy_bits(eigs: np.ndarray) -> float:
    eigs = eigs[eigs > 1e-15]
    return float(-np.sum(eigs * np.log2(eigs)))


def _exchange_entropy_from_images(images: np.ndarray) -> float:
    """Entropy of ``W_ij = <m_i, m_j>`` where row ``m_i`` is the flattened ``K_i sqrt(rho)``.

    ``W = M M^dagger`` shares its nonzero spectrum with ``M^dagger M``,
    whichever is smaller is diagonalised.
    """
    m = images.reshape(len(images), -1)
    gram = m @ m.conj().T if m.shape[0] <= m.shape[1] else m.conj().T @ m
    eigs = np.linalg.eigvalsh((gram + gram.conj().T) / 2)
    return _entropy_bits(np.clip(eigs, 0, None))


def entropy_exchange(rho, kraus) -> float:
    """Entropy exchange ``S(W)`` in bits, ``W_ij = Tr(K_i rho K_j^dagger)``."""
    rho = np.asarray(rho, dtype=complex)
    kraus = np.asarray(kraus, dtype=complex)
    if kraus.ndim == 2:
        kraus = kraus[None]
    _check_dim(rho.shape[0], MAX_DENSITY_DIM, "density operator")
    if len(kraus) * rho.shape[0] > MAX_ENUM * 16:
        raise TooLarge(f"{len(kraus)} Kraus operators")
    lam, vecs = np.linalg.eigh((rho + rho.conj().T) / 2)
    keep = lam > 1e-15
    root = vecs[:, keep] * np.sqrt(lam[keep])
    return _exchange_entropy_from_images(kraus @ root)


def code_channel_exchange(pair: ConjugatePair, x, z, channel: PauliChannel) -> tuple[float, float]:
    """``(S_e, F_e)`` of recovery composed with ``channel`` on ``pi_Q`` for Q_xz.

    Only Kraus images of the code block are formed: ``pi_Q`` is supported
    there, so ``K_i V`` fixes ``W`` completely.
    """
    cb = css_basis(pair)
    _check_dim(cb.dim, MAX_KRAUS_DIM, "entropy-exchange space")
    x = np.asarray(x, dtype=np.int64)
    z = np.asarray(z, dtype=np.int64)
    v_block = cb.block(x, z)
    _, corrected = _recovery_parts(cb, x, z)
    scale = 1 / np.sqrt(cb.code_dim)
    images = []
    fid = 0.0
    for probs, g in _channel_images(cb, v_block, _ChannelAction(channel)):
        for p, cl in zip(probs, g.transpose(2, 0, 1, 3)):
            live = np.nonzero(np.linalg.norm(cl, axis=(1, 2)) > ATOL)[0]
            for r in live:
                img = np.sqrt(p) * scale * (corrected[r] @ cl[r])
                images.append(img)
                fid += abs(np.trace(v_block.conj().T @ img) * scale) ** 2
    if not images:
        return 0.0, 0.0
    return _exchange_entropy_from_images(np.stack(images)), float(fid)
