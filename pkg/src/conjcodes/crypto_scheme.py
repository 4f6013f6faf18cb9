"""The conjugate-code cryptographic code: encryption, decoding and its bounds.

A message is a coset ``v + C2^perp`` of ``C1 / C2^perp``.  Alice picks a
shift ``x`` (known to Bob), a uniformly random ``w`` in ``C2^perp`` and
sends ``w + v + x``; Bob decodes in the coset code ``x + C1`` and reduces
modulo ``C2^perp``.  Entropies are in bits throughout; rates given in
log_q units are converted with a factor ``log2(q)``.
"""

from __future__ import annotations

import csv
import json
import math
import os
from dataclasses import asdict, dataclass, field
from statistics import NormalDist
from typing import Sequence

import numpy as np

from . import quantum_sim
from .conjugate_pair import ConjugatePair, message_representatives
from .errors import DomainError, EqualityViolation, InvalidMessage, TooLarge
from .finite_field import FieldParams
from .linear_codes import MAX_ENUM, SyndromeTable, all_vectors, decode_coset
from .quantum_sim import PauliChannel
from .symplectic import EnlargedErrorSet, leader_error_set

TOL = 1e-9
CHUNK_TRIALS = 1 << 16


@dataclass(frozen=True)
class ChannelSpec:
    """An i.i.d. Weyl channel described by its per-symbol label distribution.

    ``kind`` is one of ``noiseless``, ``depolarizing`` (params ``(p,)``),
    ``independent-xz`` (params ``(p_x, p_z)``) or ``custom`` (explicit
    ``table``).  Every kind is a Weyl mixture and hence Weyl-covariant.
    """

    kind: str
    params: tuple[float, ...] = ()
    table: tuple[tuple[float, ...], ...] | None = None

    def __post_init__(self) -> None:
        if self.kind not in ("noiseless", "depolarizing", "independent-xz", "custom"):
            raise ValueError(f"unknown channel kind {self.kind!r}")
        if any(not 0 <= p <= 1 for p in self.params):
            raise DomainError(f"channel parameters {self.params} outside [0, 1]")
        if self.kind == "custom":
            t = np.asarray(self.table, dtype=float)
            if t.ndim != 2 or t.shape[0] != t.shape[1] or np.any(t < 0) or abs(t.sum() - 1) > 1e-12:
                raise DomainError("custom table must be a square probability matrix")

    @classmethod
    def depolarizing(cls, p: float) -> ChannelSpec:
        return cls("depolarizing", (float(p),))

    @classmethod
    def independent_xz(cls, p_x: float, p_z: float) -> ChannelSpec:
        return cls("independent-xz", (float(p_x), float(p_z)))

    @classmethod
    def custom(cls, table) -> ChannelSpec:
        return cls("custom", (), tuple(tuple(float(v) for v in row) for row in table))

    @classmethod
    def noiseless(cls) -> ChannelSpec:
        return cls("noiseless")

    @classmethod
    def parse(cls, text: str) -> ChannelSpec:
        """``depolarizing:0.05``, ``independent-xz:0.01,0.02``, ``noiseless``."""
        kind, _, rest = text.partition(":")
        kind = kind.strip().lower()
        values = tuple(float(v) for v in rest.split(",") if v.strip())
        if kind in ("noiseless", "identity"):
            return cls.noiseless()
        if kind == "depolarizing" and len(values) == 1:
            return cls.depolarizing(*values)
        if kind in ("independent-xz", "xz") and len(values) == 2:
            return cls.independent_xz(*values)
        raise ValueError(f"cannot parse channel {text!r}")

    def describe(self) -> str:
        if self.kind == "custom":
            return "custom"
        if not self.params:
            return self.kind
        return f"{self.kind}:{','.join(repr(p) for p in self.params)}"

    def symbol_table(self, q: int) -> np.ndarray:
        """``table[u, w]``: probability that one symbol suffers ``X^u Z^w``."""
        t = np.zeros((q, q))
        if self.kind == "noiseless":
            t[0, 0] = 1.0
        elif self.kind == "depolarizing":
            (p,) = self.params
            t[:] = p / (q * q - 1)
            t[0, 0] = 1 - p
        elif self.kind == "independent-xz":
            px, pz = self.params
            mx = np.full(q, px / (q - 1))
            mx[0] = 1 - px
            mz = np.full(q, pz / (q - 1))
            mz[0] = 1 - pz
            t = np.outer(mx, mz)
        else:
            t = np.asarray(self.table, dtype=float)
            if t.shape != (q, q):
                raise DomainError(f"custom table is {t.shape}, field needs {q}x{q}")
        return t

    def x_marginal(self, q: int) -> np.ndarray:
        return self.symbol_table(q).sum(axis=1)

    def z_marginal(self, q: int) -> np.ndarray:
        return self.symbol_table(q).sum(axis=0)

    def pauli_channel(self, n: int, field: FieldParams) -> PauliChannel:
        return PauliChannel.iid(self.symbol_table(field.q), n, field)


@dataclass
class SchemeInstance:
    """A conjugate pair with complete leader tables and a shift distribution.

    ``x_probs[i]`` is the probability of shift ``x_reps[i]`` (a C1 coset
    leader).  The default concentrates on the zero shift.
    """

    pair: ConjugatePair
    t1: SyndromeTable
    t2: SyndromeTable
    x_reps: np.ndarray
    x_probs: np.ndarray
    seed: int = 0

    @classmethod
    def build(cls, pair: ConjugatePair, x_dist: str = "point", seed: int = 0) -> SchemeInstance:
        t1 = pair.c1.syndrome_table()
        t2 = pair.c2.syndrome_table()
        reps = t1.leaders
        if x_dist == "point":
            probs = np.zeros(len(reps))
            probs[0] = 1.0  # leader of the zero syndrome is the zero word
        elif x_dist == "uniform":
            probs = np.full(len(reps), 1 / len(reps))
        else:
            raise ValueError(f"unknown shift distribution {x_dist!r}")
        return cls(pair, t1, t2, reps, probs, seed)

    @property
    def x_dist_name(self) -> str:
        if np.count_nonzero(self.x_probs) == 1 and self.x_probs[0] == 1:
            return "point"
        if np.allclose(self.x_probs, self.x_probs[0]):
            return "uniform"
        return "custom"

    @property
    def messages(self) -> np.ndarray:
        return message_representatives(self.pair)

    @property
    def enlarged(self) -> EnlargedErrorSet:
        return leader_error_set(self.pair)

    def rng(self) -> np.random.Generator:
        return np.random.Generator(np.random.Philox(self.seed))


def _sample_dual_words(s: SchemeInstance, rng: np.random.Generator, count: int) -> np.ndarray:
    g = s.pair.c2_dual.gen
    F = s.pair.field
    if len(g) == 0:
        return np.zeros((count, s.pair.n), dtype=np.int64)
    coeffs = rng.integers(0, F.q, size=(count, len(g)))
    return s.pair.c2_dual.encode(coeffs)


def encrypt_many(s: SchemeInstance, vs, rng: np.random.Generator) -> tuple[np.ndarray, np.ndarray]:
    """Vectorised :func:`encrypt` for a batch of message representatives."""
    vs = np.asarray(vs, dtype=np.int64).reshape(-1, s.pair.n)
    F = s.pair.field
    xs = s.x_reps[rng.choice(len(s.x_reps), size=len(vs), p=s.x_probs)]
    ws = _sample_dual_words(s, rng, len(vs))
    return xs, F.add(F.add(ws, vs), xs)


def encrypt(s: SchemeInstance, v, rng: np.random.Generator) -> tuple[np.ndarray, np.ndarray]:
    """Send message ``v`` as ``w + v + x`` with ``w`` uniform on C2^perp.

    Returns ``(x, transmitted)``.
    """
    v = np.asarray(v, dtype=np.int64)
    if not np.any(np.all(s.messages == v, axis=1)):
        raise InvalidMessage(f"{list(v)} is not a message representative")
    xs, sent = encrypt_many(s, v[None, :], rng)
    return xs[0], sent[0]


def decrypt(s: SchemeInstance, x, received) -> np.ndarray:
    """Decode in ``x + C1``, remove ``x`` and reduce modulo C2^perp."""
    F = s.pair.field
    word = decode_coset(s.pair.c1, x, received, s.t1)
    return s.pair.message_space.canonical(F.sub(word, x))


def _pattern_probs(marginal: np.ndarray, n: int, q: int) -> tuple[np.ndarray, np.ndarray]:
    if q**n > MAX_ENUM:
        raise TooLarge(f"{q}^{n} error patterns")
    patterns = all_vectors(n, q)
    return patterns, np.prod(marginal[patterns], axis=1)


def error_probabilities(s: SchemeInstance, ch: ChannelSpec, trials: int | None = None,
                        rng: np.random.Generator | None = None) -> tuple[float, float]:
    """``(Pr{xi not in G1'}, Pr{zeta not in G2'})`` for the X and Z parts.

    Exact by enumeration of the ``q^n`` patterns of each marginal; when
    that is too large and ``trials`` is given, a Monte Carlo estimate.
    """
    pair = s.pair
    n, q = pair.n, pair.field.q
    k_set = s.enlarged
    try:
        xi_pat, xi_p = _pattern_probs(ch.x_marginal(q), n, q)
        ze_pat, ze_p = _pattern_probs(ch.z_marginal(q), n, q)
    except TooLarge:
        if not trials:
            raise
        rng = rng or s.rng()
        xi = rng.choice(q, size=(trials, n), p=ch.x_marginal(q))
        ze = rng.choice(q, size=(trials, n), p=ch.z_marginal(q))
        return (float(np.mean(~k_set.x_contains(xi))), float(np.mean(~k_set.z_contains(ze))))
    p_xi = float(xi_p[~k_set.x_contains(xi_pat)].sum())
    p_ze = float(ze_p[~k_set.z_contains(ze_pat)].sum())
    return p_xi, p_ze


def k_complement_probability(s: SchemeInstance, ch: ChannelSpec | PauliChannel) -> float:
    """``P_A(K(G1', G2')^c)`` by enumerating every joint label."""
    pc = ch if isinstance(ch, PauliChannel) else ch.pauli_channel(s.pair.n, s.pair.field)
    inside = s.enlarged.contains(pc.labels)
    return float(pc.probs[~inside].sum())


@dataclass(frozen=True)
class FidelityAccounting:
    fidelity_gap: float
    p_k_complement: float
    split_bound: float
    p_xi_out: float
    p_zeta_out: float


def fidelity_accounting(s: SchemeInstance, ch: ChannelSpec) -> FidelityAccounting:
    """Exact ``1 - E F`` from the simulator next to its classical counterparts.

    The average runs uniformly over all syndromes ``(x, z)``.  With complete
    leader tables the gap must equal ``P_A(K'^c)``; both must sit below
    ``Pr{xi not in G1'} + Pr{zeta not in G2'}``.
    """
    pair = s.pair
    quantum_sim._check_dim(pair.field.q**pair.n, quantum_sim.MAX_DENSITY_DIM, "fidelity run")
    pc = ch.pauli_channel(pair.n, pair.field)
    gap = 1.0 - quantum_sim.code_fidelity(pair, pc)
    pk = k_complement_probability(s, pc)
    p_xi, p_ze = error_probabilities(s, ch)
    split = p_xi + p_ze
    if abs(gap - pk) > TOL:
        raise EqualityViolation(f"1 - EF = {gap!r} but P_A(K'^c) = {pk!r}")
    if pk > split + TOL or gap > split + TOL:
        raise EqualityViolation(f"split bound {split!r} violated")
    return FidelityAccounting(gap, pk, split, p_xi, p_ze)


# entropy bounds


def binary_entropy(p: float) -> float:
    if not 0 <= p <= 1:
        raise DomainError(f"probability {p} outside [0, 1]")
    if p in (0.0, 1.0):
        return 0.0
    return -p * math.log2(p) - (1 - p) * math.log2(1 - p)


@dataclass(frozen=True)
class LeakageBound:
    """``bits`` is the Fano bound; ``bits_loose`` swaps ``h(t)`` for ``-2 t log2 t``.

    ``bits_loose`` is None when ``t = 1 - F`` exceeds 1/2, where that
    overestimate no longer holds.
    """

    bits: float
    bits_loose: float | None


def leakage_bound(fidelity: float, n: int, rate: float, q: int) -> LeakageBound:
    """``h(F) + (1 - F) 2 n R log2(q)`` bits with ``R`` in log_q units."""
    if not 0 <= fidelity <= 1:
        raise DomainError(f"fidelity {fidelity} outside [0, 1]")
    if n < 1 or rate < 0 or q < 2:
        raise DomainError("need n >= 1, rate >= 0 and q >= 2")
    t = 1 - fidelity
    rate_term = t * 2 * n * rate * math.log2(q)
    bits = binary_entropy(fidelity) + rate_term
    loose = None
    if t <= 0.5:
        loose = (-2 * t * math.log2(t) if t > 0 else 0.0) + rate_term
    return LeakageBound(bits, loose)


@dataclass(frozen=True)
class ExchangeReport:
    entropy_exchange: float
    fidelity: float
    fano_bound: float


def entropy_exchange_leakage(s: SchemeInstance, ch: ChannelSpec | PauliChannel,
                             x=None, z=None) -> ExchangeReport:
    """Entropy exchange of recovery after ``ch`` on the block Q_xz, with the Fano check."""
    pair = s.pair
    n = pair.n
    x = np.zeros(n, dtype=np.int64) if x is None else np.asarray(x, dtype=np.int64)
    z = np.zeros(n, dtype=np.int64) if z is None else np.asarray(z, dtype=np.int64)
    pc = ch if isinstance(ch, PauliChannel) else ch.pauli_channel(n, pair.field)
    s_e, fid = quantum_sim.code_channel_exchange(pair, x, z, pc)
    fid = min(max(fid, 0.0), 1.0)
    bound = leakage_bound(fid, n, pair.k / n, pair.field.q).bits
    if s_e > bound + TOL:
        raise EqualityViolation(f"entropy exchange {s_e!r} exceeds Fano bound {bound!r}")
    return ExchangeReport(s_e, fid, bound)


# Monte Carlo


def wilson_interval(errors: int, trials: int, confidence: float = 0.95) -> tuple[float, float]:
    z = NormalDist().inv_cdf(0.5 + confidence / 2)
    phat = errors / trials
    denom = 1 + z * z / trials
    centre = (phat + z * z / (2 * trials)) / denom
    half = z / denom * math.sqrt(phat * (1 - phat) / trials + z * z / (4 * trials * trials))
    lo = 0.0 if errors == 0 else max(0.0, centre - half)
    hi = 1.0 if errors == trials else min(1.0, centre + half)
    return lo, hi


@dataclass
class SimulationReport:
    n: int
    k: int
    q: int
    trials: int
    seed: int
    errors: int
    error_rate: float
    ci_low: float
    ci_high: float
    p_xi_out: float | None
    p_zeta_out: float | None
    fidelity_gap: float | None
    leakage_bound_bits: float | None
    config: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return asdict(self)

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2) + "\n"


def _run_chunk(s: SchemeInstance, marginal: np.ndarray, count: int,
               seed_seq: np.random.SeedSequence) -> int:
    rng = np.random.Generator(np.random.Philox(seed_seq))
    pair = s.pair
    F = pair.field
    msgs = s.messages
    vi = rng.integers(0, len(msgs), size=count)
    xs, sent = encrypt_many(s, msgs[vi], rng)
    xi = rng.choice(F.q, size=(count, pair.n), p=marginal)
    got = decrypt(s, xs, F.add(sent, xi))
    return int(np.count_nonzero(np.any(got != msgs[vi], axis=1)))


def simulate(s: SchemeInstance, ch: ChannelSpec, trials: int, seed: int | None = None,
             quantum_fidelity: bool = False, workers: int = 1) -> SimulationReport:
    """Monte Carlo of encrypt -> X-part noise -> decrypt.

    Trials are split into fixed chunks, each driven by its own Philox
    stream spawned from ``seed``, so the outcome does not depend on
    ``workers``.  The fidelity gap is ``P_A(K'^c)`` (equal to ``1 - EF``
    for complete leader tables) unless ``quantum_fidelity`` asks for the
    simulator value.
    """
    if trials < 1:
        raise DomainError("trials must be at least 1")
    seed = s.seed if seed is None else seed
    pair = s.pair
    q, n = pair.field.q, pair.n
    marginal = ch.x_marginal(q)
    counts = [min(CHUNK_TRIALS, trials - i) for i in range(0, trials, CHUNK_TRIALS)]
    seqs = np.random.SeedSequence(seed).spawn(len(counts))
    if workers > 1:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(max_workers=workers) as pool:
            errors = sum(pool.map(_run_chunk, [s] * len(counts), [marginal] * len(counts),
                                  counts, seqs))
    else:
        errors = sum(_run_chunk(s, marginal, c, ss) for c, ss in zip(counts, seqs))
    lo, hi = wilson_interval(errors, trials)

    p_xi = p_ze = gap = leak = None
    try:
        p_xi, p_ze = error_probabilities(s, ch)
        if quantum_fidelity:
            gap = fidelity_accounting(s, ch).fidelity_gap
        else:
            gap = k_complement_probability(s, ch)
        leak = leakage_bound(min(1.0, max(0.0, 1 - gap)), n, pair.k / n, q).bits
    except TooLarge:
        pass
    config = {"pair": pair.name, "field": str(pair.field), "channel": ch.describe(),
              "x_dist": s.x_dist_name, "chunk_trials": CHUNK_TRIALS}
    return SimulationReport(n, pair.k, q, trials, seed, errors, errors / trials, lo, hi,
                            p_xi, p_ze, gap, leak, config)


SWEEP_FIELDS = ("n", "k", "q", "trials", "seed", "error_rate", "ci_low", "ci_high",
                "p_xi_out", "p_zeta_out", "fidelity_gap", "leakage_bound_bits")


def write_sweep_csv(reports: Sequence[SimulationReport], path: str | os.PathLike,
                    extra: Sequence[dict] | None = None) -> None:
    """One CSV row per report; ``extra`` adds per-row columns such as the sweep parameter."""
    extra = extra or [{} for _ in reports]
    keys = list(extra[0]) if extra else []
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(keys + list(SWEEP_FIELDS))
        for rep, ex in zip(reports, extra):
            d = rep.to_dict()
            writer.writerow([ex[k] for k in keys] + [d[f] for f in SWEEP_FIELDS])
