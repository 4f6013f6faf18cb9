"""The standard symplectic form on F_q^(2n) and the CSS lift of a pair.

A symplectic vector ``[u, w]`` is stored interleaved,
``(u_1, w_1, ..., u_n, w_n)``, matching the per-symbol pairing of the
Weyl labels in :mod:`conjcodes.quantum_sim`.
"""

from __future__ import annotations

import functools

import numpy as np

from .conjugate_pair import ConjugatePair
from .errors import LengthMismatch, TooLarge
from .finite_field import FieldParams
from .linear_codes import MAX_ENUM, LinearCode, all_vectors, is_subcode, vector_index


def interleave(u, w) -> np.ndarray:
    u = np.asarray(u, dtype=np.int64)
    w = np.asarray(w, dtype=np.int64)
    if u.shape != w.shape:
        raise LengthMismatch(f"X part {u.shape} and Z part {w.shape} differ")
    out = np.empty(u.shape[:-1] + (2 * u.shape[-1],), dtype=np.int64)
    out[..., 0::2] = u
    out[..., 1::2] = w
    return out


def split(v) -> tuple[np.ndarray, np.ndarray]:
    v = np.asarray(v, dtype=np.int64)
    if v.shape[-1] % 2:
        raise LengthMismatch("symplectic vectors have even length")
    return v[..., 0::2], v[..., 1::2]


def _twist(v, field: FieldParams) -> np.ndarray:
    """``[u, w] -> [w, -u]`` so that ``symp_form(a, b) = a . twist(b)``."""
    u, w = split(v)
    return interleave(w, field.neg(u))


def _untwist(v, field: FieldParams) -> np.ndarray:
    u, w = split(v)
    return interleave(field.neg(w), u)


def symp_form(a, b, field: FieldParams) -> np.ndarray | int:
    """``u . w' - w . u'``; broadcasts over leading axes."""
    a = np.asarray(a, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64)
    if a.shape[-1] != b.shape[-1]:
        raise LengthMismatch(f"lengths {a.shape[-1]} and {b.shape[-1]} differ")
    tb = _twist(b, field)
    if field.is_prime_field:
        res = np.sum(a * tb, axis=-1) % field.p
    else:
        prod = field.mul(a, tb)
        res = np.zeros(prod.shape[:-1], dtype=np.int64)
        for i in range(prod.shape[-1]):
            res = field.add(res, prod[..., i])
    return int(res) if np.ndim(res) == 0 else res


class SympCode:
    """A subspace L of F_q^(2n) together with its symplectic dual."""

    def __init__(self, space: LinearCode) -> None:
        if space.n % 2:
            raise LengthMismatch("symplectic codes live in even length")
        self.space = space
        self.field = space.field
        self.n = space.n // 2

    @classmethod
    def from_generators(cls, gens, field: FieldParams, n: int) -> SympCode:
        return cls(LinearCode(gens, field, 2 * n))

    @property
    def gen(self) -> np.ndarray:
        return self.space.gen

    @property
    def dim(self) -> int:
        return self.space.k

    def __eq__(self, other: object) -> bool:
        return isinstance(other, SympCode) and self.space == other.space

    def __hash__(self) -> int:
        return hash(self.space)

    def __repr__(self) -> str:
        return f"SympCode(n={self.n}, dim={self.dim}, GF({self.field.q}))"

    def contains(self, v):
        return self.space.contains(v)

    @functools.cached_property
    def dual(self) -> SympCode:
        # y is symplectic-orthogonal to L iff twist(y) lies in the Euclidean dual
        eu = self.space.dual()
        return SympCode(LinearCode(_untwist(eu.gen, self.field), self.field, self.space.n))

    @property
    def is_dual_containing(self) -> bool:
        return is_subcode(self.dual.space, self.space)

    def syndrome(self, v) -> np.ndarray:
        """Symplectic syndrome: pairings of ``v`` with a basis of the dual."""
        return symp_form(np.asarray(v)[..., None, :], self.dual.gen, self.field)


def symp_dual(code: SympCode) -> SympCode:
    return code.dual


def product_code(c1: LinearCode, c2: LinearCode) -> SympCode:
    """``{[u, w] : u in c1, w in c2}``."""
    n, F = c1.n, c1.field
    zeros1 = np.zeros((c1.k, n), dtype=np.int64)
    zeros2 = np.zeros((c2.k, n), dtype=np.int64)
    gens = np.concatenate([interleave(c1.gen, zeros1), interleave(zeros2, c2.gen)])
    return SympCode(LinearCode(gens, F, 2 * n))


def css_lift(pair: ConjugatePair) -> tuple[SympCode, SympCode]:
    """``L = C1 x C2`` and its symplectic dual ``C2^perp x C1^perp``."""
    lift = product_code(pair.c1, pair.c2)
    return lift, lift.dual


def error_set(gamma1, gamma2) -> np.ndarray:
    """Materialise ``K(G1, G2) = {[x, z] : x in G1, z in G2}`` as rows."""
    g1 = np.asarray(gamma1, dtype=np.int64)
    g2 = np.asarray(gamma2, dtype=np.int64)
    if len(g1) * len(g2) > MAX_ENUM:
        raise TooLarge(f"{len(g1)} x {len(g2)} error labels")
    x = np.repeat(g1, len(g2), axis=0)
    z = np.tile(g2, (len(g1), 1))
    return interleave(x, z)


class EnlargedErrorSet:
    """Membership predicate for ``K(G1 + C2^perp, G2 + C1^perp)``.

    Never materialised: ``x`` lies in ``G1 + C2^perp`` iff its
    C2^perp-coset matches that of some member of ``G1``.
    """

    def __init__(self, pair: ConjugatePair, gamma1, gamma2) -> None:
        self.pair = pair
        q = pair.field.q
        self._x_keys = np.unique(vector_index(pair.c2_dual.syndrome(np.asarray(gamma1)), q))
        self._z_keys = np.unique(vector_index(pair.c1_dual.syndrome(np.asarray(gamma2)), q))

    def x_contains(self, x) -> np.ndarray:
        keys = vector_index(self.pair.c2_dual.syndrome(x), self.pair.field.q)
        return np.isin(keys, self._x_keys)

    def z_contains(self, z) -> np.ndarray:
        keys = vector_index(self.pair.c1_dual.syndrome(z), self.pair.field.q)
        return np.isin(keys, self._z_keys)

    def contains(self, label) -> np.ndarray:
        x, z = split(label)
        return self.x_contains(x) & self.z_contains(z)

    def __contains__(self, label) -> bool:
        return bool(self.contains(label))

    def materialize(self) -> np.ndarray:
        pair = self.pair
        space = all_vectors(pair.n, pair.field.q)
        xs = space[self.x_contains(space)]
        zs = space[self.z_contains(space)]
        return error_set(xs, zs)


def enlarge(pair: ConjugatePair, gamma1, gamma2) -> EnlargedErrorSet:
    return EnlargedErrorSet(pair, gamma1, gamma2)


def leader_error_set(pair: ConjugatePair) -> EnlargedErrorSet:
    """The enlarged set built from the complete coset-leader tables of C1 and C2."""
    return EnlargedErrorSet(pair, pair.c1.syndrome_table().leaders,
                            pair.c2.syndrome_table().leaders)


def correctable_error_set(lift: SympCode, errors, stabilizer: SympCode | None = None) -> bool:
    """Classical correctability test behind the stabilizer recovery.

    True iff no two distinct labels differ by an element of ``L`` outside
    ``L^perp_sp``.  Two labels differ by an element of a subspace exactly
    when their syndromes against that subspace agree, so the check is one
    grouping pass.
    """
    stab = stabilizer or lift.dual
    e = np.asarray(errors, dtype=np.int64).reshape(-1, lift.space.n)
    if len(e) > MAX_ENUM:
        raise TooLarge(f"{len(e)} error labels")
    q = lift.field.q
    in_l = vector_index(lift.space.syndrome(e), q)
    in_stab = vector_index(stab.space.syndrome(e), q)
    classes = np.unique(np.stack([in_l, in_stab], axis=1), axis=0)
    return len(classes) == len(np.unique(in_l))
