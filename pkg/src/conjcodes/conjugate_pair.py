"""Conjugate (CSS) code pairs, quotient codes and prime-field expansion."""

from __future__ import annotations

import functools
import json
import os
import warnings
from pathlib import Path

import numpy as np

from .errors import LengthMismatch, MismatchedField, NotConjugate, TooLarge
from .finite_field import Basis, FieldParams, dual_basis
from .linear_codes import (
    MAX_ENUM,
    LinearCode,
    is_subcode,
    matmul,
    read_code,
    vector_index,
    weight,
    write_matrix,
)


class QuotientCode:
    """The additive quotient ``C/B`` for ``B <= C``.

    Each coset is represented by its minimum-weight member, ties broken by
    the smaller row-major index; :attr:`representatives` lists them in
    index order.
    """

    def __init__(self, c: LinearCode, b: LinearCode) -> None:
        if not is_subcode(b, c):
            raise ValueError("quotient requires B <= C")
        self.c = c
        self.b = b
        self.field = c.field
        self.n = c.n

    @property
    def dimension(self) -> int:
        return self.c.k - self.b.k

    def __len__(self) -> int:
        return self.field.q**self.dimension

    def coset_key(self, v) -> np.ndarray:
        """Integer label of the B-coset of ``v``; equal labels mean equal cosets."""
        return vector_index(self.b.syndrome(v), self.field.q)

    @functools.cached_property
    def _transversal(self) -> tuple[np.ndarray, np.ndarray]:
        if self.c.size > MAX_ENUM:
            raise TooLarge(f"C has {self.field.q}^{self.c.k} words")
        words = self.c.codewords()
        order = np.lexsort((vector_index(words, self.field.q), weight(words)))
        words = words[order]
        keys = self.coset_key(words)
        _, first = np.unique(keys, return_index=True)
        reps = words[first]
        reps = reps[np.argsort(vector_index(reps, self.field.q))]
        rep_keys = self.coset_key(reps)
        sort = np.argsort(rep_keys)
        reps.flags.writeable = False
        return reps, (rep_keys[sort], sort)

    @property
    def representatives(self) -> np.ndarray:
        return self._transversal[0]

    def index_of(self, v) -> np.ndarray:
        """Position in :attr:`representatives` of the coset containing ``v`` (must lie in C)."""
        keys_sorted, perm = self._transversal[1]
        keys = self.coset_key(v)
        pos = np.searchsorted(keys_sorted, keys)
        pos = np.minimum(pos, len(keys_sorted) - 1)
        if np.any(keys_sorted[pos] != keys):
            raise ValueError("word does not lie in C")
        return perm[pos]

    def canonical(self, v) -> np.ndarray:
        return self.representatives[self.index_of(v)]


def quotient_correctable(qc: QuotientCode, errors) -> bool:
    """Whether ``C/B`` corrects every error pattern in ``J + B``.

    Two patterns are confusable exactly when their difference lies in
    ``C`` but not in ``B``; adding B to J changes neither membership, so
    the test runs over J alone.
    """
    j = np.asarray(errors, dtype=np.int64).reshape(-1, qc.n)
    if len(j) > MAX_ENUM:
        raise TooLarge(f"{len(j)} error patterns")
    q = qc.field.q
    c_keys = vector_index(qc.c.syndrome(j), q)
    b_keys = vector_index(qc.b.syndrome(j), q)
    pairs = np.unique(np.stack([c_keys, b_keys], axis=1), axis=0)
    return len(pairs) == len(np.unique(c_keys))


class ConjugatePair:
    """A validated pair ``(C1, C2)`` with ``C2^perp <= C1``.

    Attributes
    ----------
    c1, c2 : LinearCode
        The ``[n, k1]`` and ``[n, k2]`` codes.
    c1_dual, c2_dual : LinearCode
        Their duals, cached.
    k : int
        Message dimension ``k1 + k2 - n``.
    """

    def __init__(self, c1: LinearCode, c2: LinearCode, name: str | None = None) -> None:
        if c1.field != c2.field:
            raise MismatchedField(f"GF({c1.field}) vs GF({c2.field})")
        if c1.n != c2.n:
            raise LengthMismatch(f"code lengths {c1.n} and {c2.n} differ")
        if not is_subcode(c2.dual(), c1):
            raise NotConjugate("dual of C2 is not contained in C1")
        self.c1 = c1
        self.c2 = c2
        self.c1_dual = c1.dual()
        self.c2_dual = c2.dual()
        self.field = c1.field
        self.n = c1.n
        self.k1 = c1.k
        self.k2 = c2.k
        self.k = c1.k + c2.k - c1.n
        self.name = name
        if self.k == 0:
            warnings.warn("conjugate pair with k = 0 carries no message", stacklevel=2)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, ConjugatePair) and (self.c1, self.c2) == (other.c1, other.c2)

    def __hash__(self) -> int:
        return hash((self.c1, self.c2))

    def __repr__(self) -> str:
        label = f"{self.name}: " if self.name else ""
        return f"ConjugatePair({label}[[{self.n},{self.k}]] over GF({self.field.q}))"

    @functools.cached_property
    def message_space(self) -> QuotientCode:
        return QuotientCode(self.c1, self.c2_dual)

    @functools.cached_property
    def phase_space(self) -> QuotientCode:
        """The conjugate quotient ``C2 / C1^perp``."""
        return QuotientCode(self.c2, self.c1_dual)

    def swapped(self) -> ConjugatePair:
        return ConjugatePair(self.c2, self.c1)

    def summary(self) -> dict:
        info = {"field": str(self.field), "n": self.n, "k1": self.k1, "k2": self.k2, "k": self.k}
        if self.c1.size <= MAX_ENUM and self.c2.size <= MAX_ENUM:
            info["d1"] = self.c1.min_distance()
            info["d2"] = self.c2.min_distance()
        info["warnings"] = ["k = 0: the pair carries no message"] if self.k == 0 else []
        return info


def make_pair(c1: LinearCode, c2: LinearCode, name: str | None = None) -> ConjugatePair:
    return ConjugatePair(c1, c2, name)


def message_representatives(pair: ConjugatePair) -> np.ndarray:
    if pair.field.q**pair.k > MAX_ENUM:
        raise TooLarge(f"{pair.field.q}^{pair.k} messages")
    return pair.message_space.representatives


def self_orthogonality_check(c: LinearCode) -> bool:
    if c.k == 0:
        return True
    return not np.any(matmul(c.gen, c.gen.T, c.field))


# expansion over the prime subfield


def expand_vectors(vectors, basis: Basis) -> np.ndarray:
    """Replace each coordinate by its ``m`` coordinates in ``basis``."""
    coords = basis.expand_array(vectors)
    return coords.reshape(coords.shape[:-2] + (coords.shape[-2] * coords.shape[-1],))


def expand_code(c: LinearCode, basis: Basis) -> LinearCode:
    """The image of ``c`` in F_p^(nm) as an F_p-linear code of dimension ``k m``."""
    F = c.field
    prime = FieldParams(F.p)
    scalars = np.array([int(e) for e in F.polynomial_basis().elements], dtype=np.int64)
    gens = F.mul(scalars[None, :, None], c.gen[:, None, :]).reshape(-1, c.n)
    return LinearCode(expand_vectors(gens, basis), prime, c.n * F.m)


def expand_pair(pair: ConjugatePair, basis: Basis | None = None) -> ConjugatePair:
    """Expand a pair over GF(p^m) to one over GF(p).

    C1 is expanded in ``basis`` (the polynomial basis by default) and C2 in
    its trace dual, so ``Tr(x y)`` becomes the ordinary dot product.
    """
    F = pair.field
    basis = basis or F.polynomial_basis()
    e1 = expand_code(pair.c1, basis)
    e2 = expand_code(pair.c2, dual_basis(basis))
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        name = f"{pair.name}-expanded" if pair.name else None
        return make_pair(e1, e2, name)


# pair bundles: two matrix files plus a JSON manifest


def load_pair(manifest: str | os.PathLike) -> ConjugatePair:
    path = Path(manifest)
    meta = json.loads(path.read_text())
    c1 = read_code(path.parent / meta["c1"])
    c2 = read_code(path.parent / meta["c2"])
    field = FieldParams.parse(meta["field"])
    if c1.field != field or c2.field != field:
        raise MismatchedField(f"manifest says GF({meta['field']}) but matrices disagree")
    if c1.n != meta["n"] or c2.n != meta["n"]:
        raise LengthMismatch(f"manifest says n={meta['n']}")
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        return make_pair(c1, c2, meta.get("name"))


def save_pair(pair: ConjugatePair, directory: str | os.PathLike, name: str) -> Path:
    out = Path(directory)
    out.mkdir(parents=True, exist_ok=True)
    write_matrix(out / f"{name}_c1.txt", pair.field, pair.c1.gen)
    write_matrix(out / f"{name}_c2.txt", pair.field, pair.c2.gen)
    manifest = {"name": name, "field": str(pair.field), "n": pair.n,
                "c1": f"{name}_c1.txt", "c2": f"{name}_c2.txt"}
    target = out / f"{name}.json"
    target.write_text(json.dumps(manifest, indent=2) + "\n")
    return target
