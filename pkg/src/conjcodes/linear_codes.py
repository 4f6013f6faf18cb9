"""Linear codes over GF(q): RREF, duals, membership and coset-leader decoding.

Vectors are 1-D ``int64`` arrays of integer-encoded field elements; batches
are stacked along leading axes.  A vector's index is its row-major encoding
``sum(v[i] * q**(n-1-i))``, which doubles as the lexicographic order used
for every tie-break in this package.
"""

from __future__ import annotations

import functools
import itertools
import math
import os
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import LengthMismatch, MismatchedField, TooLarge
from .finite_field import FieldParams

MAX_TABLE = 2**20
MAX_ENUM = 2**20


def _as_int(a) -> np.ndarray:
    return np.asarray(a, dtype=np.int64)


def weight(v) -> np.ndarray:
    """Hamming weight along the last axis."""
    return np.count_nonzero(_as_int(v), axis=-1)


def vector_index(v, q: int) -> np.ndarray:
    v = _as_int(v)
    n = v.shape[-1]
    return v @ (q ** np.arange(n - 1, -1, -1, dtype=np.int64))


def index_vector(idx, n: int, q: int) -> np.ndarray:
    idx = _as_int(idx)
    return (idx[..., None] // (q ** np.arange(n - 1, -1, -1, dtype=np.int64))) % q


def all_vectors(n: int, q: int) -> np.ndarray:
    """Every vector of F_q^n, shape ``(q**n, n)``, in index order."""
    if q**n > MAX_ENUM:
        raise TooLarge(f"cannot enumerate {q}^{n} vectors")
    return index_vector(np.arange(q**n, dtype=np.int64), n, q)


def matmul(a, b, field: FieldParams) -> np.ndarray:
    """Matrix product over the field; ``a`` may carry leading batch axes."""
    a = _as_int(a)
    b = _as_int(b)
    if a.shape[-1] != b.shape[0]:
        raise LengthMismatch(f"inner dimensions {a.shape[-1]} and {b.shape[0]} differ")
    if field.is_prime_field:
        return (a @ b) % field.p
    out = np.zeros(a.shape[:-1] + b.shape[1:], dtype=np.int64)
    for j in range(b.shape[0]):
        out = field.add(out, field.mul(a[..., j, None], b[j]))
    return out


def dot(x, y, field: FieldParams) -> int:
    x = _as_int(x)
    y = _as_int(y)
    if x.shape != y.shape:
        raise LengthMismatch(f"lengths {x.shape} and {y.shape} differ")
    return int(matmul(x, y[:, None], field)[0])


def rref(mat, field: FieldParams) -> tuple[np.ndarray, int, tuple[int, ...]]:
    """Reduced row-echelon form.

    Returns the full-size reduced matrix (zero rows last), its rank and the
    pivot columns.
    """
    r = _as_int(mat).copy()
    if r.ndim != 2:
        raise ValueError("rref expects a 2-D matrix")
    rows, cols = r.shape
    pivots: list[int] = []
    row = 0
    for col in range(cols):
        if row == rows:
            break
        nz = np.nonzero(r[row:, col])[0]
        if nz.size == 0:
            continue
        piv = row + nz[0]
        r[[row, piv]] = r[[piv, row]]
        r[row] = field.mul(r[row], field.inv(r[row, col]))
        factors = r[:, col].copy()
        factors[row] = 0
        if np.any(factors):
            r = field.sub(r, field.mul(factors[:, None], r[row][None, :]))
        pivots.append(col)
        row += 1
    return r, row, tuple(pivots)


class LinearCode:
    """A k-dimensional subspace of F_q^n held as its canonical RREF generator.

    Two codes compare equal exactly when they are the same subspace.
    """

    def __init__(self, generators, field: FieldParams, n: int | None = None) -> None:
        g = _as_int(generators)
        if g.ndim == 1:
            g = g.reshape(1, -1) if g.size else g.reshape(0, n or 0)
        if n is None:
            n = g.shape[1]
        if g.shape[1] != n:
            raise LengthMismatch(f"generator rows have length {g.shape[1]}, expected {n}")
        if g.size and (g.min() < 0 or g.max() >= field.q):
            raise ValueError(f"entries must be encoded elements of GF({field.q})")
        red, rank, pivots = rref(g, field) if g.shape[0] else (g, 0, ())
        self.field = field
        self.n = n
        self.gen = red[:rank].copy()
        self.gen.flags.writeable = False
        self.k = rank
        self.pivots = pivots

    @classmethod
    def full(cls, n: int, field: FieldParams) -> LinearCode:
        return cls(np.eye(n, dtype=np.int64), field)

    @classmethod
    def zero(cls, n: int, field: FieldParams) -> LinearCode:
        return cls(np.zeros((0, n), dtype=np.int64), field, n)

    @classmethod
    def from_parity_check(cls, h, field: FieldParams) -> LinearCode:
        h = _as_int(h)
        return cls(h, field, h.shape[1]).dual()

    def _key(self) -> tuple:
        return (self.field, self.n, self.gen.tobytes())

    def __eq__(self, other: object) -> bool:
        return isinstance(other, LinearCode) and self._key() == other._key()

    def __hash__(self) -> int:
        return hash(self._key())

    def __repr__(self) -> str:
        return f"LinearCode([{self.n},{self.k}] over GF({self.field.q}))"

    @property
    def size(self) -> int:
        return self.field.q**self.k

    @functools.cached_property
    def _dual(self) -> LinearCode:
        F, n = self.field, self.n
        free = [c for c in range(n) if c not in self.pivots]
        basis = np.zeros((len(free), n), dtype=np.int64)
        for row, f in enumerate(free):
            basis[row, f] = 1
            for i, pc in enumerate(self.pivots):
                basis[row, pc] = F.neg(self.gen[i, f])
        return LinearCode(basis, F, n)

    def dual(self) -> LinearCode:
        return self._dual

    @property
    def parity_check(self) -> np.ndarray:
        """Rows span the dual; ``syndrome(v) = H v``."""
        return self._dual.gen

    def syndrome(self, v) -> np.ndarray:
        v = _as_int(v)
        if v.shape[-1] != self.n:
            raise LengthMismatch(f"vector length {v.shape[-1]} != {self.n}")
        return matmul(v, self.parity_check.T, self.field)

    def contains(self, v) -> np.ndarray | bool:
        s = self.syndrome(v)
        res = ~np.any(s, axis=-1)
        return bool(res) if res.ndim == 0 else res

    def __contains__(self, v) -> bool:
        return bool(self.contains(v))

    def encode(self, messages) -> np.ndarray:
        return matmul(messages, self.gen, self.field)

    def codewords(self) -> np.ndarray:
        """All codewords in index order of their message vectors."""
        if self.size > MAX_ENUM:
            raise TooLarge(f"code has {self.field.q}^{self.k} words")
        return self.encode(all_vectors(self.k, self.field.q))

    @functools.cached_property
    def _table(self) -> SyndromeTable:
        return build_syndrome_table(self)

    def syndrome_table(self) -> SyndromeTable:
        return self._table

    def min_distance(self) -> int:
        """Exhaustive minimum distance; ``n + 1`` for the zero code by convention."""
        if self.k == 0:
            return self.n + 1
        return int(weight(self.codewords()[1:]).min())


def dual(c: LinearCode) -> LinearCode:
    return c.dual()


def _check_compatible(b: LinearCode, c: LinearCode) -> None:
    if b.field != c.field:
        raise MismatchedField(f"GF({b.field}) vs GF({c.field})")
    if b.n != c.n:
        raise LengthMismatch(f"code lengths {b.n} and {c.n} differ")


def is_subcode(b: LinearCode, c: LinearCode) -> bool:
    _check_compatible(b, c)
    if b.k == 0:
        return True
    return bool(np.all(c.contains(b.gen)))


def code_sum(b: LinearCode, c: LinearCode) -> LinearCode:
    _check_compatible(b, c)
    return LinearCode(np.concatenate([b.gen, c.gen]), b.field, b.n)


@dataclass(frozen=True)
class SyndromeTable:
    """Minimum-weight coset leaders indexed by syndrome.

    ``leaders[i]`` is the leader of the coset whose syndrome has row-major
    index ``i``.
    """

    parity: np.ndarray
    leaders: np.ndarray
    field: FieldParams

    @property
    def n(self) -> int:
        return self.leaders.shape[1]

    def __len__(self) -> int:
        return self.leaders.shape[0]

    def syndrome(self, v) -> np.ndarray:
        return matmul(v, self.parity.T, self.field)

    def key(self, syndrome) -> np.ndarray:
        return vector_index(syndrome, self.field.q)

    def leader(self, syndrome) -> np.ndarray:
        return self.leaders[self.key(syndrome)]

    def leader_of(self, v) -> np.ndarray:
        """Leader of the coset containing ``v``."""
        return self.leader(self.syndrome(v))

    def is_leader(self, v) -> np.ndarray | bool:
        res = np.all(self.leader_of(v) == _as_int(v), axis=-1)
        return bool(res) if np.ndim(res) == 0 else res


def _weight_class(n: int, w: int, q: int) -> np.ndarray:
    """Every weight-``w`` vector of F_q^n, sorted by index."""
    if w == 0:
        return np.zeros((1, n), dtype=np.int64)
    pos = np.array(list(itertools.combinations(range(n), w)), dtype=np.int64)
    vals = index_vector(np.arange((q - 1) ** w), w, q - 1) + 1 if q > 2 else np.ones((1, w), np.int64)
    out = np.zeros((len(pos), len(vals), n), dtype=np.int64)
    rows = np.arange(len(pos))[:, None, None]
    cols = np.arange(len(vals))[None, :, None]
    out[rows, cols, pos[:, None, :]] = vals[None, :, :]
    out = out.reshape(-1, n)
    return out[np.argsort(vector_index(out, q), kind="stable")]


def build_syndrome_table(c: LinearCode) -> SyndromeTable:
    F, n, r = c.field, c.n, c.n - c.k
    count = F.q**r
    if count > MAX_TABLE:
        raise TooLarge(f"{F.q}^{r} syndromes exceed the table cap {MAX_TABLE}")
    h = c.parity_check
    leaders = np.zeros((count, n), dtype=np.int64)
    filled = np.zeros(count, dtype=bool)
    remaining = count
    for w in range(n + 1):
        if math.comb(n, w) * (F.q - 1) ** w > MAX_ENUM * 8:
            raise TooLarge(f"weight-{w} enumeration too large for n={n}")
        vecs = _weight_class(n, w, F.q)
        keys = vector_index(matmul(vecs, h.T, F), F.q) if r else np.zeros(len(vecs), np.int64)
        uniq, first = np.unique(keys, return_index=True)
        new = ~filled[uniq]
        leaders[uniq[new]] = vecs[first[new]]
        filled[uniq[new]] = True
        remaining -= int(new.sum())
        if remaining == 0:
            break
    leaders.flags.writeable = False
    return SyndromeTable(h, leaders, F)


def decode_coset(c: LinearCode, shift, received, table: SyndromeTable | None = None) -> np.ndarray:
    """Decode in the coset code ``shift + C``.

    Returns the word of ``shift + C`` nearest to ``received`` in the
    coset-leader sense: ``received - leader(syndrome(received - shift))``.
    """
    table = table or c.syndrome_table()
    F = c.field
    received = _as_int(received)
    err = table.leader_of(F.sub(received, shift))
    return F.sub(received, err)


# text matrix files: "p^m n k" header, then k rows of n encoded elements


def read_matrix(path: str | os.PathLike) -> tuple[FieldParams, np.ndarray]:
    tokens: list[str] = []
    for line in Path(path).read_text().splitlines():
        line = line.split("#", 1)[0]
        tokens.extend(line.split())
    if len(tokens) < 3:
        raise ValueError(f"{path}: missing 'q n k' header")
    field = FieldParams.parse(tokens[0])
    n, k = int(tokens[1]), int(tokens[2])
    body = [int(t) for t in tokens[3:]]
    if len(body) != n * k:
        raise ValueError(f"{path}: expected {n * k} entries, found {len(body)}")
    return field, np.array(body, dtype=np.int64).reshape(k, n)


def write_matrix(path: str | os.PathLike, field: FieldParams, mat) -> None:
    mat = _as_int(mat)
    lines = [f"{field} {mat.shape[1]} {mat.shape[0]}"]
    lines += [" ".join(str(int(v)) for v in row) for row in mat]
    Path(path).write_text("\n".join(lines) + "\n")


def read_code(path: str | os.PathLike) -> LinearCode:
    field, g = read_matrix(path)
    return LinearCode(g, field, g.shape[1])
