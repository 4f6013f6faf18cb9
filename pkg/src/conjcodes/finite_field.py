"""Arithmetic in GF(p^m) with trace and trace-dual bases.

Elements are encoded as integers ``sum(coeffs[i] * p**i)`` over the
polynomial basis ``1, a, ..., a^(m-1)`` where ``a`` is a root of the field
modulus.  The vectorised methods on :class:`FieldParams` work on integer
arrays in that encoding; :class:`FieldElement` is the scalar convenience
wrapper.
"""

from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import DivisionByZero, MismatchedField, SingularBasis, TooLarge

MAX_ORDER = 2**16


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    return all(p % d for d in range(2, int(p**0.5) + 1))


def _poly_trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mod(a: Sequence[int], mod: Sequence[int], p: int) -> list[int]:
    """Remainder of ``a`` modulo ``mod`` over F_p (ascending coefficients)."""
    r = _poly_trim([c % p for c in a])
    mod = _poly_trim([c % p for c in mod])
    lead_inv = pow(mod[-1], p - 2, p) if p > 2 else 1
    while len(r) >= len(mod):
        shift = len(r) - len(mod)
        c = (r[-1] * lead_inv) % p
        for i, mc in enumerate(mod):
            r[shift + i] = (r[shift + i] - c * mc) % p
        _poly_trim(r)
    return r


def _poly_mulmod(a: Sequence[int], b: Sequence[int], mod: Sequence[int], p: int) -> list[int]:
    out = [0] * (len(a) + len(b) - 1) if a and b else []
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return _poly_mod(out, mod, p)


def is_irreducible(poly: Sequence[int], p: int) -> bool:
    """Trial division by every monic polynomial of degree <= deg/2."""
    poly = _poly_trim([c % p for c in poly])
    deg = len(poly) - 1
    if deg < 1:
        return False
    for d in range(1, deg // 2 + 1):
        for low in itertools.product(range(p), repeat=d):
            if not _poly_mod(poly, list(low) + [1], p):
                return False
    return True


def default_modulus(p: int, m: int) -> tuple[int, ...]:
    """Lexicographically smallest monic irreducible of degree ``m``, constant term first."""
    if m == 1:
        return (0, 1)
    for low in itertools.product(range(p), repeat=m):
        cand = list(low) + [1]
        if is_irreducible(cand, p):
            return tuple(cand)
    raise AssertionError("an irreducible polynomial of every degree exists")


class FieldParams:
    """The field GF(p^m) together with lookup tables for its arithmetic.

    Parameters
    ----------
    p : int
        Prime characteristic.
    m : int
        Extension degree, at least 1.
    modulus : sequence of int, optional
        Monic irreducible polynomial of degree ``m`` in ascending
        coefficient order.  Defaults to :func:`default_modulus`.
    """

    def __init__(self, p: int, m: int = 1, modulus: Sequence[int] | None = None) -> None:
        if not is_prime(p):
            raise ValueError(f"characteristic {p} is not prime")
        if m < 1:
            raise ValueError("extension degree must be at least 1")
        if p**m > MAX_ORDER:
            raise TooLarge(f"field order {p}^{m} exceeds {MAX_ORDER}")
        if modulus is None:
            modulus = default_modulus(p, m)
        modulus = tuple(int(c) % p for c in modulus)
        if len(modulus) != m + 1 or modulus[-1] != 1:
            raise ValueError(f"modulus must be monic of degree {m}")
        if not is_irreducible(modulus, p):
            raise ValueError(f"modulus {modulus} is reducible over F_{p}")
        self.p = p
        self.m = m
        self.q = p**m
        self.modulus = modulus
        self._pw = p ** np.arange(m, dtype=np.int64)
        self._digits = (np.arange(self.q, dtype=np.int64)[:, None] // self._pw) % p
        self._digits.flags.writeable = False
        self._build_log_tables()

    def _build_log_tables(self) -> None:
        q, p = self.q, self.p

        def to_poly(v: int) -> list[int]:
            return [(v // p**i) % p for i in range(self.m)]

        def to_int(c: Sequence[int]) -> int:
            return sum(int(ci) * p**i for i, ci in enumerate(c))

        exp = np.zeros(q, dtype=np.int64)
        for g in range(1, q):
            exp[0] = 1
            cur = [1]
            g_poly = to_poly(g)
            seen = 1
            for i in range(1, q - 1):
                cur = _poly_mulmod(cur, g_poly, self.modulus, p)
                v = to_int(cur)
                if v == 1:
                    break
                exp[i] = v
                seen += 1
            if seen == q - 1:
                break
        else:  # pragma: no cover - q == 1 impossible
            raise AssertionError
        if q == 2:
            exp[0] = 1
        self._exp = np.concatenate([exp[: q - 1], exp[: q - 1]])
        log = np.zeros(q, dtype=np.int64)
        log[self._exp[: q - 1]] = np.arange(q - 1)
        self._log = log
        self._exp.flags.writeable = False
        self._log.flags.writeable = False

    # identity

    def _key(self) -> tuple:
        return (self.p, self.m, self.modulus)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, FieldParams) and self._key() == other._key()

    def __hash__(self) -> int:
        return hash(self._key())

    def __repr__(self) -> str:
        return f"FieldParams(p={self.p}, m={self.m}, modulus={self.modulus})"

    def __str__(self) -> str:
        return f"{self.p}^{self.m}"

    @classmethod
    @functools.lru_cache(maxsize=None)
    def parse(cls, text: str) -> FieldParams:
        """Build a field from ``"p^m"`` (or a bare prime ``"p"``)."""
        text = text.strip()
        if "^" in text:
            p_s, m_s = text.split("^", 1)
            return cls(int(p_s), int(m_s))
        return cls(int(text))

    @property
    def is_prime_field(self) -> bool:
        return self.m == 1

    # vectorised arithmetic on integer encodings

    def digits(self, a) -> np.ndarray:
        """Polynomial-basis coefficients, shape ``a.shape + (m,)``."""
        return self._digits[np.asarray(a, dtype=np.int64)]

    def from_digits(self, d) -> np.ndarray:
        return (np.asarray(d, dtype=np.int64) % self.p) @ self._pw

    def add(self, a, b) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        if self.m == 1:
            return (a + b) % self.p
        if self.p == 2:
            return a ^ b
        return self.from_digits(self._digits[a] + self._digits[b])

    def neg(self, a) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        if self.p == 2:
            return a.copy()
        if self.m == 1:
            return (-a) % self.p
        return self.from_digits(-self._digits[a])

    def sub(self, a, b) -> np.ndarray:
        return self.add(a, self.neg(b))

    def mul(self, a, b) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        if self.m == 1:
            return (a * b) % self.p
        prod = self._exp[self._log[a] + self._log[b]]
        return np.where((a == 0) | (b == 0), 0, prod)

    def inv(self, a) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        if np.any(a == 0):
            raise DivisionByZero("zero has no multiplicative inverse")
        return self._exp[(-self._log[a]) % (self.q - 1)]

    def div(self, a, b) -> np.ndarray:
        return self.mul(a, self.inv(b))

    def power(self, a, e: int) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        if e == 0:
            return np.ones_like(a)
        res = self._exp[(self._log[a] * (e % (self.q - 1))) % (self.q - 1)]
        if e % (self.q - 1) == 0:
            res = np.ones_like(a)
        return np.where(a == 0, 0, res)

    def trace(self, a) -> np.ndarray:
        """Absolute trace ``a + a^p + ... + a^(p^(m-1))`` as prime-field ints."""
        a = np.asarray(a, dtype=np.int64)
        acc = a.copy()
        cur = a
        for _ in range(1, self.m):
            cur = self.power(cur, self.p)
            acc = self.add(acc, cur)
        if np.any(acc >= self.p):
            raise AssertionError("trace left the prime subfield")
        return acc

    # scalars

    def element(self, value: int | Sequence[int]) -> FieldElement:
        if isinstance(value, (int, np.integer)):
            if not 0 <= int(value) < self.q:
                raise ValueError(f"{value} is not an element of GF({self.q})")
            return FieldElement(tuple(int(c) for c in self._digits[int(value)]), self)
        coeffs = tuple(int(c) for c in value)
        if len(coeffs) != self.m or any(not 0 <= c < self.p for c in coeffs):
            raise ValueError(f"bad coefficient vector {coeffs}")
        return FieldElement(coeffs, self)

    @property
    def zero(self) -> FieldElement:
        return self.element(0)

    @property
    def one(self) -> FieldElement:
        return self.element(1)

    @property
    def generator(self) -> FieldElement:
        """The root ``a`` of the modulus (equal to 1 viewed in GF(p) when m = 1)."""
        return self.element(self.p if self.m > 1 else 1)

    def elements(self) -> list[FieldElement]:
        return [self.element(v) for v in range(self.q)]

    def polynomial_basis(self) -> Basis:
        return Basis(tuple(self.element(self.p**i) for i in range(self.m)))


@dataclass(frozen=True)
class FieldElement:
    coeffs: tuple[int, ...]
    params: FieldParams

    def __int__(self) -> int:
        return int(self.params.from_digits(self.coeffs))

    __index__ = __int__

    def _check(self, other: FieldElement) -> None:
        if not isinstance(other, FieldElement):
            raise TypeError(f"expected FieldElement, got {type(other).__name__}")
        if other.params != self.params:
            raise MismatchedField(f"GF({self.params}) vs GF({other.params})")

    def _wrap(self, value) -> FieldElement:
        return self.params.element(int(value))

    def __add__(self, other: FieldElement) -> FieldElement:
        self._check(other)
        return self._wrap(self.params.add(int(self), int(other)))

    def __sub__(self, other: FieldElement) -> FieldElement:
        self._check(other)
        return self._wrap(self.params.sub(int(self), int(other)))

    def __mul__(self, other: FieldElement) -> FieldElement:
        self._check(other)
        return self._wrap(self.params.mul(int(self), int(other)))

    def __truediv__(self, other: FieldElement) -> FieldElement:
        self._check(other)
        if int(other) == 0:
            raise DivisionByZero("division by the zero element")
        return self._wrap(self.params.div(int(self), int(other)))

    def __neg__(self) -> FieldElement:
        return self._wrap(self.params.neg(int(self)))

    def __pow__(self, e: int) -> FieldElement:
        if e < 0:
            return self.params.one / self ** (-e)
        return self._wrap(self.params.power(int(self), e))

    def __bool__(self) -> bool:
        return any(self.coeffs)

    def __repr__(self) -> str:
        return f"GF({self.params.q})<{int(self)}>"

    def trace(self) -> int:
        return int(self.params.trace(int(self)))


def arith(a: FieldElement, b: FieldElement, kind: str) -> FieldElement:
    ops = {"add": FieldElement.__add__, "sub": FieldElement.__sub__,
           "mul": FieldElement.__mul__, "div": FieldElement.__truediv__}
    try:
        op = ops[kind]
    except KeyError:
        raise ValueError(f"unknown operation {kind!r}") from None
    return op(a, b)


def trace(a: FieldElement) -> int:
    return a.trace()


def _inverse_mod_p(mat: np.ndarray, p: int) -> np.ndarray:
    """Gauss-Jordan inverse over F_p; raises SingularBasis when singular."""
    n = mat.shape[0]
    aug = np.concatenate([mat % p, np.eye(n, dtype=np.int64)], axis=1)
    for col in range(n):
        nz = np.nonzero(aug[col:, col])[0]
        if nz.size == 0:
            raise SingularBasis("basis elements are linearly dependent over the prime field")
        piv = col + nz[0]
        aug[[col, piv]] = aug[[piv, col]]
        aug[col] = (aug[col] * pow(int(aug[col, col]), p - 2, p)) % p
        for r in range(n):
            if r != col and aug[r, col]:
                aug[r] = (aug[r] - aug[r, col] * aug[col]) % p
    return aug[:, n:]


@dataclass(frozen=True)
class Basis:
    """An ordered basis of GF(p^m) over its prime subfield."""

    elements: tuple[FieldElement, ...]

    def __post_init__(self) -> None:
        if not self.elements:
            raise SingularBasis("empty basis")
        params = self.elements[0].params
        if len(self.elements) != params.m:
            raise SingularBasis(f"need {params.m} elements, got {len(self.elements)}")
        if any(e.params != params for e in self.elements):
            raise MismatchedField("basis elements from different fields")
        _inverse_mod_p(self.matrix, params.p)

    @property
    def params(self) -> FieldParams:
        return self.elements[0].params

    @property
    def matrix(self) -> np.ndarray:
        """Row i holds the polynomial-basis coefficients of element i."""
        return np.array([e.coeffs for e in self.elements], dtype=np.int64)

    @functools.cached_property
    def _inverse(self) -> np.ndarray:
        return _inverse_mod_p(self.matrix, self.params.p)

    def expand_array(self, values) -> np.ndarray:
        """Coordinates of encoded elements in this basis, shape ``values.shape + (m,)``."""
        d = self.params.digits(values)
        return (d @ self._inverse) % self.params.p

    def combine_array(self, coords) -> np.ndarray:
        """Inverse of :meth:`expand_array`."""
        coords = np.asarray(coords, dtype=np.int64)
        return self.params.from_digits((coords @ self.matrix) % self.params.p)


def dual_basis(b: Basis) -> Basis:
    """The basis ``d`` with ``Tr(b_i d_j) = delta_ij``."""
    F = b.params
    poly = F.polynomial_basis()
    pairs = np.array([[int(F.trace(F.mul(int(bi), int(pj)))) for pj in poly.elements]
                      for bi in b.elements], dtype=np.int64)
    # d_j = sum_l c[l, j] * poly_l  with  pairs @ c = I
    c = _inverse_mod_p(pairs, F.p)
    dual = [F.element(tuple(int(v) for v in c[:, j])) for j in range(F.m)]
    return Basis(tuple(dual))


def expand(x: FieldElement, b: Basis) -> tuple[int, ...]:
    if x.params != b.params:
        raise MismatchedField("element and basis live in different fields")
    return tuple(int(v) for v in b.expand_array(int(x)))


def combine(coords: Iterable[int], b: Basis) -> FieldElement:
    return b.params.element(int(b.combine_array(list(coords))))
