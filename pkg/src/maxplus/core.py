"""Exact max-plus scalars, vectors and matrices.

Finite scalars are exact rationals (``int`` when integral, otherwise
``fractions.Fraction``).  The tropical zero is the singleton :data:`NEG_INF`,
which behaves like minus infinity under ``+``, ``max`` and comparisons but is
never a number.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Iterator, Sequence, Union

from .errors import DimensionError, DomainError


class Bottom:
    """The bottom element of the max-plus semiring (written -inf)."""

    _instance = None
    __slots__ = ()

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "NEG_INF"

    def __str__(self):
        return "-inf"

    def __reduce__(self):
        return (Bottom, ())

    def __hash__(self):
        return hash("maxplus.NEG_INF")

    def __eq__(self, other):
        return other is self

    def __ne__(self, other):
        return other is not self

    def __lt__(self, other):
        return other is not self

    def __le__(self, other):
        return True

    def __gt__(self, other):
        return False

    def __ge__(self, other):
        return other is self

    def __add__(self, other):
        return self

    __radd__ = __add__

    def __neg__(self):
        raise DomainError("-(-inf) has no meaning in the max-plus semiring")


NEG_INF = Bottom()

Scalar = Union[int, Fraction, Bottom]


def scalar(x) -> Scalar:
    """Coerce ``x`` into an exact tropical scalar.

    Accepts ints, Fractions, decimal or fraction strings (``"0.2"``,
    ``"1/15"``), ``"-inf"``/``"."`` and :data:`NEG_INF`.  Floats are rejected
    unless integral, to keep every value exact.
    """
    if x is NEG_INF:
        return NEG_INF
    if isinstance(x, bool):
        raise TypeError("booleans are not tropical scalars")
    if isinstance(x, int):
        return x
    if isinstance(x, Rational):
        f = Fraction(x)
        return f.numerator if f.denominator == 1 else f
    if isinstance(x, float):
        if x == float("-inf"):
            return NEG_INF
        if x.is_integer():
            return int(x)
        raise TypeError(f"non-integral float {x!r}; pass a Fraction or a string")
    if isinstance(x, str):
        s = x.strip()
        if s in ("-inf", ".", "-Inf", "-INF"):
            return NEG_INF
        f = Fraction(s)
        return f.numerator if f.denominator == 1 else f
    raise TypeError(f"cannot interpret {x!r} as a tropical scalar")


def _norm(x):
    # keep integral values as int: int arithmetic is much cheaper than Fraction
    if type(x) is Fraction and x.denominator == 1:
        return x.numerator
    return x


def is_finite(x: Scalar) -> bool:
    return x is not NEG_INF


def format_scalar(x: Scalar) -> str:
    if x is NEG_INF:
        return "-inf"
    return str(x)


def decimal_string(x: Scalar):
    """Terminating decimal for ``x`` if one exists (denominator 2^a 5^b)."""
    if x is NEG_INF:
        return None
    f = Fraction(x)
    d = f.denominator
    twos = fives = 0
    while d % 2 == 0:
        d //= 2
        twos += 1
    while d % 5 == 0:
        d //= 5
        fives += 1
    if d != 1:
        return None
    digits = max(twos, fives)
    if digits == 0:
        return str(f.numerator)
    scaled = abs(f.numerator) * 10**digits // f.denominator
    sign = "-" if f < 0 else ""
    whole, frac = divmod(scaled, 10**digits)
    return f"{sign}{whole}.{frac:0{digits}d}"


class TropVector:
    """Immutable vector over the max-plus semiring."""

    __slots__ = ("entries",)

    def __init__(self, entries: Iterable):
        entries = tuple(scalar(x) for x in entries)
        if not entries:
            raise DimensionError("vectors must have at least one entry")
        object.__setattr__(self, "entries", entries)

    def __setattr__(self, name, value):
        raise AttributeError("TropVector is immutable")

    def __len__(self):
        return len(self.entries)

    def __iter__(self) -> Iterator[Scalar]:
        return iter(self.entries)

    def __getitem__(self, i):
        return self.entries[i]

    def __eq__(self, other):
        return isinstance(other, TropVector) and self.entries == other.entries

    def __hash__(self):
        return hash(self.entries)

    def __repr__(self):
        return "TropVector([" + ", ".join(format_scalar(x) for x in self.entries) + "])"

    @property
    def is_finite(self) -> bool:
        return all(x is not NEG_INF for x in self.entries)

    @property
    def is_null(self) -> bool:
        return all(x is NEG_INF for x in self.entries)

    def shift(self, lam: Scalar) -> "TropVector":
        lam = scalar(lam)
        return TropVector(_norm(lam + x) for x in self.entries)

    def __neg__(self) -> "TropVector":
        if not self.is_finite:
            raise DomainError("only finite vectors can be negated")
        return TropVector(-x for x in self.entries)

    def __le__(self, other: "TropVector") -> bool:
        _check_same_len(self, other)
        return all(a <= b for a, b in zip(self.entries, other.entries))

    def __ge__(self, other: "TropVector") -> bool:
        return other <= self


def _check_same_len(u: TropVector, v: TropVector):
    if len(u) != len(v):
        raise DimensionError(f"vector lengths differ: {len(u)} vs {len(v)}")


class TropMatrix:
    """Immutable dense matrix over the max-plus semiring.

    ``A @ B`` is the max-plus product, ``A | B`` the entrywise maximum and
    ``A @ v`` the matrix-vector product.
    """

    __slots__ = ("rows", "cols", "entries", "_grid_cache")

    def __init__(self, rows: Iterable[Iterable]):
        entries = tuple(tuple(scalar(x) for x in row) for row in rows)
        if not entries or not entries[0]:
            raise DimensionError("matrices must have at least one row and one column")
        cols = len(entries[0])
        if any(len(r) != cols for r in entries):
            raise DimensionError("ragged rows")
        self._init(entries)

    def _init(self, entries):
        object.__setattr__(self, "entries", entries)
        object.__setattr__(self, "rows", len(entries))
        object.__setattr__(self, "cols", len(entries[0]))
        object.__setattr__(self, "_grid_cache", None)

    @classmethod
    def _trusted(cls, entries) -> "TropMatrix":
        # entries already normalized scalars in a tuple of tuples
        obj = cls.__new__(cls)
        obj._init(entries)
        return obj

    def __setattr__(self, name, value):
        raise AttributeError("TropMatrix is immutable")

    @classmethod
    def null(cls, rows: int, cols: int = None) -> "TropMatrix":
        cols = rows if cols is None else cols
        if rows < 1 or cols < 1:
            raise DimensionError("dimensions must be positive")
        return cls._trusted(tuple((NEG_INF,) * cols for _ in range(rows)))

    @classmethod
    def identity(cls, n: int) -> "TropMatrix":
        return diag(TropVector([0] * n))

    @property
    def shape(self):
        return (self.rows, self.cols)

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    @property
    def is_null(self) -> bool:
        return all(x is NEG_INF for row in self.entries for x in row)

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def __eq__(self, other):
        return isinstance(other, TropMatrix) and self.entries == other.entries

    def __hash__(self):
        return hash(self.entries)

    def __repr__(self):
        body = "; ".join(" ".join(format_scalar(x) for x in row) for row in self.entries)
        return f"TropMatrix([{body}])"

    def column(self, j: int) -> TropVector:
        return TropVector(row[j] for row in self.entries)

    def row(self, i: int) -> TropVector:
        return TropVector(self.entries[i])

    def transpose(self) -> "TropMatrix":
        return TropMatrix._trusted(tuple(zip(*self.entries)))

    @property
    def T(self) -> "TropMatrix":
        return self.transpose()

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "TropMatrix":
        e = self.entries
        return TropMatrix._trusted(tuple(tuple(e[i][j] for j in cols) for i in rows))

    def finite_entries(self):
        return [x for row in self.entries for x in row if x is not NEG_INF]

    def __or__(self, other: "TropMatrix") -> "TropMatrix":
        return trop_add(self, other)

    def __matmul__(self, other):
        if isinstance(other, TropVector):
            return mat_vec(self, other)
        return trop_mul(self, other)

    def __le__(self, other: "TropMatrix") -> bool:
        if self.shape != other.shape:
            raise DimensionError("shape mismatch")
        return all(a <= b for ra, rb in zip(self.entries, other.entries) for a, b in zip(ra, rb))

    def __ge__(self, other: "TropMatrix") -> bool:
        return other <= self

    def __pow__(self, k: int) -> "TropMatrix":
        return power(self, k)


def trop_add(a: TropMatrix, b: TropMatrix) -> TropMatrix:
    """Entrywise maximum ``A v B``."""
    if a.shape != b.shape:
        raise DimensionError(f"cannot add {a.shape} and {b.shape} matrices")
    return TropMatrix._trusted(
        tuple(tuple(x if x >= y else y for x, y in zip(ra, rb)) for ra, rb in zip(a.entries, b.entries))
    )


# Below this many scalar operations the pure-Python product beats the
# scaled-integer numpy kernel (conversion overhead dominates).
_SMALL_PRODUCT = 4096


def trop_mul(a: TropMatrix, b: TropMatrix) -> TropMatrix:
    """Max-plus product ``(A B)_ij = max_k A_ik + B_kj``."""
    if a.cols != b.rows:
        raise DimensionError(f"cannot multiply {a.shape} by {b.shape}")
    if a.rows * a.cols * b.cols > _SMALL_PRODUCT:
        from . import _kernel

        return _kernel.product(a, b)
    bcols = tuple(zip(*b.entries))
    out = []
    for ra in a.entries:
        row = []
        for cb in bcols:
            best = NEG_INF
            for x, y in zip(ra, cb):
                if x is NEG_INF or y is NEG_INF:
                    continue
                s = x + y
                if best is NEG_INF or s > best:
                    best = s
            row.append(_norm(best))
        out.append(tuple(row))
    return TropMatrix._trusted(tuple(out))


def mat_vec(a: TropMatrix, v: TropVector) -> TropVector:
    if a.cols != len(v):
        raise DimensionError(f"cannot multiply {a.shape} matrix by length-{len(v)} vector")
    out = []
    for row in a.entries:
        best = NEG_INF
        for x, y in zip(row, v.entries):
            if x is NEG_INF or y is NEG_INF:
                continue
            s = x + y
            if best is NEG_INF or s > best:
                best = s
        out.append(_norm(best))
    return TropVector(out)


def scalar_mul(lam, a: TropMatrix) -> TropMatrix:
    """``lam (.) A``: add ``lam`` to every entry."""
    lam = scalar(lam)
    if lam is NEG_INF:
        return TropMatrix.null(a.rows, a.cols)
    if lam == 0:
        return a
    return TropMatrix._trusted(
        tuple(tuple(NEG_INF if x is NEG_INF else _norm(x + lam) for x in row) for row in a.entries)
    )


def power(a: TropMatrix, k: int) -> TropMatrix:
    """``A^k`` for ``k >= 1`` by repeated squaring."""
    if not a.is_square:
        raise DimensionError("powers need a square matrix")
    if k < 1:
        raise DomainError("exponent must be at least 1")
    result = None
    base = a
    while k:
        if k & 1:
            result = base if result is None else trop_mul(result, base)
        k >>= 1
        if k:
            base = trop_mul(base, base)
    return result


@dataclass(frozen=True)
class ProjectiveForm:
    """Canonical representative of a tropical equivalence class.

    ``normalized`` has maximum finite entry 0 (or is null) and the original
    object equals ``shift (.) normalized``.
    """

    normalized: Union[TropMatrix, TropVector]
    shift: Scalar


def projective_form(a):
    """Subtract the maximum finite entry.  Works on matrices and vectors."""
    if isinstance(a, TropVector):
        finite = [x for x in a if x is not NEG_INF]
        if not finite:
            return ProjectiveForm(a, NEG_INF)
        top = max(finite)
        return ProjectiveForm(a.shift(-top), top)
    finite = a.finite_entries()
    if not finite:
        return ProjectiveForm(a, NEG_INF)
    top = max(finite)
    return ProjectiveForm(scalar_mul(-top, a), top)


def equivalent(a, b) -> bool:
    """True when ``b = lam (.) a`` for a real ``lam``."""
    return projective_form(a).normalized == projective_form(b).normalized


def diag(u: TropVector) -> TropMatrix:
    """Diagonal matrix with ``u`` on the diagonal and -inf elsewhere."""
    if not isinstance(u, TropVector):
        u = TropVector(u)
    if not u.is_finite:
        raise DomainError("diag() needs a finite vector")
    n = len(u)
    return TropMatrix._trusted(
        tuple(tuple(u[i] if i == j else NEG_INF for j in range(n)) for i in range(n))
    )


def conjugate(a: TropMatrix, u: TropVector) -> TropMatrix:
    """``diag(-u) A diag(u)``, i.e. entries ``A_ij + u_j - u_i``."""
    if not isinstance(u, TropVector):
        u = TropVector(u)
    if not u.is_finite:
        raise DomainError("conjugation needs a finite vector")
    if not a.is_square or a.rows != len(u):
        raise DimensionError("conjugation needs a square matrix matching the vector length")
    return TropMatrix._trusted(
        tuple(
            tuple(NEG_INF if x is NEG_INF else _norm(x + u[j] - u[i]) for j, x in enumerate(row))
            for i, row in enumerate(a.entries)
        )
    )


def matrix(rows) -> TropMatrix:
    """Convenience constructor; passes through existing matrices."""
    return rows if isinstance(rows, TropMatrix) else TropMatrix(rows)
