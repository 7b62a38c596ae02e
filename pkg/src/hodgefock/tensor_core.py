"""Mixed symmetric/antisymmetric tensor blocks with exact coefficients.

The ground space is R^d with distinguished basis e_1, ..., e_d.  A mixed
block H_{k,q} is spanned by vectors

    e_{i_1} (.) ... (.) e_{i_k}  tensor  e_{j_1} ^ ... ^ e_{j_q}

where (.) is the symmetric product and ^ the wedge.  Canonical labels keep
the symmetric entries sorted non-decreasing and the wedge entries sorted
strictly increasing; every tensor is a finite rational combination of
canonical labels.

Normalization conventions, fixed once and used everywhere:

 * the symmetric product of k vectors is the plain sum over all k!
   slot permutations of the tensor product (no 1/k! factor), and the
   wedge of q vectors is the signed sum over all q! permutations;
 * consequently embed() of a canonical label is that double sum, and
   project_mixed(embed(b), k) = k! * q! * b;
 * the pairing on H_{k,q} is the permanent pairing on the symmetric part
   times the determinant pairing on the wedge part, which makes
   inner(t, u) = inner_full(embed(t), embed(u)) / (k! * q!).

With these choices every structural operator in the package has integer
matrix entries.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations, combinations_with_replacement, permutations
from math import comb
from typing import Iterable, Mapping, NamedTuple

from .errors import DegreeOutOfRange, DimensionMismatch, InvalidIndex


def as_coeff(x):
    """Coerce a scalar to an exact coefficient; floats are refused."""
    if isinstance(x, float):
        raise TypeError("float coefficients are not exact; use Fraction")
    if isinstance(x, (int, Fraction)):
        return x
    return Fraction(x)


def sort_sign(seq: tuple) -> tuple | None:
    """(sign, sorted tuple) of the permutation sorting seq, None on repeats."""
    items = list(seq)
    sign = 1
    for i in range(1, len(items)):
        j = i
        while j > 0 and items[j] < items[j - 1]:
            items[j], items[j - 1] = items[j - 1], items[j]
            sign = -sign
            j -= 1
    for i in range(1, len(items)):
        if items[i] == items[i - 1]:
            return None
    return sign, tuple(items)


def perm_sign(seq: Iterable[int]) -> int:
    """Sign of a permutation given as a sequence of distinct values."""
    res = sort_sign(tuple(seq))
    if res is None:
        raise InvalidIndex(f"not a permutation: {seq!r}")
    return res[0]


class MixedIndex(NamedTuple):
    """Canonical basis label: sorted symmetric part, strictly sorted wedge part."""

    sym: tuple[int, ...]
    alt: tuple[int, ...]

    def render(self) -> str:
        return "({};{})".format(
            ",".join(map(str, self.sym)), ",".join(map(str, self.alt))
        )

    def multiplicities(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for i in self.sym:
            out[i] = out.get(i, 0) + 1
        return out

    def is_canonical(self, dim: int) -> bool:
        ok_range = all(1 <= i <= dim for i in self.sym + self.alt)
        ok_sym = all(a <= b for a, b in zip(self.sym, self.sym[1:]))
        ok_alt = all(a < b for a, b in zip(self.alt, self.alt[1:]))
        return ok_range and ok_sym and ok_alt


def enum_basis(d: int, k: int, q: int) -> list[MixedIndex]:
    """Canonical labels of H_{k,q} over R^d, sorted lexicographically.

    Degenerate degrees (negative k or q, or q > d) give the empty list:
    those blocks are honest zero-dimensional spaces.
    """
    if d < 1:
        raise DimensionMismatch(f"ground dimension must be >= 1, got {d}")
    if k < 0 or q < 0 or q > d:
        return []
    out = []
    for sym in combinations_with_replacement(range(1, d + 1), k):
        for alt in combinations(range(1, d + 1), q):
            out.append(MixedIndex(sym, alt))
    return out


def _gram_factor(label: MixedIndex) -> int:
    """Pairing of a canonical label with itself: product of sym multiplicity
    factorials (the permanent), times 1 from the determinant."""
    out = 1
    run = 1
    for a, b in zip(label.sym, label.sym[1:]):
        run = run + 1 if a == b else 1
        if run > 1:
            out *= run
    return out


class FockTensor:
    """Element of a mixed block H_{k,q}, sparse over canonical labels.

    Treated as immutable: all operations return fresh tensors.  A
    degenerate signature (k < 0, q < 0 or q > d) is allowed only for the
    zero tensor, so maps off the end of a complex have an honest zero
    target.
    """

    __slots__ = ("dim", "k", "q", "coeffs")

    def __init__(self, dim: int, k: int, q: int, coeffs: Mapping | None = None):
        if dim < 1:
            raise DimensionMismatch(f"ground dimension must be >= 1, got {dim}")
        degenerate = k < 0 or q < 0 or q > dim
        data: dict[MixedIndex, object] = {}
        if coeffs:
            if degenerate:
                raise DegreeOutOfRange(
                    f"block ({k},{q}) over R^{dim} is zero-dimensional"
                )
            for label, c in coeffs.items():
                if not isinstance(label, MixedIndex):
                    label = MixedIndex(tuple(label[0]), tuple(label[1]))
                if len(label.sym) != k or len(label.alt) != q:
                    raise InvalidIndex(f"label {label!r} has wrong degrees")
                if not label.is_canonical(dim):
                    raise InvalidIndex(f"label {label!r} is not canonical")
                c = as_coeff(c)
                if c:
                    data[label] = data.get(label, 0) + c
                    if not data[label]:
                        del data[label]
        self.dim = dim
        self.k = k
        self.q = q
        self.coeffs = data

    @classmethod
    def zero(cls, dim: int, k: int, q: int) -> "FockTensor":
        return cls(dim, k, q)

    @classmethod
    def basis(cls, dim: int, label: MixedIndex) -> "FockTensor":
        label = MixedIndex(tuple(label[0]), tuple(label[1]))
        return cls(dim, len(label.sym), len(label.alt), {label: 1})

    @property
    def signature(self) -> tuple[int, int, int]:
        return (self.dim, self.k, self.q)

    def is_zero(self) -> bool:
        return not self.coeffs

    def items(self) -> list:
        return sorted(self.coeffs.items())

    def _check_same(self, other: "FockTensor") -> None:
        if not isinstance(other, FockTensor):
            raise TypeError(f"expected FockTensor, got {type(other).__name__}")
        if self.signature != other.signature:
            raise DimensionMismatch(
                f"signature mismatch: {self.signature} vs {other.signature}"
            )

    def __add__(self, other: "FockTensor") -> "FockTensor":
        self._check_same(other)
        out = dict(self.coeffs)
        for label, c in other.coeffs.items():
            cur = out.get(label, 0) + c
            if cur:
                out[label] = cur
            else:
                out.pop(label, None)
        return FockTensor(self.dim, self.k, self.q, out)

    def __sub__(self, other: "FockTensor") -> "FockTensor":
        return self + (-other)

    def __neg__(self) -> "FockTensor":
        return self.scale(-1)

    def scale(self, c) -> "FockTensor":
        c = as_coeff(c)
        if not c:
            return FockTensor(self.dim, self.k, self.q)
        return FockTensor(
            self.dim, self.k, self.q, {l: c * v for l, v in self.coeffs.items()}
        )

    def __mul__(self, c):
        return self.scale(c)

    __rmul__ = __mul__

    def __truediv__(self, c):
        return self.scale(Fraction(1) / as_coeff(c))

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, FockTensor)
            and self.signature == other.signature
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        raise TypeError("FockTensor is not hashable")

    def render(self) -> str:
        """Canonical text form, e.g. '3/2*(1,1;2,3) + -1*(1,2;1,3)'.

        Stable: terms sorted by label, coefficients printed exactly.
        """
        if not self.coeffs:
            return "0"
        return " + ".join(f"{c}*{l.render()}" for l, c in self.items())

    def __repr__(self):
        return f"FockTensor({self.dim},{self.k},{self.q}: {self.render()})"


class FullTensor:
    """Element of the full tensor power (R^d)^{tensor n}, sparse over slot keys."""

    __slots__ = ("dim", "n", "coeffs")

    def __init__(self, dim: int, n: int, coeffs: Mapping | None = None):
        if dim < 1:
            raise DimensionMismatch(f"ground dimension must be >= 1, got {dim}")
        if n < 0:
            raise DegreeOutOfRange(f"tensor degree must be >= 0, got {n}")
        data: dict[tuple[int, ...], object] = {}
        if coeffs:
            for key, c in coeffs.items():
                key = tuple(key)
                if len(key) != n or not all(1 <= i <= dim for i in key):
                    raise InvalidIndex(f"key {key!r} invalid for degree {n}, dim {dim}")
                c = as_coeff(c)
                if c:
                    data[key] = data.get(key, 0) + c
                    if not data[key]:
                        del data[key]
        self.dim = dim
        self.n = n
        self.coeffs = data

    @classmethod
    def zero(cls, dim: int, n: int) -> "FullTensor":
        return cls(dim, n)

    @classmethod
    def basis(cls, dim: int, key: tuple[int, ...]) -> "FullTensor":
        key = tuple(key)
        return cls(dim, len(key), {key: 1})

    def is_zero(self) -> bool:
        return not self.coeffs

    def items(self) -> list:
        return sorted(self.coeffs.items())

    def _check_same(self, other: "FullTensor") -> None:
        if not isinstance(other, FullTensor):
            raise TypeError(f"expected FullTensor, got {type(other).__name__}")
        if (self.dim, self.n) != (other.dim, other.n):
            raise DimensionMismatch(
                f"shape mismatch: {(self.dim, self.n)} vs {(other.dim, other.n)}"
            )

    def __add__(self, other: "FullTensor") -> "FullTensor":
        self._check_same(other)
        out = dict(self.coeffs)
        for key, c in other.coeffs.items():
            cur = out.get(key, 0) + c
            if cur:
                out[key] = cur
            else:
                out.pop(key, None)
        return FullTensor(self.dim, self.n, out)

    def __sub__(self, other: "FullTensor") -> "FullTensor":
        return self + (-other)

    def __neg__(self) -> "FullTensor":
        return self.scale(-1)

    def scale(self, c) -> "FullTensor":
        c = as_coeff(c)
        if not c:
            return FullTensor(self.dim, self.n)
        return FullTensor(self.dim, self.n, {k: c * v for k, v in self.coeffs.items()})

    def __mul__(self, c):
        return self.scale(c)

    __rmul__ = __mul__

    def __truediv__(self, c):
        return self.scale(Fraction(1) / as_coeff(c))

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, FullTensor)
            and (self.dim, self.n) == (other.dim, other.n)
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        raise TypeError("FullTensor is not hashable")

    def render(self) -> str:
        if not self.coeffs:
            return "0"
        return " + ".join(
            "{}*({})".format(c, ",".join(map(str, k))) for k, c in self.items()
        )

    def __repr__(self):
        return f"FullTensor({self.dim},{self.n}: {self.render()})"


def _signed_arrangements(q: int) -> list[tuple[int, tuple[int, ...]]]:
    if q not in _SIGNED_ARRANGEMENTS:
        _SIGNED_ARRANGEMENTS[q] = [
            (perm_sign([s + 1 for s in sigma]), sigma)
            for sigma in permutations(range(q))
        ]
    return _SIGNED_ARRANGEMENTS[q]


_SIGNED_ARRANGEMENTS: dict[int, list] = {}


def embed(t: FockTensor) -> FullTensor:
    """Write a mixed tensor inside the full tensor power.

    A label goes to the sum over all k! arrangements of its symmetric
    entries times the signed sum over all q! arrangements of its wedge
    entries.  No normalizing factor, so this is injective with
    project_mixed as a k!*q! left inverse.
    """
    if t.k < 0 or t.q < 0:
        raise DegreeOutOfRange(f"cannot embed degenerate signature {t.signature}")
    n = t.k + t.q
    out: dict[tuple[int, ...], object] = {}
    signed = _signed_arrangements(t.q)
    for label, c in t.coeffs.items():
        for rho in permutations(label.sym):
            for sign, sigma in signed:
                key = rho + tuple(label.alt[s] for s in sigma)
                cur = out.get(key, 0) + sign * c
                if cur:
                    out[key] = cur
                else:
                    out.pop(key, None)
    return FullTensor(t.dim, n, out)


def project_mixed(t: FullTensor, k: int) -> FockTensor:
    """Collapse a full tensor onto H_{k,q} coordinates, q = n - k.

    Symmetrizing the first k slots, antisymmetrizing the rest and then
    rewriting each slot key as a canonical label is the same as rewriting
    directly: sorting the symmetric part forgets the arrangement and the
    two signs on the wedge part cancel.  So each key contributes its
    coefficient, with the sign that sorts its last q entries, to the
    canonical label; keys with a repeat in the last q slots die.
    """
    if not 0 <= k <= t.n:
        raise InvalidIndex(f"k must be within 0..{t.n}, got {k}")
    q = t.n - k
    out: dict[MixedIndex, object] = {}
    for key, c in t.coeffs.items():
        res = sort_sign(key[k:])
        if res is None:
            continue
        sign, alt = res
        label = MixedIndex(tuple(sorted(key[:k])), alt)
        cur = out.get(label, 0) + sign * c
        if cur:
            out[label] = cur
        else:
            out.pop(label, None)
    return FockTensor(t.dim, k, q, out)


def inner(t: FockTensor, u: FockTensor):
    """Permanent pairing on the symmetric part, determinant on the wedge part.

    On canonical labels both factors vanish unless the labels agree, and
    the permanent of the multiplicity-matching matrix is the product of
    multiplicity factorials.
    """
    t._check_same(u)
    total = Fraction(0)
    small, big = (t.coeffs, u.coeffs) if len(t.coeffs) <= len(u.coeffs) else (u.coeffs, t.coeffs)
    for label, c in small.items():
        other = big.get(label)
        if other:
            total += c * other * _gram_factor(label)
    return total


def inner_full(t: FullTensor, u: FullTensor):
    """Slot-wise pairing on the full tensor power (basis keys orthonormal)."""
    t._check_same(u)
    total = Fraction(0)
    small, big = (t.coeffs, u.coeffs) if len(t.coeffs) <= len(u.coeffs) else (u.coeffs, t.coeffs)
    for key, c in small.items():
        other = big.get(key)
        if other:
            total += c * other
    return total


def block_dim(d: int, k: int, q: int) -> int:
    """dim H_{k,q} = C(d+k-1, k) * C(d, q); zero for degenerate degrees."""
    if k < 0 or q < 0 or q > d:
        return 0
    return comb(d + k - 1, k) * comb(d, q)
