"""Structural operators on mixed tensor blocks.

lower moves one symmetric slot to the wedge side, raise_ moves one wedge
slot back, both with the alternating signs that make the two families of
maps square to zero and satisfy the degree-n commutation identity

    raise_ . lower + lower . raise_ = (k + q) * id   on H_{k,q}.

Also here: the slot action of the symmetric group on full tensors, the
averaging (anti)symmetrizers over a chosen position set, and exact
integer matrices of the operators in the canonical bases.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import permutations as _itpermutations
from math import factorial
from typing import Iterable, Iterator

from .errors import DegreeOutOfRange, DimensionMismatch, InvalidIndex
from .linalg import matrix_rank
from .tensor_core import (
    FockTensor,
    FullTensor,
    MixedIndex,
    _gram_factor,
    as_coeff,
    enum_basis,
    perm_sign,
)


class Permutation:
    """Permutation of slots 1..n, stored as the tuple of images."""

    __slots__ = ("images",)

    def __init__(self, images: Iterable[int]):
        images = tuple(images)
        n = len(images)
        if sorted(images) != list(range(1, n + 1)):
            raise InvalidIndex(f"not a permutation of 1..{n}: {images!r}")
        self.images = images

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(range(1, n + 1))

    @classmethod
    def transposition(cls, n: int, i: int, j: int) -> "Permutation":
        if not (1 <= i <= n and 1 <= j <= n):
            raise InvalidIndex(f"transposition ({i} {j}) out of range 1..{n}")
        images = list(range(1, n + 1))
        images[i - 1], images[j - 1] = j, i
        return cls(images)

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i - 1]

    def __mul__(self, other: "Permutation") -> "Permutation":
        """Composition: (self * other)(i) = self(other(i))."""
        if self.degree != other.degree:
            raise DimensionMismatch("permutation degrees differ")
        return Permutation(self.images[j - 1] for j in other.images)

    def inverse(self) -> "Permutation":
        inv = [0] * self.degree
        for i, j in enumerate(self.images, start=1):
            inv[j - 1] = i
        return Permutation(inv)

    def sign(self) -> int:
        return perm_sign(self.images)

    def __eq__(self, other) -> bool:
        return isinstance(other, Permutation) and self.images == other.images

    def __hash__(self):
        return hash(self.images)

    def __repr__(self):
        return f"Permutation{self.images}"


def symmetric_group(n: int) -> Iterator[Permutation]:
    """All n! slot permutations, in lexicographic image order."""
    for images in _itpermutations(range(1, n + 1)):
        yield Permutation(images)


def permute(t: FullTensor, p: Permutation) -> FullTensor:
    """Relocate slots: the factor in slot i moves to slot p(i)."""
    if p.degree != t.n:
        raise DimensionMismatch(f"permutation degree {p.degree} != tensor degree {t.n}")
    inv = p.inverse().images
    out: dict[tuple[int, ...], object] = {}
    for key, c in t.coeffs.items():
        new = tuple(key[inv[j] - 1] for j in range(t.n))
        cur = out.get(new, 0) + c
        if cur:
            out[new] = cur
        else:
            out.pop(new, None)
    return FullTensor(t.dim, t.n, out)


def _check_positions(t: FullTensor, positions: Iterable[int]) -> tuple[int, ...]:
    pos = tuple(sorted(positions))
    if len(set(pos)) != len(pos) or any(not 1 <= p <= t.n for p in pos):
        raise InvalidIndex(f"positions {pos!r} invalid for degree {t.n}")
    return pos


def sym_subset(t: FullTensor, positions: Iterable[int]) -> FullTensor:
    """Average of the slot permutations fixing everything off `positions`."""
    pos = _check_positions(t, positions)
    m = len(pos)
    if m <= 1:
        return t
    inv_m = Fraction(1, factorial(m))
    out: dict[tuple[int, ...], object] = {}
    for key, c in t.coeffs.items():
        c = c * inv_m
        sub = [key[p - 1] for p in pos]
        for arr in _itpermutations(sub):
            new = list(key)
            for p, v in zip(pos, arr):
                new[p - 1] = v
            new = tuple(new)
            cur = out.get(new, 0) + c
            if cur:
                out[new] = cur
            else:
                out.pop(new, None)
    return FullTensor(t.dim, t.n, out)


def alt_subset(t: FullTensor, positions: Iterable[int]) -> FullTensor:
    """Signed average of the slot permutations moving only `positions`."""
    pos = _check_positions(t, positions)
    m = len(pos)
    if m <= 1:
        return t
    inv_m = Fraction(1, factorial(m))
    signed = [
        (perm_sign([s + 1 for s in sigma]), sigma)
        for sigma in _itpermutations(range(m))
    ]
    out: dict[tuple[int, ...], object] = {}
    for key, c in t.coeffs.items():
        c = c * inv_m
        sub = [key[p - 1] for p in pos]
        for sign, sigma in signed:
            new = list(key)
            for p, s in zip(pos, sigma):
                new[p - 1] = sub[s]
            new = tuple(new)
            cur = out.get(new, 0) + sign * c
            if cur:
                out[new] = cur
            else:
                out.pop(new, None)
    return FullTensor(t.dim, t.n, out)


def _wedge_insert(i: int, alt: tuple[int, ...]) -> tuple[int, tuple[int, ...]] | None:
    """Sign and sorted tuple for e_i ^ e_alt, or None when i repeats."""
    if i in alt:
        return None
    below = sum(1 for j in alt if j < i)
    pos = below
    return (-1) ** below, alt[:pos] + (i,) + alt[pos:]


def lower(t: FockTensor) -> FockTensor:
    """Move one symmetric slot into the wedge part, summed over slots.

    On a label: sum over the k symmetric entries h of
    (label minus h) tensor (h wedged in front).  For k = 0 the result is
    the distinguished zero of the degenerate block (k-1, q+1), and a
    degenerate zero input passes through as the shifted zero, so chained
    applications stay total across the end of the complex.
    """
    if t.k < 0 or t.q < 0 or t.q > t.dim:
        return FockTensor(t.dim, t.k - 1, t.q + 1)
    out: dict[MixedIndex, object] = {}
    for label, c in t.coeffs.items():
        for s in range(t.k):
            ins = _wedge_insert(label.sym[s], label.alt)
            if ins is None:
                continue
            sign, alt = ins
            new = MixedIndex(label.sym[:s] + label.sym[s + 1 :], alt)
            cur = out.get(new, 0) + sign * c
            if cur:
                out[new] = cur
            else:
                out.pop(new, None)
    return FockTensor(t.dim, t.k - 1, t.q + 1, out)


def raise_(t: FockTensor) -> FockTensor:
    """Move one wedge slot into the symmetric part, with alternating signs.

    On a label with wedge entries j_1 < ... < j_q: sum of
    (-1)^(i-1) * (sym with j_i inserted) tensor (wedge minus j_i).
    Raises DegreeOutOfRange when q = 0 on an honest block: there is no
    wedge slot to move.  A degenerate zero input passes through as the
    zero of the shifted block instead.
    """
    if t.k < 0 or t.q < 0 or t.q > t.dim:
        return FockTensor(t.dim, t.k + 1, t.q - 1)
    if t.q == 0:
        raise DegreeOutOfRange("raise_ needs at least one wedge slot (q >= 1)")
    out: dict[MixedIndex, object] = {}
    for label, c in t.coeffs.items():
        for i in range(t.q):
            j = label.alt[i]
            new = MixedIndex(
                tuple(sorted(label.sym + (j,))),
                label.alt[:i] + label.alt[i + 1 :],
            )
            cur = out.get(new, 0) + (-1) ** i * c
            if cur:
                out[new] = cur
            else:
                out.pop(new, None)
    return FockTensor(t.dim, t.k + 1, t.q - 1, out)


class LinearMap:
    """Exact sparse matrix of a map between two mixed blocks.

    Rows are indexed by the codomain basis, columns by the domain basis,
    both in canonical enumeration order.
    """

    __slots__ = ("dom_sig", "dom_basis", "cod_sig", "cod_basis", "entries")

    def __init__(self, dom_sig, dom_basis, cod_sig, cod_basis, entries):
        self.dom_sig = tuple(dom_sig)
        self.dom_basis = list(dom_basis)
        self.cod_sig = tuple(cod_sig)
        self.cod_basis = list(cod_basis)
        self.entries = {}
        for (r, c), v in entries.items():
            if not 0 <= r < len(self.cod_basis) or not 0 <= c < len(self.dom_basis):
                raise InvalidIndex(f"entry ({r},{c}) outside matrix shape {self.shape}")
            v = as_coeff(v)
            if v:
                self.entries[(r, c)] = v

    @property
    def shape(self) -> tuple[int, int]:
        return (len(self.cod_basis), len(self.dom_basis))

    @classmethod
    def identity(cls, sig, basis) -> "LinearMap":
        ent = {(i, i): 1 for i in range(len(basis))}
        return cls(sig, basis, sig, basis, ent)

    @classmethod
    def zero(cls, dom_sig, dom_basis, cod_sig, cod_basis) -> "LinearMap":
        return cls(dom_sig, dom_basis, cod_sig, cod_basis, {})

    def __add__(self, other: "LinearMap") -> "LinearMap":
        if self.shape != other.shape or self.dom_sig != other.dom_sig:
            raise DimensionMismatch("matrix shapes differ")
        out = dict(self.entries)
        for rc, v in other.entries.items():
            cur = out.get(rc, 0) + v
            if cur:
                out[rc] = cur
            else:
                out.pop(rc, None)
        return LinearMap(self.dom_sig, self.dom_basis, self.cod_sig, self.cod_basis, out)

    def __sub__(self, other: "LinearMap") -> "LinearMap":
        return self + other.scale(-1)

    def scale(self, c) -> "LinearMap":
        c = as_coeff(c)
        ent = {rc: c * v for rc, v in self.entries.items()} if c else {}
        return LinearMap(self.dom_sig, self.dom_basis, self.cod_sig, self.cod_basis, ent)

    def __matmul__(self, other: "LinearMap") -> "LinearMap":
        """self composed after other."""
        if other.cod_sig != self.dom_sig or len(other.cod_basis) != len(self.dom_basis):
            raise DimensionMismatch("composition domains do not line up")
        by_col: dict[int, list] = {}
        for (r, c), v in self.entries.items():
            by_col.setdefault(c, []).append((r, v))
        out: dict[tuple[int, int], object] = {}
        for (mid, c), v in other.entries.items():
            for r, w in by_col.get(mid, ()):
                cur = out.get((r, c), 0) + w * v
                if cur:
                    out[(r, c)] = cur
                else:
                    out.pop((r, c), None)
        return LinearMap(other.dom_sig, other.dom_basis, self.cod_sig, self.cod_basis, out)

    def transpose(self) -> "LinearMap":
        ent = {(c, r): v for (r, c), v in self.entries.items()}
        return LinearMap(self.cod_sig, self.cod_basis, self.dom_sig, self.dom_basis, ent)

    def apply(self, t: FockTensor) -> FockTensor:
        if t.signature != self.dom_sig:
            raise DimensionMismatch(f"tensor {t.signature} != domain {self.dom_sig}")
        index = {label: i for i, label in enumerate(self.dom_basis)}
        out: dict[MixedIndex, object] = {}
        by_col: dict[int, list] = {}
        for (r, c), v in self.entries.items():
            by_col.setdefault(c, []).append((r, v))
        for label, coeff in t.coeffs.items():
            for r, v in by_col.get(index[label], ()):
                lab = self.cod_basis[r]
                cur = out.get(lab, 0) + v * coeff
                if cur:
                    out[lab] = cur
                else:
                    out.pop(lab, None)
        d, k, q = self.cod_sig
        return FockTensor(d, k, q, out if out else None)

    def max_abs_entry(self) -> Fraction:
        if not self.entries:
            return Fraction(0)
        return Fraction(max(abs(v) for v in self.entries.values()))

    def columns(self) -> list[dict]:
        cols: list[dict] = [{} for _ in self.dom_basis]
        for (r, c), v in self.entries.items():
            cols[c][r] = v
        return cols

    def rank(self) -> int:
        return matrix_rank(self.columns())

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, LinearMap)
            and self.dom_sig == other.dom_sig
            and self.cod_sig == other.cod_sig
            and self.dom_basis == other.dom_basis
            and self.cod_basis == other.cod_basis
            and self.entries == other.entries
        )

    def __repr__(self):
        return f"LinearMap({self.dom_sig}->{self.cod_sig}, shape {self.shape})"


def operator_matrix(which: str, d: int, k: int, q: int) -> LinearMap:
    """Matrix of lower or raise_ on H_{k,q} in the canonical bases.

    Entries are integers under the package conventions.  lower at k = 0
    gives a zero-row matrix (the codomain is the degenerate block);
    raise_ demands q >= 1.
    """
    if which not in ("lower", "raise"):
        raise InvalidIndex(f"unknown operator {which!r}")
    dom = enum_basis(d, k, q)
    if which == "lower":
        op = lower
        cod_sig = (d, k - 1, q + 1)
    else:
        if q == 0:
            raise DegreeOutOfRange("raise_ needs at least one wedge slot (q >= 1)")
        op = raise_
        cod_sig = (d, k + 1, q - 1)
    cod = enum_basis(d, *cod_sig[1:])
    index = {label: i for i, label in enumerate(cod)}
    entries: dict[tuple[int, int], object] = {}
    for c, label in enumerate(dom):
        image = op(FockTensor.basis(d, label))
        for lab, v in image.coeffs.items():
            entries[(index[lab], c)] = v
    return LinearMap((d, k, q), dom, cod_sig, cod, entries)


def gram_matrix(d: int, k: int, q: int) -> LinearMap:
    """Diagonal pairing matrix of H_{k,q}: multiplicity factorials."""
    basis = enum_basis(d, k, q)
    ent = {(i, i): _gram_factor(label) for i, label in enumerate(basis)}
    return LinearMap((d, k, q), basis, (d, k, q), basis, ent)
