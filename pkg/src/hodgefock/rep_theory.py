"""Symmetric-group structure of the mixed position-set subspaces.

Inside the full tensor power, each choice of k slot positions carries a
copy of "symmetric there, alternating elsewhere".  The span of one label
over all slot permutations decomposes into at most two irreducible
pieces, the two hook shapes (k+1, 1^{q-1}) and (k, 1^q); the split is cut
out by the sum of all slot transpositions, which acts on the two pieces
with eigenvalues differing by exactly n = k + q. That operator is the
matrix form of the two composites lower . raise_ and raise_ . lower read
through embed, so the subspace split here and the tensor split in the
hodge module are the same decomposition in two coordinate systems.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import comb, factorial

from .errors import DimensionMismatch, InvalidIndex, NotInvariant
from .fock_ops import Permutation, permute
from .linalg import EchelonBasis, kernel_basis
from .tensor_core import FockTensor, FullTensor, MixedIndex, embed, enum_basis


class Subspace:
    """Subspace of the full tensor power, held as a reduced echelon basis.

    The stored basis is canonical (pivots normalized, fully reduced,
    sorted by pivot key), so two Subspace objects are equal iff they are
    the same subspace of the same ambient power.
    """

    __slots__ = ("dim_ground", "degree", "_ech")

    def __init__(self, dim_ground: int, degree: int):
        self.dim_ground = dim_ground
        self.degree = degree
        self._ech = EchelonBasis()

    @classmethod
    def spanned_by(cls, dim_ground: int, degree: int, vectors) -> "Subspace":
        out = cls(dim_ground, degree)
        for v in vectors:
            out.add(v)
        return out

    def _check(self, t: FullTensor) -> None:
        if (t.dim, t.n) != (self.dim_ground, self.degree):
            raise DimensionMismatch(
                f"tensor in {(t.dim, t.n)}, subspace ambient {(self.dim_ground, self.degree)}"
            )

    def add(self, t: FullTensor) -> bool:
        self._check(t)
        return self._ech.insert(t.coeffs)

    @property
    def dim(self) -> int:
        return self._ech.dim

    def contains(self, t: FullTensor) -> bool:
        self._check(t)
        return self._ech.contains(t.coeffs)

    def basis(self) -> list[FullTensor]:
        return [
            FullTensor(self.dim_ground, self.degree, row)
            for row in self._ech.sorted_rows()
        ]

    def coordinates(self, t: FullTensor) -> list:
        """Coefficients of t in the canonical basis; NotInvariant if outside."""
        self._check(t)
        coords = self._ech.coordinates(t.coeffs)
        if coords is None:
            raise NotInvariant("vector lies outside the subspace")
        return coords

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Subspace)
            and (self.dim_ground, self.degree) == (other.dim_ground, other.degree)
            and self._ech.rows == other._ech.rows
        )

    def __repr__(self):
        return f"Subspace(ambient=({self.dim_ground},{self.degree}), dim={self.dim})"


@dataclass(frozen=True)
class HookShape:
    """Hook partition (n - m, 1^m) of n, i.e. arm n - m - 1 and leg m."""

    n: int
    m: int

    def __post_init__(self):
        if not 0 <= self.m <= self.n - 1:
            raise InvalidIndex(f"hook needs 0 <= m <= n-1, got m={self.m}, n={self.n}")

    def cells(self) -> list[tuple[int, int]]:
        first_row = [(0, j) for j in range(self.n - self.m)]
        column = [(i, 0) for i in range(1, self.m + 1)]
        return first_row + column


def hook_dim(shape: HookShape) -> int:
    """Irreducible dimension by the hook length product; equals C(n-1, m)."""
    cells = set(shape.cells())
    product = 1
    for (i, j) in cells:
        arm = sum(1 for (a, b) in cells if a == i and b > j)
        leg = sum(1 for (a, b) in cells if b == j and a > i)
        product *= arm + leg + 1
    dim = factorial(shape.n) // product
    assert dim == comb(shape.n - 1, shape.m), "hook product disagrees with binomial"
    return dim


def position_permutation(n: int, k: int, positions: tuple[int, ...]) -> Permutation:
    """Slot relocation sending 1..k onto `positions` (order kept on both parts)."""
    rest = [p for p in range(1, n + 1) if p not in positions]
    images = [0] * n
    for s, p in enumerate(positions):
        images[s] = p
    for s, p in enumerate(rest):
        images[k + s] = p
    return Permutation(images)


def has_distinct_indices(b: MixedIndex) -> bool:
    entries = b.sym + b.alt
    return len(set(entries)) == len(entries)


def orbit_span(b: MixedIndex, d: int) -> Subspace:
    """Span of the slot-permutation orbit of embed(b).

    embed(b) is fixed (up to sign) by permutations preserving the two
    position groups, so representatives moving 1..k onto each k-subset of
    positions already span the orbit; the full n! sweep is used as a
    cross-check oracle in the tests.
    """
    k, q = len(b.sym), len(b.alt)
    n = k + q
    w = embed(FockTensor.basis(d, b))
    out = Subspace(d, n)
    for positions in combinations(range(1, n + 1), k):
        out.add(permute(w, position_permutation(n, k, positions)))
    return out


def span_all_positions(d: int, k: int, q: int) -> Subspace:
    """Span of every mixed block placed at every k-subset of slot positions.

    Degenerate degrees give the zero subspace of the right ambient power.
    """
    n = k + q
    out = Subspace(d, n)
    if k < 0 or q < 0 or q > d:
        return out
    labels = enum_basis(d, k, q)
    for positions in combinations(range(1, n + 1), k):
        p = position_permutation(n, k, positions)
        for b in labels:
            out.add(permute(embed(FockTensor.basis(d, b)), p))
    return out


def embedded_subspace(d: int, k: int, q: int) -> Subspace:
    """embed-image of the canonical block H_{k,q} (positions 1..k fixed)."""
    out = Subspace(d, k + q)
    for b in enum_basis(d, k, q):
        out.add(embed(FockTensor.basis(d, b)))
    return out


def intersect(a: Subspace, b: Subspace) -> Subspace:
    """Exact intersection, via the kernel of the stacked column system."""
    if (a.dim_ground, a.degree) != (b.dim_ground, b.degree):
        raise DimensionMismatch("subspaces live in different ambient powers")
    cols_a = [t.coeffs for t in a.basis()]
    cols_b = [t.coeffs for t in b.basis()]
    kern = kernel_basis(cols_a + cols_b)
    out = Subspace(a.dim_ground, a.degree)
    for tag in kern:
        vec: dict = {}
        for j, c in tag.items():
            if j < len(cols_a):
                for key, v in cols_a[j].items():
                    cur = vec.get(key, 0) + c * v
                    if cur:
                        vec[key] = cur
                    else:
                        vec.pop(key, None)
        out.add(FullTensor(a.dim_ground, a.degree, vec))
    return out


def transposition_sum_matrix(space: Subspace) -> list[list]:
    """Matrix, in the canonical basis, of the sum of all slot transpositions.

    The subspace must be invariant (NotInvariant otherwise).  Entry [i][j]
    is the i-th coordinate of the image of the j-th basis vector.
    """
    n = space.degree
    basis = space.basis()
    cols = []
    for v in basis:
        acc = FullTensor.zero(space.dim_ground, n)
        for i in range(1, n + 1):
            for j in range(i + 1, n + 1):
                acc = acc + permute(v, Permutation.transposition(n, i, j))
        cols.append(space.coordinates(acc))
    return [[cols[j][i] for j in range(len(basis))] for i in range(len(basis))]


def _apply_shifted(space: Subspace, shift) -> list[FullTensor]:
    """(sum of transpositions - shift) applied to each canonical basis vector."""
    n = space.degree
    out = []
    for v in space.basis():
        acc = v.scale(-shift)
        for i in range(1, n + 1):
            for j in range(i + 1, n + 1):
                acc = acc + permute(v, Permutation.transposition(n, i, j))
        out.append(acc)
    return out


def orbit_split_spaces(b: MixedIndex, d: int) -> tuple[Subspace, Subspace]:
    """The two invariant pieces of orbit_span(b).

    The transposition sum acts on the orbit span with the two hook
    eigenvalues c+ = k(k+1)/2 - q(q-1)/2 and c- = c+ - n.  Shifting by one
    eigenvalue and taking the image yields the other eigenspace: these are
    n times the two idempotents of the hodge split, read through embed.
    """
    k, q = len(b.sym), len(b.alt)
    n = k + q
    if n < 1:
        raise InvalidIndex("the split needs total degree k + q >= 1")
    v = orbit_span(b, d)
    c_plus = Fraction(k * (k + 1), 2) - Fraction(q * (q - 1), 2)
    c_minus = c_plus - n
    plus = Subspace.spanned_by(d, n, _apply_shifted(v, c_minus))
    minus = Subspace.spanned_by(d, n, _apply_shifted(v, c_plus))
    if plus.dim + minus.dim != v.dim:
        raise NotInvariant("transposition sum has an unexpected eigenvalue")
    return plus, minus


def orbit_split_dims(b: MixedIndex, d: int) -> tuple[int, int]:
    """Exact ranks of the two split idempotents restricted to orbit_span(b).

    For a label with all indices distinct these are the two hook
    dimensions (C(n-1, q-1), C(n-1, q)).
    """
    plus, minus = orbit_split_spaces(b, d)
    return plus.dim, minus.dim


def action_trace(space: Subspace, p: Permutation):
    """Trace of the slot action of p on an invariant subspace."""
    if p.degree != space.degree:
        raise DimensionMismatch("permutation degree differs from ambient degree")
    total = Fraction(0)
    for i, v in enumerate(space.basis()):
        total += space.coordinates(permute(v, p))[i]
    return total
