"""Degree-n commutation identity, exact sequences and the two-term split.

On H_{k,q} with n = k + q >= 1 the composites raise_ . lower and
lower . raise_ sum to n times the identity (boundary composites through a
missing block count as zero).  Dividing by n yields two complementary
idempotents: the image of lower . raise_ is killed by lower, the image of
raise_ . lower is killed by raise_, and the two pieces are orthogonal.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from .errors import DegreeOutOfRange
from .fock_ops import LinearMap, Permutation, lower, operator_matrix, permute, raise_
from .linalg import matrix_rank
from .tensor_core import FockTensor, FullTensor, MixedIndex, embed, enum_basis


def weitzenboeck_defect(d: int, k: int, q: int) -> Fraction:
    """Largest |entry| of raise_ . lower + lower . raise_ - (k+q) * id.

    Computed on exact integer matrices; the identity holds iff this is 0.
    Boundary terms (k = 0 or q = 0) are zero maps.
    """
    basis = enum_basis(d, k, q)
    if not basis:
        return Fraction(0)
    n = k + q
    sig = (d, k, q)
    total = LinearMap.zero(sig, basis, sig, basis)
    if k >= 1:
        total = total + operator_matrix("raise", d, k - 1, q + 1) @ operator_matrix(
            "lower", d, k, q
        )
    if q >= 1:
        total = total + operator_matrix("lower", d, k + 1, q - 1) @ operator_matrix(
            "raise", d, k, q
        )
    defect = total - LinearMap.identity(sig, basis).scale(n)
    return defect.max_abs_entry()


def hodge_split(t: FockTensor) -> tuple[FockTensor, FockTensor]:
    """Split t = plus + minus with lower(plus) = 0 and raise_(minus) = 0.

    plus  = lower(raise_(t)) / n   (zero when q = 0),
    minus = raise_(lower(t)) / n   (zero when k = 0),
    n = k + q >= 1; n = 0 has no split and raises DegreeOutOfRange.
    """
    n = t.k + t.q
    if n < 1:
        raise DegreeOutOfRange("the split needs total degree k + q >= 1")
    if t.q >= 1:
        plus = lower(raise_(t)) / n
    else:
        plus = FockTensor.zero(t.dim, t.k, t.q)
    if t.k >= 1:
        minus = raise_(lower(t)) / n
    else:
        minus = FockTensor.zero(t.dim, t.k, t.q)
    return plus, minus


@dataclass(frozen=True)
class ExactnessRow:
    """Exact rank data of one block H_{k,q} inside the degree-n complex."""

    k: int
    q: int
    dim: int
    rank_lower: int
    ker_lower: int
    rank_raise: int
    ker_raise: int
    harmonic_dim: int

    def as_dict(self) -> dict:
        return {
            "k": self.k,
            "q": self.q,
            "dim": self.dim,
            "rank_lower": self.rank_lower,
            "ker_lower": self.ker_lower,
            "rank_raise": self.rank_raise,
            "ker_raise": self.ker_raise,
            "harmonic_dim": self.harmonic_dim,
        }


@dataclass(frozen=True)
class ExactnessReport:
    """Rank bookkeeping for both degree-n sequences over R^d.

    Rows run k = n down to 0.  The lower maps form
    sym^n -> H_{n-1,1} -> ... -> wedge^n -> 0 and the raise_ maps run the
    other way; at the ends the missing operator counts as the zero map.
    """

    d: int
    n: int
    rows: tuple[ExactnessRow, ...]

    def row(self, k: int) -> ExactnessRow:
        for r in self.rows:
            if r.k == k:
                return r
        raise KeyError(k)

    def lower_exact(self) -> bool:
        """Ker(lower on H_{k,q}) = Im(lower from H_{k+1,q-1}) at every k."""
        for r in self.rows:
            incoming = self.row(r.k + 1).rank_lower if r.k < self.n else 0
            if r.ker_lower != incoming:
                return False
        return True

    def raise_exact(self) -> bool:
        """Ker(raise_ on H_{k,q}) = Im(raise_ from H_{k-1,q+1}) at every k."""
        for r in self.rows:
            incoming = self.row(r.k - 1).rank_raise if r.k > 0 else 0
            if r.ker_raise != incoming:
                return False
        return True

    def harmonic_trivial(self) -> bool:
        return all(r.harmonic_dim == 0 for r in self.rows)

    def rank_nullity_ok(self) -> bool:
        return all(
            r.rank_lower + r.ker_lower == r.dim and r.rank_raise + r.ker_raise == r.dim
            for r in self.rows
        )

    def is_exact(self) -> bool:
        return self.lower_exact() and self.raise_exact() and self.harmonic_trivial()

    def as_dict(self) -> dict:
        return {
            "d": self.d,
            "n": self.n,
            "rows": [r.as_dict() for r in self.rows],
            "lower_exact": self.lower_exact(),
            "raise_exact": self.raise_exact(),
            "harmonic_trivial": self.harmonic_trivial(),
        }


def exactness_report(d: int, n: int) -> ExactnessReport:
    """Exact ranks, kernels and harmonic dimensions for total degree n >= 1.

    The harmonic dimension of a block is the kernel of the stacked matrix
    (lower on top of raise_), i.e. dim(Ker lower intersect Ker raise_);
    end-of-sequence operators are zero maps.
    """
    if n < 1:
        raise DegreeOutOfRange("the report needs total degree n >= 1")
    rows = []
    for k in range(n, -1, -1):
        q = n - k
        basis = enum_basis(d, k, q)
        dim = len(basis)
        if dim == 0:
            rows.append(ExactnessRow(k, q, 0, 0, 0, 0, 0, 0))
            continue
        m_lower = operator_matrix("lower", d, k, q)
        m_raise = operator_matrix("raise", d, k, q) if q >= 1 else None
        rank_lower = m_lower.rank()
        rank_raise = m_raise.rank() if m_raise is not None else 0
        stacked_cols: list[dict] = [{} for _ in range(dim)]
        for (r, c), v in m_lower.entries.items():
            stacked_cols[c][("L", r)] = v
        if m_raise is not None:
            for (r, c), v in m_raise.entries.items():
                stacked_cols[c][("R", r)] = v
        harmonic = dim - matrix_rank(stacked_cols)
        rows.append(
            ExactnessRow(
                k, q, dim, rank_lower, dim - rank_lower, rank_raise, dim - rank_raise, harmonic
            )
        )
    return ExactnessReport(d, n, tuple(rows))


def witnesses(b: MixedIndex, d: int) -> tuple[FullTensor, FullTensor]:
    """Explicit members of the two neighbouring position-set families.

    For a label b with k, q >= 1 and w = embed(b), n = k + q:

      vplus  = (1/(k+1)) * sum_{l=1..k+1} (l <-> k+1) w
      vminus = (1/(q+1)) * (w - sum_{m=k+1..n} (k <-> m) w)

    vplus is symmetric in slots 1..k+1 and alternating in the rest;
    vminus is symmetric in slots 1..k-1 and alternating in slots k..n.
    """
    k, q = len(b.sym), len(b.alt)
    if k < 1 or q < 1:
        raise DegreeOutOfRange("witnesses need k >= 1 and q >= 1")
    n = k + q
    w = embed(FockTensor.basis(d, b))
    acc = FullTensor.zero(d, n)
    for l in range(1, k + 2):
        acc = acc + permute(w, Permutation.transposition(n, l, k + 1))
    vplus = acc / (k + 1)
    acc = w
    for m in range(k + 1, n + 1):
        acc = acc - permute(w, Permutation.transposition(n, k, m))
    vminus = acc / (q + 1)
    return vplus, vminus


def random_tensor(d: int, k: int, q: int, rng: random.Random) -> FockTensor:
    """Deterministic pseudo-random element: coefficients uniform in -9..9."""
    coeffs = {}
    for label in enum_basis(d, k, q):
        c = rng.randint(-9, 9)
        if c:
            coeffs[label] = c
    return FockTensor(d, k, q, coeffs)
