"""Polynomial Gaussian model of the mixed blocks.

Take R^d with the standard Gaussian weight.  The degree-k symmetric block
maps onto polynomials through

    label with multiplicities (a_1, ..., a_d)  |->  prod_i He_{a_i}(x_i)

where He_m is the monic (probabilists') Hermite polynomial, He_{m+1} =
x He_m - m He_{m-1}.  Why this is the right dictionary: summing the
labels of h^(.k)/k! over k gives, coordinate by coordinate, the
generating series sum_m c^m He_m(x)/m! = exp(c x - c^2/2), so the
exponential vector of h goes to exp(<h, x> - |h|^2/2); and the Gaussian
moments E[He_a He_b] = a! delta_ab per coordinate reproduce exactly the
permanent pairing of the symmetric block.  Both facts are enforced by the
test suite, exhaustively in low degree.

A mixed block goes to polynomial differential forms: the wedge part is
carried along as the component key.  Under the dictionary, lower becomes
the gradient-and-wedge operator (exterior_derivative) and raise_ becomes
the Gaussian divergence (codifferential); their composite on functions is
the classical number operator x . grad - laplacian (ornstein_uhlenbeck),
diagonal with eigenvalue = total Hermite degree.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Iterable, Mapping

from .errors import DegreeOutOfRange, DimensionMismatch, InvalidIndex
from .tensor_core import FockTensor, MixedIndex, as_coeff, enum_basis


class Poly:
    """Polynomial in x_1..x_dim with exact coefficients, sparse by exponent."""

    __slots__ = ("dim", "coeffs")

    def __init__(self, dim: int, coeffs: Mapping | None = None):
        if dim < 1:
            raise DimensionMismatch(f"number of variables must be >= 1, got {dim}")
        data: dict[tuple[int, ...], object] = {}
        if coeffs:
            for exps, c in coeffs.items():
                exps = tuple(exps)
                if len(exps) != dim or any(e < 0 for e in exps):
                    raise InvalidIndex(f"bad exponent tuple {exps!r} for dim {dim}")
                c = as_coeff(c)
                if c:
                    data[exps] = data.get(exps, 0) + c
                    if not data[exps]:
                        del data[exps]
        self.dim = dim
        self.coeffs = data

    @classmethod
    def zero(cls, dim: int) -> "Poly":
        return cls(dim)

    @classmethod
    def const(cls, dim: int, c) -> "Poly":
        return cls(dim, {(0,) * dim: c})

    @classmethod
    def variable(cls, dim: int, i: int) -> "Poly":
        if not 1 <= i <= dim:
            raise InvalidIndex(f"variable index {i} outside 1..{dim}")
        exps = tuple(1 if j == i else 0 for j in range(1, dim + 1))
        return cls(dim, {exps: 1})

    def is_zero(self) -> bool:
        return not self.coeffs

    def degree(self) -> int:
        if not self.coeffs:
            return -1
        return max(sum(e) for e in self.coeffs)

    def items(self) -> list:
        return sorted(self.coeffs.items())

    def _check_same(self, other: "Poly") -> None:
        if not isinstance(other, Poly):
            raise TypeError(f"expected Poly, got {type(other).__name__}")
        if self.dim != other.dim:
            raise DimensionMismatch(f"variable counts differ: {self.dim} vs {other.dim}")

    def __add__(self, other: "Poly") -> "Poly":
        self._check_same(other)
        out = dict(self.coeffs)
        for e, c in other.coeffs.items():
            cur = out.get(e, 0) + c
            if cur:
                out[e] = cur
            else:
                out.pop(e, None)
        return Poly(self.dim, out)

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def __neg__(self) -> "Poly":
        return self.scale(-1)

    def scale(self, c) -> "Poly":
        c = as_coeff(c)
        if not c:
            return Poly(self.dim)
        return Poly(self.dim, {e: c * v for e, v in self.coeffs.items()})

    def __mul__(self, other):
        if not isinstance(other, Poly):
            return self.scale(other)
        self._check_same(other)
        out: dict[tuple[int, ...], object] = {}
        for e1, c1 in self.coeffs.items():
            for e2, c2 in other.coeffs.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                cur = out.get(e, 0) + c1 * c2
                if cur:
                    out[e] = cur
                else:
                    out.pop(e, None)
        return Poly(self.dim, out)

    def __rmul__(self, c):
        return self.scale(c)

    def diff(self, i: int) -> "Poly":
        """Partial derivative in x_i."""
        if not 1 <= i <= self.dim:
            raise InvalidIndex(f"variable index {i} outside 1..{self.dim}")
        out: dict[tuple[int, ...], object] = {}
        for e, c in self.coeffs.items():
            m = e[i - 1]
            if m:
                new = e[: i - 1] + (m - 1,) + e[i:]
                cur = out.get(new, 0) + m * c
                if cur:
                    out[new] = cur
                else:
                    out.pop(new, None)
        return Poly(self.dim, out)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Poly)
            and self.dim == other.dim
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        raise TypeError("Poly is not hashable")

    def render(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for e, c in self.items():
            mono = "*".join(
                f"x{i}" if m == 1 else f"x{i}^{m}"
                for i, m in enumerate(e, start=1)
                if m
            )
            parts.append(f"{c}*{mono}" if mono else f"{c}")
        return " + ".join(parts)

    def __repr__(self):
        return f"Poly({self.dim}: {self.render()})"


@lru_cache(maxsize=None)
def _he_coeffs(a: int) -> tuple[tuple[int, int], ...]:
    """Monomial coefficients of He_a as ((exponent, coeff), ...)."""
    if a == 0:
        return ((0, 1),)
    if a == 1:
        return ((1, 1),)
    prev2 = dict(_he_coeffs(a - 2))
    prev1 = dict(_he_coeffs(a - 1))
    out: dict[int, int] = {}
    for e, c in prev1.items():
        out[e + 1] = out.get(e + 1, 0) + c
    for e, c in prev2.items():
        out[e] = out.get(e, 0) - (a - 1) * c
    return tuple(sorted((e, c) for e, c in out.items() if c))


@lru_cache(maxsize=None)
def _x_power_in_he(m: int) -> tuple[tuple[int, int], ...]:
    """x^m written in the Hermite basis, via x He_j = He_{j+1} + j He_{j-1}."""
    if m == 0:
        return ((0, 1),)
    out: dict[int, int] = {}
    for j, c in _x_power_in_he(m - 1):
        out[j + 1] = out.get(j + 1, 0) + c
        if j:
            out[j - 1] = out.get(j - 1, 0) + j * c
    return tuple(sorted((j, c) for j, c in out.items() if c))


def hermite(a: int) -> Poly:
    """Monic Hermite polynomial He_a in one variable."""
    if a < 0:
        raise DegreeOutOfRange(f"Hermite degree must be >= 0, got {a}")
    return Poly(1, {(e,): c for e, c in _he_coeffs(a)})


class HermiteExpansion:
    """Exact coordinates of a polynomial in the product Hermite basis.

    Keys are multi-degrees (a_1..a_dim) with coefficient on
    prod_i He_{a_i}(x_i).  The change of basis is triangular with integer
    entries both ways, so from_poly and to_poly are exact inverses.
    """

    __slots__ = ("dim", "coeffs")

    def __init__(self, dim: int, coeffs: Mapping | None = None):
        if dim < 1:
            raise DimensionMismatch(f"number of variables must be >= 1, got {dim}")
        data: dict[tuple[int, ...], object] = {}
        if coeffs:
            for key, c in coeffs.items():
                key = tuple(key)
                if len(key) != dim or any(a < 0 for a in key):
                    raise InvalidIndex(f"bad Hermite multi-degree {key!r}")
                c = as_coeff(c)
                if c:
                    data[key] = data.get(key, 0) + c
                    if not data[key]:
                        del data[key]
        self.dim = dim
        self.coeffs = data

    @classmethod
    def from_poly(cls, p: Poly) -> "HermiteExpansion":
        out: dict[tuple[int, ...], object] = {}
        for exps, c in p.coeffs.items():
            partial: dict[tuple[int, ...], object] = {(): c}
            for m in exps:
                table = _x_power_in_he(m)
                nxt: dict[tuple[int, ...], object] = {}
                for prefix, v in partial.items():
                    for j, w in table:
                        key = prefix + (j,)
                        cur = nxt.get(key, 0) + v * w
                        if cur:
                            nxt[key] = cur
                        else:
                            nxt.pop(key, None)
                partial = nxt
            for key, v in partial.items():
                cur = out.get(key, 0) + v
                if cur:
                    out[key] = cur
                else:
                    out.pop(key, None)
        return cls(p.dim, out)

    def to_poly(self) -> Poly:
        out = Poly.zero(self.dim)
        for key, c in self.coeffs.items():
            partial: dict[tuple[int, ...], object] = {(): c}
            for a in key:
                table = _he_coeffs(a)
                nxt: dict[tuple[int, ...], object] = {}
                for prefix, v in partial.items():
                    for e, w in table:
                        nxt[prefix + (e,)] = v * w
                partial = nxt
            out = out + Poly(self.dim, partial)
        return out

    def total_degrees(self) -> set[int]:
        return {sum(key) for key in self.coeffs}

    def items(self) -> list:
        return sorted(self.coeffs.items())

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, HermiteExpansion)
            and self.dim == other.dim
            and self.coeffs == other.coeffs
        )

    def __repr__(self):
        return f"HermiteExpansion({self.dim}: {dict(self.items())!r})"


class FormField:
    """Polynomial q-form on R^d: component polynomials on wedge keys."""

    __slots__ = ("dim", "q", "comps")

    def __init__(self, dim: int, q: int, comps: Mapping | None = None):
        if dim < 1:
            raise DimensionMismatch(f"ground dimension must be >= 1, got {dim}")
        if q < 0:
            raise DegreeOutOfRange(f"form degree must be >= 0, got {q}")
        data: dict[tuple[int, ...], Poly] = {}
        if comps:
            for key, poly in comps.items():
                key = tuple(key)
                if len(key) != q or any(
                    not 1 <= i <= dim for i in key
                ) or any(a >= b for a, b in zip(key, key[1:])):
                    raise InvalidIndex(f"bad wedge key {key!r} for a {q}-form on R^{dim}")
                if not isinstance(poly, Poly):
                    raise TypeError("components must be Poly")
                if poly.dim != dim:
                    raise DimensionMismatch("component variable count differs from dim")
                if not poly.is_zero():
                    data[key] = data[key] + poly if key in data else poly
                    if data[key].is_zero():
                        del data[key]
        self.dim = dim
        self.q = q
        self.comps = data

    @classmethod
    def zero(cls, dim: int, q: int) -> "FormField":
        return cls(dim, q)

    def is_zero(self) -> bool:
        return not self.comps

    def component(self, key: Iterable[int]) -> Poly:
        return self.comps.get(tuple(key), Poly.zero(self.dim))

    def items(self) -> list:
        return sorted(self.comps.items())

    def _check_same(self, other: "FormField") -> None:
        if not isinstance(other, FormField):
            raise TypeError(f"expected FormField, got {type(other).__name__}")
        if (self.dim, self.q) != (other.dim, other.q):
            raise DimensionMismatch(
                f"form shapes differ: {(self.dim, self.q)} vs {(other.dim, other.q)}"
            )

    def __add__(self, other: "FormField") -> "FormField":
        self._check_same(other)
        out = dict(self.comps)
        for key, p in other.comps.items():
            cur = out.get(key)
            s = cur + p if cur is not None else p
            if s.is_zero():
                out.pop(key, None)
            else:
                out[key] = s
        return FormField(self.dim, self.q, out)

    def __sub__(self, other: "FormField") -> "FormField":
        return self + other.scale(-1)

    def __neg__(self) -> "FormField":
        return self.scale(-1)

    def scale(self, c) -> "FormField":
        c = as_coeff(c)
        if not c:
            return FormField(self.dim, self.q)
        return FormField(self.dim, self.q, {k: p.scale(c) for k, p in self.comps.items()})

    def __mul__(self, c):
        return self.scale(c)

    __rmul__ = __mul__

    def hermite_degrees(self) -> set[int]:
        out: set[int] = set()
        for p in self.comps.values():
            out |= HermiteExpansion.from_poly(p).total_degrees()
        return out

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, FormField)
            and (self.dim, self.q) == (other.dim, other.q)
            and self.comps == other.comps
        )

    def __hash__(self):
        raise TypeError("FormField is not hashable")

    def __repr__(self):
        body = "; ".join(f"{k}: {p.render()}" for k, p in self.items()) or "0"
        return f"FormField({self.dim}, q={self.q}: {body})"


@dataclass(frozen=True)
class GradedFock:
    """Finite stack of symmetric blocks, graded by degree k."""

    dim: int
    parts: dict

    def part(self, k: int) -> FockTensor:
        return self.parts.get(k, FockTensor.zero(self.dim, k, 0))

    def order(self) -> int:
        return max(self.parts, default=0)


def _hermite_monomial(dim: int, mult: tuple[int, ...]) -> Poly:
    """prod_i He_{mult_i}(x_i) as a Poly in dim variables."""
    partial: dict[tuple[int, ...], object] = {(): 1}
    for a in mult:
        table = _he_coeffs(a)
        nxt: dict[tuple[int, ...], object] = {}
        for prefix, v in partial.items():
            for e, w in table:
                nxt[prefix + (e,)] = v * w
        partial = nxt
    return Poly(dim, partial)


def _label_multiplicities(label: MixedIndex, dim: int) -> tuple[int, ...]:
    mult = [0] * dim
    for i in label.sym:
        mult[i - 1] += 1
    return tuple(mult)


def chaos_poly(t: FockTensor) -> Poly:
    """Polynomial of a purely symmetric tensor (q = 0) in the Gaussian model."""
    if t.q != 0:
        raise DegreeOutOfRange(f"chaos_poly needs q = 0, got q = {t.q}")
    if t.k < 0:
        return Poly.zero(t.dim)
    out = Poly.zero(t.dim)
    for label, c in t.coeffs.items():
        out = out + _hermite_monomial(t.dim, _label_multiplicities(label, t.dim)).scale(c)
    return out


def chaos_field(t: FockTensor) -> FormField:
    """Polynomial q-form of a mixed tensor: wedge part becomes the key."""
    if t.k < 0 or t.q > t.dim:
        return FormField.zero(t.dim, max(t.q, 0))
    comps: dict[tuple[int, ...], Poly] = {}
    for label, c in t.coeffs.items():
        p = _hermite_monomial(t.dim, _label_multiplicities(label, t.dim)).scale(c)
        cur = comps.get(label.alt)
        comps[label.alt] = cur + p if cur is not None else p
    return FormField(t.dim, t.q, comps)


def exp_vector(h: Iterable, order: int) -> GradedFock:
    """Truncated exponential vector: degree-k part of exp of h, k <= order.

    The degree-k coefficients on a label with multiplicities a are
    prod_i h_i^{a_i} / a_i!; these are the labels of h^(.k) / k! under the
    package's unnormalized symmetric product.
    """
    hs = [as_coeff(c) for c in h]
    d = len(hs)
    if d < 1:
        raise DimensionMismatch("h must have at least one coordinate")
    if order < 0:
        raise DegreeOutOfRange(f"truncation order must be >= 0, got {order}")
    parts: dict[int, FockTensor] = {}
    for k in range(order + 1):
        coeffs = {}
        for label in enum_basis(d, k, 0):
            mult = _label_multiplicities(label, d)
            c = Fraction(1)
            for hi, a in zip(hs, mult):
                if a:
                    if not hi:
                        c = Fraction(0)
                        break
                    c *= Fraction(hi) ** a / factorial(a)
            if c:
                coeffs[label] = c
        parts[k] = FockTensor(d, k, 0, coeffs)
    return GradedFock(d, parts)


def _wedge_key(i: int, key: tuple[int, ...]) -> tuple[int, tuple[int, ...]] | None:
    if i in key:
        return None
    below = sum(1 for j in key if j < i)
    return (-1) ** below, key[:below] + (i,) + key[below:]


def exterior_derivative(u: FormField) -> FormField:
    """Gradient wedged onto each component: (q+1)-form of d applied to u."""
    comps: dict[tuple[int, ...], Poly] = {}
    for key, f in u.comps.items():
        for i in range(1, u.dim + 1):
            g = f.diff(i)
            if g.is_zero():
                continue
            ins = _wedge_key(i, key)
            if ins is None:
                continue
            sign, new = ins
            g = g.scale(sign)
            cur = comps.get(new)
            s = cur + g if cur is not None else g
            if s.is_zero():
                comps.pop(new, None)
            else:
                comps[new] = s
    return FormField(u.dim, u.q + 1, comps)


def codifferential(u: FormField) -> FormField:
    """Gaussian divergence: on f * e_J it contracts each wedge slot j_i with
    the creation operator x_{j_i} f - df/dx_{j_i}, signs alternating."""
    if u.q == 0:
        raise DegreeOutOfRange("codifferential needs form degree q >= 1")
    comps: dict[tuple[int, ...], Poly] = {}
    for key, f in u.comps.items():
        for pos, j in enumerate(key):
            term = Poly.variable(u.dim, j) * f - f.diff(j)
            if pos % 2:
                term = -term
            new = key[:pos] + key[pos + 1 :]
            cur = comps.get(new)
            s = cur + term if cur is not None else term
            if s.is_zero():
                comps.pop(new, None)
            else:
                comps[new] = s
    return FormField(u.dim, u.q - 1, comps)


def _as_form(f) -> FormField:
    if isinstance(f, FormField):
        return f
    if isinstance(f, Poly):
        return FormField(f.dim, 0, {(): f} if not f.is_zero() else None)
    raise TypeError(f"expected Poly or FormField, got {type(f).__name__}")


def ornstein_uhlenbeck(f: Poly) -> Poly:
    """Number operator x . grad - laplacian; He-diagonal with eigenvalue
    equal to the total Hermite degree."""
    return codifferential(exterior_derivative(_as_form(f))).component(())


def hodge_laplacian(u) -> FormField:
    """codifferential(exterior_derivative(u)) plus the q >= 1 mirror term."""
    u = _as_form(u)
    out = codifferential(exterior_derivative(u))
    if u.q >= 1:
        out = out + exterior_derivative(codifferential(u))
    return out


def gaussian_inner(u, v):
    """Gaussian expectation pairing: sum over wedge keys of E[f_J g_J].

    Computed through the Hermite expansions, E[He_a He_b] = a! delta_ab
    coordinate-wise; exact, no quadrature.
    """
    u = _as_form(u)
    v = _as_form(v)
    u._check_same(v)
    total = Fraction(0)
    for key, f in u.comps.items():
        g = v.comps.get(key)
        if g is None:
            continue
        fe = HermiteExpansion.from_poly(f).coeffs
        ge = HermiteExpansion.from_poly(g).coeffs
        small, big = (fe, ge) if len(fe) <= len(ge) else (ge, fe)
        for a, c in small.items():
            other = big.get(a)
            if other:
                weight = 1
                for ai in a:
                    weight *= factorial(ai)
                total += c * other * weight
    return total


def expectation(f: Poly):
    """Exact Gaussian mean: the degree-zero Hermite coefficient."""
    return Fraction(
        HermiteExpansion.from_poly(f).coeffs.get((0,) * f.dim, 0)
    )


def commutation_defect(h: Iterable, x: tuple[int, ...], order: int) -> FormField:
    """Mismatch of the two routes around the chaos square at one truncation.

    Route one: exterior_derivative of the chaos field of
    (truncated exponential vector of h) tensor (wedge x).  Route two: the
    chaos field of (same truncation) tensor (h wedge x).  Without
    truncation the two agree; truncating at `order` leaves a defect
    supported purely in Hermite degree `order`, the top chunk that route
    one differentiates away but route two keeps.
    """
    if order < 1:
        raise DegreeOutOfRange(f"truncation order must be >= 1, got {order}")
    hs = [as_coeff(c) for c in h]
    d = len(hs)
    x = tuple(x)
    if any(not 1 <= i <= d for i in x) or any(a >= b for a, b in zip(x, x[1:])):
        raise InvalidIndex(f"x must be a strictly increasing tuple in 1..{d}")
    q = len(x)
    graded = exp_vector(hs, order)

    def tensor_with(key: tuple[int, ...]) -> FormField:
        acc = FormField.zero(d, len(key))
        for k in range(order + 1):
            part = graded.part(k)
            coeffs = {
                MixedIndex(label.sym, key): c for label, c in part.coeffs.items()
            }
            acc = acc + chaos_field(FockTensor(d, k, len(key), coeffs))
        return acc

    left = exterior_derivative(tensor_with(x))
    right = FormField.zero(d, q + 1)
    for i in range(1, d + 1):
        if not hs[i - 1]:
            continue
        ins = _wedge_key(i, x)
        if ins is None:
            continue
        sign, new = ins
        right = right + tensor_with(new).scale(sign * hs[i - 1])
    return left - right
