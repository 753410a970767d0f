"""Vectors, linear maps, and binary-ternary algebras with a twisting endomorphism.

An algebra is given over a labeled basis by exact structure constants:
``binary[i][j][k]`` is the e_k coordinate of e_i * e_j, ``ternary[i][j][k][l]``
the e_l coordinate of {e_i, e_j, e_k}, and ``twist`` a square matrix whose
column j is the image of e_j.  All entries are Scalars, so every evaluation
is exact and symbolic parameters ride along for free.
"""

from __future__ import annotations

from .errors import DimensionMismatch
from .scalars import Scalar, ZERO, ONE

__all__ = [
    "Vector",
    "LinearMap",
    "HomAlgebra",
    "is_weak_morphism",
    "is_morphism",
    "first_weak_morphism_failure",
    "zero_binary_tensor",
    "zero_ternary_tensor",
]


def _as_scalar(x):
    s = Scalar._coerce(x)
    if s is None:
        raise TypeError(f"expected a scalar-like value, got {x!r}")
    return s


def _as_coords(seq, dim):
    coords = tuple(_as_scalar(x) for x in seq)
    if len(coords) != dim:
        raise DimensionMismatch(f"expected {dim} coordinates, got {len(coords)}")
    return coords


class Vector:
    """An element of the algebra, as exact coordinates over the basis."""

    __slots__ = ("coords",)

    def __init__(self, coords):
        self.coords = tuple(_as_scalar(x) for x in coords)

    @classmethod
    def zero(cls, dim):
        v = cls.__new__(cls)
        v.coords = (ZERO,) * dim
        return v

    @classmethod
    def basis(cls, i, dim):
        v = cls.__new__(cls)
        v.coords = tuple(ONE if j == i else ZERO for j in range(dim))
        return v

    @property
    def dim(self):
        return len(self.coords)

    def is_zero(self):
        return all(c.is_zero() for c in self.coords)

    def scale(self, s):
        s = _as_scalar(s)
        return Vector(c * s for c in self.coords)

    def __add__(self, other):
        if not isinstance(other, Vector):
            return NotImplemented
        if len(self.coords) != len(other.coords):
            raise DimensionMismatch("vector dimensions differ")
        return Vector(a + b for a, b in zip(self.coords, other.coords))

    def __sub__(self, other):
        if not isinstance(other, Vector):
            return NotImplemented
        if len(self.coords) != len(other.coords):
            raise DimensionMismatch("vector dimensions differ")
        return Vector(a - b for a, b in zip(self.coords, other.coords))

    def __neg__(self):
        return Vector(-c for c in self.coords)

    def __eq__(self, other):
        if not isinstance(other, Vector):
            return NotImplemented
        return self.coords == other.coords

    def __hash__(self):
        return hash(self.coords)

    def __str__(self):
        return f"({', '.join(str(c) for c in self.coords)})"

    def __repr__(self):
        return f"Vector(({', '.join(str(c) for c in self.coords)}))"


class LinearMap:
    """A square matrix of Scalars; column j is the image of basis vector e_j."""

    __slots__ = ("rows",)

    def __init__(self, rows):
        rows = tuple(tuple(_as_scalar(x) for x in row) for row in rows)
        dim = len(rows)
        for row in rows:
            if len(row) != dim:
                raise DimensionMismatch("linear map matrix must be square")
        self.rows = rows

    @classmethod
    def identity(cls, dim):
        return cls(tuple(tuple(ONE if i == j else ZERO for j in range(dim)) for i in range(dim)))

    @classmethod
    def from_columns(cls, cols):
        cols = tuple(tuple(_as_scalar(x) for x in col) for col in cols)
        dim = len(cols)
        return cls(tuple(tuple(cols[j][i] for j in range(dim)) for i in range(dim)))

    @property
    def dim(self):
        return len(self.rows)

    def column(self, j):
        return Vector(row[j] for row in self.rows)

    def apply(self, v):
        if not isinstance(v, Vector):
            v = Vector(v)
        if v.dim != self.dim:
            raise DimensionMismatch("map and vector dimensions differ")
        out = [ZERO] * self.dim
        for j, vj in enumerate(v.coords):
            if vj.is_zero():
                continue
            for i in range(self.dim):
                entry = self.rows[i][j]
                if not entry.is_zero():
                    out[i] = out[i] + entry * vj
        return Vector(out)

    def compose(self, other):
        """self after other (matrix product self . other)."""
        if not isinstance(other, LinearMap) or other.dim != self.dim:
            raise DimensionMismatch("composed maps must share one dimension")
        n = self.dim
        rows = []
        for i in range(n):
            row = []
            for j in range(n):
                acc = ZERO
                for k in range(n):
                    a = self.rows[i][k]
                    b = other.rows[k][j]
                    if not a.is_zero() and not b.is_zero():
                        acc = acc + a * b
                row.append(acc)
            rows.append(tuple(row))
        return LinearMap(tuple(rows))

    def power(self, k):
        if not isinstance(k, int) or k < 0:
            raise ValueError("map powers take a nonnegative integer exponent")
        result = LinearMap.identity(self.dim)
        base = self
        while k:
            if k & 1:
                result = result.compose(base)
            k >>= 1
            if k:
                base = base.compose(base)
        return result

    def is_identity(self):
        return self == LinearMap.identity(self.dim)

    def is_zero(self):
        return all(c.is_zero() for row in self.rows for c in row)

    def commutes_with(self, other):
        return self.compose(other) == other.compose(self)

    def variables(self):
        names = set()
        for row in self.rows:
            for entry in row:
                names |= entry.variables()
        return frozenset(names)

    def __eq__(self, other):
        if not isinstance(other, LinearMap):
            return NotImplemented
        return self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def __repr__(self):
        body = "; ".join(", ".join(str(c) for c in row) for row in self.rows)
        return f"LinearMap([{body}])"


def zero_binary_tensor(dim):
    cell = (ZERO,) * dim
    return tuple(tuple(cell for _ in range(dim)) for _ in range(dim))


def zero_ternary_tensor(dim):
    cell = (ZERO,) * dim
    return tuple(tuple(tuple(cell for _ in range(dim)) for _ in range(dim)) for _ in range(dim))


class HomAlgebra:
    """A finite-dimensional binary-ternary algebra together with a twisting map."""

    __slots__ = ("dim", "basis", "params", "binary", "ternary", "twist")

    def __init__(self, dim, basis=None, params=(), binary=None, ternary=None, twist=None):
        if dim < 1:
            raise ValueError("dimension must be positive")
        self.dim = dim
        if basis is None:
            basis = tuple(f"e{i + 1}" for i in range(dim))
        basis = tuple(basis)
        if len(basis) != dim or len(set(basis)) != dim:
            raise ValueError("basis labels must be distinct and match the dimension")
        self.basis = basis
        self.params = frozenset(params)
        binary = zero_binary_tensor(dim) if binary is None else binary
        ternary = zero_ternary_tensor(dim) if ternary is None else ternary
        if len(binary) != dim or any(len(row) != dim for row in binary):
            raise DimensionMismatch("binary tensor shape does not match the dimension")
        self.binary = tuple(tuple(_as_coords(cell, dim) for cell in row) for row in binary)
        if len(ternary) != dim or any(
            len(plane) != dim or any(len(row) != dim for row in plane) for plane in ternary
        ):
            raise DimensionMismatch("ternary tensor shape does not match the dimension")
        self.ternary = tuple(
            tuple(tuple(_as_coords(cell, dim) for cell in row) for row in plane) for plane in ternary
        )
        if twist is None:
            twist = LinearMap.identity(dim)
        if twist.dim != dim:
            raise DimensionMismatch("twist matrix shape does not match the dimension")
        self.twist = twist

    def replace(self, **kwargs):
        fields = {
            "dim": self.dim,
            "basis": self.basis,
            "params": self.params,
            "binary": self.binary,
            "ternary": self.ternary,
            "twist": self.twist,
        }
        fields.update(kwargs)
        return HomAlgebra(**fields)

    def basis_vector(self, i):
        return Vector.basis(i, self.dim)

    def eval_binary(self, u, v):
        if u.dim != self.dim or v.dim != self.dim:
            raise DimensionMismatch("operands do not match the algebra dimension")
        out = [ZERO] * self.dim
        for i, ui in enumerate(u.coords):
            if ui.is_zero():
                continue
            for j, vj in enumerate(v.coords):
                if vj.is_zero():
                    continue
                cell = self.binary[i][j]
                factor = ui * vj
                for k in range(self.dim):
                    c = cell[k]
                    if not c.is_zero():
                        out[k] = out[k] + factor * c
        return Vector(out)

    def eval_ternary(self, u, v, w):
        if u.dim != self.dim or v.dim != self.dim or w.dim != self.dim:
            raise DimensionMismatch("operands do not match the algebra dimension")
        out = [ZERO] * self.dim
        for i, ui in enumerate(u.coords):
            if ui.is_zero():
                continue
            for j, vj in enumerate(v.coords):
                if vj.is_zero():
                    continue
                uv = ui * vj
                for k, wk in enumerate(w.coords):
                    if wk.is_zero():
                        continue
                    cell = self.ternary[i][j][k]
                    factor = uv * wk
                    for l in range(self.dim):
                        c = cell[l]
                        if not c.is_zero():
                            out[l] = out[l] + factor * c
        return Vector(out)

    def binary_value(self, i, j):
        return Vector(self.binary[i][j])

    def ternary_value(self, i, j, k):
        return Vector(self.ternary[i][j][k])

    def is_multiplicative(self):
        """Whether the twist preserves both products (is a weak self-morphism)."""
        return first_weak_morphism_failure(self.twist, self, self) is None

    def all_variables(self):
        names = set(self.params)
        for row in self.binary:
            for cell in row:
                for c in cell:
                    names |= c.variables()
        for plane in self.ternary:
            for row in plane:
                for cell in row:
                    for c in cell:
                        names |= c.variables()
        names |= self.twist.variables()
        return frozenset(names)

    def __eq__(self, other):
        if not isinstance(other, HomAlgebra):
            return NotImplemented
        # declared parameter sets are bookkeeping, not algebra structure
        return (
            self.dim == other.dim
            and self.basis == other.basis
            and self.binary == other.binary
            and self.ternary == other.ternary
            and self.twist == other.twist
        )

    def __repr__(self):
        return f"HomAlgebra(dim={self.dim}, basis={self.basis})"


def first_weak_morphism_failure(theta, src, dst):
    """First basis pair/triple where theta fails to intertwine the products.

    Returns None when theta is a weak morphism, else ("binary"|"ternary",
    index tuple, residual Vector), scanning pairs before triples in
    lexicographic index order.
    """
    if src.dim != dst.dim or theta.dim != src.dim:
        raise DimensionMismatch("morphism check needs equal dimensions")
    n = src.dim
    images = [theta.column(j) for j in range(n)]
    for i in range(n):
        for j in range(n):
            lhs = theta.apply(src.binary_value(i, j))
            rhs = dst.eval_binary(images[i], images[j])
            residual = lhs - rhs
            if not residual.is_zero():
                return ("binary", (i, j), residual)
    for i in range(n):
        for j in range(n):
            for k in range(n):
                lhs = theta.apply(src.ternary_value(i, j, k))
                rhs = dst.eval_ternary(images[i], images[j], images[k])
                residual = lhs - rhs
                if not residual.is_zero():
                    return ("ternary", (i, j, k), residual)
    return None


def is_weak_morphism(theta, src, dst):
    """True iff theta intertwines both products on all basis tuples."""
    return first_weak_morphism_failure(theta, src, dst) is None


def is_morphism(theta, src, dst):
    """A weak morphism that also intertwines the twists."""
    if not is_weak_morphism(theta, src, dst):
        return False
    return theta.compose(src.twist) == dst.twist.compose(theta)
