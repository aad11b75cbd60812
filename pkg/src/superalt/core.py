"""Graded substrate: Z2-graded spaces, even maps, even bilinear products.

Basis convention: indices 0..n0-1 are even, n0..n0+n1-1 are odd, so parity
is a function of the index.  All tensors are dense tuples of exact scalars;
evaluation skips zeros, which keeps desk-scale instances fast.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from .fields import Field, FieldError, QQ  # noqa: F401  (QQ re-exported for convenience)


class ValidationError(ValueError):
    """Carries the complete list of violated constraints, not just the first."""

    def __init__(self, errors: Sequence[str]):
        self.errors = list(errors)
        super().__init__("; ".join(self.errors))


@dataclass(frozen=True)
class SuperSpace:
    field: Field
    even: int
    odd: int

    def __post_init__(self):
        if self.even < 0 or self.odd < 0:
            raise ValidationError([f"negative dimensions ({self.even}, {self.odd})"])

    @property
    def dim(self) -> int:
        return self.even + self.odd

    @property
    def dims(self) -> tuple[int, int]:
        return (self.even, self.odd)

    def parity(self, i: int) -> int:
        if not 0 <= i < self.dim:
            raise IndexError(f"basis index {i} out of range for dim {self.dim}")
        return 0 if i < self.even else 1

    def indices(self) -> range:
        return range(self.dim)

    def indices_of_parity(self, par: int) -> range:
        return range(self.even) if par == 0 else range(self.even, self.dim)


class Vector:
    """Element of a SuperSpace: dense coordinate tuple over the space's field."""

    __slots__ = ("space", "coords")

    def __init__(self, space: SuperSpace, coords):
        coords = tuple(space.field.coerce(c) for c in coords)
        if len(coords) != space.dim:
            raise ValidationError(
                [f"vector has {len(coords)} coordinates, space has dim {space.dim}"]
            )
        self.space = space
        self.coords = coords

    @classmethod
    def zero(cls, space: SuperSpace) -> "Vector":
        return cls(space, [space.field.zero] * space.dim)

    @classmethod
    def basis(cls, space: SuperSpace, i: int) -> "Vector":
        z = space.field.zero
        one = space.field.one
        return cls(space, [one if j == i else z for j in range(space.dim)])

    def is_zero(self) -> bool:
        return not any(self.coords)

    def support(self) -> list[int]:
        return [i for i, c in enumerate(self.coords) if c]

    def parity(self) -> Optional[int]:
        """0 or 1 if the support is homogeneous, None for zero or mixed."""
        pars = {self.space.parity(i) for i in self.support()}
        if len(pars) == 1:
            return pars.pop()
        return None

    def _check_space(self, other: "Vector"):
        if self.space != other.space:
            raise ValidationError(["vectors live in different spaces"])

    def __add__(self, other: "Vector") -> "Vector":
        self._check_space(other)
        return Vector(self.space, [a + b for a, b in zip(self.coords, other.coords)])

    def __sub__(self, other: "Vector") -> "Vector":
        self._check_space(other)
        return Vector(self.space, [a - b for a, b in zip(self.coords, other.coords)])

    def __neg__(self) -> "Vector":
        return Vector(self.space, [-a for a in self.coords])

    def scaled(self, s) -> "Vector":
        s = self.space.field.coerce(s)
        return Vector(self.space, [s * a for a in self.coords])

    def __eq__(self, other):
        if not isinstance(other, Vector):
            return NotImplemented
        return self.space == other.space and self.coords == other.coords

    def __hash__(self):
        return hash((self.space, self.coords))

    def __repr__(self):
        return f"Vector{self.coords}"


class EvenMap:
    """Parity-preserving linear map.  Column j is the image of basis vector j."""

    __slots__ = ("domain", "codomain", "entries", "_cols")

    def __init__(self, domain: SuperSpace, codomain: SuperSpace, entries):
        errors = []
        if domain.field != codomain.field:
            errors.append("domain and codomain use different scalar fields")
            raise ValidationError(errors)
        field = domain.field
        rows = []
        for row in entries:
            rows.append(tuple(field.coerce(v) for v in row))
        entries = tuple(rows)
        if len(entries) != codomain.dim or any(len(r) != domain.dim for r in entries):
            errors.append(
                f"matrix shape {len(entries)}x{len(entries[0]) if entries else 0} "
                f"does not match codomain x domain = {codomain.dim}x{domain.dim}"
            )
            raise ValidationError(errors)
        for i in range(codomain.dim):
            for j in range(domain.dim):
                if entries[i][j] and codomain.parity(i) != domain.parity(j):
                    errors.append(f"odd block entry at ({i}, {j}) must vanish")
        if errors:
            raise ValidationError(errors)
        self.domain = domain
        self.codomain = codomain
        self.entries = entries
        cols = []
        for j in range(domain.dim):
            cols.append(tuple((i, entries[i][j]) for i in range(codomain.dim) if entries[i][j]))
        self._cols = tuple(cols)

    @classmethod
    def identity(cls, space: SuperSpace) -> "EvenMap":
        z, one = space.field.zero, space.field.one
        n = space.dim
        return cls(space, space, [[one if i == j else z for j in range(n)] for i in range(n)])

    @classmethod
    def zero(cls, domain: SuperSpace, codomain: SuperSpace | None = None) -> "EvenMap":
        codomain = codomain or domain
        z = domain.field.zero
        return cls(domain, codomain, [[z] * domain.dim for _ in range(codomain.dim)])

    @classmethod
    def diagonal(cls, space: SuperSpace, diag) -> "EvenMap":
        z = space.field.zero
        n = space.dim
        diag = list(diag)
        return cls(space, space, [[diag[i] if i == j else z for j in range(n)] for i in range(n)])

    def apply(self, x: Vector) -> Vector:
        if x.space != self.domain:
            raise ValidationError(["map applied to vector outside its domain"])
        acc = [self.codomain.field.zero] * self.codomain.dim
        for j, xv in enumerate(x.coords):
            if not xv:
                continue
            for i, m in self._cols[j]:
                acc[i] = acc[i] + m * xv
        return Vector(self.codomain, acc)

    def image_of_basis(self, j: int) -> Vector:
        z = self.codomain.field.zero
        col = [z] * self.codomain.dim
        for i, m in self._cols[j]:
            col[i] = m
        return Vector(self.codomain, col)

    def compose(self, other: "EvenMap") -> "EvenMap":
        """self after other."""
        if other.codomain != self.domain:
            raise ValidationError(["composition domain mismatch"])
        z = self.codomain.field.zero
        rows = [[z] * other.domain.dim for _ in range(self.codomain.dim)]
        for j in range(other.domain.dim):
            for k, ov in other._cols[j]:
                for i, sv in self._cols[k]:
                    rows[i][j] = rows[i][j] + sv * ov
        return EvenMap(other.domain, self.codomain, rows)

    def power(self, k: int) -> "EvenMap":
        if self.domain != self.codomain:
            raise ValidationError(["power of a non-endomap"])
        if k < 0:
            raise ValidationError(["negative map power"])
        result = EvenMap.identity(self.domain)
        base = self
        while k:
            if k & 1:
                result = result.compose(base)
            base = base.compose(base) if k > 1 else base
            k >>= 1
        return result

    def __add__(self, other: "EvenMap") -> "EvenMap":
        if self.domain != other.domain or self.codomain != other.codomain:
            raise ValidationError(["map sum shape mismatch"])
        return EvenMap(
            self.domain,
            self.codomain,
            [[a + b for a, b in zip(r1, r2)] for r1, r2 in zip(self.entries, other.entries)],
        )

    def scaled(self, s) -> "EvenMap":
        s = self.domain.field.coerce(s)
        return EvenMap(self.domain, self.codomain, [[s * v for v in r] for r in self.entries])

    def commutes_with(self, other: "EvenMap") -> bool:
        return self.compose(other) == other.compose(self)

    def __eq__(self, other):
        if not isinstance(other, EvenMap):
            return NotImplemented
        return (
            self.domain == other.domain
            and self.codomain == other.codomain
            and self.entries == other.entries
        )

    def __hash__(self):
        return hash((self.domain, self.codomain, self.entries))

    def __repr__(self):
        return f"EvenMap({self.codomain.dim}x{self.domain.dim})"


class EvenBilinear:
    """Even bilinear map left x right -> out, stored as c[i][j][k].

    c[i][j][k] is the coefficient of out-basis k in (left-basis i) * (right-basis j);
    it must vanish unless parity(k) = parity(i) + parity(j) mod 2.
    """

    __slots__ = ("left", "right", "out", "c", "_rows")

    def __init__(self, left: SuperSpace, right: SuperSpace, out: SuperSpace, c):
        errors = []
        if not (left.field == right.field == out.field):
            raise ValidationError(["bilinear map factors use different scalar fields"])
        field = left.field
        cube = tuple(
            tuple(tuple(field.coerce(v) for v in row) for row in plane) for plane in c
        )
        if (
            len(cube) != left.dim
            or any(len(p) != right.dim for p in cube)
            or any(len(r) != out.dim for p in cube for r in p)
        ):
            raise ValidationError(
                [f"tensor shape does not match dims {left.dim}x{right.dim}x{out.dim}"]
            )
        for i in range(left.dim):
            pi = left.parity(i)
            for j in range(right.dim):
                pj = right.parity(j)
                for k in range(out.dim):
                    if cube[i][j][k] and out.parity(k) != (pi + pj) % 2:
                        errors.append(f"parity-violating entry at ({i}, {j}, {k})")
        if errors:
            raise ValidationError(errors)
        self.left = left
        self.right = right
        self.out = out
        self.c = cube
        self._rows = tuple(
            tuple(
                tuple((k, v) for k, v in enumerate(cube[i][j]) if v)
                for j in range(right.dim)
            )
            for i in range(left.dim)
        )

    @classmethod
    def zero(cls, left: SuperSpace, right: SuperSpace, out: SuperSpace) -> "EvenBilinear":
        z = left.field.zero
        return cls(
            left,
            right,
            out,
            [[[z] * out.dim for _ in range(right.dim)] for _ in range(left.dim)],
        )

    @classmethod
    def from_entries(
        cls, left: SuperSpace, right: SuperSpace, out: SuperSpace, entries
    ) -> "EvenBilinear":
        """Build from sparse entries [(i, j, k, value), ...]."""
        z = left.field.zero
        cube = [[[z] * out.dim for _ in range(right.dim)] for _ in range(left.dim)]
        for i, j, k, v in entries:
            cube[i][j][k] = cube[i][j][k] + left.field.coerce(v)
        return cls(left, right, out, cube)

    def sparse_entries(self):
        out = []
        for i in range(self.left.dim):
            for j in range(self.right.dim):
                for k, v in self._rows[i][j]:
                    out.append((i, j, k, v))
        return out

    def apply(self, x: Vector, y: Vector) -> Vector:
        if x.space != self.left or y.space != self.right:
            raise ValidationError(["bilinear map applied outside its spaces"])
        acc = [self.out.field.zero] * self.out.dim
        for i, xv in enumerate(x.coords):
            if not xv:
                continue
            row = self._rows[i]
            for j, yv in enumerate(y.coords):
                if not yv:
                    continue
                s = xv * yv
                for k, cv in row[j]:
                    acc[k] = acc[k] + s * cv
        return Vector(self.out, acc)

    def pair_of_basis(self, i: int, j: int) -> Vector:
        z = self.out.field.zero
        acc = [z] * self.out.dim
        for k, v in self._rows[i][j]:
            acc[k] = v
        return Vector(self.out, acc)

    def __add__(self, other: "EvenBilinear") -> "EvenBilinear":
        if (self.left, self.right, self.out) != (other.left, other.right, other.out):
            raise ValidationError(["bilinear sum shape mismatch"])
        return EvenBilinear(
            self.left,
            self.right,
            self.out,
            [
                [
                    [a + b for a, b in zip(r1, r2)]
                    for r1, r2 in zip(p1, p2)
                ]
                for p1, p2 in zip(self.c, other.c)
            ],
        )

    def scaled(self, s) -> "EvenBilinear":
        s = self.left.field.coerce(s)
        return EvenBilinear(
            self.left,
            self.right,
            self.out,
            [[[s * v for v in row] for row in plane] for plane in self.c],
        )

    def post_compose(self, m: EvenMap) -> "EvenBilinear":
        """m applied to every output:  (x, y) -> m(x * y)."""
        if m.domain != self.out:
            raise ValidationError(["post-composition domain mismatch"])
        z = m.codomain.field.zero
        cube = [
            [[z] * m.codomain.dim for _ in range(self.right.dim)]
            for _ in range(self.left.dim)
        ]
        for i in range(self.left.dim):
            for j in range(self.right.dim):
                row = cube[i][j]
                for l, v in self._rows[i][j]:
                    for k, mv in m._cols[l]:
                        row[k] = row[k] + mv * v
        return EvenBilinear(self.left, self.right, m.codomain, cube)

    def pre_compose_left(self, m: EvenMap) -> "EvenBilinear":
        """(x, y) -> m(x) * y."""
        if m.codomain != self.left:
            raise ValidationError(["left pre-composition codomain mismatch"])
        z = self.out.field.zero
        cube = [
            [[z] * self.out.dim for _ in range(self.right.dim)]
            for _ in range(m.domain.dim)
        ]
        for i in range(m.domain.dim):
            for l, mv in m._cols[i]:
                for j in range(self.right.dim):
                    row = cube[i][j]
                    for k, v in self._rows[l][j]:
                        row[k] = row[k] + mv * v
        return EvenBilinear(m.domain, self.right, self.out, cube)

    def pre_compose_right(self, m: EvenMap) -> "EvenBilinear":
        """(x, y) -> x * m(y)."""
        if m.codomain != self.right:
            raise ValidationError(["right pre-composition codomain mismatch"])
        z = self.out.field.zero
        cube = [
            [[z] * self.out.dim for _ in range(m.domain.dim)]
            for _ in range(self.left.dim)
        ]
        for i in range(self.left.dim):
            for j in range(m.domain.dim):
                row = cube[i][j]
                for l, mv in m._cols[j]:
                    for k, v in self._rows[i][l]:
                        row[k] = row[k] + mv * v
        return EvenBilinear(self.left, m.domain, self.out, cube)

    def flip_signed(self) -> "EvenBilinear":
        """Signed opposite: c'[i][j][k] = (-1)^(parity(i) parity(j)) c[j][i][k]."""
        if self.left != self.right:
            raise ValidationError(["signed flip needs equal factor spaces"])
        cube = []
        for i in range(self.left.dim):
            pi = self.left.parity(i)
            plane = []
            for j in range(self.right.dim):
                row = self.c[j][i]
                if pi and self.right.parity(j):
                    row = tuple(-v for v in row)
                plane.append(row)
            cube.append(plane)
        return EvenBilinear(self.left, self.right, self.out, cube)

    def __eq__(self, other):
        if not isinstance(other, EvenBilinear):
            return NotImplemented
        return (
            (self.left, self.right, self.out) == (other.left, other.right, other.out)
            and self.c == other.c
        )

    def __hash__(self):
        return hash((self.left, self.right, self.out, self.c))

    def __repr__(self):
        return f"EvenBilinear({self.left.dim}x{self.right.dim}->{self.out.dim})"


# Exact linear algebra, generic over both scalar fields.


def independent_columns(vectors: Sequence[Vector]) -> list[int]:
    """Indices of a maximal earliest-first linearly independent subset."""
    reduced: list[tuple[int, list]] = []  # (pivot position, reduced coords)
    chosen = []
    for idx, vec in enumerate(vectors):
        coords = list(vec.coords)
        for pivot, basis in reduced:
            f = coords[pivot]
            if f:
                coords = [a - f * b for a, b in zip(coords, basis)]
        piv = next((i for i, c in enumerate(coords) if c), None)
        if piv is None:
            continue
        inv = coords[piv]
        coords = [c / inv for c in coords]
        reduced.append((piv, coords))
        chosen.append(idx)
    return chosen


def solve_in_span(basis: Sequence[Vector], target: Vector):
    """Coefficients x with sum x_a basis[a] = target, or None if unsolvable.

    The basis vectors must be linearly independent (unique solution)."""
    if not basis:
        return [] if target.is_zero() else None
    n = target.space.dim
    r = len(basis)
    field = target.space.field
    # augmented rows of the n x (r+1) system
    rows = [[basis[a].coords[i] for a in range(r)] + [target.coords[i]] for i in range(n)]
    pivots = []
    row_at = 0
    for col in range(r):
        sel = next((i for i in range(row_at, n) if rows[i][col]), None)
        if sel is None:
            continue
        rows[row_at], rows[sel] = rows[sel], rows[row_at]
        inv = rows[row_at][col]
        rows[row_at] = [v / inv for v in rows[row_at]]
        for i in range(n):
            if i != row_at and rows[i][col]:
                f = rows[i][col]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[row_at])]
        pivots.append(col)
        row_at += 1
    # inconsistency: a zero row with nonzero rhs
    for i in range(row_at, n):
        if rows[i][r]:
            return None
    sol = [field.zero] * r
    for i, col in enumerate(pivots):
        sol[col] = rows[i][r]
    return sol


def nullspace(m: EvenMap) -> list[Vector]:
    """Basis of the kernel, one vector per free column of the RREF."""
    n_rows, n_cols = m.codomain.dim, m.domain.dim
    field = m.domain.field
    rows = [list(r) for r in m.entries]
    pivots = {}
    row_at = 0
    for col in range(n_cols):
        sel = next((i for i in range(row_at, n_rows) if rows[i][col]), None)
        if sel is None:
            continue
        rows[row_at], rows[sel] = rows[sel], rows[row_at]
        inv = rows[row_at][col]
        rows[row_at] = [v / inv for v in rows[row_at]]
        for i in range(n_rows):
            if i != row_at and rows[i][col]:
                f = rows[i][col]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[row_at])]
        pivots[col] = row_at
        row_at += 1
    basis = []
    for free in range(n_cols):
        if free in pivots:
            continue
        coords = [field.zero] * n_cols
        coords[free] = field.one
        for col, prow in pivots.items():
            coords[col] = -rows[prow][free]
        basis.append(Vector(m.domain, coords))
    return basis
