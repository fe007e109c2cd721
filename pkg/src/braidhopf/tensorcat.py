"""Objects and morphisms of a strict graded monoidal category over an exact field.

Morphisms are stored column-sparse ({col: {row: scalar}}, zeros dropped) but
behave exactly like dense cod.dim x dom.dim matrices; the dense view is
available through rows()/entry(). Basis order for tensor products is
row-major with the last factor fastest, matching a left-nested Kronecker
product. All values are immutable by convention: no operation mutates its
arguments, so everything is safe to share between threads.
"""

from __future__ import annotations

from .errors import (
    CompositionMismatch,
    FieldMismatch,
    InvalidPermutation,
    ShapeError,
)


class Obj:
    """Finite-dimensional graded object: a dimension, one grade per basis vector."""

    __slots__ = ("name", "dim", "grades", "field")

    def __init__(self, name, dim, grades, field):
        if dim != len(grades):
            raise ShapeError(f"dim {dim} != number of grades {len(grades)}")
        self.name = name
        self.dim = dim
        self.grades = tuple(grades)
        self.field = field

    def __eq__(self, other):
        if not isinstance(other, Obj):
            return NotImplemented
        # name is cosmetic; equality is structural
        return (
            self.dim == other.dim
            and self.grades == other.grades
            and self.field == other.field
        )

    def __hash__(self):
        return hash((self.dim, self.grades, self.field))

    def __repr__(self):
        return f"Obj({self.name}, dim={self.dim})"


def unit_obj(field):
    return Obj("1", 1, (0,), field)


def tensor_obj(xs):
    """Tensor product of a list of objects; the empty product is the unit."""
    if not xs:
        raise ValueError("tensor_obj of empty list needs a field; use unit_obj")
    field = xs[0].field
    for x in xs[1:]:
        if x.field != field:
            raise FieldMismatch(f"mixed fields {field.name} and {x.field.name}")
    dim = 1
    grades = [0]
    for x in xs:
        grades = [g + h for g in grades for h in x.grades]
        dim *= x.dim
    name = "(" + "@".join(x.name for x in xs) + ")" if len(xs) > 1 else xs[0].name
    return Obj(name, dim, grades, field)


def tensor_obj_or_unit(xs, field):
    return unit_obj(field) if not xs else tensor_obj(xs)


class Mor:
    """Linear map dom -> cod with exact entries, stored column-sparse."""

    __slots__ = ("dom", "cod", "cols")

    def __init__(self, dom, cod, cols):
        if dom.field != cod.field:
            raise FieldMismatch(
                f"domain field {dom.field.name} != codomain field {cod.field.name}"
            )
        clean = {}
        for c, col in cols.items():
            if not 0 <= c < dom.dim:
                raise ShapeError(f"column index {c} outside dim {dom.dim}")
            entries = {}
            for r, v in col.items():
                if not 0 <= r < cod.dim:
                    raise ShapeError(f"row index {r} outside dim {cod.dim}")
                if v:
                    entries[r] = v
            if entries:
                clean[c] = entries
        self.dom = dom
        self.cod = cod
        self.cols = clean

    # -- constructors --------------------------------------------------

    @staticmethod
    def from_rows(dom, cod, rows):
        if len(rows) != cod.dim or any(len(r) != dom.dim for r in rows):
            raise ShapeError(
                f"expected {cod.dim}x{dom.dim} entries, got "
                f"{len(rows)}x{len(rows[0]) if rows else 0}"
            )
        field = dom.field
        cols = {}
        for r, row in enumerate(rows):
            for c, v in enumerate(row):
                v = field.coerce(v)
                if v:
                    cols.setdefault(c, {})[r] = v
        return Mor(dom, cod, cols)

    @staticmethod
    def zero(dom, cod):
        return Mor(dom, cod, {})

    @staticmethod
    def identity(obj):
        one = obj.field.one
        return Mor(obj, obj, {i: {i: one} for i in range(obj.dim)})

    # -- dense views ----------------------------------------------------

    def entry(self, r, c):
        return self.cols.get(c, {}).get(r, self.dom.field.zero)

    def rows(self):
        zero = self.dom.field.zero
        out = [[zero] * self.dom.dim for _ in range(self.cod.dim)]
        for c, col in self.cols.items():
            for r, v in col.items():
                out[r][c] = v
        return out

    # -- linear structure -----------------------------------------------

    def __add__(self, other):
        if not isinstance(other, Mor):
            return NotImplemented
        if self.dom != other.dom or self.cod != other.cod:
            raise CompositionMismatch("cannot add maps with different boundaries")
        cols = {c: dict(col) for c, col in self.cols.items()}
        for c, col in other.cols.items():
            tgt = cols.setdefault(c, {})
            for r, v in col.items():
                if r in tgt:
                    tgt[r] = tgt[r] + v
                else:
                    tgt[r] = v
        return Mor(self.dom, self.cod, cols)

    def __sub__(self, other):
        return self + other.scale(-self.dom.field.one)

    def scale(self, scalar):
        scalar = self.dom.field.coerce(scalar)
        if not scalar:
            return Mor.zero(self.dom, self.cod)
        return Mor(
            self.dom,
            self.cod,
            {c: {r: v * scalar for r, v in col.items()} for c, col in self.cols.items()},
        )

    def __neg__(self):
        return self.scale(-self.dom.field.one)

    def __eq__(self, other):
        if not isinstance(other, Mor):
            return NotImplemented
        return (
            self.dom == other.dom
            and self.cod == other.cod
            and self.cols == other.cols
        )

    def __repr__(self):
        return (
            f"Mor({self.dom.name}->{self.cod.name}, "
            f"{self.cod.dim}x{self.dom.dim}, nnz={sum(len(c) for c in self.cols.values())})"
        )

    def is_zero(self):
        return not self.cols


def compose(g, f):
    """g after f. Boundaries must match structurally."""
    if f.cod != g.dom:
        raise CompositionMismatch(
            f"codomain {f.cod.name} (dim {f.cod.dim}, grades {list(f.cod.grades)}) "
            f"!= domain {g.dom.name} (dim {g.dom.dim}, grades {list(g.dom.grades)})"
        )
    cols = {}
    for c, fcol in f.cols.items():
        acc = {}
        for k, fv in fcol.items():
            gcol = g.cols.get(k)
            if not gcol:
                continue
            for r, gv in gcol.items():
                prod = gv * fv
                if r in acc:
                    acc[r] = acc[r] + prod
                else:
                    acc[r] = prod
        if acc:
            cols[c] = acc
    return Mor(f.dom, g.cod, cols)


def chain(*mors):
    """Compose left to right as written: chain(a, b, c) = a after b after c."""
    out = mors[-1]
    for m in reversed(mors[:-1]):
        out = compose(m, out)
    return out


def tensor_mor(f, g):
    """Kronecker product; block index = left factor, fast index = right factor."""
    if f.dom.field != g.dom.field:
        raise FieldMismatch(
            f"mixed fields {f.dom.field.name} and {g.dom.field.name}"
        )
    dom = tensor_obj([f.dom, g.dom])
    cod = tensor_obj([f.cod, g.cod])
    gd, hd = g.dom.dim, g.cod.dim
    cols = {}
    for cf, fcol in f.cols.items():
        for cg, gcol in g.cols.items():
            c = cf * gd + cg
            entries = {}
            for rf, fv in fcol.items():
                for rg, gv in gcol.items():
                    entries[rf * hd + rg] = fv * gv
            cols[c] = entries
    return Mor(dom, cod, cols)


def tensor_many(mors, field=None):
    """Left-nested tensor product of a list of morphisms."""
    if not mors:
        if field is None:
            raise ValueError("tensor_many of empty list needs a field")
        return Mor.identity(unit_obj(field))
    out = mors[0]
    for m in mors[1:]:
        out = tensor_mor(out, m)
    return out


def _strides(dims):
    out = [1] * len(dims)
    for i in range(len(dims) - 2, -1, -1):
        out[i] = out[i + 1] * dims[i + 1]
    return out


def permutation_mor(xs, perm):
    """Rearrange tensor factors: input factor j moves to output slot perm[j].

    With perm read as a function, permutation_mor(p o q) =
    permutation_mor(p) o permutation_mor(q).
    """
    n = len(xs)
    if sorted(perm) != list(range(n)):
        raise InvalidPermutation(f"{perm!r} is not a permutation of 0..{n - 1}")
    field = xs[0].field if xs else None
    if xs:
        dom = tensor_obj(xs)
        inv = [0] * n
        for j, p in enumerate(perm):
            inv[p] = j
        cod = tensor_obj([xs[inv[k]] for k in range(n)])
    else:
        raise InvalidPermutation("permutation of zero factors needs no morphism")
    in_dims = [x.dim for x in xs]
    out_dims = [xs[inv[k]].dim for k in range(n)]
    in_str = _strides(in_dims)
    out_str = _strides(out_dims)
    one = field.one
    cols = {}
    # enumerate input multi-indices by mixed-radix counting
    idx = [0] * n
    total = dom.dim
    for flat in range(total):
        rem = flat
        for t in range(n):
            idx[t] = rem // in_str[t]
            rem %= in_str[t]
        row = 0
        for t in range(n):
            row += idx[t] * out_str[perm[t]]
        cols[flat] = {row: one}
    return Mor(dom, cod, cols)


# ---------------------------------------------------------------------------
# exact linear algebra (Gaussian elimination on sparse rows)


def _to_rows_sparse(m):
    rows = [{} for _ in range(m.cod.dim)]
    for c, col in m.cols.items():
        for r, v in col.items():
            rows[r][c] = v
    return rows


def rref_rows(rows, ncols):
    """Reduced row echelon form in place; returns ordered pivot columns.

    rows: list of {col: scalar} dicts, mutated. Zero rows are emptied dicts.
    """
    pivots = []
    active = [r for r in rows if r]
    for col in range(ncols):
        pivot_row = None
        best = None
        for row in active:
            if col in row and (best is None or len(row) < best):
                pivot_row = row
                best = len(row)
        if pivot_row is None:
            continue
        pv = pivot_row[col]
        for k in list(pivot_row):
            pivot_row[k] = pivot_row[k] / pv
        for row in rows:
            if row is pivot_row or col not in row:
                continue
            factor = row.pop(col)
            for k, v in pivot_row.items():
                if k == col:
                    continue
                if k in row:
                    nv = row[k] - factor * v
                    if nv:
                        row[k] = nv
                    else:
                        del row[k]
                else:
                    row[k] = -factor * v
        pivots.append((col, pivot_row))
        active = [r for r in active if r and r is not pivot_row]
    return pivots


def rank_rows(rows, ncols):
    work = [dict(r) for r in rows]
    return len(rref_rows(work, ncols))


def nullspace_rows(rows, ncols, field):
    """Basis of the right kernel as a list of {index: scalar} vectors."""
    work = [dict(r) for r in rows]
    pivots = rref_rows(work, ncols)
    pivot_cols = [c for c, _ in pivots]
    pivot_set = set(pivot_cols)
    free = [c for c in range(ncols) if c not in pivot_set]
    basis = []
    one = field.one
    for fc in free:
        vec = {fc: one}
        for c, prow in pivots:
            v = prow.get(fc)
            if v:
                vec[c] = -v
        basis.append(vec)
    return basis


def mor_rank(m):
    return rank_rows(_to_rows_sparse(m), m.dom.dim)


def mor_nullspace(m):
    """Kernel basis of m as column-vector morphisms from the unit object."""
    vecs = nullspace_rows(_to_rows_sparse(m), m.dom.dim, m.dom.field)
    unit = unit_obj(m.dom.field)
    return [Mor(unit, m.dom, {0: dict(v)}) for v in vecs]


def invert(m):
    """Exact two-sided inverse; raises ValueError when singular or non-square."""
    if m.dom.dim != m.cod.dim:
        raise ShapeError(f"cannot invert {m.cod.dim}x{m.dom.dim} matrix")
    n = m.dom.dim
    rows = _to_rows_sparse(m)
    field = m.dom.field
    one = field.one
    aug = [dict(rows[i]) for i in range(n)]
    inv = [{i: one} for i in range(n)]
    # Gauss-Jordan with the inverse accumulated alongside
    for col in range(n):
        pivot = None
        for i in range(col, n):
            if col in aug[i]:
                pivot = i
                break
        if pivot is None:
            raise ValueError("matrix not invertible")
        aug[col], aug[pivot] = aug[pivot], aug[col]
        inv[col], inv[pivot] = inv[pivot], inv[col]
        pv = aug[col][col]
        for k in list(aug[col]):
            aug[col][k] = aug[col][k] / pv
        for k in list(inv[col]):
            inv[col][k] = inv[col][k] / pv
        for i in range(n):
            if i == col or col not in aug[i]:
                continue
            factor = aug[i].pop(col)
            for k, v in aug[col].items():
                if k == col:
                    continue
                nv = aug[i].get(k, field.zero) - factor * v
                if nv:
                    aug[i][k] = nv
                else:
                    aug[i].pop(k, None)
            for k, v in inv[col].items():
                nv = inv[i].get(k, field.zero) - factor * v
                if nv:
                    inv[i][k] = nv
                else:
                    inv[i].pop(k, None)
    cols = {}
    for r in range(n):
        for c, v in inv[r].items():
            cols.setdefault(c, {})[r] = v
    return Mor(m.cod, m.dom, cols)


def solve_linear(constraints, space_dim, field):
    """Exact kernel basis of stacked constraint matrices.

    constraints: list of Mor with a common domain dimension space_dim (their
    codomains may differ). Returns {index: scalar} vectors.
    """
    rows = []
    for m in constraints:
        if m.dom.dim != space_dim:
            raise CompositionMismatch(
                f"constraint domain dim {m.dom.dim} != unknown dim {space_dim}"
            )
        if m.dom.field != field:
            raise FieldMismatch("constraint over a different field")
        rows.extend(_to_rows_sparse(m))
    return nullspace_rows(rows, space_dim, field)


def column_mor(obj, vec):
    """Vector 1 -> obj from a length-dim list of scalars."""
    unit = unit_obj(obj.field)
    col = {}
    for i, v in enumerate(vec):
        v = obj.field.coerce(v)
        if v:
            col[i] = v
    return Mor(unit, obj, {0: col} if col else {})


def row_mor(obj, vec):
    """Covector obj -> 1 from a length-dim list of scalars."""
    unit = unit_obj(obj.field)
    cols = {}
    for i, v in enumerate(vec):
        v = obj.field.coerce(v)
        if v:
            cols[i] = {0: v}
    return Mor(obj, unit, cols)


def mor_diff(a, b):
    """First differing entry of two same-shaped maps, or None when equal."""
    if a.dom != b.dom or a.cod != b.cod:
        return (-1, -1, None, None)
    keys = set(a.cols) | set(b.cols)
    best = None
    for c in keys:
        ca, cb = a.cols.get(c, {}), b.cols.get(c, {})
        for r in set(ca) | set(cb):
            va = ca.get(r, a.dom.field.zero)
            vb = cb.get(r, b.dom.field.zero)
            if va != vb and (best is None or (r, c) < best[:2]):
                best = (r, c, va, vb)
    return best
