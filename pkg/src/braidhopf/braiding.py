"""Braidings, twists, and the category context bundling them with a field.

Crossing convention, fixed globally: the positive braiding tau(X, Y) is the
map X(x)Y -> Y(x)X whose GradedQ matrix entry on basis vectors a(x)b is
q^(|a||b|). Every diagram in the package is transcribed with this sense;
tau_inv is its exact inverse (entries q^(-|a||b|) against the flipped basis).
"""

from __future__ import annotations

from .errors import DualityUnavailable, FieldMismatch, MissingTwist, ParseError
from .tensorcat import Mor, Obj, chain, compose, tensor_mor, tensor_obj, unit_obj


class TrivialBraiding:
    kind = "trivial"

    def mor(self, x, y):
        return _flip(x, y, None)

    def mor_inv(self, x, y):
        return _flip(y, x, None)

    def to_json(self):
        return "trivial"

    def __eq__(self, other):
        return isinstance(other, TrivialBraiding)

    def __hash__(self):
        return hash("trivial-braiding")


class GradedQBraiding:
    kind = "graded_q"

    def __init__(self, q, field):
        q = field.coerce(q)
        if not q:
            raise ParseError("graded braiding parameter must be invertible")
        self.q = q
        self.field = field

    def mor(self, x, y):
        if x.field != self.field:
            raise FieldMismatch("object field differs from braiding field")
        return _flip(x, y, self.q)

    def mor_inv(self, x, y):
        if x.field != self.field:
            raise FieldMismatch("object field differs from braiding field")
        return _flip(y, x, self.q**-1)

    def to_json(self):
        return {"graded_q": self.field.scalar_to_json(self.q)}

    def __eq__(self, other):
        return isinstance(other, GradedQBraiding) and other.q == self.q

    def __hash__(self):
        return hash(("graded_q-braiding", self.q))


def _flip(x, y, q):
    """x(x)y -> y(x)x sending a(x)b to q^(|a||b|) b(x)a (q=None: coefficient 1)."""
    dom = tensor_obj([x, y])
    cod = tensor_obj([y, x])
    one = x.field.one
    cols = {}
    for a in range(x.dim):
        ga = x.grades[a]
        for b in range(y.dim):
            col = a * y.dim + b
            row = b * x.dim + a
            if q is None or ga == 0 or y.grades[b] == 0:
                val = one
            else:
                val = q ** (ga * y.grades[b])
            cols[col] = {row: val}
    return Mor(dom, cod, cols)


class IdentityTwist:
    kind = "identity"

    def mor(self, ctx, x):
        return Mor.identity(x)

    def to_json(self):
        return "identity"

    def __eq__(self, other):
        return isinstance(other, IdentityTwist)

    def __hash__(self):
        return hash("identity-twist")


class GradedQTwist:
    kind = "graded_q"

    def __init__(self, q, field):
        q = field.coerce(q)
        if not q:
            raise ParseError("graded twist parameter must be invertible")
        self.q = q
        self.field = field

    def mor(self, ctx, x):
        cols = {}
        one = self.field.one
        for i, g in enumerate(x.grades):
            cols[i] = {i: one if g == 0 else self.q ** (g * g)}
        return Mor(x, x, cols)

    def to_json(self):
        return {"graded_q": self.field.scalar_to_json(self.q)}

    def __eq__(self, other):
        return isinstance(other, GradedQTwist) and other.q == self.q

    def __hash__(self):
        return hash(("graded_q-twist", self.q))


class ExplicitTwist:
    """Twist given by one matrix on a base object, extended to its tensor
    powers through the twist equation. Naturality and the twist equation
    are checked by the validation entry points, not assumed here."""

    kind = "explicit"

    def __init__(self, base, base_mor):
        if base_mor.dom != base or base_mor.cod != base:
            raise MissingTwist("explicit twist matrix must be an endomorphism of its base")
        self.base = base
        self.base_mor = base_mor

    def mor(self, ctx, x):
        unit = unit_obj(x.field)
        if x == unit:
            return Mor.identity(unit)
        if x == self.base:
            return self.base_mor
        d = self.base.dim
        if d <= 1:
            raise MissingTwist(f"explicit twist not defined at {x.name}")
        k, n = 0, 1
        while n < x.dim:
            n *= d
            k += 1
        if n != x.dim or tensor_obj([self.base] * k) != x:
            raise MissingTwist(f"explicit twist not defined at {x.name}")
        rest = tensor_obj([self.base] * (k - 1)) if k > 1 else self.base
        return chain(
            tensor_mor(self.base_mor, self.mor(ctx, rest)),
            ctx.tau(rest, self.base),
            ctx.tau(self.base, rest),
        )

    def to_json(self):
        field = self.base.field
        return {
            "explicit": [
                [field.scalar_to_json(v) for v in row] for row in self.base_mor.rows()
            ]
        }

    def __eq__(self, other):
        return (
            isinstance(other, ExplicitTwist)
            and other.base == self.base
            and other.base_mor == self.base_mor
        )

    def __hash__(self):
        return hash(("explicit-twist", self.base))


class CategoryCtx:
    """Immutable bundle of field, braiding, and twist."""

    def __init__(self, field, braiding, twist):
        self.field = field
        self.braiding = braiding
        self.twist = twist

    def tau(self, x, y):
        return self.braiding.mor(x, y)

    def tau_inv(self, x, y):
        """Inverse crossing: the map Y(x)X -> X(x)Y undoing tau(x, y)."""
        return self.braiding.mor_inv(x, y)

    def theta(self, x):
        return self.twist.mor(self, x)

    def __eq__(self, other):
        return (
            isinstance(other, CategoryCtx)
            and other.field == self.field
            and other.braiding == self.braiding
            and other.twist == self.twist
        )


def make_braiding(spec, field):
    if spec == "trivial":
        return TrivialBraiding()
    if isinstance(spec, dict) and set(spec) == {"graded_q"}:
        return GradedQBraiding(field.scalar_from_json(spec["graded_q"]), field)
    if isinstance(spec, (TrivialBraiding, GradedQBraiding)):
        return spec
    raise ParseError(f"unrecognized braiding spec {spec!r}")


def make_twist(spec, field, base=None):
    if spec in ("identity", "trivial"):
        return IdentityTwist()
    if isinstance(spec, dict) and set(spec) == {"graded_q"}:
        return GradedQTwist(field.scalar_from_json(spec["graded_q"]), field)
    if isinstance(spec, dict) and set(spec) == {"explicit"}:
        if base is None:
            raise ParseError("explicit twist needs a base object")
        rows = [
            [field.scalar_from_json(v) for v in row] for row in spec["explicit"]
        ]
        return ExplicitTwist(base, Mor.from_rows(base, base, rows))
    if isinstance(spec, (IdentityTwist, GradedQTwist, ExplicitTwist)):
        return spec
    raise ParseError(f"unrecognized twist spec {spec!r}")


# ---------------------------------------------------------------------------
# axiom checks


def check_braiding_axioms(ctx, gens, test_mors=()):
    from .reports import Report

    report = Report("braiding-axioms")
    for i, x in enumerate(gens):
        for j, y in enumerate(gens):
            t = ctx.tau(x, y)
            ti = ctx.tau_inv(x, y)
            report.add_eq(
                f"invertible[{i},{j}] left",
                compose(ti, t),
                Mor.identity(tensor_obj([x, y])),
            )
            report.add_eq(
                f"invertible[{i},{j}] right",
                compose(t, ti),
                Mor.identity(tensor_obj([y, x])),
            )
            for k, z in enumerate(gens):
                yz = tensor_obj([y, z])
                xy = tensor_obj([x, y])
                idy = Mor.identity(y)
                idz = Mor.identity(z)
                idx = Mor.identity(x)
                report.add_eq(
                    f"hexagon1[{i},{j},{k}]",
                    ctx.tau(x, yz),
                    compose(tensor_mor(idy, ctx.tau(x, z)), tensor_mor(ctx.tau(x, y), idz)),
                )
                report.add_eq(
                    f"hexagon2[{i},{j},{k}]",
                    ctx.tau(xy, z),
                    compose(tensor_mor(ctx.tau(x, z), idy), tensor_mor(idx, ctx.tau(y, z))),
                )
    for a, f in enumerate(test_mors):
        for b, g in enumerate(test_mors):
            lhs = compose(ctx.tau(f.cod, g.cod), tensor_mor(f, g))
            rhs = compose(tensor_mor(g, f), ctx.tau(f.dom, g.dom))
            report.add_eq(f"naturality[{a},{b}]", lhs, rhs)
    return report


def check_twist_axiom(ctx, x, y):
    lhs = ctx.theta(tensor_obj([x, y]))
    rhs = chain(
        tensor_mor(ctx.theta(x), ctx.theta(y)),
        ctx.tau(y, x),
        ctx.tau(x, y),
    )
    return lhs == rhs


def check_twist(ctx, objs, test_mors=()):
    from .reports import Report
    from .tensorcat import invert

    report = Report("twist-axioms")
    unit = unit_obj(ctx.field)
    report.add_eq("unit-twist", ctx.theta(unit), Mor.identity(unit))
    for i, x in enumerate(objs):
        th = ctx.theta(x)
        try:
            invert(th)
            report.add(f"invertible[{i}]", True)
        except ValueError:
            report.add(f"invertible[{i}]", False, "twist matrix is singular")
        for j, y in enumerate(objs):
            report.add(f"twist-equation[{i},{j}]", check_twist_axiom(ctx, x, y))
    for a, f in enumerate(test_mors):
        lhs = compose(ctx.theta(f.cod), f)
        rhs = compose(f, ctx.theta(f.dom))
        report.add_eq(f"naturality[{a}]", lhs, rhs)
    return report


# ---------------------------------------------------------------------------
# twists from graded duality


def _dual_obj(x):
    return Obj(x.name + "*", x.dim, [-g for g in x.grades], x.field)


def twist_from_duality(ctx, side, x):
    """Left or right twist from the internal graded-dual zig-zag."""
    if not isinstance(ctx.braiding, (TrivialBraiding, GradedQBraiding)):
        raise DualityUnavailable(
            "graded duals are defined only for the shipped braidings"
        )
    if side not in ("left", "right"):
        raise ValueError(f"side must be 'left' or 'right', got {side!r}")
    xd = _dual_obj(x)
    unit = unit_obj(x.field)
    one = x.field.one
    idx = Mor.identity(x)
    idxd = Mor.identity(xd)
    if side == "left":
        # coev: 1 -> X (x) X*, paired ev~: X (x) X* -> 1
        coev = Mor(unit, tensor_obj([x, xd]), {0: {i * x.dim + i: one for i in range(x.dim)}})
        ev = Mor(
            tensor_obj([x, xd]), unit, {i * x.dim + i: {0: one} for i in range(x.dim)}
        )
        return chain(
            tensor_mor(idx, ev),
            tensor_mor(ctx.tau(x, x), idxd),
            tensor_mor(idx, coev),
        )
    # coev~: 1 -> X* (x) X, paired ev: X* (x) X -> 1
    coev = Mor(unit, tensor_obj([xd, x]), {0: {i * x.dim + i: one for i in range(x.dim)}})
    ev = Mor(tensor_obj([xd, x]), unit, {i * x.dim + i: {0: one} for i in range(x.dim)})
    return chain(
        tensor_mor(ev, idx),
        tensor_mor(idxd, ctx.tau(x, x)),
        tensor_mor(coev, idx),
    )
