"""Hopf algebra structure maps over a braided context, plus derived operators.

Construction is strict: HopfAlgebra runs the full axiom battery up front
(associativity through antipode invertibility, and grade homogeneity of all
five structure maps) and raises ValidationError on any failure. The
`unchecked` constructor exists only so tests can build broken algebras.

Derived operators and conventions:

* iterated multiplication: m_0 = u, m_1 = id, m_{n+1} = m (id (x) m_n);
  iterated comultiplication is the dual tower.
* left diagonal action of H on H^(x n): comultiply the actor, braid the
  copies into place, multiply into each strand from the left; the right
  action is the mirror image acting from the right.
* adjoint actions conjugate strandwise: the left one sends h (x) y to
  h_(1) y S(h_(2)), the right one sends y (x) h to S(h_(1)) y h_(2),
  with the category's crossing in place of the classical flip.
* coadjoint coactions emit a coefficient strand: the left one sends h to
  h_(1) S(h_(3)) (x) h_(2) (coefficient first), the right one to
  h_(2) (x) S(h_(1)) h_(3) (coefficient last).
* twisted antipode of a character delta: (delta (x) S) Delta.

Results are memoized per instance keyed by (operation, n); operators are
pure so cache hits never change answers.
"""

from __future__ import annotations

import threading

from .errors import NotAlgebraMorphism, ShapeError, ValidationError
from .reports import Report
from .tensorcat import (
    Mor,
    chain,
    compose,
    invert,
    tensor_mor,
    tensor_obj,
    unit_obj,
)


def _expect_boundary(f, dom, cod, label):
    if f.dom != dom or f.cod != cod:
        raise ShapeError(
            "%s has boundary %s -> %s, expected %s -> %s"
            % (label, f.dom, f.cod, dom, cod)
        )


def _first_inhomogeneous(f):
    """(row, col) of the first entry linking unequal grades, or None."""
    worst = None
    for c, col in f.cols.items():
        for r in col:
            if f.dom.grades[c] != f.cod.grades[r]:
                if worst is None or (r, c) < worst:
                    worst = (r, c)
    return worst


class HopfAlgebra:
    """The five structure maps of a Hopf algebra living in a CategoryCtx."""

    def __init__(self, ctx, carrier, mult, unit, comult, counit, antipode,
                 *, validate=True):
        if carrier.field is not ctx.field:
            raise ShapeError("carrier field differs from context field")
        one = unit_obj(ctx.field)
        hh = tensor_obj([carrier, carrier])
        _expect_boundary(mult, hh, carrier, "mult")
        _expect_boundary(unit, one, carrier, "unit")
        _expect_boundary(comult, carrier, hh, "comult")
        _expect_boundary(counit, carrier, one, "counit")
        _expect_boundary(antipode, carrier, carrier, "antipode")
        self.ctx = ctx
        self.carrier = carrier
        self.mult = mult
        self.unit = unit
        self.comult = comult
        self.counit = counit
        self.antipode = antipode
        self._cache = {}
        self._lock = threading.Lock()
        if validate:
            report = check_hopf_axioms(self)
            if not report.passed:
                raise ValidationError("Hopf axioms failed", report=report)

    @classmethod
    def unchecked(cls, ctx, carrier, mult, unit, comult, counit, antipode):
        """Skip axiom validation; boundaries are still enforced."""
        return cls(ctx, carrier, mult, unit, comult, counit, antipode,
                   validate=False)

    @property
    def field(self):
        return self.ctx.field

    def _memo(self, key, build):
        with self._lock:
            hit = self._cache.get(key)
        if hit is not None:
            return hit
        value = build()
        with self._lock:
            return self._cache.setdefault(key, value)

    def obj_pow(self, n):
        """Carrier to the n-th tensor power; n = 0 is the unit object."""
        if n < 0:
            raise ValueError("tensor power wants n >= 0, got %d" % n)
        if n == 0:
            return unit_obj(self.field)
        return self._memo(
            ("obj", n),
            lambda: tensor_obj([self.carrier] * n),
        )

    def id_pow(self, n):
        return self._memo(("id", n), lambda: Mor.identity(self.obj_pow(n)))

    def tau_pow(self, a, b):
        """Crossing of H^(x a) past H^(x b)."""
        return self._memo(
            ("tau", a, b),
            lambda: self.ctx.tau(self.obj_pow(a), self.obj_pow(b)),
        )

    def antipode_inv(self):
        return self._memo(("antipode_inv",), lambda: invert(self.antipode))


def check_hopf_axioms(H):
    """Evaluate every axiom as an exact matrix identity.

    Named checks cover associativity, two unitality laws, coassociativity,
    two counitality laws, the four bialgebra compatibilities (with the
    braided middle crossing), both antipode equations, antipode
    invertibility, and grade homogeneity of all five maps.
    """
    ctx = H.ctx
    h = H.carrier
    one = unit_obj(ctx.field)
    idh = Mor.identity(h)
    id1 = Mor.identity(one)
    m, u, cm, cu, s = H.mult, H.unit, H.comult, H.counit, H.antipode
    tau = ctx.tau(h, h)

    rep = Report("hopf-axioms")
    rep.add_eq("associativity",
               compose(m, tensor_mor(m, idh)),
               compose(m, tensor_mor(idh, m)))
    rep.add_eq("unitality-left", compose(m, tensor_mor(u, idh)), idh)
    rep.add_eq("unitality-right", compose(m, tensor_mor(idh, u)), idh)
    rep.add_eq("coassociativity",
               compose(tensor_mor(cm, idh), cm),
               compose(tensor_mor(idh, cm), cm))
    rep.add_eq("counitality-left", compose(tensor_mor(cu, idh), cm), idh)
    rep.add_eq("counitality-right", compose(tensor_mor(idh, cu), cm), idh)
    rep.add_eq("bialgebra-mult-comult",
               compose(cm, m),
               chain(tensor_mor(m, m),
                     tensor_mor(tensor_mor(idh, tau), idh),
                     tensor_mor(cm, cm)))
    rep.add_eq("bialgebra-unit-comult", compose(cm, u), tensor_mor(u, u))
    rep.add_eq("bialgebra-mult-counit", compose(cu, m), tensor_mor(cu, cu))
    rep.add_eq("bialgebra-unit-counit", compose(cu, u), id1)
    ue = compose(u, cu)
    rep.add_eq("antipode-left", chain(m, tensor_mor(s, idh), cm), ue)
    rep.add_eq("antipode-right", chain(m, tensor_mor(idh, s), cm), ue)
    try:
        invert(s)
        rep.add("antipode-invertible", True)
    except ValueError:
        rep.add("antipode-invertible", False, "antipode matrix is singular")
    for label, f in (("mult", m), ("unit", u), ("comult", cm),
                     ("counit", cu), ("antipode", s)):
        bad = _first_inhomogeneous(f)
        detail = "" if bad is None else (
            "entry at row %d, col %d links grade %s to grade %s"
            % (bad[0], bad[1], f.dom.grades[bad[1]], f.cod.grades[bad[0]]))
        rep.add("grade-homogeneity-%s" % label, bad is None, detail)
    return rep


def iterated_mult(H, n):
    """H^(x n) -> H; m_0 = u, m_1 = id, m_{n+1} = m (id (x) m_n)."""
    if n < 0:
        raise ValueError("iterated_mult wants n >= 0, got %d" % n)

    def build():
        if n == 0:
            return H.unit
        if n == 1:
            return Mor.identity(H.carrier)
        prev = iterated_mult(H, n - 1)
        return compose(H.mult, tensor_mor(Mor.identity(H.carrier), prev))

    return H._memo(("mult", n), build)


def iterated_comult(H, n):
    """H -> H^(x n); Delta_0 = counit, dual tower to iterated_mult."""
    if n < 0:
        raise ValueError("iterated_comult wants n >= 0, got %d" % n)

    def build():
        if n == 0:
            return H.counit
        if n == 1:
            return Mor.identity(H.carrier)
        prev = iterated_comult(H, n - 1)
        return compose(tensor_mor(Mor.identity(H.carrier), prev), H.comult)

    return H._memo(("comult", n), build)


def _check_side(side):
    s = str(side).lower()
    if s not in ("left", "right"):
        raise ValueError("side must be 'left' or 'right', got %r" % (side,))
    return s


def diagonal_action(H, side, n):
    """Action of H on H^(x n) through the n-fold comultiplication.

    Left: H (x) H^(x n) -> H^(x n). Right: H^(x n) (x) H -> H^(x n).
    n = 0 is the counit, n = 1 is plain multiplication.
    """
    side = _check_side(side)
    if n < 0:
        raise ValueError("diagonal_action wants n >= 0, got %d" % n)

    def build():
        if n <= 1:
            return H.counit if n == 0 else H.mult
        return _action_step(H, side, n, H.mult,
                            diagonal_action(H, side, n - 1))

    return H._memo(("diag", side, n), build)


def adjoint_action(H, side, n):
    """Strandwise conjugation action of H on H^(x n).

    Same inductive skeleton as diagonal_action with the one-strand
    conjugation in place of multiplication.
    """
    side = _check_side(side)
    if n < 0:
        raise ValueError("adjoint_action wants n >= 0, got %d" % n)

    def build():
        if n == 0:
            return H.counit
        if n == 1:
            return _adjoint_one(H, side)
        return _action_step(H, side, n, _adjoint_one(H, side),
                            adjoint_action(H, side, n - 1))

    return H._memo(("adj", side, n), build)


def _adjoint_one(H, side):
    h = H.carrier
    idh = Mor.identity(h)
    tau = H.ctx.tau(h, h)

    def build():
        if side == "left":
            # h (x) y |-> h_(1) y S(h_(2)): comultiply, braid the second
            # copy past y, multiply, then multiply the antipoded copy in
            # from the right.
            return chain(H.mult,
                         tensor_mor(H.mult, H.antipode),
                         tensor_mor(idh, tau),
                         tensor_mor(H.comult, idh))
        # y (x) h |-> S(h_(1)) y h_(2)
        return chain(H.mult,
                     tensor_mor(H.mult, idh),
                     tensor_mor(compose(tensor_mor(H.antipode, idh), tau), idh),
                     tensor_mor(idh, H.comult))

    return H._memo(("adj1", side), build)


def _action_step(H, side, n, core, prev):
    """One induction step shared by the diagonal and adjoint actions.

    Left: comultiply the actor, braid its second copy past the first
    strand, act with `core` there and with `prev` on the rest. Right is
    the mirror: comultiply, braid the first copy past the last strand.
    """
    idh = Mor.identity(H.carrier)
    tau = H.ctx.tau(H.carrier, H.carrier)
    if side == "left":
        return chain(
            tensor_mor(core, prev),
            tensor_mor(tensor_mor(idh, tau), H.id_pow(n - 1)),
            tensor_mor(H.comult, H.id_pow(n)),
        )
    return chain(
        tensor_mor(prev, core),
        tensor_mor(H.id_pow(n - 1), tensor_mor(tau, idh)),
        tensor_mor(H.id_pow(n), H.comult),
    )


def coadjoint_coaction(H, side, n):
    """Coaction of H on H^(x n) by strandwise conjugation coefficients.

    Left: H^(x n) -> H (x) H^(x n), coefficient strand first; n = 0 is the
    unit. Right: H^(x n) -> H^(x n) (x) H, coefficient last.
    """
    side = _check_side(side)
    if n < 0:
        raise ValueError("coadjoint_coaction wants n >= 0, got %d" % n)

    h = H.carrier
    idh = Mor.identity(h)
    tau = H.ctx.tau(h, h)

    def one_strand():
        d3 = iterated_comult(H, 3)
        if side == "left":
            # h |-> h_(1) S(h_(3)) (x) h_(2)
            return chain(tensor_mor(H.mult, idh),
                         tensor_mor(idh, tau),
                         tensor_mor(tensor_mor(idh, idh), H.antipode),
                         d3)
        # h |-> h_(2) (x) S(h_(1)) h_(3)
        return chain(tensor_mor(idh, H.mult),
                     tensor_mor(tau, idh),
                     tensor_mor(H.antipode, tensor_mor(idh, idh)),
                     d3)

    def build():
        if n == 0:
            return H.unit
        if n == 1:
            return one_strand()
        prev = coadjoint_coaction(H, side, n - 1)
        one = coadjoint_coaction(H, side, 1)
        if side == "left":
            return chain(
                tensor_mor(H.mult, H.id_pow(n)),
                tensor_mor(tensor_mor(idh, tau), H.id_pow(n - 1)),
                tensor_mor(one, prev),
            )
        return chain(
            tensor_mor(H.id_pow(n), H.mult),
            tensor_mor(H.id_pow(n - 1), tensor_mor(tau, idh)),
            tensor_mor(prev, one),
        )

    return H._memo(("coadj", side, n), build)


def is_algebra_morphism_to_unit(H, delta):
    """True when delta: H -> unit respects multiplication and unit."""
    one = unit_obj(H.field)
    _expect_boundary(delta, H.carrier, one, "delta")
    return (compose(delta, H.mult) == tensor_mor(delta, delta)
            and compose(delta, H.unit) == Mor.identity(one))


def is_coalgebra_morphism_from_unit(H, sigma):
    """True when sigma: unit -> H respects comultiplication and counit."""
    one = unit_obj(H.field)
    _expect_boundary(sigma, one, H.carrier, "sigma")
    return (compose(H.comult, sigma) == tensor_mor(sigma, sigma)
            and compose(H.counit, sigma) == Mor.identity(one))


def twisted_antipode(H, delta):
    """(delta (x) S) Delta for a character delta; satisfies counit o result = delta."""
    if not is_algebra_morphism_to_unit(H, delta):
        raise NotAlgebraMorphism(
            "delta must respect multiplication and unit to twist the antipode")
    return compose(tensor_mor(delta, H.antipode), H.comult)
