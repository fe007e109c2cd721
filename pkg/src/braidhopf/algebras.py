"""Built-in example algebras and the registry the CLI exposes.

Five shipped examples, chosen to cover the feature matrix: the trivial
algebra, two group algebras (one abelian, one not), a four-dimensional
algebra with non-involutive antipode and a second modular pair, and a
two-dimensional graded algebra with nontrivial braiding and twist.

`braided_line(order)` is a development instrument rather than a registry
entry: a cyclotomic-coefficient graded line whose crossing scalar is a
primitive root of unity, so the two crossing senses genuinely differ.
Several transcription choices in other modules were calibrated against it.
"""

from __future__ import annotations

from fractions import Fraction

from .braiding import (
    CategoryCtx,
    GradedQBraiding,
    GradedQTwist,
    IdentityTwist,
    TrivialBraiding,
)
from .errors import UnknownBuiltin
from .fields import CycElt, CyclotomicField, RationalField
from .hopf import HopfAlgebra
from .tensorcat import Mor, Obj, column_mor, row_mor, tensor_obj


BUILTIN_NAMES = ("trivial", "group_c2", "group_s3", "sweedler",
                 "anyonic_line_q")


class PairData:
    """A labeled (delta, sigma) candidate shipped alongside an algebra."""

    __slots__ = ("name", "delta", "sigma")

    def __init__(self, name, delta, sigma):
        self.name = name
        self.delta = delta
        self.sigma = sigma


class AlgebraBundle:
    """What loading an algebra yields: the validated Hopf data, its
    canonical pairs, and an optional module coalgebra description."""

    def __init__(self, name, hopf, pairs, module_coalgebra=None):
        self.name = name
        self.hopf = hopf
        self.pairs = pairs
        self.module_coalgebra = module_coalgebra

    def pair(self, label):
        for p in self.pairs:
            if p.name == label:
                return p
        raise KeyError("no pair named %r; have %s"
                       % (label, [p.name for p in self.pairs]))


def builtin(name, q=None):
    """Return the named example as an AlgebraBundle.

    Only anyonic_line_q takes a parameter (the crossing scalar q, exact).
    Unknown names raise UnknownBuiltin.
    """
    if name != "anyonic_line_q" and q is not None:
        raise ValueError("builtin %r takes no q parameter" % name)
    if name == "trivial":
        return _trivial()
    if name == "group_c2":
        return _group_c2()
    if name == "group_s3":
        return _group_s3()
    if name == "sweedler":
        return _sweedler()
    if name == "anyonic_line_q":
        return _anyonic(q)
    raise UnknownBuiltin("unknown builtin %r; known: %s"
                         % (name, ", ".join(BUILTIN_NAMES)))


def _eu_pair(H):
    return PairData("eu", H.counit, H.unit)


def _rational_ctx():
    field = RationalField()
    return CategoryCtx(field, TrivialBraiding(), IdentityTwist())


def _group_hopf(ctx, name, elements, product, inverse, identity_elt):
    """Group algebra: grouplike basis, multiplication from the group law."""
    d = len(elements)
    index = {e: i for i, e in enumerate(elements)}
    one = ctx.field.one
    obj = Obj(name, d, (0,) * d, ctx.field)
    hh = tensor_obj([obj, obj])
    mult = Mor(hh, obj, {
        i * d + j: {index[product(elements[i], elements[j])]: one}
        for i in range(d) for j in range(d)
    })
    unit = column_mor(obj, [one if i == index[identity_elt] else 0
                            for i in range(d)])
    comult = Mor(obj, hh, {i: {i * d + i: one} for i in range(d)})
    counit = row_mor(obj, [one] * d)
    antipode = Mor(obj, obj, {i: {index[inverse(elements[i])]: one}
                              for i in range(d)})
    return HopfAlgebra(ctx, obj, mult, unit, comult, counit, antipode)


def _trivial():
    ctx = _rational_ctx()
    obj = Obj("k", 1, (0,), ctx.field)
    one = ctx.field.one
    ident = Mor(obj, obj, {0: {0: one}})
    mult = Mor(tensor_obj([obj, obj]), obj, {0: {0: one}})
    comult = Mor(obj, tensor_obj([obj, obj]), {0: {0: one}})
    H = HopfAlgebra(ctx, obj, mult,
                    column_mor(obj, [one]), comult,
                    row_mor(obj, [one]), ident)
    return AlgebraBundle("trivial", H, [_eu_pair(H)])


def _group_c2():
    ctx = _rational_ctx()
    H = _group_hopf(ctx, "QC2", (0, 1),
                    product=lambda a, b: (a + b) % 2,
                    inverse=lambda a: a,
                    identity_elt=0)
    return AlgebraBundle("group_c2", H, [_eu_pair(H)])


def _group_s3():
    ctx = _rational_ctx()
    elements = ((0, 1, 2), (0, 2, 1), (1, 0, 2),
                (1, 2, 0), (2, 0, 1), (2, 1, 0))

    def product(p, r):
        return tuple(p[r[i]] for i in range(3))

    def inverse(p):
        out = [0, 0, 0]
        for i in range(3):
            out[p[i]] = i
        return tuple(out)

    H = _group_hopf(ctx, "QS3", elements, product, inverse, (0, 1, 2))
    return AlgebraBundle("group_s3", H, [_eu_pair(H)])


# Basis for the four-dimensional example: pairs (a, b) meaning g^a x^b,
# ordered 1, g, x, gx. Relations: g^2 = 1, x^2 = 0, x g = -g x.
_SW_BASIS = ((0, 0), (1, 0), (0, 1), (1, 1))


def _sweedler_maps(ctx, corrupt_antipode=False):
    field = ctx.field
    one = field.one
    d = 4
    index = {e: i for i, e in enumerate(_SW_BASIS)}
    obj = Obj("H4", d, (0,) * d, field)
    hh = tensor_obj([obj, obj])

    mcols = {}
    for i, (a, b) in enumerate(_SW_BASIS):
        for j, (c, e) in enumerate(_SW_BASIS):
            if b + e >= 2:
                continue
            val = -one if (b * c) % 2 else one
            mcols[i * d + j] = {index[((a + c) % 2, b + e)]: val}
    mult = Mor(hh, obj, mcols)
    unit = column_mor(obj, [one, 0, 0, 0])

    ccols = {
        index[(0, 0)]: {index[(0, 0)] * d + index[(0, 0)]: one},
        index[(1, 0)]: {index[(1, 0)] * d + index[(1, 0)]: one},
        index[(0, 1)]: {index[(0, 1)] * d + index[(0, 0)]: one,
                        index[(1, 0)] * d + index[(0, 1)]: one},
        index[(1, 1)]: {index[(1, 1)] * d + index[(1, 0)]: one,
                        index[(0, 0)] * d + index[(1, 1)]: one},
    }
    comult = Mor(obj, hh, ccols)
    counit = row_mor(obj, [one, one, 0, 0])

    scols = {
        index[(0, 0)]: {index[(0, 0)]: one},
        index[(1, 0)]: {index[(1, 0)]: one},
        index[(0, 1)]: {index[(1, 1)]: one if corrupt_antipode else -one},
        index[(1, 1)]: {index[(0, 1)]: one},
    }
    antipode = Mor(obj, obj, scols)
    return obj, mult, unit, comult, counit, antipode


def _sweedler():
    ctx = _rational_ctx()
    obj, m, u, cm, cu, s = _sweedler_maps(ctx)
    H = HopfAlgebra(ctx, obj, m, u, cm, cu, s)
    one = ctx.field.one
    sigma_g = column_mor(obj, [0, one, 0, 0])
    return AlgebraBundle("sweedler", H,
                         [_eu_pair(H), PairData("eg", H.counit, sigma_g)])


def sweedler_corrupted():
    """The four-dimensional example with the antipode sign on x flipped.

    Built without validation, for negative tests: check_hopf_axioms must
    fail on the antipode equations and nothing else.
    """
    ctx = _rational_ctx()
    obj, m, u, cm, cu, s = _sweedler_maps(ctx, corrupt_antipode=True)
    return HopfAlgebra.unchecked(ctx, obj, m, u, cm, cu, s)


def _anyonic(q):
    if q is None:
        q = Fraction(-1)
    if isinstance(q, CycElt):
        field = q.field
    else:
        field = RationalField()
        q = field.coerce(q)
    ctx = CategoryCtx(field, GradedQBraiding(q, field),
                      GradedQTwist(q, field))
    one = field.one
    obj = Obj("line", 2, (0, 1), field)
    hh = tensor_obj([obj, obj])
    # Basis 1, x with x^2 = 0; x is primitive.
    mult = Mor(hh, obj, {0: {0: one}, 1: {1: one}, 2: {1: one}})
    unit = column_mor(obj, [one, 0])
    comult = Mor(obj, hh, {0: {0: one}, 1: {1: one, 2: one}})
    counit = row_mor(obj, [one, 0])
    antipode = Mor(obj, obj, {0: {0: one}, 1: {1: -one}})
    H = HopfAlgebra(ctx, obj, mult, unit, comult, counit, antipode)
    return AlgebraBundle("anyonic_line_q", H, [_eu_pair(H)])


def gaussian_binomial(n, k, q, field):
    """[n choose k] with parameter q, by the Pascal recurrence."""
    if k < 0 or k > n:
        return field.zero
    row = [field.one]
    for m in range(1, n + 1):
        nxt = [field.one]
        for j in range(1, m):
            nxt.append(row[j - 1] + row[j] * q ** j)
        nxt.append(field.one)
        row = nxt
    return row[k]


def braided_line(order=3):
    """Cyclotomic graded line of the given order, crossing scalar a
    primitive root of unity. Not a registry entry; used to calibrate
    crossing senses because q and 1/q differ here."""
    if order < 3:
        raise ValueError("braided_line wants order >= 3")
    field = CyclotomicField(order)
    q = field.gen
    ctx = CategoryCtx(field, GradedQBraiding(q, field),
                      GradedQTwist(q, field))
    d = order
    one = field.one
    obj = Obj("bline", d, tuple(range(d)), field)
    hh = tensor_obj([obj, obj])
    mcols = {}
    for i in range(d):
        for j in range(d):
            if i + j < d:
                mcols[i * d + j] = {i + j: one}
    mult = Mor(hh, obj, mcols)
    unit = column_mor(obj, [one] + [0] * (d - 1))
    ccols = {}
    for k in range(d):
        ccols[k] = {j * d + (k - j): gaussian_binomial(k, j, q, field)
                    for j in range(k + 1)}
    comult = Mor(obj, hh, ccols)
    counit = row_mor(obj, [one] + [0] * (d - 1))
    scols = {}
    for k in range(d):
        val = q ** (k * (k - 1) // 2)
        scols[k] = {k: val if k % 2 == 0 else -val}
    antipode = Mor(obj, obj, scols)
    H = HopfAlgebra(ctx, obj, mult, unit, comult, counit, antipode)
    return AlgebraBundle("braided_line", H, [_eu_pair(H)])
