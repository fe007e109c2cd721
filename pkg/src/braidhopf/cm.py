"""Character/grouplike pairs, the twisted involution predicate, the tower
of cyclic operators on tensor powers of a Hopf algebra, and the exact
verification of the closed power formulas.

Conventions, once and for all:

  * a pair (delta, sigma) consists of a character delta: H -> 1 (algebra
    morphism) and a grouplike-style sigma: 1 -> H (coalgebra morphism)
    with delta o sigma = id;
  * st denotes the delta-twisted antipode (delta (x) S) Delta;
  * the cyclic operator at level n >= 1 feeds st of the first tensorand
    as the actor of the left diagonal action on the remaining n - 1
    strands with sigma appended, and level 0 is the identity of the unit;
  * cofaces insert the unit (i = 0), comultiply the i-th strand
    (1 <= i <= n - 1), or append sigma (i = n); codegeneracies evaluate
    the counit on the (j + 1)-th strand.

The level-n operator to the power k collapses to closed right-hand sides
(KthPower for 2 <= k <= n, NPlus1 and RemarkEU for k = n + 1); verify_powers
compares brute-force powers against all of them, and against the categorical
twist exactly when the twisted involution predicate holds.
"""

from __future__ import annotations

from .errors import RangeError, ShapeError, ValidationError
from .hopf import (adjoint_action, coadjoint_coaction, diagonal_action,
                   twisted_antipode)
from .reports import Report, parallel_map
from .tensorcat import Mor, chain, compose, tensor_mor, unit_obj
from .words import ParaCocyclicData


class ModularPair:
    """Validated (delta, sigma) pair for a Hopf algebra.

    Construction checks all three defining conditions exactly and raises
    ValidationError carrying the diagnostic report on failure.
    """

    __slots__ = ("delta", "sigma")

    def __init__(self, H, delta, sigma):
        ok, report = check_modular_pair(H, delta, sigma)
        if not ok:
            raise ValidationError("not a modular pair", report=report)
        self.delta = delta
        self.sigma = sigma


def check_modular_pair(H, delta, sigma):
    """Exact check that (delta, sigma) is a valid pair; returns
    (bool, report) with one named check per condition."""
    one = unit_obj(H.field)
    if delta.dom != H.carrier or delta.cod != one:
        raise ShapeError("delta must map the carrier to the unit object")
    if sigma.dom != one or sigma.cod != H.carrier:
        raise ShapeError("sigma must map the unit object to the carrier")
    rep = Report("modular-pair")
    id_one = Mor.identity(one)
    rep.add_eq("delta-multiplicative",
               compose(delta, H.mult), tensor_mor(delta, delta))
    rep.add_eq("delta-unital", compose(delta, H.unit), id_one)
    rep.add_eq("sigma-comultiplicative",
               compose(H.comult, sigma), tensor_mor(sigma, sigma))
    rep.add_eq("sigma-counital", compose(H.counit, sigma), id_one)
    rep.add_eq("delta-sigma-identity", compose(delta, sigma), id_one)
    return rep.passed, rep


def counit_unit_pair(H):
    """The pair (counit, unit), valid for every Hopf algebra."""
    return ModularPair(H, H.counit, H.unit)


def _sigma_conjugation(H, sigma):
    """y |-> S(sigma) y sigma, the one-strand right conjugation by sigma."""
    return compose(adjoint_action(H, "right", 1),
                   tensor_mor(Mor.identity(H.carrier), sigma))


def check_twisted_mpi(H, pair):
    """True when conjugation by sigma composed with the square of the
    twisted antipode equals the twist on the carrier."""
    st = twisted_antipode(H, pair.delta)
    lhs = chain(_sigma_conjugation(H, pair.sigma), st, st)
    return lhs == H.ctx.theta(H.carrier)


def tau(H, pair, n):
    """Cyclic operator on the n-th tensor power for the given pair."""
    if n < 0:
        raise ValueError("tau wants n >= 0, got %d" % n)
    if n == 0:
        return Mor.identity(H.obj_pow(0))
    st = twisted_antipode(H, pair.delta)
    insert = tensor_mor(tensor_mor(st, H.id_pow(n - 1)), pair.sigma)
    return compose(diagonal_action(H, "left", n), insert)


def build_cm(H, pair, n_max):
    """Truncated paracocyclic data on levels H^(x n), 0 <= n <= n_max."""
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    levels = [H.obj_pow(n) for n in range(n_max + 1)]
    idh = Mor.identity(H.carrier)
    cofaces = {}
    for n in range(1, n_max + 1):
        if n == 1:
            cofaces[1] = [H.unit, pair.sigma]
            continue
        row = [tensor_mor(H.unit, H.id_pow(n - 1))]
        for i in range(1, n):
            row.append(tensor_mor(tensor_mor(H.id_pow(i - 1), H.comult),
                                  H.id_pow(n - 1 - i)))
        row.append(tensor_mor(H.id_pow(n - 1), pair.sigma))
        cofaces[n] = row
    codegens = {}
    for n in range(n_max):
        codegens[n] = [
            tensor_mor(tensor_mor(H.id_pow(j), H.counit), H.id_pow(n - j))
            for j in range(n + 1)
        ]
    taus = [tau(H, pair, n) for n in range(n_max + 1)]
    return ParaCocyclicData(H.ctx, levels, cofaces, codegens, taus, n_max)


def _mor_tensor_power(f, m):
    if m < 1:
        raise ValueError("tensor power of a morphism wants m >= 1")
    out = f
    for _ in range(m - 1):
        out = tensor_mor(out, f)
    return out


def _double_braid(H, n):
    """Full positive double braiding on H^(x n): the factor relating the
    twist of the tensor power to the tensor power of the twist."""
    if n <= 1:
        return H.id_pow(max(n, 0))

    def build():
        rest = H.obj_pow(n - 1)
        return chain(
            tensor_mor(Mor.identity(H.carrier), _double_braid(H, n - 1)),
            H.ctx.tau(rest, H.carrier),
            H.ctx.tau(H.carrier, rest))

    return H._memo(("double_braid", n), build)


def _braided_strandwise(H, f, m):
    """m-strand extension of a one-strand operator: plain tensor power in
    the symmetric case, tensor power composed with the full double
    braiding in general (the same recursion the twist itself obeys)."""
    return compose(_mor_tensor_power(f, m), _double_braid(H, m))


def rhs_power_formula(H, pair, n, k, which):
    """Closed right-hand side that the k-th power of the level-n cyclic
    operator collapses to.

    KthPower: n >= 2, 2 <= k <= n. Append sigma, rotate the first k - 1
    strands past the rest, hit the rotated block with the braided
    strandwise extension of (st-square then right-multiply sigma), then
    act by st of the first strand on the remaining n.

    NPlus1: n >= 1, k = n + 1. Braided strandwise extension of
    y |-> S(sigma) st(st(y)) sigma.

    RemarkEU: n >= 0, k = n + 1. The (counit, unit) power conjugated by
    the delta-coefficient of the coadjoint coaction and the right adjoint
    action of sigma.
    """
    if which == "KthPower":
        if n < 2 or not 2 <= k <= n:
            raise RangeError("KthPower wants n >= 2 and 2 <= k <= n")
        st = twisted_antipode(H, pair.delta)
        append = tensor_mor(H.id_pow(n), pair.sigma)
        rotate = H.tau_pow(k - 1, n + 2 - k)
        strand = compose(tau(H, pair, 1), st)
        decorate = tensor_mor(H.id_pow(n - k + 2),
                              _braided_strandwise(H, strand, k - 1))
        act = compose(diagonal_action(H, "left", n),
                      tensor_mor(st, H.id_pow(n)))
        return chain(act, decorate, rotate, append)
    if which == "NPlus1":
        if n < 1 or k != n + 1:
            raise RangeError("NPlus1 wants n >= 1 and k = n + 1")
        st = twisted_antipode(H, pair.delta)
        strand = chain(_sigma_conjugation(H, pair.sigma), st, st)
        return _braided_strandwise(H, strand, n)
    if which == "RemarkEU":
        if n < 0 or k != n + 1:
            raise RangeError("RemarkEU wants n >= 0 and k = n + 1")
        plain = tau(H, counit_unit_pair(H), n)
        power = Mor.identity(H.obj_pow(n))
        for _ in range(n + 1):
            power = compose(plain, power)
        coeff = compose(tensor_mor(pair.delta, H.id_pow(n)),
                        coadjoint_coaction(H, "left", n))
        conj = compose(adjoint_action(H, "right", n),
                       tensor_mor(H.id_pow(n), pair.sigma))
        return chain(conj, power, coeff)
    raise ValueError("which must be KthPower, NPlus1, or RemarkEU")


class PowersReport(Report):
    """Relation report for the power formulas plus the recorded value of
    the twisted involution predicate."""

    def __init__(self, mpi):
        super().__init__("powers")
        self.mpi = bool(mpi)

    def to_json(self):
        out = super().to_json()
        out["twisted_mpi"] = self.mpi
        return out


def verify_powers(H, pair, n_max):
    """Compare brute-force powers of the cyclic operators against every
    closed formula in range, and against the twist iff the twisted
    involution predicate holds (its value is recorded either way)."""
    mpi = check_twisted_mpi(H, pair)
    powers = {}
    for n in range(n_max + 1):
        acc = tau(H, pair, n)
        powers[(n, 1)] = acc
        for k in range(2, n + 2):
            acc = compose(powers[(n, 1)], acc)
            powers[(n, k)] = acc
    jobs = []
    for n in range(n_max + 1):
        for k in range(2, n + 1):
            jobs.append((
                "n=%d k=%d KthPower" % (n, k),
                lambda n=n, k=k: (powers[(n, k)],
                                  rhs_power_formula(H, pair, n, k,
                                                    "KthPower"))))
        k = n + 1
        if n >= 1:
            jobs.append((
                "n=%d k=%d NPlus1" % (n, k),
                lambda n=n, k=k: (powers[(n, k)],
                                  rhs_power_formula(H, pair, n, k,
                                                    "NPlus1"))))
        jobs.append((
            "n=%d k=%d RemarkEU" % (n, k),
            lambda n=n, k=k: (powers[(n, k)],
                              rhs_power_formula(H, pair, n, k, "RemarkEU"))))
        if mpi:
            jobs.append((
                "n=%d k=%d twist" % (n, k),
                lambda n=n, k=k: (powers[(n, k)],
                                  H.ctx.theta(H.obj_pow(n)))))
    results = parallel_map(lambda job: job[1](), jobs)
    rep = PowersReport(mpi)
    for (name, _), (lhs, rhs) in zip(jobs, results):
        rep.add_eq(name, lhs, rhs)
    return rep
