"""Identity suite for a Hopf algebra carrying a modular pair.

run_lemma_suite machine-checks, as exact matrix equalities, the stack of
identities the cyclic operators rest on: how the twisted antipode moves
through products, coproducts, and the character-paired coaction; how the
level-n cyclic operator reduces to lower levels; how comultiplications,
products, and counits slide through a cycle; how right-multiplication by
the distinguished group-like migrates across strands; and how the
character-twisted endomorphism exchanges with the diagonal action.

Each family lands in its own subreport so a failure names both the level
and the identity that broke.
"""

from .cm import ModularPair, counit_unit_pair, tau
from .hopf import (
    adjoint_action,
    coadjoint_coaction,
    diagonal_action,
    twisted_antipode,
)
from .reports import Report, parallel_map
from .tensorcat import Mor, chain, compose, tensor_mor


def _character_twist(H, delta):
    # (delta tensor id) after the one-strand coadjoint coaction; a
    # bialgebra endomorphism, which the character-coaction family verifies.
    idh = Mor.identity(H.carrier)
    return compose(tensor_mor(delta, idh), coadjoint_coaction(H, "left", 1))


def _antipode_checks(H, pair):
    ctx = H.ctx
    h = H.carrier
    idh = Mor.identity(h)
    st = twisted_antipode(H, pair.delta)
    S = H.antipode
    cross = ctx.tau(h, h)
    paired = compose(tensor_mor(pair.delta, S),
                     coadjoint_coaction(H, "left", 1))
    return [
        ("splits-comultiplication",
         lambda: (compose(H.comult, st),
                  chain(tensor_mor(S, st), cross, H.comult))),
        ("reverses-products",
         lambda: (compose(st, H.mult),
                  chain(H.mult, tensor_mor(st, st), cross))),
        ("convolution-inverts-identity",
         lambda: (chain(H.mult, tensor_mor(st, idh), H.comult),
                  compose(H.unit, pair.delta))),
        ("matches-character-paired-coaction",
         lambda: (chain(tensor_mor(pair.delta, idh), H.comult, st),
                  paired)),
        ("square-factors-through-coaction",
         lambda: (compose(st, st), compose(S, paired))),
        ("absorbs-split-product",
         lambda: (chain(H.mult,
                        tensor_mor(st, idh),
                        tensor_mor(H.mult, idh),
                        tensor_mor(idh, cross),
                        tensor_mor(H.comult, idh)),
                  tensor_mor(pair.delta, st))),
        ("counit-collapses-to-character",
         lambda: (compose(H.counit, st), pair.delta)),
        ("agrees-with-antipode-on-unit-image",
         lambda: (compose(st, pair.sigma), compose(S, pair.sigma))),
    ]


def _reduced_cycle(H, pair, n):
    # Split strand 1; the (counit, unit) cycle eats (h2, x2..x_{n-1}) and
    # its last leg multiplies x_n; S~(h1)sigma crosses positively to the
    # back.  Valid for n >= 2.
    idh = Mor.identity(H.carrier)
    lower = tau(H, counit_unit_pair(H), n - 1)
    rest = H.obj_pow(n - 1)
    return chain(
        H.ctx.tau(H.carrier, rest),
        tensor_mor(tau(H, pair, 1), H.id_pow(n - 1)),
        tensor_mor(H.id_pow(n - 1), H.mult),
        tensor_mor(tensor_mor(idh, lower), idh),
        tensor_mor(H.comult, H.id_pow(n - 1)),
    )


def _unfolded_cycle(H, pair, n):
    # Character-weight strand 1, run the lower (counit, unit) cycle on the
    # first n-1 strands, split its last leg, cross the outer copy
    # positively past x_n, then close with two products (the outer one
    # absorbing sigma).  Valid for n >= 2.
    idh = Mor.identity(H.carrier)
    lower = tau(H, counit_unit_pair(H), n - 1)
    weigh = compose(tensor_mor(pair.delta, idh), H.comult)
    return chain(
        tensor_mor(tensor_mor(H.id_pow(n - 2), H.mult),
                   compose(H.mult, tensor_mor(idh, pair.sigma))),
        tensor_mor(H.id_pow(n - 1), H.ctx.tau(H.carrier, H.carrier)),
        tensor_mor(tensor_mor(H.id_pow(n - 2), H.comult), idh),
        tensor_mor(lower, idh),
        tensor_mor(weigh, H.id_pow(n - 1)),
    )


def _recursion_checks(H, pair, n_max):
    jobs = []
    for n in range(2, n_max + 1):
        jobs.append(("n=%d reduces-to-counit-unit-cycle" % n,
                     lambda n=n: (tau(H, pair, n),
                                  _reduced_cycle(H, pair, n))))
        jobs.append(("n=%d unfolds-one-level" % n,
                     lambda n=n: (tau(H, pair, n),
                                  _unfolded_cycle(H, pair, n))))
    return jobs


def _interchange_checks(H, pair, n_max):
    ctx = H.ctx
    h = H.carrier
    idh = Mor.identity(h)
    eu = counit_unit_pair(H)
    jobs = []
    for n in range(2, n_max + 1):
        def comult_slides(n=n):
            lhs = compose(tensor_mor(H.comult, H.id_pow(n - 1)),
                          tau(H, eu, n))
            rhs = compose(tau(H, eu, n + 1),
                          tensor_mor(tensor_mor(idh, H.comult),
                                     H.id_pow(n - 2)))
            return lhs, rhs

        def product_slides(n=n):
            t = tau(H, eu, n)
            lhs = compose(t, tensor_mor(H.id_pow(n - 1), H.mult))
            rhs = chain(
                tensor_mor(tensor_mor(H.id_pow(n - 2), H.mult), idh),
                tensor_mor(H.id_pow(n - 1), ctx.tau(h, h)),
                tensor_mor(t, idh),
            )
            return lhs, rhs

        def rebuilds(n=n):
            rhs = chain(
                tensor_mor(tensor_mor(H.id_pow(n - 2), H.mult), idh),
                tensor_mor(H.id_pow(n - 1), ctx.tau(h, h)),
                tensor_mor(tensor_mor(H.id_pow(n - 2), H.comult), idh),
                tensor_mor(tau(H, eu, n - 1), idh),
            )
            return tau(H, eu, n), rhs

        def counit_closes(n=n):
            lhs = compose(tensor_mor(H.id_pow(n - 1), H.counit),
                          tau(H, eu, n))
            rhs = compose(tensor_mor(H.id_pow(n - 2), H.mult),
                          tensor_mor(tau(H, eu, n - 1), idh))
            return lhs, rhs

        jobs.append(("n=%d comultiplication-slides-through" % n,
                     comult_slides))
        jobs.append(("n=%d product-slides-through" % n, product_slides))
        jobs.append(("n=%d rebuilds-from-lower-level" % n, rebuilds))
        jobs.append(("n=%d counit-closes-level" % n, counit_closes))
    return jobs


def _flow_checks(H, pair, n_max):
    idh = Mor.identity(H.carrier)
    rmul = compose(H.mult, tensor_mor(idh, pair.sigma))

    def at(p, n):
        return tensor_mor(tensor_mor(H.id_pow(p - 1), rmul),
                          H.id_pow(n - p))

    jobs = []
    for n in range(1, n_max + 1):
        def strand1(n=n):
            t = tau(H, counit_unit_pair(H), n)
            lhs = compose(t, at(1, n))
            rhs = chain(diagonal_action(H, "left", n),
                        tensor_mor(compose(H.antipode, pair.sigma),
                                   H.id_pow(n)),
                        t)
            return lhs, rhs

        jobs.append(("n=%d strand-1-becomes-diagonal" % n, strand1))
        for j in range(2, n + 1):
            jobs.append((
                "n=%d j=%d strand-steps-back" % (n, j),
                lambda n=n, j=j: (
                    compose(tau(H, counit_unit_pair(H), n), at(j, n)),
                    compose(at(j - 1, n), tau(H, counit_unit_pair(H), n)),
                )))
    return jobs


def _coaction_checks(H, pair, n_max):
    phi = _character_twist(H, pair.delta)
    jobs = [
        ("composite-preserves-products",
         lambda: (compose(phi, H.mult),
                  compose(H.mult, tensor_mor(phi, phi)))),
        ("composite-preserves-unit",
         lambda: (compose(phi, H.unit), H.unit)),
        ("composite-preserves-coproduct",
         lambda: (compose(H.comult, phi),
                  compose(tensor_mor(phi, phi), H.comult))),
        ("composite-preserves-counit",
         lambda: (compose(H.counit, phi), H.counit)),
    ]
    for n in range(1, n_max + 1):
        def exchanges(n=n):
            weight = compose(tensor_mor(pair.delta, H.id_pow(n)),
                             coadjoint_coaction(H, "left", n))
            act = diagonal_action(H, "left", n)
            return (compose(weight, act),
                    compose(act, tensor_mor(phi, weight)))

        def factors(n=n):
            conj = compose(adjoint_action(H, "right", n),
                           tensor_mor(H.id_pow(n), pair.sigma))
            left = compose(diagonal_action(H, "left", n),
                           tensor_mor(compose(H.antipode, pair.sigma),
                                      H.id_pow(n)))
            right = compose(diagonal_action(H, "right", n),
                            tensor_mor(H.id_pow(n), pair.sigma))
            return conj, compose(left, right)

        jobs.append(("n=%d exchanges-with-diagonal-action" % n, exchanges))
        jobs.append(("n=%d conjugation-factors-through" % n, factors))
    return jobs


def run_lemma_suite(H, delta, sigma, n_max=4):
    """Evaluate both sides of every suite identity for (delta, sigma),
    one subreport per family.  The pair is validated up front, so a
    non-modular input raises ValidationError rather than producing a
    misleading failure list."""
    pair = ModularPair(H, delta, sigma)
    families = [
        ("twisted-antipode", _antipode_checks(H, pair)),
        ("cycle-recursion", _recursion_checks(H, pair, n_max)),
        ("cycle-interchange", _interchange_checks(H, pair, n_max)),
        ("unit-image-flow", _flow_checks(H, pair, n_max)),
        ("character-coaction", _coaction_checks(H, pair, n_max)),
    ]
    flat = [(fam, name, fn) for fam, jobs in families for name, fn in jobs]
    results = parallel_map(lambda job: job[2](), flat)
    rep = Report("lemma-suite")
    subs = {fam: rep.extend(Report(fam)) for fam, _ in families}
    for (fam, name, _), (lhs, rhs) in zip(flat, results):
        subs[fam].add_eq(name, lhs, rhs)
    return rep
