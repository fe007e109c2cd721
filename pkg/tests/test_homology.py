import random
from fractions import Fraction

import pytest

from braidhopf.algebras import builtin
from braidhopf.braiding import CategoryCtx, IdentityTwist, TrivialBraiding
from braidhopf.cm import build_cm, counit_unit_pair
from braidhopf.errors import NotAMorphism, NotCyclic, TruncationError
from braidhopf.fields import RationalField
from braidhopf.homology import build_bicomplex, induced_map_on_hc, total_homology
from braidhopf.modcoalg import build_alpha, build_c_object, regular_module_coalgebra, solve_traces
from braidhopf.tensorcat import Mor, Obj, compose, invert, mor_rank
from braidhopf.words import CyclicModuleData, ParaCocyclicData, hom_transport


def _ctx():
    field = RationalField()
    return CategoryCtx(field, TrivialBraiding(), IdentityTwist()), field


def _point_module(n_max, chain=False):
    ctx, field = _ctx()
    pt = Obj("pt", 1, (0,), field)
    ident = Mor.identity(pt)
    levels = [pt] * (n_max + 1)
    ops = {n: [ident] * (n + 1) for n in range(1, n_max + 1)}
    degens = {n: [ident] * (n + 1) for n in range(n_max)}
    taus = [ident] * (n_max + 1)
    cls = CyclicModuleData if chain else ParaCocyclicData
    return cls(ctx, levels, ops, degens, taus, n_max)


def _dense(m):
    zero = m.dom.field.zero
    return [[m.cols.get(c, {}).get(r, zero) for c in range(m.dom.dim)]
            for r in range(m.cod.dim)]


def _float_rank(m):
    numpy = pytest.importorskip("numpy")
    rows = _dense(m)
    if not rows or not rows[0]:
        return 0
    return int(numpy.linalg.matrix_rank(
        numpy.array([[float(v) for v in row] for row in rows])))


def test_point_module_totals_match_hand_matrices():
    bic = build_bicomplex(_point_module(6), 5)
    assert bic.diffs[0].is_zero()
    assert _dense(bic.diffs[1]) == [[1, 0], [2, -1], [0, 1]]
    assert bic.diffs[2].is_zero()
    assert bic.diffs[4].is_zero()
    assert mor_rank(bic.diffs[3]) == 4


def test_point_module_homology_against_independent_ranks():
    bic = build_bicomplex(_point_module(6), 5)
    ranks = {n: _float_rank(bic.diffs[n]) for n in bic.diffs}
    dims = [bic.totals[n].dim for n in range(5)]
    expected = [dims[n] - ranks[n] - ranks.get(n - 1, 0) for n in range(5)]
    assert expected == [1, 0, 1, 0, 1]
    rep = total_homology(bic, 5)
    assert rep.homology[:5] == [1, 0, 1, 0, 1]
    assert [d.trusted for d in rep.degrees] == [True] * 5 + [False]


def test_point_module_column_and_row_pattern():
    bic = build_bicomplex(_point_module(6), 4)
    one = Fraction(1)
    for q in range(1, 5):
        expected = one if q % 2 == 0 else Fraction(0)
        assert _dense(bic.b[q]) == [[expected]]
        assert _dense(bic.bprime[q]) == [[one - expected]]
    for q in range(5):
        assert _dense(bic.lam[q]) == [[one if q % 2 == 0 else -one]]


def test_chain_point_module_same_dimensions():
    bic = build_bicomplex(_point_module(6, chain=True), 5)
    rep = total_homology(bic, 5)
    assert rep.direction == "chain"
    assert rep.homology[:5] == [1, 0, 1, 0, 1]


def test_zero_module_has_zero_homology():
    ctx, field = _ctx()
    z = Obj("z", 0, (), field)
    empty = Mor(z, z, {})
    levels = [z] * 4
    ops = {n: [empty] * (n + 1) for n in range(1, 4)}
    degens = {n: [empty] * (n + 1) for n in range(3)}
    P = ParaCocyclicData(ctx, levels, ops, degens, [empty] * 4, 3)
    rep = total_homology(build_bicomplex(P, 3), 3)
    assert rep.homology == [0, 0, 0, 0]


def test_trivial_algebra_tower_transports_to_the_point():
    H = builtin("trivial").hopf
    P = build_cm(H, counit_unit_pair(H), 5)
    X = hom_transport(P, "FromUnit")
    assert all(x.dim == 1 for x in X.levels)
    rep = total_homology(build_bicomplex(X, 5), 5)
    assert rep.homology[:5] == [1, 0, 1, 0, 1]


def test_sweedler_chain_module_composites_vanish_to_degree_six():
    bundle = builtin("sweedler")
    X = hom_transport(build_cm(bundle.hopf, bundle.pairs[1], 6), "ToUnit")
    bic = build_bicomplex(X, 6)
    assert bic.report.passed
    names = {c.name for c in bic.report.checks}
    assert "column composite b b degree 5" in names
    assert "column composite b' b' degree 5" in names
    assert "row composite (1-lambda)N degree 6" in names
    assert "row composite N(1-lambda) degree 6" in names
    assert "square anticommutes column 1 degree 6" in names
    assert "total differential squares to zero degree 6" in names


def test_non_cyclic_input_is_rejected():
    bundle = builtin("sweedler")
    P = build_cm(bundle.hopf, counit_unit_pair(bundle.hopf), 3)
    with pytest.raises(NotCyclic):
        build_bicomplex(P, 3)


def test_graded_rotation_blocks_raw_but_not_transported():
    bundle = builtin("anyonic_line_q")
    C = regular_module_coalgebra(bundle.hopf)
    P = build_c_object(C, 3)
    with pytest.raises(NotCyclic):
        build_bicomplex(P, 3)
    X = hom_transport(P, "FromUnit")
    assert total_homology(build_bicomplex(X, 3), 3).homology[0] >= 0


def test_bound_errors():
    P = _point_module(3)
    with pytest.raises(TruncationError):
        build_bicomplex(P, 4)
    with pytest.raises(ValueError):
        build_bicomplex(P, 0)
    with pytest.raises(TruncationError):
        total_homology(build_bicomplex(P, 3), 4)


def _sweedler_cocyclic(n_max):
    bundle = builtin("sweedler")
    return hom_transport(build_cm(bundle.hopf, bundle.pairs[1], n_max),
                         "FromUnit")


def test_identity_maps_induce_identity_on_homology():
    X = _sweedler_cocyclic(4)
    ident = [Mor.identity(x) for x in X.levels]
    maps = induced_map_on_hc(X, X, ident, 3)
    rep = total_homology(build_bicomplex(X, 3), 3)
    for n, m in enumerate(maps):
        assert m.dom.dim == m.cod.dim == rep.degrees[n].homology
        assert m == Mor.identity(m.dom)


def test_zero_maps_induce_zero():
    X = _sweedler_cocyclic(4)
    zeros = [Mor.zero(x, x) for x in X.levels]
    for m in induced_map_on_hc(X, X, zeros, 3):
        assert m.is_zero()


def test_trace_tower_induces_maps_on_homology():
    bundle = builtin("sweedler")
    H = bundle.hopf
    pair = bundle.pairs[1]
    C = regular_module_coalgebra(H)
    trace = solve_traces(C, pair.delta, pair.sigma)[0]
    source = hom_transport(build_cm(H, pair, 4), "FromUnit")
    target = hom_transport(build_c_object(C, 4), "FromUnit")
    alphas = [build_alpha(C, trace.alpha, n) for n in range(5)]
    maps = induced_map_on_hc(source, target, alphas, 3)
    src_rep = total_homology(build_bicomplex(source, 3), 3)
    tgt_rep = total_homology(build_bicomplex(target, 3), 3)
    assert len(maps) == 3
    for n, m in enumerate(maps):
        assert m.dom.dim == src_rep.degrees[n].homology
        assert m.cod.dim == tgt_rep.degrees[n].homology


def test_non_commuting_maps_are_rejected():
    X = _sweedler_cocyclic(4)
    maps = [Mor.identity(x) for x in X.levels]
    maps[1] = maps[1].scale(2)
    with pytest.raises(NotAMorphism):
        induced_map_on_hc(X, X, maps, 3)


def test_opposite_directions_are_rejected():
    bundle = builtin("sweedler")
    P = build_cm(bundle.hopf, bundle.pairs[1], 3)
    co = hom_transport(P, "FromUnit")
    ch = hom_transport(P, "ToUnit")
    with pytest.raises(NotAMorphism):
        induced_map_on_hc(co, ch, [Mor.identity(x) for x in co.levels], 2)


def _conjugate_level(X, k, u):
    """Replace level k by the same space in a new basis."""
    u_inv = invert(u)
    cofaces = {n: list(X.cofaces[n]) for n in X.cofaces}
    codegens = {n: list(X.codegens[n]) for n in X.codegens}
    taus = list(X.tau)
    if k in cofaces:
        cofaces[k] = [compose(u, f) for f in cofaces[k]]
    if k + 1 in cofaces:
        cofaces[k + 1] = [compose(f, u_inv) for f in cofaces[k + 1]]
    if k in codegens:
        codegens[k] = [compose(u, f) for f in codegens[k]]
    if k - 1 in codegens:
        codegens[k - 1] = [compose(f, u_inv) for f in codegens[k - 1]]
    taus[k] = compose(u, compose(X.tau[k], u_inv))
    return ParaCocyclicData(X.ctx, X.levels, cofaces, codegens, taus,
                            X.n_max)


def _random_invertible(obj, rng):
    one = obj.field.one
    cols = {}
    for c in range(obj.dim):
        col = {c: one}
        for r in range(c):
            if rng.random() < 0.4:
                col[r] = obj.field.coerce(rng.randint(-3, 3))
        cols[c] = col
    return Mor(obj, obj, cols)


def test_homology_invariant_under_level_basis_change():
    X = _sweedler_cocyclic(4)
    rng = random.Random(21)
    u = _random_invertible(X.levels[2], rng)
    Y = _conjugate_level(X, 2, u)
    rx = total_homology(build_bicomplex(X, 3), 3)
    ry = total_homology(build_bicomplex(Y, 3), 3)
    assert rx.homology == ry.homology

    forward = [Mor.identity(x) for x in X.levels]
    forward[2] = u
    backward = [Mor.identity(x) for x in X.levels]
    backward[2] = invert(u)
    fs = induced_map_on_hc(X, Y, forward, 3)
    bs = induced_map_on_hc(Y, X, backward, 3)
    for n, (f, b) in enumerate(zip(fs, bs)):
        assert mor_rank(f) == f.dom.dim
        assert compose(b, f) == Mor.identity(f.dom)
