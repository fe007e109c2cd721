import random

import pytest

from braidhopf.algebras import braided_line, builtin
from braidhopf.cm import build_cm, counit_unit_pair
from braidhopf.errors import ShapeError, ValidationError
from braidhopf.modcoalg import (
    ModuleCoalgebra,
    TraceCandidate,
    build_alpha,
    build_c_object,
    check_action_exchange,
    check_module_coalgebra,
    check_trace,
    regular_module_coalgebra,
    solve_traces,
    verify_cm_trace,
)
from braidhopf.tensorcat import Mor, column_mor, compose
from braidhopf.words import check_relations

BUILTINS = ["trivial", "group_c2", "group_s3", "sweedler", "anyonic_line_q"]


def _bundles():
    out = [builtin(name) for name in BUILTINS]
    out.append(braided_line(3))
    return out


def _proportional(u, v, field):
    """Columns of two vectors 1 -> X are linearly dependent."""
    a = [u.cols.get(0, {}).get(i, field.zero) for i in range(u.cod.dim)]
    b = [v.cols.get(0, {}).get(i, field.zero) for i in range(v.cod.dim)]
    for i in range(len(a)):
        for j in range(i + 1, len(a)):
            if a[i] * b[j] - a[j] * b[i] != field.zero:
                return False
    return True


@pytest.mark.parametrize("name", BUILTINS)
def test_regular_construction_passes_axioms(name):
    C = regular_module_coalgebra(builtin(name).hopf)
    rep = check_module_coalgebra(C)
    assert rep.passed
    names = [c.name for c in rep.checks]
    assert "comult-respects-action" in names
    assert "grade-homogeneity-action" in names


def test_corrupted_action_is_rejected_by_name():
    H = builtin("sweedler").hopf
    cols = {c: dict(col) for c, col in H.mult.cols.items()}
    cols[9] = {r: -v for r, v in cols[9].items()}
    bad = Mor(H.mult.dom, H.mult.cod, cols)
    with pytest.raises(ValidationError) as err:
        ModuleCoalgebra(H, H.carrier, H.comult, H.counit, bad)
    failing = [c.name for c in err.value.report.checks if not c.passed]
    assert "action-associativity" in failing
    assert "comult-respects-action" in failing


def test_unchecked_defers_to_explicit_validation():
    H = builtin("anyonic_line_q").hopf
    cols = {c: dict(col) for c, col in H.mult.cols.items()}
    cols[0] = {1: H.field.one}
    bad = ModuleCoalgebra.unchecked(H, H.carrier, H.comult, H.counit,
                                    Mor(H.mult.dom, H.mult.cod, cols))
    rep = check_module_coalgebra(bad)
    assert not rep.passed
    check = [c for c in rep.checks if c.name == "grade-homogeneity-action"][0]
    assert not check.passed
    assert "links grade 0 to grade 1" in check.detail


def test_wrong_boundary_raises_shape_error():
    H = builtin("sweedler").hopf
    with pytest.raises(ShapeError):
        ModuleCoalgebra(H, H.carrier, H.comult, H.comult, H.mult)


@pytest.mark.parametrize("bundle", _bundles(), ids=lambda b: b.name)
def test_tower_satisfies_all_relation_families(bundle):
    C = regular_module_coalgebra(bundle.hopf)
    P = build_c_object(C, 3)
    rep = check_relations(P, 3, ("SR", "PCR", "TwistedCC"))
    assert rep.passed


def test_trivial_tower_rotations_are_identity():
    C = regular_module_coalgebra(builtin("trivial").hopf)
    P = build_c_object(C, 3)
    for n in range(4):
        assert P.tau[n] == Mor.identity(P.levels[n])


def test_anyonic_rotation_at_level_zero_is_signed_twist():
    H = builtin("anyonic_line_q").hopf
    P = build_c_object(regular_module_coalgebra(H), 2)
    one = H.field.one
    assert P.tau[0] == Mor(H.carrier, H.carrier, {0: {0: one}, 1: {1: -one}})


# Middle cofaces of the two towers intertwine the level maps for any
# starting vector whatever, traced or not; on the parameter-3 line this
# pins the crossing sense used while distributing the acting strands.
def test_level_maps_commute_with_middle_cofaces_for_any_vector():
    bundle = braided_line(3)
    H = bundle.hopf
    C = regular_module_coalgebra(H)
    field = H.field
    v = column_mor(C.carrier, [field.one, field.one + field.one, field.gen])
    source = build_cm(H, bundle.pairs[0], 3)
    target = build_c_object(C, 3)
    alphas = [build_alpha(C, v, n) for n in range(4)]
    for n in (2, 3):
        for i in range(1, n):
            assert (compose(alphas[n], source.cofaces[n][i])
                    == compose(target.cofaces[n][i], alphas[n - 1]))


def test_level_map_boundaries():
    H = builtin("sweedler").hopf
    C = regular_module_coalgebra(H)
    basis = solve_traces(C, H.counit, builtin("sweedler").pairs[1].sigma)
    a2 = build_alpha(C, basis[0].alpha, 2)
    assert a2.dom.dim == 16
    assert a2.cod.dim == 64
    assert build_alpha(C, basis[0].alpha, 0) == basis[0].alpha


@pytest.mark.parametrize("name,pair_name,dim", [
    ("trivial", "eu", 1),
    ("group_c2", "eu", 1),
    ("sweedler", "eu", 0),
    ("sweedler", "eg", 1),
    ("anyonic_line_q", "eu", 0),
])
def test_solution_space_dimensions(name, pair_name, dim):
    bundle = builtin(name)
    C = regular_module_coalgebra(bundle.hopf)
    pair = [p for p in bundle.pairs if p.name == pair_name][0]
    basis = solve_traces(C, pair.delta, pair.sigma)
    assert len(basis) == dim


def test_parameter_line_solution_space_is_empty():
    bundle = braided_line(3)
    C = regular_module_coalgebra(bundle.hopf)
    assert solve_traces(C, bundle.pairs[0].delta,
                        bundle.pairs[0].sigma) == []


def test_group_c2_solution_is_the_sum_of_grouplikes():
    H = builtin("group_c2").hopf
    C = regular_module_coalgebra(H)
    basis = solve_traces(C, H.counit, H.unit)
    entries = basis[0].alpha.cols[0]
    assert entries[0] == entries[1] != H.field.zero


def test_group_c2_unit_vector_is_not_a_solution():
    H = builtin("group_c2").hopf
    C = regular_module_coalgebra(H)
    ok, rep = check_trace(C, H.counit, H.unit, H.unit)
    assert not ok
    assert not rep.passed


@pytest.mark.parametrize("name,pair_index,seed", [
    ("group_c2", 0, 13),
    ("sweedler", 1, 14),
])
def test_vectors_outside_the_span_fail(name, pair_index, seed):
    bundle = builtin(name)
    H = bundle.hopf
    C = regular_module_coalgebra(H)
    pair = bundle.pairs[pair_index]
    basis = solve_traces(C, pair.delta, pair.sigma)
    assert len(basis) == 1
    field = H.field
    rng = random.Random(seed)
    for _ in range(20):
        vec = [field.coerce(rng.randint(-5, 5)) for _ in range(H.carrier.dim)]
        v = column_mor(H.carrier, vec)
        if _proportional(v, basis[0].alpha, field):
            vec[0] = vec[0] + field.one
            v = column_mor(H.carrier, vec)
        ok, _ = check_trace(C, pair.delta, pair.sigma, v)
        assert not ok


def test_perturbed_solution_fails_with_named_condition():
    bundle = builtin("sweedler")
    H = bundle.hopf
    C = regular_module_coalgebra(H)
    pair = bundle.pairs[1]
    good = solve_traces(C, pair.delta, pair.sigma)[0].alpha
    vec = [good.cols[0].get(i, H.field.zero) for i in range(4)]
    vec[2] = vec[2] + H.field.one
    perturbed = column_mor(H.carrier, vec)
    ok, rep = check_trace(C, pair.delta, pair.sigma, perturbed)
    assert not ok
    failing = {c.name for c in rep.checks if not c.passed}
    assert failing <= {"character-invariance", "rotation-invariance"}
    assert failing
    with pytest.raises(ValidationError):
        TraceCandidate(C, pair.delta, pair.sigma, perturbed)


def test_solver_validates_the_pair_first():
    H = builtin("sweedler").hopf
    C = regular_module_coalgebra(H)
    not_grouplike = column_mor(H.carrier, [0, 0, H.field.one, 0])
    with pytest.raises(ValidationError):
        solve_traces(C, H.counit, not_grouplike)


@pytest.mark.parametrize("name", BUILTINS)
def test_every_solver_solution_bridges_the_towers(name):
    bundle = builtin(name)
    C = regular_module_coalgebra(bundle.hopf)
    for pair in bundle.pairs:
        for cand in solve_traces(C, pair.delta, pair.sigma):
            rep = verify_cm_trace(bundle.hopf, pair, C, cand, 3)
            assert rep.passed
            names = [c.name for c in rep.checks]
            assert "coface n=3 i=3" in names
            assert "codegeneracy n=2 j=2" in names
            assert "rotation n=0" in names


def test_bridge_rejects_vectors_failing_the_conditions():
    H = builtin("group_c2").hopf
    C = regular_module_coalgebra(H)
    eu = counit_unit_pair(H)
    with pytest.raises(ValidationError):
        verify_cm_trace(H, eu, C, H.unit, 2)


@pytest.mark.parametrize("bundle", _bundles(), ids=lambda b: b.name)
def test_diagonal_action_threads_through_the_split(bundle):
    C = regular_module_coalgebra(bundle.hopf)
    rep = check_action_exchange(C, 4)
    assert rep.passed
    assert len(rep.checks) == 3
