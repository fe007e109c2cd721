import random
from fractions import Fraction

import numpy as np
import pytest

from braidhopf.errors import (
    CompositionMismatch,
    FieldMismatch,
    InvalidPermutation,
    ShapeError,
)
from braidhopf.fields import RationalField, make_field
from braidhopf.tensorcat import (
    Mor,
    Obj,
    chain,
    column_mor,
    compose,
    invert,
    mor_diff,
    mor_nullspace,
    mor_rank,
    permutation_mor,
    row_mor,
    solve_linear,
    tensor_many,
    tensor_mor,
    tensor_obj,
    unit_obj,
)

Q = RationalField()


def rand_mor(rng, dom, cod, density=0.6):
    rows = [
        [Fraction(rng.randint(-4, 4)) if rng.random() < density else Fraction(0) for _ in range(dom.dim)]
        for _ in range(cod.dim)
    ]
    return Mor.from_rows(dom, cod, rows)


def as_np(m):
    return np.array([[float(v) for v in row] for row in m.rows()])


def test_obj_structural_equality():
    a = Obj("A", 2, [0, 1], Q)
    b = Obj("B", 2, [0, 1], Q)
    c = Obj("C", 2, [0, 2], Q)
    assert a == b
    assert a != c
    assert a != Obj("A", 2, [0, 1], make_field(3))
    with pytest.raises(ShapeError):
        Obj("bad", 3, [0, 1], Q)


def test_unit_object():
    one = unit_obj(Q)
    assert one.dim == 1
    assert one.grades == (0,)


def test_tensor_obj_grades():
    x = Obj("X", 2, [0, 1], Q)
    xx = tensor_obj([x, x])
    assert xx.dim == 4
    assert list(xx.grades) == [0, 1, 1, 2]
    ox = tensor_obj([unit_obj(Q), x])
    assert ox == x
    with pytest.raises(FieldMismatch):
        tensor_obj([x, Obj("Y", 2, [0, 1], make_field(3))])


def test_compose_hand_example():
    x = Obj("X", 2, [0, 0], Q)
    f = Mor.from_rows(x, x, [[1, 2], [3, 4]])
    g = Mor.from_rows(x, x, [[0, 1], [1, 0]])
    gf = compose(g, f)
    assert gf.rows() == [
        [Fraction(3), Fraction(4)],
        [Fraction(1), Fraction(2)],
    ]
    assert compose(Mor.identity(x), f) == f
    assert compose(f, Mor.identity(x)) == f


def test_compose_mismatch_names_objects():
    x = Obj("X", 2, [0, 0], Q)
    y = Obj("Y", 3, [0, 0, 0], Q)
    f = Mor.zero(x, y)
    g = Mor.zero(x, y)
    with pytest.raises(CompositionMismatch) as err:
        compose(g, f)
    assert "dim 3" in str(err.value) and "dim 2" in str(err.value)


def test_compose_associative_random():
    rng = random.Random(0)
    dims = [2, 3, 2, 4]
    objs = [Obj(f"V{i}", d, [0] * d, Q) for i, d in enumerate(dims)]
    for _ in range(10):
        f = rand_mor(rng, objs[0], objs[1])
        g = rand_mor(rng, objs[1], objs[2])
        h = rand_mor(rng, objs[2], objs[3])
        assert compose(h, compose(g, f)) == compose(compose(h, g), f)
        assert chain(h, g, f) == compose(h, compose(g, f))


def test_tensor_mor_is_kronecker():
    rng = random.Random(1)
    a = Obj("A", 2, [0, 0], Q)
    b = Obj("B", 3, [0, 0, 0], Q)
    for _ in range(8):
        f = rand_mor(rng, a, b)
        g = rand_mor(rng, b, a)
        fg = tensor_mor(f, g)
        assert np.array_equal(as_np(fg), np.kron(as_np(f), as_np(g)))


def test_tensor_mor_hand_example():
    x = Obj("X", 1, [0], Q)
    y = Obj("Y", 2, [0, 0], Q)
    f = Mor.from_rows(x, x, [[2]])
    g = Mor.from_rows(y, y, [[0, 1], [1, 0]])
    assert tensor_mor(f, g).rows() == [
        [Fraction(0), Fraction(2)],
        [Fraction(2), Fraction(0)],
    ]


def test_tensor_functoriality():
    rng = random.Random(2)
    a = Obj("A", 2, [0, 0], Q)
    for _ in range(6):
        f1, f2 = rand_mor(rng, a, a), rand_mor(rng, a, a)
        g1, g2 = rand_mor(rng, a, a), rand_mor(rng, a, a)
        lhs = tensor_mor(compose(f1, f2), compose(g1, g2))
        rhs = compose(tensor_mor(f1, g1), tensor_mor(f2, g2))
        assert lhs == rhs
        # level exchange: f(x)g = (f(x)id)(id(x)g)
        assert tensor_mor(f1, g1) == compose(
            tensor_mor(f1, Mor.identity(a)), tensor_mor(Mor.identity(a), g1)
        )


def test_permutation_mor_swap():
    x = Obj("X", 2, [0, 1], Q)
    swap = permutation_mor([x, x], [1, 0])
    # e_i (x) e_j  ->  e_j (x) e_i
    expect = [[0] * 4 for _ in range(4)]
    for i in range(2):
        for j in range(2):
            expect[j * 2 + i][i * 2 + j] = 1
    assert swap == Mor.from_rows(tensor_obj([x, x]), tensor_obj([x, x]), expect)
    assert compose(swap, swap) == Mor.identity(tensor_obj([x, x]))


def test_permutation_mor_group_homomorphism():
    rng = random.Random(3)
    x = Obj("X", 2, [0, 1], Q)
    y = Obj("Y", 3, [0, 0, 1], Q)
    z = Obj("Z", 2, [1, 1], Q)
    xs = [x, y, z]
    for _ in range(10):
        p = list(range(3))
        q = list(range(3))
        rng.shuffle(p)
        rng.shuffle(q)
        # function composition (p o q)(j) = p[q[j]]
        pq = [p[q[j]] for j in range(3)]
        lhs = permutation_mor(xs, pq)
        qm = permutation_mor(xs, q)
        # p permutes the factors of q's codomain
        inv_q = [0] * 3
        for j, t in enumerate(q):
            inv_q[t] = j
        pm = permutation_mor([xs[inv_q[k]] for k in range(3)], p)
        assert lhs == compose(pm, qm)
    cycle = permutation_mor([x, x, x], [1, 2, 0])
    assert chain(cycle, cycle, cycle) == Mor.identity(tensor_obj([x, x, x]))
    with pytest.raises(InvalidPermutation):
        permutation_mor([x, y], [0, 0])


def test_permutation_three_factor_spot_check():
    # send factor order (a, b, c) to (c, a, b): factor 0 -> slot 1, 1 -> 2, 2 -> 0
    a = Obj("A", 2, [0, 0], Q)
    b = Obj("B", 3, [0, 0, 0], Q)
    c = Obj("C", 2, [0, 0], Q)
    m = permutation_mor([a, b, c], [1, 2, 0])
    assert m.cod == tensor_obj([c, a, b])
    # basis (i, j, k) at column i*6 + j*2 + k maps to row k*6 + i*3 + j
    for i in range(2):
        for j in range(3):
            for k in range(2):
                col = i * 6 + j * 2 + k
                row = k * 6 + i * 3 + j
                assert m.cols[col] == {row: Fraction(1)}


def test_rank_and_nullspace():
    v = Obj("V", 3, [0, 0, 0], Q)
    zero = Mor.zero(v, v)
    assert mor_rank(zero) == 0
    assert len(mor_nullspace(zero)) == 3
    ident = Mor.identity(v)
    assert mor_rank(ident) == 3
    assert mor_nullspace(ident) == []
    m = Mor.from_rows(v, v, [[1, 1, 0], [1, -1, 0], [0, 0, 0]])
    assert mor_rank(m) == 2
    ns = mor_nullspace(m)
    assert len(ns) == 1
    for vec in ns:
        assert compose(m, vec).is_zero()


def test_rank_against_numpy():
    rng = random.Random(4)
    v = Obj("V", 6, [0] * 6, Q)
    w = Obj("W", 4, [0] * 4, Q)
    for _ in range(10):
        m = rand_mor(rng, v, w, density=0.4)
        assert mor_rank(m) == np.linalg.matrix_rank(as_np(m))


def test_solve_linear_examples():
    v = Obj("V", 3, [0, 0, 0], Q)
    unit = unit_obj(Q)
    zero_constraint = Mor.zero(v, v)
    assert len(solve_linear([zero_constraint], 3, Q)) == 3
    two = Obj("W", 2, [0, 0], Q)
    c1 = Mor.from_rows(two, unit, [[1, 1]])
    c2 = Mor.from_rows(two, unit, [[1, -1]])
    assert solve_linear([c1, c2], 2, Q) == []
    assert solve_linear([Mor.identity(two)], 2, Q) == []


def test_invert():
    v = Obj("V", 3, [0, 0, 0], Q)
    m = Mor.from_rows(v, v, [[2, 1, 0], [0, 1, 0], [1, 0, 1]])
    mi = invert(m)
    assert compose(mi, m) == Mor.identity(v)
    assert compose(m, mi) == Mor.identity(v)
    singular = Mor.from_rows(v, v, [[1, 1, 0], [1, 1, 0], [0, 0, 1]])
    with pytest.raises(ValueError):
        invert(singular)
    rect = Mor.zero(v, Obj("W", 2, [0, 0], Q))
    with pytest.raises(ShapeError):
        invert(rect)


def test_invert_cyclotomic():
    field = make_field(4)
    v = Obj("V", 2, [0, 0], field)
    z = field.gen
    m = Mor.from_rows(v, v, [[field.one, z], [z, field.one]])
    mi = invert(m)
    assert compose(m, mi) == Mor.identity(v)


def test_vector_helpers_and_diff():
    v = Obj("V", 3, [0, 0, 0], Q)
    col = column_mor(v, [1, 0, 2])
    row = row_mor(v, [1, 1, 1])
    pairing = compose(row, col)
    assert pairing.entry(0, 0) == 3
    a = Mor.from_rows(v, v, [[1, 0, 0], [0, 1, 0], [0, 0, 1]])
    b = Mor.from_rows(v, v, [[1, 0, 0], [0, 2, 0], [0, 0, 1]])
    assert mor_diff(a, a) is None
    assert mor_diff(a, b) == (1, 1, Fraction(1), Fraction(2))


def test_scale_add_sub():
    rng = random.Random(5)
    v = Obj("V", 3, [0, 0, 0], Q)
    for _ in range(5):
        a = rand_mor(rng, v, v)
        b = rand_mor(rng, v, v)
        assert (a + b) - b == a
        assert a.scale(2) == a + a
        assert (a - a).is_zero()


def test_tensor_many_empty_is_unit_identity():
    m = tensor_many([], field=Q)
    assert m == Mor.identity(unit_obj(Q))
