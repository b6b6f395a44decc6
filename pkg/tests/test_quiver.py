import random
import warnings

import pytest
from hypothesis import given, settings, strategies as st

from qbps.arith import LaurentPoly, RationalFunction
from qbps.quiver import (
    Quiver,
    SymmetryWarning,
    a1_quiver,
    det_character,
    euler_form,
    ext_quiver,
    gl_order,
    is_symmetric,
    jordan_quiver,
    kronecker_quiver,
    loop_quiver,
    qbar_quiver,
    stack_count,
    stack_count_product_form,
)

q = LaurentPoly.monomial(1, var="q")


def rf(p):
    return RationalFunction(p)


@st.composite
def quivers(draw, max_vertices=4, max_edges=6):
    n = draw(st.integers(1, max_vertices))
    edges = draw(st.lists(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)), max_size=max_edges))
    return Quiver(tuple(str(i) for i in range(n)), tuple(edges))


def test_is_symmetric_examples():
    assert is_symmetric(loop_quiver(3))
    assert not is_symmetric(kronecker_quiver())
    assert is_symmetric(qbar_quiver())


def test_edge_range_checked():
    with pytest.raises(ValueError):
        Quiver(("a",), ((0, 1),))


def test_euler_form_examples():
    J = jordan_quiver()
    assert all(euler_form(J, (m,), (m,)) == 0 for m in range(6))
    for g in range(6):
        assert euler_form(loop_quiver(g), (1,), (1,)) == 1 - g
    assert euler_form(qbar_quiver(), (0, 1), (1, 0)) == -1


def test_euler_form_length_mismatch():
    with pytest.raises(ValueError):
        euler_form(qbar_quiver(), (1,), (1, 0))


@settings(max_examples=50, deadline=None)
@given(quivers(), st.data())
def test_euler_form_bilinear_and_symmetry(Q, data):
    vec = st.lists(st.integers(-3, 3), min_size=Q.n, max_size=Q.n).map(tuple)
    a, b, c = data.draw(vec), data.draw(vec), data.draw(vec)
    ab = tuple(x + y for x, y in zip(a, b))
    assert euler_form(Q, ab, c) == euler_form(Q, a, c) + euler_form(Q, b, c)
    assert euler_form(Q, c, ab) == euler_form(Q, c, a) + euler_form(Q, c, b)
    # antisymmetric part vanishes on all basis pairs iff symmetric
    n = Q.n
    e = [tuple(int(i == j) for j in range(n)) for i in range(n)]
    anti_zero = all(euler_form(Q, e[i], e[j]) == euler_form(Q, e[j], e[i]) for i in range(n) for j in range(n))
    assert anti_zero == is_symmetric(Q)


def test_gl_order():
    assert gl_order(0) == 1
    assert gl_order(1) == q - 1
    assert gl_order(2) == rf((q * q - 1) * (q * q - q))
    for n in range(5):
        p = gl_order(n).as_laurent()
        assert p.max_exp() == n * n
        # |GL_n(F_2)|, |GL_n(F_3)|
        for field in (2, 3):
            expect = 1
            for i in range(n):
                expect *= field ** n - field ** i
            assert p.evaluate(field) == expect


def test_stack_count_examples():
    assert stack_count(a1_quiver(), (1,)) == rf(LaurentPoly.const(1, "q")) / (q - 1)
    assert stack_count(jordan_quiver(), (2,)) == rf(q ** 4) / ((q * q - 1) * (q * q - q))
    assert stack_count(qbar_quiver(), (1, 1)) == rf(q ** 2) / ((q - 1) * (q - 1))


@settings(max_examples=40, deadline=None)
@given(quivers(max_vertices=3), st.data())
def test_stack_count_two_forms(Q, data):
    m = data.draw(st.lists(st.integers(0, 3), min_size=Q.n, max_size=Q.n).filter(lambda x: sum(x) <= 6))
    assert stack_count(Q, m) == stack_count_product_form(Q, m)


def test_det_character_examples():
    assert det_character(jordan_quiver(), (3,)) == (0,)
    K = kronecker_quiver()
    for m1 in range(3):
        for m2 in range(3):
            assert det_character(K, (m1, m2)) == (2 * m2, -2 * m1)
    for m in [(1, 2), (3, 1)]:
        assert det_character(qbar_quiver(), m) == (0, 0)


def test_det_character_random():
    rng = random.Random(7)
    for _ in range(50):
        n = rng.randint(1, 4)
        edges = tuple((rng.randrange(n), rng.randrange(n)) for _ in range(rng.randint(0, 6)))
        Q = Quiver(tuple(map(str, range(n))), edges)
        ms = [tuple(rng.randint(0, 3) for _ in range(n)) for _ in range(2)]
        s = tuple(x + y for x, y in zip(*ms))
        chars = [det_character(Q, m) for m in ms]
        assert det_character(Q, s) == tuple(x + y for x, y in zip(*chars))
        # vanishing on all unit vectors <=> symmetric
        units = [tuple(int(i == j) for j in range(n)) for i in range(n)]
        trivial = all(not any(det_character(Q, u)) for u in units)
        assert trivial == is_symmetric(Q)


def test_ext_quiver():
    Q = ext_quiver([[3]])
    assert Q.n == 1 and len(Q.edges) == 3 and is_symmetric(Q)
    Q = ext_quiver([[0, 2], [2, 0]])
    assert Q.arrows(0, 1) == 2 and Q.arrows(1, 0) == 2 and is_symmetric(Q)
    with pytest.warns(SymmetryWarning, match="symmetric"):
        K = ext_quiver([[0, 1], [0, 0]])
    assert not is_symmetric(K) and len(K.edges) == 1
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        ext_quiver([[1, 1], [1, 0]])
    with pytest.raises(ValueError):
        ext_quiver([[0, 1]])
