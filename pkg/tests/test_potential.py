import random
from fractions import Fraction
from itertools import product

import numpy as np
import pytest

from qbps.potential import (
    CyclicWord,
    MatrixTuple,
    PotentialError,
    SuperPotential,
    check_growth,
    cyclic_derivative,
    eval_trW,
    gauge_transform,
    three_loop_quiver,
    truncate,
    w3_potential,
)
from qbps.quiver import Quiver

Q3 = three_loop_quiver()
W3 = w3_potential()
A, B, C = 0, 1, 2


def tup(*mats, Q=Q3, dims=(2,)):
    return MatrixTuple(Q, dims, tuple(mats))


def commutator(x, y):
    return x.dot(y) - y.dot(x)


def test_word_canonical_rotation():
    assert CyclicWord((2, 0, 1)).edges == (0, 1, 2)
    assert CyclicWord((1, 0, 2)).edges == (0, 2, 1)
    with pytest.raises(PotentialError):
        CyclicWord(())


def test_open_path_rejected():
    Q = Quiver(("a", "b"), ((0, 1), (1, 0)))
    SuperPotential(Q, (((0, 1), 1),))  # closed 2-cycle
    with pytest.raises(PotentialError):
        SuperPotential(Q, (((0, 0), 1),))


def test_w3_scalars_vanish():
    rng = random.Random(0)
    for _ in range(10):
        u = tup(*[[[Fraction(rng.randint(-5, 5))]] for _ in range(3)], dims=(1,))
        assert eval_trW(W3, u) == 0


def test_w3_hand_value():
    u = tup([[0, 1], [0, 0]], [[0, 0], [1, 0]], [[1, 0], [0, 0]])
    # tr(A (BC - CB)) by hand
    a, b, c = (np.array(m, dtype=object) for m in ([[0, 1], [0, 0]], [[0, 0], [1, 0]], [[1, 0], [0, 0]]))
    assert np.trace(a.dot(commutator(b, c))) == 1
    assert eval_trW(W3, u) == 1


def rand_mat(rng, r, c, lo=-3, hi=3):
    return [[Fraction(rng.randint(lo, hi), rng.randint(1, 3)) for _ in range(c)] for _ in range(r)]


def rand_invertible(rng, n):
    while True:
        g = rand_mat(rng, n, n)
        if n == 0 or abs(np.linalg.det(np.array(g, dtype=float))) > 1e-9:
            return g


def test_gauge_identity_and_scalars():
    rng = random.Random(1)
    u = tup(*[rand_mat(rng, 2, 2) for _ in range(3)])
    eye = [[1, 0], [0, 1]]
    assert gauge_transform(u, [eye]) == u
    Q = Quiver(("a", "b"), ((0, 1), (1, 1), (1, 0)))
    u = MatrixTuple(Q, (1, 1), ([[2]], [[5]], [[3]]))
    g = gauge_transform(u, [[[2]], [[7]]])
    assert g.mats[0][0, 0] == Fraction(2 * 2, 7)
    assert g.mats[1][0, 0] == 5  # loop unchanged
    assert g.mats[2][0, 0] == Fraction(3 * 7, 2)


def test_gauge_is_right_action():
    rng = random.Random(2)
    Q = Quiver(("a", "b"), ((0, 1), (1, 0), (0, 0)))
    dims = (2, 1)
    u = MatrixTuple(Q, dims, (rand_mat(rng, 1, 2), rand_mat(rng, 2, 1), rand_mat(rng, 2, 2)))
    g = [rand_invertible(rng, 2), rand_invertible(rng, 1)]
    h = [rand_invertible(rng, 2), rand_invertible(rng, 1)]
    gh = [np.array(x, dtype=object).dot(np.array(y, dtype=object)) for x, y in zip(g, h)]
    assert gauge_transform(gauge_transform(u, g), h) == gauge_transform(u, gh)


def test_singular_gauge():
    u = tup([[1, 0], [0, 1]], [[0, 0], [0, 0]], [[0, 0], [0, 0]])
    with pytest.raises(PotentialError):
        gauge_transform(u, [[[1, 1], [1, 1]]])


def random_potential(rng, Q, max_len=4, terms=4):
    """Random closed words by walking the quiver."""
    out = []
    n_e = len(Q.edges)
    while len(out) < terms:
        L = rng.randint(1, max_len)
        path = [rng.randrange(n_e)]
        for _ in range(L - 1):
            t = Q.edges[path[-1]][1]
            nxt = [i for i, (s, _) in enumerate(Q.edges) if s == t]
            path.append(rng.choice(nxt))
        if Q.edges[path[-1]][1] == Q.edges[path[0]][0]:
            out.append((tuple(path), Fraction(rng.randint(-4, 4), rng.randint(1, 3))))
    return SuperPotential(Q, tuple(out))


def test_gauge_invariance_random():
    rng = random.Random(3)
    Q = Quiver(("a", "b"), ((0, 0), (0, 1), (1, 0), (1, 1), (0, 1)))
    for _ in range(100):
        W = random_potential(rng, Q)
        dims = (rng.randint(1, 2), rng.randint(1, 2))
        u = MatrixTuple(Q, dims, tuple(rand_mat(rng, dims[t], dims[s]) for s, t in Q.edges))
        g = [rand_invertible(rng, d) for d in dims]
        assert eval_trW(W, gauge_transform(u, g)) == eval_trW(W, u)


def test_cyclic_invariance():
    rng = random.Random(4)
    Q = Quiver(("a", "b"), ((0, 1), (1, 0), (0, 0)))
    dims = (2, 2)
    u = MatrixTuple(Q, dims, tuple(rand_mat(rng, 2, 2) for _ in Q.edges))
    word = (0, 1, 2)
    ref = None
    for r in range(3):
        rot = word[r:] + word[:r]
        # bypass canonicalization to evaluate each rotation literally
        start = Q.edges[rot[0]][0]
        val = np.trace(u.path_matrix(rot, start))
        ref = val if ref is None else ref
        assert val == ref


def test_cyclic_derivative_w3():
    assert cyclic_derivative(W3, A).to_string() == "BC - CB"
    rng = random.Random(5)
    u = tup(*[rand_mat(rng, 2, 2) for _ in range(3)])
    a, b, c = u.mats
    assert np.array_equal(cyclic_derivative(W3, A).evaluate(u), commutator(b, c))
    assert np.array_equal(cyclic_derivative(W3, B).evaluate(u), commutator(c, a))
    assert np.array_equal(cyclic_derivative(W3, C).evaluate(u), commutator(a, b))


def test_cyclic_derivative_absent_edge():
    Q = Quiver(("a",), ((0, 0),) * 3)
    W = SuperPotential(Q, (((0, 1), 1),))
    assert cyclic_derivative(W, 2).is_zero()


def test_cyclic_derivative_length_one_loop():
    Q = Quiver(("a",), ((0, 0),))
    W = SuperPotential(Q, (((0,), 3),))
    u = MatrixTuple(Q, (2,), ([[1, 2], [3, 4]],))
    assert np.array_equal(cyclic_derivative(W, 0).evaluate(u), 3 * np.eye(2, dtype=int))


def _numeric_trw(W, mats, Q):
    total = 0.0
    for w, a in W.terms:
        M = None
        for e in w.edges:
            M = mats[e] if M is None else mats[e] @ M
        total += float(a) * np.trace(M)
    return total


def test_finite_difference_gradient():
    rng = random.Random(6)
    u = tup(*[rand_mat(rng, 2, 2) for _ in range(3)])
    mats = u.as_float()
    h = 1e-6
    for e in range(3):
        G = cyclic_derivative(W3, e).evaluate(u).astype(float)
        for a in range(2):
            for b in range(2):
                plus = [m.copy() for m in mats]
                minus = [m.copy() for m in mats]
                plus[e][a, b] += h
                minus[e][a, b] -= h
                fd = (_numeric_trw(W3, plus, Q3) - _numeric_trw(W3, minus, Q3)) / (2 * h)
                assert abs(fd - G[b, a]) <= 1e-6 * max(1.0, abs(G[b, a]))


def test_critical_locus_exhaustive():
    mats = [np.array(x, dtype=object).reshape(2, 2) for x in product((0, 1), repeat=4)]
    count = critical = 0
    for a, b, c in product(mats, repeat=3):
        u = MatrixTuple(Q3, (2,), (a, b, c))
        crit = all(not cyclic_derivative(W3, e).evaluate(u).any() for e in range(3))
        commuting = not (commutator(a, b).any() or commutator(b, c).any() or commutator(a, c).any())
        assert crit == commuting
        count += 1
        critical += crit
    assert count == 4096
    assert 0 < critical < 4096


def test_truncate():
    assert truncate(W3, 3) == W3
    assert truncate(W3, 2).is_zero()
    Q = Quiver(("a",), ((0, 0),))
    W = SuperPotential(Q, (((0, 0, 0), 1), ((0,) * 5, 2)), growth=2)
    T = truncate(W, 4)
    assert [len(w) for w, _ in T.terms] == [3] and T.growth == 2
    with pytest.raises(PotentialError):
        truncate(W, 0)


def test_check_growth():
    assert check_growth(W3) == 2
    Q = Quiver(("a",), ((0, 0),))
    assert check_growth(SuperPotential(Q, (((0, 0, 0), 8),))) == 4
    assert check_growth(SuperPotential(Q, ())) == 1
    assert check_growth(SuperPotential(Q, (((0, 0), Fraction(1, 100)),))) == Fraction(1, 8)


def test_growth_bound_enforced():
    Q = Quiver(("a",), ((0, 0),))
    with pytest.raises(PotentialError):
        SuperPotential(Q, (((0, 0, 0), 8),), growth=2)
    SuperPotential(Q, (((0, 0, 0), 7),), growth=2)


def test_from_generator_truncation():
    Q = Quiver(("a",), ((0, 0),))
    W = SuperPotential.from_generator(Q, lambda n: [((0,) * n, Fraction(1, 2) ** n)], degree=6, growth=1)
    assert W.degree() == 6
    assert check_growth(W) <= 1
