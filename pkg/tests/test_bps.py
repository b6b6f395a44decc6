import random
from fractions import Fraction

import pytest

from qbps.arith import LaurentPoly, RationalFunction
from qbps.bps import (
    P_VIR,
    NotSymmetricError,
    bps_trivial,
    bps_xi,
    euler_specialize,
    invariance_check,
    normalized_stack_series,
    reconstruct_series,
)
from qbps.quiver import Quiver, a1_quiver, ext_quiver, jordan_quiver, kronecker_quiver, loop_quiver, qbar_quiver
from qbps.stability import StabilityXi

from .oracles import expand_in_inverse

v = LaurentPoly.monomial(1)
ONE = RationalFunction(1)
XI = StabilityXi.of((-1, 1), (0, 1))
XI_SWAP = StabilityXi.of((0, 1), (-1, 1))


def test_p_vir_expansion():
    # orders u^1 .. u^13 with u = 1/v
    exp = expand_in_inverse(P_VIR, 12)
    assert exp == {-(2 * k + 1): -1 for k in range(7)}


def test_normalized_series_examples():
    A = normalized_stack_series(a1_quiver(), 3)
    assert A[(0,)] == 1
    assert A[(1,)] == RationalFunction(-v ** -1) / (1 - v ** -2)
    J = normalized_stack_series(jordan_quiver(), 4)
    for m in range(1, 5):
        closed = ONE
        for j in range(1, m + 1):
            closed = closed / (1 - v ** (-2 * j))
        assert J[(m,)] == closed
    Qb = normalized_stack_series(qbar_quiver(), 2)
    assert Qb[(1, 1)] == ONE / ((1 - v ** -2) * (1 - v ** -2))


def test_nonsymmetric_rejected():
    with pytest.raises(NotSymmetricError, match="quiver is not symmetric"):
        bps_trivial(kronecker_quiver(), 2)
    with pytest.raises(NotSymmetricError):
        bps_xi(kronecker_quiver(), XI, 2)


def test_closed_forms():
    t = bps_trivial(a1_quiver(), 6)
    assert t[(1,)] == 1 and all(t[(m,)].is_zero() for m in range(2, 7))
    t = bps_trivial(jordan_quiver(), 6)
    assert t[(1,)] == -v and all(t[(m,)].is_zero() for m in range(2, 7))
    for g in range(6):
        assert bps_trivial(loop_quiver(g), 1)[(1,)] == (-v) ** g


def test_bps_xi_examples():
    t = bps_xi(qbar_quiver(), XI, 2)
    assert t[(1, 1)] == -v
    assert t[(1, 0)] == 1 and t[(0, 1)] == 1
    J = loop_quiver(2)
    assert bps_xi(J, StabilityXi.of((3, 2)), 4).entries == bps_trivial(J, 4).entries


def test_invariance_examples():
    rep = invariance_check(qbar_quiver(), [XI, XI_SWAP], 3)
    assert rep.ok and len(rep.checked) == 2
    assert bps_xi(qbar_quiver(), XI_SWAP, 3)[(1, 1)] == -v
    rng = random.Random(0)
    Q = Quiver(("a", "b"), ((0, 1), (1, 0), (1, 1)))
    xis = [StabilityXi(tuple((Fraction(rng.randint(-5, 5), rng.randint(1, 4)), Fraction(rng.randint(1, 5))) for _ in range(2)))
           for _ in range(3)]
    assert invariance_check(Q, xis, 3).ok


def test_round_trip():
    for Q, N in [(qbar_quiver(), 3), (loop_quiver(2), 4), (ext_quiver([[1, 1], [1, 1]]), 3)]:
        A = normalized_stack_series(Q, N)
        assert reconstruct_series(Q, bps_trivial(Q, N)) == A
        xi = StabilityXi.of(*[((-1) ** i * (i + 1), 1 + i) for i in range(Q.n)])
        assert reconstruct_series(Q, bps_xi(Q, xi, N)) == A


def test_euler_specialize():
    assert euler_specialize(bps_trivial(jordan_quiver(), 3))[(1,)] == -1
    assert euler_specialize(bps_trivial(a1_quiver(), 3))[(1,)] == 1
    for g in range(4):
        assert euler_specialize(bps_trivial(loop_quiver(g), 1))[(1,)] == (-1) ** g


def test_known_euler_values():
    # numerical DT invariants of the g-loop quiver (Reineke); with the (-v)^<m,m>
    # normalization they appear with the sign (-1)^(<m,m> - 1)
    for g, known in [(2, [1, 1, 1, 2]), (3, [1, 1, 3, 10])]:
        e = euler_specialize(bps_trivial(loop_quiver(g), 4))
        assert [(-1) ** ((1 - g) * m * m - 1) * e[(m,)] for m in range(1, 5)] == known


def test_polynomiality_and_sign():
    for g in range(4):
        t = bps_trivial(loop_quiver(g), 4)
        for m, p in t.entries.items():
            assert p.is_integral()
            signs = {c > 0 for _, c in p.items()}
            assert len(signs) <= 1


def test_support_bound_disconnected():
    Q = Quiver(("a", "b"), ((0, 0), (1, 1)))
    t = bps_trivial(Q, 3)
    for m, p in t.entries.items():
        if m[0] and m[1]:
            assert p.is_zero()


def test_json_shape():
    t = bps_xi(qbar_quiver(), XI, 2)
    d = t.to_json()
    assert d["trunc"] == 2
    assert {"dim": [1, 1], "omega": "-v"} in d["entries"]
    assert d["stability"] == {"xi": [{"re": "-1", "im": "1"}, {"re": "0", "im": "1"}]}
    assert bps_trivial(a1_quiver(), 2).to_json()["stability"] == "trivial"
