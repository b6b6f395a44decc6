from fractions import Fraction

import pytest

from qbps.io import (
    InputError,
    cone_from_json,
    cycle_from_json,
    gamma_from_json,
    kahler_from_json,
    parse_json,
    parse_matrix,
    parse_vector,
    potential_from_json,
    quiver_from_json,
    quiver_to_json,
    stability_from_json,
)
from qbps.potential import three_loop_quiver, w3_potential
from qbps.quiver import is_symmetric, qbar_quiver


def test_json_error_location():
    with pytest.raises(InputError) as exc:
        parse_json('{"vertices": [0,\n  ]}', "q.json")
    assert exc.value.line == 2 and exc.value.column == 3
    assert str(exc.value).startswith("q.json:2:3:")


def test_quiver_roundtrip():
    Q = qbar_quiver()
    assert quiver_from_json(quiver_to_json(Q)) == Q
    assert is_symmetric(quiver_from_json({"ext": [[0, 2], [2, 0]]}))


@pytest.mark.parametrize("bad", [
    {}, {"vertices": ["a"]}, {"vertices": ["a"], "edges": [[0, 0]]},
    {"vertices": ["a"], "edges": [{"src": 0, "dst": 3}]},
])
def test_quiver_errors(bad):
    with pytest.raises(InputError):
        quiver_from_json(bad)


def test_stability():
    xi = stability_from_json({"xi": [{"re": "-1", "im": "1"}, {"re": "1/2", "im": 3}]})
    assert xi.xi[1].re == Fraction(1, 2)
    for bad in ({"xi": [{"re": 0.5, "im": "1"}]}, {"xi": [{"re": "0", "im": "0"}]}, {"xi": [{"re": "x", "im": "1"}]}):
        with pytest.raises(InputError):
            stability_from_json(bad)


def test_potential():
    # words are in path order: A B C in algebra notation is the path C, B, A
    d = {"terms": [{"word": [2, 1, 0], "coeff": 1}, {"word": [1, 2, 0], "coeff": -1}]}
    assert potential_from_json(d, three_loop_quiver()) == w3_potential()


def test_gamma_files():
    v = gamma_from_json({"rank": 2, "beta": [1, 1], "m": 0})
    assert v.beta == (1, 1) and v.m == 0
    with pytest.raises(InputError):
        gamma_from_json({"rank": 3, "beta": [1, 1], "m": 0})
    s = kahler_from_json({"B": ["0", "1/2"], "omega": ["1", "2"]})
    assert s.B == (0, Fraction(1, 2))
    assert cone_from_json({"generators": [[1, 0], [0, 1]]}).generators == ((1, 0), (0, 1))
    with pytest.raises(InputError):
        cone_from_json({"generators": [[0, 0]]})
    c = cycle_from_json({"components": [{"mult": 2, "class": [1]}]})
    assert c.components == ((2, (1,)),)


def test_vectors_and_matrices():
    assert parse_vector("1,1") == (1, 1)
    assert parse_vector("(2, 0)") == (2, 0)
    assert parse_vector("1/2,1", rational=True) == (Fraction(1, 2), 1)
    with pytest.raises(InputError):
        parse_vector("1,a")
    assert parse_matrix("[[-1,0],[1,1]]") == [[-1, 0], [1, 1]]
    with pytest.raises(InputError):
        parse_matrix("[1,2]")
