import random

import pytest

from diffalg import (
    AutoreducedSet,
    DegenerateSituation,
    InconsistentSystem,
    NEG_INF,
    POS_INF,
    linear_reduce,
    order_matrix,
    orderly,
    parse_poly,
    parse_script,
    parse_system,
    ritt_compare,
    scripted_divide,
    step_first_form,
    step_second_form,
    tdet,
)
from helpers import rand_linear_system, ring_of

R2 = ring_of(2)
R3 = ring_of(3)


def P(text, ring=R2):
    return parse_poly(text, ring)


# -- form steps ---------------------------------------------------------------


def test_step_first_form():
    sys_ = [P("x' - x"), P("x'' - y")]
    out, step = step_first_form(sys_)
    assert out[0] == sys_[0]
    assert out[1] == P("x - y")
    assert step.kind == "first-form" and step.var == "x"
    assert step.j_after_strong <= step.j_before_strong
    assert step.certificate.verify(sys_[1], [sys_[0]])
    after = order_matrix(out, None, "strong")
    before = order_matrix(sys_, None, "strong")
    assert ritt_compare(after, before) == "less"


def test_step_first_form_requires_form():
    with pytest.raises(ValueError):
        step_first_form([P("x - y"), P("x'' - y")])  # a21 > a11 fails? no: not diagonal-max
    with pytest.raises(ValueError):
        step_second_form([P("x' - x"), P("x'' - y")])


def test_step_second_form():
    sys_ = [parse_poly(s, R3) for s in ("x'' + y + z'''", "x' + y' + z'", "x''' + y' + z'")]
    before = order_matrix(sys_, None, "strong")
    assert before.entries == ((2, 0, 3), (1, 1, 1), (3, 1, 1))
    out, step = step_second_form(sys_)
    assert out[2] == parse_poly("z' - z^(4)", R3)
    assert step.j_after_strong <= step.j_before_strong == 7
    assert ritt_compare(order_matrix(out, None, "strong"), before) == "less"


def test_step_degenerate_pivot():
    sys_ = [P("x'^2 - y"), P("x'' - y'")]
    with pytest.raises(DegenerateSituation) as exc:
        step_first_form(sys_)
    assert exc.value.pivot_index == 0
    # a characteristic set on which the separant does not vanish unblocks it
    cs = AutoreducedSet((P("x'^2 - y"),), orderly())
    out, step = step_first_form(sys_, charset=cs)
    assert step.j_after_strong <= step.j_before_strong


# -- scripted divisions ----------------------------------------------------------


def test_parse_script():
    assert parse_script("0/2@x;1/2@x") == [(0, 2, "x"), (1, 2, "x")]
    assert parse_script(" 2/0@zz ; ") == [(2, 0, "zz")]
    with pytest.raises(ValueError):
        parse_script("0-2@x")


def test_scripted_trace_j_increasing():
    ring, sys_ = parse_system("vars: x, y, z\nx^(100) + y' + z'\nx^(50) + y + z\nx' + y' + 1\n")
    final, trace = scripted_divide(sys_, [(0, 2, "x"), (1, 2, "x")])
    assert trace.j_sequence == (101, 150, 101)
    assert trace.j_sequence_strong == (101, 101, 101)
    assert final[0] == parse_poly("y' + z' - y^(100)", ring)
    assert final[1] == parse_poly("y + z - y^(50)", ring)
    data = trace.to_json()
    assert data["J_sequence"] == [101, 150, 101]
    assert len(data["steps"]) == 2
    assert data["steps"][0]["matrix_after"]["entries"][0] == [0, 100, 1]


def test_scripted_validation():
    ring, sys_ = parse_system("vars: x, y\nx' - x\ny' - y\n")
    with pytest.raises(ValueError):
        scripted_divide(sys_, [(0, 0, "x")])
    with pytest.raises(ValueError):
        scripted_divide(sys_, [(0, 1, "x")])  # divisor has no x
    with pytest.raises(ValueError):
        scripted_divide(sys_, [(1, 0, "x")])  # dividend below divisor order? no x at all
    with pytest.raises(ValueError):
        scripted_divide(sys_, [(0, 5, "x")])


# -- linear reduction ----------------------------------------------------------------


def test_linear_reduce_j_increasing():
    ring, sys_ = parse_system("vars: x, y, z\nx^(100) + y' + z'\nx^(50) + y + z\nx' + y' + 1\n")
    res = linear_reduce(sys_)
    assert not res.degenerate
    assert res.diff_dim == 0
    assert res.j_initial == 101
    assert res.abs_dim_bound <= 101
    seq = res.trace.j_sequence_strong
    assert all(a >= b for a, b in zip(seq, seq[1:]))
    assert seq[0] == 101 and seq[-1] == res.abs_dim_bound


def test_linear_reduce_diagonal():
    ring, sys_ = parse_system("vars: x, y\nx'' - x\ny' - x\n")
    res = linear_reduce(sys_)
    assert res.diff_dim == 0 and res.abs_dim_bound == 3
    assert res.charset is not None
    assert not res.degenerate


def test_linear_reduce_degenerate():
    ring, sys_ = parse_system("vars: x, y\nx' - x\nx'' - x'\n")
    res = linear_reduce(sys_)
    assert res.degenerate
    assert res.diff_dim == 1 and res.abs_dim_bound == POS_INF
    assert res.charset.elements == (parse_poly("x' - x", ring),)


def test_linear_reduce_inconsistent():
    ring, sys_ = parse_system("vars: x, y\nx - 1\nx - 2\n")
    with pytest.raises(InconsistentSystem):
        linear_reduce(sys_)


def test_linear_reduce_rejects_nonlinear_and_nonsquare():
    with pytest.raises(ValueError):
        linear_reduce([P("x'^2 - y"), P("y' - x")])
    with pytest.raises(ValueError):
        linear_reduce([P("x' - y")])


def test_linear_reduce_random_smoke():
    rng = random.Random(77)
    for _ in range(15):
        ring = ring_of(rng.randint(1, 3))
        sys_ = rand_linear_system(rng, ring, max_order=4)
        try:
            res = linear_reduce(sys_)
        except InconsistentSystem:
            continue
        seq = res.trace.j_sequence_strong
        assert all(a >= b for a, b in zip(seq, seq[1:]))
        if not res.degenerate:
            assert res.abs_dim_bound <= res.j_initial
