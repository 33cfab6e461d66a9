"""Exact simplex and Fourier-Motzkin elimination."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from maxtorus.linprog import (
    EQ,
    GE,
    INFEASIBLE,
    OPTIMAL,
    UNBOUNDED,
    Constraint,
    LinearProgram,
    fm_feasible,
    lp_feasible,
    lp_solve,
)

small_ints = st.integers(min_value=-5, max_value=5)


def c(coeffs, rel, rhs):
    return Constraint(tuple(Fraction(x) for x in coeffs), rel, Fraction(rhs))


def test_bounded_maximum():
    lp = LinearProgram(
        1,
        (c([-1], GE, -1), c([1], GE, 0)),  # x <= 1, x >= 0
        (Fraction(1),),
    )
    res = lp_solve(lp)
    assert res.status == OPTIMAL
    assert res.value == 1 and res.x == (Fraction(1),)


def test_unbounded():
    lp = LinearProgram(1, (c([1], GE, 0),), (Fraction(1),))
    assert lp_solve(lp).status == UNBOUNDED


def test_infeasible():
    lp = LinearProgram(1, (c([1], GE, 1), c([-1], GE, 0)), (Fraction(0),))
    assert lp_solve(lp).status == INFEASIBLE


def test_equality_constraints():
    lp = LinearProgram(
        2,
        (c([1, 1], EQ, 2), c([1, 0], GE, 0), c([0, 1], GE, 0)),
        (Fraction(1), Fraction(0)),
    )
    res = lp_solve(lp)
    assert res.status == OPTIMAL and res.value == 2


def test_free_variables():
    # unconstrained sign: optimum at a negative coordinate
    lp = LinearProgram(1, (c([-1], GE, 3),), (Fraction(1),))
    res = lp_solve(lp)
    assert res.status == OPTIMAL and res.value == -3


def test_box_objective():
    # max sum of positive coefficients over the unit box
    obj = [Fraction(3), Fraction(-2), Fraction(1)]
    cons = []
    for i in range(3):
        e = [Fraction(0)] * 3
        e[i] = Fraction(1)
        cons.append(Constraint(tuple(e), GE, Fraction(0)))
        cons.append(Constraint(tuple(-x for x in e), GE, Fraction(-1)))
    res = lp_solve(LinearProgram(3, tuple(cons), tuple(obj)))
    assert res.value == 4
    assert res.x == (Fraction(1), Fraction(0), Fraction(1))


@given(
    st.lists(
        st.tuples(st.lists(small_ints, min_size=2, max_size=2), small_ints),
        min_size=1,
        max_size=5,
    )
)
@settings(max_examples=200, deadline=None)
def test_feasible_point_is_exact(data):
    cons = [c(coeffs, GE, rhs) for coeffs, rhs in data]
    x = lp_feasible(cons, 2)
    if x is not None:
        for con in cons:
            assert con.satisfied_by(x)


@given(
    st.lists(
        st.tuples(st.lists(small_ints, min_size=2, max_size=2), small_ints),
        min_size=1,
        max_size=4,
    )
)
@settings(max_examples=150, deadline=None)
def test_fm_agrees_with_simplex(data):
    cons = [c(coeffs, GE, rhs) for coeffs, rhs in data]
    ineqs = [(list(con.coeffs), con.rhs) for con in cons]
    assert fm_feasible(ineqs, 2) == (lp_feasible(cons, 2) is not None)


def test_constraint_validation():
    with pytest.raises(ValueError):
        Constraint((Fraction(1),), "le", Fraction(0))
    with pytest.raises(ValueError):
        LinearProgram(2, (c([1], GE, 0),), (Fraction(0), Fraction(0)))
