from fractions import Fraction as Q

from orbichow.linalg import IntRowReducer, fraction_rows_rank, rank_of_rows


def test_rank_simple():
    assert rank_of_rows([{0: 1, 1: 1}, {0: 2, 1: 2}]) == 1
    assert rank_of_rows([{0: 1}, {1: 1}, {0: 1, 1: 1}]) == 2
    assert rank_of_rows([{}]) == 0


def test_canonical_rref_independent_of_row_order():
    rows = [{0: 2, 2: 4}, {1: 3, 2: 6}, {0: 1, 1: 1, 2: 5}]
    red1 = IntRowReducer()
    for r in rows:
        red1.add_row(dict(r))
    red2 = IntRowReducer()
    for r in reversed(rows):
        red2.add_row(dict(r))
    assert red1.pivots() == red2.pivots()
    for piv in red1.pivots():
        assert red1.reducer(piv) == red2.reducer(piv)


def test_reducer_expansion():
    red = IntRowReducer()
    red.add_row({0: 1, 1: 2, 2: 3})
    red.add_row({1: 1, 2: 1})
    # pivots are the largest columns of the reduced rows
    pivs = red.pivots()
    assert len(pivs) == 2
    # x2 = -x1 from the second row combined into echelon form
    for piv in pivs:
        exp = red.reducer(piv)
        assert all(col not in pivs for col in exp)


def test_pivot_rows_stay_primitive():
    red = IntRowReducer()
    red.add_row({0: 6, 1: 10})
    (piv,) = red.pivots()
    row = red.pivot_rows[piv]
    from math import gcd

    assert gcd(*row.values()) == 1
    assert row[piv] > 0


def test_fraction_rows_rank():
    rows = [[Q(1, 2), Q(1, 3)], [Q(3, 2), Q(5)], [Q(0), Q(0)]]
    assert fraction_rows_rank(rows) == 2
    # proportional rows collapse
    assert fraction_rows_rank([[Q(1, 2), Q(1, 3)], [Q(3, 2), Q(1)]]) == 1
    assert fraction_rows_rank([[Q(1, 2), Q(1, 4)], [Q(2), Q(1)]]) == 1
