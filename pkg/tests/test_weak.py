import logging
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from intervalmonge.errors import EmptyIntersection, NegativeScalar, NotStrongMonge, NotWeakMonge, TooSmall
from intervalmonge.generate import around_monge, gen_not_iwm, monge_from_residuals, random_interval, random_ism
from intervalmonge.interval import Interval, IntervalMatrix, RealMatrix, union_envelope
from intervalmonge.monge import is_monge, residual_real
from intervalmonge.strong import is_strong_monge
from intervalmonge.weak import (
    CLOSURE_OPS,
    add_weak_any,
    add_weak_weak,
    build_lp,
    envelope_union,
    four_block_shifts,
    interval_residual,
    interval_scale,
    is_weak_monge,
    iwm_closure,
    mixed_add,
    mixed_envelope,
    mixed_intersection,
    necessary_nonneg_residual,
    run_conditions,
    scale,
    sufficient_four_block,
    sufficient_residual_sum,
    sufficient_row_col_intersection,
    sufficient_zero_containment,
    validate_witness,
    zero_witness,
)


def linprog_feasible(mat):
    """Float cross-check with HiGHS; test data is small integers so tolerances are not an issue."""
    linprog = pytest.importorskip("scipy.optimize").linprog
    m, n = mat.shape
    a_ub = []
    for i in range(m - 1):
        for j in range(n - 1):
            row = [0.0] * (m * n)
            row[i * n + j] += 1
            row[(i + 1) * n + j + 1] += 1
            row[i * n + j + 1] -= 1
            row[(i + 1) * n + j] -= 1
            a_ub.append(row)
    bounds = [(float(mat.lower[i][j]), float(mat.upper[i][j])) for i in range(m) for j in range(n)]
    res = linprog(
        [0.0] * (m * n),
        A_ub=a_ub or None,
        b_ub=[0.0] * len(a_ub) or None,
        bounds=bounds,
        method="highs",
    )
    assert res.status in (0, 2)
    return res.status == 0


def simulate_four_block(center, pi, pj):
    """Eliminate residual blocks one at a time on a working copy, outward from the pivot."""
    m, n = len(center), len(center[0])
    w = [list(r) for r in center]

    def r(k, l):
        return w[k + 1][l] + w[k][l + 1] - w[k][l] - w[k + 1][l + 1]

    for k in range(pi - 1, -1, -1):
        for l in range(pj - 1, -1, -1):
            w[k][l] += r(k, l)
    for k in range(pi - 1, -1, -1):
        for l in range(pj, n - 1):
            w[k][l + 1] -= r(k, l)
    for k in range(pi, m - 1):
        for l in range(pj - 1, -1, -1):
            w[k + 1][l] -= r(k, l)
    for k in range(pi, m - 1):
        for l in range(pj, n - 1):
            w[k + 1][l + 1] += r(k, l)
    return w


# --- LP ----------------------------------------------------------------------


@pytest.mark.parametrize("m, n, monge_rows", [(2, 2, 1), (4, 4, 9), (1, 5, 0), (3, 2, 2)])
def test_lp_shape(m, n, monge_rows):
    lp = build_lp(IntervalMatrix([[0] * n for _ in range(m)]))
    assert len(lp.monge_rows) == monge_rows
    assert len(list(lp.rows())) == monge_rows + 2 * m * n
    assert lp.n_vars == m * n


def test_wide_4x4_is_weak(wide_4x4, wide_member):
    res = is_weak_monge(wide_4x4)
    assert res.feasible
    assert validate_witness(wide_4x4, res.witness)
    assert validate_witness(wide_4x4, wide_member)
    assert build_lp(wide_4x4).is_satisfied_by(wide_member)
    assert not is_strong_monge(wide_4x4)


def test_lp_examples(small_strong):
    assert is_weak_monge(small_strong)
    assert not is_weak_monge(IntervalMatrix([[0, 0], [0, 1]]))
    assert is_weak_monge(IntervalMatrix([[0, 0], [0, 0]], [[0, 0], [0, 1]]))
    single = is_weak_monge(IntervalMatrix([[1, 2, 3]], [[4, 5, 6]]))
    assert single.feasible and validate_witness(IntervalMatrix([[1, 2, 3]], [[4, 5, 6]]), single.witness)


def test_lp_equals_necessary_on_2x2(rng):
    for _ in range(300):
        mat = random_interval(rng, 2, 2, max_width=4)
        assert is_weak_monge(mat).feasible == necessary_nonneg_residual(mat)


@pytest.mark.parametrize("shape", [(3, 3), (3, 4), (4, 4), (5, 3)])
def test_lp_matches_linprog(rng, shape):
    m, n = shape
    yes = no = 0
    for t in range(60):
        if t % 3 == 0:
            mat = around_monge(rng, m, n)
        elif t % 3 == 1:
            mat = random_interval(rng, m, n, max_width=12, degenerate_prob=0.1)
        else:
            mat = gen_not_iwm(rng, m, n)
        exact = is_weak_monge(mat)
        assert exact.feasible == linprog_feasible(mat)
        if exact.feasible:
            yes += 1
            assert validate_witness(mat, exact.witness)
        else:
            no += 1
    assert yes and no


# --- residual and the necessary condition ------------------------------------


def test_interval_residual_small_strong(small_strong):
    assert interval_residual(small_strong) == IntervalMatrix([[0]], [[13]])
    assert necessary_nonneg_residual(small_strong)


def test_interval_residual_contains_member_residuals(wide_4x4, wide_member):
    res = interval_residual(wide_4x4)
    assert res.contains(residual_real(wide_member))


def test_residual_needs_2x2():
    with pytest.raises(TooSmall):
        interval_residual(IntervalMatrix([[1, 2]]))


# --- sufficient conditions -----------------------------------------------------


def test_row_col_intersection_example():
    mat = IntervalMatrix.from_intervals([[Interval(1, 3), Interval(2, 5)], [Interval(0, 9), Interval(2, 4)]])
    assert sufficient_row_col_intersection(mat) == RealMatrix([[2, 2], [2, 2]])


def test_row_col_intersection_falls_back_to_columns():
    mat = IntervalMatrix([[0, 5], [0, 5]], [[1, 6], [1, 6]])
    w = sufficient_row_col_intersection(mat)
    assert w == RealMatrix([[0, 5], [0, 5]])
    assert sufficient_row_col_intersection(IntervalMatrix([[0, 5], [5, 0]])) is None


def test_zero_containment():
    mat = IntervalMatrix([[-1, 0], [-3, -2]], [[1, 0], [2, 5]])
    assert sufficient_zero_containment(mat)
    assert zero_witness(mat) == RealMatrix.zeros(2, 2)
    assert not sufficient_zero_containment(IntervalMatrix([[1, 0], [0, 0]], [[2, 0], [0, 0]]))
    assert zero_witness(IntervalMatrix([[1]], [[2]])) is None


def test_residual_sum_on_monge_center(small_strong):
    assert sufficient_residual_sum(small_strong) == RealMatrix([[Fraction(5, 2), 5], [4, 0]])


def test_residual_sum_shifts_by_suffix_sums():
    # center [[0,0],[0,1]] has residual -1; entry (0,0) may move by 1
    mat = IntervalMatrix([[-1, 0], [0, 1]], [[1, 0], [0, 1]])
    assert sufficient_residual_sum(mat) == RealMatrix([[-1, 0], [0, 1]])
    tight = IntervalMatrix([[0, 0], [0, 1]], [[0, 0], [0, 1]])
    assert sufficient_residual_sum(tight) is None


@st.composite
def residual_grids(draw):
    rows = draw(st.integers(1, 4))
    cols = draw(st.integers(1, 4))
    res = draw(st.lists(st.lists(st.integers(-5, 5), min_size=cols, max_size=cols), min_size=rows, max_size=rows))
    pi = draw(st.integers(0, rows))
    pj = draw(st.integers(0, cols))
    return res, pi, pj


@settings(max_examples=200)
@given(residual_grids(), st.lists(st.integers(-9, 9), min_size=10, max_size=10))
def test_four_block_shifts_match_simulation(case, border):
    res, pi, pj = case
    m, n = len(res) + 1, len(res[0]) + 1
    first_row = border[:n]
    first_col = [first_row[0]] + border[5:5 + m - 1]
    center = monge_from_residuals(first_row, first_col, res)
    # residuals of center are exactly res
    assert residual_real(RealMatrix(center)).tolist() == [list(r) for r in res]
    shifts = four_block_shifts(res, pi, pj)
    simulated = simulate_four_block(center, pi, pj)
    for i in range(m):
        for j in range(n):
            assert simulated[i][j] - center[i][j] == shifts.get((i, j), 0)
    assert all(x == 0 for row in residual_real(RealMatrix(simulated)).tolist() for x in row)
    # pivot row and column never move
    assert all(i != pi and j != pj for i, j in shifts)


def test_bottom_right_pivot_is_residual_sum(rng):
    hits = 0
    for _ in range(200):
        # random center, wide radii away from the last row and column
        c = [[rng.randint(-4, 4) for _ in range(4)] for _ in range(3)]
        rad = [[rng.randint(4, 12) if i < 2 and j < 3 else 0 for j in range(4)] for i in range(3)]
        mat = IntervalMatrix(
            [[x - d for x, d in zip(r, s)] for r, s in zip(c, rad)],
            [[x + d for x, d in zip(r, s)] for r, s in zip(c, rad)],
        )
        res = [list(r) for r in residual_real(mat.center()).entries]
        shifts = four_block_shifts(res, mat.m - 1, mat.n - 1)
        w = sufficient_residual_sum(mat)
        if w is None or is_monge(mat.center()):
            continue
        hits += 1
        c = mat.center().entries
        assert all(w[i, j] - c[i][j] == shifts.get((i, j), 0) for i in range(mat.m) for j in range(mat.n))
    assert hits > 20


def test_four_block_finds_interior_pivot():
    # residual -1 in the top-left block only; eliminating toward (0,0) needs radius
    # there, while pivot (0,0) pushes the correction into the bottom-right entries
    mat = IntervalMatrix([[1, 0, 0], [0, -1, -1], [0, -1, -1]], [[1, 0, 0], [0, 1, 1], [0, 1, 1]])
    assert sufficient_residual_sum(mat) is None
    found = sufficient_four_block(mat)
    assert found is not None and found.pivot == (0, 0)
    assert found.witness == RealMatrix([[1, 0, 0], [0, -1, -1], [0, -1, -1]])


def test_condition_chain(rng):
    for _ in range(300):
        mat = around_monge(rng, 4, 4) if rng.random() < 0.5 else random_interval(rng, 4, 4)
        report = run_conditions(mat)
        lp = is_weak_monge(mat).feasible
        if report.fired:
            assert lp
            assert validate_witness(mat, report.witness)
        if lp:
            assert report.necessary
        if sufficient_residual_sum(mat) is not None:
            assert sufficient_four_block(mat) is not None


def test_run_conditions_trivial_shapes():
    report = run_conditions(IntervalMatrix([[1, 2, 3]], [[2, 2, 9]]))
    assert report.fired == ["trivial"] and report.verdict is True


def test_run_conditions_verdicts(small_strong):
    assert run_conditions(small_strong).verdict is True
    assert run_conditions(IntervalMatrix([[0, 0], [0, 1]])).verdict is False


# --- closure -----------------------------------------------------------------


def test_closure_ops_on_random_inputs(rng):
    for _ in range(40):
        a, b = around_monge(rng, 3, 4), around_monge(rng, 3, 4)
        s = random_ism(rng, 3, 4)
        results = [
            add_weak_weak(a, b),
            envelope_union(a, random_interval(rng, 3, 4)),
            scale(Fraction(rng.randint(0, 6), 3), a),
            interval_scale(Interval(rng.randint(0, 2), rng.randint(2, 5)), a),
            mixed_add(s, a),
            mixed_envelope(s, a),
        ]
        try:
            results.append(mixed_intersection(s, union_envelope(s, a)))
        except EmptyIntersection:
            pass
        for r in results:
            assert r.verdict and r.lp_verdict and r.agrees
            assert validate_witness(r.matrix, r.witness)


def test_add_weak_any_example(small_strong):
    p = RealMatrix([[0, 0], [0, -20]]).as_interval()
    r = add_weak_any(small_strong, p)
    assert r.criterion is True and r.lp_verdict is True and r.verdict is True
    assert validate_witness(r.matrix, r.witness)
    bad = RealMatrix([[0, 0], [0, 20]]).as_interval()
    r = add_weak_any(small_strong, bad)
    assert r.criterion is False and r.verdict is False


def test_add_weak_any_logs_disagreement(rng, caplog):
    caplog.set_level(logging.INFO, logger="intervalmonge.weak")
    for _ in range(200):
        a = around_monge(rng, 3, 3)
        p = random_interval(rng, 3, 3, max_width=3)
        r = add_weak_any(a, p)
        # the criterion is necessary: LP feasible implies it holds
        if r.lp_verdict:
            assert r.criterion
        if r.lp_verdict != r.criterion:
            assert "add_weak_any" in caplog.text


def test_closure_preconditions(small_strong):
    not_weak = IntervalMatrix([[0, 0], [0, 1]])
    not_strong = IntervalMatrix([[0, 0], [0, 0]], [[1, 0], [0, 0]])
    with pytest.raises(NotWeakMonge):
        add_weak_weak(small_strong, not_weak)
    with pytest.raises(NotStrongMonge):
        mixed_add(not_strong, small_strong)
    with pytest.raises(NegativeScalar):
        scale(-1, small_strong)
    with pytest.raises(NegativeScalar):
        interval_scale(Interval(-1, 1), small_strong)
    with pytest.raises(EmptyIntersection):
        mixed_intersection(IntervalMatrix([[0, 0], [0, 0]]), IntervalMatrix([[1, 1], [1, 1]]))
    with pytest.raises(ValueError):
        iwm_closure("nope", small_strong)


def test_dispatch_covers_all_ops(small_strong):
    assert set(CLOSURE_OPS) == {
        "add_weak_weak", "add_weak_any", "envelope_union", "scale", "interval_scale",
        "mixed_add", "mixed_intersection", "mixed_envelope",
    }
    assert iwm_closure("scale", 2, small_strong).verdict
    assert iwm_closure("add_weak_weak", small_strong, small_strong).matrix == small_strong + small_strong


def test_add_weak_any_criterion_is_not_sufficient():
    # upper residuals sum to >= 0 everywhere, yet no member of the sum is Monge
    a = IntervalMatrix([[3, 0, 2], [0, -4, -4], [2, -4, -6]], [[3, 3, 2], [0, -2, -4], [2, -2, -3]])
    p = IntervalMatrix([[0, 2, -3], [2, 1, -3], [-1, 1, 0]], [[1, 3, -2], [2, 1, -3], [0, 1, 1]])
    r = add_weak_any(a, p)
    assert r.criterion is True
    assert r.lp_verdict is False and r.verdict is False
    assert not linprog_feasible(a + p)
