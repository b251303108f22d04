import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from lcdist.complexity import (
    CSV_HEADER,
    curves_csv,
    entropy_hq,
    exponent,
    gv_closed_form,
    gv_delta,
    gv_exponent_curve,
    h2,
    lc_crossover_rate,
    lc_exponent,
    punctured_window_size,
    rate_grid,
    sliding_list_size,
    trial_count_estimate,
    trial_count_T0,
)


def test_entropy_endpoints():
    assert h2(0.0) == 0.0 and h2(1.0) == 0.0
    assert h2(0.5) == pytest.approx(1.0)
    assert entropy_hq(4, 0.75) == pytest.approx(1.0)
    with pytest.raises(ValueError):
        h2(1.5)


def test_gv_delta():
    assert gv_delta("classical_q", 0.0) == pytest.approx(0.5, abs=1e-11)
    assert gv_delta("quantum_generic", 1.0) == 0.0
    d = gv_delta("quantum_generic", 0.0)
    assert abs(1 - 2 * entropy_hq(4, d)) < 1e-10


@given(st.floats(0.0, 1.0))
def test_gv_delta_residual(R):
    for family, q, scale in (("classical_q", 2, 1), ("quantum_generic", 4, 2), ("quantum_css", 2, 2)):
        d = gv_delta(family, R)
        assert abs(scale * entropy_hq(q, d) - (1 - R)) < 1e-9


def test_classical_spot_values():
    d = gv_delta("classical_q", 0.5)
    assert exponent("C", "classical_q", 0.5, d).F == pytest.approx(0.25, abs=1e-10)
    assert exponent("A", "classical_q", 0.5, d).F == pytest.approx(0.25, abs=1e-10)
    assert exponent("D", "quantum_generic", 0.0, gv_delta("quantum_generic", 0.0)).F == pytest.approx(1 / 3)


def test_quantum_closed_forms():
    for R in rate_grid(11):
        assert gv_exponent_curve("C", "quantum_generic", [R])[0].F == pytest.approx((1 - R) / 2)
    assert gv_exponent_curve("A", "quantum_generic", [0.0, 1.0])[0].F == 0.5
    assert gv_exponent_curve("A", "quantum_generic", [0.0, 1.0])[1].F == 0.0


@pytest.mark.parametrize("family", ["classical_q", "quantum_generic", "quantum_css"])
@pytest.mark.parametrize("tech", ["A", "C", "D"])
def test_composed_matches_closed_form(family, tech):
    for R in rate_grid(101):
        d = gv_delta(family, R)
        assert abs(exponent(tech, family, R, d).F - gv_closed_form(tech, family, R)) < 1e-9


def test_random_window_has_no_closed_form():
    assert gv_closed_form("B", "quantum_generic", 0.3) is None
    with pytest.raises(ValueError):
        exponent("B", "classical_q", 0.5, 0.6)


def test_lc_exponent():
    assert lc_exponent(0.0, 5.0) == (0.0, 0.0)
    with pytest.raises(ValueError):
        lc_exponent(0.1, 2.0)
    with pytest.raises(ValueError):
        exponent("LC", "quantum_generic", 0.5, 0.1)


def test_lc_asymptote_approaches_exact_form():
    ratios = []
    for z in (3.0, 10.0, 100.0, 1000.0):
        exact, asym = lc_exponent(0.05, z)
        assert exact < asym
        ratios.append(exact / asym)
    assert ratios == sorted(ratios)
    assert ratios[-1] > 0.99


def test_trial_counts():
    assert trial_count_T0(10, 5, 2) == 4.5
    assert trial_count_T0(10, 5, 0) == 1
    assert trial_count_T0(10, 0, 4) == 1
    assert trial_count_estimate(10, 5, 2) == 4.0


def test_sliding_list_size():
    assert sliding_list_size(2, 4, 0) == 1
    assert sliding_list_size(2, 4, 2) == 6
    assert sliding_list_size(4, 6, 2) == 135


def test_punctured_window():
    assert punctured_window_size(100, 0) == 0
    assert punctured_window_size(100, 1) == 100
    assert punctured_window_size(100, 0.5) == 67
    assert punctured_window_size(100, 0, quantum=True) == 67


def test_crossover_estimate():
    assert 0 < lc_crossover_rate(2.9) < 1


def test_csv():
    pts = gv_exponent_curve("C", "quantum_generic", [0.5])
    text = curves_csv(pts, ["hello"])
    assert text == f"# hello\n{CSV_HEADER}\nC_bipartition,quantum_generic,0.5,{pts[0].delta:.12g},0.25,2\n"


def test_unknown_names():
    with pytest.raises(ValueError):
        exponent("Z", "quantum_generic", 0.5, 0.1)
    with pytest.raises(ValueError):
        gv_delta("ternary", 0.5)


def test_binary_units_for_qary_codes():
    d = gv_delta("classical_q", 0.5, q=4)
    F = exponent("C", "classical_q", 0.5, d, q=4).F
    assert F == pytest.approx(entropy_hq(4, d) / 2 * math.log2(4))


def test_punctured_bipartition_wins_near_rate_one():
    grid = [R for R in rate_grid(201) if 0.94 <= R < 1.0]
    curves = {t: gv_exponent_curve(t, "quantum_generic", grid) for t in "ABCD"}
    for i in range(len(grid)):
        assert curves["D"][i].F <= min(curves[t][i].F for t in "ABC")


def test_random_window_beats_punctured_at_moderate_rate():
    R = [0.9]
    assert gv_exponent_curve("B", "quantum_generic", R)[0].F < gv_exponent_curve("D", "quantum_generic", R)[0].F


def test_lc_exponent_linear_in_delta():
    a = lc_exponent(0.03, 4.0)[0]
    assert lc_exponent(0.06, 4.0)[0] == pytest.approx(2 * a, rel=1e-15)


def test_gv_round_trip():
    for R in rate_grid(101):
        d = gv_delta("quantum_generic", R)
        assert abs((1 - 2 * entropy_hq(4, d)) - R) < 1e-9
