import math

try:
    import _heraldsim as hs
except ImportError:  # installed package layout
    import heraldsim as hs


def test_qndm_operating_point():
    q = hs.qndm_probabilities()
    assert abs(q["p_detect"] - 0.95) <= 0.02
    assert abs(q["p_transmit"] - 0.90) <= 0.02
    assert abs(q["product"] - 0.855) < 0.01
    assert q["cooperativity"] > 1.0


def test_channel_transmission_exact():
    eta = hs.channel_transmission(1.0, 0.17)
    assert math.isclose(eta, 10 ** -0.017, rel_tol=1e-12)


def test_link_budget_composition():
    b = hs.link_budget(1.0, protocol=2)
    expected = (
        b["eta_channel"]
        * b["eta_conv"]
        * b["p_qndm_detect"]
        * b["p_qndm_transmit"]
        * b["p_trs"]
    )
    assert math.isclose(b["eta_tot"], expected, rel_tol=1e-12)
    assert b["latency_s"] > 0.0


def test_time_budget_table_row():
    b = hs.time_budget("rotated:3", protocol=2, distance_km=1.0)
    assert f"{b['t_cycle']:.2e}" == "4.31e-03"
    assert f"{b['t_total']:.2e}" == "2.60e-02"


def test_sweep_is_deterministic():
    kwargs = dict(
        grid=[1e-3, 3e-3],
        shots=1000,
        codes=["rotated:3"],
        seed=5,
        include_baseline=False,
    )
    a = hs.sweep_logical_error(**kwargs)
    b = hs.sweep_logical_error(**kwargs)
    assert [r["fail_any"] for r in a] == [r["fail_any"] for r in b]
    assert all(r["code"] == "rotated:3" for r in a)


def test_rate_declines_with_distance():
    points = hs.rate_vs_distance([1.0, 10.0], trials=100, reps=1, seed=3)
    assert points[0]["rate_hz"] > points[1]["rate_hz"] > 0.0
