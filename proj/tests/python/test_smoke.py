import math

import pytest

import evtwin


def test_sizing_constants():
    assert evtwin.size_pv(100) == 17.2
    assert evtwin.size_pv(200) == 30.0
    assert evtwin.size_bess(25) == 20.0


def test_building_ratios():
    year = [0.0] * 8760
    demand = list(year)
    pv = list(year)
    demand[:3] = [1.0, 2.0, 1.0]
    pv[1] = 4.0
    r = evtwin.simulate_building(demand, pv=pv)
    assert math.isclose(r["scr"], 0.5)
    assert math.isclose(r["ssr"], 0.5)
    assert r["bess_soc"] == []


def test_battery_never_raises_import():
    demand = [0.5] * 8760
    pv = [2.0 if 10 <= h % 24 < 15 else 0.0 for h in range(8760)]
    without = evtwin.simulate_building(demand, pv=pv)
    with_bess = evtwin.simulate_building(demand, pv=pv, bess_kwh=5.0)
    assert sum(with_bess["grid_import"]) < sum(without["grid_import"])
    assert max(with_bess["bess_soc"]) <= 5.0 + 1e-12


def test_partial_year_is_rejected():
    with pytest.raises(evtwin.EvtwinError):
        evtwin.monthly_max([1.0] * 100)


def test_build_tours():
    trips = [(7 * 60, 7 * 60 + 30, 10.0, True, False), (17 * 60, 17 * 60 + 25, 8.0, False, True)]
    tours = evtwin.build_tours(trips)
    assert len(tours) == 1
    assert tours[0]["longest_leg_km"] == 10.0
    assert tours[0]["total_km"] == 18.0


@pytest.fixture
def small_config(tmp_path):
    path = tmp_path / "town.yaml"
    path.write_text("seed: 3\nmode_choice: default\nsynthetic_town:\n  buildings: 15\n")
    return path


def test_simulate_small_town(small_config):
    reports = evtwin.simulate(small_config, ["CS", "EV"])
    assert set(reports) == {"CS", "EV"}
    cs, ev = reports["CS"], reports["EV"]
    assert cs["provenance"]["seed"] == 3
    assert ev["totals"]["grid_import_kwh"] >= cs["totals"]["grid_import_kwh"]
    assert evtwin.config_hash(str(small_config)) == cs["provenance"]["config_hash"]


def test_mobility_validation(small_config):
    m = evtwin.mobility_validation(small_config)
    assert 0.0 <= m["mean_usage_days"] <= 7.0


def test_bad_config(tmp_path):
    path = tmp_path / "bad.yaml"
    path.write_text("seed: 3\n")
    with pytest.raises(evtwin.EvtwinError, match="mode_choice"):
        evtwin.dump_config(str(path))
