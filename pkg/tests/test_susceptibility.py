import csv
import json
import math

import numpy as np
import pytest

from vkerr import (ProbeGrid, SweepResult, SweepRow, Susceptibility, chi,
                   find_features, sweep, write_csv, write_json)

from test_dressed import quiet_params


class TestChi:
    def test_weak_drive_free_space_lorentzian(self):
        # with the cavity off and a vanishing drive the probe sees a plain
        # two-level line: Im chi1 = rho_gs * gamma1 / (gamma1^2 + omega^2)
        # with half the population in each ground-like dressed state
        p = quiet_params(g1=0.0, g2=0.0, gamma1=0.1, gamma2=1e-6,
                         omega_L_rabi=0.01, delta=0.0, omega21=200.0)
        for w in np.linspace(-0.5, 0.5, 21):
            got = chi(p, w).im_chi1
            ref = 0.5 * p.gamma1 / (p.gamma1 ** 2 + w ** 2)
            assert got == pytest.approx(ref, rel=0.01)
            assert got > 0.0

    def test_absorption_sign_frozen(self):
        # golden sign convention: free-space linear absorption is positive
        p = quiet_params(g1=0.0, g2=0.0, delta=0.0)
        assert chi(p, 200.0).im_chi1 > 0.0

    def test_transparency_at_kerr_maximum(self, sideband_params):
        result = sweep(sideband_params, ProbeGrid.from_range(199.5, 201.0, 0.005))
        report = find_features(result)
        # the Kerr peak coexists with a nonlinear-absorption zero and
        # negligible linear absorption
        top = max(report.re_chi3_extrema, key=lambda e: abs(e[1]))
        assert report.transparency_points
        nearest = min(report.transparency_points, key=lambda z: abs(z - top[0]))
        assert abs(nearest - top[0]) < 0.05
        i_near = int(np.argmin(np.abs(np.array(result.axis()) - nearest)))
        im1 = abs(result.rows[i_near].result.im_chi1)
        assert im1 < 0.05 * report.re_chi3_peak

    def test_off_resonant_decay(self, sideband_params):
        # linear response rolls off as 1/|delta_p|, the Kerr part faster
        for w, bound in ((-1e6, 1e-5), (1e6, 1e-5), (1e9, 1e-8)):
            r = chi(sideband_params, w)
            assert max(abs(r.re_chi1), abs(r.im_chi1),
                       abs(r.re_chi3), abs(r.im_chi3)) < bound

    def test_rejects_non_finite_omega(self, sideband_params):
        with pytest.raises(ValueError):
            chi(sideband_params, math.nan)

    def test_golden_values(self, sideband_params):
        r = chi(sideband_params, 200.25)
        assert r.re_chi1 == pytest.approx(0.10596249343776687, rel=1e-10)
        assert r.im_chi1 == pytest.approx(0.2156174879839553, rel=1e-10)
        assert r.re_chi3 == pytest.approx(-4.790960740961804, rel=1e-10)
        assert r.im_chi3 == pytest.approx(-0.05608347901547463, rel=1e-10)
        r = chi(sideband_params, 200.122)
        assert r.re_chi3 == pytest.approx(0.7785852239600926, rel=1e-10)
        assert r.im_chi3 == pytest.approx(3.8031379912582155, rel=1e-10)


class TestSweep:
    def test_decoupled_parameter_rows_identical(self):
        p = quiet_params(g1=0.0, g2=0.0)
        result = sweep(p, [50.0, 100.0, 200.0, 400.0], axis_name="kappa",
                       omega=200.1)
        first = result.rows[0].result
        for row in result.rows[1:]:
            assert row.result == first

    def test_row_errors_recorded_not_fatal(self):
        # omega_L_rabi = 0 with delta = 0 has no dressed basis; the row
        # fails, the sweep continues
        p = quiet_params(delta=0.0)
        result = sweep(p, [0.0, 100.0, 200.0], axis_name="omega_L_rabi",
                       omega=200.1)
        assert result.rows[0].error is not None
        assert result.rows[0].result is None
        assert result.rows[1].error is None
        assert result.n_failed == 1

    def test_omega_sweep_matches_pointwise(self, sideband_params):
        grid = ProbeGrid.from_range(200.0, 200.5, 0.25)
        result = sweep(sideband_params, grid)
        for row in result.rows:
            assert row.result == chi(sideband_params, row.axis_value)

    def test_threaded_equals_serial(self, sideband_params):
        grid = ProbeGrid.from_range(200.0, 200.4, 0.1)
        serial = sweep(sideband_params, grid)
        threaded = sweep(sideband_params, grid, threads=4)
        assert serial.rows == threaded.rows

    def test_parameter_sweep_requires_omega(self, sideband_params):
        with pytest.raises(ValueError):
            sweep(sideband_params, [1.0, 2.0], axis_name="g1")

    def test_unknown_axis_rejected(self, sideband_params):
        with pytest.raises(ValueError):
            sweep(sideband_params, [1.0], axis_name="horsepower", omega=200.0)

    def test_decoupling_limit_equivalence(self, sideband_params):
        # compared away from the sharp features, where the O(kappa/delta_c)
        # residual is not amplified by the line slope
        detuned = sideband_params.replace(delta_c=1e6)
        free = sideband_params.replace(g1=0.0, g2=0.0)
        for w in (190.0, 195.0, 206.0):
            a, b = chi(detuned, w), chi(free, w)
            assert abs(a.chi1 - b.chi1) < 1e-6
            assert abs(a.chi3 - b.chi3) < 1e-6


def synthetic_result(xs, im3, re3=None, im1=None):
    rows = []
    for i, x in enumerate(xs):
        rows.append(SweepRow(axis_value=x, result=Susceptibility(
            re_chi1=0.0,
            im_chi1=0.0 if im1 is None else im1[i],
            re_chi3=1.0 if re3 is None else re3[i],
            im_chi3=im3[i])))
    return SweepResult(axis_name="omega", rows=tuple(rows),
                       params=quiet_params())


class TestFindFeatures:
    def test_linear_zero_crossing(self):
        xs = [0.0, 2.0, 4.0, 6.0, 8.0]
        result = synthetic_result(xs, [x - 5.0 for x in xs])
        report = find_features(result)
        assert report.im_chi3_zeros == (5.0,)

    def test_crossing_brackets_sign_change(self):
        xs = list(np.linspace(0.0, 1.0, 11))
        rng = np.random.default_rng(5)
        ys = list(rng.normal(size=11))
        report = find_features(synthetic_result(xs, ys))
        for z in report.im_chi3_zeros:
            i = max(0, min(9, int(z * 10)))
            assert ys[i] == 0.0 or ys[i] * ys[i + 1] <= 0.0

    def test_parabolic_extremum_refinement(self):
        xs = list(np.linspace(-1.0, 1.0, 21))
        re3 = [1.0 - (x - 0.03) ** 2 for x in xs]
        report = find_features(synthetic_result(xs, [1.0] * 21, re3=re3))
        assert len(report.re_chi3_extrema) == 1
        pos, val = report.re_chi3_extrema[0]
        assert pos == pytest.approx(0.03, abs=1e-12)
        assert val == pytest.approx(1.0, abs=1e-4)

    def test_transparency_threshold(self):
        xs = list(np.linspace(0.0, 10.0, 11))
        im3 = [x - 5.0 for x in xs]
        quiet = synthetic_result(xs, im3, im1=[0.01] * 11)
        loud = synthetic_result(xs, im3, im1=[0.5] * 11)
        assert find_features(quiet).transparency_points == (5.0,)
        assert find_features(loud).transparency_points == ()

    def test_empty_report(self):
        xs = [0.0, 1.0, 2.0]
        report = find_features(synthetic_result(xs, [1.0, 1.0, 1.0],
                                                re3=[0.5, 0.5, 0.5]))
        assert report.empty
        assert report.im_chi3_zeros == ()

    def test_needs_three_rows(self):
        with pytest.raises(ValueError):
            find_features(synthetic_result([0.0, 1.0], [1.0, -1.0]))


class TestWriters:
    def test_csv_format(self, tmp_path, sideband_params):
        result = sweep(sideband_params, ProbeGrid.from_range(200.0, 200.2, 0.1))
        out = tmp_path / "rows.csv"
        write_csv(result, out)
        with open(out) as f:
            rows = list(csv.reader(f))
        assert rows[0] == ["axis", "re_chi1", "im_chi1", "re_chi3", "im_chi3",
                           "ratio_31", "ratio_33"]
        assert len(rows) == 4
        # nine significant digits, scientific
        assert rows[1][1] == f"{result.rows[0].result.re_chi1:.8e}"

    def test_csv_failed_row_empty_fields(self, tmp_path):
        p = quiet_params(delta=0.0)
        result = sweep(p, [0.0, 100.0], axis_name="omega_L_rabi", omega=200.0)
        out = tmp_path / "rows.csv"
        write_csv(result, out)
        with open(out) as f:
            rows = list(csv.reader(f))
        assert rows[1][1:] == [""] * 6

    def test_reruns_byte_identical(self, tmp_path, sideband_params):
        result = sweep(sideband_params, ProbeGrid.from_range(200.0, 200.2, 0.1))
        a, b = tmp_path / "a.csv", tmp_path / "b.csv"
        write_csv(result, a)
        write_csv(result, b)
        assert a.read_bytes() == b.read_bytes()
        ja, jb = tmp_path / "a.json", tmp_path / "b.json"
        write_json(result, ja)
        write_json(result, jb)
        assert ja.read_bytes() == jb.read_bytes()

    def test_json_metadata(self, tmp_path, sideband_params):
        result = sweep(sideband_params, ProbeGrid.from_range(200.0, 200.1, 0.1))
        out = tmp_path / "rows.json"
        write_json(result, out)
        payload = json.loads(out.read_text())
        assert payload["metadata"]["gamma12"] == 0.0
        assert payload["metadata"]["params"]["g2"] == 15.0
        assert payload["metadata"]["axis"] == "omega"
        assert len(payload["rows"]) == 2
