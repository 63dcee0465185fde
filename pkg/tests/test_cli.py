import csv
import io
import json
import math
from fractions import Fraction

import pytest

from latticedist.cli import main, parse_grid
from latticedist.subset import ConfigKind, PointSet, generate
from latticedist.lattice import LatticeSpec


def run_cli(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def rows(text):
    return list(csv.DictReader(io.StringIO(text)))


def test_lattice_n2(capsys):
    code, out, _ = run_cli(capsys, "lattice", "--n", "2")
    assert code == 0
    assert out == "d,sqrt_d,frequency,curve_index\n1,1,4,1\n2,1.41421356237,2,1\n"


def test_lattice_n1_is_usage_error(capsys):
    code, _, err = run_cli(capsys, "lattice", "--n", "1")
    assert code == 2 and "N" in err


def test_lattice_n200_total(capsys, tmp_path):
    out = tmp_path / "l200.csv"
    assert run_cli(capsys, "lattice", "--n", "200", "--out", str(out))[0] == 0
    assert sum(int(r["frequency"]) for r in rows(out.read_text())) == math.comb(40000, 2)


def test_lattice_json(capsys):
    code, out, _ = run_cli(capsys, "lattice", "--n", "3", "--format", "json")
    data = json.loads(out)
    assert code == 0 and data["total"] == 36 and data["entries"][0] == [1, 12]


def test_error_corners(capsys):
    code, out, _ = run_cli(capsys, "error", "--n", "5", "--config", "corners", "--per-class")
    assert code == 0
    data = json.loads(out)
    eps = {(e["a"], e["b"]): e["eps"] for e in data["per_class"]}
    frac = {k: Fraction(int(v["num"]), int(v["den"])) for k, v in eps.items()}
    assert frac[(4, 4)] == Fraction(5**4, 8) - 2
    assert frac[(4, 0)] == Fraction(5**4, 4) - 2 * 5
    assert "closed_form_bound" in data


def test_error_parity(capsys):
    code, _, err = run_cli(capsys, "error", "--n", "4", "--config", "corners-center")
    assert code == 2 and "odd" in err


def test_error_full_is_zero(capsys):
    data = json.loads(run_cli(capsys, "error", "--n", "5", "--config", "full")[1])
    for key in ("eps_exact_normalized", "eps_exact_unnormalized", "eps_pair_estimate"):
        assert data[key]["num"] == "0"
    assert "closed_form_bound" not in data


def test_error_unknown_config(capsys):
    assert run_cli(capsys, "error", "--n", "5", "--config", "nope")[0] == 2


def test_optimal_curve_grid(capsys, tmp_path):
    out = tmp_path / "curve.csv"
    assert run_cli(capsys, "optimal-curve", "--n", "100", "--p", "1:10000:100", "--out", str(out))[0] == 0
    rs = rows(out.read_text())
    assert len(rs) == 100
    assert rs[0]["eps_unnormalized"] == str(math.comb(10**4, 2))


def test_optimal_curve_endpoint_and_empty(capsys):
    code, out, _ = run_cli(capsys, "optimal-curve", "--n", "10", "--p", "100")
    assert code == 0 and rows(out)[0]["eps_unnormalized"] == "0"
    code, out, _ = run_cli(capsys, "optimal-curve", "--n", "10")
    assert code == 0 and out == "p,eps_unnormalized,eps_normalized,eps_pair_estimate\n"


def test_optimal_curve_out_of_range(capsys):
    assert run_cli(capsys, "optimal-curve", "--n", "10", "--p", "0:5")[0] == 2
    assert run_cli(capsys, "optimal-curve", "--n", "10", "--p", "1:101")[0] == 2


def test_parse_grid():
    assert parse_grid("1:10:3", 100) == [1, 4, 7, 10]
    assert parse_grid("5,2", 100) == [5, 2]
    assert parse_grid("", 100) == []
    with pytest.raises(ValueError):
        parse_grid("1:5:0", 100)


@pytest.mark.parametrize("n, p, kind", [("4", "4", "corners"), ("5", "5", "corners-center")])
def test_search_verify(capsys, n, p, kind):
    code, out, _ = run_cli(capsys, "search", "--n", n, "--p", p, "--verify-config", kind)
    assert code == 0
    assert json.loads(out)["complete"] is True


def test_search_verify_mismatch(capsys):
    code, _, err = run_cli(capsys, "search", "--n", "4", "--p", "4", "--objective", "min",
                           "--verify-config", "corners")
    assert code == 1 and "differs" in err


def test_search_budget(capsys):
    code, out, err = run_cli(capsys, "search", "--n", "30", "--p", "15", "--mode", "exhaustive")
    assert code == 3 and "budget" in err
    assert json.loads(out)["complete"] is False


def test_search_random_seeded(capsys, monkeypatch):
    monkeypatch.setenv("SOURCE_DATE_EPOCH", "1")
    argv = ("search", "--n", "6", "--p", "4", "--mode", "random", "--seed", "3",
            "--iterations", "3", "--steps", "40")
    assert run_cli(capsys, *argv)[1] == run_cli(capsys, *argv)[1]


def test_nk_rows(capsys):
    code, out, _ = run_cli(capsys, "nk", "--kmax", "10")
    assert code == 0
    rs = rows(out)
    assert [rs[0][k] for k in ("k", "n_k", "n_k_prime", "primorial_lower", "simple_upper")] == ["1"] * 5
    assert [rs[1][k] for k in ("n_k", "n_k_prime", "primorial_lower", "simple_upper")] == ["5"] * 4
    assert rs[3]["n_k"] == rs[3]["n_k_prime"] == "65"
    assert all(r["agree"] == "1" for r in rs)


def test_nk_range(capsys):
    assert run_cli(capsys, "nk", "--kmax", "11")[0] == 2


def test_config_roundtrip(capsys, tmp_path):
    code, out, _ = run_cli(capsys, "config", "--n", "7", "--config", "stretched-3x3")
    assert code == 0
    S = PointSet.from_json(out)
    assert S == generate(LatticeSpec(7), ConfigKind.STRETCHED_3X3)
    path = tmp_path / "s.json"
    path.write_text(out)
    code, out, _ = run_cli(capsys, "subset-dist", "--n", "7", "--config", str(path))
    assert code == 0 and sum(int(r["frequency"]) for r in rows(out)) == 36
    assert run_cli(capsys, "subset-dist", "--n", "8", "--config", str(path))[0] == 2


def test_filled_perimeter_depth(capsys):
    code, out, _ = run_cli(capsys, "subset-dist", "--n", "6", "--config", "filled-perimeter", "--depth", "2")
    assert code == 0 and sum(int(r["frequency"]) for r in rows(out)) == math.comb(32, 2)
    assert run_cli(capsys, "subset-dist", "--n", "6", "--config", "filled-perimeter")[0] == 2


@pytest.mark.parametrize("argv", [
    ("lattice", "--n", "12"),
    ("error", "--n", "9", "--config", "checkerboard", "--per-class"),
    ("optimal-curve", "--n", "20", "--p", "1:400:7"),
    ("nk", "--kmax", "8", "--format", "json"),
])
def test_outputs_byte_identical(capsys, argv):
    assert run_cli(capsys, *argv)[1] == run_cli(capsys, *argv)[1]
