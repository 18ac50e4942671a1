import csv
import json
import subprocess
import sys

import numpy as np
import pytest

from latentid.cli import main
from latentid.formats import (network_to_dict, read_model, read_network, write_higher_order,
                              write_network)
from latentid.netgen import (HigherOrderNetwork, gen_erdos_renyi, gen_ring,
                             latent_acyclicity_index)


def run(*argv):
    return main([str(a) for a in argv])


def rows(path):
    with open(path) as fh:
        return list(csv.reader(fh))


def test_generate_ring_example(tmp_path):
    out = tmp_path / "ring.json"
    assert run("generate", "ring", "--n", 40, "--w", 0.25, "--self", 0.25,
               "--manifest", "5,23,33,34,36", "--out", out) == 0
    net = read_network(out)
    assert net.manifest_labels == (5, 23, 33, 34, 36) and net.n_l == 35


def test_generate_er_is_deterministic(tmp_path):
    args = ["generate", "er", "--n", 10, "--p", 0.35, "--wmin", 0.1, "--wmax", 0.35,
            "--nm", 5, "--seed", 7, "--out"]
    assert run(*args, tmp_path / "a.json") == 0
    assert run(*args, tmp_path / "b.json") == 0
    assert (tmp_path / "a.json").read_bytes() == (tmp_path / "b.json").read_bytes()
    net = read_network(tmp_path / "a.json")
    np.testing.assert_array_equal(net.full_matrix(),
                                  gen_erdos_renyi(10, 0.35, 0.1, 0.35, 5, 7).full_matrix())


def test_generate_from_higher_order(tmp_path):
    rng = np.random.default_rng(0)
    write_higher_order(HigherOrderNetwork((rng.uniform(-.2, .2, (3, 3)),) * 2, 1),
                       tmp_path / "ho.json")
    assert run("generate", "from-higher-order", "--input", tmp_path / "ho.json",
               "--out", tmp_path / "lift.json") == 0
    net = read_network(tmp_path / "lift.json")
    assert (net.n_m, net.n_l) == (1, 5)


def test_fig1_pipeline_reports_indirect_pair(tmp_path, capsys):
    write_network(gen_ring(4, 0.25, 0.0, [1, 3]), tmp_path / "net.json")
    assert run("simulate", "--network", tmp_path / "net.json", "--N", 100_000, "--seed", 1,
               "--out", tmp_path / "y.csv") == 0
    assert run("fit", "--data", tmp_path / "y.csv", "--tau", 3, "--out", tmp_path / "m.json") == 0
    capsys.readouterr()
    assert run("classify", "--model", tmp_path / "m.json", "--network", tmp_path / "net.json",
               "--alpha", 0.3, "--out", tmp_path / "g.json", "--edges", tmp_path / "e.csv") == 0
    printed = capsys.readouterr().out
    assert "indirect 1 -> 3  order 1" in printed and "indirect 3 -> 1  order 1" in printed
    graph = json.loads((tmp_path / "g.json").read_text())
    assert graph["direct"] == [] and graph["path_order_exact"] is True
    assert rows(tmp_path / "e.csv")[1:] == [["1", "3", "indirect", "1"], ["3", "1", "indirect", "1"]]


def test_regularized_fit_report(tmp_path):
    write_network(gen_ring(40, 0.25, 0.25, [5, 23, 33, 34, 36]), tmp_path / "net.json")
    run("simulate", "--network", tmp_path / "net.json", "--N", 20_000, "--out", tmp_path / "y.csv")
    assert run("fit", "--data", tmp_path / "y.csv", "--tau", 15, "--gamma", 10, "--rho0", 0.9,
               "--out", tmp_path / "m.json", "--report", tmp_path / "r.json") == 0
    rep = json.loads((tmp_path / "r.json").read_text())
    assert rep["provenance"] == "lsar-regularized"
    assert rep["reg"] == {"gamma": 10.0, "rho0": 0.9}
    assert rep["objective"] > rep["residual_energy"] > 0
    assert read_model(tmp_path / "m.json").order == 15


def test_validate_r_squared(tmp_path):
    write_network(gen_ring(10, 0.25, 0.25, [1, 4, 7]), tmp_path / "net.json")
    run("simulate", "--network", tmp_path / "net.json", "--N", 20_000, "--out", tmp_path / "y.csv")
    assert run("validate", "--data", tmp_path / "y.csv", "--tau", 5, "--split", 0.8,
               "--out", tmp_path / "v.json") == 0
    r2 = json.loads((tmp_path / "v.json").read_text())["r_squared"]
    assert 0 < r2 <= 1


def test_error_surface_single_cell_and_rerun(tmp_path):
    write_network(gen_ring(10, 0.25, 0.25, [1, 4, 7]), tmp_path / "net.json")
    cfg = {"network": str(tmp_path / "net.json"), "N_list": [1000], "tau_list": [2],
           "seeds": [0], "grid_size": 256}
    (tmp_path / "cfg.json").write_text(json.dumps(cfg))
    for name in ("a", "b"):
        assert run("error-surface", "--config", tmp_path / "cfg.json",
                   "--out", tmp_path / name) == 0
    table = rows(tmp_path / "a" / "error_surface.csv")
    assert table[0] == ["N", "tau", "seed", "hinf_error", "coeff_error", "error"]
    assert len(table) == 2 and table[1][:3] == ["1000", "2", "0"] and table[1][5] == ""
    assert ((tmp_path / "a" / "error_surface.csv").read_bytes()
            == (tmp_path / "b" / "error_surface.csv").read_bytes())
    echoed = json.loads((tmp_path / "a" / "config.json").read_text())
    assert echoed["output_dir"] == str(tmp_path / "a") and echoed["grid_size"] == 256


def test_error_surface_flags_override_config(tmp_path):
    net = gen_ring(10, 0.25, 0.25, [1, 4, 7])
    cfg = {"network": network_to_dict(net), "N_list": [1000], "tau_list": [2], "seeds": [0]}
    (tmp_path / "cfg.json").write_text(json.dumps(cfg))
    assert run("error-surface", "--config", tmp_path / "cfg.json", "--tau-list", "1,3",
               "--grid", 128, "--out", tmp_path / "o") == 0
    table = rows(tmp_path / "o" / "error_surface.csv")
    assert [r[1] for r in table[1:]] == ["1", "3"]


def test_bound_table_variants(tmp_path):
    write_network(gen_ring(10, 0.25, 0.25, [1, 4, 7]), tmp_path / "ring.json")
    assert run("bound-table", "--network", tmp_path / "ring.json", "--tau-max", 8,
               "--grid", 512, "--out", tmp_path / "b.csv") == 0
    table = rows(tmp_path / "b.csv")
    assert table[0] == ["tau", "optimal_error", "gamma", "bound"]
    assert all(float(r[3]) >= float(r[1]) for r in table[1:])

    flat = gen_ring(3, 0.2, 0.1, [1, 2, 3])
    write_network(flat, tmp_path / "flat.json")
    run("bound-table", "--network", tmp_path / "flat.json", "--tau-max", 3, "--grid", 64,
        "--out", tmp_path / "f.csv")
    assert all(float(r[1]) <= 1e-12 for r in rows(tmp_path / "f.csv")[1:])

    net = gen_erdos_renyi(10, 0.35, 0.1, 0.35, 5, seed=2)
    net = net.with_latent_block(np.tril(net.a22, -1))
    write_network(net, tmp_path / "nil.json")
    run("bound-table", "--network", tmp_path / "nil.json", "--tau-max", 8, "--grid", 1024,
        "--out", tmp_path / "n.csv")
    k = latent_acyclicity_index(net.a22)
    assert all(float(r[1]) <= 1e-9 for r in rows(tmp_path / "n.csv")[k + 1:])


def test_exit_codes(tmp_path, capsys):
    write_network(gen_ring(10, 0.25, 0.25, [1, 4, 7]), tmp_path / "ring.json")
    with pytest.raises(SystemExit) as info:
        run("generate", "ring", "--n", 4)
    assert info.value.code == 2
    assert run("bound-table", "--network", tmp_path / "ring.json", "--rho-bar", 0.1,
               "--out", tmp_path / "x.csv") == 2
    assert run("fit", "--data", tmp_path / "missing.csv", "--tau", 2, "--out", tmp_path / "m") == 3
    (tmp_path / "bad.csv").write_text("t,y1\n1,oops\n")
    assert run("fit", "--data", tmp_path / "bad.csv", "--tau", 1, "--out", tmp_path / "m") == 3
    (tmp_path / "zero.csv").write_text("y1\n" + "0\n" * 20)
    assert run("validate", "--data", tmp_path / "zero.csv", "--tau", 1, "--split", 0.5,
               "--out", tmp_path / "v.json") == 4
    assert "bad.csv" in capsys.readouterr().err


def test_module_entry_point(tmp_path):
    res = subprocess.run([sys.executable, "-m", "latentid", "generate", "ring", "--n", "4",
                          "--self", "0", "--manifest", "1,3", "--out", str(tmp_path / "n.json")],
                         capture_output=True, text=True)
    assert res.returncode == 0
    assert "rho(A) = 0.25 (stable)" in res.stdout
