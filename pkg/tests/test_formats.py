import json

import numpy as np
import pytest

from latentid.connectivity import classify
from latentid.errors import DataFormatError
from latentid.formats import (read_higher_order, read_model, read_network, read_timeseries_csv,
                              write_edge_csv, write_graph, write_higher_order, write_model,
                              write_network, write_report, write_table_csv, write_timeseries_csv)
from latentid.lsar import RegularizationConfig, lsar_fit_regularized
from latentid.netgen import HigherOrderNetwork, gen_erdos_renyi, gen_ring
from latentid.simulate import TimeSeriesData, simulate
from latentid.spectral import optimal_ar


def roundtrip_bytes(tmp_path, obj, write, read):
    a, b = tmp_path / "a", tmp_path / "b"
    write(obj, a)
    write(read(a), b)
    assert a.read_bytes() == b.read_bytes()
    return read(a)


def test_network_roundtrip(tmp_path):
    net = gen_erdos_renyi(10, 0.35, 0.1, 0.35, 5, seed=3)
    back = roundtrip_bytes(tmp_path, net, write_network, read_network)
    np.testing.assert_array_equal(back.full_matrix(), net.full_matrix())
    assert back.manifest_labels == net.manifest_labels
    assert back.latent_labels == net.latent_labels


def test_latent_free_network_roundtrip(tmp_path):
    net = gen_ring(3, 0.2, 0.1, [1, 2, 3])
    back = roundtrip_bytes(tmp_path, net, write_network, read_network)
    assert back.n_l == 0 and back.a12.shape == (3, 0)


def test_higher_order_roundtrip(tmp_path):
    rng = np.random.default_rng(0)
    hon = HigherOrderNetwork(tuple(rng.uniform(-0.2, 0.2, (4, 4)) for _ in range(2)), 2)
    back = roundtrip_bytes(tmp_path, hon, write_higher_order, read_higher_order)
    for x, y in zip(back.coeffs, hon.coeffs):
        np.testing.assert_array_equal(x, y)


def test_model_roundtrip_keeps_metadata(tmp_path):
    net = gen_erdos_renyi(10, 0.35, 0.1, 0.35, 5, seed=3)
    d = simulate(net, 2000, seed=0)
    model = lsar_fit_regularized(d, 3, RegularizationConfig(5.0, 0.8), labels=net.manifest_labels)
    back = roundtrip_bytes(tmp_path, model, write_model, read_model)
    np.testing.assert_array_equal(back.stacked(), model.stacked())
    assert back.provenance is model.provenance
    assert back.labels == net.manifest_labels and back.reg == model.reg


def test_timeseries_roundtrip(tmp_path):
    d = simulate(gen_ring(6, 0.3, 0.2, [1, 4]), 300, seed=5)
    path = tmp_path / "y.csv"
    write_timeseries_csv(d, path)
    back = read_timeseries_csv(path)
    np.testing.assert_array_equal(back.outputs, d.outputs)
    np.testing.assert_array_equal(back.inputs, d.inputs)
    assert back.seed == 5 and back.rng == d.rng
    path2 = tmp_path / "z.csv"
    write_timeseries_csv(back, path2)
    assert path.read_bytes() == path2.read_bytes()
    assert path.read_text().splitlines()[0] == "t,y1,y2,u1,u2"


def test_timeseries_outputs_only_without_time_column(tmp_path):
    path = tmp_path / "ext.csv"
    path.write_text("a,b\n1.0,2.0\n3.0,4.0\n\n")
    d = read_timeseries_csv(path)
    np.testing.assert_array_equal(d.outputs, [[1.0, 3.0], [2.0, 4.0]])
    assert d.inputs is None and d.seed is None


@pytest.mark.parametrize("body, line, field", [
    ("t,y1\n1,0.5\n2,abc\n", 3, "y1"),
    ("t,y1\n1,0.5,7\n", 2, None),
    ("t,y1\n", 2, None),
    ("", 1, None),
])
def test_timeseries_format_errors(tmp_path, body, line, field):
    path = tmp_path / "bad.csv"
    path.write_text(body)
    with pytest.raises(DataFormatError) as info:
        read_timeseries_csv(path)
    assert f"line {line}" in str(info.value)
    if field:
        assert repr(field) in str(info.value)


def test_timeseries_rejects_unmatched_inputs(tmp_path):
    path = tmp_path / "bad.csv"
    path.write_text("y1,y2,u1\n1,2,3\n")
    with pytest.raises(DataFormatError):
        read_timeseries_csv(path)


def test_network_format_errors(tmp_path):
    path = tmp_path / "net.json"
    path.write_text("{not json")
    with pytest.raises(DataFormatError):
        read_network(path)
    path.write_text(json.dumps({"n_m": 1, "n_l": 0, "a11": [[0.1]], "a12": [], "a21": []}))
    with pytest.raises(DataFormatError, match="a22"):
        read_network(path)
    path.write_text(json.dumps({"n_m": 2, "n_l": 0, "a11": [[0.1]], "a12": [], "a21": [],
                                "a22": []}))
    with pytest.raises(DataFormatError, match="a11"):
        read_network(path)


def test_model_format_errors(tmp_path):
    path = tmp_path / "m.json"
    path.write_text(json.dumps({"n_m": 1, "tau": 2, "mats": [[[0.1]]]}))
    with pytest.raises(DataFormatError, match="mats"):
        read_model(path)
    path.write_text(json.dumps({"n_m": 1, "tau": 1, "mats": [[[0.1]]], "provenance": "magic"}))
    with pytest.raises(DataFormatError, match="provenance"):
        read_model(path)


def test_graph_and_edge_outputs(tmp_path):
    net = gen_ring(4, 0.25, 0.0, [1, 3])
    g = classify(optimal_ar(net, 2), 0.1)
    write_graph(g, tmp_path / "g.json")
    data = json.loads((tmp_path / "g.json").read_text())
    assert data["direct"] == []
    assert [(e["src"], e["dst"], e["min_order"]) for e in data["indirect"]] == [(1, 3, 1), (3, 1, 1)]
    write_edge_csv(g, tmp_path / "e.csv")
    assert (tmp_path / "e.csv").read_text() == (
        "src,dst,kind,weight_or_order\n1,3,indirect,1\n3,1,indirect,1\n")


def test_report_and_table_writers(tmp_path):
    write_report({"a": float("inf"), "b": 1.5, "c": [1, 2]}, tmp_path / "r.json")
    assert json.loads((tmp_path / "r.json").read_text()) == {"a": None, "b": 1.5, "c": [1, 2]}
    write_table_csv(("x", "y", "z"), [(1, 0.1, None)], tmp_path / "t.csv")
    assert (tmp_path / "t.csv").read_text() == "x,y,z\n1,0.1,\n"


def test_written_values_are_exact(tmp_path):
    d = TimeSeriesData(np.array([[0.1, 1 / 3, -2.5e-300]]))
    write_timeseries_csv(d, tmp_path / "v.csv")
    assert read_timeseries_csv(tmp_path / "v.csv").outputs.tobytes() == d.outputs.tobytes()
