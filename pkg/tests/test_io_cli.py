import json
from pathlib import Path

import pytest

from multicurv import (
    CompileGraph,
    GraphFileSyntaxError,
    IndexOutOfRange,
    MultiplexGraph,
    NormalizationScheme,
    ValidationError,
    compile_layers,
    curvature_report,
    difference_scores,
    extract_features,
    identify_weakness,
    normalize_layers,
    parse_graph_file,
    parse_graph_text,
    serialize_graph,
    synthesize_classification_dataset,
    write_graph_file,
)
from multicurv.cli import main
from conftest import unit_graph, weighted_graph

FIXTURE = Path(__file__).parent / "data" / "two_layer_seven.json"


# ------------------------------------------------------------------- format


def test_fixture_parses_as_explicit_multiplex():
    doc = parse_graph_file(FIXTURE)
    g = doc.graph
    assert isinstance(g, MultiplexGraph)
    assert not isinstance(g, CompileGraph)
    assert g.n == 7
    assert g.num_layers == 2
    assert g.intra_edge_count + g.inter_edge_count == 11
    assert doc.labels == {0: "hub", 6: "rim"}


def test_layer_stack_document_compiles_on_load():
    text = json.dumps(
        {
            "format": "multiplex-graph",
            "version": 1,
            "n": 2,
            "layers": [
                {"vertex_weights": [1.0, 1.0], "edges": [[0, 1, 4.0]]},
                {"vertex_weights": [1.0, 1.0], "edges": [[0, 1, 9.0]]},
            ],
        }
    )
    g = parse_graph_text(text).graph
    assert isinstance(g, CompileGraph)
    assert g.inter_edge_weight(0, 1, 2) == pytest.approx(4.0)


def test_empty_inter_edges_means_explicit():
    text = json.dumps(
        {
            "format": "multiplex-graph",
            "version": 1,
            "n": 2,
            "layers": [{"vertex_weights": [1.0, 1.0], "edges": [[0, 1, 1.0]]}],
            "inter_edges": [],
        }
    )
    g = parse_graph_text(text).graph
    assert isinstance(g, MultiplexGraph)
    assert not isinstance(g, CompileGraph)
    assert g.inter_edge_count == 0


def test_round_trip_preserves_floats_bitwise(tmp_path):
    w = 0.1 + 0.2  # not representable prettily
    g = weighted_graph(3, [(0, 1, w), (1, 2, 1e-17)], m=[0.3, 7.0, 1.0])
    path = tmp_path / "g.json"
    write_graph_file(path, g)
    back = parse_graph_file(path).graph.layer_subgraph(1)
    assert back.edge_weight(0, 1) == w
    assert back.edge_weight(1, 2) == 1e-17
    assert back.vertex_weight(0) == 0.3


def test_round_trip_explicit_multiplex():
    doc = parse_graph_file(FIXTURE)
    again = parse_graph_text(serialize_graph(doc))
    assert again.graph == doc.graph
    assert again.labels == doc.labels


def test_serialized_compile_graph_omits_inter_edges():
    cg = compile_layers([unit_graph(2, [(0, 1)])] * 2)
    data = json.loads(serialize_graph(cg))
    assert "inter_edges" not in data
    mg = MultiplexGraph(cg.layers, [(0, 1, 2, 5.0)])
    data = json.loads(serialize_graph(mg))
    assert data["inter_edges"] == [[0, 1, 2, 5.0]]


def test_syntax_error_reports_position():
    with pytest.raises(GraphFileSyntaxError) as exc_info:
        parse_graph_text('{\n  "format": oops\n}')
    err = exc_info.value
    assert err.line == 2
    assert err.column == 13
    assert "line 2" in str(err)
    assert err.category == "SyntaxError"


@pytest.mark.parametrize(
    "mutate",
    [
        lambda d: d.pop("format"),
        lambda d: d.update(format="graph"),
        lambda d: d.update(version=2),
        lambda d: d.pop("n"),
        lambda d: d.update(layers=[]),
        lambda d: d["layers"][0].update(edges=[[0, 1]]),
        lambda d: d["layers"][0].update(vertex_weights=[1.0]),
        lambda d: d.update(labels={"away": "x"}),
    ],
)
def test_malformed_documents_rejected(mutate):
    base = {
        "format": "multiplex-graph",
        "version": 1,
        "n": 2,
        "layers": [{"vertex_weights": [1.0, 1.0], "edges": [[0, 1, 1.0]]}],
    }
    mutate(base)
    with pytest.raises(ValidationError):
        parse_graph_text(json.dumps(base))


def test_label_key_out_of_range():
    base = {
        "format": "multiplex-graph",
        "version": 1,
        "n": 2,
        "layers": [{"vertex_weights": [1.0, 1.0], "edges": []}],
        "labels": {"5": "ghost"},
    }
    with pytest.raises(IndexOutOfRange):
        parse_graph_text(json.dumps(base))


def test_layer_errors_carry_layer_number():
    base = {
        "format": "multiplex-graph",
        "version": 1,
        "n": 2,
        "layers": [
            {"vertex_weights": [1.0, 1.0], "edges": []},
            {"vertex_weights": [1.0, 1.0], "edges": [[0, 1, -2.0]]},
        ],
    }
    with pytest.raises(ValidationError, match="layer 2"):
        parse_graph_text(json.dumps(base))


# ---------------------------------------------------------------------- cli


def run_cli(*args):
    return main([str(a) for a in args])


def test_cli_requires_exactly_one_source(tmp_path, capsys):
    code = run_cli("curvature", "--out", tmp_path)
    assert code == 1
    assert capsys.readouterr().err.startswith("error[InvalidConfig]:")
    code = run_cli(
        "curvature", "--input", FIXTURE, "--generate", "karate", "--out", tmp_path
    )
    assert code == 1


def test_cli_missing_file_is_io_error(tmp_path, capsys):
    code = run_cli("curvature", "--input", tmp_path / "no.json", "--out", tmp_path)
    assert code == 1
    assert capsys.readouterr().err.startswith("error[IO]:")


def test_cli_syntax_error_category(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text("{,}")
    code = run_cli("curvature", "--input", bad, "--out", tmp_path)
    assert code == 1
    err = capsys.readouterr().err
    assert err.startswith("error[SyntaxError]:")
    assert "line 1" in err


def test_cli_curvature_matches_api(tmp_path):
    out = tmp_path / "o"
    assert run_cli("curvature", "--input", FIXTURE, "--out", out) == 0
    lines = (out / "curvature.csv").read_text().splitlines()
    report = curvature_report(parse_graph_file(FIXTURE).graph)
    assert len(lines) == 1 + len(report)
    first = lines[1].split(",")
    entry = report.entries[0]
    assert first[0] == entry.kind
    assert float(first[6]) == entry.value


def test_cli_curvature_json_summary(tmp_path):
    out = tmp_path / "o"
    assert run_cli(
        "curvature", "--input", FIXTURE, "--format", "json", "--out", out
    ) == 0
    data = json.loads((out / "curvature.json").read_text())
    report = curvature_report(parse_graph_file(FIXTURE).graph)
    assert data["summary"]["edges"] == len(report)
    assert data["summary"]["min"] == report.minimum
    assert [e["curvature"] for e in data["entries"]] == list(report.values)


def test_cli_rejects_normalizing_explicit_inter_edges(tmp_path, capsys):
    code = run_cli(
        "curvature", "--input", FIXTURE, "--normalize", "mean", "--out", tmp_path
    )
    assert code == 1
    assert "error[InvalidConfig]" in capsys.readouterr().err


def test_cli_evaluate_applies_default_bounded_scaling(tmp_path):
    src = tmp_path / "src.json"
    layers = [
        weighted_graph(4, [(0, 1, 3.0), (1, 2, 40.0), (2, 3, 7.0)]),
        weighted_graph(4, [(0, 2, 1.0), (1, 3, 900.0), (0, 3, 5.0)]),
    ]
    write_graph_file(src, compile_layers(layers))
    out = tmp_path / "o"
    assert run_cli("evaluate", "--input", src, "--out", out) == 0

    scheme = NormalizationScheme("bounded", (1.0, 10.0))
    expected = difference_scores(compile_layers(normalize_layers(layers, scheme)))
    rows = (out / "evaluation.csv").read_text().splitlines()[1:]
    assert len(rows) == 4
    for line, want in zip(rows, expected):
        cells = line.split(",")
        assert int(cells[0]) == want.vertex
        assert float(cells[1]) == want.ce
        assert float(cells[4]) == want.difference


def test_cli_evaluate_normalize_none(tmp_path):
    src = tmp_path / "src.json"
    layers = [
        weighted_graph(3, [(0, 1, 3.0), (1, 2, 40.0)]),
        weighted_graph(3, [(0, 2, 1.0), (1, 2, 2.0)]),
    ]
    write_graph_file(src, compile_layers(layers))
    out = tmp_path / "o"
    assert run_cli("evaluate", "--input", src, "--normalize", "none", "--out", out) == 0
    expected = difference_scores(compile_layers(layers))
    got = (out / "evaluation.csv").read_text().splitlines()[1]
    assert float(got.split(",")[1]) == list(expected)[0].ce


def test_cli_identify_csv_and_json_agree(tmp_path):
    src = tmp_path / "src.json"
    layers = [
        weighted_graph(4, [(0, 1, 1.0), (2, 3, 1.0)]),
        weighted_graph(4, [(0, 1, 4.0), (2, 3, 1.0)]),
        weighted_graph(4, [(0, 1, 16.0), (2, 3, 1.0)]),
    ]
    write_graph_file(src, compile_layers(layers))
    out_csv = tmp_path / "csv"
    out_json = tmp_path / "json"
    assert run_cli("identify", "--input", src, "--normalize", "none", "--out", out_csv) == 0
    assert run_cli(
        "identify", "--input", src, "--normalize", "none", "--format", "json",
        "--out", out_json,
    ) == 0

    finding = identify_weakness(compile_layers(layers))
    summary = (out_csv / "weakness_summary.csv").read_text().splitlines()[1].split(",")
    assert int(summary[0]) == finding.vertex == 0
    assert int(summary[1]) == finding.layer == 1
    assert (int(summary[2]), int(summary[3])) == finding.edge

    data = json.loads((out_json / "weakness.json").read_text())
    assert data["vertex"] == finding.vertex
    assert data["layer"] == finding.layer
    assert data["edge"] == list(finding.edge)
    assert len(data["step1"]) == 4
    for name in ("weakness_step1.csv", "weakness_step2.csv", "weakness_step3.csv"):
        assert (out_csv / name).exists()


def test_cli_generate_then_load(tmp_path):
    out = tmp_path / "g"
    assert run_cli(
        "generate",
        "--generate", "er:n=10,p=0.4",
        "--generate", "cycle:n=10",
        "--seed", 5,
        "--out", out,
    ) == 0
    g = parse_graph_file(out / "graph.json").graph
    assert isinstance(g, CompileGraph)
    assert g.num_layers == 2
    assert g.layer_subgraph(2).edge_count == 10


def test_cli_generated_graphs_are_seed_deterministic(tmp_path):
    for sub in ("a", "b"):
        assert run_cli(
            "generate", "--generate", "er:n=12,p=0.5", "--seed", 9,
            "--out", tmp_path / sub,
        ) == 0
    a = (tmp_path / "a" / "graph.json").read_bytes()
    b = (tmp_path / "b" / "graph.json").read_bytes()
    assert a == b


def test_cli_outputs_are_byte_deterministic(tmp_path):
    for sub in ("a", "b"):
        assert run_cli(
            "evaluate", "--generate", "er:n=14,p=0.4", "--generate", "er:n=14,p=0.6",
            "--seed", 31, "--out", tmp_path / sub,
        ) == 0
    a = (tmp_path / "a" / "evaluation.csv").read_bytes()
    b = (tmp_path / "b" / "evaluation.csv").read_bytes()
    assert a == b


def test_cli_sensitivity_single_layer_only(tmp_path, capsys):
    code = run_cli("sensitivity", "--input", FIXTURE, "--out", tmp_path)
    assert code == 1
    assert "error[InvalidConfig]" in capsys.readouterr().err


def test_cli_sensitivity_table(tmp_path):
    out = tmp_path / "o"
    assert run_cli(
        "sensitivity", "--generate", "complete:n=4", "--seed", 2, "--out", out
    ) == 0
    lines = (out / "sensitivity.csv").read_text().splitlines()
    assert lines[0] == "vertex_a,vertex_b,parameter,partial,dimensionless"
    # 6 edges, each with 2 vertex rows + own edge + 4 adjacent edges
    assert len(lines) == 1 + 6 * 7


def test_cli_hist(tmp_path):
    out = tmp_path / "o"
    assert run_cli(
        "hist", "--generate", "karate", "--seed", 4, "--bins", 7, "--out", out
    ) == 0
    lines = (out / "hist.csv").read_text().splitlines()
    assert lines[0] == "bin_left,bin_right,count"
    assert len(lines) == 8
    assert sum(int(row.split(",")[2]) for row in lines[1:]) == 78


def test_cli_hist_empty_graph(tmp_path, capsys):
    code = run_cli(
        "hist", "--generate", "er:n=5,p=0", "--seed", 1, "--out", tmp_path
    )
    assert code == 1
    assert "error[NoEdges]" in capsys.readouterr().err


def test_cli_features_matches_library(tmp_path):
    out = tmp_path / "o"
    assert run_cli(
        "features", "--dataset", "bridge", "--count", 4, "--seed", 77, "--out", out
    ) == 0
    text = (out / "features.csv").read_text()
    expected = extract_features(synthesize_classification_dataset(4, 77))
    assert text == expected.to_csv_text()


def test_cli_features_requires_seed(tmp_path, capsys):
    code = run_cli("features", "--count", 4, "--out", tmp_path)
    assert code == 1
    assert "error[InvalidConfig]" in capsys.readouterr().err


def test_cli_bad_range_flag(tmp_path, capsys):
    code = run_cli(
        "evaluate", "--generate", "cycle:n=5", "--seed", 1,
        "--range", "10", "--out", tmp_path,
    )
    assert code == 1
    assert "error[InvalidConfig]" in capsys.readouterr().err
