import json

import pytest

from rainbowmatch.cli import run
from rainbowmatch.core import read_edge_list, write_edge_list
from rainbowmatch.errors import InfeasibleParameters
from rainbowmatch.gen import generate_instance, generate_proper_digraph, random_latin_square
from rainbowmatch.latin import write_latin


def _capture(capsys, argv):
    code = run(argv)
    return code, capsys.readouterr().out


def test_generator_deterministic():
    a = generate_instance("random", 4, 5, True, seed=99, left_size=6, right_size=6)
    b = generate_instance("random", 4, 5, True, seed=99, left_size=6, right_size=6)
    assert a == b
    c = generate_instance("random", 4, 5, True, seed=100, left_size=6, right_size=6)
    assert a != c


def test_generator_infeasible():
    with pytest.raises(InfeasibleParameters):
        generate_instance("random", 2, 5, False, seed=0, left_size=3, right_size=3)


def test_generator_latin_kind_valid():
    g = generate_instance("latin", 3, seed=1)
    assert g.colour_count == 3
    assert len(g.edges) == 9
    rect = random_latin_square(3, seed=1)
    for row in range(3):
        assert sorted(rect.grid[row]) == [0, 1, 2]
    for col in range(3):
        assert sorted(rect.grid[r][col] for r in range(3)) == [0, 1, 2]


def test_proper_digraph_generator_deterministic():
    a = generate_proper_digraph(20, 4, seed=5)
    b = generate_proper_digraph(20, 4, seed=5)
    assert a.arcs == b.arcs


def test_solve_greedy_guarantee_regime(tmp_path, capsys):
    edges = [(x, x, 0) for x in range(4)] + [(x, (x + 1) % 4, 1) for x in range(4)]
    from rainbowmatch.core import build_graph

    g = build_graph(4, 4, 2, edges)
    f = tmp_path / "inst.txt"
    f.write_text(write_edge_list(g))
    code, out = _capture(capsys, ["solve", "--algorithm", "greedy", str(f)])
    assert code == 0
    payload = json.loads(out)
    assert payload["size"] == 2
    assert payload["verified"] is True


def test_transversal_2x2_reports_shortfall(tmp_path, capsys):
    f = tmp_path / "sq.txt"
    f.write_text("1 2\n2 1\n")
    code, out = _capture(capsys, ["transversal", str(f)])
    assert code == 1
    assert json.loads(out)["size"] == 1


def test_transversal_cyclic3_full(tmp_path, capsys):
    f = tmp_path / "sq.txt"
    f.write_text(write_latin(random_latin_square(3, seed=4)))
    code, out = _capture(capsys, ["transversal", str(f)])
    assert code == 0
    assert json.loads(out)["size"] == 3


def test_malformed_grid_exit_2(tmp_path, capsys):
    f = tmp_path / "bad.txt"
    f.write_text("1 2\n2 2\n")
    code, _ = _capture(capsys, ["transversal", str(f)])
    assert code == 2


def test_solve_json_byte_identical(tmp_path, capsys):
    g = generate_instance("random", 3, 4, True, seed=8, left_size=5, right_size=5)
    f = tmp_path / "inst.txt"
    f.write_text(write_edge_list(g))
    _, out1 = _capture(capsys, ["solve", "--algorithm", "switching", str(f)])
    _, out2 = _capture(capsys, ["solve", "--algorithm", "switching", str(f)])
    assert out1 == out2


def test_solver_outputs_reverified(tmp_path, capsys):
    g = generate_instance("random", 4, 5, True, seed=2, left_size=6, right_size=6)
    f = tmp_path / "inst.txt"
    f.write_text(write_edge_list(g))
    for algo in ("greedy", "switching", "golden", "oracle"):
        code, out = _capture(capsys, ["solve", "--algorithm", algo, str(f)])
        assert json.loads(out)["verified"] is True


def test_solve_traces(tmp_path, capsys):
    g = generate_instance("random", 4, 5, True, seed=2, left_size=6, right_size=6)
    f = tmp_path / "inst.txt"
    f.write_text(write_edge_list(g))
    code, out = _capture(
        capsys, ["solve", "--algorithm", "switching", "--trace", str(f)]
    )
    assert "trace" in json.loads(out)
    code, out = _capture(capsys, ["solve", "--algorithm", "golden", "--trace", str(f)])
    payload = json.loads(out)
    assert payload["trace"]["levels"][0]["method"] in ("engine", "assembly", "oracle", "base")


def test_solve_oracle_budget_flagged(tmp_path, capsys):
    g = generate_instance("random", 6, 6, False, seed=5, left_size=8, right_size=8)
    f = tmp_path / "inst.txt"
    f.write_text(write_edge_list(g))
    code, out = _capture(
        capsys,
        ["solve", "--algorithm", "oracle", "--node-limit", "3", str(f)],
    )
    assert code == 3
    assert json.loads(out)["optimal"] is False


def test_verify_subcommand(tmp_path, capsys):
    g = generate_instance("random", 3, 4, True, seed=8, left_size=5, right_size=5)
    gf = tmp_path / "g.txt"
    gf.write_text(write_edge_list(g))
    from rainbowmatch.core import greedy_rainbow_matching

    m = greedy_rainbow_matching(g)
    mf = tmp_path / "m.txt"
    mf.write_text("".join(f"{e.x} {e.y} {e.c}\n" for e in m))
    code, out = _capture(capsys, ["verify", str(gf), str(mf)])
    assert code == 0
    assert json.loads(out)["valid"] is True
    bad = tmp_path / "bad.txt"
    bad.write_text("0 0 0\n0 1 1\n")
    code, out = _capture(capsys, ["verify", str(gf), str(bad)])
    assert code in (1, 2)


def test_oracle_max_subcommand(tmp_path, capsys):
    f = tmp_path / "sq.txt"
    f.write_text("2 2 2\n0 0 0\n1 1 0\n0 1 1\n1 0 1\n")
    code, out = _capture(capsys, ["oracle-max", str(f)])
    assert code == 1  # maximum 1 < 2 colours
    payload = json.loads(out)
    assert payload["size"] == 1
    assert payload["optimal"] is True


def test_gen_round_trips_through_solve(tmp_path, capsys):
    f = tmp_path / "inst.txt"
    code, out = _capture(
        capsys,
        ["gen", "--kind", "random", "--n", "3", "--class-size", "4", "--seed", "5",
         "--left", "5", "--right", "5", "-o", str(f)],
    )
    assert code == 0
    g = read_edge_list(f.read_text())
    assert g.colour_count == 3
    code, _ = _capture(capsys, ["solve", str(f)])
    assert code in (0, 1)


def test_gen_stdout_deterministic(capsys):
    code, out1 = _capture(capsys, ["gen", "--kind", "latin", "--n", "4", "--seed", "3"])
    code, out2 = _capture(capsys, ["gen", "--kind", "latin", "--n", "4", "--seed", "3"])
    assert code == 0
    assert out1 == out2


def test_bounds_subcommand(capsys):
    code, out = _capture(capsys, ["bounds", "--epsilon", "1/10", "--m", "1"])
    assert code == 0
    payload = json.loads(out)
    names = {t["name"]: t for t in payload["thresholds"]}
    assert names["edge_disjoint_guarantee_threshold"]["value"] == str(10**180)
    assert names["edge_disjoint_guarantee_threshold"]["feasible_at_desk_scale"] is False


def test_menger_subcommand(capsys):
    code, out = _capture(capsys, ["menger", "--k", "1", "--m", "4", "--lp"])
    assert code == 0
    payload = json.loads(out)
    assert payload["property_I"] and payload["property_II"]
    assert payload["path_count"] == 5
    assert payload["lp"]["primal_value"] == "5/4"


def test_menger_simple_subcommand(capsys):
    code, out = _capture(capsys, ["menger", "--k", "1", "--m", "4", "--simple"])
    assert code == 0
    payload = json.loads(out)
    assert payload["property_I"] and payload["property_II"]
    assert payload["path_count"] == 5


def test_connectivity_ball_subcommand(capsys):
    code, out = _capture(
        capsys,
        ["connectivity", "--op", "ball", "--vertices", "30", "--out-degree", "5",
         "--seed", "2", "--epsilon", "0.5"],
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["t0"] <= 2


def test_connectivity_kdset_subcommand(capsys):
    code, out = _capture(
        capsys,
        ["connectivity", "--op", "kdset", "--vertices", "12", "--out-degree", "8",
         "--seed", "2", "--epsilon", "0.9", "--k", "1"],
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["connected"] in (True, False)


def test_unknown_file_exit_2(capsys):
    code, _ = _capture(capsys, ["solve", "/nonexistent/path.txt"])
    assert code == 2
