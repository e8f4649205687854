import pytest

from rainbowcube import (
    build_tree,
    cayley_coloring,
    format_graph,
    format_tree,
    parse_embedding,
    path_tree,
    verify,
)
from rainbowcube.cli import main
from rainbowcube.gen import random_spider

from test_tree import BRANCHING_14


@pytest.fixture()
def q3(tmp_path):
    path = tmp_path / "q3.graph"
    path.write_text(format_graph(cayley_coloring(3)))
    return str(path)


@pytest.fixture()
def p4(tmp_path):
    path = tmp_path / "p4.tree"
    path.write_text(format_tree(path_tree(3)))
    return str(path)


def kv(output: str) -> dict:
    out = {}
    for line in output.strip().splitlines():
        key, _, value = line.partition("=")
        out[key] = value
    return out


class TestEmbedCommand:
    def test_success(self, q3, p4, tmp_path, capsys):
        out = tmp_path / "emb.txt"
        code = main(["embed", q3, p4, "--out", str(out), "--verify", "--trace"])
        assert code == 0
        image, n_edges, dim = parse_embedding(out.read_text())
        assert n_edges == 3 and dim == 3
        assert verify(cayley_coloring(3), path_tree(3), image).ok
        assert "trace" in out.read_text()

    def test_degree_too_small(self, q3, tmp_path):
        t = tmp_path / "p5.tree"
        t.write_text(format_tree(path_tree(4)))
        assert main(["embed", q3, str(t)]) == 4

    def test_missing_file(self, q3):
        assert main(["embed", q3, "/nonexistent/tree.txt"]) == 3

    def test_parse_error(self, q3, tmp_path):
        bad = tmp_path / "bad.tree"
        bad.write_text("not a tree\n")
        assert main(["embed", q3, str(bad)]) == 3

    def test_stdout_default(self, q3, p4, capsys):
        assert main(["embed", q3, p4]) == 0
        assert capsys.readouterr().out.startswith("embedding 3 3")

    def test_strict_vertices_flag(self, tmp_path, p4):
        g = tmp_path / "partial.graph"
        g.write_text("cube 2\nvertex 00\nedge 00 01 0\n")
        t = tmp_path / "edge.tree"
        t.write_text("tree 2\nparents 0\n")
        assert main(["embed", str(g), str(t)]) == 0  # endpoint auto-added
        assert main(["embed", str(g), str(t), "--strict-vertices"]) == 3

    def test_internal_failure_dumps_bundle(self, q3, p4, tmp_path, monkeypatch):
        # force a post-run verification failure to exercise the exit-1 path
        import rainbowcube.cli as cli
        from rainbowcube.report import Check, VerificationReport

        def broken_verify(*args, **kwargs):
            return VerificationReport((Check("rainbow", False, "forced"),))

        monkeypatch.setattr(cli, "verify", broken_verify)
        bundle = tmp_path / "bundle"
        code = main(["embed", q3, p4, "--verify", "--bundle-dir", str(bundle),
                     "--out", str(tmp_path / "e.txt")])
        assert code == 1
        assert (bundle / "graph.txt").exists()
        assert (bundle / "tree.txt").exists()
        assert (bundle / "embedding.txt").exists()


class TestVerifyCommand:
    def test_pass_and_fail(self, q3, p4, tmp_path, capsys):
        emb = tmp_path / "emb.txt"
        assert main(["embed", q3, p4, "--out", str(emb)]) == 0
        assert main(["verify", q3, p4, str(emb)]) == 0
        # corrupt: map two tree vertices to one cube vertex
        text = emb.read_text().replace("map 3 111", "map 3 011")
        bad = tmp_path / "bad.txt"
        bad.write_text(text)
        assert main(["verify", q3, p4, str(bad)]) == 2
        assert "injective" in capsys.readouterr().out

    def test_z_bad_flag(self, q3, p4, tmp_path):
        emb = tmp_path / "emb.txt"
        main(["embed", q3, p4, "--out", str(emb)])
        assert main(["verify", q3, p4, str(emb), "--z-bad", "000"]) == 2
        assert main(["verify", q3, p4, str(emb), "--z-bad", "110",
                     "--require-path-distinct"]) == 0

    def test_invalid_input(self, q3, p4):
        assert main(["verify", q3, p4, "/nonexistent"]) == 3


class TestOracleCommand:
    def test_found(self, q3, p4, capsys):
        assert main(["oracle", q3, p4]) == 0
        assert "found=True" in capsys.readouterr().out

    def test_not_found(self, q3, tmp_path, capsys):
        t = tmp_path / "p5.tree"
        t.write_text(format_tree(path_tree(4)))
        assert main(["oracle", q3, str(t)]) == 0
        out = capsys.readouterr().out
        assert "found=False" in out and "exhausted=True" in out


class TestFuzzCommand:
    def test_random_trials(self, capsys):
        assert main(["fuzz", "--n", "4", "--trials", "200", "--seed", "7"]) == 0
        assert "0 counterexamples" in capsys.readouterr().out

    def test_exhaustive(self, capsys):
        assert main(["fuzz", "--exhaustive", "--n", "3", "--oracle"]) == 0
        out = capsys.readouterr().out
        assert "0 counterexamples" in out

    def test_jobs_agree_with_serial(self, capsys):
        assert main(["fuzz", "--n", "4", "--trials", "8", "--seed", "3"]) == 0
        serial = capsys.readouterr().out
        assert main(["fuzz", "--n", "4", "--trials", "8", "--seed", "3",
                     "--jobs", "2"]) == 0
        assert capsys.readouterr().out == serial

    def test_env_seed_override(self, capsys, monkeypatch):
        monkeypatch.setenv("RAINBOW_SEED", "7")
        assert main(["fuzz", "--n", "4", "--trials", "5", "--seed", "999"]) == 0
        first = capsys.readouterr().out
        monkeypatch.delenv("RAINBOW_SEED")
        assert main(["fuzz", "--n", "4", "--trials", "5", "--seed", "7"]) == 0
        assert capsys.readouterr().out == first

    def test_reserved_mutation_flag_rejected(self):
        with pytest.raises(SystemExit) as info:
            main(["fuzz", "--mutate-engine-off"])
        assert info.value.code == 3


class TestGenCommand:
    def test_graph_to_file(self, tmp_path, capsys):
        out = tmp_path / "host.graph"
        code = main(["gen", "subgraph_min_degree", "--n", "4", "-d", "3",
                     "--seed", "5", "--out", str(out), "--emit-spec"])
        assert code == 0
        assert capsys.readouterr().out.strip() == "gen subgraph_min_degree d=3 n=4 seed=5"
        assert out.read_text().startswith("cube 4")

    def test_tree_kind(self, capsys):
        assert main(["gen", "random_tree", "--edges", "5", "--seed", "1"]) == 0
        assert capsys.readouterr().out.startswith("tree 6")

    def test_spider_kind(self, capsys):
        assert main(["gen", "random_spider", "--legs", "2,2,4"]) == 0
        assert capsys.readouterr().out.startswith("tree 9")

    def test_missing_parameter(self):
        assert main(["gen", "random_tree"]) == 3

    def test_determinism_across_calls(self, tmp_path):
        a, b = tmp_path / "a", tmp_path / "b"
        main(["gen", "refined_cayley", "--n", "3", "--splits", "3",
              "--seed", "9", "--out", str(a)])
        main(["gen", "refined_cayley", "--n", "3", "--splits", "3",
              "--seed", "9", "--out", str(b)])
        assert a.read_text() == b.read_text()


class TestCheckTreeCommand:
    def test_branching_example(self, tmp_path, capsys):
        f = tmp_path / "t.tree"
        f.write_text(format_tree(build_tree(BRANCHING_14)))
        assert main(["check-tree", str(f)]) == 0
        values = kv(capsys.readouterr().out)
        assert values["format"] == "1"
        assert values["floor_edges"] == "4"
        assert values["ceil_edges"] == "5"
        assert values["is_spider"] == "0"
        assert values["internal_ok"] == "1"

    def test_five_leg_spider(self, tmp_path, capsys):
        f = tmp_path / "s.tree"
        f.write_text(format_tree(random_spider([5, 4, 4, 2, 2])))
        assert main(["check-tree", str(f)]) == 0
        values = kv(capsys.readouterr().out)
        assert values["legs"] == "5"
        assert values["odd_legs"] == "1"
        assert values["deficiency"] == "1"
        assert values["leg_lengths"] == "5,4,4,2,2"

    def test_single_edge(self, tmp_path, capsys):
        f = tmp_path / "e.tree"
        f.write_text(format_tree(path_tree(1)))
        assert main(["check-tree", str(f)]) == 0
        assert kv(capsys.readouterr().out)["deficiency"] == "1"

    def test_parse_error(self):
        assert main(["check-tree", "/nonexistent"]) == 3


class TestBenchCommand:
    def test_runs(self, capsys):
        assert main(["bench", "--n", "5", "--trials", "3", "--seed", "2"]) == 0
        assert "bench n=5" in capsys.readouterr().out


class TestUsageErrors:
    def test_unknown_subcommand(self):
        with pytest.raises(SystemExit) as info:
            main(["frobnicate"])
        assert info.value.code == 3

    def test_no_subcommand(self):
        with pytest.raises(SystemExit) as info:
            main([])
        assert info.value.code == 3
