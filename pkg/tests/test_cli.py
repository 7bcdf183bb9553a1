from scripts.cli import run
from utils.graph_io import parse_graph, parse_map
from utils.mixed_graph import ColourSpec

DIRECTED_P3 = """\
mixed 0 1 3
a 0 1 1
a 1 2 1
"""

DIRECTED_C3 = """\
mixed 0 1 3
a 0 1 1
a 1 2 1
a 2 0 1
"""


def test_bounds_table(capsys):
    assert run(["bounds", "--delta", "2", "-m", "0", "-n", "1"]) == 0
    out = capsys.readouterr().out
    header, row = out.strip().splitlines()
    values = dict(zip(header.split("\t"), row.split("\t")))
    assert values['sopena'] == '12'
    assert values['dns'] == 'n/a'


def test_chi_and_witness_verification(capsys, write_file, tmp_path):
    graph = write_file("p3.txt", DIRECTED_P3)
    witness = str(tmp_path / "witness.txt")
    assert run(["-o", witness, "chi", graph]) == 0
    with open(witness) as file:
        assert file.read().startswith("chi 3\nmixed 0 1 3\n")
    capsys.readouterr()
    assert run(["chi", graph, "--verify", witness]) == 0
    assert capsys.readouterr().out == "valid\noptimal\n"


def test_hom_search_and_map_check(capsys, write_file):
    p3 = write_file("p3.txt", DIRECTED_P3)
    c3 = write_file("c3.txt", DIRECTED_C3)
    assert run(["hom", p3, c3]) == 0
    text = capsys.readouterr().out
    f = parse_map(text, parse_graph(DIRECTED_P3), parse_graph(DIRECTED_C3))
    assert len(f.image) == 3
    assert run(["hom", c3, p3]) == 1
    assert capsys.readouterr().out == "none\n"
    bad = write_file("bad.map", "map 0 1\nmap 1 0\nmap 2 2\n")
    assert run(["hom", p3, c3, "--map", bad]) == 1
    assert capsys.readouterr().out == "invalid\n"


def test_malformed_input_exits_with_two(capsys, write_file):
    path = write_file("broken.txt", "mixed 1 0 2\ne 0 1 2\n")
    assert run(["chi", path]) == 2
    assert "line 2" in capsys.readouterr().err
    assert run(["chi", write_file("missing_dir.txt", "") + ".nope"]) == 2


def test_build_z_header(capsys):
    assert run(["build-z", "-m", "0", "-n", "1", "-q", "3"]) == 0
    out = capsys.readouterr().out
    assert out.startswith("# Z m=0 n=1 q=3 factorization=cyclic\n# factor 1: 0 1\n# factor 2: 1 0\n")
    Z = parse_graph(out)
    assert Z.spec == ColourSpec(0, 1)
    assert Z.p == 12


def test_shuffled_factorization_needs_seed(capsys):
    assert run(["build-h", "-m", "1", "-n", "1", "--shuffle"]) == 2
    assert run(["build-h", "-m", "1", "-n", "1", "--shuffle", "--seed", "4"]) == 0
    assert "factorization=shuffled(4)" in capsys.readouterr().out


def test_universal_colouring(capsys, write_file):
    graph = write_file("c3.txt", DIRECTED_C3)
    assert run(["universal", graph, "-k", "2"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0].startswith("# target Z m=0 n=1 q=3")
    assert sum(line.startswith("map ") for line in lines) == 3


def test_gen_is_deterministic(capsys):
    argv = ["gen", "bounded", "-m", "1", "-n", "1", "-p", "9", "--max-degree", "3", "--seed", "7"]
    assert run(argv) == 0
    first = capsys.readouterr().out
    assert run(argv) == 0
    assert capsys.readouterr().out == first
    assert parse_graph(first).p == 9


def test_prob_summary(capsys):
    assert run(["prob", "-k", "4", "-c", "3", "--layers"]) == 0
    out = capsys.readouterr().out
    assert "union_bound_exact" in out
    assert "t\t3888" in out
    assert run(["prob", "-k", "4", "-c", "3", "--backend", "log"]) == 0
    assert "union_bound_exact\tn/a" in capsys.readouterr().out


def test_check_p_exit_codes(capsys, write_file):
    graph = write_file("c3.txt", DIRECTED_C3)
    assert run(["check-p", graph, "-a", "1", "-b", "1"]) == 0
    assert run(["check-p", graph, "-a", "1", "-b", "2"]) == 1
    assert run(["check-p", graph, "-a", "1", "-b", "1", "--mode", "sampled"]) == 2
    assert run(["check-p", graph, "-a", "1", "-b", "1", "--mode", "sampled", "--seed", "3", "--trials", "5"]) == 0
    assert "sampled(5,3)" in capsys.readouterr().out


def test_greedy_reports_stuck(capsys, write_file):
    source = write_file("c3.txt", DIRECTED_C3)
    target = write_file("tt3.txt", "mixed 0 1 3\na 0 1 1\na 1 2 1\na 0 2 1\n")
    assert run(["greedy", source, target, "-k", "2"]) == 1
    assert capsys.readouterr().out.endswith("stuck 2\n")


def test_find_target_needs_seed():
    assert run(["find-target", "-m", "0", "-n", "1", "-k", "2", "-t", "20"]) == 2


def test_find_target_too_small(capsys):
    assert run(["find-target", "-m", "0", "-n", "1", "-k", "3", "-t", "5", "--seed", "1"]) == 1
    assert capsys.readouterr().out == "none\n"


def test_repro_inequalities(capsys):
    assert run(["repro", "inequalities"]) == 0
    out = capsys.readouterr().out
    assert out.startswith("# repro seed=20240607 instances=1000\nsmallest margin")
    assert out.endswith("verdict PASS\n")


def test_unknown_subcommand():
    assert run(["colour-everything"]) == 2
