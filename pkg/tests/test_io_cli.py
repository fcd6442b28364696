import json
import subprocess
import sys

import pytest

from twinchain import cli, census
from twinchain.io import FIXTURE_DIR, InputError, fixture_names, format_pair, load_fixture, parse_pair, parse_posets
from twinchain.poset import antichain, chain, ordinal_sum
from twinchain.twinned import facet_count

FIXTURE_COUNTS = {
    "twin_example_a": 12,
    "twin_example_b": 11,
    "equality_d6": 216,
    "square_c2_c2": 4,
    "pentagon_i2_c2": 5,
    "hexagon_i2_i2": 6,
    "d3_i3_c3": 13,
    "d3_bottom_i2_vs_i3": 13,
    "d3_c3_c3": 8,
    "d3_i3_i3": 12,
    "d3_bottom_i2_vs_c3": 10,
    "d3_c3_vs_one_plus_c2": 11,
    "d4_towers_mismatched": 26,
}


def test_fixture_inventory():
    assert set(fixture_names()) == set(FIXTURE_COUNTS)


@pytest.mark.parametrize("name, n", sorted(FIXTURE_COUNTS.items()))
def test_fixture_counts(name, n):
    assert facet_count(*load_fixture(name)) == n


def test_line_format():
    P, Q = parse_pair("# comment\n[P]\nd = 3\n3 < 1\n3 < 2\n[Q]\nd = 3\n2 < 1\n2 < 3  # bottom\n")
    assert P.rel == {(3, 1), (3, 2)}
    assert Q.rel == {(2, 1), (2, 3)}


def test_full_relation_accepted():
    (P,) = parse_posets("d = 3\n1 < 2\n2 < 3\n1 < 3\n")
    assert P == chain(3)


def test_json_formats():
    rec = {"d": 2, "covers": [[1, 2]]}
    P, Q = parse_pair(json.dumps({"P": rec, "Q": {"d": 2, "relation": []}}))
    assert P == chain(2) and Q == antichain(2)
    P2, Q2 = parse_pair(json.dumps([rec, rec]))
    assert P2 == Q2 == chain(2)


def test_format_roundtrip():
    P, Q = ordinal_sum(antichain(2), chain(2)), antichain(4)
    assert parse_pair(format_pair(P, Q)) == (P, Q)


@pytest.mark.parametrize(
    "text, field",
    [
        ("d = 2\nd = 3\n", "Q.d"),
        ("d = 2\n1 < 2\n2 < 1\nd = 2\n", "P.covers"),
        ("d = 2\n1 < 5\nd = 2\n", "P.covers"),
        ("d = 2\n", "pair"),
        ("1 < 2\n", "line 1"),
        ("d = 2\n1 -> 2\n", "line 2"),
        ('{"P": {"covers": []}, "Q": {"d": 1}}', "P.d"),
        ("{not json", "json"),
    ],
)
def test_input_errors(text, field):
    with pytest.raises(InputError) as exc:
        parse_pair(text)
    assert exc.value.field == field


def run(capsys, *argv):
    code = cli.main([str(a) for a in argv])
    return code, capsys.readouterr()


def test_cli_count(capsys):
    code, out = run(capsys, "count", FIXTURE_DIR / "twin_example_a.txt")
    assert code == 0 and out.out == "N = 12\n"


def test_cli_count_chains(capsys):
    code, out = run(capsys, "count", FIXTURE_DIR / "twin_example_b.txt", "--chains")
    lines = out.out.splitlines()
    assert code == 0 and lines[0] == "N = 11"
    recs = [json.loads(x) for x in lines[1:]]
    assert len(recs) == 11
    assert recs.count({"P": [2], "Q": [3]}) == 1


def test_cli_count_mismatched(capsys, tmp_path):
    f = tmp_path / "bad.txt"
    f.write_text("d = 2\nd = 3\n")
    code, out = run(capsys, "count", f)
    assert code == 2 and "Q.d" in out.err


def test_cli_missing_file(capsys, tmp_path):
    code, _ = run(capsys, "count", tmp_path / "nope.txt")
    assert code == 2


def test_cli_verify_hexagon(capsys):
    code, out = run(capsys, "verify-geometry", FIXTURE_DIR / "hexagon_i2_i2.txt", "--level", "complete")
    assert code == 0
    assert out.out.strip() == "pass: 6 facets, 6 vertices, reflexive: true"


def test_cli_verify_i3(capsys, tmp_path):
    f = tmp_path / "i3.txt"
    f.write_text(format_pair(antichain(3), antichain(3)))
    code, out = run(capsys, "verify-geometry", f, "--level", "facets")
    assert code == 0 and "12 facets, 14 vertices" in out.out


def test_cli_verify_size_guard(capsys, tmp_path):
    f = tmp_path / "d5.txt"
    f.write_text(format_pair(antichain(5), chain(5)))
    code, out = run(capsys, "verify-geometry", f, "--level", "complete")
    assert code == 4


def test_cli_verify_large_facets_level(capsys):
    code, out = run(capsys, "verify-geometry", FIXTURE_DIR / "equality_d6.txt", "--level", "facets")
    assert code == 0
    assert "skipped" in out.out and "216 facets" in out.out


@pytest.mark.parametrize("d, needle", [(2, "max = 6 at 1 class pair"), (3, "max = 13"), (4, "max = 36")])
def test_cli_census(capsys, d, needle):
    code, out = run(capsys, "census", d)
    assert code == 0 and needle in out.out
    if d == 4:
        assert "equality <=> I_2 tower twin condition: verified" in out.out


def test_cli_census_bound_violation(capsys, monkeypatch):
    monkeypatch.setattr(census, "bound", lambda d: 10)
    code, out = run(capsys, "census", 3)
    assert code == 3
    text = out.out.split("\n", 1)[1]
    assert facet_count(*parse_pair(text)) > 10


def test_cli_census_size_guard(capsys):
    assert run(capsys, "census", 7)[0] == 4


def test_cli_census_out_and_jobs(capsys, tmp_path, monkeypatch):
    monkeypatch.setenv("TWINCHAIN_JOBS", "2")
    code, out = run(capsys, "census", 4, "--out", tmp_path)
    assert code == 0
    assert (tmp_path / "summary.txt").read_text().strip() == out.out.strip()


def test_cli_tables(capsys):
    code, out = run(capsys, "tables", "D2")
    assert code == 0
    assert out.out.count("PASS") == 6 and "FAIL" not in out.out


def test_cli_tables_failure(capsys, monkeypatch):
    monkeypatch.setitem(census.T3_GOLDEN, 3, (12, 14))
    code, out = run(capsys, "tables", "T3")
    assert code == 3 and "FAIL" in out.out


@pytest.mark.parametrize("d, text", [(1, "7/3"), (3, "14"), (4, "36")])
def test_cli_bound(capsys, d, text):
    code, out = run(capsys, "bound", d)
    assert code == 0 and out.out.strip() == text


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "twinchain", "bound", "6"], capture_output=True, text=True)
    assert res.returncode == 0 and res.stdout.strip() == "216"


def test_output_deterministic_across_runs():
    args = [sys.executable, "-m", "twinchain", "count", str(FIXTURE_DIR / "equality_d6.txt"), "--chains"]
    a = subprocess.run(args, capture_output=True).stdout
    b = subprocess.run(args, capture_output=True).stdout
    assert a == b and a.startswith(b"N = 216\n")
