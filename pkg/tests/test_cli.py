import json

import pytest

from grhgen.cli import main, parse_split
from grhgen.cli import InputError
from grhgen.search import BoundReport

CUBIC = "55137512477462689,559752270111028720,0,1"


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_bound_cubic_text(capsys):
    code, out, _ = run(capsys, "bound", "--poly", CUBIC)
    assert code == 0
    assert "t_basic=19162" in out and "t_improved=11071" in out


def test_bound_json_roundtrip_and_determinism(capsys):
    _, a, _ = run(capsys, "bound", "--poly", "2,0,0,1", "--json")
    _, b, _ = run(capsys, "bound", "--poly", "2,0,0,1", "--json")
    assert a == b
    rep = BoundReport.from_dict(json.loads(a))
    assert json.dumps(rep.to_dict(), sort_keys=True, indent=2) + "\n" == a
    assert "witness" in json.loads(a) and "flags" in json.loads(a)


def test_bound_from_file(tmp_path, capsys):
    f = tmp_path / "poly.txt"
    f.write_text("1,0,1\n")
    code, out, _ = run(capsys, "bound", "--poly", str(f), "--basic-only")
    assert code == 0 and "t_basic=5" in out and "t_improved" not in out


@pytest.mark.parametrize("poly", ["1,x", "1,0,2", "", "0,0,1", "5"])
def test_input_errors(capsys, poly):
    code, _, err = run(capsys, "bound", "--poly", poly)
    assert code == 2 and "error" in err


def test_cap_exit_status(capsys):
    code, _, err = run(capsys, "bound", "--poly", "2,0,0,1", "--n-max", "8")
    assert code == 3 and "cap" in err


def test_log_disc_override(capsys):
    _, out, _ = run(capsys, "bound", "--poly", "1,0,1", "--log-disc", "5.0", "--json")
    d = json.loads(out)
    assert d["log_abs_disc"] == 5.0


def test_cache_dir(tmp_path, capsys):
    _, a, _ = run(capsys, "bound", "--poly", "2,0,0,1", "--json", "--cache-dir", str(tmp_path))
    files = list(tmp_path.iterdir())
    assert len(files) == 1
    _, b, _ = run(capsys, "bound", "--poly", "2,0,0,1", "--json", "--cache-dir", str(tmp_path))
    assert a == b


def test_primes(capsys):
    code, out, _ = run(capsys, "primes", "--poly", "1,0,1", "--up-to", "10", "--list")
    lines = out.splitlines()
    assert code == 0 and lines[0] == "count=4"
    assert [int(l.split()[0]) for l in lines[1:5]] == [2, 5, 5, 9]


def test_split_override(capsys):
    # x^2 + 4*3 has 2 as an index-suspect prime; supply its record explicitly
    assert parse_split("2=1:1").degrees == ((1, 1),)
    with pytest.raises(InputError):
        parse_split("2=1")
    code, out, _ = run(capsys, "primes", "--poly", "1,0,1", "--up-to", "3", "--split", "2=1:2")
    assert code == 0 and out.startswith("count=2")


def test_batch_csv_and_plot(tmp_path, capsys):
    csvf, plot = tmp_path / "o.csv", tmp_path / "o.dat"
    code, _, _ = run(capsys, "batch", "--family", "pure", "--degree", "2", "--sign", "+",
                     "--a-min", "1", "--a-max", "3", "--csv", str(csvf), "--plot-data", str(plot))
    assert code == 0
    rows = csvf.read_text().splitlines()
    assert rows[0].startswith("label,log_disc") and len(rows) == 4
    data = [l for l in plot.read_text().splitlines() if not l.startswith("#")]
    assert len(data) == 3


def test_batch_empty_range(capsys):
    code, out, _ = run(capsys, "batch", "--family", "pure", "--a-min", "3", "--a-max", "2")
    assert code == 0 and out.strip().splitlines() == [out.strip()]


def test_batch_biquadratic(capsys):
    code, out, _ = run(capsys, "batch", "--family", "biquadratic", "--a1-range", "1..2",
                       "--a2-range", "1..2", "--jobs", "2")
    assert code == 0 and len(out.strip().splitlines()) == 4


def test_batch_guard(capsys):
    code, _, err = run(capsys, "batch", "--family", "pure", "--degree", "3", "--a-min", "2000",
                       "--a-max", "2000")
    assert code == 2 and "--force" in err


def test_cache_dir_with_excluded_prime(tmp_path, capsys):
    argv = ("bound", "--poly", "12,0,1", "--json", "--cache-dir", str(tmp_path))
    _, a, _ = run(capsys, *argv)
    _, b, _ = run(capsys, *argv)
    assert a == b and "untrusted primes excluded: 2" in a
