import json

from bsinf.cli import main
from bsinf.invariant import KInvariant, NormalFormDescriptor, k_at_infinity
from bsinf.parsing import parse_poly


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_invariant_text(capsys):
    code, out, _ = run(capsys, "invariant", "y^2 - x^3")
    assert code == 0
    assert "k = (1, 1)" in out
    assert "[0 : 1]" in out
    assert "(0, 1) -> 1" in out and "(0, -1) -> 1" in out


def test_invariant_bounded(capsys):
    code, out, _ = run(capsys, "invariant", "x^2 + y^2 - 1")
    assert code == 0
    assert "bounded curve; k = ()" in out


def test_invariant_parse_error(capsys):
    code, out, err = run(capsys, "invariant", "x + ")
    assert code == 1
    assert not out
    assert "offset 4" in err


def test_invariant_quiet(capsys):
    code, out, _ = run(capsys, "invariant", "--quiet", "y^2 - x^3")
    assert code == 0 and out.strip() == "k = (1, 1)"


def test_equiv_exit_codes(capsys):
    assert run(capsys, "equiv", "y^2 - x^3", "y^2 - x^5")[0] == 0
    code, out, _ = run(capsys, "equiv", "y^2 - x^3", "(y-x)^2 - (y+x)")
    assert code == 2 and "NOT EQUIVALENT" in out
    assert run(capsys, "equiv", "y^2 - x^3", "y^2 - x^3")[0] == 0


def test_normal_form_tuple(capsys):
    code, out, _ = run(capsys, "normal-form", "1,1")
    assert code == 0
    assert "((1, 0))" in out
    assert "y - x - 1" in out


def test_normal_form_curve(capsys):
    code, out, _ = run(capsys, "normal-form", "(y-x)^2 - (y+x)")
    assert code == 0
    assert "((0, 1))" in out
    assert str(parse_poly("(y-x)^2 - (y+x)")) in out


def test_normal_form_odd_tuple_exit_3(capsys):
    code, _, err = run(capsys, "normal-form", "1")
    assert code == 3 and "not realizable" in err


def test_normal_form_tuple_sorted_with_warning(capsys):
    code, out, err = run(capsys, "normal-form", "3,1")
    assert code == 0
    assert "reordered" in err
    assert "((1, 1))" in out


def test_realize(capsys):
    code, out, _ = run(capsys, "realize", "1,3")
    assert code == 0
    assert "verified: k = (1, 3)" in out
    code, out, _ = run(capsys, "realize", "2")
    assert code == 0 and "verified: k = (2)" in out
    assert run(capsys, "realize", "1,1,1")[0] == 3


def test_check_agrees(capsys):
    code, out, _ = run(capsys, "check", "y^2 - x^3")
    assert code == 0 and "AGREE" in out
    code, out, _ = run(capsys, "check", "x^2 + y^2 - 1")
    assert code == 0 and "AGREE" in out
    code, out, _ = run(capsys, "check", "((y-x)-1)*((y-x)^2-(y+x))")
    assert code == 0 and "(1, 3)" in out


def test_check_reduces_repeated_factors(capsys):
    # the doubled line must not read as a persistent tangency to the oracle
    code, out, _ = run(capsys, "check", "(y-x)^2*(y+x)")
    assert code == 0 and "AGREE" in out and "(1, 1, 1, 1)" in out


def test_json_report_round_trip(capsys):
    for curve in ["y^2 - x^3", "((y-x) - 1)*((y-x)^2 - (y+x))", "x^2 + y^2 - 1"]:
        code, out, _ = run(capsys, "invariant", "--json", curve)
        assert code == 0
        payload = json.loads(out)
        assert payload["schema"] == "bsinf/1"
        report = k_at_infinity(parse_poly(curve))
        assert KInvariant(tuple(payload["k"])) == report.k
        rebuilt = NormalFormDescriptor(tuple(tuple(p) for p in payload["descriptor"]))
        assert rebuilt == report.descriptor
        assert payload["bounded"] == report.bounded
        # zero-count sides are omitted; present sides reconstruct the records
        for entry, rec in zip(payload["points"], report.records):
            assert tuple(entry["point"]) == rec.point.rep
            assert ("plus" in entry) == (rec.plus is not None)
            assert ("minus" in entry) == (rec.minus is not None)
        # the reported normal form has the same invariant
        assert k_at_infinity(parse_poly(payload["normal_form"])).k == report.k


def test_file_reference(tmp_path, capsys):
    target = tmp_path / "curve.txt"
    target.write_text("y^2 - x^3\n", encoding="utf-8")
    code, out, _ = run(capsys, "invariant", "--quiet", f"@{target}")
    assert code == 0 and "k = (1, 1)" in out
    code, _, err = run(capsys, "invariant", f"@{tmp_path}/missing.txt")
    assert code == 1


def test_epsilon_override_marks_uncertified(capsys):
    code, out, _ = run(capsys, "invariant", "--json", "--epsilon", "1/64", "y^2 - x^3")
    assert code == 0
    payload = json.loads(out)
    assert payload["k"] == [1, 1]
    assert all(not entry["certified"] for entry in payload["points"])


def test_emit_samples_csv(tmp_path, capsys):
    target = tmp_path / "samples.csv"
    code, out, _ = run(capsys, "check", "--emit-samples", str(target), "y^2 - x^3")
    assert code == 0
    lines = target.read_text(encoding="utf-8").strip().splitlines()
    assert lines[0] == "radius,angle,x,y"
    assert len(lines) > 10
    radius, angle, px, py = map(float, lines[1].split(","))
    assert abs(px * px + py * py - radius * radius) < 1e-6 * radius * radius


def test_irrational_direction_reported(capsys):
    code, _, err = run(capsys, "invariant", "y^2 - 2*x^2")
    assert code == 1 and "irrational" in err.lower()


def test_check_disagreement_exit_4(capsys, monkeypatch):
    import bsinf.cli as cli_mod
    from bsinf.oracle import OracleReport

    def bogus_oracle(f, cfg=None):
        return OracleReport(directions=(((1.0, 0.0), 7),), stable=True,
                            radii_used=(16.0,), samples=())

    monkeypatch.setattr(cli_mod, "oracle_k", bogus_oracle)
    code, out, _ = run(capsys, "check", "y^2 - x^3")
    assert code == 4 and "DISAGREE" in out
