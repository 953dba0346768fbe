import csv
import io
import json

from torusdom.certificates import Certificate, ResultCache, load_certificate
from torusdom.cli import main
from torusdom.solve import solve_oracle
from torusdom.validate import DominationKind

TOTAL = DominationKind.TOTAL
PAIRED = DominationKind.PAIRED


def test_value_closed_form(capsys):
    assert main(["value", "--n", "10", "--m", "3", "--kind", "paired"]) == 0
    out = capsys.readouterr().out
    assert "gamma_p(10,3) = 8" in out
    assert "lower 8 (degree bound)" in out
    assert "upper 8 (upper:closed-form)" in out


def test_value_bound_interval(capsys):
    assert main(["value", "--n", "6", "--m", "6", "--kind", "paired"]) == 0
    out = capsys.readouterr().out
    assert "gamma_p(6,6) in [9, 10]" in out
    assert "upper:wrap-braided" in out


def test_value_rejects_thin_grid(capsys):
    assert main(["value", "--n", "2", "--m", "3"]) == 2
    assert "error:" in capsys.readouterr().err


def test_usage_errors_exit_two(capsys):
    assert main(["value", "--n", "3"]) == 2
    assert main(["value", "--n", "3", "--m", "4", "--kind", "quad"]) == 2
    assert main([]) == 2
    assert main(["table", "--n", "3..x", "--m", "3"]) == 2
    capsys.readouterr()


def test_construct_to_stdout(capsys):
    assert main(["construct", "--n", "8", "--m", "4", "--kind", "paired"]) == 0
    cert = Certificate.from_json(capsys.readouterr().out)
    assert (cert.n, cert.m, cert.kind, cert.cardinality) == (8, 4, PAIRED, 8)
    cert.check()


def test_construct_to_file(tmp_path, capsys):
    path = tmp_path / "pattern.json"
    rc = main(
        ["construct", "--n", "5", "--m", "5", "--kind", "total", "--out", str(path)]
    )
    assert rc == 0
    assert "wrote" in capsys.readouterr().out
    cert = load_certificate(path)
    assert cert.cardinality == 9
    assert cert.provenance == "corner-extended-total"
    cert.check()


def test_construct_plain_is_unsupported(capsys):
    assert main(["construct", "--n", "6", "--m", "6", "--kind", "plain"]) == 1
    assert "no pattern catalog" in capsys.readouterr().err


def test_construct_falls_back_when_pattern_family_fails(capsys):
    # The corner pattern for 5x5 never validates as paired; the catalog
    # must hand back some other valid witness instead of erroring.
    assert main(["construct", "--n", "5", "--m", "5", "--kind", "paired"]) == 0
    cert = Certificate.from_json(capsys.readouterr().out)
    assert cert.provenance == "projection-cascade"
    assert cert.cardinality == 14
    cert.check()


def test_verify_accepts_good_certificate(tmp_path, capsys):
    path = tmp_path / "cert.json"
    main(["construct", "--n", "9", "--m", "3", "--kind", "paired", "--out", str(path)])
    capsys.readouterr()
    assert main(["verify", str(path)]) == 0
    out = capsys.readouterr().out
    assert "claimed paired: VERIFIED" in out
    assert "paired: yes" in out
    assert "column profile: alpha = (3, 4, 2, 0)" in out


def test_verify_detects_tampered_cardinality(tmp_path, capsys):
    path = tmp_path / "cert.json"
    main(["construct", "--n", "8", "--m", "4", "--kind", "paired", "--out", str(path)])
    capsys.readouterr()
    text = path.read_text()
    path.write_text(text.replace('"cardinality": 8', '"cardinality": 7'))
    assert main(["verify", str(path)]) == 1
    assert "structural failure" in capsys.readouterr().err


def test_verify_rejects_noncanonical_file(tmp_path, capsys):
    path = tmp_path / "cert.json"
    main(["construct", "--n", "8", "--m", "4", "--kind", "paired", "--out", str(path)])
    capsys.readouterr()
    doc = json.loads(path.read_text())
    path.write_text(json.dumps(doc, indent=4) + "\n")
    assert main(["verify", str(path)]) == 1
    assert "canonical" in capsys.readouterr().err


def test_verify_missing_file(capsys):
    assert main(["verify", "/nonexistent/cert.json"]) == 1
    assert "cannot read" in capsys.readouterr().err


def test_verify_fails_invalid_claim(tmp_path, capsys):
    cert = Certificate(4, 4, TOTAL, 2, ((1, 1), (1, 2)), "handmade")
    path = tmp_path / "bad.json"
    cert.save(path)
    assert main(["verify", str(path)]) == 1
    out = capsys.readouterr().out
    assert "total: no" in out
    assert "claimed total: FAILED" in out


def test_verify_kind_override(tmp_path, capsys):
    # 8 rows of width 3 need 7 vertices: odd, so never paired.
    path = tmp_path / "cert.json"
    main(["construct", "--n", "8", "--m", "3", "--kind", "total", "--out", str(path)])
    capsys.readouterr()
    assert main(["verify", str(path)]) == 0
    capsys.readouterr()
    assert main(["verify", str(path), "--kind", "paired"]) == 1
    out = capsys.readouterr().out
    assert "claimed paired: FAILED" in out
    assert main(["verify", str(path), "--kind", "plain"]) == 0


def test_solve_writes_certificate_and_cache(tmp_path, capsys):
    cert_path = tmp_path / "cert.json"
    rc = main(
        [
            "solve", "--n", "6", "--m", "4", "--kind", "total",
            "--out", str(cert_path), "--cache-dir", str(tmp_path / "cache"),
        ]
    )
    assert rc == 0
    out = capsys.readouterr().out
    assert "gamma_t(6,4) = 8" in out
    assert "method profile-dp" in out
    assert "certificate digest" in out
    cert = load_certificate(cert_path)
    cert.check()
    assert cert.cardinality == 8
    cached = ResultCache(tmp_path / "cache").get(6, 4, TOTAL, "auto")
    assert cached == (8, cert.digest())


def test_solve_sandwich_route(capsys, tmp_path):
    rc = main(
        ["solve", "--n", "5", "--m", "4", "--kind", "paired",
         "--cache-dir", str(tmp_path)]
    )
    assert rc == 0
    out = capsys.readouterr().out
    assert "gamma_p(5,4) = 6" in out
    assert "method sandwich" in out


def test_solve_oracle_cap_exits_three(capsys, tmp_path):
    rc = main(
        ["solve", "--n", "9", "--m", "9", "--kind", "total",
         "--method", "oracle", "--cache-dir", str(tmp_path)]
    )
    assert rc == 3
    assert "oracle cap" in capsys.readouterr().err


def test_solve_detects_cache_mismatch(tmp_path, capsys):
    cache = ResultCache(tmp_path)
    cache.put(6, 4, TOTAL, "auto", 7, "0" * 64)
    rc = main(
        ["solve", "--n", "6", "--m", "4", "--kind", "total",
         "--cache-dir", str(tmp_path)]
    )
    assert rc == 1
    assert "cache mismatch" in capsys.readouterr().err
    # Stored value untouched on mismatch.
    assert cache.get(6, 4, TOTAL, "auto") == (7, "0" * 64)


def test_solve_reuses_coherent_cache(tmp_path, capsys):
    args = ["solve", "--n", "9", "--m", "3", "--kind", "paired",
            "--cache-dir", str(tmp_path)]
    assert main(args) == 0
    assert main(args) == 0
    out = capsys.readouterr().out
    assert out.count("gamma_p(9,3) = 8") == 2


def test_solve_canonical_small_grid_is_oracle_exact(tmp_path, capsys):
    cert_path = tmp_path / "canon.json"
    rc = main(
        ["solve", "--n", "3", "--m", "4", "--kind", "total", "--canonical",
         "--out", str(cert_path), "--cache-dir", str(tmp_path / "c")]
    )
    assert rc == 0
    capsys.readouterr()
    expected = Certificate.from_vertex_set(
        solve_oracle(3, 4, TOTAL).certificate, TOTAL, "solver:oracle"
    )
    assert cert_path.read_text() == expected.to_json()


def test_solve_canonical_large_grid_starts_at_origin(tmp_path, capsys):
    cert_path = tmp_path / "canon.json"
    rc = main(
        ["solve", "--n", "7", "--m", "4", "--kind", "paired", "--canonical",
         "--out", str(cert_path), "--cache-dir", str(tmp_path / "c")]
    )
    assert rc == 0
    capsys.readouterr()
    cert = load_certificate(cert_path)
    cert.check()
    assert cert.vertices[0] == (1, 1)


def test_table_csv_stdout(capsys):
    rc = main(["table", "--n", "3..8", "--m", "3", "--kind", "paired"])
    assert rc == 0
    rows = list(csv.DictReader(io.StringIO(capsys.readouterr().out)))
    assert len(rows) == 6
    assert all(row["agreement"] == "True" for row in rows)
    assert [row["exact"] for row in rows] == ["4", "4", "4", "6", "6", "8"]
    assert rows[0]["kind"] == "paired"


def test_table_json_file(tmp_path, capsys):
    path = tmp_path / "sweep.json"
    rc = main(
        ["table", "--n", "4..6", "--m", "4..5", "--kind", "total",
         "--format", "json", "--out", str(path)]
    )
    assert rc == 0
    assert "wrote" in capsys.readouterr().out
    rows = json.loads(path.read_text())
    assert len(rows) == 6
    assert all(row["agreement"] for row in rows)
    by_instance = {(row["n"], row["m"]): row for row in rows}
    assert by_instance[(6, 4)]["exact"] == 8
    assert by_instance[(5, 5)]["exact"] == 8


def test_audit_passes_on_closed_form_instance(tmp_path, capsys):
    rc = main(["audit", "--n", "8", "--m", "4", "--cache-dir", str(tmp_path)])
    assert rc == 0
    out = capsys.readouterr().out
    assert "audit passed" in out
    assert "chain:plain<=total" in out
    assert "chain:total<=paired" in out


def test_audit_passes_off_formula_instance(tmp_path, capsys):
    rc = main(["audit", "--n", "5", "--m", "5", "--cache-dir", str(tmp_path)])
    assert rc == 0
    assert "audit passed" in capsys.readouterr().out


def test_audit_flags_poisoned_cache(tmp_path, capsys):
    ResultCache(tmp_path).put(8, 4, TOTAL, "auto", 9, "0" * 64)
    rc = main(["audit", "--n", "8", "--m", "4", "--cache-dir", str(tmp_path)])
    assert rc == 1
    out = capsys.readouterr().out
    assert "cache holds 9" in out
    assert "audit FAILED" in out
