import io
import json
import os

import pytest

from associahedra.cli import main
from associahedra.config import OUTPUT_DIR_ENV, RunConfig, load_config


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out=out)
    return code, out.getvalue()


def test_fvector():
    assert run("fvector", "--k", "4") == (0, "1 5 5\n")
    assert run("fvector", "--k", "3") == (0, "1 2\n")
    assert run("fvector", "--k", "6", "--facets-only") == (0, "14\n")
    assert run("fvector", "--partition", "2,1,0") == (0, "1 5 9 6\n")
    assert run("fvector", "--partition", "2,1,0", "--truncated") == (0, "1 9 21 14\n")
    code, text = run("--format", "csv", "fvector", "--k", "5")
    assert text.splitlines() == ["name,codim0,codim1,codim2,codim3", "K5,1,9,21,14"]


def test_truncate():
    code, text = run("truncate", "--partition", "2,1,0")
    assert code == 0 and "isomorphic to K_5: yes" in text
    code, text = run("truncate", "--partition", "1,1,1")
    assert code == 0 and "isomorphic to K_5: yes" in text
    code, text = run("truncate", "--partition", "4,0,0", "--census")
    assert code == 0 and "isomorphic to K_6: yes" in text and "(14 facets)" in text
    assert "7 facets with f-vector 1 7 15 10" in text
    code, text = run("truncate", "--interval", "3")
    assert code == 0 and "isomorphic to K_5: yes" in text


def test_truncate_all_parallel_matches_serial():
    serial = run("--format", "json", "truncate", "--all", "6")
    parallel = run("--format", "json", "--threads", "2", "truncate", "--all", "6")
    assert serial == parallel
    assert [r["value"] for r in json.loads(serial[1])] == ["4,0,0", "3,1,0", "2,2,0", "2,1,1"]


def test_tile():
    code, text = run("tile", "--space", "pv", "--n", "2")
    assert code == 0 and "12 tiles, chi=-3, non-orientable" in text
    code, text = run("tile", "--space", "moduli", "--n", "3")
    assert code == 0 and "60 tiles" in text
    code, text = run("tile", "--space", "moduli", "--n", "2", "--building-set", "maximal")
    assert "6 hexagons, 6 octagons" in text and "chi=-9" in text
    assert run("tile", "--space", "pv", "--n", "3", "--building-set", "maximal")[0] == 2


def test_verify_kapranov_exit_codes():
    code, text = run("verify-kapranov", "--n", "2")
    assert code == 0 and "isomorphic" in text
    code, text = run("verify-kapranov", "--n", "2", "--building-set", "maximal")
    assert code == 1 and "NOT isomorphic" in text


def test_usage_errors():
    assert run("fvector", "--k", "40")[0] == 2
    assert run("fvector")[0] == 2
    assert run("truncate", "--partition", "a,b")[0] == 2
    assert run("nonsense")[0] == 2
    assert run("--format", "xml", "fvector", "--k", "4")[0] == 2
    assert run("verify-kapranov", "--n", "6")[0] == 2


def test_chambers_csv_is_deterministic():
    a = run("--seed", "3", "chambers", "--n", "4", "--samples", "20")
    b = run("chambers", "--n", "4", "--samples", "20", "--seed", "3")
    assert a == b and a[0] == 0
    assert a[1].splitlines()[0] == "input,image,chamber,matches"
    assert len(a[1].splitlines()) == 21
    code, text = run("chambers", "--n", "4", "--samples", "2000", "--projective-count")
    assert text == "12\n"


def test_product_types():
    code, text = run("product-types", "--n", "5")
    assert code == 0 and "3 simplex-product types" in text and "discrepancy" in text
    code, text = run("--format", "json", "product-types", "--n", "6")
    data = json.loads(text)
    # the printed formula agrees at n = 6 and fails at n = 5 and 7
    assert data["enumerated"] == 4 and data["formula_as_printed"] == 4 and not data["discrepancy"]


def test_export_uses_env_dir(tmp_path, monkeypatch):
    monkeypatch.setenv(OUTPUT_DIR_ENV, str(tmp_path))
    code, text = run("--format", "dot", "export", "--k", "4")
    assert code == 0 and text.strip() == str(tmp_path / "K4.dot")
    code, text = run("--format", "json", "export", "--space", "moduli", "--n", "2")
    data = json.loads((tmp_path / "moduli2_minimal.json").read_text())
    assert set(data) == {"dim", "cells", "incidence"}
    first = (tmp_path / "moduli2_minimal.json").read_bytes()
    run("--format", "json", "export", "--space", "moduli", "--n", "2")
    assert (tmp_path / "moduli2_minimal.json").read_bytes() == first


def test_report_writes_tables_and_figures(tmp_path):
    code, text = run("--output-dir", str(tmp_path), "--max-n", "2", "--max-k", "6", "report")
    assert code == 0
    for name in ("fvectors.csv", "constructions.csv", "complexes.csv", "kapranov.csv",
                 "fvectors.png", "K4_hasse.png", "tile_census.png"):
        assert (tmp_path / name).stat().st_size > 0
    assert "# complexes.csv" in text
    assert "M_0^5(R),2,maximal,12,21 42 12,-9,1" in text
    assert (tmp_path / "fvectors.png").read_bytes()[:4] == b"\x89PNG"


def test_config_file(tmp_path):
    cfg = tmp_path / "run.ini"
    cfg.write_text("[run]\nmax_n = 2\nformat = csv\nseed = 5\n")
    c = load_config(str(cfg))
    assert (c.max_n, c.format, c.seed) == (2, "csv", 5)
    assert c.override(format="json", seed=None).format == "json"
    code, _ = run("--config", str(cfg), "tile", "--space", "pv", "--n", "3")
    assert code == 2  # n beyond max_n from the file
    code, text = run("--config", str(cfg), "fvector", "--k", "4")
    assert text.splitlines()[1] == "K4,1,5,5"
    bad = tmp_path / "bad.ini"
    bad.write_text("[run]\ncolour = red\n")
    with pytest.raises(ValueError):
        load_config(str(bad))
    with pytest.raises(ValueError):
        RunConfig(threads=0)


def test_out_dir_default(monkeypatch):
    monkeypatch.delenv(OUTPUT_DIR_ENV, raising=False)
    assert RunConfig().out_dir == "."
    monkeypatch.setenv(OUTPUT_DIR_ENV, "/tmp/x")
    assert RunConfig().out_dir == "/tmp/x"
    assert RunConfig(output_dir="here").out_dir == "here"
