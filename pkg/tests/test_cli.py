import json

import pytest

from hallcrest.cli import main
from hallcrest.gfarith import QPolynomial


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    payload = json.loads(captured.out) if captured.out else None
    return code, payload, captured.err


def test_catalog_a2(capsys):
    code, payload, err = run(
        capsys, "catalog", "--quiver", "a2", "--dim-bound", "2,2", "--primes", "2,3,5"
    )
    assert code == 0
    assert [c["label"] for c in payload["classes"]] == ["M11", "S1", "S2"]
    assert payload["primes"] == [2, 3, 5]
    rep = payload["classes"][0]["reps"]["2"]
    assert rep["a"] == [[1]]
    assert "3 indecomposable classes" in err


def test_catalog_zero_bound(capsys):
    code, payload, _ = run(capsys, "catalog", "--quiver", "a2", "--dim-bound", "0,0")
    assert code == 0
    assert payload["classes"] == []


def test_catalog_collision_input(tmp_path, capsys):
    qv = tmp_path / "kron.qv"
    qv.write_text("vertex 1\nvertex 2\narrow a: 1 -> 2\narrow b: 1 -> 2\n")
    code, payload, err = run(capsys, "catalog", "--quiver", str(qv), "--dim-bound", "1,1")
    assert code == 2
    assert payload is None
    assert "error:" in err


def test_product_basic(capsys):
    code, payload, _ = run(capsys, "product", "--quiver", "a2", "--dim-bound", "2,2", "S2", "S1")
    assert code == 0
    assert payload["product"] == {"M11": 1, "S1+S2": 1}
    # chi provenance carries a polynomial and samples for every candidate class
    assert set(payload["chi"]) == {"M11", "S1+S2"}
    assert all("samples" in v and "polynomial" in v for v in payload["chi"].values())


def test_product_with_unit_and_loop(capsys):
    code, payload, _ = run(capsys, "product", "--quiver", "a2", "--dim-bound", "2,2", "0", "M11")
    assert code == 0
    assert payload["product"] == {"M11": 1}
    code, payload, _ = run(capsys, "product", "--quiver", "loop2", "--dim-bound", "3", "S1", "S1")
    assert code == 0
    assert payload["product"] == {"2*S1": 2, "M2": 1}


def test_product_unknown_label(capsys):
    code, payload, err = run(capsys, "product", "--quiver", "a2", "--dim-bound", "2,2", "S9", "S1")
    assert code == 2
    assert payload is None


def test_verify_assoc_small(capsys):
    code, payload, _ = run(
        capsys, "verify", "--quiver", "a2", "--dim-bound", "1,1", "--suite", "assoc"
    )
    assert code == 0
    assert payload["passed"] is True
    assert payload["reports"][0]["suite"] == "associativity"


def test_verify_jacobi_filter(capsys):
    code, payload, _ = run(
        capsys, "verify", "--quiver", "a2", "--dim-bound", "2,2", "--suite", "jacobi"
    )
    assert code == 0
    names = [c["name"] for c in payload["reports"][0]["checks"]]
    assert names and all(n.startswith("jacobi") for n in names)


def test_verify_green_classical_refusal(capsys):
    code, payload, err = run(
        capsys, "verify", "--quiver", "loop2", "--dim-bound", "2", "--suite", "green-classical"
    )
    assert code == 2
    assert "relation-free" in err


def test_verify_all_skips_classical_on_relations(capsys):
    code, payload, _ = run(
        capsys, "verify", "--quiver", "loop2", "--dim-bound", "2", "--suite", "all"
    )
    assert code == 0
    assert payload["passed"] is True
    skipped = [r for r in payload["reports"] if r.get("skipped")]
    assert skipped == [
        {"suite": "green-classical", "skipped": True, "reason": "presentation has relations"}
    ]


def test_verify_green_degen_loop(capsys):
    code, payload, _ = run(
        capsys, "verify", "--quiver", "loop2", "--dim-bound", "2", "--suite", "green-degen"
    )
    assert code == 0
    assert payload["reports"][0]["total"] > 0


def test_hallpoly_filt(capsys):
    code, payload, err = run(
        capsys, "hallpoly", "--quiver", "a2", "--dim-bound", "2,2", "filt", "S1", "S1", "2*S1"
    )
    assert code == 0
    chi = payload["chi"]
    assert chi["value"] == 2
    assert chi["polynomial"] == str(QPolynomial([1, 1]))
    assert chi["stable"] is True
    assert "2 via" in err


def test_hallpoly_ext(capsys):
    code, payload, _ = run(
        capsys, "hallpoly", "--quiver", "a2", "--dim-bound", "2,2", "ext", "S1", "S2", "M11"
    )
    assert code == 0
    assert payload["chi"]["value"] == 0
    assert payload["chi"]["polynomial"] == str(QPolynomial([-1, 1]))


def test_hallpoly_unstable_ladder(capsys):
    args = ["hallpoly", "--quiver", "a2", "--dim-bound", "2,2", "--primes", "2,3",
            "filt", "S1", "S1", "2*S1"]
    code, payload, err = run(capsys, *args)
    assert code == 3
    assert payload["chi"]["stable"] is False
    assert payload["chi"]["value"] is None
    code, payload, err = run(capsys, *(args + ["--strict"]))
    assert code == 3
    assert payload is None
    assert "refused:" in err


def test_out_file_and_determinism(tmp_path, capsys):
    out1 = tmp_path / "r1.json"
    out2 = tmp_path / "r2.json"
    for out in (out1, out2):
        code = main(
            ["verify", "--quiver", "a2", "--dim-bound", "1,1", "--suite", "lie",
             "--out", str(out)]
        )
        assert code == 0
        capsys.readouterr()
    assert out1.read_bytes() == out2.read_bytes()
    assert json.loads(out1.read_text())["passed"] is True


def test_bad_inputs(capsys):
    code, _, err = run(capsys, "catalog", "--quiver", "nosuch", "--dim-bound", "2,2")
    assert code == 2 and "bundled names" in err
    code, _, _ = run(capsys, "catalog", "--quiver", "a2", "--dim-bound", "2")
    assert code == 2
    code, _, _ = run(capsys, "catalog", "--quiver", "a2", "--dim-bound=-1,2")
    assert code == 2
    code, _, _ = run(capsys, "catalog", "--quiver", "a2", "--dim-bound", "2,2", "--primes", "4,5")
    assert code == 2
    code, _, _ = run(capsys, "catalog", "--quiver", "a2", "--dim-bound", "2,2", "--primes", "2,2")
    assert code == 2
    code, _, _ = run(
        capsys, "hallpoly", "--quiver", "a2", "--dim-bound", "2,2", "ext", "S1", "M11"
    )
    assert code == 2


def test_ext_vanishing_suite(capsys):
    code, payload, _ = run(
        capsys, "verify", "--quiver", "a2", "--dim-bound", "1,1", "--suite", "ext-vanishing"
    )
    assert code == 0
    assert payload["reports"][0]["passed"] is True
