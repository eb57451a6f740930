"""End-to-end tests of the command-line interface via subprocess: exit
codes, JSON schemas, table formats, and deterministic output."""

import json
import os
import subprocess
import sys

import pytest

RUNNER = [sys.executable, "-c",
          "from ternfield.cli import main; raise SystemExit(main())"]


def run_cli(*args, env_extra=None):
    env = dict(os.environ)
    if env_extra:
        env.update(env_extra)
    return subprocess.run(RUNNER + list(args), capture_output=True,
                          text=True, env=env, timeout=300)


def run_json(*args, expect_code=0, env_extra=None):
    proc = run_cli(*args, "--format", "json", env_extra=env_extra)
    assert proc.returncode == expect_code, proc.stderr
    return json.loads(proc.stdout)


# ---------------------------------------------------------------------------
# banner, exit codes, determinism
# ---------------------------------------------------------------------------

def test_version_banner_goes_to_stderr_only():
    proc = run_cli("field", "build", "--spec", "F0(2)", "--format", "json")
    assert proc.returncode == 0
    assert proc.stderr.splitlines()[0] == "ternfield 0.1.0"
    assert "ternfield 0.1.0" not in proc.stdout


def test_stdout_is_byte_identical_across_runs():
    a = run_cli("field", "table", "--spec", "F0(4)", "--format", "json")
    b = run_cli("field", "table", "--spec", "F0(4)", "--format", "json")
    assert a.returncode == b.returncode == 0
    assert a.stdout == b.stdout


def test_bad_spec_is_a_usage_error():
    proc = run_cli("field", "build", "--spec", "nonsense(3)")
    assert proc.returncode == 2
    assert "error:" in proc.stderr
    assert "cannot parse field spec" in proc.stderr


def test_unknown_verb_is_a_usage_error():
    proc = run_cli("frobnicate")
    assert proc.returncode == 2


def test_csv_is_rejected_for_non_table_commands():
    proc = run_cli("field", "build", "--spec", "F0(2)", "--format", "csv")
    assert proc.returncode == 2
    assert "csv output is only available for table commands" in proc.stderr


# ---------------------------------------------------------------------------
# field verbs
# ---------------------------------------------------------------------------

def test_field_build_reports_size_and_characteristic():
    doc = run_json("field", "build", "--spec", "F0(3)")
    assert doc["schema"] == 1
    assert doc["size"] == 4
    assert doc["one"] == "1"
    assert doc["characteristic"] == 1
    assert doc["validated"] == "exhaustive"

    doc = run_json("field", "build", "--spec", "odd(8)")
    assert doc["size"] == 4
    assert doc["characteristic"] == 4


def test_field_build_product_spec():
    doc = run_json("field", "build", "--spec", "F0(2)xF0(2)")
    assert doc["size"] == 4
    doc = run_json("field", "build", "--spec", "F0(2,2)")
    assert doc["size"] == 8


GOLDEN_MULT_CSV = """\
*,1,a,b,c
1,1,a,b,c
a,a,b,c,1
b,b,c,1,a
c,c,1,a,b"""


def test_field_table_letter_csv_is_golden():
    proc = run_cli("field", "table", "--spec", "F0(3)", "--labels", "paper",
                   "--format", "csv")
    assert proc.returncode == 0
    assert proc.stdout.strip() == GOLDEN_MULT_CSV


def test_field_table_json_carries_letter_map():
    doc = run_json("field", "table", "--spec", "F0(3)", "--labels", "paper")
    assert doc["elements"] == ["1", "a", "b", "c"]
    assert doc["letter_map"] == {"1": "1", "x": "a", "x^2": "b",
                                 "x^2+x+1": "c"}
    assert doc["table"][doc["identity"]] == [0, 1, 2, 3]


def test_field_aut_reports_dihedral_fingerprint():
    doc = run_json("field", "aut", "--spec", "F0(5)", "--labels", "paper")
    assert doc["fingerprint"]["order"] == 8
    assert doc["fingerprint"]["iso_class"] == "D4 (the dihedral group of order 8)"
    assert doc["elements"] == ["a", "c", "e", "g", "p", "r", "t", "v"]


def test_field_aut_markdown_table():
    proc = run_cli("field", "aut", "--spec", "F0(3)", "--labels", "paper")
    assert proc.returncode == 0
    lines = proc.stdout.splitlines()
    assert lines[0] == "| o | a | c |"
    assert lines[2] == "| **a** | a | c |"
    assert lines[3] == "| **c** | c | a |"


def test_field_check_passes_on_valid_field():
    doc = run_json("field", "check", "--spec", "odd(8)")
    assert doc["passed"] is True
    assert doc["additive_axioms"] is True
    assert doc["distributivity"] is True
    assert doc["unit"] == "1"
    assert doc["zero_element"] is None


def test_field_check_gate_and_overrides():
    # carrier of 64 exceeds the default exhaustive-check gate
    proc = run_cli("field", "check", "--spec", "odd(128)", "--format", "json")
    assert proc.returncode == 2
    assert "TERNARY_MAX_CARRIER" in proc.stderr or "limit" in proc.stderr

    doc = run_json("field", "check", "--spec", "odd(128)", "--limit", "64")
    assert doc["passed"] is True

    doc = run_json("field", "check", "--spec", "odd(128)",
                   env_extra={"TERNARY_MAX_CARRIER": "64"})
    assert doc["passed"] is True

    proc = run_cli("field", "check", "--spec", "odd(32)", "--format", "json",
                   env_extra={"TERNARY_MAX_CARRIER": "8"})
    assert proc.returncode == 2


# ---------------------------------------------------------------------------
# envelope
# ---------------------------------------------------------------------------

def test_envelope_locality_report():
    doc = run_json("envelope", "--spec", "odd(4)")
    assert doc["field_size"] == 2
    assert doc["envelope_size"] == 4
    assert doc["zero"] == "q(3)"
    assert doc["is_local_with_z2_residue"] is True
    assert doc["maximal_is_pair_part"] is True
    assert doc["residue_sizes"] == [2]
    assert doc["maximal_ideals"] == [["q(1)", "q(3)"]]


def test_envelope_markdown_lists_keys():
    proc = run_cli("envelope", "--spec", "F0(2)")
    assert proc.returncode == 0
    assert "is_local_with_z2_residue: true" in proc.stdout
    assert "schema" not in proc.stdout


# ---------------------------------------------------------------------------
# poly
# ---------------------------------------------------------------------------

def test_poly_ce_accepts_the_surviving_exponents():
    doc = run_json("poly", "ce", "x^4 - 1")
    assert doc["completely_even"] is True
    assert doc["coefficients"] == "Z2"


def test_poly_ce_rejects_with_odd_witness():
    proc = run_cli("poly", "ce", "x^3 - 1", "--format", "json")
    assert proc.returncode == 1
    doc = json.loads(proc.stdout)
    assert doc["completely_even"] is False
    assert doc["witness_parity"] == "odd"


def test_poly_ce_integer_domain_differs():
    # 2x^2+3x+1 = (2x+1)(x+1): even only after reducing the coefficients
    doc = run_json("poly", "ce", "2*x^2 + 3*x + 1")
    assert doc["completely_even"] is True
    proc = run_cli("poly", "ce", "2*x^2 + 3*x + 1", "--coeffs", "Z",
                   "--format", "json")
    assert proc.returncode == 1
    doc = json.loads(proc.stdout)
    assert doc["completely_even"] is False
    assert doc["witness"] == "2*x + 1"


def test_poly_ce_rejects_unknown_domain():
    proc = run_cli("poly", "ce", "x^2 - 1", "--coeffs", "Q")
    assert proc.returncode == 2


def test_poly_norm2_values():
    doc = run_json("poly", "norm2", "x + 1/3")
    assert doc["parity"] == "even"
    assert doc["norm2"] == "1"

    doc = run_json("poly", "norm2", "1/2*x + 3")
    assert doc["parity"] == "undefined"
    assert doc["norm2"] == "2^1"

    doc = run_json("poly", "norm2", "4*x^2 + 8")
    assert doc["norm2"] == "2^-2"


# ---------------------------------------------------------------------------
# dyadic
# ---------------------------------------------------------------------------

def test_dyadic_val2():
    doc = run_json("dyadic", "val2", "12")
    assert doc["val2"] == 2
    assert doc["abs2"] == "2^-2"

    doc = run_json("dyadic", "val2", "0")
    assert doc["val2"] == "inf"

    proc = run_cli("dyadic", "val2", "1/6")
    assert proc.returncode == 2  # even denominator: outside the domain


def test_dyadic_reduce():
    doc = run_json("dyadic", "reduce", "1/3", "--precision", "4")
    assert doc["residue"] == 11
    assert doc["modulus"] == 16
    # 3 * 11 = 33 = 1 mod 16


# ---------------------------------------------------------------------------
# vec
# ---------------------------------------------------------------------------

def test_vec_free():
    doc = run_json("vec", "free", "2", "--spec", "odd(4)")
    assert doc["size"] == 8
    assert doc["basis"] == ["(1,q(3))", "(q(3),1)"]


def test_vec_resolve():
    doc = run_json("vec", "resolve", "1,1", "3,1", "--spec", "odd(4)")
    assert doc["space_size"] == 4
    assert doc["free_size"] == 8
    assert doc["kernel_size"] == 2
    assert doc["formula_size"] == 4
    assert doc["formula_holds"] is True


def test_vec_resolve_rejects_ragged_generators():
    proc = run_cli("vec", "resolve", "1,1", "3", "--spec", "odd(4)")
    assert proc.returncode == 2
    assert "same width" in proc.stderr


# ---------------------------------------------------------------------------
# struct
# ---------------------------------------------------------------------------

def test_struct_toeplitz():
    doc = run_json("struct", "toeplitz", "3", "--spec", "F0(1)")
    assert doc["size"] == 4
    assert doc["commutative"] is True
    assert doc["constructed_isomorphism"] is True
    assert doc["isomorphic_to_size"] == 4


def test_struct_triangular():
    doc = run_json("struct", "triangular", "2", "--spec", "odd(4)")
    assert doc["size"] == 16
    assert doc["commutative"] is False
    assert len(doc["noncommutative_witness"]) == 2


def test_struct_quaternion():
    doc = run_json("struct", "quaternion", "--spec", "odd(4)")
    assert doc["size"] == 128
    assert doc["commutative"] is False
    assert doc["inverses_verified"] == 128


def test_struct_groupalg_pass_and_fail():
    doc = run_json("struct", "groupalg", "4", "--spec", "F0(1)")
    assert doc["is_3field"] is True
    assert doc["constructed_isomorphism"] is True
    assert doc["isomorphic_to_size"] == 8

    proc = run_cli("struct", "groupalg", "3", "--spec", "F0(1)",
                   "--format", "json")
    assert proc.returncode == 1
    doc = json.loads(proc.stdout)
    assert doc["is_3field"] is False
    assert doc["witness"] == "(1,1,1)"


# ---------------------------------------------------------------------------
# verification suite
# ---------------------------------------------------------------------------

def test_suite_json_ledger():
    proc = run_cli("paper-suite")
    assert proc.returncode == 0
    ledger = json.loads(proc.stdout)
    assert ledger["schema"] == 1
    assert ledger["all_passed"] is True
    assert len(ledger["criteria"]) == 11
    for entry in ledger["criteria"]:
        assert entry["passed"] is True
    # the three budgeted criteria report their timing verdicts
    budgeted = {e["criterion"]: e for e in ledger["criteria"]
                if e.get("budget_seconds") is not None}
    assert sorted(budgeted) == [1, 5, 11]
    assert all(e["within_budget"] for e in budgeted.values())
    # timing lines go to stderr, keeping stdout deterministic
    assert "criterion" in proc.stderr.lower() or proc.stderr


def test_suite_markdown():
    proc = run_cli("paper-suite", "--format", "markdown")
    assert proc.returncode == 0
    assert proc.stdout.startswith("| criterion | title | passed |")
    assert "all passed: true" in proc.stdout
