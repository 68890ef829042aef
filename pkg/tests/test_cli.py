import io
import json
import subprocess
import sys
from fractions import Fraction

import pytest

from heyde_lab.cli import run
from heyde_lab.distributions import make_distribution, uniform
from heyde_lab.groups import make_group, scaling_endomorphism
from heyde_lab.predicates import FormsInstance, canonical_instance
from heyde_lab.serialization import (
    SchemaError,
    distribution_from_json,
    distribution_to_json,
    endomorphism_from_json,
    endomorphism_to_json,
    fraction_from_str,
    group_from_json,
    group_to_json,
    instance_from_json,
    instance_to_json,
)


@pytest.fixture(autouse=True)
def pinned_timestamp(monkeypatch):
    monkeypatch.setenv("HEYDE_LAB_TIMESTAMP", "2026-08-09T00:00:00+00:00")


def write(tmp_path, name, payload):
    path = tmp_path / name
    path.write_text(json.dumps(payload))
    return str(path)


def run_cli(argv):
    buf = io.StringIO()
    code = run(argv, out=buf)
    return code, buf.getvalue()


KERNEL_INSTANCE = {
    "group": {"cyclic_orders": [9]},
    "alpha": {"matrix": [[5]]},
    "mu1": {"probs": {"3": "1/2", "6": "1/2"}},
    "mu2": {"probs": {"3": "1/2", "6": "1/2"}},
}


# ---------------------------------------------------------------------------
# wire formats
# ---------------------------------------------------------------------------


def test_group_round_trip():
    group = make_group([9, 3])
    assert group_from_json(group_to_json(group)) == group
    with pytest.raises(SchemaError):
        group_from_json({"cyclic_orders": []})
    with pytest.raises(SchemaError):
        group_from_json({"orders": [5]})


def test_endomorphism_round_trip():
    group = make_group([9, 3])
    endo = scaling_endomorphism(group, 2)
    assert endomorphism_from_json(group, endomorphism_to_json(endo)) == endo
    with pytest.raises(SchemaError):
        endomorphism_from_json(group, {"matrix": [[0, 1], [0, 0]]})


def test_distribution_round_trip():
    group = make_group([9, 3])
    mu = make_distribution(
        group,
        {
            group.element([0, 2]): Fraction(1, 6),
            group.element([4, 1]): Fraction(5, 6),
        },
    )
    payload = distribution_to_json(mu)
    assert payload == {"probs": {"0,2": "1/6", "4,1": "5/6"}}
    assert distribution_from_json(group, payload) == mu


def test_distribution_schema_errors():
    group = make_group([5])
    with pytest.raises(SchemaError):
        fraction_from_str("1/0")
    with pytest.raises(SchemaError):
        distribution_from_json(group, {"probs": {"0": "2/3", "1": "2/3"}})
    with pytest.raises(SchemaError):
        distribution_from_json(group, {"probs": {"x": "1/1"}})


def test_instance_round_trip_canonical_and_general():
    group = make_group([5])
    canon = canonical_instance(
        group, scaling_endomorphism(group, 2), uniform(group), uniform(group)
    )
    parsed = instance_from_json(instance_to_json(canon))
    assert parsed.is_canonical and parsed.beta2 == canon.beta2

    general = FormsInstance(
        group,
        scaling_endomorphism(group, 2),
        scaling_endomorphism(group, 3),
        scaling_endomorphism(group, 1),
        scaling_endomorphism(group, 4),
        uniform(group),
        uniform(group),
    )
    payload = instance_to_json(general)
    assert set(payload) >= {"alpha1", "alpha2", "beta1", "beta2"}
    parsed = instance_from_json(payload)
    assert not parsed.is_canonical


# ---------------------------------------------------------------------------
# check
# ---------------------------------------------------------------------------


def test_check_kernel_counterexample(tmp_path):
    path = write(tmp_path, "inst.json", KERNEL_INSTANCE)
    code, output = run_cli(["check", path])
    report = json.loads(output)
    assert code == 0
    assert report["symmetric"] and report["eq42"]
    assert report["m_forms_independent"] and report["eq4"]
    assert report["classifications"]["mu1"]["kind"] == "other"
    assert "kernel-counterexample" in report["tags"]
    assert report["kernel"] == [[0], [3], [6]]
    assert all(report["agreement"].values())
    assert report["manifest"]["command"] == "check"


def test_check_degenerate_verdicts(tmp_path):
    symmetric = {
        "group": {"cyclic_orders": [7]},
        "alpha": {"matrix": [[3]]},
        "mu1": {"probs": {"4": "1/1"}},
        "mu2": {"probs": {"1": "1/1"}},
    }
    path = write(tmp_path, "sym.json", symmetric)
    code, output = run_cli(["check", path])
    report = json.loads(output)
    assert code == 0
    assert report["classifications"]["mu1"]["kind"] == "degenerate"

    asymmetric = dict(symmetric, mu1={"probs": {"2": "1/1"}})
    path = write(tmp_path, "asym.json", asymmetric)
    code, output = run_cli(["check", path])
    report = json.loads(output)
    assert code == 1
    assert not report["symmetric"]
    assert report["witness"] is not None


def test_check_schema_failures_emit_no_report(tmp_path):
    bad = dict(KERNEL_INSTANCE, mu1={"probs": {"3": "1/0"}})
    path = write(tmp_path, "bad.json", bad)
    code, output = run_cli(["check", path])
    assert code == 2
    assert output == ""

    path = write(tmp_path, "bad2.json", {"group": {"cyclic_orders": [9]}})
    code, output = run_cli(["check", path])
    assert code == 2 and output == ""

    notjson = tmp_path / "notjson.json"
    notjson.write_text("{")
    code, output = run_cli(["check", str(notjson)])
    assert code == 2 and output == ""


def test_check_general_instance_canonicalizes(tmp_path):
    payload = {
        "group": {"cyclic_orders": [5]},
        "alpha1": {"matrix": [[2]]},
        "alpha2": {"matrix": [[3]]},
        "beta1": {"matrix": [[1]]},
        "beta2": {"matrix": [[4]]},
        "mu1": {"probs": {"0": "1/2", "1": "1/2"}},
        "mu2": {"probs": {"0": "1/3", "2": "2/3"}},
    }
    path = write(tmp_path, "general.json", payload)
    code, output = run_cli(["check", path])
    report = json.loads(output)
    assert report["canonicalized"]
    assert report["alpha_prime"] == {"matrix": [[1]]}
    assert code in (0, 1)


def test_check_deterministic_output(tmp_path):
    path = write(tmp_path, "inst.json", KERNEL_INSTANCE)
    _code1, out1 = run_cli(["check", path])
    _code2, out2 = run_cli(["check", path])
    assert out1 == out2


def test_check_disagreement_exits_3(tmp_path, monkeypatch):
    """A forced mismatch between the exact predicate and the tolerance
    check must exit 3 while still emitting the report."""
    import heyde_lab.cli as cli_module

    monkeypatch.setattr(
        cli_module, "heyde_equation_check", lambda inst, tol: False
    )
    path = write(tmp_path, "inst.json", KERNEL_INSTANCE)
    code, output = run_cli(["check", path])
    assert code == 3
    report = json.loads(output)
    assert report["symmetric"] and not report["eq42"]
    assert not report["agreement"]["symmetric_vs_eq42"]


# ---------------------------------------------------------------------------
# search
# ---------------------------------------------------------------------------


def test_search_json_lines_and_summary(tmp_path):
    group = write(tmp_path, "g.json", {"cyclic_orders": [5]})
    alpha = write(tmp_path, "a.json", {"matrix": [[2]]})
    code, output = run_cli(
        ["search", group, alpha, "--trials", "300", "--seed", "9"]
    )
    assert code == 0
    lines = output.strip().split("\n")
    *hit_lines, summary_line = lines
    summary = json.loads(summary_line)
    assert summary["summary"]["counts"]["other"] == 0
    assert summary["summary"]["counts"]["symmetric"] == len(hit_lines)
    for line in hit_lines:
        hit = json.loads(line)
        assert hit["symmetric"] is True
        assert hit["manifest"]["config"]["seed"] == 9


def test_search_byte_identical_given_manifest(tmp_path):
    group = write(tmp_path, "g.json", {"cyclic_orders": [7]})
    alpha = write(tmp_path, "a.json", {"matrix": [[3]]})
    argv = ["search", group, alpha, "--trials", "200", "--seed", "4"]
    _code, out1 = run_cli(argv)
    _code, out2 = run_cli(argv)
    assert out1 == out2


def test_search_schema_error(tmp_path):
    group = write(tmp_path, "g.json", {"cyclic_orders": [5]})
    alpha = write(tmp_path, "a.json", {"matrix": [[1, 0], [0, 1]]})
    code, output = run_cli(["search", group, alpha])
    assert code == 2 and output == ""


def test_search_overflow_is_usage_error(tmp_path):
    group = write(tmp_path, "g.json", {"cyclic_orders": [27]})
    alpha = write(tmp_path, "a.json", {"matrix": [[4]]})
    code, _output = run_cli(["search", group, alpha, "--support-cap", "3"])
    assert code == 2


def test_search_out_file(tmp_path):
    group = write(tmp_path, "g.json", {"cyclic_orders": [5]})
    alpha = write(tmp_path, "a.json", {"matrix": [[2]]})
    out_path = tmp_path / "report.jsonl"
    code = run(
        ["search", group, alpha, "--trials", "50", "--out", str(out_path)]
    )
    assert code == 0
    lines = out_path.read_text().strip().split("\n")
    assert json.loads(lines[-1])["summary"]["counts"]["other"] == 0


# ---------------------------------------------------------------------------
# padic
# ---------------------------------------------------------------------------


def test_padic_cli_kernel_case():
    code, output = run_cli(
        ["padic", "--p", "3", "--k", "3", "--c", "5", "--trials", "200"]
    )
    report = json.loads(output)
    assert code == 0
    assert report["tag"].startswith("finite-level 2(i)")
    assert report["consistent"] is True
    assert report["kernel"] == [[0], [9], [18]]
    assert any(
        hit["mu1_class"]["kind"] == "other" for hit in report["hits"]
    )


def test_padic_cli_exploratory(tmp_path):
    code, output = run_cli(
        ["padic", "--p", "2", "--k", "3", "--c", "3", "--trials", "100"]
    )
    report = json.loads(output)
    assert code == 0
    assert report["tag"] == "exploratory p=2"
    assert report["consistent"] is None


def test_padic_cli_rejects_bad_input():
    code, output = run_cli(["padic", "--p", "3", "--k", "2", "--c", "6"])
    assert code == 2 and output == ""


# ---------------------------------------------------------------------------
# verify
# ---------------------------------------------------------------------------


def test_verify_single_suite():
    code, output = run_cli(
        ["verify", "--suite", "quadratic", "--seed", "1", "--trials", "50"]
    )
    assert code == 0
    assert output.startswith("quadratic: PASS")


def test_verify_lemma1_reduced():
    code, output = run_cli(
        ["verify", "--suite", "lemma1", "--trials", "120"]
    )
    assert code == 0
    assert "lemma1: PASS" in output


def test_verify_unknown_suite_is_usage_error(capsys):
    code = run(["verify", "--suite", "nope"], out=io.StringIO())
    capsys.readouterr()
    assert code == 2


def test_console_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "heyde_lab.cli", "--version"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert proc.stdout.strip() == "0.1.0"
