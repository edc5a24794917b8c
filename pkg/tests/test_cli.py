"""Command surface: exit codes, determinism, file outputs."""
import json

import pytest

from twistbench.cli import Check, VerificationReport, main, search_budget


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr().out


def usage_error(*argv):
    with pytest.raises(SystemExit) as exc:
        main(list(argv))
    assert exc.value.code == 2


class TestReport:
    def test_exit_code_precedence(self):
        ok = Check("a", "pass")
        bad = Check("b", "fail")
        open_q = Check("c", "inconclusive")
        assert VerificationReport((), (ok,)).exit_code == 0
        assert VerificationReport((), (ok, open_q)).exit_code == 3
        assert VerificationReport((), (ok, open_q, bad)).exit_code == 1
        assert VerificationReport((), ()).exit_code == 0

    def test_bad_status_rejected(self):
        with pytest.raises(ValueError):
            Check("a", "maybe")

    def test_budget_override(self, monkeypatch):
        monkeypatch.setenv("TWISTBENCH_BUDGET", "123")
        assert search_budget() == 123
        monkeypatch.delenv("TWISTBENCH_BUDGET")
        assert search_budget() == 20000


class TestVerifyPsi:
    def test_passes_for_reference_models(self, capsys):
        code, out = run(capsys, "verify-psi", "--b", "2")
        assert code == 0
        assert "product-equals-reference" in out
        assert "FAIL" not in out

    def test_json_deterministic(self, capsys):
        _, once = run(capsys, "verify-psi", "--b", "2", "--format", "json")
        _, again = run(capsys, "verify-psi", "--b", "2", "--format", "json")
        assert once == again
        payload = json.loads(once)
        assert payload["exit_code"] == 0
        assert payload["seed"] == 0
        assert {c["name"] for c in payload["checks"]} >= {
            "product-equals-reference",
            "product-symplectic",
        }

    def test_explicit_signs(self, capsys):
        code, out = run(
            capsys, "verify-psi", "--b", "2", "--sign-mode", "explicit:1,1,1,1"
        )
        assert code == 0 and "(explicit)" in out

    def test_bad_signs_fail_not_crash(self, capsys):
        code, out = run(
            capsys, "verify-psi", "--b", "2", "--sign-mode", "explicit:1,1,1,-1"
        )
        assert code == 1
        assert "reference-well-defined" in out

    def test_seed_echoed(self, capsys):
        _, out = run(capsys, "verify-psi", "--b", "2", "--format", "json", "--seed", "7")
        assert json.loads(out)["seed"] == 7

    def test_usage_errors(self):
        usage_error("verify-psi", "--b", "1")
        usage_error("verify-psi", "--b", "2", "--sign-mode", "garbled")
        usage_error("verify-psi", "--b", "2", "--sign-mode", "explicit:1,1")
        usage_error("verify-psi")


class TestAuroux:
    def test_certificate_passes(self, capsys):
        code, out = run(capsys, "auroux", "--b", "2")
        assert code == 0
        assert "core-coverage" in out and "fronts-bare" in out

    def test_missing_central_core_fails(self, capsys):
        # half-twist-only blocks never cover the colour-crossing curve
        code, out = run(capsys, "auroux", "--b", "2", "--composition", "Xh,Yh")
        assert code == 1
        assert "sigma" in out

    def test_write_then_replay(self, capsys, tmp_path):
        cert = tmp_path / "cert.json"
        code, _ = run(capsys, "auroux", "--b", "2", "--out", str(cert))
        assert code == 0
        payload = json.loads(cert.read_text())
        assert payload["b"] == 2 and len(payload["steps"]) == 13
        code, out = run(capsys, "auroux", "--b", "2", "--replay", str(cert))
        assert code == 0 and "certificate-replays" in out

    def test_tampered_replay_names_step(self, capsys, tmp_path):
        cert = tmp_path / "cert.json"
        run(capsys, "auroux", "--b", "2", "--out", str(cert))
        payload = json.loads(cert.read_text())
        payload["steps"][3]["front_letter"]["core"] = "beta_1"
        cert.write_text(json.dumps(payload))
        code, out = run(capsys, "auroux", "--b", "2", "--replay", str(cert))
        assert code == 1
        assert "step 3" in out


class TestExports:
    def test_config_dot(self, capsys):
        code, out = run(capsys, "export", "config", "--b", "2", "--format", "dot")
        assert code == 0
        assert out.startswith("graph configuration {")
        nodes = [l for l in out.splitlines() if "[label=" in l and " -- " not in l]
        assert len(nodes) == 12

    def test_config_json(self, capsys):
        code, out = run(capsys, "export", "config", "--b", "3", "--format", "json")
        assert code == 0
        payload = json.loads(out)
        assert payload["b"] == 3 and len(payload["curves"]) == 21

    def test_monodromy_json_matches_emit(self, capsys):
        _, via_export = run(capsys, "export", "monodromy", "--b", "2", "--format", "json")
        _, via_emit = run(capsys, "monodromy", "emit", "--b", "2", "--format", "json")
        assert via_export == via_emit
        payload = json.loads(via_emit)
        assert payload["strands"] == 8
        assert payload["composition_default"] == ["X", "Y"]
        assert len(payload["blocks"]["X"]) == 10

    def test_out_file_stable(self, capsys, tmp_path):
        target = tmp_path / "out.json"
        run(capsys, "export", "monodromy", "--b", "2", "--format", "json", "--out", str(target))
        once = target.read_bytes()
        run(capsys, "export", "monodromy", "--b", "2", "--format", "json", "--out", str(target))
        assert target.read_bytes() == once

    def test_dot_restricted(self):
        usage_error("export", "monodromy", "--b", "2", "--format", "dot")
        usage_error("verify-psi", "--b", "2", "--format", "dot")


class TestInvariants:
    def test_reference_values(self, capsys):
        code, out = run(
            capsys, "invariants", "--a", "14", "--b", "8", "--c", "6",
            "--k", "2", "--format", "json",
        )
        assert code == 0
        payload = json.loads(out)["payload"]
        assert payload["invariants"] == {
            "chi": 412, "K2": 2016, "divisibility": 2, "fibre_genus": 29,
        }
        assert len(payload["family"]) == 2
        assert payload["hypotheses"]["all_pass"]
        assert payload["deformation_dimension"] == 913

    def test_discrepancy_note_present(self, capsys):
        _, out = run(
            capsys, "invariants", "--a", "14", "--b", "8", "--c", "6", "--format", "json"
        )
        payload = json.loads(out)["payload"]
        assert payload["chi_report"]["variant_agrees"] is False
        assert "note" in json.loads(out)["payload"]

    def test_failed_hypotheses_fail(self, capsys):
        code, out = run(
            capsys, "invariants", "--a", "10", "--b", "6", "--c", "4", "--k", "2"
        )
        assert code == 1
        assert "family-hypotheses" in out

    def test_table_format(self, capsys):
        code, out = run(capsys, "invariants", "--a", "14", "--b", "8", "--c", "6")
        assert code == 0
        assert "chi            412" in out
        assert "note:" in out

    def test_usage(self):
        usage_error("invariants", "--a", "0", "--b", "8", "--c", "6")
        usage_error("invariants", "--a", "14", "--b", "8")


class TestBraid:
    def test_eq_equal(self, capsys):
        code, out = run(
            capsys, "braid", "eq", "--n", "3", "--lhs", "[1,2,1]", "--rhs", "[2,1,2]"
        )
        assert code == 0 and "words-equal" in out

    def test_eq_distinguishes_inverse(self, capsys):
        code, _ = run(capsys, "braid", "eq", "--n", "3", "--lhs", "[1]", "--rhs", "[-1]")
        assert code == 1

    def test_eq_usage(self):
        usage_error("braid", "eq", "--n", "3", "--lhs", "[1]")
        usage_error("braid", "eq", "--n", "3", "--lhs", "[1]", "--rhs", "oops")
        usage_error("braid", "eq", "--n", "3", "--lhs", "[1]", "--rhs", "[0]")
        usage_error("braid", "eq", "--n", "2", "--lhs", "[2]", "--rhs", "[1]")

    def test_manfredini_holds(self, capsys):
        code, out = run(capsys, "braid", "manfredini", "--n", "4", "--k", "2")
        assert code == 0
        assert out.count("PASS") == 6

    def test_manfredini_inconclusive_only_exits_3(self, capsys):
        code, out = run(capsys, "braid", "manfredini", "--n", "2", "--k", "1")
        assert code == 3
        assert "INCONCLUSIVE" in out and "FAIL" not in out

    def test_manfredini_usage(self):
        usage_error("braid", "manfredini", "--n", "4")
        usage_error("braid", "manfredini", "--n", "4", "--k", "4")


class TestHurwitzReplay:
    @pytest.fixture
    def replay_path(self, tmp_path):
        from twistbench.factorization import apply_script
        from twistbench.monodromy import lifted_composition
        from twistbench.serialize import replay_file_to_dict, stable_json

        fact = lifted_composition(2)
        script = (("right", 3), ("left", 5))
        payload = replay_file_to_dict(2, fact, script, apply_script(fact, script))
        path = tmp_path / "replay.json"
        path.write_text(stable_json(payload))
        return path

    def test_good_file_replays(self, capsys, replay_path):
        code, out = run(capsys, "hurwitz", "replay", "--file", str(replay_path))
        assert code == 0
        assert "result-matches" in out

    def test_edited_result_fails(self, capsys, replay_path):
        payload = json.loads(replay_path.read_text())
        letters = payload["result"]["letters"]
        assert letters[0]["core"] != "beta_2"
        letters[0]["core"] = "beta_2"
        replay_path.write_text(json.dumps(payload))
        code, out = run(capsys, "hurwitz", "replay", "--file", str(replay_path))
        assert code == 1
        assert "letters differ" in out

    def test_bad_move_index_fails_with_step(self, capsys, replay_path):
        payload = json.loads(replay_path.read_text())
        payload["script"][1] = ["right", 999]
        replay_path.write_text(json.dumps(payload))
        code, out = run(capsys, "hurwitz", "replay", "--file", str(replay_path))
        assert code == 1
        assert "step 1" in out
