"""
The hn command line: compute, polygon, check and oracle
"""

import json
from fractions import Fraction
from pathlib import Path

import pytest

from main import main, parse_arguments
from src.cli.documents import parse_document, parse_exact_value
from src.cli.generators import parse_random_spec
from src.cli.suites import _guarded, all_proved
from src.config.engine_config import EngineConfig
from src.core.errors import DestabilizerTieError, InputValidationError
from src.core.exact import LogRationalDegree, RationalDegree
from src.lattice.context import LatticeContext
from src.lattice.lattice import EuclideanLattice
from src.utils.verification import CheckReport

TWO_WEIGHTS_ON_E1 = {
    "version": 1,
    "kind": "multifilt_fp",
    "p": 2,
    "dim": 2,
    "alpha": [1, 1],
    "filtrations": [
        {"weights": [2], "flag": [[[1, 0]]]},
        {"weights": [1], "flag": [[[1, 0]]]},
    ],
}

JUMPS_ONE_ZERO = {
    "kind": "multifilt_fp",
    "p": 2,
    "dim": 2,
    "alpha": ["1"],
    "filtrations": [{"weights": ["1"], "flag": [[[1, 0]]]}],
}

SKEWED_LATTICE = {"kind": "lattice", "gram": [["1/4", "0"], ["0", "4"]]}

# two orthogonal vectors of norm 8/3 whose plane has the same slope
ORTHOGONAL_PAIR = {
    "kind": "lattice",
    "gram": [["14/3", "34/3", "10/3"], ["34/3", "118/3", "46/3"], ["10/3", "46/3", "22/3"]],
}

THREE_LINES = {
    "kind": "multifilt_fp",
    "p": 2,
    "dim": 3,
    "alpha": [1, 1, 1],
    "filtrations": [
        {"weights": [3], "flag": [[[1, 0, 0]]]},
        {"weights": [1], "flag": [[[0, 1, 0]]]},
        {"weights": [1], "flag": [[[0, 0, 1]]]},
    ],
}

TESTDATA = Path(__file__).parent / "testdata"


@pytest.fixture
def write_input(tmp_path):
    def write(document, name="input.json"):
        path = tmp_path / name
        path.write_text(json.dumps(document), encoding="utf-8")
        return str(path)

    return write


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr().out


class TestCompute:
    def test_two_weight_example(self, capsys, write_input):
        code, out = run(capsys, "compute", write_input(TWO_WEIGHTS_ON_E1))
        assert code == 0
        document = json.loads(out)
        assert document["status"] == "ok"
        assert document["kind"] == "multifilt_fp"
        assert [s["exact"] for s in document["slopes"]] == ["3", "0"]
        assert document["ranks"] == [0, 1, 2]
        assert document["chain"][1] == [["1", "0"]]
        assert document["certification"] == "proved"
        assert [v["t"] for v in document["polygon"]] == ["0", "1/2", "1"]
        assert "timing" not in document

    def test_timing_is_opt_in(self, capsys, write_input):
        code, out = run(capsys, "compute", write_input(TWO_WEIGHTS_ON_E1), "--timing")
        assert code == 0
        assert json.loads(out)["timing"] >= 0

    def test_lattice_values_reparse(self, capsys, write_input):
        code, out = run(capsys, "compute", write_input(SKEWED_LATTICE))
        assert code == 0
        document = json.loads(out)
        assert document["certification"] == "proved"
        assert document["slopes"][0]["exact"] == {"neg_half_log_of": "1/4"}
        assert document["slopes"][0]["decimal"] == "0.69314718056"
        assert parse_exact_value(document["slopes"][0]["exact"]) == LogRationalDegree(Fraction(1, 4))
        assert parse_exact_value(document["slopes"][1]["exact"]) == LogRationalDegree(4)
        assert parse_exact_value(document["degree"]["exact"]) == RationalDegree(0)

    def test_digits(self, capsys, write_input):
        code, out = run(capsys, "compute", write_input(SKEWED_LATTICE), "--digits", "3")
        assert code == 0
        assert json.loads(out)["slopes"][0]["decimal"] == "0.693"

    def test_tied_short_vectors_give_their_plane(self, capsys, write_input):
        code, out = run(capsys, "compute", write_input(ORTHOGONAL_PAIR))
        document = json.loads(out)
        assert code == 0, document
        assert document["ranks"] == [0, 2, 3]
        assert parse_exact_value(document["slopes"][0]["exact"]) == LogRationalDegree(Fraction(8, 3))

    def test_failed_destabilizer_exits_3(self, capsys, write_input, monkeypatch):
        monkeypatch.setenv("HN_LATTICE_MAX_RANK", "1")
        code, out = run(capsys, "compute", write_input(SKEWED_LATTICE))
        assert code == 3
        document = json.loads(out)
        assert document["status"] == "failed"
        assert "enumeration guard" in document["error"]

    @pytest.mark.parametrize("name", ["two_weights_on_e1.json", "skewed_lattice.json"])
    def test_sample_documents(self, capsys, name):
        code, out = run(capsys, "compute", str(TESTDATA / name))
        assert code == 0
        assert json.loads(out)["certification"] == "proved"

    def test_output_file(self, capsys, write_input, tmp_path):
        target = tmp_path / "results" / "hn.json"
        code, out = run(capsys, "compute", write_input(TWO_WEIGHTS_ON_E1), "-o", str(target))
        assert code == 0
        assert out == ""
        assert json.loads(target.read_text())["certification"] == "proved"


class TestValidation:
    def test_float_weights_are_rejected(self, capsys, write_input):
        document = dict(JUMPS_ONE_ZERO, filtrations=[{"weights": [0.5], "flag": [[[1, 0]]]}])
        assert run(capsys, "compute", write_input(document))[0] == 2

    def test_non_prime_field(self, capsys, write_input):
        assert run(capsys, "compute", write_input(dict(JUMPS_ONE_ZERO, p=4)))[0] == 2

    def test_unknown_field(self, capsys, write_input):
        assert run(capsys, "compute", write_input(dict(JUMPS_ONE_ZERO, colour="red")))[0] == 2

    def test_missing_file(self, capsys, tmp_path):
        assert run(capsys, "compute", str(tmp_path / "absent.json"))[0] == 2

    def test_invalid_config(self, capsys, write_input):
        assert run(capsys, "compute", write_input(JUMPS_ONE_ZERO), "--budget", "0")[0] == 2

    def test_documents_are_discriminated_by_kind(self):
        assert parse_document(SKEWED_LATTICE).kind == "lattice"
        assert parse_document(JUMPS_ONE_ZERO).alpha == ["1"]


class TestPolygon:
    @pytest.mark.parametrize(
        "document, fmt, golden",
        [
            (JUMPS_ONE_ZERO, "csv", "jumps_one_zero.csv"),
            (JUMPS_ONE_ZERO, "svg", "jumps_one_zero.svg"),
            (SKEWED_LATTICE, "svg", "skewed_lattice.svg"),
        ],
    )
    def test_matches_golden_file(self, capsys, write_input, document, fmt, golden):
        code, out = run(capsys, "polygon", write_input(document), "--format", fmt)
        assert code == 0
        assert out == (TESTDATA / golden).read_text(encoding="utf-8")

    @pytest.mark.parametrize("fmt", ["csv", "svg"])
    def test_reruns_are_byte_identical(self, capsys, write_input, fmt):
        path = write_input(SKEWED_LATTICE)
        first = run(capsys, "polygon", path, "--format", fmt)
        second = run(capsys, "polygon", path, "--format", fmt)
        assert first == second

    def test_compute_reruns_are_byte_identical(self, capsys, write_input):
        path = write_input(ORTHOGONAL_PAIR)
        assert run(capsys, "compute", path) == run(capsys, "compute", path)


class TestCheck:
    @pytest.mark.parametrize("suite", ["axioms", "slopes"])
    def test_small_suites_pass(self, capsys, suite):
        code, out = run(capsys, "check", "--suite", suite, "--trials", "2", "--seed", "5")
        document = json.loads(out)
        assert code == 0, document
        assert document["status"] == "pass"
        assert document["seed"] == 5

    def test_unknown_suite(self):
        with pytest.raises(SystemExit):
            parse_arguments(["check", "--suite", "everything"])


class TestSuites:
    def test_heuristic_sequences_are_counted(self):
        report = CheckReport("slopes")
        lattice = EuclideanLattice.diagonal((Fraction(1, 4), 4))
        assert not all_proved(report, LatticeContext(lattice, EngineConfig(lattice_bound_ceiling=0)))
        assert all_proved(report, LatticeContext(lattice))
        assert report.heuristic == 1
        assert report.to_dict()["heuristic"] == 1

    def test_engine_errors_are_violations(self):
        def tied(trial):
            raise DestabilizerTieError("two lines share the maximal slope")

        report = CheckReport("slopes")
        _guarded(report, 3, SKEWED_LATTICE, tied)
        assert not report.passed
        assert report.violations[0].check == "engine-error"
        assert report.violations[0].seed == 3
        assert report.violations[0].document == SKEWED_LATTICE


class TestOracle:
    def test_diag2_family(self, capsys):
        code, out = run(capsys, "oracle", "--random", "lattice:family=diag2,count=5,seed=0")
        document = json.loads(out)
        assert code == 0, document
        assert document["trials"] == 5
        assert document["budget_exceeded"] == []

    def test_two_filtrations(self, capsys):
        code, out = run(capsys, "oracle", "--random", "multifilt_fp:p=2,dim=2,n=2,count=5,seed=0")
        assert code == 0, out

    def test_file_input(self, capsys, write_input):
        assert run(capsys, "oracle", write_input(TWO_WEIGHTS_ON_E1))[0] == 0

    def test_budget_overrun_has_its_own_exit_code(self, capsys, write_input):
        code, out = run(capsys, "oracle", write_input(THREE_LINES), "--budget", "10")
        assert code == 4
        assert len(json.loads(out)["budget_exceeded"]) == 1

    def test_bad_random_spec(self, capsys):
        assert run(capsys, "oracle", "--random", "torus:count=1")[0] == 2


class TestRandomSpec:
    def test_defaults(self):
        spec = parse_random_spec("lattice:count=3")
        assert spec.params["family"] == "diag2"
        assert (spec.count, spec.seed) == (3, 0)

    @pytest.mark.parametrize(
        "text", ["torus", "lattice:family=hexagonal", "multifilt_fp:p=two", "multifilt_fp:q=2", "lattice:count=-1"]
    )
    def test_rejects(self, text):
        with pytest.raises(InputValidationError):
            parse_random_spec(text)
