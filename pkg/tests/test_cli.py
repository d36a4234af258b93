import subprocess
import sys

import pytest

from mtlog.cli import run

PARACETAMOL = "NoMoreParacetamol(x) :- Adult(x), diamondminus[0,6] TakesParacetamol(x).\n"
JOHN = "Adult(John)@(-inf,+inf)\nTakesParacetamol(John)@8\n"


@pytest.fixture
def files(tmp_path):
    def write(name, text):
        path = tmp_path / name
        path.write_text(text)
        return str(path)

    return write


def test_eval_paracetamol(files):
    prog, data = files("paracetamol.mtl", PARACETAMOL), files("john.facts", JOHN)
    base = ["eval", "--program", prog, "--dataset", data, "--atom", "NoMoreParacetamol(John)"]
    assert run(base + ["--at", "10"]) == (0, "true\n", "")
    assert run(base + ["--at", "15"]) == (0, "false\n", "")
    assert run(base + ["--at", "10", "--three"]) == (0, "true\n", "")


def test_wf_p_not_p(files):
    code, out, _ = run(["wf", "--program", files("pnotp.mtl", "P :- not P.\n")])
    assert code == 0
    assert out == "kind: well-founded\niterations: 1\nexact: false\n# true\n# undef\nP@(-inf,+inf)\n"


def test_enumerate_p_not_p(files):
    code, out, _ = run(["stable", "--enumerate", "--program", files("pnotp.mtl", "P :- not P.\n"), "--window", "0", "0"])
    assert code == 0
    assert "models: 0\n" in out and "# model" not in out


def test_enumerate_guarded_pair(files):
    prog = files("pair.mtl", "P :- G, not Q.\nQ :- G, not P.\n")
    code, out, _ = run(["stable", "--enumerate", "--program", prog, "--dataset", files("g.facts", "G@0\n"), "--window", "0", "3"])
    assert code == 0
    assert out == (
        "window: 0 3\ncomplete: true\nmodels: 2\n"
        "# model 1\nG@[0,0]\nP@[0,0]\n# model 2\nG@[0,0]\nQ@[0,0]\n"
    )


def test_stable_check_exit_codes(files):
    prog = files("pnotq.mtl", "P :- not Q.\n")
    good = files("good.facts", "P@(-inf,+inf)\n")
    bad = files("bad.facts", "P@[0,5]\n")
    assert run(["stable", "--check", good, "--program", prog]) == (0, "true\n", "")
    assert run(["stable", "--check", bad, "--program", prog]) == (1, "false\n", "")


def test_supported_check(files):
    prog = files("loop.mtl", "P :- P.\n")
    interp = files("p.facts", "P@(-inf,+inf)\n")
    assert run(["supported", "--check", interp, "--program", prog])[0] == 0
    assert run(["stable", "--check", interp, "--program", prog])[0] == 1


def test_model_reports_are_reingestible(files):
    prog, data = files("paracetamol.mtl", PARACETAMOL), files("john.facts", JOHN)
    _, report, _ = run(["kk", "--program", prog, "--dataset", data])
    model = files("model.txt", report)
    assert run(["stable", "--check", model, "--program", prog, "--dataset", data]) == (0, "true\n", "")
    assert run(["eval", "--interp", model, "--atom", "NoMoreParacetamol(John)", "--at", "14"]) == (0, "true\n", "")


def test_check_and_ground(files):
    prog = files("p.mtl", "P(x) :- Q(x), not R(x).  % comment\n")
    data = files("d.facts", "Q(A)@0\nQ(B)@1\n")
    assert run(["check", "--program", prog]) == (0, "P(x) :- Q(x), not R(x).\n", "")
    code, out, _ = run(["ground", "--program", prog, "--dataset", data])
    assert code == 0
    assert out == "P(A) :- Q(A), not R(A).\nP(B) :- Q(B), not R(B).\n"


def test_usage_and_parse_errors_exit_2(files):
    assert run([])[0] == 2
    assert run(["bogus"])[0] == 2
    assert run(["kk", "--program", "/nonexistent/file.mtl"])[0] == 2
    code, out, err = run(["check", "--program", files("bad.mtl", "P(x) :- not Q(x).\n")])
    assert (code, out) == (2, "") and "unsafe variable x" in err
    assert run(["check", "--program", files("syn.mtl", "P :- .\n")])[0] == 2
    assert run(["stable", "--enumerate", "--program", files("q.mtl", "P :- not Q.\n")])[0] == 2


def test_eval_three_valued_needs_flag(files):
    prog = files("pnotp.mtl", "P :- not P.\n")
    assert run(["eval", "--program", prog, "--atom", "P", "--at", "0"])[0] == 2
    assert run(["eval", "--program", prog, "--atom", "P", "--at", "0", "--three"]) == (0, "undef\n", "")


def test_limits_exit_3(files):
    grow = files("grow.mtl", "P :- diamondminus[1,1] P.\n")
    code, out, err = run(["kk", "--program", grow, "--dataset", files("p.facts", "P@0\n"), "--max-iters", "20"])
    assert (code, out) == (3, "") and "still growing: P" in err
    wide = files("wide.facts", "G@[0,20]\n")
    pair = files("pair.mtl", "P :- G, not Q.\nQ :- G, not P.\n")
    code, out, _ = run(["stable", "--enumerate", "--program", pair, "--dataset", wide, "--window", "0", "3", "--budget", "64"])
    assert (code, out) == (3, "")


def test_diff_single_instance(files):
    pair = files("pair.mtl", "P :- G, not Q.\nQ :- G, not P.\n")
    code, out, _ = run(["diff", "--program", pair, "--dataset", files("g.facts", "G@0\n")])
    assert code == 0 and out.startswith("agree: true\n") and "stable-ht: 2\n" in out


def test_diff_random_is_deterministic_and_echoes_seed():
    first = run(["diff", "--random", "15", "--seed", "5"])
    second = run(["diff", "--random", "15", "--seed", "5"])
    assert first == second
    code, out, _ = first
    assert code == 0
    assert out.startswith("seed: 5\ninstances: 15\n") and out.endswith("discrepancies: 0\n")


def test_diff_jobs_match_serial():
    assert run(["diff", "--random", "10", "--seed", "9", "--jobs", "2"]) == run(["diff", "--random", "10", "--seed", "9"])


def test_console_entry_point(files):
    prog = files("pnotq.mtl", "P :- not Q.\n")
    proc = subprocess.run(
        [sys.executable, "-m", "mtlog.cli", "wf", "--program", prog], capture_output=True, text=True, check=False
    )
    assert proc.returncode == 0
    assert proc.stdout.endswith("# true\nP@(-inf,+inf)\n# undef\n")
