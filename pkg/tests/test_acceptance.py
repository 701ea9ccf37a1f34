"""Acceptance criteria, one test each.  Every test prints a single PASS/FAIL line."""

import random
import subprocess
import sys
import time
from contextlib import contextmanager
from pathlib import Path

import pytest
from click.testing import CliRunner

from loopw.cli import main
from loopw.driver import Outcome, full_eval, initial_config, many_steps, trace
from loopw.gen import generate, nesting_depth
from loopw.parser import parse_cmd, parse_program
from loopw.programs import ack, ackermann_driver
from loopw.relation import audit
from loopw.stepper import Rule, step_cmd
from loopw.syntax import NULL, Config, IntV, store
from loopw.typer import check_program

from mutants import MUTANTS, mutate
from oracles import check_store_laws, check_triple, triples

CORPUS = Path(__file__).resolve().parents[1] / "corpus"


@pytest.fixture
def criterion(capsys):
    @contextmanager
    def report(number, title):
        detail = {}
        try:
            yield detail
        except BaseException as err:
            line = f"ACCEPTANCE {number} FAIL  {title}: {detail.get('note') or err}"
            with capsys.disabled():
                print("\n" + line.splitlines()[0])
            raise
        with capsys.disabled():
            print(f"\nACCEPTANCE {number} PASS  {title}" + (f" ({detail['note']})" if "note" in detail else ""))
    return report


def _cli(*args):
    return CliRunner().invoke(main, list(args))


def test_1_ackermann_typechecks(criterion):
    with criterion(1, "Ackermann listing with Incr passes check") as d:
        t = time.perf_counter()
        r = subprocess.run([sys.executable, "-m", "loopw", "check", str(CORPUS / "ackermann.lw")],
                           capture_output=True, text=True)
        elapsed = time.perf_counter() - t
        d["note"] = f"exit {r.returncode}, {elapsed:.2f}s"
        assert r.returncode == 0 and r.stdout.strip() == "ok", r.stderr
        assert elapsed < 1.0


def test_2_ackermann_values(criterion, tmp_path):
    cases = [(m, n) for m in range(4) for n in range(4)] + [(2, 4), (2, 5), (3, 4)]
    with criterion(2, "Ackermann runs match the recursive oracle") as d:
        t = time.perf_counter()
        for m, n in cases:
            p = tmp_path / f"ack_{m}_{n}.lw"
            p.write_text(ackermann_driver(m, n))
            r = _cli("run", str(p), "--max-steps", "1000000")
            assert r.exit_code == 0, (m, n, r.output)
            assert r.output == f"R = {ack(m, n)}\n", (m, n, r.output)
        elapsed = time.perf_counter() - t
        d["note"] = f"{len(cases)} runs in {elapsed:.1f}s"
        assert elapsed < 30


def test_3_determinism_audit(criterion):
    with criterion(3, "exactly one rule applies at every configuration") as d:
        rep = audit(initial_config(parse_program(ackermann_driver(2, 3))))
        assert rep.converged
        ack_findings = len(rep.findings)
        bad = []
        for seed in range(200):
            prog = generate(seed)
            check_program(prog)
            assert nesting_depth(prog) <= 5
            a = audit(initial_config(prog))
            assert a.converged
            if a.findings:
                f = a.findings[0]
                bad.append((seed, len(a.findings), sorted({str(d.rules[-1]) for d in f.derivations})))
        d["note"] = (f"Ackermann (2,3): {rep.steps} configurations, {ack_findings} with != 1 derivation; "
                     f"generated: {len(bad)}/200 programs with overlaps, e.g. {bad[:2]}")
        assert ack_findings == 0
        assert not bad


def test_4_store_laws(criterion):
    with criterion(4, "fetch/update laws on 1000 random cases") as d:
        rng = random.Random(4)
        t = time.perf_counter()
        for _ in range(1000):
            check_store_laws(rng)
        elapsed = time.perf_counter() - t
        d["note"] = f"{elapsed:.2f}s"
        assert elapsed < 1.0


def test_5_substitution(criterion):
    with criterion(5, "capture-avoiding substitution on 1000 triples") as d:
        t = time.perf_counter()
        cases = triples(5, 1000)
        for c in cases:
            check_triple(*c)
        elapsed = time.perf_counter() - t
        d["note"] = f"{elapsed:.2f}s"
        assert len(cases) == 1000 and elapsed < 5.0


def test_6_trace_laws(criterion):
    with criterion(6, "trace prefix and many-steps composition on 100 programs") as d:
        rng = random.Random(6)
        total = 0
        for seed in range(1000, 1100):
            cfg = initial_config(generate(seed))
            rep = full_eval(cfg)
            assert rep.outcome is Outcome.CONVERGED
            n = rep.steps_taken
            total += n
            full = trace(cfg, n + 2)
            assert len(full) == n and (n == 0 or full[-1].cmd == NULL)
            for k in {0, 1, n // 2, max(n - 1, 0), n, n + 1, *(rng.randint(0, n + 1) for _ in range(4))}:
                assert trace(cfg, k) == full[:k]
                assert trace(cfg, k + 1)[:k] == trace(cfg, k)
            for _ in range(4):
                i, j = rng.randint(0, n + 1), rng.randint(0, n + 1)
                assert many_steps(cfg, i + j) == many_steps(many_steps(cfg, i), j)
            assert trace(cfg, 0) == []
            assert trace(Config(NULL, store(("X", IntV(1)))), rng.randint(0, 9)) == []
        d["note"] = f"{total} steps"


def test_7_for_desugaring(criterion):
    with criterion(7, "first step of a for loop is E_For2"):
        s = step_cmd(parse_cmd("for X in 1 .. 2 loop Y := X; end loop"), store(("Y", IntV(0))))
        expected = parse_cmd("declare X : constant int := 1; begin Y := X; end; "
                             "for X in 2 .. 2 loop Y := X; end loop")
        assert s.rules == (Rule.E_For2,)
        assert s.node == expected
        assert s.store == store(("Y", IntV(0)))


def test_8_mode_enforcement(criterion, tmp_path):
    with criterion(8, "12 ill-typed mutants rejected with the expected rule") as d:
        assert len(MUTANTS) == 12
        wrong = []
        for i, (label, old, new, rule) in enumerate(MUTANTS):
            p = tmp_path / f"mutant_{i}.lw"
            p.write_text(mutate(old, new))
            r = _cli("check", str(p))
            if r.exit_code != 1 or f"[{rule}]" not in r.output:
                wrong.append((label, r.exit_code, r.output.strip()))
        d["note"] = f"{12 - len(wrong)}/12"
        assert not wrong, wrong


ALIAS_CASES = [
    # Incr through a constant, as in the listing's Aux body
    ("procedure Incr(A : in int; B : out int) is begin B := A + 1; end;\n"
     "X : int := 5; Q : constant proc(in int, out int) := Incr;\nbegin Q(X, X); end", 6),
    # callee parameters reuse the caller's name
    ("procedure Incr(X : in int; R : out int) is begin R := X + 1; end;\n"
     "X : int := 5; Q : proc(in int, out int) := Incr;\nbegin Q(X, X); end", 6),
    # the Aux body itself: X = Incr(1), then S more increments
    ("procedure Incr(A : in int; B : out int) is begin B := A + 1; end;\n"
     "Q : constant proc(in int, out int) := Incr;\n"
     "procedure Aux(S : in int; R : out int) is X : int := 0; "
     "begin Q(1, X); for J in 1 .. S loop Q(X, X); end loop; R := X; end;\n"
     "X : int := 0;\nbegin Aux(3, X); end", 5),
    # copy-in and copy-back on every step; the outer alias V writes back last,
    # so X follows V (1 -> 2 -> 3) and W's 20 is overwritten within its step
    ("procedure Twice(V : in out int; W : out int) is begin V := V + 1; W := V * 10; V := V + 1; end;\n"
     "X : int := 1;\nbegin Twice(X, X); end", 3),
]


def test_9_alias_write_back(criterion, tmp_path):
    with criterion(9, "Q(X, X) writes back through out aliases") as d:
        for i, (text, expected) in enumerate(ALIAS_CASES):
            p = tmp_path / f"alias_{i}.lw"
            p.write_text(text)
            r = _cli("run", str(p))
            assert r.exit_code == 0, r.output
            assert f"X = {expected}" in r.output.splitlines(), (i, r.output)
        d["note"] = f"{len(ALIAS_CASES)} programs"
