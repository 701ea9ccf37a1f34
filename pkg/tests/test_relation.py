from hypothesis import given, strategies as st

from loopw.binding import FreshSupply
from loopw.driver import initial_config
from loopw.gen import generate
from loopw.parser import parse_cmd, parse_program
from loopw.programs import ackermann_driver
from loopw.relation import audit, cmd_derivations
from loopw.stepper import Rule, step_cmd
from loopw.syntax import IntV, store


def test_derivations_of_simple_commands():
    ds = cmd_derivations(parse_cmd("X := 1; null"), store(("X", IntV(0))), FreshSupply())
    assert [d.rules for d in ds] == [(Rule.E_Seq, Rule.E_Assign)]
    assert cmd_derivations(parse_cmd("null"), (), FreshSupply()) == []


def test_stuck_configuration_has_no_derivation():
    assert cmd_derivations(parse_cmd("X := 1"), (), FreshSupply()) == []


def test_ackermann_run_is_deterministic():
    rep = audit(initial_config(parse_program(ackermann_driver(1, 2))))
    assert rep.converged and rep.ok


def test_empty_procedure_body_has_two_derivations():
    # [A = 1] begin end reduces by E_Aliases2 directly, or by E_Aliases3 through the head alias
    prog = parse_program("procedure P(A : in int) is begin end; begin P(1); end")
    rep = audit(initial_config(prog))
    assert rep.converged
    (finding,) = rep.findings
    assert finding.kind == "ambiguous"
    ends = {d.rules[-1] for d in finding.derivations}
    assert Rule.E_Aliases2 in {r for d in finding.derivations for r in d.rules}
    assert ends == {Rule.E_Aliases2, Rule.E_Aliases1}
    # both derivations reach the same configuration
    assert len({(d.node, d.store) for d in finding.derivations}) == 1


@given(st.integers(0, 2**32))
def test_unique_derivation_agrees_with_stepper(seed):
    cfg = initial_config(generate(seed))
    rep = audit(cfg)
    assert rep.converged
    assert all(f.kind == "ambiguous" for f in rep.findings)
    for f in rep.findings:
        # every overlap is the empty-body case of E_Aliases2 against E_Aliases3
        assert any(Rule.E_Aliases2 in d.rules for d in f.derivations)
        s = step_cmd(f.config.cmd, f.config.store)
        assert (s.rules, s.node, s.store) in {(d.rules, d.node, d.store) for d in f.derivations}
