"""Parsing, abstract interpretation and the bounded concrete oracle."""
from __future__ import annotations

import pytest

from conftest import program_text

from galkit import catalog
from galkit.analyzer import (
    Assign,
    BinOp,
    If,
    Lit,
    Skip,
    Var,
    While,
    abstract_eval,
    analyze,
    concrete_run,
    format_result,
    format_state,
    parse_program,
    program_vars,
)
from galkit.errors import DomainMismatch, UseBeforeAssign, WhileSyntaxError


# ---------------------------------------------------------------------------
# parsing


def test_labels_follow_syntactic_order():
    p = parse_program("x := 1; while x < 3 do { x := x + 1; } y := x;")
    kinds = [(type(st).__name__, st.label) for st in p.body]
    assert kinds == [("Assign", 1), ("While", 2), ("Assign", 4)]
    assert p.body[1].body[0].label == 3
    assert p.n_labels == 4


def test_operator_precedence_and_parentheses():
    p = parse_program("x := 1 + 2 * 3;")
    expr = p.body[0].expr
    assert expr == BinOp("+", Lit(1), BinOp("*", Lit(2), Lit(3)))
    q = parse_program("x := (1 + 2) * 3;")
    assert q.body[0].expr == BinOp("*", BinOp("+", Lit(1), Lit(2)), Lit(3))


def test_negative_literals_vs_subtraction():
    p = parse_program("x := -3; y := x-1; z := x * -1;")
    assert p.body[0].expr == Lit(-3)
    assert p.body[1].expr == BinOp("-", Var("x"), Lit(1))
    assert p.body[2].expr == BinOp("*", Var("x"), Lit(-1))


def test_comments_and_skip():
    p = parse_program("# intro\nx := 1;  # after\nskip;\n")
    assert isinstance(p.body[1], Skip)


def test_syntax_errors_carry_positions():
    with pytest.raises(WhileSyntaxError) as err:
        parse_program("x := 1;\ny := ;\n")
    assert err.value.line == 2
    with pytest.raises(WhileSyntaxError):
        parse_program("while x < 1 { }")  # missing do
    with pytest.raises(WhileSyntaxError):
        parse_program("if 1 < 2 then { skip; }")  # missing else
    with pytest.raises(WhileSyntaxError):
        parse_program("x := 1")  # missing semicolon


def test_use_before_assign_rules():
    with pytest.raises(UseBeforeAssign):
        parse_program("x := y;")
    with pytest.raises(UseBeforeAssign):
        parse_program(
            "if 1 < 2 then { x := 1; } else { skip; } y := x;"
        )
    # assignments in both branches do flow out
    parse_program("if 1 < 2 then { x := 1; } else { x := 2; } y := x;")
    # assignments inside a loop body do not flow out
    with pytest.raises(UseBeforeAssign):
        parse_program("while 1 < 2 do { x := 1; } y := x;")


def test_program_vars_in_first_assignment_order():
    p = parse_program("b := 1; a := 2; b := a;")
    assert program_vars(p) == ["b", "a"]


# ---------------------------------------------------------------------------
# abstract evaluation


def test_abstract_eval_literals_and_ops(signconst):
    expr = parse_program("r := 2 + 3;").body[0].expr
    assert abstract_eval(expr, {}, signconst) == "5"
    expr = BinOp("*", Var("x"), Var("y"))
    assert abstract_eval(expr, {"x": ">0", "y": "<0"}, signconst) == "<0"
    assert abstract_eval(Lit(1000), {}, signconst) == "64"


def test_analyze_requires_a_pcgc_lattice_domain(parity):
    p = parse_program("x := 1;")
    with pytest.raises(DomainMismatch):
        analyze(p, parity)  # discrete abstract side, no lattice


def test_analyze_branch_join(signconst):
    p = parse_program(
        "a := 1; if a < 2 then { b := 3; } else { b := 5; } c := b;"
    )
    result = analyze(p, signconst)
    assert result.points["end"]["b"] == ">0"
    assert result.points["end"]["a"] == "1"


def test_analyze_loop_records_stabilized_head(signconst):
    p = parse_program(program_text("p01_doubling_loop.while"))
    result = analyze(p, signconst)
    loop = next(st for st in p.body if isinstance(st, While))
    assert result.points[f"L{loop.label}"] == {"x": ">0", "y": "2"}
    assert result.points["end"] == {"x": ">0", "y": "2"}
    assert result.iterations >= 2


def test_analyze_constant_propagation(signconst):
    p = parse_program("x := 2; y := x * 3; z := y - 7;")
    result = analyze(p, signconst)
    assert result.points["end"] == {"x": "2", "y": "6", "z": "-1"}


# ---------------------------------------------------------------------------
# the concrete oracle


def test_concrete_run_records_entry_environments(signconst):
    p = parse_program("x := 2; y := x + 1;")
    seen = concrete_run(p, signconst.carrier)
    assert seen["L1"] == [{}]
    assert seen["L2"] == [{"x": 2}]
    assert seen["end"] == [{"x": 2, "y": 3}]


def test_concrete_run_respects_step_budget(signconst):
    p = parse_program(program_text("p08_budget_spinner.while"))
    seen = concrete_run(p, signconst.carrier, budget=50)
    assert "end" not in seen
    assert len(seen["L2"]) > 1


def test_concrete_values_stay_inside_concretizations(signconst):
    p = parse_program(program_text("p05_countdown.while"))
    result = analyze(p, signconst)
    seen = concrete_run(p, signconst.carrier)
    for label, envs in seen.items():
        for env in envs:
            for var, val in env.items():
                assert str(val) in signconst.mu[result.points[label][var]]


# ---------------------------------------------------------------------------
# formatting


def test_format_state_hides_bottom_and_orders_variables(signconst):
    lat = signconst.abstract
    text = format_state({"x": ">0", "y": lat.bottom}, ["x", "y"], lat.bottom)
    assert text == "{x ↦ >0}"


def test_format_result_lists_every_point(signconst):
    p = parse_program("x := 1; y := x;")
    out = format_result(analyze(p, signconst), p, signconst)
    lines = out.splitlines()
    assert lines[0].startswith("L1:")
    assert lines[-1].startswith("end:")
    assert "x ↦ 1" in out
