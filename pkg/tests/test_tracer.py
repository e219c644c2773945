import json

import pytest

from codestrip.frontend import parse
from codestrip.tracer import (
    Assigned,
    CondEvaluated,
    IterationBegan,
    Printed,
    Returned,
    TraceLimits,
    trace,
    trace_from_json,
    trace_to_json,
)


def events_of(tr, cls):
    return [e for e in tr.events if isinstance(e, cls)]


def test_condition_program_events(fig1_code):
    tr = trace(parse(fig1_code))
    assert tr.fault is None and not tr.truncated
    assert tr.events == (
        Assigned(1, (), (), "x", True),
        CondEvaluated(2, (), (), True),
        Printed(3, (), (), "True"),
    )


def test_single_assignment():
    tr = trace(parse("x = 90\n"))
    assert tr.events == (Assigned(1, (), (), "x", 90),)
    assert not tr.truncated


def test_counted_loop_values():
    tr = trace(parse("x = 90\nfor i in range(3):\n    x = x - 10\n"))
    assigns = [e.value for e in events_of(tr, Assigned) if e.var == "x"]
    assert assigns == [90, 80, 70, 60]
    iters = events_of(tr, IterationBegan)
    assert [(e.loop_var, e.index) for e in iters] == [("i", 0), ("i", 1), ("i", 2)]
    assert not tr.truncated  # completed exactly at its natural bound


def test_iter_path_identifies_iterations(countdown_code):
    tr = trace(parse(countdown_code))
    prints = events_of(tr, Printed)
    assert [e.text for e in prints] == ["80", "70", "60"]
    assert [e.iter_path for e in prints] == [((2, 0),), ((2, 1),), ((2, 2),)]


def test_loop_cap_marks_truncated():
    tr = trace(parse("for i in range(10):\n    x = i\n"))
    assert tr.truncated
    assert len(events_of(tr, IterationBegan)) == 3


def test_while_loop_natural_exit():
    tr = trace(parse("n = 3\nwhile n > 0:\n    n = n - 1\n"))
    conds = [e.outcome for e in events_of(tr, CondEvaluated)]
    assert conds == [True, True, True, False]
    assert not tr.truncated


def test_while_loop_capped():
    tr = trace(parse("while 1 == 1:\n    x = 5\n"))
    assert tr.truncated
    assert len(events_of(tr, IterationBegan)) == 3


def test_false_condition_skips_body():
    tr = trace(parse("x = 1\nif x == 2:\n    print(x)\n"))
    assert events_of(tr, Printed) == []
    assert events_of(tr, CondEvaluated)[0].outcome is False


def test_nested_loop_paths():
    source = "for i in range(2):\n    for j in range(2):\n        print(j)\n"
    tr = trace(parse(source))
    prints = events_of(tr, Printed)
    assert [e.iter_path for e in prints] == [
        ((1, 0), (2, 0)),
        ((1, 0), (2, 1)),
        ((1, 1), (2, 0)),
        ((1, 1), (2, 1)),
    ]


@pytest.mark.parametrize(
    "source,kind,line",
    [
        ("x = y\n", "undefined-name", 1),
        ("x = 1 + True\n", "type-mismatch", 1),
        ("x = 1 / 0\n", "division-by-zero", 1),
        ("foo()\n", "undefined-function", 1),
        ('x = 1\ny = x == "one"\n', "type-mismatch", 2),
        ("x = True < False\n", "type-mismatch", 1),
        ('x = "a" + "b"\n', "type-mismatch", 1),
    ],
)
def test_runtime_faults(source, kind, line):
    tr = trace(parse(source))
    assert tr.fault is not None
    assert (tr.fault.kind, tr.fault.line) == (kind, line)


def test_fault_keeps_events_so_far():
    tr = trace(parse("x = 1\nprint(x)\ny = boom\n"))
    assert [type(e).__name__ for e in tr.events] == ["Assigned", "Printed"]
    assert tr.fault.line == 3


def test_integer_division_rounds_down():
    tr = trace(parse("x = 7 / 2\ny = 0 - 7\nz = y / 2\n"))
    env = {e.var: e.value for e in events_of(tr, Assigned)}
    assert env["x"] == 3
    assert env["z"] == -4


def test_function_call_inlined_with_call_path():
    source = 'def greet(name):\n    print(name)\ngreet("Sam")\n'
    tr = trace(parse(source))
    printed = events_of(tr, Printed)[0]
    assert printed.text == "Sam"
    assert printed.call_path == (3,)
    assert printed.line == 2


def test_function_return_value():
    source = "def double(n):\n    return n * 2\nx = double(21)\n"
    tr = trace(parse(source))
    assert events_of(tr, Returned)[0].value == 42
    assert events_of(tr, Assigned)[0].value == 42


def test_recursion_depth_capped():
    source = "def f(n):\n    x = f(n)\n    return x\ny = f(1)\n"
    tr = trace(parse(source))
    assert tr.fault is not None
    assert tr.fault.kind == "recursion-limit"


def test_top_level_return_ends_program():
    tr = trace(parse("x = 1\nreturn x\ny = 2\n"))
    assert tr.fault is None
    assert [type(e).__name__ for e in tr.events] == ["Assigned", "Returned"]


def test_event_cap_truncates():
    tr = trace(parse("for i in range(3):\n    print(i)\n"), TraceLimits(max_total_events=2))
    assert tr.truncated
    assert len(tr.events) == 2


def test_print_multiple_args():
    tr = trace(parse('print("n", 1, True)\n'))
    assert events_of(tr, Printed)[0].text == "n 1 True"


def test_trace_is_deterministic(countdown_code):
    ast = parse(countdown_code)
    a = json.dumps(trace_to_json(trace(ast)), sort_keys=True)
    b = json.dumps(trace_to_json(trace(ast)), sort_keys=True)
    assert a == b


def test_trace_json_roundtrip(example_corpus):
    for example in example_corpus:
        tr = trace(parse(example["code"]))
        back = trace_from_json(trace_to_json(tr))
        assert back == tr


def test_loop_free_lines_appear_at_most_once(example_corpus):
    for example in example_corpus:
        if "loop" in example["concept"]:
            continue
        tr = trace(parse(example["code"]))
        lines = [e.line for e in tr.events]
        assert len(lines) == len(set(lines))
