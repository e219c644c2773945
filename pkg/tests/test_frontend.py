import pytest

from codestrip.errors import ParseError, UnsupportedConstruct
from codestrip.frontend import (
    Assign,
    BinOp,
    BoolLit,
    Call,
    CallStmt,
    CodeAst,
    Compare,
    ForRange,
    FuncDef,
    If,
    IntLit,
    Name,
    Return,
    StrLit,
    While,
    ast_equal,
    ast_from_json,
    ast_to_json,
    expr_text,
    fingerprint,
    parse,
    pretty_print,
    statement_lines,
    walk,
)


def test_parse_condition_program(fig1_code):
    ast = parse(fig1_code)
    assert ast == CodeAst(
        (
            Assign(1, 0, "x", BoolLit(True)),
            If(
                2,
                0,
                Compare("==", Name("x"), BoolLit(True)),
                (CallStmt(3, 1, "print", (BoolLit(True),)),),
            ),
        )
    )


def test_parse_empty_program():
    assert parse("") == CodeAst(())
    assert parse("\n\n  \n# only a comment\n") == CodeAst(())


def test_parse_counted_loop(countdown_code):
    ast = parse(countdown_code)
    assert len(ast.statements) == 2
    loop = ast.statements[1]
    assert isinstance(loop, ForRange)
    assert loop.var == "i"
    assert loop.count == IntLit(3)
    assert len(loop.body) == 2
    assert all(s.depth == 1 for s in loop.body)


def test_parse_function_def_and_return():
    ast = parse("def double(n):\n    return n * 2\nx = double(21)\n")
    fn = ast.statements[0]
    assert isinstance(fn, FuncDef)
    assert fn.params == ("n",)
    assert fn.body == (Return(2, 1, BinOp("*", Name("n"), IntLit(2))),)
    assert ast.statements[1] == Assign(3, 0, "x", Call("double", (IntLit(21),)))


def test_parse_while_and_comments():
    source = "n = 3  # start\n# loop down\nwhile n > 0:\n    n = n - 1\n"
    ast = parse(source)
    assert [s.line for s in ast.statements] == [1, 3]
    assert isinstance(ast.statements[1], While)


def test_string_literals_and_escapes():
    ast = parse('x = "he said \\"hi\\""\ny = \'single\'\n')
    assert ast.statements[0] == Assign(1, 0, "x", StrLit('he said "hi"'))
    assert ast.statements[1] == Assign(2, 0, "y", StrLit("single"))


def test_negative_literal_and_parens():
    ast = parse("x = -5\ny = (1 + 2) * 3\n")
    assert ast.statements[0] == Assign(1, 0, "x", IntLit(-5))
    assert ast.statements[1] == Assign(
        2, 0, "y", BinOp("*", BinOp("+", IntLit(1), IntLit(2)), IntLit(3))
    )


@pytest.mark.parametrize(
    "source,construct",
    [
        ("class A:\n    x = 1\n", "class"),
        ("import os\n", "import"),
        ("x = 1\nif x == 1:\n    y = 2\nelse:\n    y = 3\n", "else"),
        ("if True:\n    x = 1\nelif False:\n    x = 2\n", "elif"),
        ("x += 1\n", "augmented assignment"),
        ("for x in items:\n    y = 1\n", "for over a non-range iterable"),
        ("x = 1 < 2 < 3\n", "chained comparison"),
        ("x = None\n", "None"),
        ("x\n", "expression statement"),
    ],
)
def test_rejects_out_of_subset(source, construct):
    with pytest.raises(UnsupportedConstruct) as exc:
        parse(source)
    assert exc.value.construct == construct


def test_unsupported_reports_line():
    with pytest.raises(UnsupportedConstruct) as exc:
        parse("x = 1\nimport os\n")
    assert exc.value.line == 2


@pytest.mark.parametrize(
    "source",
    [
        "x = \n",
        "if x == 1\n    y = 2\n",
        "x = 1)\n",
        "  x = 1\n",  # half-unit indent
        "\tx = 1\n",
        "x = 'open\n",
        "if True:\n",  # missing block
        "x = 1\n        y = 2\n",  # over-indent without opener
        "x = 1 @ 2\n",
        'x = "bad \\q escape"\n',
    ],
)
def test_syntax_errors(source):
    with pytest.raises(ParseError) as exc:
        parse(source)
    assert exc.value.line >= 1
    assert exc.value.col >= 1


def test_error_position_is_precise():
    with pytest.raises(ParseError) as exc:
        parse("x = 1 $ 2\n")
    assert (exc.value.line, exc.value.col) == (1, 7)


def test_line_coverage(example_corpus):
    for example in example_corpus:
        code = example["code"]
        ast = parse(code)
        code_lines = [
            i
            for i, raw in enumerate(code.split("\n"), start=1)
            if raw.split("#", 1)[0].strip()
        ]
        assert sorted(statement_lines(ast)) == code_lines


def test_pretty_print_single_assign():
    assert pretty_print(CodeAst((Assign(1, 0, "x", IntLit(5)),))) == "x = 5\n"


def test_pretty_print_condition_program(fig1_code):
    assert pretty_print(parse(fig1_code)) == fig1_code


def test_pretty_print_parenthesizes_by_structure():
    ast = parse("x = (1 + 2) * 3\ny = 1 - (2 - 3)\nz = 1 + 2 - 3\n")
    printed = pretty_print(ast)
    assert printed == "x = (1 + 2) * 3\ny = 1 - (2 - 3)\nz = 1 + 2 - 3\n"


def test_roundtrip_is_fixed_point_on_corpus(example_corpus):
    for example in example_corpus:
        ast = parse(example["code"])
        once = pretty_print(ast)
        assert ast_equal(parse(once), ast)
        assert pretty_print(parse(once)) == once  # fixed point on second pass


def test_ast_equal_ignores_renumbering():
    a = parse("x = 1\n\n\ny = 2\n")
    b = parse("x = 1\ny = 2\n")
    assert ast_equal(a, b)
    assert a != b  # raw equality still sees line numbers


def test_json_roundtrip(example_corpus):
    for example in example_corpus:
        ast = parse(example["code"])
        assert ast_from_json(ast_to_json(ast)) == ast


def test_fingerprint_tracks_structure(fig1_code):
    a = parse(fig1_code)
    assert fingerprint(a) == fingerprint(parse(fig1_code))
    assert fingerprint(a) != fingerprint(parse("x = False\n"))


def test_walk_order(countdown_code):
    lines = [s.line for s in walk(parse(countdown_code).statements)]
    assert lines == [1, 2, 3, 4]


def test_expr_text():
    assert expr_text(Compare("==", Name("x"), BoolLit(True))) == "x == True"
    assert expr_text(StrLit('say "hi"')) == '"say \\"hi\\""'


def test_parser_never_panics_on_junk():
    for source in ["???", "if if if", "def (:", "x ==", '"""', "((((", "1 = x"]:
        with pytest.raises((ParseError, UnsupportedConstruct)):
            parse(source)
