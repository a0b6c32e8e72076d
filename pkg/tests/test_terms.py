import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from generators import FREE_TYPES, SIGNATURE, random_goal, random_term
from naive import walk
from lifter.errors import OccurrenceError, TermSyntaxError, TermTypeError
from lifter.terms import (
    Abs,
    App,
    Bound,
    Const,
    Free,
    Fun,
    Goal,
    Occurrence,
    TCon,
    TVar,
    flatten_app,
    flatten_type,
    format_type,
    free_vars,
    head_constant,
    iter_occurrences,
    load_goal,
    node_count,
    nth_arg,
    occurrences_of,
    parse_term,
    parse_type,
    print_goal,
    print_term,
    resolve,
    subterms,
)

A = TVar("'a")
LIST = TCon("list", (A,))


def occ(*path):
    return Occurrence(tuple(path))


# -- types ------------------------------------------------------------------


@pytest.mark.parametrize(
    "text, expected",
    [
        ("'a", A),
        ("'a list", LIST),
        ("'a list => 'a list", Fun(LIST, LIST)),
        ("'a => 'b => 'c", Fun(A, Fun(TVar("'b"), TVar("'c")))),
        ("('a => 'b) => 'a list => 'b list", Fun(Fun(A, TVar("'b")), Fun(LIST, TCon("list", (TVar("'b"),))))),
        ("('a, 'b) prod", TCon("prod", (A, TVar("'b")))),
        ("nat list list", TCon("list", (TCon("list", (TCon("nat"),)),))),
    ],
)
def test_parse_type(text, expected):
    assert parse_type(text) == expected
    assert parse_type(format_type(expected)) == expected


def test_flatten_type():
    params, result = flatten_type(parse_type("'a list => 'a list => 'a list"))
    assert params == [LIST, LIST] and result == LIST


@pytest.mark.parametrize("bad", ["", "=>", "'a =>", "('a", "('a, 'b)", "'a list )"])
def test_parse_type_rejects(bad):
    with pytest.raises(TermSyntaxError):
        parse_type(bad)


# -- parsing and printing ---------------------------------------------------


def test_itrev_goal_shape(itrev_goal):
    head, args = flatten_app(itrev_goal.statement)
    assert head == Const("eq", parse_type("'a => 'a => bool"))
    assert len(args) == 2
    assert print_term(itrev_goal.statement) == "(eq (itrev xs ys) (append (rev xs) ys))"


def test_atomic_leaf():
    assert parse_term("xs", {"xs": LIST}) == Free("xs", LIST)


def test_flatten_nested_application():
    consts = {"f": parse_type("'a => 'a => 'a"), "g": parse_type("'a => 'a")}
    t = parse_term("(f (g x) y)", {"x": A, "y": A}, consts)
    head, args = flatten_app(t)
    assert head.name == "f"
    assert [print_term(a) for a in args] == ["(g x)", "y"]
    # left-associated curried application
    assert isinstance(t, App) and isinstance(t.fun, App) and t.fun.fun == head


@pytest.mark.parametrize(
    "text, error",
    [
        ("(itrev xs ys", TermSyntaxError),
        ("itrev xs ys)", TermSyntaxError),
        ("(itrev xs zs)", TermSyntaxError),
        ("(rev xs ys)", TermTypeError),
        ("(cons xs xs)", TermTypeError),
        ("(xs)", TermSyntaxError),
        ("xs ys", TermSyntaxError),
    ],
)
def test_parse_term_errors(ctx, text, error):
    with pytest.raises(error):
        parse_term(text, {"xs": LIST, "ys": LIST}, ctx.signature)


def test_parse_error_has_position(ctx):
    with pytest.raises(TermSyntaxError) as info:
        parse_term("(itrev xs\n  zs)", {"xs": LIST}, ctx.signature)
    assert (info.value.line, info.value.col) == (2, 3)


def test_rigid_goal_type_variables(ctx):
    # 'a list and 'b list cannot be appended: goal type variables are fixed.
    with pytest.raises(TermTypeError):
        parse_term("(append xs ys)", {"xs": LIST, "ys": TCon("list", (TVar("'b"),))}, ctx.signature)


def test_polymorphic_constant_instantiation(ctx):
    nat_list = TCon("list", (TCon("nat"),))
    t = parse_term("(append nil ns)", {"ns": nat_list}, ctx.signature)
    assert print_term(t) == "(append nil ns)"


def test_abstraction_syntax():
    consts = {"m": parse_type("('a => 'a) => 'a"), "g": parse_type("'a => 'a")}
    t = parse_term("(m (fn v ['a] (g v)))", {"x": A}, consts)
    assert t == App(Const("m", consts["m"]), Abs("v", A, App(Const("g", consts["g"]), Bound(0))))
    # binder names do not matter
    assert t == parse_term("(m (fn w ['a] (g w)))", {"x": A}, consts)
    # a binder named like a free is printed under a fresh name
    clash = App(Const("m", consts["m"]), Abs("x", A, App(Const("g", consts["g"]), Free("x", A))))
    assert print_term(clash) == "(m (fn x1 ['a] (g x)))"
    assert parse_term(print_term(clash), {"x": A}, consts) == clash


def test_goal_file_round_trip(ctx, itrev_goal):
    text = print_goal(itrev_goal)
    assert text == "free xs :: 'a list\nfree ys :: 'a list\ngoal (eq (itrev xs ys) (append (rev xs) ys))\n"
    assert load_goal(text, ctx.signature) == itrev_goal


def test_goal_file_errors(ctx):
    with pytest.raises(TermSyntaxError):
        load_goal("free xs :: 'a list\n", ctx.signature)
    with pytest.raises(TermSyntaxError) as info:
        load_goal("free xs :: 'a list\nfrob\n", ctx.signature)
    assert info.value.line == 2
    with pytest.raises(TermSyntaxError) as info:
        load_goal("free xs 'a list\ngoal xs\n", ctx.signature)
    assert info.value.line == 1


def test_goal_rejects_undeclared_free():
    with pytest.raises(TermTypeError):
        Goal(Free("xs", LIST), ())
    with pytest.raises(TermTypeError):
        Goal(Free("xs", LIST), (("xs", A),))


@given(st.randoms(use_true_random=False))
def test_print_parse_round_trip(rng):
    t = random_term(rng, 4)
    assert parse_term(print_term(t), FREE_TYPES, SIGNATURE) == t


# -- subterms and occurrences ----------------------------------------------


def test_subterms_itrev(itrev_goal):
    subs = subterms(itrev_goal)
    printed = [print_term(s) for s in subs]
    # pre-order, first occurrence, duplicates collapsed
    assert printed == [
        "(eq (itrev xs ys) (append (rev xs) ys))",
        "eq",
        "(itrev xs ys)",
        "itrev",
        "xs",
        "ys",
        "(append (rev xs) ys)",
        "append",
        "(rev xs)",
        "rev",
    ]
    assert node_count(itrev_goal.statement) == 12
    # cross-check against the oracle's exhaustive walk
    distinct = []
    for _, t in walk(itrev_goal.statement):
        if t not in distinct:
            distinct.append(t)
    assert subs == distinct


def test_subterms_atom(ctx):
    g = load_goal("free xs :: 'a list\ngoal xs\n", ctx.signature)
    assert subterms(g) == [Free("xs", LIST)]


def test_occurrences_itrev(itrev_goal):
    xs, ys = Free("xs", LIST), Free("ys", LIST)
    itrev = flatten_app(flatten_app(itrev_goal.statement)[1][0])[0]
    assert occurrences_of(itrev_goal, xs) == [occ(1, 1), occ(2, 1, 1)]
    assert occurrences_of(itrev_goal, ys) == [occ(1, 2), occ(2, 2)]
    assert occurrences_of(itrev_goal, itrev) == [occ(1, 0)]
    assert occurrences_of(itrev_goal, Free("zs", LIST)) == []


def test_resolve(itrev_goal):
    assert resolve(itrev_goal, occ()) == itrev_goal.statement
    assert print_term(resolve(itrev_goal, occ(1, 0))) == "itrev"
    with pytest.raises(OccurrenceError):
        resolve(itrev_goal, occ(9))
    with pytest.raises(OccurrenceError):
        resolve(itrev_goal, occ(1, 0, 0))


def test_nth_arg(itrev_goal):
    assert nth_arg(itrev_goal, occ(1, 0), 1) == occ(1, 1)
    assert nth_arg(itrev_goal, occ(1, 0), 2) == occ(1, 2)
    assert nth_arg(itrev_goal, occ(1, 0), 3) is None
    assert nth_arg(itrev_goal, occ(1, 0), 0) is None
    assert nth_arg(itrev_goal, occ(1, 1), 1) is None
    assert nth_arg(itrev_goal, occ(), 1) is None


def test_nth_arg_under_abstraction_body_is_not_a_head():
    consts = {"m": parse_type("('a => 'a) => 'a")}
    g = Goal(parse_term("(m (fn v ['a] x))", {"x": A}, consts), (("x", A),))
    # [1] is the Abs, [1,0] its body: step 0 of an Abs is not a head position
    assert nth_arg(g, occ(1, 0), 1) is None


def test_head_constant(itrev_goal):
    assert head_constant(itrev_goal, occ(1, 0)) == "itrev"
    assert head_constant(itrev_goal, occ(1, 1)) is None
    assert head_constant(itrev_goal, occ()) is None


def test_free_vars(itrev_goal):
    assert [n for n, _ in free_vars(itrev_goal.statement)] == ["xs", "ys"]
    assert free_vars(Const("itrev", A)) == []
    assert free_vars(Abs("x", A, Bound(0))) == []


def test_bound_variables_are_nameless():
    assert Abs("x", A, Bound(0)) == Abs("y", A, Bound(0))
    assert Abs("x", A, Bound(0)) != Abs("x", LIST, Bound(0))


@given(st.randoms(use_true_random=False))
def test_occurrence_round_trip(rng):
    goal = random_goal(rng)
    for t in subterms(goal):
        occs = occurrences_of(goal, t)
        assert occs and occs == sorted(occs)
        for o in occs:
            assert resolve(goal, o) == t


@given(st.randoms(use_true_random=False))
def test_occurrence_partition(rng):
    goal = random_goal(rng)
    total = sum(len(occurrences_of(goal, t)) for t in subterms(goal))
    assert total == node_count(goal.statement) == len(walk(goal.statement))
    assert len(subterms(goal)) <= total


@given(st.randoms(use_true_random=False), st.integers(0, 4))
def test_nth_arg_matches_exhaustive_paths(rng, n):
    goal = random_goal(rng)
    nodes = dict(walk(goal.statement))
    for path in nodes:
        got = nth_arg(goal, Occurrence(path), n)
        parent = nodes.get(path[:-1]) if path else None
        expected = None
        if path and path[-1] == 0 and isinstance(parent, App) and 1 <= n <= len(flatten_app(parent)[1]):
            expected = Occurrence(path[:-1] + (n,))
            assert expected.path in nodes
        assert got == expected


def test_iter_occurrences_is_lexicographic():
    rng = random.Random(7)
    for _ in range(50):
        goal = random_goal(rng)
        paths = [o.path for o, _ in iter_occurrences(goal.statement)]
        assert paths == sorted(paths)
        assert paths == [p for p, _ in walk(goal.statement)]
