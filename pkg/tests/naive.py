"""Brute-force reference evaluator.

Deliberately shares nothing with ``lifter.evaluator`` or the occurrence
helpers in ``lifter.terms``: it walks the goal into an explicit list of
(path, subterm) pairs, materialises every domain as a list, evaluates every
branch (no short-circuiting) and re-derives recursion flags from the raw
equations.
"""

from lifter.syntax import (
    And,
    Domain,
    Imply,
    IsFreeVar,
    IsInArbitrary,
    IsNthArgOf,
    IsNthInd,
    IsRecursiveCnst,
    IsRuleOf,
    IsSameAs,
    Not,
    Or,
    Polarity,
    Quant,
    QuantOccOf,
    Truth,
)
from lifter.terms import Abs, App, Const, Free


def spine(t):
    args = []
    while isinstance(t, App):
        args.insert(0, t.arg)
        t = t.fun
    return t, args


def walk(t, path=()):
    nodes = [(path, t)]
    if isinstance(t, App):
        head, args = spine(t)
        kids = [head] + args
    elif isinstance(t, Abs):
        kids = [t.body]
    else:
        kids = []
    for i, kid in enumerate(kids):
        nodes = nodes + walk(kid, path + (i,))
    return nodes


def self_referencing(name, equations):
    for eq in equations:
        rhs = eq.arg
        for _, sub in walk(rhs):
            if isinstance(sub, Const) and sub.name == name:
                return True
    return False


class NaiveEvaluator:
    def __init__(self, goal, ctx, args):
        self.nodes = walk(goal.statement)
        self.node_at = {p: t for p, t in self.nodes}
        self.terms = []
        for _, t in self.nodes:
            if t not in self.terms:
                self.terms.append(t)
        self.args = args
        self.defs = {}
        for name, c in ctx.constants.items():
            self.defs[name] = (list(c.derived_rules), self_referencing(name, c.equations))
        arities = [len(spine(t)[1]) for _, t in self.nodes]
        self.numbs = list(range(1, max(arities + [len(args.ind_terms), 1]) + 1))

    def domain(self, a, env):
        if isinstance(a, QuantOccOf):
            target = env[a.of_trm]
            return [p for p, t in self.nodes if t == target]
        return {
            Domain.TRM: self.terms,
            Domain.RULE: list(self.args.rules),
            Domain.IND: list(self.args.ind_terms),
            Domain.ARB: list(self.args.arbitrary),
            Domain.NUMB: self.numbs,
        }[a.domain]

    def ev(self, a, env):
        if isinstance(a, Truth):
            return a.value
        if isinstance(a, Not):
            return not self.ev(a.body, env)
        if isinstance(a, (And, Or, Imply)):
            left = self.ev(a.left, env)
            right = self.ev(a.right, env)
            if isinstance(a, And):
                return left and right
            if isinstance(a, Or):
                return left or right
            return (not left) or right
        if isinstance(a, (Quant, QuantOccOf)):
            var = a.var if isinstance(a, Quant) else a.occ_var
            results = []
            for value in self.domain(a, env):
                extended = dict(env)
                extended[var] = value
                results.append(self.ev(a.body, extended))
            if a.polarity is Polarity.SOME:
                return True in results
            return False not in results
        return self.atom(a, env)

    def atom(self, a, env):
        if isinstance(a, IsRuleOf):
            t = self.node_at[env[a.occ]]
            return isinstance(t, Const) and env[a.rule] in self.defs.get(t.name, ([], False))[0]
        if isinstance(a, IsRecursiveCnst):
            t = self.node_at[env[a.occ]]
            return isinstance(t, Const) and self.defs.get(t.name, ([], False))[1]
        if isinstance(a, IsNthArgOf):
            head, n, arg = env[a.head_occ], env[a.numb], env[a.arg_occ]
            for p, t in self.nodes:
                if isinstance(t, App) and head == p + (0,) and arg == p + (n,) and 1 <= n <= len(spine(t)[1]):
                    return True
            return False
        if isinstance(a, IsNthInd):
            n = env[a.numb]
            ind = list(self.args.ind_terms)
            return n - 1 < len(ind) and ind[n - 1] == env[a.trm]
        if isinstance(a, IsSameAs):
            return env[a.left] == env[a.right]
        if isinstance(a, IsFreeVar):
            return isinstance(self.node_at[env[a.occ]], Free)
        if isinstance(a, IsInArbitrary):
            return env[a.trm] in list(self.args.arbitrary)
        raise TypeError(a)


def naive_evaluate(a, goal, ctx, args, env=None):
    """``env`` values for occurrence variables are plain path tuples here."""
    return NaiveEvaluator(goal, ctx, args).ev(a, dict(env or {}))
