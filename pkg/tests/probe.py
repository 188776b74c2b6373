"""Probe-limited evaluation: unbounded quantifiers range over sample values.

Used only as extra evidence for lines whose matrices are outside the
decidable fragment. A True here means "no counterexample among the probes".
"""

from starhr.abstraction import lam
from starhr.hr import set_term
from starhr.kernel import NAT, Arrow, Ground, Signature, Star, Var, app, cup, numeral, single, suc
from starhr.logic import And, BExists, BForall, Exists, Forall, Imp, Or
from starhr.verify import eval_formula


def _nset(*ks):
    return set_term([numeral(k) for k in ks])


def candidates(ty, signature=None):
    sig = signature or Signature()
    n = Var("_p", NAT)
    if ty == NAT:
        return [numeral(k) for k in range(5)]
    if isinstance(ty, Ground):
        return [sig.constant(c) for c, a in sig.functions.items() if a == 0]
    if ty == Star(NAT):
        return [_nset(0), _nset(1, 2), _nset(0, 3)]
    if ty == Arrow(NAT, NAT):
        return [suc, lam([n], numeral(0))]
    if ty == Arrow(NAT, Star(NAT)):
        return [single(NAT), lam([n], _nset(0)),
                lam([n], app(cup(NAT), app(single(NAT), n), app(single(NAT), app(suc, n))))]
    if ty == Arrow(Star(NAT), Star(NAT)):
        x = Var("_q", Star(NAT))
        return [lam([x], x), lam([x], _nset(0))]
    return [sig.inhabit(ty)]


def bound_out(a, signature=None):
    """Replace each unbounded quantifier by a bounded one over its probes."""
    if isinstance(a, (Forall, Exists)):
        body = bound_out(a.body, signature)
        bound = set_term(candidates(a.var.type, signature))
        return (BForall if isinstance(a, Forall) else BExists)(a.var, bound, body)
    if isinstance(a, (And, Or, Imp)):
        return type(a)(bound_out(a.left, signature), bound_out(a.right, signature))
    if isinstance(a, (BForall, BExists)):
        return type(a)(a.var, a.bound, bound_out(a.body, signature))
    return a


def probe_eval(a, signature=None, relations=None, budget=None):
    return eval_formula(bound_out(a, signature), relations, budget)
