"""Seeded property checks over random terms and formulas.

These back the ``fuzz`` subcommand. Each check returns how many cases ran
and a list of human-readable failures.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .abstraction import bracket
from .hr import hr_translate, monotonicity_probe
from .gen import TermGen, monotone_formula, random_formula, random_witness_sets
from .kernel import NAT, Star, Var, app, is_end_star, subst_term, typecheck
from .logic import is_exists_free
from .rewrite import LO, RI, as_numeral, is_set_like, normalize, surface_elements

__all__ = ["FuzzResult", "check_terms", "check_bracket", "check_hr",
           "check_monotonicity", "run_fuzz"]


@dataclass
class FuzzResult:
    name: str
    cases: int = 0
    failures: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def line(self) -> str:
        status = "ok" if self.ok else f"{len(self.failures)} failure(s)"
        return f"{self.name}: {self.cases} cases, {status}"


def check_terms(seed: int, cases: int, budget: int = 10**5) -> FuzzResult:
    """Normalization, agreement of the two strategies, and normal-form shapes."""
    res = FuzzResult("normalization")
    g = TermGen(seed)
    for _ in range(cases):
        t = g.closed()
        res.cases += 1
        try:
            typecheck(t)
            lo = normalize(t, budget, LO)
            ri = normalize(t, budget, RI)
        except Exception as e:  # report, keep going
            res.failures.append(f"{t}: {e}")
            continue
        if lo != ri:
            res.failures.append(f"{t}: LO {lo} differs from RI {ri}")
        elif isinstance(lo.type, Star) and not (is_set_like(lo) and len(surface_elements(lo))):
            res.failures.append(f"{t}: normal form {lo} is not set-like")
        elif lo.type == NAT and as_numeral(lo) is None:
            res.failures.append(f"{t}: normal form {lo} is not a numeral")
    return res


def check_bracket(seed: int, cases: int, budget: int = 10**5) -> FuzzResult:
    res = FuzzResult("bracket abstraction")
    g = TermGen(seed)
    rng = random.Random(seed)
    for _ in range(cases):
        x = Var("x", rng.choice([NAT, Star(NAT)]))
        y = Var("y", NAT)
        ty = rng.choice([NAT, Star(NAT)])
        t = g.term(ty, [x, y], fuel=rng.randint(3, 20))
        s = g.term(x.type, [y], fuel=rng.randint(1, 8))
        res.cases += 1
        lhs = normalize(app(bracket(x, t), s), budget)
        rhs = normalize(subst_term(t, x, s), budget)
        if lhs != rhs:
            res.failures.append(f"x={x.name} t={t} s={s}: {lhs} vs {rhs}")
    return res


def check_hr(seed: int, cases: int) -> FuzzResult:
    res = FuzzResult("translation invariants")
    rng = random.Random(seed)
    for _ in range(cases):
        a = random_formula(rng, rng.randint(1, 4))
        h = hr_translate(a)
        res.cases += 1
        bad = [v for v in h.evars if not is_end_star(v.type)]
        if bad:
            res.failures.append(f"{a}: evars {bad} not end-star")
        if not is_exists_free(h.matrix):
            res.failures.append(f"{a}: matrix {h.matrix} is not ∃-free")
        if is_exists_free(a) and (h.evars or h.matrix != a):
            res.failures.append(f"{a}: ∃-free formula changed under translation")
    return res


def check_monotonicity(seed: int, cases: int, budget: int = 10**5) -> FuzzResult:
    res = FuzzResult("monotonicity")
    rng = random.Random(seed)
    while res.cases < cases:
        a = monotone_formula(rng, rng.randint(1, 4))
        k = len(hr_translate(a).evars)
        small, big = random_witness_sets(rng, k)
        v = monotonicity_probe(a, small, big, budget=budget)
        res.cases += 1
        if not v.is_true:
            res.failures.append(f"{a} with {small} ⊆ {big}: {v}")
    return res


def run_fuzz(seed: int = 0, cases: int = 100) -> list[FuzzResult]:
    return [check_terms(seed, cases), check_bracket(seed, cases),
            check_hr(seed, cases), check_monotonicity(seed, cases)]
