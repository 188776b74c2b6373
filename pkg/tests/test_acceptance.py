"""One test per acceptance criterion; each prints a single PASS/FAIL line."""

import json
import random
import time
from collections import defaultdict

import pytest

import corpus
from probe import probe_eval
from starhr.abstraction import bracket, lam
from starhr.cli import build_report, main
from starhr.extract import extract_all
from starhr.gen import TermGen, monotone_formula, random_formula, random_witness_sets
from starhr.hr import hr_matrix_instantiate, hr_translate, monotonicity_probe, set_term
from starhr.kernel import NAT, Arrow, Star, Var, app, arrows, numeral, subst_term, type_depth, typecheck
from starhr.logic import Exists, Forall, Or, alpha_eq, free_vars, is_exists_free, subst_formula
from starhr.proof import RULES, SCHEMAS, parse_proof, show_proof
from starhr.rewrite import LO, RI, as_numeral, enumerate_set, is_set_like, normalize, surface_elements
from starhr.syntax import parse_document, show_document, show_formula, show_term
from starhr.verify import check_realizer, eval_formula, instantiate_realizers

SN_BUDGET = 10**5
N_TERMS = 500
SEED = 20240611


def verdict(label, ok, detail=""):
    print(f"{'PASS' if ok else 'FAIL'} {label}{': ' + detail if detail else ''}")
    assert ok, detail


@pytest.fixture(scope="module")
def term_sample():
    g = TermGen(SEED)
    return [g.closed() for _ in range(N_TERMS)]


def test_ac01_strong_normalization(term_sample):
    start = time.perf_counter()
    bad = []
    for t in term_sample:
        typecheck(t)
        if t.size > 60 or type_depth(t.type) > 4:
            bad.append(f"{t} out of distribution")
            continue
        try:
            normalize(t, SN_BUDGET)
        except Exception as e:
            bad.append(f"{t}: {e}")
    elapsed = time.perf_counter() - start
    verdict("strong normalization", not bad and elapsed < 60,
            f"{len(term_sample)} terms, {len(bad)} failures, {elapsed:.1f}s")


def test_ac02_church_rosser(term_sample):
    mismatches = [t for t in term_sample
                  if normalize(t, SN_BUDGET, LO) != normalize(t, SN_BUDGET, RI)]
    verdict("LO and RI normal forms agree", not mismatches,
            f"{len(term_sample)} terms, {len(mismatches)} mismatches")


def test_ac03_normal_form_shapes(term_sample):
    g = TermGen(SEED + 3)
    stars, nats = [], []
    for t in term_sample:
        (stars if isinstance(t.type, Star) else nats if t.type == NAT else []).append(t)
    star_types = [Star(NAT), Star(Star(NAT)), Star(Arrow(NAT, NAT))]
    while len(stars) < 300:
        stars.append(g.closed(g.rng.choice(star_types)))
    while len(nats) < 300:
        nats.append(g.closed(NAT))
    bad = []
    for t in stars:
        nf = normalize(t, SN_BUDGET)
        if not (is_set_like(nf) and len(surface_elements(nf)) > 0):
            bad.append(f"{t} -> {nf}")
    for t in nats:
        if as_numeral(normalize(t, SN_BUDGET)) is None:
            bad.append(f"{t} is not a numeral")
    verdict("normal-form shapes", not bad,
            f"{len(stars)} star-typed, {len(nats)} N-typed, {len(bad)} exceptions")


def test_ac04_combinatorial_completeness():
    g = TermGen(SEED + 4)
    rng = random.Random(SEED + 4)
    y = Var("y", NAT)
    bad = []
    for _ in range(200):
        x = Var("x", rng.choice([NAT, Star(NAT), Arrow(NAT, NAT)]))
        t = g.term(rng.choice([NAT, Star(NAT)]), [x, y], fuel=rng.randint(3, 20))
        s = g.term(x.type, [y], fuel=rng.randint(1, 8))
        lhs = normalize(app(bracket(x, t), s), SN_BUDGET)
        rhs = normalize(subst_term(t, x, s), SN_BUDGET)
        if lhs != rhs:
            bad.append(f"[{x}] {t} applied to {s}")
    verdict("bracket abstraction simulates beta", not bad, f"200 cases, {len(bad)} mismatches")


def test_ac05_hr_invariants():
    rng = random.Random(SEED + 5)
    bad = []
    free_inputs = 0
    for _ in range(200):
        a = random_formula(rng, rng.randint(1, 4))
        h = hr_translate(a)
        if not all(_end_star(v.type) for v in h.evars):
            bad.append(f"{a}: evar not end-star")
        if not is_exists_free(h.matrix):
            bad.append(f"{a}: matrix has ∃")
        if is_exists_free(a):
            free_inputs += 1
            if h.evars or h.matrix != a:
                bad.append(f"{a}: ∃-free input changed")
    verdict("translation invariants", not bad and free_inputs > 0,
            f"200 formulas ({free_inputs} ∃-free), {len(bad)} violations")


def _end_star(ty):
    while isinstance(ty, Arrow):
        ty = ty.cod
    return isinstance(ty, Star)


def test_ac06_monotonicity():
    rng = random.Random(SEED + 6)
    bad, nontrivial = [], 0
    for _ in range(200):
        a = monotone_formula(rng, rng.randint(1, 4))
        small, big = random_witness_sets(rng, len(hr_translate(a).evars))
        h = hr_translate(a)
        before = eval_formula(subst_hr(h, small))
        if before.is_true:
            nontrivial += 1
        v = monotonicity_probe(a, small, big)
        if not v.is_true:
            bad.append(f"{show_formula(a)}: {v}")
    verdict("monotonicity at N*", not bad and nontrivial >= 20,
            f"200 instances ({nontrivial} with true antecedent), {len(bad)} counterexamples")


def subst_hr(h, sets):
    return hr_matrix_instantiate(h, [set_term(s) for s in sets])


def test_ac07_soundness_replay():
    rel = corpus.relations()
    cases = set(SCHEMAS) | set(RULES) | {"assumption"}
    seen = defaultdict(lambda: {"true": 0, "probe": 0, "false": 0, "open": 0})
    problems = []
    for path in corpus.proof_files():
        name = path.stem
        p, bs = corpus.proof(name), corpus.bundles(name)
        values = corpus.canonical_values(p)
        for ln in p.lines:
            b = bs[ln.number]
            for v, t in zip(b.hr.evars, b.terms):
                want = arrows([c.type for c in p.context], v.type)
                if not t.is_closed or typecheck(t, signature=p.signature) != want:
                    problems.append(f"{name}:{ln.number} realizer for {v.name} ill-typed")
            inst = instantiate_realizers(b.formula, p.context, values, b.terms)
            exact = eval_formula(inst, rel)
            stats = seen[corpus.case_name(ln.just)]
            if exact.is_false:
                stats["false"] += 1
                problems.append(f"{name}:{ln.number} realizer check False")
            elif exact.is_true:
                stats["true"] += 1
            else:
                pv = probe_eval(inst, p.signature, rel)
                if pv.is_false:
                    stats["false"] += 1
                    problems.append(f"{name}:{ln.number} probe counterexample")
                elif pv.is_true:
                    stats["probe"] += 1
                else:
                    stats["open"] += 1
    missing = sorted(cases - set(seen))
    unconfirmed = sorted(c for c in cases & set(seen) if not (seen[c]["true"] or seen[c]["probe"]))
    ok = not problems and not missing and not unconfirmed
    verdict("soundness replay", ok,
            f"{len(cases & set(seen))}/{len(cases)} cases covered, missing={missing}, "
            f"unconfirmed={unconfirmed}, problems={problems[:3]}")


def test_ac08_doubling_end_to_end():
    start = time.perf_counter()
    p = parse_proof((corpus.CORPUS / "doubling.prf").read_text())
    bs = extract_all(p)
    values = corpus.canonical_values(p)

    final = bs[p.final.number]
    (wset,) = final.witnesses(values).values()
    body = p.final.formula
    assert isinstance(body, Exists)
    disj = None
    for w in wset:
        inst = subst_formula(body.body, body.var, w)
        disj = inst if disj is None else Or(disj, inst)
    final_ok = eval_formula(disj).is_true

    total = [ln for ln in p.lines if isinstance(ln.formula, Forall) and isinstance(ln.formula.body, Exists)]
    r = bs[total[0].number].terms[0]
    contains = []
    for k in range(6):
        got = {as_numeral(e) for e in enumerate_set(app(r, *values, numeral(k)))}
        contains.append(2 * k in got)
    elapsed = time.perf_counter() - start
    verdict("doubling end to end", final_ok and all(contains) and elapsed < 30,
            f"witnesses {wset}, 2n found for n=0..5: {contains}, {elapsed:.1f}s")


def test_ac09_herbrand_accumulation():
    p, bs = corpus.proof("herbrand"), corpus.bundles("herbrand")
    used = {corpus.case_name(ln.just) for ln in p.lines}
    (wset,) = bs[p.final.number].witnesses([]).values()
    got = {as_numeral(e) for e in wset}
    # each route on its own commits to a single witness
    routes = [ln for ln in p.lines if show_formula(ln.formula).startswith("0 = ")
              and isinstance(ln.formula.right, Exists)]
    singles = [{as_numeral(e) for e in enumerate_set(bs[ln.number].terms[0])} for ln in routes]
    ok = "disj-idem" in used and {1, 2} <= got and {1} in singles and {2} in singles
    verdict("Herbrand accumulation", ok, f"routes {singles}, merged {sorted(got)}")


def _run(argv, capsys):
    code = main([str(a) for a in argv])
    capsys.readouterr()
    return code


def test_ac10_round_trip_and_exit_codes(tmp_path, capsys):
    bad = []
    files = 0
    for path in corpus.proof_files():
        files += 1
        text = path.read_text()
        p = parse_proof(text)
        again = parse_proof(show_proof(p))
        if show_proof(again) != show_proof(p) or not all(
                alpha_eq(a.formula, b.formula) and a.just == b.just for a, b in zip(p.lines, again.lines)):
            bad.append(f"{path.name}: round trip")
        out = tmp_path / f"{path.stem}.json"
        codes = [_run(["check", path], capsys), _run(["extract", path, "--out", out], capsys),
                 _run(["verify", out, "--relations", corpus.CORPUS / "relations.json"], capsys)]
        if codes != [0, 0, 0]:
            bad.append(f"{path.name}: exit codes {codes}")
    for kind, paths, cmd in [("term", corpus.term_files(), "normalize"),
                             ("formula", corpus.formula_files(), "translate")]:
        for path in paths:
            files += 1
            doc = parse_document(path.read_text(), kind)
            again = parse_document(show_document(doc), kind)
            if again.body != doc.body or show_document(again) != show_document(doc):
                bad.append(f"{path.name}: round trip")
            if _run([cmd, path], capsys) != 0:
                bad.append(f"{path.name}: {cmd} failed")
    expected = json.loads((corpus.CORPUS / "invalid" / "expected.json").read_text())
    for fname, spec in expected.items():
        files += 1
        code = _run([spec["command"][0], corpus.CORPUS / "invalid" / fname, *spec["command"][1:]], capsys)
        if code != spec["exit"]:
            bad.append(f"{fname}: exit {code}, expected {spec['exit']}")

    # a tampered witness is refuted, an unbounded line is undecidable
    p = corpus.proof("doubling")
    rep = build_report(p)
    tampered = json.loads(json.dumps(rep))
    goal = next(ln for ln in tampered["lines"] if ln["number"] == rep["goal"])
    goal["realizers"][0]["term"] = show_term(lam(list(p.context), set_term([numeral(0)])))
    tpath = tmp_path / "tampered.json"
    tpath.write_text(json.dumps(tampered))
    if _run(["verify", tpath], capsys) != 1:
        bad.append("tampered report not refuted")
    values = corpus.canonical_values(p)
    undecided = next(ln.number for ln in p.lines
                     if not free_vars(ln.formula)
                     and check_realizer(ln.formula, p.context, values,
                                        corpus.bundles("doubling")[ln.number].terms).undecidable)
    rpath = tmp_path / "doubling.json"
    rpath.write_text(json.dumps(rep))
    if _run(["verify", rpath, "--line", undecided], capsys) != 5:
        bad.append(f"line {undecided} not reported undecidable")
    verdict("round trip and exit codes", not bad, f"{files} files, problems={bad}")

