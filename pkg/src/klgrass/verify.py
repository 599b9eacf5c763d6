"""Batch verification of the factorization results, with structured reports.

Each check runs over every shape (n, k) with n <= max_n and produces one
:class:`CheckItem` per diagram (or per parabolic subset / per n for the
algebra-wide checks).  A failing item always carries a counterexample.
"""
from __future__ import annotations

import os
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from itertools import chain, combinations, permutations
from typing import Callable

from .combinatorics import (
    GrassmannShape,
    YoungDiagram,
    all_diagrams,
    reduced_word,
    shifts,
    to_sign_sequence,
)
from .dual import (
    MultilinearPoly,
    dual_parabolic_kl,
    factorized_dual,
    iso_to_poly,
    q_factors,
    q_polynomial,
)
from .hecke import (
    _swap_values,
    all_reduced_words,
    apply_factors,
    c_parabolic,
    grassmannian_perm,
    kl_element,
    longest_parabolic,
    max_coset_rep,
    perm_reduced_word,
    x_lambda,
    x_lambda_factors,
    yang_baxter,
    yb_scalars,
)
from .laurent import RationalFunction
from .parabolic import apply_x_lambda, check_leading_term, kl_by_signs, valuation_report

__all__ = ["CHECKS", "CheckItem", "RunReport", "run_checks", "MODULE_MAX_N", "ALGEBRA_MAX_N"]

CHECKS = ("main", "regularity", "hecke", "lemma1", "yang-baxter", "dual")
ALGEBRA_CHECKS = {"hecke", "lemma1", "yang-baxter"}
MODULE_MAX_N = 8
ALGEBRA_MAX_N = 6
FAULTS = ("shift", "pairing")
YB_SAMPLE_PAIRS = 200


@dataclass
class CheckItem:
    check: str
    n: int
    k: int | None
    subject: str
    passed: bool
    ms: float = 0.0
    counterexample: dict | None = None

    def sort_key(self):
        return (CHECKS.index(self.check), self.n, self.k or 0, self.subject)


@dataclass
class RunReport:
    max_n: int
    checks: list[str]
    fault: str | None = None
    items: list[CheckItem] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(it.passed for it in self.items)

    def failures(self) -> list[CheckItem]:
        return [it for it in self.items if not it.passed]

    def summary(self) -> dict[str, tuple[int, int]]:
        out = {}
        for c in self.checks:
            its = [it for it in self.items if it.check == c]
            out[c] = (sum(it.passed for it in its), len(its))
        return out

    def to_json(self, timings: bool = False) -> dict:
        items = []
        for it in self.items:
            d = asdict(it)
            if not timings:
                d.pop("ms")
            if d["counterexample"] is None:
                d.pop("counterexample")
            items.append(d)
        return {
            "max_n": self.max_n,
            "checks": list(self.checks),
            "fault": self.fault,
            "passed": self.passed,
            "summary": {c: {"passed": p, "total": t} for c, (p, t) in self.summary().items()},
            "items": items,
        }


def _diagram_label(lam: YoungDiagram) -> str:
    return f"({','.join(map(str, lam.rows))})"


def _first_mismatch(a: dict, b: dict) -> tuple | None:
    for key in sorted(set(a) | set(b), key=str):
        ca, cb = a.get(key), b.get(key)
        if ca != cb:
            return key, ca, cb
    return None


def _coeff_str(c) -> str:
    return "0" if c is None else str(c)


# --------------------------------------------------------------------------
# fault injection (negative controls)
# --------------------------------------------------------------------------

def _factors(lam: YoungDiagram, fault: str | None):
    factors = x_lambda_factors(lam)
    if fault == "shift" and factors:
        i, r = factors[-1]
        factors[-1] = (i, r + 1)
    return factors


def _q_poly(eps: str, fault: str | None) -> MultilinearPoly:
    if fault != "pairing":
        return q_polynomial(eps)
    # wrong pairing: every pair exponent one too small
    n = len(eps)
    pre, singles, pairs = q_factors(eps)
    f = MultilinearPoly(n, {(): RationalFunction.monomial(pre)})
    for i in singles:
        f = f * MultilinearPoly(n, {(i,): 1})
    for i, j, e in pairs:
        f = f * MultilinearPoly(n, {(i,): 1, (j,): RationalFunction.monomial(e - 1, -1)})
    return f


# --------------------------------------------------------------------------
# per-item checks
# --------------------------------------------------------------------------

def _check_main(lam: YoungDiagram, fault):
    got = apply_x_lambda(lam, _factors(lam, fault))
    want = kl_by_signs(to_sign_sequence(lam))
    if got == want:
        return True, None
    eps, a, b = _first_mismatch(got.terms, want.terms)
    return False, {"lambda": list(lam.rows), "sign": eps,
                   "factorized": _coeff_str(a), "oracle": _coeff_str(b)}


def _check_regularity(lam: YoungDiagram, fault):
    x = apply_x_lambda(lam, _factors(lam, fault))
    rep = valuation_report(lam, x)
    lead_ok = check_leading_term(lam, x)
    if lead_ok and not rep["violations"]:
        return True, None
    ce = {"lambda": list(lam.rows), "leading_term_ok": lead_ok}
    if rep["violations"]:
        ce["violation"] = rep["violations"][0]
    else:
        lead = to_sign_sequence(lam)
        bad = [e for e, c in x.terms.items() if (e == lead) != (c.valuation() == 0)]
        e = sorted(bad)[0] if bad else lead
        ce.update(sign=e, coeff=_coeff_str(x.terms.get(e)))
    return False, ce


def _check_dual(lam: YoungDiagram, fault):
    k = lam.shape.k
    y = grassmannian_perm(lam)
    eps = to_sign_sequence(lam)
    q = _q_poly(eps, fault)
    oracle = iso_to_poly(dual_parabolic_kl(y, k))
    fact = iso_to_poly(factorized_dual(y, k))
    for name, other in (("oracle", oracle), ("factorized", fact)):
        if q != other:
            mono, a, b = _first_mismatch(q.terms, other.terms)
            return False, {"lambda": list(lam.rows), "sign": eps, "against": name,
                           "monomial": list(mono), "q_polynomial": _coeff_str(a),
                           name: _coeff_str(b)}
    return True, None


def _check_hecke(lam: YoungDiagram, fault):
    J = lam.shape.J
    n = lam.shape.n
    prod = apply_factors(_factors(lam, fault), c_parabolic(J, n))
    tau = max_coset_rep(grassmannian_perm(lam), J)
    want = kl_element(tau)
    if not prod.is_integral():
        w = next(w for w, c in sorted(prod.terms.items()) if not c.is_laurent())
        return False, {"lambda": list(lam.rows), "perm": list(w),
                       "non_integral": str(prod.terms[w])}
    if prod != want:
        w, a, b = _first_mismatch(prod.terms, want.terms)
        return False, {"lambda": list(lam.rows), "perm": list(w),
                       "product": _coeff_str(a), "kl_element": _coeff_str(b)}
    return True, None


def _check_module_algebra_equivalence(lam: YoungDiagram, fault):
    # X m_1 = C^J_tau  <=>  X C_J = C_{tau w_0^J}, both sides computed independently
    J = lam.shape.J
    factors = _factors(lam, fault)
    module_side = apply_x_lambda(lam, factors) == kl_by_signs(to_sign_sequence(lam))
    algebra_side = (apply_factors(factors, c_parabolic(J, lam.shape.n))
                    == kl_element(max_coset_rep(grassmannian_perm(lam), J)))
    if module_side == algebra_side:
        return True, None
    return False, {"lambda": list(lam.rows), "module_side": module_side,
                   "algebra_side": algebra_side}


def _check_witness(n: int):
    """Some X_lambda for S_n has a non-Laurent coefficient."""
    for k in range(1, n):
        for lam in all_diagrams(GrassmannShape(n, k)):
            if max(shifts(lam).values(), default=0) >= 2 and not x_lambda(lam).is_integral():
                return True, None, _diagram_label(lam) + f" k={k}"
    return False, {"n": n, "reason": "every X_lambda is integral"}, "-"


def _subsets(n: int):
    gens = range(1, n)
    return chain.from_iterable(combinations(gens, m) for m in range(n))


def _check_parabolic_J(n: int, J: tuple[int, ...]):
    cj = c_parabolic(J, n)
    w0 = longest_parabolic(J, n)
    word = perm_reduced_word(w0)
    for name, other in (("kl_element", kl_element(w0)), ("yang_baxter", yang_baxter(word, n))):
        if cj != other:
            w, a, b = _first_mismatch(cj.terms, other.terms)
            return False, {"J": list(J), "perm": list(w), "c_parabolic": _coeff_str(a),
                           name: _coeff_str(b)}
    return True, None


def _check_yb_words(n: int, seed: int = 0):
    """Yang-Baxter element independent of reduced word: all words n <= 4, sampled pairs above."""
    rng = random.Random(seed)
    perms = sorted(permutations(range(1, n + 1)))
    if n <= 4:
        for w in perms:
            words = all_reduced_words(w)
            ref = yang_baxter(words[0], n)
            for word in words[1:]:
                if yang_baxter(word, n) != ref:
                    return False, {"perm": list(w), "words": [list(words[0]), list(word)]}
        return True, None
    for _ in range(YB_SAMPLE_PAIRS):
        w = rng.choice(perms)
        a, b = _random_reduced_word(w, rng), _random_reduced_word(w, rng)
        if yang_baxter(a, n) != yang_baxter(b, n):
            return False, {"perm": list(w), "words": [list(a), list(b)]}
    return True, None


def _random_reduced_word(w, rng: random.Random) -> tuple[int, ...]:
    word = []
    while True:
        desc = [i for i in range(1, len(w)) if w.index(i + 1) < w.index(i)]
        if not desc:
            return tuple(word)
        i = rng.choice(desc)
        word.append(i)
        w = _swap_values(w, i)


def _check_rectangle(shape: GrassmannShape):
    """Rectangle case: X_rect C_J = C_{w_0}; YB scalars over the X prefix equal the shifts."""
    n, k = shape.n, shape.k
    rect = YoungDiagram([n - k] * k, shape)
    word = reduced_word(rect) + list(perm_reduced_word(longest_parabolic(shape.J, n)))
    rs = yb_scalars(word, n)[: len(reduced_word(rect))]
    expected = [r for _, r in x_lambda_factors(rect)]
    if rs != expected:
        return False, {"lambda": list(rect.rows), "yb_scalars": rs, "shifts": expected}
    prod = apply_factors(x_lambda_factors(rect), c_parabolic(shape.J, n))
    w0 = tuple(range(n, 0, -1))
    if prod != kl_element(w0):
        w, a, b = _first_mismatch(prod.terms, kl_element(w0).terms)
        return False, {"lambda": list(rect.rows), "perm": list(w),
                       "product": _coeff_str(a), "kl_element": _coeff_str(b)}
    return True, None


# --------------------------------------------------------------------------
# task planning and execution
# --------------------------------------------------------------------------

_PER_DIAGRAM: dict[str, Callable] = {
    "main": _check_main,
    "regularity": _check_regularity,
    "dual": _check_dual,
    "hecke": _check_hecke,
    "lemma1": _check_module_algebra_equivalence,
}


def _plan(checks, max_n: int, algebra_max_n: int):
    """Tasks are (check, n, k) tuples; each is run whole inside one worker."""
    tasks = []
    for check in checks:
        top = algebra_max_n if check in ALGEBRA_CHECKS else max_n
        for n in range(2, top + 1):
            if check == "yang-baxter":
                tasks.append((check, n, None))
            for k in range(1, n):
                tasks.append((check, n, k))
            if check == "hecke" and n >= 3:
                # S_2 has only lambda = (1), whose single factor T_1 - v is integral
                tasks.append(("hecke-witness", n, None))
    return tasks


def _timed(fn, *args):
    t0 = time.perf_counter()
    out = fn(*args)
    return out, (time.perf_counter() - t0) * 1000.0


def _run_task(task, fault):
    check, n, k = task
    items = []
    if check == "hecke-witness":
        (ok, ce, label), ms = _timed(_check_witness, n)
        items.append(CheckItem("hecke", n, None, f"witness {label}", ok, ms, ce))
    elif check == "yang-baxter":
        if k is None:
            (ok, ce), ms = _timed(_check_yb_words, n)
            items.append(CheckItem(check, n, None, "reduced-word independence", ok, ms, ce))
            for J in _subsets(n):
                (ok, ce), ms = _timed(_check_parabolic_J, n, J)
                items.append(CheckItem(check, n, None, f"J={{{','.join(map(str, J))}}}", ok, ms, ce))
        else:
            (ok, ce), ms = _timed(_check_rectangle, GrassmannShape(n, k))
            items.append(CheckItem(check, n, k, "rectangle", ok, ms, ce))
    else:
        fn = _PER_DIAGRAM[check]
        for lam in all_diagrams(GrassmannShape(n, k)):
            (ok, ce), ms = _timed(fn, lam, fault)
            items.append(CheckItem(check, n, k, _diagram_label(lam), ok, ms, ce))
    return items


def run_checks(max_n: int, checks=CHECKS, *, force: bool = False, jobs: int | None = None,
               fault: str | None = None) -> RunReport:
    """Run the requested checks for every n <= max_n; raises ValueError above resource bounds."""
    unknown = set(checks) - set(CHECKS)
    if unknown:
        raise ValueError(f"unknown checks: {sorted(unknown)}")
    checks = [c for c in CHECKS if c in set(checks)]
    if fault is not None and fault not in FAULTS:
        raise ValueError(f"unknown fault {fault!r}; choose from {FAULTS}")
    if max_n < 2:
        raise ValueError("max_n must be at least 2")
    if not force:
        if max_n > MODULE_MAX_N:
            raise ValueError(f"max_n={max_n} exceeds {MODULE_MAX_N}; pass force to run anyway")
        algebra_max_n = min(max_n, ALGEBRA_MAX_N)
    else:
        algebra_max_n = max_n
    tasks = _plan(checks, max_n, algebra_max_n)
    report = RunReport(max_n=max_n, checks=checks, fault=fault)
    jobs = jobs or os.cpu_count() or 1
    if jobs <= 1 or len(tasks) <= 1:
        results = [_run_task(t, fault) for t in tasks]
    else:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_run_task, tasks, [fault] * len(tasks)))
    report.items = sorted((it for chunk in results for it in chunk), key=CheckItem.sort_key)
    return report
