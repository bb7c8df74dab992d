"""Parameter grids for every verification suite and a deterministic runner.

A task is a zero-argument callable returning a VerificationReport.  The
runner may execute tasks on several threads; reports are always returned
sorted by (suite, id, params), so the output does not depend on scheduling.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from functools import partial
from itertools import product

from . import qbernoulli as qb
from .algebra.laurent import eps_expand
from .identities import catalog
from .identities import verify as V
from .identities.evaluate import _power_sum_flint, evaluate_tree
from .padic import VolkenbornParams, moment_check, shift_identity_check
from .qbernoulli import (
    classical_bernoulli,
    power_sum,
    qbernoulli_affine,
    qbernoulli_number,
)
from .report import FAIL, PASS, Clock, VerificationReport


def w_grid(w_max: int, slots: int = 3):
    return list(product(range(1, w_max + 1), repeat=slots))


def family_tasks(families, n_max: int, ws) -> list:
    return [partial(V.verify_family, f, n, w) for f in families for w in ws for n in range(n_max + 1)]


def corollary_tasks(ids, n_max: int, w_max: int) -> list:
    tasks = []
    for cid in ids:
        free = len(catalog.COROLLARIES[cid].free_slots)
        for values in w_grid(w_max, free):
            tasks += [partial(V.verify_corollary, cid, n, values) for n in range(n_max + 1)]
    return tasks


def chain_tasks(n_max: int, w_max: int) -> list:
    return [partial(V.verify_intro_chain, n, a, b) for a, b in w_grid(w_max, 2) for n in range(n_max + 1)]


def auxiliary_tasks(n_max: int, w_max: int) -> list:
    return [
        partial(V.verify_auxiliary, aux.id, n, w)
        for aux in catalog.AUXILIARY
        for w in w_grid(w_max)
        for n in range(n_max + 1)
    ]


def expansion_tasks(ids, K: int, w_max: int) -> list:
    return [partial(V.crosscheck_expansion, e, w, K) for e in ids for w in w_grid(w_max)]


def lambda13_tasks(K: int, w_max: int) -> list:
    return [partial(V.lambda13_check, i, w, K) for i in range(4) for w in w_grid(w_max)]


def multiplication_tasks(K: int, w_max: int) -> list:
    tasks = []
    for w in range(1, w_max + 1):
        tasks += [
            partial(V.multiplication_coefficient_check, w, K),
            partial(V.multiplication_series_check, w, K),
            partial(V.multiplication_specialization_match, w, K),
        ]
    return tasks


def padic_tasks(primes, q, n_max: int, N_list, M: int) -> list:
    """Moment and shift checks; q=None means q = 1 + p for each p."""
    tasks = []
    for p in primes:
        params = VolkenbornParams(p, q if q is not None else 1 + p, max(N_list), M)
        for n in range(n_max + 1):
            tasks.append(partial(moment_check, n, params, N_list))
            tasks.append(partial(shift_identity_check, n, params))
    return tasks


def limit_check(n: int) -> VerificationReport:
    """eps^0 coefficient of B_{n,q} at q = 1 + eps against the classical B_n."""
    with Clock() as clock:
        got = eps_expand(qbernoulli_number(n), 1).coefficient(0)
        want = classical_bernoulli(n)
    status = PASS if got == want else FAIL
    detail = None if status == PASS else {"expected": str(want), "got": str(got)}
    return VerificationReport("limit", "classical", {"n": n}, status, detail, [], clock.millis)


def limit_tasks(n_max: int) -> list:
    return [partial(limit_check, n) for n in range(n_max + 1)]


def reset_caches() -> None:
    """Drop every memo table so the next run recomputes from scratch."""
    evaluate_tree.cache_clear()
    _power_sum_flint.cache_clear()
    qbernoulli_affine.cache_clear()
    power_sum.cache_clear()
    qb._CACHES.clear()


def run_tasks(tasks, jobs: int = 1) -> list[VerificationReport]:
    if jobs <= 1:
        reports = [t() for t in tasks]
    else:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            reports = list(pool.map(lambda t: t(), tasks))
    return sorted(reports, key=VerificationReport.sort_key)


def summarize(reports) -> dict:
    failed = sum(1 for r in reports if not r.passed)
    return {
        "total": len(reports),
        "passed": len(reports) - failed,
        "failed": failed,
        "flagged": sum(1 for r in reports if r.suite == "family" and r.flags),
    }
