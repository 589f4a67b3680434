"""Exhaustive verification of the super domination results over all small trees.

Each registered check walks every tree in its order range (or every member
of a constructed family), records violations with a replayable edge list,
and never stops early. Reports are deterministic apart from ``elapsed_ms``.
"""

from __future__ import annotations

import json
import math
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import product
from typing import Callable

from . import families
from .enumeration import all_trees
from .errors import PreconditionError, SuperDomError, TheoremViolation
from .graph import (
    Graph,
    add_pendant,
    canonical_form,
    diameter,
    emit_edge_list,
    leaf_neighbors,
    leaves,
    strong_supports,
    supports,
    tree_from_canonical,
)
from .oracle import oracle_parameters
from .solvers import (
    all_gamma_sp_sets,
    gamma,
    gamma_sp,
    gamma_sp_witness,
    gamma_t,
    gamma_witness,
    is_dominating,
    is_super_dominating,
)
from .subdivision import (
    longest_path_pair_check,
    sd_gamma_sp,
    single_edge_effects,
    subdivision_number,
)
from .transform import normalize_for_leaf


@dataclass
class VerifyReport:
    theorem_id: str
    n_min: int
    n_max: int
    instances_checked: int = 0
    skipped_precondition: int = 0
    violations: list[dict] = field(default_factory=list)
    elapsed_ms: float = 0.0

    @property
    def verdict(self) -> str:
        return "fail" if self.violations else "pass"

    def to_dict(self) -> dict:
        return {
            "theorem_id": self.theorem_id,
            "n_min": self.n_min,
            "n_max": self.n_max,
            "instances_checked": self.instances_checked,
            "skipped_precondition": self.skipped_precondition,
            "violations": [{"tree": v["tree"], "detail": v["detail"]} for v in self.violations],
            "elapsed_ms": round(self.elapsed_ms, 3),
            "verdict": self.verdict,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


class _Recorder:
    def __init__(self):
        self.checked = 0
        self.skipped = 0
        self._found: list[tuple[bytes, str, str]] = []

    def violation(self, t: Graph, detail: str) -> None:
        self._found.append((canonical_form(t), emit_edge_list(t), detail))

    def run(self, t: Graph, fn: Callable[[Graph], None]) -> None:
        """Count ``t`` and run ``fn``; library errors become violations."""
        self.checked += 1
        try:
            fn(t)
        except TheoremViolation as exc:
            self.violation(t, str(exc).split("\n", 1)[0])
        except SuperDomError as exc:
            self.violation(t, f"{type(exc).__name__}: {exc}")

    def violations(self) -> list[dict]:
        return [{"tree": e, "detail": d} for _, e, d in sorted(self._found)]


@dataclass(frozen=True)
class Check:
    theorem_id: str
    summary: str
    n_min: int
    cap: int
    run: Callable[[int, int, _Recorder], None]


def _trees(lo: int, hi: int):
    for n in range(max(lo, 1), hi + 1):
        yield from all_trees(n)


def _expect(cond: bool, detail: str) -> None:
    if not cond:
        raise TheoremViolation(detail)


# --------------------------------------------------------------------------- checks


def _check_bounds(lo, hi, rec):
    def one(t):
        g, sp = gamma(t), gamma_sp(t)
        _expect(is_dominating(t, gamma_witness(t)), "gamma witness is not dominating")
        _expect(is_super_dominating(t, gamma_sp_witness(t)), "gamma_sp witness is not super dominating")
        _expect(g <= sp, f"gamma={g} > gamma_sp={sp}")
        _expect(math.ceil(t.n / 2) <= sp <= t.n - 1, f"gamma_sp={sp} outside [ceil(n/2), n-1]")
        _expect(g <= t.n // 2, f"gamma={g} > floor(n/2)")

    for t in _trees(lo, hi):
        rec.run(t, one)


def _closure_equality(lo, hi, rec, fam, predicate, extra=None):
    closure = families.enumerate_family(fam, hi) if hi >= 1 else frozenset()
    seen = set()

    def one(t):
        form = canonical_form(t)
        seen.add(form)
        holds = predicate(t)
        member = form in closure
        _expect(holds == member, f"equality={holds} but {fam} closure membership={member}")
        if extra:
            extra(t, member)

    for t in _trees(lo, hi):
        rec.run(t, one)
    for form in sorted(closure - seen):
        t = tree_from_canonical(form)
        if t.n >= lo:
            rec.violation(t, f"{fam} closure member outside the enumerated trees")


def _check_thm25(lo, hi, rec):
    def corona_agrees(t, member):
        _expect(families.is_corona(t) == member, "corona recognizer disagrees with closure")

    def equal(t):
        g, sp = gamma(t), gamma_sp(t)
        _expect(g <= sp, f"gamma={g} > gamma_sp={sp}")
        return g == sp

    _closure_equality(lo, hi, rec, "Corona", equal, corona_agrees)


def _check_thm26(lo, hi, rec):
    def certified(t, member):
        _expect(families.recognize_T(t) == member, "labeled-peel recognizer disagrees with closure")

    def equal(t):
        gt, sp = gamma_t(t), gamma_sp(t)
        _expect(3 * gt <= 4 * sp, f"3*gamma_t={3 * gt} > 4*gamma_sp={4 * sp}")
        return 3 * gt == 4 * sp

    _closure_equality(max(lo, 3), hi, rec, "T_family", equal, certified)


def _check_thm28(lo, hi, rec):
    def certified(t, member):
        cert = families.certify_R(t)
        _expect((cert is not None) == member, "pair-peel certificate disagrees with closure")
        _expect(families.is_in_R(t) == member, "is_in_R disagrees with closure")
        if cert is not None:
            replayed = cert.replay()
            _expect(canonical_form(replayed) == canonical_form(t), "certificate replay not isomorphic")
            mapped = {tuple(sorted((cert.vertex_map[u], cert.vertex_map[v]))) for u, v in replayed.edges}
            _expect(mapped == set(t.edges), "certificate vertex map is not an isomorphism")

    _closure_equality(lo, hi, rec, "R", lambda t: 2 * gamma_sp(t) == t.n, certified)


def _check_thm31(lo, hi, rec):
    def one(t):
        base = gamma_sp(t)
        for e, new in single_edge_effects(t):
            _expect(new >= base, f"subdividing {e} lowers gamma_sp {base}->{new}")
        sd_gamma_sp(t)
        if diameter(t) >= 4:
            _expect(longest_path_pair_check(t), "longest-path edge pair does not raise gamma_sp")

    for t in _trees(max(lo, 2), hi):
        rec.run(t, one)


def _check_thm34(lo, hi, rec):
    def certified(t, member):
        _expect((families.certify_U(t) is not None) == member, "star-peel certificate disagrees with closure")

    def class2(t):
        return subdivision_number(t).sd == 2

    _closure_equality(max(lo, 2), hi, rec, "U_family", class2, certified)


def _check_thm35(lo, hi, rec):
    closure = families.enumerate_family("U_family", hi) if hi >= 3 else frozenset()

    def one(t):
        class1 = subdivision_number(t).sd == 1
        in_p = canonical_form(t) not in closure
        _expect(class1 == in_p, f"Class 1={class1} but outside U closure={in_p}")

    for t in _trees(max(lo, 2), hi):
        rec.run(t, one)


def _check_obs22(lo, hi, rec):
    def one(t):
        for s in all_gamma_sp_sets(t):
            for v in supports(t):
                group = [v] + leaf_neighbors(t, v)
                out = [w for w in group if w not in s]
                _expect(len(out) <= 1, f"support {v}: {out} all outside {sorted(s)}")

    for t in _trees(max(lo, 2), hi):
        rec.run(t, one)


def _check_obs23(lo, hi, rec):
    def one(t):
        strong = list(strong_supports(t))
        base = gamma_sp(t)
        leafs = {u: sorted(leaf_neighbors(t, u)) for u in strong}
        ranges = [range(min(t.degree(u) - 2, len(leafs[u]) - 1) + 1) for u in strong]
        for xs in product(*ranges):
            drop = [w for u, x in zip(strong, xs) for w in leafs[u][len(leafs[u]) - x:]]
            smaller, _ = t.induced(v for v in range(t.n) if v not in drop)
            _expect(
                gamma_sp(smaller) == base - sum(xs),
                f"deleting {sum(xs)} leaves: gamma_sp {gamma_sp(smaller)} != {base} - {sum(xs)}",
            )

    for t in _trees(max(lo, 2), hi):
        if len(strong_supports(t)) == 0:
            rec.skipped += 1
            continue
        rec.run(t, one)


def _check_prop24(lo, hi, rec):
    def one(t):
        optimal = set(all_gamma_sp_sets(t))
        for s in sorted(optimal):
            for v in leaves(t):
                out = normalize_for_leaf(t, s, v)
                _expect(out in optimal, f"normalized set {sorted(out)} is not a minimum set")

    for t in _trees(max(lo, 2), hi):
        rec.run(t, one)


def _check_pendant(lo, hi, rec):
    def one(t):
        g, gt, sp = gamma(t), gamma_t(t), gamma_sp(t)
        for v in supports(t):
            bigger = add_pendant(t, v)
            _expect(gamma_sp(bigger) == sp + 1, f"pendant at support {v}: gamma_sp not +1")
            _expect(gamma(bigger) == g, f"pendant at support {v}: gamma changed")
            _expect(gamma_t(bigger) == gt, f"pendant at support {v}: gamma_t changed")

    for t in _trees(max(lo, 2), hi):
        rec.run(t, one)


def _t_members(lo, hi):
    if hi < 6:
        return []
    return [lt for lt in families.t_family_members(hi) if lt.tree.n >= lo]


def _check_obs29(lo, hi, rec):
    for lt in _t_members(lo, hi):
        def one(t, lt=lt):
            props = families.labeling_properties(lt)
            failed = [k for k, ok in props.items() if not ok]
            _expect(not failed, f"labeled member fails properties {failed}")
            _expect(lt.status == families.forced_labeling(t), "labeling differs from the forced one")

        rec.run(lt.tree, one)


def _check_lem210(lo, hi, rec):
    for lt in _t_members(lo, hi):
        def one(t, lt=lt):
            for v in leaves(t):
                _expect(families.deficient_total_set(lt, v) is not None, f"no set X for leaf {v}")

        rec.run(lt.tree, one)


def _check_lem211(lo, hi, rec):
    for lt in _t_members(lo, hi):
        def one(t):
            gt, sp = gamma_t(t), gamma_sp(t)
            _expect(3 * gt == 4 * sp, f"gamma_t={gt}, gamma_sp={sp}")

        rec.run(lt.tree, one)


def _check_oracle(lo, hi, rec):
    def one(t):
        expected = oracle_parameters(t)
        got = {"gamma": gamma(t), "gamma_t": gamma_t(t), "gamma_sp": gamma_sp(t)}
        _expect(got == expected, f"solver {got} != oracle {expected}")

    for t in _trees(max(lo, 2), hi):
        rec.run(t, one)


CHECKS: dict[str, Check] = {
    c.theorem_id: c
    for c in [
        Check("bounds", "gamma <= gamma_sp, ceil(n/2) <= gamma_sp <= n-1, gamma <= floor(n/2)", 2, 12, _check_bounds),
        Check("thm2.5", "gamma = gamma_sp exactly on coronas", 2, 12, _check_thm25),
        Check("thm2.6", "3 gamma_t <= 4 gamma_sp, equality exactly on the T closure", 3, 12, _check_thm26),
        Check("thm2.8", "gamma_sp = n/2 exactly on the R closure, certificates replay", 2, 12, _check_thm28),
        Check("thm3.1", "sd_gamma_sp <= 2; longest-path pair raises gamma_sp", 2, 10, _check_thm31),
        Check("thm3.4", "Class 2 exactly on the U closure", 2, 10, _check_thm34),
        Check("thm3.5", "Class 1 exactly outside the U closure", 2, 10, _check_thm35),
        Check("obs2.2", "support and its leaves: at most one outside any minimum set", 2, 10, _check_obs22),
        Check("obs2.3", "deleting surplus leaves lowers gamma_sp one for one", 2, 12, _check_obs23),
        Check("prop2.4", "every minimum set normalizes to one avoiding any leaf", 2, 10, _check_prop24),
        Check("pendant", "pendant leaf at a support: gamma_sp +1, gamma and gamma_t fixed", 2, 10, _check_pendant),
        Check("obs2.9", "structure of labeled T members", 6, 12, _check_obs29),
        Check("lem2.10", "T members: X of size gamma_t - 1 through each leaf", 6, 12, _check_lem210),
        Check("lem2.11", "T members: 3 gamma_t = 4 gamma_sp", 6, 12, _check_lem211),
        Check("oracle", "solvers agree with the unpruned power-set oracle", 2, 9, _check_oracle),
    ]
}


def verify(theorem_id: str, n_max: int) -> VerifyReport:
    check = CHECKS.get(theorem_id)
    if check is None:
        raise PreconditionError(f"unknown theorem id {theorem_id!r}; valid ids: {', '.join(CHECKS)}")
    hi = min(n_max, check.cap)
    rec = _Recorder()
    start = time.perf_counter()
    if hi >= check.n_min:
        check.run(check.n_min, hi, rec)
    elapsed = (time.perf_counter() - start) * 1000
    return VerifyReport(
        theorem_id, check.n_min, hi, rec.checked, rec.skipped, rec.violations(), elapsed
    )


def default_workers() -> int:
    try:
        return max(1, int(os.environ.get("SUPERDOM_THREADS", "1")))
    except ValueError:
        return 1


def verify_all(n_max: int, workers: int | None = None, theorem_ids=None) -> list[VerifyReport]:
    """Run every registered check (or ``theorem_ids``) at its own cap; reports in registry order."""
    ids = list(CHECKS) if theorem_ids is None else list(theorem_ids)
    for tid in ids:
        if tid not in CHECKS:
            raise PreconditionError(f"unknown theorem id {tid!r}; valid ids: {', '.join(CHECKS)}")
    workers = default_workers() if workers is None else workers
    if workers <= 1 or len(ids) <= 1:
        return [verify(tid, n_max) for tid in ids]
    with ProcessPoolExecutor(max_workers=min(workers, len(ids))) as pool:
        return list(pool.map(verify, ids, [n_max] * len(ids)))
