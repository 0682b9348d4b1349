"""Suite orchestration: fixtures × {hopf, galois, bialgebroid, twist, corollaries}."""

from __future__ import annotations

import time
from dataclasses import dataclass, field

from .bgd import HypothesisViolated, _hypothesis, es_bialgebroid, twist_theorem, verify_es
from .catalog import CATALOG
from .comod import verify_comodule_algebra, verify_measuring
from .cotwist import (
    cleftness_transport,
    cotwist_comodule_algebra,
    deformed_translation,
    galois_object_iso,
    omega_pipeline,
    twist_hopf,
)
from .crossed import verify_sigma_properties
from .fixtures import Fixture, FixtureSet, builtin_fixtures
from .galois import (
    build_cleft,
    build_galois,
    cleft_chi_inv,
    from_cleaving,
    verify_cleft,
    verify_galois,
    verify_translation_identities,
)
from .hopf import verify_hopf
from .linalg import LinMap, tensor
from .report import Check, Report

__all__ = ["SUITES", "SuiteReport", "UnknownSuite", "applicable", "run_suite", "run_all"]

SUITES = ("hopf", "galois", "bialgebroid", "twist", "corollaries")


class UnknownSuite(ValueError):
    def __init__(self, name: str):
        self.name = name
        super().__init__(f"unknown suite {name!r}; expected one of {', '.join(SUITES)}")


@dataclass
class SuiteReport:
    fixture: str
    suite: str
    checks: list[Check] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def failures(self) -> list[Check]:
        return [c for c in self.checks if not c.passed]


class _Run:
    """Collects checks for one fixture × suite; a stage that raises becomes a failing check."""

    def __init__(self, suite: str, timings: bool):
        self.suite = suite
        self.timings = timings
        self.rep = Report()

    def stage(self, fn, *args, **kw):
        t0 = time.perf_counter()
        start = len(self.rep.checks)
        try:
            out = fn(*args, **kw)
        except Exception as e:  # recorded, not propagated: the report carries the failure
            sub = getattr(e, "report", None)
            if isinstance(sub, Report) and sub.failures:
                self.rep.extend(sub)
            else:
                self.rep.add(f"{self.suite}.construction", (type(e).__name__, str(e)))
            out = None
        else:
            if isinstance(out, Report):
                self.rep.extend(out)
        if self.timings:
            dt = time.perf_counter() - t0
            for c in self.rep.checks[start:]:
                c.elapsed = dt
        return out

    def add(self, check_id: str, witness=None):
        self.rep.add(check_id, witness)


def applicable(fx: Fixture, suite: str) -> bool:
    if suite not in SUITES:
        raise UnknownSuite(suite)
    if suite == "hopf":
        return fx.kind == "hopf"
    if suite in ("galois", "bialgebroid"):
        return True
    if fx.kind != "crossed":
        return False
    if suite == "twist":
        try:
            _hypothesis(fx.cocycle)
        except HypothesisViolated:
            return False
        except Exception:
            return True  # let the suite record the construction failure
        return True
    return fx.is_galois_object


# ---------------------------------------------------------------------------
# suites


def _hopf_suite(fx: Fixture, run: _Run):
    run.stage(verify_hopf, fx.hopf)


def _cleft_reconstruction(fx: Fixture, cd) -> Report:
    """Cleaving map → crossed product → the original measuring and σ, with Θ a comodule algebra iso."""
    rep = Report()
    CP = fx.crossed
    CP2, theta = from_cleaving(CP.total, cd.gamma.map)
    H, B = CP.H, CP.B
    same_act = CP2.measuring.action.cols == CP.measuring.action.cols
    rep.add("thm.cleft-extension.reconstruct.action", None if same_act else ("action",))
    j = CP2.cocycle.sigma.first_mismatch(CP.cocycle.sigma)
    rep.add("thm.cleft-extension.reconstruct.sigma", None if j is None else CP.cocycle.sigma.domain.witness(j))
    A, A2 = CP.A, CP2.A
    bad = None
    for p in range(A2.dim):
        for q in range(A2.dim):
            if theta(A2.table[p][q]) != A.mul(theta.cols[p], theta.cols[q]):
                bad = (A2.space.labels[p], A2.space.labels[q])
                break
        if bad:
            break
    rep.add("thm.cleft-extension.reconstruct.theta-algebra", bad)
    lhs = tensor(theta, LinMap.identity(H.space)) @ CP2.total.coaction
    rhs = CP.total.coaction @ theta
    j = lhs.first_mismatch(rhs)
    rep.add("thm.cleft-extension.reconstruct.theta-colinear", None if j is None else A2.space.witness(j))
    return rep


def _cleft_inverse(CP, ext) -> Report:
    rep = Report()
    j = cleft_chi_inv(CP, ext).first_mismatch(ext.chi_inv)
    rep.add("eq.cleft-inverse", None if j is None else ext.chi.codomain.witness(j))
    return rep


def _galois_suite(fx: Fixture, run: _Run):
    if fx.kind == "crossed":
        run.stage(verify_measuring, fx.measuring)
        run.stage(lambda: fx.cocycle.verify())
        CP = run.stage(lambda: fx.crossed)
        if CP is None:
            return
        run.stage(lambda: verify_sigma_properties(fx.cocycle))
    run.stage(verify_comodule_algebra, fx.total)
    ext = run.stage(build_galois, fx.total)
    if ext is None:
        return
    run.stage(verify_galois, ext)
    run.stage(verify_translation_identities, ext)
    if fx.kind == "crossed":
        run.stage(_cleft_inverse, fx.crossed, ext)
        cd = run.stage(build_cleft, fx.crossed, ext)
        if cd is not None:
            run.stage(verify_cleft, cd, prefix="thm.cleft-extension")
            run.stage(_cleft_reconstruction, fx, cd)


def _es_dims(fx: Fixture, bg) -> Report:
    rep = Report()
    if fx.kind == "crossed":
        db, dh = fx.measuring.target.dim, fx.hopf.dim
        want = db * db * dh
        rep.add("es.dimension", None if bg.dim == want else ("dim", bg.dim, want))
    return rep


def _bialgebroid_suite(fx: Fixture, run: _Run):
    ext = run.stage(build_galois, fx.total)
    if ext is None:
        return
    bg = run.stage(es_bialgebroid, ext, check=False)
    if bg is None:
        return
    run.stage(verify_es, bg)
    run.stage(_es_dims, fx, bg)


def _twist_suite(fx: Fixture, run: _Run):
    run.stage(lambda: twist_theorem(fx.crossed, raise_on_failure=False).report)


def _corollary_suite(fx: Fixture, run: _Run):
    CP = run.stage(lambda: fx.crossed)
    if CP is None:
        return
    run.stage(lambda: galois_object_iso(CP).report)
    t = fx.twist
    if t is None:
        return
    run.stage(t.verify, "cotwist.twist")
    Hg = run.stage(twist_hopf, t)
    if Hg is None:
        return
    run.stage(lambda: Report().extend(verify_hopf(Hg), prefix="cotwist."))
    CAg = run.stage(cotwist_comodule_algebra, CP.total, t, Hg)
    if CAg is None:
        return
    run.stage(lambda: CAg.report)
    ext = build_galois(CP.total)
    ext_g = run.stage(build_galois, CAg)
    if ext_g is None:
        return
    run.stage(deformed_translation, ext_g, ext, t)
    cd = build_cleft(CP, ext)
    run.stage(lambda: cleftness_transport(cd, t, CAg, ext_g).report)
    run.stage(lambda: omega_pipeline(CP, t).report)


_RUNNERS = {
    "hopf": _hopf_suite,
    "galois": _galois_suite,
    "bialgebroid": _bialgebroid_suite,
    "twist": _twist_suite,
    "corollaries": _corollary_suite,
}


def run_suite(targets: list[str], suites: list[str] | None = None, fixtures: FixtureSet | None = None,
              timings: bool = False) -> list[SuiteReport]:
    """Run each applicable suite on each target, in target order then suite order.

    Explicitly requested (fixture, suite) pairs that do not apply are skipped.
    """
    fs = fixtures or builtin_fixtures()
    suites = list(SUITES) if not suites else list(suites)
    for s in suites:
        if s not in SUITES:
            raise UnknownSuite(s)
    order = [s for s in SUITES if s in suites]
    fxs = [fs.get(name) for name in targets]
    out = []
    for fx in fxs:
        for s in order:
            if not applicable(fx, s):
                continue
            run = _Run(s, timings)
            _RUNNERS[s](fx, run)
            for c in run.rep.checks:
                if c.id not in CATALOG:
                    raise KeyError(f"check id {c.id!r} is missing from the catalog")
            out.append(SuiteReport(fx.name, s, list(run.rep.checks)))
    return out


def run_all(fixtures: FixtureSet | None = None, timings: bool = False) -> list[SuiteReport]:
    fs = fixtures or builtin_fixtures()
    return run_suite(fs.visible(), list(SUITES), fs, timings)
