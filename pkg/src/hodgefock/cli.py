"""Batch verification driver.

`hodgefock verify <suite>` sweeps the identity checks over a parameter
grid d in 1..max_dim, n in 1..max_n and all k, one case per block, and
emits a report.  Reports are deterministic given the config: no
timestamps, no timings, rationals rendered as exact "p/q" strings, cases
sorted by (suite, d, n, k, name).  Cases run on a process pool whose
size is taken from HODGEFOCK_WORKERS when set; results are aggregated
and then sorted, so the output does not depend on the worker count.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from math import comb

from . import __version__
from .chaos import (
    FormField,
    chaos_field,
    codifferential,
    commutation_defect,
    exp_vector,
    exterior_derivative,
    gaussian_inner,
    hodge_laplacian,
)
from .errors import ConfigError
from .fock_ops import alt_subset, lower, operator_matrix, raise_, symmetric_group, sym_subset
from .hodge import exactness_report, hodge_split, random_tensor, weitzenboeck_defect, witnesses
from .rep_theory import (
    action_trace,
    embedded_subspace,
    intersect,
    orbit_span,
    orbit_split_spaces,
    span_all_positions,
)
from .tensor_core import FockTensor, MixedIndex, block_dim, enum_basis, inner

SUITES = ("weitzenboeck", "exactness", "split", "decomposition", "rep", "chaos")


@dataclass(frozen=True)
class VerifyConfig:
    suite: str = "all"
    max_dim: int = 3
    max_n: int = 4
    trials: int = 20
    seed: int = 0
    dim: int | None = None
    n: int | None = None
    k: int | None = None
    q: int | None = None
    format: str = "text"
    out: str | None = None

    def validate(self) -> None:
        if self.suite != "all" and self.suite not in SUITES:
            raise ConfigError(f"unknown suite {self.suite!r}")
        if self.max_dim < 1:
            raise ConfigError(f"max_dim must be >= 1, got {self.max_dim}")
        if self.max_n < 1:
            raise ConfigError(f"max_n must be >= 1, got {self.max_n}")
        if self.trials < 0:
            raise ConfigError(f"trials must be >= 0, got {self.trials}")
        if self.format not in ("json", "text"):
            raise ConfigError(f"unknown format {self.format!r}")
        for name in ("dim", "n"):
            v = getattr(self, name)
            if v is not None and v < 1:
                raise ConfigError(f"{name} must be >= 1, got {v}")
        for name in ("k", "q"):
            v = getattr(self, name)
            if v is not None and v < 0:
                raise ConfigError(f"{name} must be >= 0, got {v}")
        if (
            self.n is not None
            and self.k is not None
            and self.q is not None
            and self.k + self.q != self.n
        ):
            raise ConfigError(f"inconsistent filters: k + q = {self.k + self.q} != n = {self.n}")

    def as_dict(self) -> dict:
        return {
            "suite": self.suite,
            "max_dim": self.max_dim,
            "max_n": self.max_n,
            "trials": self.trials,
            "seed": self.seed,
            "dim": self.dim,
            "n": self.n,
            "k": self.k,
            "q": self.q,
            "format": self.format,
            "out": self.out,
        }


@dataclass
class Report:
    tool: str
    version: str
    config: dict
    cases: list = field(default_factory=list)
    status: str = "pass"

    def as_dict(self) -> dict:
        return {
            "tool": self.tool,
            "version": self.version,
            "config": self.config,
            "cases": self.cases,
            "status": self.status,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "Report":
        return cls(
            tool=data["tool"],
            version=data["version"],
            config=data["config"],
            cases=data["cases"],
            status=data["status"],
        )


def _rng(seed: int, *tags) -> random.Random:
    return random.Random(":".join([str(seed), *map(str, tags)]))


def _case_weitzenboeck(d: int, n: int, k: int, seed: int, trials: int):
    q = n - k
    defect = weitzenboeck_defect(d, k, q)
    details = {"dim": block_dim(d, k, q), "defect": str(defect)}
    return ("pass" if defect == 0 else "fail"), details


def _case_exactness(d: int, n: int, k: int, seed: int, trials: int):
    rep = exactness_report(d, n)
    row = rep.row(k)
    lower_ok = row.ker_lower == (rep.row(k + 1).rank_lower if k < n else 0)
    raise_ok = row.ker_raise == (rep.row(k - 1).rank_raise if k > 0 else 0)
    counts_ok = (
        row.rank_lower + row.ker_lower == row.dim
        and row.rank_raise + row.ker_raise == row.dim
    )
    details = {
        "dim": row.dim,
        "rank_lower": row.rank_lower,
        "ker_lower": row.ker_lower,
        "rank_raise": row.rank_raise,
        "ker_raise": row.ker_raise,
        "harmonic_dim": row.harmonic_dim,
        "lower_exact": lower_ok,
        "raise_exact": raise_ok,
    }
    ok = lower_ok and raise_ok and counts_ok and row.harmonic_dim == 0
    return ("pass" if ok else "fail"), details


def _case_split(d: int, n: int, k: int, seed: int, trials: int):
    q = n - k
    rng = _rng(seed, "split", d, n, k)
    ok = True
    for _ in range(trials):
        t = random_tensor(d, k, q, rng)
        plus, minus = hodge_split(t)
        ok = ok and plus + minus == t
        ok = ok and lower(plus).is_zero()
        ok = ok and (raise_(minus).is_zero() if q >= 1 else plus.is_zero())
        ok = ok and inner(plus, minus) == 0
        ok = ok and hodge_split(plus) == (plus, FockTensor.zero(d, k, q))
        ok = ok and hodge_split(minus) == (FockTensor.zero(d, k, q), minus)
        if not ok:
            break
    details = {"dim": block_dim(d, k, q), "trials": trials}
    return ("pass" if ok else "fail"), details


def _case_decomposition(d: int, n: int, k: int, seed: int, trials: int):
    q = n - k
    space = embedded_subspace(d, k, q)
    sp = intersect(space, span_all_positions(d, k + 1, q - 1))
    sm = intersect(space, span_all_positions(d, k - 1, q + 1))
    ker_lower = block_dim(d, k, q) - operator_matrix("lower", d, k, q).rank()
    details = {
        "dim": space.dim,
        "dim_plus": sp.dim,
        "dim_minus": sm.dim,
        "ker_lower": ker_lower,
    }
    ok = (
        sp.dim + sm.dim == space.dim
        and intersect(sp, sm).dim == 0
        and sp.dim == ker_lower
    )
    return ("pass" if ok else "fail"), details


def _distinct_label(n: int, k: int) -> MixedIndex:
    return MixedIndex(tuple(range(1, k + 1)), tuple(range(k + 1, n + 1)))


def _repeated_label(d: int, n: int, k: int) -> MixedIndex | None:
    q = n - k
    if k >= 2:
        return MixedIndex((1,) * k, tuple(range(1, q + 1)))
    if k == 1 and q >= 1:
        return MixedIndex((1,), tuple(range(1, q + 1)))
    return None


def _case_rep(d: int, n: int, k: int, seed: int, trials: int):
    q = n - k
    if n > d:
        return "skip", {"reason": "no distinct-index label", "dim": d, "n": n}
    b = _distinct_label(n, k)
    orbit = orbit_span(b, d)
    plus, minus = orbit_split_spaces(b, d)
    dim_plus = comb(n - 1, q - 1) if q >= 1 else 0
    details = {
        "label": b.render(),
        "orbit_dim": orbit.dim,
        "split_dims": [plus.dim, minus.dim],
        "expected": [comb(n, k), dim_plus, comb(n - 1, q)],
    }
    ok = orbit.dim == comb(n, k) and (plus.dim, minus.dim) == (
        dim_plus,
        comb(n - 1, q),
    )
    if k >= 1 and q >= 1:
        vplus, vminus = witnesses(b, d)
        wit_ok = (
            not vplus.is_zero()
            and not vminus.is_zero()
            and orbit.contains(vplus)
            and orbit.contains(vminus)
            and sym_subset(vplus, range(1, k + 2)) == vplus
            and alt_subset(vplus, range(k + 2, n + 1)) == vplus
            and alt_subset(vminus, range(k, n + 1)) == vminus
            and sym_subset(vminus, range(1, k)) == vminus
        )
        details["witnesses"] = "ok" if wit_ok else "bad"
        ok = ok and wit_ok
    if n <= 4:
        char_ok = all(
            action_trace(orbit, p) == action_trace(plus, p) + action_trace(minus, p)
            for p in symmetric_group(n)
        )
        details["character_additive"] = char_ok
        ok = ok and char_ok
    rep_label = _repeated_label(d, n, k)
    if rep_label is not None:
        details["degenerate"] = {
            "label": rep_label.render(),
            "orbit_dim": orbit_span(rep_label, d).dim,
            "note": "degenerate-orbit",
        }
    return ("pass" if ok else "fail"), details


def _case_chaos(d: int, n: int, k: int, seed: int, trials: int):
    q = n - k
    labels = enum_basis(d, k, q)
    diagram = all(
        exterior_derivative(chaos_field(FockTensor.basis(d, b)))
        == chaos_field(lower(FockTensor.basis(d, b)))
        for b in labels
    )
    dual = q == 0 or all(
        codifferential(chaos_field(FockTensor.basis(d, b)))
        == chaos_field(raise_(FockTensor.basis(d, b)))
        for b in labels
    )
    eigen = all(
        hodge_laplacian(chaos_field(FockTensor.basis(d, b)))
        == chaos_field(FockTensor.basis(d, b)).scale(n)
        for b in labels
    )
    details = {
        "dim": block_dim(d, k, q),
        "diagram": diagram,
        "dual_diagram": dual,
        "laplacian_eigenvalue": str(n) if labels else "0",
    }
    ok = diagram and dual and eigen
    if q == 0 and labels:
        fields = [chaos_field(FockTensor.basis(d, b)) for b in labels]
        iso = all(
            gaussian_inner(fields[i], fields[j])
            == inner(FockTensor.basis(d, labels[i]), FockTensor.basis(d, labels[j]))
            for i in range(len(labels))
            for j in range(i, len(labels))
        )
        details["isometry"] = iso
        ok = ok and iso
    if q + 1 <= d:
        rng = _rng(seed, "chaos", d, n, k)
        adj = True
        for _ in range(min(trials, 3)):
            u = chaos_field(random_tensor(d, k, q, rng))
            w = chaos_field(random_tensor(d, max(k - 1, 0), q + 1, rng))
            adj = adj and gaussian_inner(exterior_derivative(u), w) == gaussian_inner(
                u, codifferential(w)
            )
        details["adjoint"] = adj
        ok = ok and adj
    return ("pass" if ok else "fail"), details


def _case_chaos_truncation(d: int, n: int, k: int, seed: int, trials: int):
    rng = _rng(seed, "trunc", d, n)
    h = [rng.randint(-3, 3) for _ in range(d)]
    x = (1,)
    defect = commutation_defect(h, x, n)
    top = exp_vector(h, n).part(n)
    expected = FormField.zero(d, 2)
    for i in range(2, d + 1):
        if not h[i - 1]:
            continue
        key = (1, i)
        coeffs = {MixedIndex(lab.sym, key): c for lab, c in top.coeffs.items()}
        expected = expected - chaos_field(FockTensor(d, n, 2, coeffs)).scale(-h[i - 1])
    degrees = defect.hermite_degrees()
    details = {
        "h": [str(c) for c in h],
        "order": n,
        "defect_degrees": sorted(degrees),
    }
    ok = defect == expected and degrees <= {n}
    return ("pass" if ok else "fail"), details


_CASES = {
    "weitzenboeck": _case_weitzenboeck,
    "exactness": _case_exactness,
    "split": _case_split,
    "decomposition": _case_decomposition,
    "rep": _case_rep,
    "chaos": _case_chaos,
    "chaos-truncation": _case_chaos_truncation,
}


def _run_case(spec):
    label, name, d, n, k, seed, trials = spec
    try:
        status, details = _CASES[label](d, n, k, seed, trials)
    except Exception as e:
        status, details = "fail", {"error": f"{type(e).__name__}: {e}"}
    return {
        "name": name,
        "params": {"d": d, "n": n, "k": k},
        "status": status,
        "details": details,
    }


def _case_specs(cfg: VerifyConfig) -> list:
    suites = list(SUITES) if cfg.suite == "all" else [cfg.suite]
    d_values = [cfg.dim] if cfg.dim is not None else list(range(1, cfg.max_dim + 1))
    if cfg.n is not None:
        n_values = [cfg.n]
    elif cfg.k is not None and cfg.q is not None:
        n_values = [cfg.k + cfg.q]
    else:
        n_values = list(range(1, cfg.max_n + 1))
    specs = []
    for suite in suites:
        for d in d_values:
            for n in n_values:
                for k in range(n + 1):
                    if cfg.k is not None and k != cfg.k:
                        continue
                    if cfg.q is not None and n - k != cfg.q:
                        continue
                    name = f"{suite} d={d} n={n} k={k}"
                    specs.append((suite, name, d, n, k, cfg.seed, cfg.trials))
                if suite == "chaos":
                    if cfg.k is not None and cfg.k != n:
                        continue
                    if cfg.q is not None and cfg.q != 0:
                        continue
                    name = f"chaos-truncation d={d} n={n}"
                    specs.append(("chaos-truncation", name, d, n, n, cfg.seed, cfg.trials))
    def suite_of(label: str) -> str:
        return "chaos" if label == "chaos-truncation" else label

    specs.sort(key=lambda s: (suite_of(s[0]), s[2], s[3], s[4], s[1]))
    return specs


def _worker_budget() -> int:
    env = os.environ.get("HODGEFOCK_WORKERS")
    if env is not None:
        try:
            workers = int(env)
        except ValueError:
            raise ConfigError(f"HODGEFOCK_WORKERS must be an integer, got {env!r}")
        if workers < 1:
            raise ConfigError(f"HODGEFOCK_WORKERS must be >= 1, got {workers}")
        return workers
    return min(os.cpu_count() or 1, 8)


def run_verify(cfg: VerifyConfig) -> Report:
    cfg.validate()
    specs = _case_specs(cfg)
    workers = _worker_budget()
    cases = None
    if workers > 1 and len(specs) > 1:
        try:
            with ProcessPoolExecutor(max_workers=workers) as pool:
                chunk = max(1, len(specs) // (workers * 4))
                cases = list(pool.map(_run_case, specs, chunksize=chunk))
        except Exception:
            cases = None
    if cases is None:
        cases = [_run_case(s) for s in specs]
    order = {s[1]: i for i, s in enumerate(specs)}
    cases.sort(key=lambda c: order[c["name"]])
    status = "fail" if any(c["status"] == "fail" for c in cases) else "pass"
    return Report(
        tool="hodgefock",
        version=__version__,
        config=cfg.as_dict(),
        cases=cases,
        status=status,
    )


def render_report(report: Report, fmt: str = "json") -> str:
    if fmt == "json":
        return json.dumps(report.as_dict(), indent=2)
    if fmt != "text":
        raise ConfigError(f"unknown format {fmt!r}")
    cfg = report.config
    lines = [
        f"{report.tool} {report.version}  suite={cfg.get('suite')}"
        f" max_dim={cfg.get('max_dim')} max_n={cfg.get('max_n')}"
        f" trials={cfg.get('trials')} seed={cfg.get('seed')}"
    ]
    counts = {"pass": 0, "fail": 0, "skip": 0}
    for case in report.cases:
        counts[case["status"]] = counts.get(case["status"], 0) + 1
        line = f"{case['status']:>4}  {case['name']}"
        if case["status"] == "fail":
            line += f"  {json.dumps(case['details'])}"
        lines.append(line)
    lines.append(
        f"{counts['pass']} passed, {counts['fail']} failed, {counts['skip']} skipped"
    )
    lines.append(f"status: {report.status}")
    return "\n".join(lines)


def parse_report(text: str) -> Report:
    return Report.from_dict(json.loads(text))


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="hodgefock",
        description="Exact verification of Hodge calculus on finite Fock truncations.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    verify = sub.add_parser("verify", help="run an invariant suite over a parameter grid")
    verify.add_argument("suite", choices=SUITES + ("all",))
    verify.add_argument("--max-dim", type=int, default=3)
    verify.add_argument("--max-n", type=int, default=4)
    verify.add_argument("--dim", type=int, default=None)
    verify.add_argument("--n", type=int, default=None)
    verify.add_argument("--k", type=int, default=None)
    verify.add_argument("--q", type=int, default=None)
    verify.add_argument("--trials", type=int, default=20)
    verify.add_argument("--seed", type=int, default=0)
    verify.add_argument("--format", choices=("json", "text"), default="text")
    verify.add_argument("--out", default=None)
    args = parser.parse_args(argv)
    cfg = VerifyConfig(
        suite=args.suite,
        max_dim=args.max_dim,
        max_n=args.max_n,
        trials=args.trials,
        seed=args.seed,
        dim=args.dim,
        n=args.n,
        k=args.k,
        q=args.q,
        format=args.format,
        out=args.out,
    )
    try:
        report = run_verify(cfg)
    except ConfigError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    text = render_report(report, cfg.format)
    if cfg.out:
        with open(cfg.out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    return 0 if report.status == "pass" else 1
