"""Observed bounding boxes against the theoretical grid bounds."""
from __future__ import annotations

import csv
import io
from fractions import Fraction

import numpy as np

from .generators import Kind, generate_random
from .graph_model import CactusDecomposition, RootedTree
from .pipeline import draw_graph
from .verifier import Profile, grid_bound

__all__ = ["FIELDS", "trial_seed", "bench_bounds", "rows_to_csv", "fit_exponent"]

FIELDS = [
    "kind", "n", "trial", "seed", "t", "d", "o", "delta",
    "width", "height", "side", "bound", "slack", "slack_float", "passed",
]


def trial_seed(seed: int, n: int, trial: int) -> int:
    """Independent 63-bit seed for one (n, trial) cell."""
    return int(np.random.SeedSequence([seed, n, trial]).generate_state(1, dtype=np.uint64)[0] >> 1)


def bench_bounds(
    kind: Kind | str,
    n_list: list[int],
    trials: int,
    seed: int,
    cycle_density: float | None = None,
    verify: bool = False,
    **params,
) -> list[dict]:
    """One row per (n, trial) with the drawn bbox, the profile's bound and
    their exact ratio. ``cycle_density`` fixes cacti to
    ``floor(cycle_density * n)`` cycles (capped to what fits); other keyword
    arguments go to :func:`generate_random`.
    """
    kind = Kind(kind)
    rows = []
    for n in n_list:
        for trial in range(trials):
            s = trial_seed(seed, n, trial)
            extra = dict(params)
            if kind is Kind.CACTUS and cycle_density is not None:
                extra["cycles"] = min(int(cycle_density * n), (n - 1) // 2)
            g = generate_random(kind, n, s, **extra)
            res = draw_graph(g, verify=verify)
            dec = res.decomp
            if isinstance(dec, CactusDecomposition):
                stats = {"t": dec.t, "d": dec.d, "o": dec.o, "delta": dec.delta}
            elif isinstance(dec, RootedTree):
                stats = {"t": dec.t, "d": dec.d, "o": 0, "delta": 0}
            else:
                stats = {"t": g.n - 1, "d": 1, "o": 0, "delta": 0}
            bound = grid_bound(res.profile, n=g.n, **stats)
            d = res.drawing
            side = max(d.width, d.height)
            slack = Fraction(side) / bound
            rows.append({
                "kind": kind.value, "n": n, "trial": trial, "seed": s, **stats,
                "width": d.width, "height": d.height, "side": side,
                "bound": float(bound),
                "slack": f"{slack.numerator}/{slack.denominator}",
                "slack_float": float(slack),
                "passed": res.report.passed if res.report is not None else None,
            })
    rows.sort(key=lambda r: (r["n"], r["trial"]))
    return rows


def rows_to_csv(rows: list[dict]) -> str:
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=FIELDS, lineterminator="\n")
    w.writeheader()
    w.writerows(rows)
    return buf.getvalue()


def fit_exponent(rows: list[dict], key: str = "side") -> float:
    """Slope of the least-squares line through (log n, log key)."""
    x = np.log([r["n"] for r in rows])
    y = np.log([max(r[key], 1) for r in rows])
    return float(np.polyfit(x, y, 1)[0])
