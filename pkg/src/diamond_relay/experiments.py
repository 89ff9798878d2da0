"""Monte-Carlo study of the best-relay fraction C1/Cn under Rayleigh fading.

Every trial draws from its own PCG64 stream seeded by ``(seed, n, trial)``,
so results do not depend on the order (or the process) in which trials run.
"""

from __future__ import annotations

import csv
import io
import logging
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass
from typing import Callable, Iterable, Sequence

import numpy as np

from diamond_relay.capacity import ratio
from diamond_relay.errors import InvalidArgumentError
from diamond_relay.network import DiamondNetwork, RelayLinks, best_relay, links_from_gains
from diamond_relay.theory import bound

log = logging.getLogger(__name__)

GENERATOR = "numpy.random.PCG64"
MAX_MONTE_CARLO_RELAYS = 10
MAX_RESAMPLES = 1000
WHISKER_FACTOR = 1.5


def trial_rng(seed: int, n: int, trial: int) -> np.random.Generator:
    """Independent stream for one (n, trial) cell of a run."""
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence([seed, n, trial])))


def _check_relay_count(n) -> None:
    if isinstance(n, bool) or not isinstance(n, (int, np.integer)) or n < 1:
        raise InvalidArgumentError(f"number of relays must be an integer >= 1, got {n!r}")


def sample_rayleigh_network(n: int, sigma: float, rng: np.random.Generator) -> DiamondNetwork:
    """Draw |h_si| and |h_id| i.i.d. Rayleigh(sigma) and convert them to link capacities."""
    _check_relay_count(n)
    if not (isinstance(sigma, (int, float)) and math.isfinite(sigma) and sigma > 0):
        raise InvalidArgumentError(f"sigma must be positive, got {sigma!r}")
    h = rng.rayleigh(scale=sigma, size=(n, 2))
    return DiamondNetwork(tuple(links_from_gains(hs, hd) for hs, hd in h))


def sample_loguniform_network(n: int, rng: np.random.Generator,
                              low: float = 1e-2, high: float = 1e2) -> DiamondNetwork:
    """Link capacities drawn log-uniformly on [low, high]; spreads capacities over decades."""
    _check_relay_count(n)
    if not 0 < low < high:
        raise InvalidArgumentError(f"need 0 < low < high, got {low!r}, {high!r}")
    v = np.exp(rng.uniform(math.log(low), math.log(high), size=(n, 2)))
    return DiamondNetwork(tuple(RelayLinks(float(a), float(b)) for a, b in v))


def percentile(values: Sequence[float], p: float) -> float:
    """Linear interpolation between closest ranks of sorted ``values`` (index (len-1)*p/100)."""
    if len(values) == 0:
        raise InvalidArgumentError("percentile of an empty sequence")
    if not 0 <= p <= 100:
        raise InvalidArgumentError(f"percentile must be in [0, 100], got {p!r}")
    pos = (len(values) - 1) * p / 100.0
    lo = math.floor(pos)
    hi = min(lo + 1, len(values) - 1)
    frac = pos - lo
    if frac == 0:
        return float(values[lo])
    return float(values[lo] + (values[hi] - values[lo]) * frac)


@dataclass
class RatioStats:
    n: int
    trials: int
    min: float
    q25: float
    median: float
    q75: float
    max: float
    whisker_lo: float
    whisker_hi: float
    outlier_count: int
    worst_case_bound: float

    CSV_COLUMNS = ("n", "trials", "min", "q25", "median", "q75", "max",
                   "whisker_lo", "whisker_hi", "outliers", "bound")

    def csv_values(self) -> list[str]:
        d = asdict(self)
        d["outliers"] = d.pop("outlier_count")
        d["bound"] = d.pop("worst_case_bound")
        return [f"{d[k]:.9g}" if isinstance(d[k], float) else str(d[k]) for k in self.CSV_COLUMNS]


def ratio_stats(n: int, ratios: Iterable[float]) -> RatioStats:
    """Box-plot summary: quartiles, whiskers at the furthest points within 1.5 IQR, outlier count."""
    xs = sorted(float(x) for x in ratios)
    if not xs:
        raise InvalidArgumentError("no ratios to summarize")
    q25, med, q75 = (percentile(xs, p) for p in (25, 50, 75))
    iqr = q75 - q25
    lo_fence, hi_fence = q25 - WHISKER_FACTOR * iqr, q75 + WHISKER_FACTOR * iqr
    inside = [x for x in xs if lo_fence <= x <= hi_fence]
    # interpolated quartiles need not be data points, so keep whiskers outside the box
    w_lo = min(inside[0], q25) if inside else q25
    w_hi = max(inside[-1], q75) if inside else q75
    outliers = len(xs) - len(inside)
    return RatioStats(n, len(xs), xs[0], q25, med, q75, xs[-1], w_lo, w_hi, outliers, bound(n))


def _one_trial(args) -> tuple[int, int, float, int]:
    seed, n, trial, sigma = args
    rng = trial_rng(seed, n, trial)
    for attempt in range(MAX_RESAMPLES):
        net = sample_rayleigh_network(n, sigma, rng)
        if best_relay(net)[1] > 0:
            return n, trial, float(ratio(net)), attempt
    raise InvalidArgumentError(f"could not draw a non-degenerate network for n={n}, trial={trial}")


@dataclass
class MonteCarloResult:
    stats: list[RatioStats]
    ratios: dict[int, list[float]]
    resampled: int
    seed: int
    sigma: float
    generator: str = GENERATOR


def monte_carlo(n_list: Iterable[int], trials: int, seed: int, sigma: float = 1.0,
                workers: int = 1, progress: Callable[[int, int], None] | None = None) -> MonteCarloResult:
    """Ratio C1/Cn on ``trials`` Rayleigh networks for every n in ``n_list``."""
    n_list = list(n_list)
    for n in n_list:
        _check_relay_count(n)
        if n > MAX_MONTE_CARLO_RELAYS:
            raise InvalidArgumentError(f"n = {n} exceeds {MAX_MONTE_CARLO_RELAYS} for Monte-Carlo runs")
    if isinstance(trials, bool) or not isinstance(trials, int) or trials < 1:
        raise InvalidArgumentError(f"trials must be a positive integer, got {trials!r}")
    if isinstance(seed, bool) or not isinstance(seed, int) or seed < 0:
        raise InvalidArgumentError(f"seed must be a non-negative integer, got {seed!r}")

    jobs = [(seed, n, t, sigma) for n in n_list for t in range(trials)]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_one_trial, jobs, chunksize=max(1, len(jobs) // (4 * workers))))
    else:
        results = []
        for i, job in enumerate(jobs):
            results.append(_one_trial(job))
            if progress:
                progress(i + 1, len(jobs))

    results.sort(key=lambda r: (r[0], r[1]))
    ratios: dict[int, list[float]] = {n: [] for n in n_list}
    resampled = 0
    for n, _, value, attempts in results:
        ratios[n].append(value)
        resampled += attempts
    if resampled:
        log.info("resampled %d degenerate networks", resampled)
    stats = [ratio_stats(n, ratios[n]) for n in n_list]
    return MonteCarloResult(stats, ratios, resampled, seed, sigma)


def stats_csv(result: MonteCarloResult) -> str:
    """Stats table preceded by ``#`` metadata lines naming the generator and seed."""
    buf = io.StringIO()
    buf.write(f"# generator={result.generator} seed={result.seed} sigma={result.sigma:g} "
              f"substreams=SeedSequence([seed,n,trial]) resampled={result.resampled}\n")
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(RatioStats.CSV_COLUMNS)
    for s in result.stats:
        w.writerow(s.csv_values())
    return buf.getvalue()


def raw_csv(result: MonteCarloResult) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(("n", "trial", "ratio"))
    for n, values in result.ratios.items():
        for t, v in enumerate(values):
            w.writerow((n, t, repr(v)))
    return buf.getvalue()


__all__ = ["GENERATOR", "MonteCarloResult", "RatioStats", "monte_carlo", "percentile",
           "ratio_stats", "raw_csv", "sample_loguniform_network", "sample_rayleigh_network",
           "stats_csv", "trial_rng"]
