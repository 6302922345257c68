"""Monte Carlo estimates of the Type I error rate of the quantile test.

A cell draws J samples from its sources R times, runs :func:`qanova` on
each draw and counts p-values at or below alpha. Replication ``r`` uses data
streams keyed by ``(master_seed, r, group)`` and a bootstrap seed derived
from ``(master_seed, r)``, so results do not depend on worker count or
scheduling.
"""

import configparser
import json
import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from pathlib import Path

from scipy.stats import beta

from .depth import DegenerateCloudError
from .distributions import BetaBinParams, GHParams, TailModParams
from .methodq import DEFAULT_B, DEFAULT_SEED, qanova
from .streams import DATA, REPLICATION, derive_seed, make_rng

__all__ = [
    "DEFAULT_R",
    "ConfigError",
    "SimConfig",
    "SimResult",
    "binomial_ci",
    "bradley_check",
    "estimate_type1",
    "run_grid",
    "load_grid",
    "write_tsv",
    "write_jsonl",
    "describe_source",
]

DEFAULT_R = 1000


@dataclass(frozen=True)
class SimConfig:
    """One simulation cell.

    `sources` holds one distribution per group; all groups are assumed to
    share the population quantile at `q`.
    """

    sources: tuple
    sample_sizes: tuple
    q: float = 0.5
    alpha: float = 0.05
    R: int = DEFAULT_R
    B: int = DEFAULT_B
    master_seed: int = DEFAULT_SEED
    name: str = ""
    reference: float = None

    def __post_init__(self):
        object.__setattr__(self, "sources", tuple(self.sources))
        object.__setattr__(self, "sample_sizes", tuple(int(n) for n in self.sample_sizes))
        if len(self.sources) != len(self.sample_sizes):
            raise ValueError("need one source per sample size")
        if len(self.sources) < 2:
            raise ValueError("need at least 2 groups")
        if min(self.sample_sizes) < 2:
            raise ValueError("sample sizes must be at least 2")
        if not 0.0 < self.q < 1.0:
            raise ValueError(f"q must lie in (0, 1), got {self.q}")
        if not 0.0 < self.alpha <= 1.0:
            raise ValueError(f"alpha must lie in (0, 1], got {self.alpha}")
        if self.R < 1 or self.B < 1:
            raise ValueError("R and B must be at least 1")

    @classmethod
    def shared(cls, source, J=4, n=20, **kwargs):
        """Cell whose J groups all come from `source` with common size `n`."""
        return cls(sources=(source,) * J, sample_sizes=(n,) * J, **kwargs)

    @property
    def J(self):
        return len(self.sources)


@dataclass
class SimResult:
    name: str
    alpha_hat: float
    rejections: int
    R: int
    ci_low: float
    ci_high: float
    bradley_ok: bool
    wall_time: float
    degenerate: int = 0
    alpha: float = 0.05
    reference: float = None
    error: str = None
    config: dict = field(default_factory=dict)


def binomial_ci(successes, trials, level=0.95):
    """Exact two-sided Clopper-Pearson interval for a binomial proportion."""
    if int(successes) != successes or int(trials) != trials:
        raise ValueError("successes and trials must be integers")
    if trials < 1 or not 0 <= successes <= trials:
        raise ValueError(f"need 0 <= successes <= trials and trials >= 1, got {successes}/{trials}")
    if not 0.0 < level < 1.0:
        raise ValueError(f"level must lie in (0, 1), got {level}")
    tail = (1.0 - level) / 2.0
    low = 0.0 if successes == 0 else float(beta.ppf(tail, successes, trials - successes + 1))
    high = 1.0 if successes == trials else float(beta.ppf(1.0 - tail, successes + 1, trials - successes))
    return low, high


def bradley_check(alpha_hat, alpha=0.05):
    """Bradley's liberal criterion: alpha/2 <= alpha_hat <= 1.5 alpha."""
    return alpha / 2.0 <= alpha_hat <= 1.5 * alpha


def _replicate(cfg, r):
    # returns (rejected, degenerate)
    data = [
        src.draw(n, make_rng(cfg.master_seed, DATA, r, j))
        for j, (src, n) in enumerate(zip(cfg.sources, cfg.sample_sizes))
    ]
    try:
        res = qanova(data, cfg.q, B=cfg.B, seed=derive_seed(cfg.master_seed, REPLICATION, r))
    except DegenerateCloudError:
        return False, True
    return res.p_value <= cfg.alpha, False


def _replicate_block(cfg, start, stop):
    rej = deg = 0
    for r in range(start, stop):
        a, d = _replicate(cfg, r)
        rej += a
        deg += d
    return rej, deg


def estimate_type1(cfg, workers=1, level=0.95):
    """Estimate the rejection rate of one cell.

    Replications whose bootstrap cloud is degenerate count as
    non-rejections and are reported in ``SimResult.degenerate``.

    Parameters
    ----------
    cfg : SimConfig
    workers : int
        Worker processes; the result is identical for any value.
    level : float
        Confidence level of the Clopper-Pearson interval.
    """
    t0 = time.perf_counter()
    if workers > 1 and cfg.R > 1:
        step = math.ceil(cfg.R / (4 * workers))
        bounds = [(s, min(s + step, cfg.R)) for s in range(0, cfg.R, step)]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(_replicate_block, [cfg] * len(bounds), *zip(*bounds)))
        rejections = sum(p[0] for p in parts)
        degenerate = sum(p[1] for p in parts)
    else:
        rejections, degenerate = _replicate_block(cfg, 0, cfg.R)
    alpha_hat = rejections / cfg.R
    low, high = binomial_ci(rejections, cfg.R, level)
    return SimResult(
        name=cfg.name,
        alpha_hat=alpha_hat,
        rejections=int(rejections),
        R=cfg.R,
        ci_low=low,
        ci_high=high,
        bradley_ok=bradley_check(alpha_hat, cfg.alpha),
        wall_time=time.perf_counter() - t0,
        degenerate=int(degenerate),
        alpha=cfg.alpha,
        reference=cfg.reference,
        config=_config_record(cfg),
    )


def run_grid(configs, workers=1, level=0.95):
    """Yield one :class:`SimResult` per config, in order.

    A cell that raises is reported with its ``error`` set and NaN
    estimates; the remaining cells still run.
    """
    configs = list(configs)
    if not configs:
        raise ValueError("empty grid")
    for cfg in configs:
        try:
            yield estimate_type1(cfg, workers=workers, level=level)
        except Exception as exc:  # noqa: BLE001 - recorded per cell
            nan = float("nan")
            yield SimResult(
                name=cfg.name, alpha_hat=nan, rejections=0, R=cfg.R, ci_low=nan, ci_high=nan,
                bradley_ok=False, wall_time=0.0, alpha=cfg.alpha, reference=cfg.reference,
                error=f"{type(exc).__name__}: {exc}", config=_config_record(cfg),
            )


def describe_source(src):
    if isinstance(src, GHParams):
        return f"gh(g={src.g:g}, h={src.h:g})"
    if isinstance(src, BetaBinParams):
        return f"betabinom(m={src.m}, r={src.r:g}, s={src.s:g})"
    if isinstance(src, TailModParams):
        b = src.base
        return f"tailmod(m={b.m}, r={b.r:g}, s={b.s:g}, {src.variant}, cut={src.cut})"
    return repr(src)


def _config_record(cfg):
    return {
        "sources": [describe_source(s) for s in cfg.sources],
        "sample_sizes": list(cfg.sample_sizes),
        "q": cfg.q,
        "alpha": cfg.alpha,
        "R": cfg.R,
        "B": cfg.B,
        "seed": cfg.master_seed,
    }


# --- config files ----------------------------------------------------------

class ConfigError(ValueError):
    """Malformed simulation config; the message carries a line number."""


_KNOWN_KEYS = {
    "source", "groups", "n", "q", "alpha", "replications", "nboot", "seed", "reference",
    "g", "h", "m", "r", "s", "variant", "cut", "modified",
}


def _line_of(lines, section, key=None):
    in_section = False
    header = None
    for i, raw in enumerate(lines, 1):
        line = raw.strip()
        if line.startswith("[") and line.endswith("]"):
            in_section = line[1:-1].strip() == section
            if in_section:
                header = i
            continue
        if in_section and key is not None:
            name = line.split("=", 1)[0].split(":", 1)[0].strip().lower()
            if name == key:
                return i
    if key is not None and section != "DEFAULT":
        found = _line_of(lines, "DEFAULT", key)
        if found is not None:
            return found
    return header


def _cell_from_section(sec):
    J = sec.getint("groups", fallback=4)
    sizes = [int(v) for v in sec.get("n", "20").split(",")]
    if len(sizes) == 1:
        sizes = sizes * J
    if len(sizes) != J:
        raise ConfigError(f"n lists {len(sizes)} sizes for {J} groups", "n")
    kind = sec.get("source")
    if kind is None:
        raise ConfigError("missing source", None)
    kind = kind.strip().lower()
    if kind == "gh":
        sources = [GHParams(g=sec.getfloat("g", fallback=0.0), h=sec.getfloat("h", fallback=0.0))] * J
    elif kind in ("betabinom", "tailmod"):
        base = BetaBinParams(m=sec.getint("m"), r=sec.getfloat("r"), s=sec.getfloat("s"))
        sources = [base] * J
        if kind == "tailmod":
            mod = TailModParams(base=base, variant=sec.get("variant", "flattened").strip(),
                                cut=sec.getint("cut", fallback=15))
            k = sec.getint("modified", fallback=J - 1)
            if not 0 <= k <= J:
                raise ConfigError(f"modified must lie in 0..{J}", "modified")
            sources = [mod] * k + [base] * (J - k)
    else:
        raise ConfigError(f"unknown source {kind!r} (expected gh, betabinom or tailmod)", "source")
    ref = sec.get("reference")
    return SimConfig(
        sources=sources,
        sample_sizes=sizes,
        q=sec.getfloat("q", fallback=0.5),
        alpha=sec.getfloat("alpha", fallback=0.05),
        R=sec.getint("replications", fallback=DEFAULT_R),
        B=sec.getint("nboot", fallback=DEFAULT_B),
        master_seed=sec.getint("seed", fallback=DEFAULT_SEED),
        name=sec.name,
        reference=float(ref) if ref not in (None, "") else None,
    )


def load_grid(path):
    """Parse a simulation grid file.

    The file is INI-style: each ``[section]`` is one cell and ``[DEFAULT]``
    supplies shared keys. Keys: ``source`` (gh, betabinom, tailmod),
    ``g``, ``h``, ``m``, ``r``, ``s``, ``variant``, ``cut``, ``modified``,
    ``groups``, ``n`` (one size or a comma list), ``q``, ``alpha``,
    ``replications``, ``nboot``, ``seed`` and ``reference``.

    Raises
    ------
    ConfigError
        With the offending line number.
    """
    path = Path(path)
    text = path.read_text()
    lines = text.splitlines()
    parser = configparser.ConfigParser(inline_comment_prefixes=("#", ";"))
    try:
        parser.read_string(text, source=str(path))
    except configparser.Error as exc:
        lineno = getattr(exc, "lineno", None)
        where = f"line {lineno}: " if lineno is not None else ""
        raise ConfigError(f"{path}: {where}{exc}") from exc
    if not parser.sections():
        raise ConfigError(f"{path}: line 1: no cells defined")
    cells = []
    for name in parser.sections():
        sec = parser[name]
        for key in sec:
            if key not in _KNOWN_KEYS:
                raise ConfigError(f"{path}: line {_line_of(lines, name, key)}: unknown key {key!r} in [{name}]")
        try:
            cells.append(_cell_from_section(sec))
        except ConfigError as exc:
            msg, key = exc.args
            raise ConfigError(f"{path}: line {_line_of(lines, name, key)}: [{name}] {msg}") from None
        except (ValueError, TypeError) as exc:
            raise ConfigError(f"{path}: line {_line_of(lines, name)}: [{name}] {exc}") from None
    return cells


# --- output ------------------------------------------------------------------

TSV_COLUMNS = (
    "name", "sources", "n", "q", "alpha", "R", "B", "seed", "rejections", "alpha_hat",
    "ci_low", "ci_high", "bradley_ok", "degenerate", "reference", "wall_time", "error",
)


def _tsv_row(res):
    c = res.config
    vals = {
        "name": res.name,
        "sources": ";".join(dict.fromkeys(c.get("sources", []))),
        "n": ",".join(str(n) for n in c.get("sample_sizes", [])),
        "q": c.get("q"),
        "alpha": res.alpha,
        "R": res.R,
        "B": c.get("B"),
        "seed": c.get("seed"),
        "rejections": res.rejections,
        "alpha_hat": f"{res.alpha_hat:.4f}",
        "ci_low": f"{res.ci_low:.4f}",
        "ci_high": f"{res.ci_high:.4f}",
        "bradley_ok": res.bradley_ok,
        "degenerate": res.degenerate,
        "reference": "" if res.reference is None else res.reference,
        "wall_time": f"{res.wall_time:.2f}",
        "error": res.error or "",
    }
    return "\t".join(str(vals[k]) for k in TSV_COLUMNS)


def write_tsv(results, path):
    with open(path, "w") as fh:
        fh.write("\t".join(TSV_COLUMNS) + "\n")
        for res in results:
            fh.write(_tsv_row(res) + "\n")


def write_jsonl(results, path):
    with open(path, "w") as fh:
        for res in results:
            rec = {k: (None if isinstance(v, float) and math.isnan(v) else v) for k, v in asdict(res).items()}
            fh.write(json.dumps(rec) + "\n")
