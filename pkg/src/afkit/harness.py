"""Seeded instance generation and the batch verification suite.

Every instance is a pure function of (config, instance index): the
index derives a child seed, the child seed drives a SplitMix64 stream,
and the stream fully determines the generated matrices or bodies.
Instances may therefore be verified in any order or in parallel, and
the JSONL output is byte-identical for identical configs.
"""

from __future__ import annotations

import json
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

from . import jsonio
from .convexvol import (
    MAX_DIMENSION,
    BodyTuple,
    Polytope,
    convex_hull,
    dilate,
    minkowski_sum,
    translate,
)
from .errors import AfkitError, FormatError
from .ineqcheck import (
    af_gap_discriminant,
    af_gap_volume,
    af_m_fold_discriminant,
    af_m_fold_volume,
    bm_concavity_discriminant,
    homothety_ratio,
)
from .matrixcore import GenMat, HermMat, proportional
from .mixdisc import PERMUTATION_ROUTE_MAX_N, MatTuple
from .rationals import GaussRat, format_rat
from .shephard import (
    check_psd_shephard,
    det_identity_check,
    gram_from_discriminants,
    r2_inequality,
)
from .toruskahler import TorusClass, equality_theorem_m, equality_theorem_pair, kt_sequence

MODES = ("discriminant", "volume", "shephard", "torus", "bm", "all")
EXACT_MODES = ("discriminant", "volume", "shephard", "torus")

_MASK64 = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15


class SplitMix64:
    """Deterministic 64-bit generator with a frozen algorithm.

    Reproducibility across releases is part of the contract, so the
    exact update rule (SplitMix64) is pinned here instead of delegating
    to the standard library: state advances by the golden-ratio
    constant and each output is a finalizer of the new state.
    """

    __slots__ = ("state",)

    def __init__(self, seed: int):
        self.state = seed & _MASK64

    def next_u64(self) -> int:
        self.state = (self.state + _GOLDEN) & _MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
        return z ^ (z >> 31)

    def int_between(self, lo: int, hi: int) -> int:
        # modulo bias is immaterial at our tiny ranges; determinism is
        # the requirement, not statistical perfection
        return lo + self.next_u64() % (hi - lo + 1)


def derive_seed(seed: int, index: int) -> int:
    """Child seed for instance `index`: the (index+1)-th output of the
    parent stream. SplitMix64's counter state makes the jump O(1)."""
    g = SplitMix64(seed)
    g.state = (g.state + index * _GOLDEN) & _MASK64
    return g.next_u64()


def _gauss_int(rng: SplitMix64, bound: int) -> GaussRat:
    re = rng.int_between(-bound, bound)
    im = rng.int_between(-bound, bound)
    return GaussRat(Fraction(re), Fraction(im))


def gen_pd_hermitian(seed: int, n: int, entry_bound: int = 5) -> HermMat:
    """G G* + I for a random Gaussian-integer G: always positive definite."""
    rng = SplitMix64(seed)
    g = GenMat([[_gauss_int(rng, entry_bound) for _ in range(n)] for _ in range(n)])
    return HermMat.from_gram(g) + HermMat.identity(n)


def gen_psd_singular(seed: int, n: int, entry_bound: int = 5) -> HermMat:
    """G G* with the last column of G zeroed: PSD with det = 0 exactly."""
    if n < 2:
        raise ValueError("a singular PSD matrix needs n >= 2")
    rng = SplitMix64(seed)
    rows = [[_gauss_int(rng, entry_bound) for _ in range(n - 1)] + [GaussRat(0)] for _ in range(n)]
    return HermMat.from_gram(GenMat(rows))


def _rand_coord(rng: SplitMix64, bound: int) -> Fraction:
    return Fraction(rng.int_between(-bound, bound), rng.int_between(1, 3))


def gen_polytope(seed: int, d: int, points: int = 6, coord_bound: int = 5) -> Polytope:
    """Hull of `points` random rational points in dimension d."""
    rng = SplitMix64(seed)
    cloud = [tuple(_rand_coord(rng, coord_bound) for _ in range(d)) for _ in range(points)]
    return convex_hull(cloud)


def box(lengths) -> Polytope:
    """Axis-aligned box [0, a_1] x ... x [0, a_d]."""
    sides = [Fraction(a) if isinstance(a, int) else a for a in lengths]
    verts = [()]
    for a in sides:
        verts = [v + (c,) for v in verts for c in (Fraction(0), a)]
    return convex_hull(verts)


def simplex(d: int, scale=1) -> Polytope:
    """Standard simplex conv(0, scale e_1, ..., scale e_d)."""
    zero = tuple(Fraction(0) for _ in range(d))
    verts = [zero]
    for i in range(d):
        v = list(zero)
        v[i] = Fraction(scale)
        verts.append(tuple(v))
    return convex_hull(verts)


def segment(v) -> Polytope:
    """Segment from the origin to v."""
    vec = tuple(Fraction(c) if isinstance(c, int) else c for c in v)
    origin = tuple(Fraction(0) for _ in vec)
    return convex_hull([origin, vec])


def zonotope(vectors) -> Polytope:
    """Minkowski sum of the segments [0, v_i]."""
    vectors = list(vectors)
    if not vectors:
        raise ValueError("a zonotope needs at least one generator")
    body = segment(vectors[0])
    for v in vectors[1:]:
        body = minkowski_sum(body, segment(v))
    return body


@dataclass(frozen=True)
class RunConfig:
    """Full description of a verification run; identical configs must
    reproduce byte-identical JSONL output."""

    seed: int = 0
    trials: int = 1
    n: int = 3
    r: int = 2
    m: int = 2
    mode: str = "discriminant"
    tolerance: float = 1e-9
    entry_bound: int = 5
    grid: int = 11
    exact_only: bool = False


@dataclass(frozen=True)
class RunRecord:
    """Outcome of one suite run: config echo, per-instance records,
    aggregate summary, and the wall time (reported out of band)."""

    config: RunConfig
    records: tuple
    summary: dict
    wall_time: float


def validate_config(cfg: RunConfig) -> None:
    """Reject bad configs with ValueError before any work happens."""
    if cfg.mode not in MODES:
        raise ValueError(f"unknown mode {cfg.mode!r}; choose from {', '.join(MODES)}")
    if cfg.trials < 1:
        raise ValueError("trials must be at least 1")
    if not 0 <= cfg.seed < 1 << 64:
        raise ValueError("seed must be a 64-bit nonnegative integer")
    if cfg.entry_bound < 1:
        raise ValueError("entry bound must be at least 1")
    if cfg.grid < 3:
        raise ValueError("grid size must be at least 3")
    if not cfg.tolerance > 0:
        raise ValueError("tolerance must be positive")
    if cfg.r < 1:
        raise ValueError("r must be at least 1")
    if cfg.exact_only and cfg.mode == "bm":
        raise ValueError("mode bm samples floating-point roots; drop --exact-only")
    if cfg.mode in ("volume", "all"):
        ceiling = MAX_DIMENSION
    else:
        ceiling = PERMUTATION_ROUTE_MAX_N
    if not 2 <= cfg.n <= ceiling:
        raise ValueError(f"mode {cfg.mode} needs n in [2, {ceiling}], got {cfg.n}")
    lo = 1 if cfg.mode == "bm" else 2
    if not lo <= cfg.m <= cfg.n:
        raise ValueError(f"mode {cfg.mode} needs m in [{lo}, {cfg.n}], got {cfg.m}")


def config_to_json(cfg: RunConfig) -> dict:
    return {
        "seed": cfg.seed,
        "trials": cfg.trials,
        "n": cfg.n,
        "r": cfg.r,
        "m": cfg.m,
        "mode": cfg.mode,
        "tolerance": cfg.tolerance,
        "entry_bound": cfg.entry_bound,
        "grid": cfg.grid,
        "exact_only": cfg.exact_only,
    }


def _instance_modes(cfg: RunConfig):
    if cfg.mode != "all":
        return (cfg.mode,)
    if cfg.exact_only:
        return EXACT_MODES
    return EXACT_MODES + ("bm",)


def _rand_scale(rng: SplitMix64) -> Fraction:
    return Fraction(rng.int_between(1, 6), rng.int_between(1, 3))


def _run_discriminant(cfg, rng, kind, record):
    n = cfg.n
    a = gen_pd_hermitian(rng.next_u64(), n, cfg.entry_bound)
    rest = [gen_pd_hermitian(rng.next_u64(), n, cfg.entry_bound) for _ in range(n - 2)]
    if kind == "proportional":
        b = a.scale(_rand_scale(rng))
    else:
        b = gen_pd_hermitian(rng.next_u64(), n, cfg.entry_bound)
        while proportional(a, b) is not None:
            b = gen_pd_hermitian(rng.next_u64(), n, cfg.entry_bound)
    pair = af_gap_discriminant(a, b, rest)
    record["report"] = jsonio.gap_report_to_json(pair)
    fold = af_m_fold_discriminant(MatTuple([a, b] + rest), cfg.m)
    record["mfold"] = jsonio.gap_report_to_json(fold)
    return pair.gap, pair.equality, True


def _run_volume(cfg, rng, kind, record):
    d = cfg.n
    count = d + 3
    k = gen_polytope(rng.next_u64(), d, count, cfg.entry_bound)
    rest = [gen_polytope(rng.next_u64(), d, count, cfg.entry_bound) for _ in range(d - 2)]
    if kind == "proportional":
        shift = tuple(Fraction(rng.int_between(-cfg.entry_bound, cfg.entry_bound)) for _ in range(d))
        l = translate(dilate(k, _rand_scale(rng)), shift)
    else:
        l = gen_polytope(rng.next_u64(), d, count, cfg.entry_bound)
        while homothety_ratio(k, l) is not None:
            l = gen_polytope(rng.next_u64(), d, count, cfg.entry_bound)
    pair = af_gap_volume(k, l, rest)
    record["report"] = jsonio.gap_report_to_json(pair)
    fold = af_m_fold_volume(BodyTuple([k, l] + rest), cfg.m)
    record["mfold"] = jsonio.gap_report_to_json(fold)
    return pair.gap, pair.equality, True


def _run_shephard(cfg, rng, kind, record):
    n = cfg.n
    classes = [gen_pd_hermitian(rng.next_u64(), n, cfg.entry_bound) for _ in range(cfg.r + 1)]
    if kind == "proportional":
        classes[1] = classes[0].scale(_rand_scale(rng))
    rest = [gen_pd_hermitian(rng.next_u64(), n, cfg.entry_bound) for _ in range(n - 2)]
    g = gram_from_discriminants(classes, rest)
    return _certify_gram(g, record)


def _certify_gram(g, record):
    ok, witness = check_psd_shephard(g)
    ident = det_identity_check(g)
    record["psd"] = ok
    record["witness"] = None if witness is None else [witness[0], format_rat(witness[1])]
    record["identity"] = ident
    if ok and g.r == 2:
        rep = r2_inequality(g)
        record["r2"] = jsonio.gap_report_to_json(rep)
        return rep.gap, rep.equality, ident
    return None, False, ok and ident


def _run_torus(cfg, rng, kind, record):
    n = cfg.n
    g1 = TorusClass(gen_pd_hermitian(rng.next_u64(), n, cfg.entry_bound))
    if kind == "proportional":
        # scale the whole leading m-block so the fold verdict hits equality too
        lead = [TorusClass(g1.mat.scale(_rand_scale(rng))) for _ in range(cfg.m - 1)]
        tail = [
            TorusClass(gen_pd_hermitian(rng.next_u64(), n, cfg.entry_bound))
            for _ in range(n - cfg.m)
        ]
    else:
        g2 = TorusClass(gen_pd_hermitian(rng.next_u64(), n, cfg.entry_bound))
        while proportional(g1.mat, g2.mat) is not None:
            g2 = TorusClass(gen_pd_hermitian(rng.next_u64(), n, cfg.entry_bound))
        lead = [g2]
        tail = [
            TorusClass(gen_pd_hermitian(rng.next_u64(), n, cfg.entry_bound))
            for _ in range(n - 2)
        ]
    g2 = lead[0]
    rest = lead[1:] + tail
    pair = equality_theorem_pair(g1, g2, rest)
    record["report"] = jsonio.gap_report_to_json(pair.report)
    record["pair"] = {
        "adjugates_proportional": pair.adjugates_proportional,
        "matrices_proportional": pair.matrices_proportional,
    }
    record["kt"] = [format_rat(x) for x in kt_sequence(g1, g2)]
    fold = equality_theorem_m([g1, g2] + rest, cfg.m)
    record["mfold"] = {
        "report": jsonio.gap_report_to_json(fold.report),
        "adjugates_proportional": fold.adjugates_proportional,
    }
    return pair.report.gap, pair.report.equality, True


def _run_bm(cfg, rng, kind, record):
    n = cfg.n
    a0 = gen_pd_hermitian(rng.next_u64(), n, cfg.entry_bound)
    if kind == "proportional":
        a1 = a0.scale(_rand_scale(rng))
    else:
        a1 = gen_pd_hermitian(rng.next_u64(), n, cfg.entry_bound)
    rest = [gen_pd_hermitian(rng.next_u64(), n, cfg.entry_bound) for _ in range(n - cfg.m)]
    rep = bm_concavity_discriminant(a0, a1, rest, cfg.m, cfg.grid)
    ok = rep.max_violation <= cfg.tolerance
    record["max_violation"] = rep.max_violation
    record["within_tolerance"] = ok
    return None, False, ok


_GENERATED_RUNNERS = {
    "discriminant": _run_discriminant,
    "volume": _run_volume,
    "shephard": _run_shephard,
    "torus": _run_torus,
    "bm": _run_bm,
}


def _run_fixture(cfg, mode, obj, record):
    if mode == "discriminant":
        rep = af_gap_discriminant(obj.mats[0], obj.mats[1], list(obj.mats[2:]))
        record["report"] = jsonio.gap_report_to_json(rep)
        return rep.gap, rep.equality, True
    if mode == "volume":
        rep = af_gap_volume(obj.bodies[0], obj.bodies[1], list(obj.bodies[2:]))
        record["report"] = jsonio.gap_report_to_json(rep)
        return rep.gap, rep.equality, True
    if mode == "shephard":
        return _certify_gram(obj, record)
    if mode == "torus":
        classes = [TorusClass(m) for m in obj.mats]
        pair = equality_theorem_pair(classes[0], classes[1], classes[2:])
        record["report"] = jsonio.gap_report_to_json(pair.report)
        record["pair"] = {
            "adjugates_proportional": pair.adjugates_proportional,
            "matrices_proportional": pair.matrices_proportional,
        }
        record["kt"] = [format_rat(x) for x in kt_sequence(classes[0], classes[1])]
        return pair.report.gap, pair.report.equality, True
    raise ValueError(f"fixtures are not supported for mode {mode!r}")


def _worker(task):
    cfg, mode, index, fixture = task
    record = {"type": "instance", "mode": mode, "index": index}
    try:
        if fixture is None:
            seed = derive_seed(cfg.seed, index)
            record["seed"] = seed
            record["kind"] = "proportional" if index % 3 == 2 else "generic"
            runner = _GENERATED_RUNNERS[mode]
            gap, equality, ok = runner(cfg, SplitMix64(seed), record["kind"], record)
        else:
            record["source"] = "fixture"
            gap, equality, ok = _run_fixture(cfg, mode, fixture, record)
    except AfkitError as exc:
        record["error"] = f"{type(exc).__name__}: {exc}"
        return record, True, None, False
    return record, not ok, gap, equality


def load_fixtures(path, mode: str):
    """Parse a fixture file into typed instances for the given mode.

    The file holds one JSON object (a single instance) or an array of
    objects. Structural problems raise FormatError here, before any
    verification work; semantic failures surface per instance later.
    """
    if mode in ("all", "bm"):
        raise ValueError(f"fixtures are not supported for mode {mode!r}")
    with open(path, "r", encoding="utf-8") as fh:
        text = fh.read()
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"fixture file is not valid JSON: {exc}") from None
    items = data if isinstance(data, list) else [data]
    if not items:
        raise FormatError("fixture file holds no instances")
    parsed = []
    for item in items:
        if mode in ("discriminant", "torus"):
            parsed.append(jsonio.tuple_from_json(item))
        elif mode == "shephard":
            parsed.append(jsonio.gram_from_json(item))
        else:
            parsed.append(jsonio.body_tuple_from_json(item))
    return parsed


def worker_count() -> int:
    """Worker cap from AFKIT_THREADS; absent or unusable means serial."""
    raw = os.environ.get("AFKIT_THREADS", "")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def run_suite(cfg: RunConfig, out=None, fixtures=None) -> RunRecord:
    """Verify `trials` instances (or the fixtures) under cfg.

    Writes one canonical JSON line per instance plus a trailing summary
    line to `out` when given. Instances run concurrently when
    AFKIT_THREADS allows, but lines are always emitted in index order,
    so identical configs give byte-identical output.
    """
    validate_config(cfg)
    start = time.monotonic()
    if fixtures is not None:
        tasks = [(cfg, cfg.mode, i, obj) for i, obj in enumerate(fixtures)]
    else:
        tasks = []
        index = 0
        for _ in range(cfg.trials):
            for mode in _instance_modes(cfg):
                tasks.append((cfg, mode, index, None))
                index += 1
    workers = worker_count()
    if workers > 1 and len(tasks) > 1:
        try:
            with ProcessPoolExecutor(max_workers=workers) as pool:
                results = list(pool.map(_worker, tasks))
        except OSError:
            results = [_worker(t) for t in tasks]
    else:
        results = [_worker(t) for t in tasks]
    records = []
    failed_indices = []
    equalities = 0
    min_gap = None
    for record, failed, gap, equality in results:
        records.append(record)
        if failed:
            failed_indices.append(record["index"])
        if equality:
            equalities += 1
        if gap is not None and (min_gap is None or gap < min_gap):
            min_gap = gap
    summary = {
        "type": "summary",
        "config": config_to_json(cfg),
        "instances": len(records),
        "failures": len(failed_indices),
        "failed_indices": failed_indices,
        "equalities": equalities,
        "min_gap": None if min_gap is None else format_rat(min_gap),
    }
    wall = time.monotonic() - start
    if out is not None:
        for record in records:
            out.write(jsonio.dumps_canonical(record) + "\n")
        out.write(jsonio.dumps_canonical(summary) + "\n")
    return RunRecord(cfg, tuple(records), summary, wall)
