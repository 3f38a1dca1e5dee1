"""INI configuration for benchmark runs.

Example::

    [domain]
    kind = grid            ; grid | graph
    width = 40
    height = 40
    obstacle_density = 0.15
    primitives = lattice18 ; four | eight | lattice18
    num_headings = 8
    metric = euclidean
    min_distance = 10
    delay = fixed:10ms     ; none | fixed:D | per-action:FILE | lognormal:MU,SIGMA
    ; map = maps/office.map

    [bench]
    algorithms = WASTAR,PWASTAR,WPASE,EPASE
    threads = 1,2,4,8
    pairs = 5:5            ; w:eps, comma separated
    trials = 25
    seed = 0
    time_limit = 120
    thread_mgt = SPAWN_ON_DEMAND
    warmup = true
    out = results
"""
from __future__ import annotations

import configparser
import os
from dataclasses import dataclass, field, replace
from typing import Optional

from ..domains.delay import DelayModel, parse_delay
from ..domains.generators import Problem, random_explicit_graph, random_grid
from ..domains.mapfile import load_map
from ..planners.types import Algorithm, ThreadMgt


@dataclass(frozen=True)
class DomainSpec:
    kind: str = "grid"
    width: int = 40
    height: int = 40
    obstacle_density: float = 0.15
    primitives: str = "eight"
    num_headings: Optional[int] = None
    metric: str = "euclidean"
    min_distance: float = 0.0
    delay: DelayModel = field(default_factory=DelayModel)
    map_path: Optional[str] = None
    n_states: int = 200
    avg_degree: float = 4.0

    def instance(self, seed: int) -> Problem:
        if self.kind == "graph":
            prob = random_explicit_graph(seed, self.n_states, self.avg_degree)
            if self.delay.enabled:
                prob.space = replace(prob.space, delay=self.delay.with_seed(seed))
            return prob
        if self.kind != "grid":
            raise ValueError(f"unknown domain kind {self.kind!r}")
        occ = None if self.map_path is None else load_map(self.map_path)
        return random_grid(
            seed,
            self.width,
            self.height,
            self.obstacle_density,
            primitives=self.primitives,
            num_headings=self.num_headings,
            delay=self.delay.with_seed(seed),
            metric=self.metric,
            min_distance=self.min_distance,
            occupancy=occ,
        )


def _split(text: str) -> list[str]:
    return [t.strip() for t in text.replace(";", ",").split(",") if t.strip()]


def parse_pairs(text: str) -> list[tuple[float, float]]:
    """``"5:5, 1.5:3"`` -> ``[(5.0, 5.0), (1.5, 3.0)]``."""
    pairs = []
    for tok in _split(text):
        w, _, e = tok.partition(":")
        pairs.append((float(w), float(e or w)))
    return pairs


def parse_algorithms(text: str) -> list[Algorithm]:
    return [Algorithm(t.upper()) for t in _split(text)]


def parse_ints(text: str) -> list[int]:
    return [int(t) for t in _split(text)]


def read_ini(path: str | os.PathLike) -> configparser.ConfigParser:
    cp = configparser.ConfigParser(inline_comment_prefixes=(";", "#"))
    with open(path) as fh:
        cp.read_file(fh)
    return cp


def domain_from_section(sec: configparser.SectionProxy | dict, base_dir: str = ".") -> DomainSpec:
    get = sec.get
    delay = DelayModel()
    if get("delay"):
        spec = get("delay")
        kind = spec.split(":", 1)[0].strip().lower()
        if kind in ("per-action", "per_action"):
            fname = spec.split(":", 1)[1]
            if not os.path.isabs(fname):
                spec = spec.split(":", 1)[0] + ":" + os.path.join(base_dir, fname)
        delay = parse_delay(spec)
    map_path = get("map")
    if map_path and not os.path.isabs(map_path):
        map_path = os.path.join(base_dir, map_path)
    headings = get("num_headings")
    return DomainSpec(
        kind=get("kind", "grid"),
        width=int(get("width", 40)),
        height=int(get("height", 40)),
        obstacle_density=float(get("obstacle_density", 0.15)),
        primitives=get("primitives", "eight"),
        num_headings=int(headings) if headings else None,
        metric=get("metric", "euclidean"),
        min_distance=float(get("min_distance", 0.0)),
        delay=delay,
        map_path=map_path or None,
        n_states=int(get("n_states", 200)),
        avg_degree=float(get("avg_degree", 4.0)),
    )


@dataclass
class BenchSettings:
    algorithms: list[Algorithm] = field(
        default_factory=lambda: [Algorithm.WASTAR, Algorithm.PWASTAR, Algorithm.WPASE, Algorithm.EPASE]
    )
    threads: list[int] = field(default_factory=lambda: [1, 2, 4, 8])
    pairs: list[tuple[float, float]] = field(default_factory=lambda: [(5.0, 5.0)])
    trials: int = 10
    seed: int = 0
    time_limit: float = 120.0
    thread_mgt: ThreadMgt = ThreadMgt.SPAWN_ON_DEMAND
    warmup: bool = True
    out: str = "results"


def bench_from_section(sec: configparser.SectionProxy | dict) -> BenchSettings:
    s = BenchSettings()
    get = sec.get
    if get("algorithms"):
        s.algorithms = parse_algorithms(get("algorithms"))
    if get("threads"):
        s.threads = parse_ints(get("threads"))
    if get("pairs"):
        s.pairs = parse_pairs(get("pairs"))
    elif get("w") or get("eps"):
        w = float(get("w", get("eps")))
        s.pairs = [(w, float(get("eps", w)))]
    if get("trials"):
        s.trials = int(get("trials"))
    if get("seed"):
        s.seed = int(get("seed"))
    if get("time_limit"):
        s.time_limit = float(get("time_limit"))
    if get("thread_mgt"):
        s.thread_mgt = ThreadMgt(get("thread_mgt").upper())
    if get("warmup"):
        s.warmup = str(get("warmup")).strip().lower() in ("1", "true", "yes", "on")
    if get("out"):
        s.out = get("out")
    return s


def load_config(path: str | os.PathLike) -> tuple[DomainSpec, BenchSettings]:
    cp = read_ini(path)
    base = os.path.dirname(os.path.abspath(path))
    dom = domain_from_section(cp["domain"] if cp.has_section("domain") else {}, base)
    bench = bench_from_section(cp["bench"] if cp.has_section("bench") else {})
    return dom, bench

