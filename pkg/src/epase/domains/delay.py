"""Synthetic edge-evaluation cost.

Real collision checking is CPU-bound, so the default ``spin`` mode burns a
calibrated number of floating point iterations inside a numba kernel that
releases the GIL.  Worker threads therefore contend for cores exactly as
they would with a native collision checker.  ``sleep`` mode is available
for experiments on machines with few cores, but it overstates parallel
speedup and is never used by the acceptance suite.
"""
from __future__ import annotations

import math
import random
import threading
import time
import zlib
from dataclasses import dataclass, replace
from typing import Hashable, Sequence

import numba
import numpy as np


@numba.njit(nogil=True, cache=True)
def _spin(n):  # pragma: no cover - compiled
    x = 1.0
    for _ in range(n):
        x = math.sqrt(x + 1.0)
    return x


_rate_lock = threading.Lock()
_rate: float | None = None


def spin_rate() -> float:
    """Kernel iterations per second, measured once per process."""
    global _rate
    with _rate_lock:
        if _rate is None:
            _spin(10)
            n = 2_000_000
            best = math.inf
            for _ in range(5):
                t0 = time.perf_counter()
                _spin(n)
                best = min(best, time.perf_counter() - t0)
            _rate = n / best
        return _rate


def busy_wait(seconds: float) -> None:
    if seconds > 0:
        _spin(int(seconds * spin_rate()))


KINDS = ("none", "fixed", "per_action", "lognormal")


@dataclass(frozen=True)
class DelayModel:
    """How long evaluating one edge takes.

    ``lognormal`` draws ``exp(N(mu, sigma))`` milliseconds per edge from a
    generator seeded by ``(seed, state, action)``, so a given edge always
    takes the same time no matter which thread evaluates it or when.
    """

    kind: str = "none"
    duration: float = 0.0
    per_action: tuple[float, ...] = ()
    mu: float = 0.0
    sigma: float = 0.0
    mode: str = "spin"
    seed: int = 0

    def __post_init__(self) -> None:
        if self.kind not in KINDS:
            raise ValueError(f"unknown delay kind {self.kind!r}")
        if self.mode not in ("spin", "sleep"):
            raise ValueError(f"unknown delay mode {self.mode!r}")

    @classmethod
    def none(cls) -> "DelayModel":
        return cls()

    @classmethod
    def fixed(cls, seconds: float, mode: str = "spin") -> "DelayModel":
        return cls(kind="fixed", duration=seconds, mode=mode)

    @classmethod
    def per_action_table(cls, seconds: Sequence[float], mode: str = "spin") -> "DelayModel":
        return cls(kind="per_action", per_action=tuple(seconds), mode=mode)

    @classmethod
    def lognormal(cls, mu: float, sigma: float, seed: int = 0, mode: str = "spin") -> "DelayModel":
        return cls(kind="lognormal", mu=mu, sigma=sigma, seed=seed, mode=mode)

    @property
    def enabled(self) -> bool:
        return self.kind != "none"

    def with_seed(self, seed: int) -> "DelayModel":
        return replace(self, seed=seed)

    def seconds(self, state: Hashable, action: int) -> float:
        if self.kind == "none":
            return 0.0
        if self.kind == "fixed":
            return self.duration
        if self.kind == "per_action":
            return self.per_action[action % len(self.per_action)]
        h = zlib.crc32(repr((self.seed, state, action)).encode())
        return random.Random(h).lognormvariate(self.mu, self.sigma) / 1000.0

    def __call__(self, state: Hashable, action: int) -> None:
        d = self.seconds(state, action)
        if d <= 0:
            return
        if self.mode == "spin":
            busy_wait(d)
        else:
            time.sleep(d)


def parse_delay(spec: str, per_action_values: Sequence[float] | None = None) -> DelayModel:
    """Parse ``none``, ``fixed:10ms``, ``per-action:FILE`` or ``lognormal:MU,SIGMA``.

    An optional ``@sleep`` suffix selects sleep mode.
    """
    mode = "spin"
    if spec.endswith("@sleep"):
        spec, mode = spec[: -len("@sleep")], "sleep"
    kind, _, arg = spec.partition(":")
    kind = kind.strip().lower().replace("-", "_")
    if kind == "none":
        return DelayModel(mode=mode)
    if kind == "fixed":
        return DelayModel.fixed(parse_duration(arg), mode=mode)
    if kind == "per_action":
        values = per_action_values
        if values is None:
            with open(arg) as fh:
                values = [parse_duration(tok) for tok in fh.read().replace(",", " ").split()]
        if not values:
            raise ValueError("per-action delay table is empty")
        return DelayModel.per_action_table(values, mode=mode)
    if kind == "lognormal":
        mu, sigma = (float(v) for v in arg.split(","))
        return DelayModel.lognormal(mu, sigma, mode=mode)
    raise ValueError(f"cannot parse delay spec {spec!r}")


def parse_duration(text: str) -> float:
    """``10ms`` / ``250us`` / ``0.5s`` / bare seconds -> seconds."""
    t = text.strip().lower()
    for suffix, scale in (("ms", 1e-3), ("us", 1e-6), ("s", 1.0)):
        if t.endswith(suffix):
            return float(t[: -len(suffix)]) * scale
    return float(t)


def measure(model: DelayModel, state: Hashable, action: int, repeats: int = 100) -> np.ndarray:
    """Wall durations of ``repeats`` delay executions, in seconds."""
    out = np.empty(repeats)
    for i in range(repeats):
        t0 = time.perf_counter()
        model(state, action)
        out[i] = time.perf_counter() - t0
    return out
