"""Minimax (L-infinity) isotonic regression over grouped targets.

Each group has a key and a multiset of targets.  We look for one value per
group, non-decreasing in the key order, minimising the largest absolute
deviation from any target; a group at key 0 may be pinned to value 0.

For a candidate error ``e`` group ``g`` needs its value in
``[hi_g - e, lo_g + e]``; a non-decreasing choice exists iff
``hi_i - e <= lo_j + e`` whenever ``i <= j``.  Hence the optimum is
``max_{i <= j} (hi_i - lo_j) / 2`` (and ``max target`` of a pinned group).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence, Tuple

import numpy as np

from .errors import InvalidInput


@dataclass(frozen=True)
class IsotonicInstance:
    groups: Tuple[Tuple[float, Tuple[float, ...]], ...]
    pinned_zero: bool = True

    def __post_init__(self):
        groups = tuple((float(k), tuple(float(t) for t in ts)) for k, ts in self.groups)
        keys = [k for k, _ in groups]
        if any(b <= a for a, b in zip(keys, keys[1:])):
            raise InvalidInput("group keys must be strictly ascending")
        if any(k < 0 for k in keys):
            raise InvalidInput("group keys must be non-negative")
        if any(not ts for _, ts in groups):
            raise InvalidInput("every group needs at least one target")
        if any(t < 0 for _, ts in groups for t in ts):
            raise InvalidInput("targets must be non-negative")
        object.__setattr__(self, "groups", groups)

    @classmethod
    def from_mapping(cls, mapping, pinned_zero: bool = True) -> "IsotonicInstance":
        return cls(tuple(sorted((k, tuple(v)) for k, v in mapping.items())), pinned_zero)


def envelope_error(hi: np.ndarray, lo: np.ndarray, pinned_hi: float = 0.0) -> float:
    """Optimal error from per-group target extremes (groups in key order).

    ``pinned_hi`` is the largest target of the pinned zero group (0 if none).
    """
    if len(hi) == 0:
        return float(pinned_hi)
    running = np.maximum.accumulate(hi)
    return float(max(pinned_hi, np.max(running - lo) / 2.0))


def isotonic_linf(inst: IsotonicInstance) -> Tuple[Tuple[float, ...], float]:
    """Optimal non-decreasing values and their max deviation.

    Values are the midpoints of the tightest feasible band
    ``[max_{i<=g} hi_i - e, min_{j>=g} lo_j + e]``, clipped at 0.

    >>> isotonic_linf(IsotonicInstance(((3, (3,)), (4, (4, 5))), pinned_zero=False))
    ((3.0, 4.5), 0.5)
    """
    groups = list(inst.groups)
    pinned = inst.pinned_zero and groups and groups[0][0] == 0.0
    pinned_hi = max(groups[0][1]) if pinned else 0.0
    free = groups[1:] if pinned else groups
    if not free:
        return ((0.0,) if pinned else ()), float(pinned_hi)
    hi = np.array([max(ts) for _, ts in free])
    lo = np.array([min(ts) for _, ts in free])
    err = envelope_error(hi, lo, pinned_hi)
    lower = np.maximum.accumulate(hi) - err
    upper = np.minimum.accumulate(lo[::-1])[::-1] + err
    # upper >= 0 always, so clipping keeps every value inside its band
    vals = np.maximum((lower + upper) / 2.0, 0.0)
    out = tuple(float(v) for v in vals)
    return ((0.0,) + out if pinned else out), err


def instance_from_pairs(keys: Sequence[float], targets: Sequence[float], pinned_zero: bool = True) -> IsotonicInstance:
    """Group ``(key, target)`` observations by key."""
    grouped: dict = {}
    for k, t in zip(keys, targets):
        grouped.setdefault(float(k), []).append(float(t))
    return IsotonicInstance.from_mapping(grouped, pinned_zero)
