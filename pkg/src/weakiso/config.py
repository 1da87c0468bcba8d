"""Size caps and tolerances, overridable through environment variables.

==========================  =========================================  ========
variable                    meaning                                    default
==========================  =========================================  ========
WEAKISO_BRUTE_CAP           max points for bijection enumeration       8
WEAKISO_GH_CAP              max points per side for exact GH           7
WEAKISO_TUPLE_CAP           max tuples for a full curvature set        1000000
WEAKISO_REDUCED_CAP         max n (and m) for reduced curvature sets   8
WEAKISO_PERM_CAP            max m for canonical matrix forms           8
WEAKISO_SIMPLEX_CAP         max simplices in a filtration              1000000
WEAKISO_ISO_CAP             max points for per-scale graph isomorphism 10
WEAKISO_DIAGRAM_CAP         max bars per diagram in the d~ search      12
WEAKISO_EXACT_TOL           comparison tolerance on exact paths        1e-9
WEAKISO_STABILITY_TOL       slack in the stability inequality          1e-6
==========================  =========================================  ========
"""

from __future__ import annotations

import os
from dataclasses import dataclass, fields

from .errors import InvalidInput


@dataclass(frozen=True)
class Settings:
    brute_cap: int = 8
    gh_cap: int = 7
    tuple_cap: int = 1_000_000
    reduced_cap: int = 8
    perm_cap: int = 8
    simplex_cap: int = 1_000_000
    iso_cap: int = 10
    diagram_cap: int = 12
    exact_tol: float = 1e-9
    stability_tol: float = 1e-6

    @classmethod
    def from_env(cls, environ=None) -> "Settings":
        environ = os.environ if environ is None else environ
        kwargs = {}
        for f in fields(cls):
            raw = environ.get("WEAKISO_" + f.name.upper())
            if raw is None:
                continue
            try:
                kwargs[f.name] = int(float(raw)) if f.type == "int" else float(raw)
            except ValueError:
                raise InvalidInput(f"WEAKISO_{f.name.upper()}={raw!r} is not a number") from None
        return cls(**kwargs)


def settings() -> Settings:
    return Settings.from_env()
