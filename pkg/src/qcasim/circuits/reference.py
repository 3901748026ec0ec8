"""Published benchmark metrics shipped as static comparison data.

Rows list third-party multiplexer designs by author-year key; the `proposed`
rows are the designs bundled in this package. Only the bundled designs exist
as layouts here; the rest are reference numbers for the comparison printout.
"""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class DesignRow:
    key: str
    area_um2: float
    cell_count: int
    crossover: str
    latency_zones: int


MUX2_COMPARISON: tuple[DesignRow, ...] = (
    DesignRow("teodosio2007-fig9", 0.28, 146, "multilayer", 8),
    DesignRow("teodosio2007-fig8", 0.14, 88, "multilayer", 4),
    DesignRow("mardiris2008", 0.14, 67, "coplanar", 4),
    DesignRow("mardiris2010", 0.07, 56, "coplanar", 4),
    DesignRow("kim2007", 0.08, 46, "coplanar", 4),
    DesignRow("hashemi2008", 0.06, 36, "multilayer", 4),
    DesignRow("askari2008", 0.04, 35, "coplanar", 4),
    DesignRow("walus2004", 0.03, 27, "coplanar", 3),
    DesignRow("sabbaghi2014", 0.02, 26, "coplanar", 2),
    DesignRow("sen2015", 0.02, 23, "coplanar", 2),
    DesignRow("sen2014", 0.02, 19, "coplanar", 2),
    DesignRow("sen2012", 0.02, 19, "coplanar", 3),
    DesignRow("rashidi2016", 0.01, 15, "coplanar", 2),
    DesignRow("asfestani2017", 0.01, 12, "none", 1),
    DesignRow("proposed", 0.01, 11, "none", 1),
)

MUX4_COMPARISON: tuple[DesignRow, ...] = (
    DesignRow("mardiris2010", 0.35, 290, "coplanar", 6),
    DesignRow("sabbaghi2014", 0.37, 271, "coplanar", 19),
    DesignRow("cocorullo2016-a", 0.20, 251, "multilayer", 5),
    DesignRow("vankamamidi2008", 0.22, 223, "multilayer", 6),
    DesignRow("mardiris2008", 0.25, 215, "coplanar", 6),
    DesignRow("cocorullo2016-b", 0.27, 199, "coplanar", 6),
    DesignRow("sen2015", 0.24, 155, "coplanar", 5),
    DesignRow("askari2008", 0.25, 124, "coplanar", 8),
    DesignRow("rashidi2016", 0.15, 107, "coplanar", 4),
    DesignRow("asfestani2017", 0.08, 61, "coplanar", 4),
    DesignRow("proposed", 0.03, 37, "none", 3),
)


@dataclass(frozen=True)
class PowerRow:
    key: str
    leakage_mev: tuple[float, float, float]  # at 0.5, 1.0, 1.5 Ek
    switching_mev: tuple[float, float, float]
    total_mev: tuple[float, float, float]


MUX2_POWER_REFERENCE: tuple[PowerRow, ...] = (
    PowerRow("roohi2011", (7.36, 21.78, 38.79), (32.40, 28.23, 24.20), (39.76, 50.01, 62.99)),
    PowerRow("sabbaghi2014", (8.19, 23.80, 41.82), (29.15, 25.06, 21.21), (37.34, 48.86, 63.03)),
    PowerRow("sen2015", (7.23, 20.54, 35.68), (24.37, 20.77, 17.48), (31.60, 41.31, 53.16)),
    PowerRow("asfestani2017", (3.43, 9.61, 16.46), (11.54, 9.50, 7.86), (14.97, 19.11, 24.32)),
    PowerRow("proposed-layout1", (2.66, 7.72, 13.59), (11.15, 9.90, 8.63), (13.81, 17.62, 22.22)),
    PowerRow("proposed-layout2", (2.54, 7.50, 13.35), (8.07, 7.04, 6.07), (10.61, 14.54, 19.42)),
)
