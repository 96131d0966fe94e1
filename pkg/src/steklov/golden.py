"""Golden reference eigenvalues for the benchmark domain families.

Values reproduce an independent finite-element study of the same domains
(digits exactly as published there); the table-reproduction experiments
compare this package's solver against them.  Benchmarks use a unit hole
throughout.  Table 1 compares the second nonzero eigenvalue of both
problems across three equal-hole domains; tables 2-4 sweep the hole
center of an ellipse along the x-axis, the y-axis, and the diagonal.
"""

from steklov.domains import Disk, DomainSpec, Ellipse, Rectangle

HOLE_RADIUS = 1.0
ORIGIN = (0.0, 0.0)

DISK_OUTER = Disk(5.0)
RECT_OUTER = Rectangle(13.095, 6.0)
ELLIPSE_OUTER = Ellipse(3.0, 8.33)

TABLE1_DOMAINS = {
    "annulus": DomainSpec(DISK_OUTER, ORIGIN, HOLE_RADIUS),
    "rectangle": DomainSpec(RECT_OUTER, ORIGIN, HOLE_RADIUS),
    "ellipse": DomainSpec(ELLIPSE_OUTER, ORIGIN, HOLE_RADIUS),
}

TABLE1_VALUES = {
    "annulus": {"sigma2": 0.1783, "mu2": 0.18467},
    "rectangle": {"sigma2": 0.2384, "mu2": 0.23222},
    "ellipse": {"sigma2": 0.20204, "mu2": 0.24484},
}

DISK_CENTERS = (
    (0.5, 0.0), (1.0, 0.0), (1.5, 0.0), (2.0, 0.0),
    (2.5, 0.0), (3.0, 0.0), (3.5, 0.0),
)

DISK_SWEEP = {
    "sigma1": (0.177575, 0.175421, 0.171908, 0.167088,
               0.160911, 0.152997, 0.141689),
    "sigma2": (0.178242, 0.178052, 0.177698, 0.177101,
               0.176084, 0.174166, 0.169468),
    "mu1": (0.184583, 0.18448, 0.184289, 0.183969,
            0.183431, 0.182441, 0.180127),
    "mu2": (0.184583, 0.18448, 0.184289, 0.183969,
            0.183431, 0.182441, 0.180127),
}

ELLIPSE_X_CENTERS = ((0.4, 0.0), (0.8, 0.0), (1.2, 0.0), (1.6, 0.0), (1.9, 0.0))

ELLIPSE_X_SWEEP = {
    "sigma1": (0.0671757, 0.0670031, 0.0666325, 0.0657731, 0.0636588),
    "sigma2": (0.200234, 0.195403, 0.186742, 0.17198, 0.1478),
    "mu1": (0.0682314, 0.0680922, 0.0677969, 0.0671274, 0.0655633),
    "mu2": (0.231544, 0.230396, 0.228218, 0.22400, 0.214635),
}

ELLIPSE_Y_CENTERS = (
    (0.0, 0.5), (0.0, 1.5), (0.0, 2.5), (0.0, 3.5),
    (0.0, 4.5), (0.0, 5.5), (0.0, 6.5),
)

ELLIPSE_Y_SWEEP = {
    "sigma1": (0.0671408, 0.0664638, 0.0651789, 0.0633908,
               0.0611841, 0.0585319, 0.0548775),
    "sigma2": (0.202004, 0.203392, 0.204995, 0.204736,
               0.200454, 0.190421, 0.17005),
    "mu1": (0.0682859, 0.0683868, 0.0685867, 0.0688788,
            0.0692449, 0.0696235, 0.0697002),
    "mu2": (0.231531, 0.228691, 0.223756, 0.217687,
            0.211176, 0.204242, 0.19409),
}

ELLIPSE_DIAG_CENTERS = ((0.5, 0.5), (1.0, 1.0), (1.5, 1.5), (1.9, 1.9))

ELLIPSE_DIAG_SWEEP = {
    "sigma1": (0.0670582, 0.0664918, 0.0651753, 0.0600965),
    "sigma2": (0.199557, 0.192501, 0.177751, 0.128205),
    "mu1": (0.0682192, 0.0680132, 0.0673899, 0.0641569),
    "mu2": (0.230959, 0.227984, 0.221902, 0.198211),
}

QUANTITIES = ("sigma1", "sigma2", "mu1", "mu2")

_SWEEP_TABLES = {
    2: ("axis-x", ELLIPSE_X_CENTERS, ELLIPSE_X_SWEEP),
    3: ("axis-y", ELLIPSE_Y_CENTERS, ELLIPSE_Y_SWEEP),
    4: ("diagonal", ELLIPSE_DIAG_CENTERS, ELLIPSE_DIAG_SWEEP),
}


def golden_table(table_id):
    """Golden data for one published table.

    Table 1 is the three-domain comparison ({"kind": "comparison"});
    tables 2-4 are the ellipse hole-center sweeps ({"kind": "sweep"} with
    the path, centers, and per-quantity value tuples).
    """
    if table_id == 1:
        return {
            "kind": "comparison",
            "domains": dict(TABLE1_DOMAINS),
            "values": {name: dict(vals) for name, vals in TABLE1_VALUES.items()},
        }
    if table_id in _SWEEP_TABLES:
        path, centers, values = _SWEEP_TABLES[table_id]
        return {
            "kind": "sweep",
            "outer": ELLIPSE_OUTER,
            "path": path,
            "centers": centers,
            "values": {q: tuple(v) for q, v in values.items()},
        }
    raise ValueError(f"table id must be 1..4, got {table_id!r}")
