#!/usr/bin/env python3
"""Builds data/resource_table.csv and include/dlsml/default_table_data.hpp.

The published DLS Standard Edition excerpt (overs left 33..50, wickets lost
0..6) is kept verbatim. Every other cell is filled from the exponential
resource model

    R(u, w) = A_w * (1 - exp(-b_w * u)),  A_w = F_w / (1 - exp(-b0 * 50)),
    b_w = b0 / F_w

fitted by least squares to the excerpt, with F_w extrapolated to wickets 7..9
by a quadratic in w that vanishes at w = 10. Fitted cells are then clipped so
the grid stays non-increasing along both axes.
"""
import pathlib

import numpy as np
from scipy.optimize import least_squares

ROOT = pathlib.Path(__file__).resolve().parent.parent

# overs_left -> wickets 0..6
EXCERPT = {
    50: [100.0, 93.4, 85.1, 74.9, 62.7, 49.0, 34.9],
    49: [99.1, 92.6, 84.5, 74.4, 62.5, 48.9, 34.9],
    48: [98.1, 91.7, 83.8, 74.0, 62.2, 48.8, 34.9],
    47: [97.1, 90.9, 83.2, 73.5, 61.9, 48.6, 34.9],
    46: [96.1, 90.0, 82.5, 73.0, 61.6, 48.5, 34.8],
    45: [95.0, 89.1, 81.8, 72.5, 61.3, 48.4, 34.8],
    44: [93.9, 88.2, 81.0, 72.0, 61.0, 48.3, 34.8],
    43: [92.8, 87.3, 80.3, 71.4, 60.7, 48.1, 34.7],
    42: [91.7, 86.3, 79.5, 70.9, 60.3, 47.9, 34.7],
    41: [90.5, 85.3, 78.7, 70.3, 59.9, 47.8, 34.6],
    40: [89.3, 84.2, 77.8, 69.6, 59.5, 47.6, 34.6],
    39: [88.0, 83.1, 76.9, 69.0, 59.1, 47.4, 34.5],
    38: [86.7, 82.0, 76.0, 68.3, 58.7, 47.1, 34.5],
    37: [85.4, 80.9, 75.0, 67.6, 58.2, 46.9, 34.4],
    36: [84.1, 79.7, 74.1, 66.8, 57.7, 46.6, 34.3],
    35: [82.7, 78.5, 73.0, 66.0, 57.2, 46.4, 34.2],
    34: [81.3, 77.2, 72.0, 65.2, 56.6, 46.1, 34.1],
    33: [79.8, 75.9, 70.9, 64.4, 56.0, 45.8, 34.0],
}


def model(params, u, w):
    b0 = params[0]
    f = np.concatenate([[1.0], params[1:]])[w]
    return 100.0 * f * (1.0 - np.exp(-b0 * u / f)) / (1.0 - np.exp(-b0 * 50.0))


def fit():
    us, ws, ys = [], [], []
    for u, row in EXCERPT.items():
        for w, v in enumerate(row):
            us.append(u)
            ws.append(w)
            ys.append(v)
    us, ws, ys = np.array(us, float), np.array(ws), np.array(ys)
    x0 = np.array([0.035, 0.9, 0.8, 0.7, 0.6, 0.45, 0.3])
    res = least_squares(lambda p: model(p, us, ws) - ys, x0,
                        bounds=([1e-4] + [1e-3] * 6, [1.0] + [2.0] * 6))
    return res.x


def extrapolate_f(f_known):
    # quadratic through (10, 0) fitted to w = 3..6
    w = np.arange(3, 7, dtype=float)
    y = f_known[3:7]
    # y = a (10 - w) + c (10 - w)^2
    design = np.stack([10 - w, (10 - w) ** 2], axis=1)
    coef, *_ = np.linalg.lstsq(design, y, rcond=None)
    return [coef[0] * (10 - k) + coef[1] * (10 - k) ** 2 for k in (7, 8, 9)]


def build_grid():
    params = fit()
    b0 = params[0]
    f = np.concatenate([[1.0], params[1:]])
    f = np.concatenate([f, extrapolate_f(f)])
    grid = np.zeros((51, 10))
    for u in range(1, 51):
        for w in range(10):
            grid[u, w] = 100.0 * f[w] * (1 - np.exp(-b0 * u / f[w])) / (1 - np.exp(-b0 * 50))
    grid = np.round(grid, 1)
    for u, row in EXCERPT.items():
        grid[u, : len(row)] = row
    # non-increasing as overs_left decreases, then across wickets
    for w in range(10):
        for u in range(49, 0, -1):
            grid[u, w] = min(grid[u, w], grid[u + 1, w])
    for u in range(1, 51):
        for w in range(1, 10):
            grid[u, w] = min(grid[u, w], grid[u, w - 1])
    for u, row in EXCERPT.items():
        assert list(grid[u, : len(row)]) == row
    return params, f, grid


def render_csv(grid):
    lines = ["overs_left," + ",".join(f"w{w}" for w in range(10))]
    for u in range(50, 0, -1):
        lines.append(str(u) + "," + ",".join(f"{grid[u, w]:.1f}" for w in range(10)))
    return "\n".join(lines) + "\n"


def main():
    params, f, grid = build_grid()
    print("b0 =", params[0], "F =", np.round(f, 4))
    text = render_csv(grid)
    (ROOT / "data" / "resource_table.csv").write_text(text)
    header = (
        "#pragma once\n\n"
        "// Generated by tools/fit_resource_table.py from data/resource_table.csv.\n\n"
        "namespace dlsml::detail {\n\n"
        'inline constexpr const char* kDefaultResourceTableCsv = R"csv(' + text + ')csv";\n\n'
        "}  // namespace dlsml::detail\n"
    )
    (ROOT / "include" / "dlsml" / "default_table_data.hpp").write_text(header)


if __name__ == "__main__":
    main()
