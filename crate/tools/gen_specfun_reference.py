#!/usr/bin/env python3
"""Generate the frozen reference table for the cylinder-function tests.

Values are computed with mpmath at 50 significant digits and rounded to the
nearest f64 pair, so every row is correctly rounded reference data for
J_n(z), Y_n(z), H^(1)_n(z) and their z-derivatives.

Output: crates/helm2d/tests/data/specfun_reference.csv with rows

    func,n,re_z,im_z,re_f,im_f

where func is one of J, Y, H1, JD, YD, H1D (D = derivative w.r.t. z).
Points marked "skip-overflow" (|f| > 1e300) or "skip-underflow"
(|f| < 1e-290) are excluded; the Rust tests cover those regimes through
dedicated overflow/underflow cases instead.

Run from the repository root:  python3 tools/gen_specfun_reference.py
"""

import mpmath as mp

mp.mp.dps = 220

# (n, z) pairs chosen to cover every algorithm region and reduction branch:
# small |z| (power series), moderate |z| (backward recurrence), large |z|
# (asymptotic expansions), strongly complex arguments (modified-Bessel route),
# all four quadrants, negative orders, high orders, and near-zero crossings
# of J_0/J_1/Y_0 on the real axis (absolute-accuracy checks).
POINTS = [
    # --- small |z| ---
    (0, 0.05 + 0.0j), (1, 0.05 + 0.0j), (2, 0.05 + 0.0j),
    (0, 1.0 + 0.0j), (1, 1.0 + 0.0j), (5, 1.0 + 0.0j),
    (0, 2.0 + 0.0j), (3, 2.0 + 0.0j),
    (0, 3.0 + 2.0j), (1, 3.0 + 2.0j), (4, 3.0 + 2.0j), (11, 3.0 + 2.0j),
    (0, 6.0 - 4.0j), (2, 6.0 - 4.0j), (7, 6.0 - 4.0j),
    (0, 11.9 + 0.0j), (1, 11.9 + 0.0j), (6, 11.9 + 0.0j), (19, 11.9 + 0.0j),
    (0, 10.0 + 6.0j), (3, 10.0 + 6.0j),
    (0, -5.0 + 1.0j), (2, -5.0 + 1.0j), (9, -5.0 + 1.0j),
    (0, -8.0 - 3.0j), (1, -8.0 - 3.0j),
    (-3, 2.5 + 1.5j), (-12, 9.0 - 2.0j), (-1, 0.7 + 0.0j),
    (0, 0.0 + 9.5j), (1, 0.0 + 9.5j), (2, 0.0 - 9.5j),
    # --- moderate |z| (12 < |z| <= 35) ---
    (0, 13.0 + 0.0j), (1, 13.0 + 0.0j), (8, 13.0 + 0.0j), (24, 13.0 + 0.0j),
    (0, 20.5 + 0.0j), (2, 20.5 + 0.0j), (15, 20.5 + 0.0j),
    (0, 34.9 + 0.0j), (1, 34.9 + 0.0j), (30, 34.9 + 0.0j),
    (0, 12.5 + 1.9j), (5, 12.5 + 1.9j),
    (0, 25.0 - 2.0j), (3, 25.0 - 2.0j), (18, 25.0 - 2.0j),
    (0, 30.0 + 10.0j), (1, 30.0 + 10.0j), (11, 30.0 + 10.0j),
    (0, 18.0 - 25.0j), (2, 18.0 - 25.0j),
    (0, -20.0 + 5.0j), (4, -20.0 + 5.0j),
    (0, -14.0 - 14.0j), (1, -14.0 - 14.0j),
    (0, 1.0 + 30.0j), (2, 1.0 + 30.0j), (6, 0.5 + 34.0j),
    (40, 20.0 + 3.0j), (55, 30.0 - 4.0j),
    # --- large |z| (> 35) ---
    (0, 36.0 + 0.0j), (1, 36.0 + 0.0j), (9, 36.0 + 0.0j),
    (0, 100.0 + 0.0j), (1, 100.0 + 0.0j), (23, 100.0 + 0.0j),
    (0, 399.0 + 0.0j), (1, 399.0 + 0.0j), (57, 399.0 + 0.0j),
    (0, 50.0 + 40.0j), (1, 50.0 + 40.0j), (60, 50.0 + 40.0j),
    (0, 250.0 - 90.0j), (2, 250.0 - 90.0j),
    (0, 300.0 + 99.0j), (1, 300.0 + 99.0j),
    (0, -80.0 + 20.0j), (3, -80.0 + 20.0j),
    (0, -350.0 - 60.0j), (1, -350.0 - 60.0j),
    (0, 38.0 + 1.0j), (12, 38.0 + 1.0j),
    (0, 40.0 - 90.0j), (5, 40.0 - 90.0j),
    # --- high orders ---
    (75, 36.0 + 0.0j), (100, 80.0 + 10.0j), (143, 150.0 + 0.0j),
    (200, 250.0 - 90.0j), (200, 399.0 + 0.0j), (200, 150.0 + 20.0j),
    (-60, 50.0 + 40.0j), (-143, 150.0 + 0.0j),
    # --- near real-axis zeros (absolute accuracy) ---
    (0, 2.404825557695773 + 0.0j),      # first zero of J_0
    (0, 11.791534439014281 + 0.0j),     # fourth zero of J_0
    (1, 13.323691936314223 + 0.0j),     # fourth zero of J_1
    (0, 3.957678419314858 + 0.0j),      # second zero of Y_0
    (0, 0.8935769662791675 + 0.0j),     # first zero of Y_0
]


def f64(x):
    """Round an mpf to the nearest f64 and render it exactly."""
    return repr(float(mp.mpf(x)))


def emit(rows, func, n, z, val):
    mag = abs(val)
    if mag > mp.mpf("1e300") or (mag != 0 and mag < mp.mpf("1e-290")):
        return
    rows.append(f"{func},{n},{f64(z.real)},{f64(z.imag)},{f64(val.real)},{f64(val.imag)}")


def main():
    rows = []
    for n, zc in POINTS:
        z = mp.mpc(zc)
        j = mp.besselj(n, z)
        y = mp.bessely(n, z)
        h = mp.hankel1(n, z)
        jd = (mp.besselj(n - 1, z) - mp.besselj(n + 1, z)) / 2
        yd = (mp.bessely(n - 1, z) - mp.bessely(n + 1, z)) / 2
        hd = (mp.hankel1(n - 1, z) - mp.hankel1(n + 1, z)) / 2
        emit(rows, "J", n, z, j)
        emit(rows, "Y", n, z, y)
        emit(rows, "H1", n, z, h)
        emit(rows, "JD", n, z, jd)
        emit(rows, "YD", n, z, yd)
        emit(rows, "H1D", n, z, hd)
    out = "crates/helm2d/tests/data/specfun_reference.csv"
    with open(out, "w") as fh:
        fh.write("# func,n,re_z,im_z,re_f,im_f  (correctly rounded, 220-digit source)\n")
        fh.write("\n".join(rows) + "\n")
    print(f"wrote {len(rows)} rows to {out}")


if __name__ == "__main__":
    main()
