#!/usr/bin/env python3
"""Reference eigenvalues of the per-mode circle determinants.

For a circle of radius a, both block formulations reduce per Fourier mode n
to small matrices whose determinants share the factored form

    det ∝ det_fict(n, ω) · det_true(n, ω)

with

    det_true(n, ω) = ε₁ k₀ H'_n(k₀a) J_n(k₁a) − ε₀ k₁ H_n(k₀a) J'_n(k₁a)
    det_fict(n, ω) = H_n(k₁a) · (J_n(k₀a) + i J'_n(k₀a))

(k_j = ω√(ε_jμ_j); the i in the second factor is the Burton–Miller coupling
α k₀ with α = i/k₀). Zeros of det_true are transmission resonances; zeros of
det_fict are fictitious eigenvalues of the formulations.

This script locates every zero of both factors inside a rectangular window,
verifies completeness per mode with the argument principle (phase winding
along the window boundary), and freezes the list to CSV at 30 significant
digits. The Rust oracle is regression-tested against this file.

Defaults match the shipped example configuration:
    a = 1, eps = (1, 4), mu = (1, 1), window [0.5, 3] x [-1, 0].
"""

import csv
import sys

import mpmath as mp

mp.mp.dps = 40

A = mp.mpf(1)
EPS0, EPS1 = mp.mpf(1), mp.mpf(4)
MU0, MU1 = mp.mpf(1), mp.mpf(1)
RE_LO, RE_HI = mp.mpf("0.5"), mp.mpf("3.0")
IM_LO, IM_HI = mp.mpf("-1.0"), mp.mpf("0.0")
MAX_MODE = 17

SQ0 = mp.sqrt(EPS0 * MU0)
SQ1 = mp.sqrt(EPS1 * MU1)


def jd(n, z):
    return (mp.besselj(n - 1, z) - mp.besselj(n + 1, z)) / 2


def hd(n, z):
    return (mp.hankel1(n - 1, z) - mp.hankel1(n + 1, z)) / 2


def det_true(n, w):
    k0, k1 = SQ0 * w, SQ1 * w
    return (
        EPS1 * k0 * hd(n, k0 * A) * mp.besselj(n, k1 * A)
        - EPS0 * k1 * mp.hankel1(n, k0 * A) * jd(n, k1 * A)
    )


def det_fict(n, w):
    k0, k1 = SQ0 * w, SQ1 * w
    return mp.hankel1(n, k1 * A) * (mp.besselj(n, k0 * A) + 1j * jd(n, k0 * A))


def winding(f, re_lo, re_hi, im_lo, im_hi, samples_per_edge=600):
    """Total phase change of f along the rectangle boundary, in turns."""
    corners = [
        mp.mpc(re_lo, im_lo),
        mp.mpc(re_hi, im_lo),
        mp.mpc(re_hi, im_hi),
        mp.mpc(re_lo, im_hi),
        mp.mpc(re_lo, im_lo),
    ]
    total = mp.mpf(0)
    prev_phase = None
    for seg in range(4):
        z0, z1 = corners[seg], corners[seg + 1]
        for i in range(samples_per_edge):
            z = z0 + (z1 - z0) * mp.mpf(i) / samples_per_edge
            v = f(z)
            if abs(v) == 0:
                raise RuntimeError("zero on contour")
            ph = mp.arg(v)
            if prev_phase is not None:
                d = ph - prev_phase
                while d > mp.pi:
                    d -= 2 * mp.pi
                while d < -mp.pi:
                    d += 2 * mp.pi
                if abs(d) > mp.pi * 0.9:
                    raise RuntimeError("phase step too large; refine sampling")
                total += d
            prev_phase = ph
    # close the loop
    v = f(corners[0])
    d = mp.arg(v) - prev_phase
    while d > mp.pi:
        d -= 2 * mp.pi
    while d < -mp.pi:
        d += 2 * mp.pi
    total += d
    turns = total / (2 * mp.pi)
    if abs(turns - mp.nint(turns)) > mp.mpf("0.05"):
        raise RuntimeError(f"non-integer winding {turns}")
    return int(mp.nint(turns))


def find_zeros(f, count):
    """Grid scan + Muller refinement until `count` distinct zeros are found."""
    if count == 0:
        return []
    zeros = []
    grid_n = 90
    grid_m = 60
    # margin keeps seeds off the boundary where roots cannot be (winding ok)
    for gi in range(grid_n):
        for gj in range(grid_m):
            re = RE_LO + (RE_HI - RE_LO) * (gi + mp.mpf("0.5")) / grid_n
            im = IM_LO + (IM_HI - IM_LO) * (gj + mp.mpf("0.5")) / grid_m
            seed = mp.mpc(re, im)
            try:
                z = mp.findroot(f, seed, solver="muller", tol=1e-50, maxsteps=60)
            except Exception:
                continue
            if not (RE_LO - 1e-12 <= z.real <= RE_HI + 1e-12):
                continue
            if not (IM_LO - 1e-12 <= z.imag <= IM_HI + 1e-12):
                continue
            if abs(f(z)) > mp.mpf("1e-25"):
                continue
            if any(abs(z - w) < mp.mpf("1e-12") for w in zeros):
                continue
            zeros.append(z)
            if len(zeros) == count:
                return sorted(zeros, key=lambda u: (mp.mpf(u.real), mp.mpf(u.imag)))
    raise RuntimeError(f"found {len(zeros)} of {count} zeros")


def main(out_path):
    rows = []
    for n in range(MAX_MODE + 1):
        for kind, f in (("resonance", lambda w, n=n: det_true(n, w)),
                        ("fictitious", lambda w, n=n: det_fict(n, w))):
            w = winding(f, RE_LO, RE_HI, IM_LO, IM_HI)
            if w < 0:
                raise RuntimeError("negative winding for an analytic factor")
            zs = find_zeros(f, w)
            sys.stderr.write(f"mode {n:2d} {kind:10s}: {w} zero(s)\n")
            for z in zs:
                rows.append(
                    (
                        mp.nstr(z.real, 30, strip_zeros=False),
                        mp.nstr(z.imag, 30, strip_zeros=False),
                        n,
                        1 if n == 0 else 2,
                        kind,
                    )
                )
    rows.sort(key=lambda r: (float(r[0]), float(r[1]), r[4], r[2]))
    with open(out_path, "w", newline="") as fh:
        wtr = csv.writer(fh)
        fh.write("# re_omega,im_omega,mode,multiplicity,kind\n")
        fh.write("# circle a=1, eps=(1,4), mu=(1,1), window [0.5,3]x[-1,0], 40-digit source\n")
        for r in rows:
            wtr.writerow(r)
    sys.stderr.write(f"{len(rows)} eigenvalues written to {out_path}\n")


if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else "circle_eigs_reference.csv")
