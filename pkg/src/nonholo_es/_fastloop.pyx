# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled inner loop for the built-in Brockett / sphere-cost fast path.

Semantics mirror ``_pyloop.run_generic``: fixed RK4 steps, coefficient
refresh at hold boundaries, stride-based recording, domain/finiteness
checks after every step.  Supported generating pairs are the library
ones, identified by an integer kind in the order of seeker.PAIR_NAMES.
"""

import numpy as np

from libc.math cimport M_PI, cos, exp, expm1, fabs, isfinite, log, sin, sqrt, tanh

STATUS_OK = 0
STATUS_DOMAIN_EXIT = 1
STATUS_BLOWUP = 2
STATUS_PAIR_DOMAIN = 3

cdef enum:
    ST_OK = 0
    ST_DOMAIN_EXIT = 1
    ST_BLOWUP = 2
    ST_PAIR_DOMAIN = 3


cdef inline int pair_values(int kind, double s, double z, double* g1, double* g2) nogil:
    """Write (g_j(z), g_{j+n}(z)); nonzero return flags a domain violation."""
    cdef double rv, p
    if kind == 0:  # linear: g = (z, 1)
        g1[0] = s * z
        g2[0] = s
        return 0
    if kind == 1:  # bounded: g = (sin z, cos z)
        g1[0] = s * sin(z)
        g2[0] = s * cos(z)
        return 0
    if kind == 2:  # sqrt_log, z > 0
        if z <= 0.0:
            return 1
        rv = s * sqrt(z)
        p = log(z)
        g1[0] = rv * sin(p)
        g2[0] = rv * cos(p)
        return 0
    if kind == 3:  # gze18, z >= 0 with g(0) = 0
        if z < 0.0:
            return 1
        if z == 0.0:
            g1[0] = 0.0
            g2[0] = 0.0
            return 0
        rv = s * sqrt(-expm1(-z) / (1.0 + exp(z)))
        p = exp(z) + 2.0 * log(expm1(z))
        g1[0] = rv * sin(p)
        g2[0] = rv * cos(p)
        return 0
    # tanh_vanishing, z >= 0 with g(0) = 0
    if z < 0.0:
        return 1
    if z == 0.0:
        g1[0] = 0.0
        g2[0] = 0.0
        return 0
    rv = s * sqrt(tanh(0.5 * z))
    p = 2.0 * log(expm1(z)) - z
    g1[0] = rv * sin(p)
    g2[0] = rv * cos(p)
    return 0


cdef inline double sgn(double v) nogil:
    if v > 0.0:
        return 1.0
    if v < 0.0:
        return -1.0
    return 0.0


def run_brockett(
    double gamma1,
    double eps,
    double kappa,
    double[:] k,
    double mu,
    double eta,
    int pair_kind,
    double sqrt_gamma2,
    double y_shift,
    double[:] cost_center,
    double cost_scale,
    double cost_offset,
    double[:] x0,
    double[:] xi0,
    long n_steps,
    long spe,
    long stride,
    double[:] dom_lo,
    double[:] dom_hi,
    bint pin_x,
    double h,
):
    cdef long cap = (n_steps // spe) * ((spe + stride - 1) // stride)
    cap += ((n_steps % spe) + stride - 1) // stride + 2

    times_np = np.empty(cap)
    xs_np = np.empty((cap, 3))
    xis_np = np.empty((cap, 3))
    ys_np = np.empty(cap)
    us_np = np.empty((cap, 2))
    cdef double[:] times = times_np
    cdef double[:, :] xs = xs_np
    cdef double[:, :] xis = xis_np
    cdef double[:] ys = ys_np
    cdef double[:, :] us = us_np

    cdef double x1 = x0[0], x2 = x0[1], x3 = x0[2]
    cdef double v1 = xi0[0], v2 = xi0[1], v3 = xi0[2]
    cdef double c1 = cost_center[0], c2 = cost_center[1], c3 = cost_center[2]
    cdef double lo1 = dom_lo[0], lo2 = dom_lo[1], lo3 = dom_lo[2]
    cdef double hi1 = dom_hi[0], hi2 = dom_hi[1], hi3 = dom_hi[2]

    cdef double amp0 = sqrt(4.0 * M_PI / eps)
    cdef double ampv[3]
    cdef double omv[3]
    cdef long j
    for j in range(3):
        ampv[j] = sqrt(4.0 * M_PI * k[j] / mu) / eta
        omv[j] = 2.0 * M_PI * k[j] / (mu * eta)

    cdef double a1 = 0.0, a2 = 0.0, a12 = 0.0
    cdef long n_rec = 0, last_rec = -1, step = 0
    cdef int status = ST_OK
    cdef double exit_time = 0.0

    cdef double t, th, y, z, g1v, g2v, u1, u2, amp, phase, d1, d2, d3
    cdef double k1x1, k1x2, k1x3, k2x1, k2x2, k2x3, k3x1, k3x2, k3x3, k4x1, k4x2, k4x3
    cdef double k1v1, k1v2, k1v3, k2v1, k2v2, k2v3, k3v1, k3v2, k3v3, k4v1, k4v2, k4v3
    cdef double px1, px2, px3, pv1, pv2, pv3
    cdef double xn1, xn2, xn3, vn1, vn2, vn3
    cdef int bad = 0

    with nogil:
        for step in range(n_steps):
            t = step * h
            if step % spe == 0 and not pin_x:
                a1 = -gamma1 * (x1 - v1)
                a2 = -gamma1 * (x2 - v2)
                a12 = -gamma1 * 0.5 * (-x2 * v1 + x1 * v2 - x3 + v3)
            if (step % spe) % stride == 0 and step != last_rec:
                times[n_rec] = t
                xs[n_rec, 0] = x1
                xs[n_rec, 1] = x2
                xs[n_rec, 2] = x3
                xis[n_rec, 0] = v1
                xis[n_rec, 1] = v2
                xis[n_rec, 2] = v3
                d1 = x1 - c1
                d2 = x2 - c2
                d3 = x3 - c3
                ys[n_rec] = cost_scale * (d1 * d1 + d2 * d2 + d3 * d3) + cost_offset
                amp = amp0 * sqrt(kappa * fabs(a12))
                phase = 2.0 * M_PI * kappa * t / eps
                us[n_rec, 0] = a1 + amp * sgn(a12) * cos(phase)
                us[n_rec, 1] = a2 + amp * sin(phase)
                n_rec += 1
                last_rec = step

            # --- RK4 stage 1 at t ------------------------------------------
            d1 = (v1 if pin_x else x1) - c1
            d2 = (v2 if pin_x else x2) - c2
            d3 = (v3 if pin_x else x3) - c3
            y = cost_scale * (d1 * d1 + d2 * d2 + d3 * d3) + cost_offset
            bad = pair_values(pair_kind, sqrt_gamma2, y - y_shift, &g1v, &g2v)
            if bad:
                status = ST_PAIR_DOMAIN
                exit_time = t
                break
            k1v1 = ampv[0] * (g1v * cos(omv[0] * t) + g2v * sin(omv[0] * t))
            k1v2 = ampv[1] * (g1v * cos(omv[1] * t) + g2v * sin(omv[1] * t))
            k1v3 = ampv[2] * (g1v * cos(omv[2] * t) + g2v * sin(omv[2] * t))
            if not pin_x:
                amp = amp0 * sqrt(kappa * fabs(a12))
                phase = 2.0 * M_PI * kappa * t / eps
                u1 = a1 + amp * sgn(a12) * cos(phase)
                u2 = a2 + amp * sin(phase)
                k1x1 = u1
                k1x2 = u2
                k1x3 = u1 * x2 - u2 * x1

            # --- stage 2 at t + h/2 ----------------------------------------
            th = t + 0.5 * h
            pv1 = v1 + 0.5 * h * k1v1
            pv2 = v2 + 0.5 * h * k1v2
            pv3 = v3 + 0.5 * h * k1v3
            if pin_x:
                px1, px2, px3 = pv1, pv2, pv3
            else:
                px1 = x1 + 0.5 * h * k1x1
                px2 = x2 + 0.5 * h * k1x2
                px3 = x3 + 0.5 * h * k1x3
            d1 = px1 - c1
            d2 = px2 - c2
            d3 = px3 - c3
            y = cost_scale * (d1 * d1 + d2 * d2 + d3 * d3) + cost_offset
            bad = pair_values(pair_kind, sqrt_gamma2, y - y_shift, &g1v, &g2v)
            if bad:
                status = ST_PAIR_DOMAIN
                exit_time = th
                break
            k2v1 = ampv[0] * (g1v * cos(omv[0] * th) + g2v * sin(omv[0] * th))
            k2v2 = ampv[1] * (g1v * cos(omv[1] * th) + g2v * sin(omv[1] * th))
            k2v3 = ampv[2] * (g1v * cos(omv[2] * th) + g2v * sin(omv[2] * th))
            if not pin_x:
                phase = 2.0 * M_PI * kappa * th / eps
                u1 = a1 + amp * sgn(a12) * cos(phase)
                u2 = a2 + amp * sin(phase)
                k2x1 = u1
                k2x2 = u2
                k2x3 = u1 * px2 - u2 * px1

            # --- stage 3 at t + h/2 ----------------------------------------
            pv1 = v1 + 0.5 * h * k2v1
            pv2 = v2 + 0.5 * h * k2v2
            pv3 = v3 + 0.5 * h * k2v3
            if pin_x:
                px1, px2, px3 = pv1, pv2, pv3
            else:
                px1 = x1 + 0.5 * h * k2x1
                px2 = x2 + 0.5 * h * k2x2
                px3 = x3 + 0.5 * h * k2x3
            d1 = px1 - c1
            d2 = px2 - c2
            d3 = px3 - c3
            y = cost_scale * (d1 * d1 + d2 * d2 + d3 * d3) + cost_offset
            bad = pair_values(pair_kind, sqrt_gamma2, y - y_shift, &g1v, &g2v)
            if bad:
                status = ST_PAIR_DOMAIN
                exit_time = th
                break
            k3v1 = ampv[0] * (g1v * cos(omv[0] * th) + g2v * sin(omv[0] * th))
            k3v2 = ampv[1] * (g1v * cos(omv[1] * th) + g2v * sin(omv[1] * th))
            k3v3 = ampv[2] * (g1v * cos(omv[2] * th) + g2v * sin(omv[2] * th))
            if not pin_x:
                k3x1 = u1
                k3x2 = u2
                k3x3 = u1 * px2 - u2 * px1

            # --- stage 4 at t + h ------------------------------------------
            th = t + h
            pv1 = v1 + h * k3v1
            pv2 = v2 + h * k3v2
            pv3 = v3 + h * k3v3
            if pin_x:
                px1, px2, px3 = pv1, pv2, pv3
            else:
                px1 = x1 + h * k3x1
                px2 = x2 + h * k3x2
                px3 = x3 + h * k3x3
            d1 = px1 - c1
            d2 = px2 - c2
            d3 = px3 - c3
            y = cost_scale * (d1 * d1 + d2 * d2 + d3 * d3) + cost_offset
            bad = pair_values(pair_kind, sqrt_gamma2, y - y_shift, &g1v, &g2v)
            if bad:
                status = ST_PAIR_DOMAIN
                exit_time = th
                break
            k4v1 = ampv[0] * (g1v * cos(omv[0] * th) + g2v * sin(omv[0] * th))
            k4v2 = ampv[1] * (g1v * cos(omv[1] * th) + g2v * sin(omv[1] * th))
            k4v3 = ampv[2] * (g1v * cos(omv[2] * th) + g2v * sin(omv[2] * th))
            if not pin_x:
                phase = 2.0 * M_PI * kappa * th / eps
                u1 = a1 + amp * sgn(a12) * cos(phase)
                u2 = a2 + amp * sin(phase)
                k4x1 = u1
                k4x2 = u2
                k4x3 = u1 * px2 - u2 * px1

            vn1 = v1 + (h / 6.0) * (k1v1 + 2.0 * k2v1 + 2.0 * k3v1 + k4v1)
            vn2 = v2 + (h / 6.0) * (k1v2 + 2.0 * k2v2 + 2.0 * k3v2 + k4v2)
            vn3 = v3 + (h / 6.0) * (k1v3 + 2.0 * k2v3 + 2.0 * k3v3 + k4v3)
            if pin_x:
                xn1, xn2, xn3 = vn1, vn2, vn3
            else:
                xn1 = x1 + (h / 6.0) * (k1x1 + 2.0 * k2x1 + 2.0 * k3x1 + k4x1)
                xn2 = x2 + (h / 6.0) * (k1x2 + 2.0 * k2x2 + 2.0 * k3x2 + k4x2)
                xn3 = x3 + (h / 6.0) * (k1x3 + 2.0 * k2x3 + 2.0 * k3x3 + k4x3)

            if not (
                isfinite(xn1) and isfinite(xn2) and isfinite(xn3)
                and isfinite(vn1) and isfinite(vn2) and isfinite(vn3)
            ):
                status = ST_BLOWUP
                exit_time = (step + 1) * h
                break
            if (
                xn1 < lo1 or xn1 > hi1 or xn2 < lo2 or xn2 > hi2 or xn3 < lo3 or xn3 > hi3
                or vn1 < lo1 or vn1 > hi1 or vn2 < lo2 or vn2 > hi2 or vn3 < lo3 or vn3 > hi3
            ):
                if step != last_rec:
                    times[n_rec] = t
                    xs[n_rec, 0] = x1
                    xs[n_rec, 1] = x2
                    xs[n_rec, 2] = x3
                    xis[n_rec, 0] = v1
                    xis[n_rec, 1] = v2
                    xis[n_rec, 2] = v3
                    d1 = x1 - c1
                    d2 = x2 - c2
                    d3 = x3 - c3
                    ys[n_rec] = cost_scale * (d1 * d1 + d2 * d2 + d3 * d3) + cost_offset
                    amp = amp0 * sqrt(kappa * fabs(a12))
                    phase = 2.0 * M_PI * kappa * t / eps
                    us[n_rec, 0] = a1 + amp * sgn(a12) * cos(phase)
                    us[n_rec, 1] = a2 + amp * sin(phase)
                    n_rec += 1
                    last_rec = step
                status = ST_DOMAIN_EXIT
                exit_time = (step + 1) * h
                break
            x1, x2, x3 = xn1, xn2, xn3
            v1, v2, v3 = vn1, vn2, vn3
        else:
            # completed all steps: record the endpoint
            t = n_steps * h
            times[n_rec] = t
            xs[n_rec, 0] = x1
            xs[n_rec, 1] = x2
            xs[n_rec, 2] = x3
            xis[n_rec, 0] = v1
            xis[n_rec, 1] = v2
            xis[n_rec, 2] = v3
            d1 = x1 - c1
            d2 = x2 - c2
            d3 = x3 - c3
            ys[n_rec] = cost_scale * (d1 * d1 + d2 * d2 + d3 * d3) + cost_offset
            amp = amp0 * sqrt(kappa * fabs(a12))
            phase = 2.0 * M_PI * kappa * t / eps
            us[n_rec, 0] = a1 + amp * sgn(a12) * cos(phase)
            us[n_rec, 1] = a2 + amp * sin(phase)
            n_rec += 1

    return (
        times_np[:n_rec].copy(),
        xs_np[:n_rec].copy(),
        xis_np[:n_rec].copy(),
        ys_np[:n_rec].copy(),
        us_np[:n_rec].copy(),
        status,
        exit_time,
    )
