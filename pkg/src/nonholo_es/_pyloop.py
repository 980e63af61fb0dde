"""Pure-Python inner integration loop.

Mirror of the compiled kernel with the same stepping, refresh, recording
and exit semantics, but driven by arbitrary Python callables (fields,
cost, generating pair).  Selected when the compiled extension is missing
or the configuration falls outside its fast path.
"""

from __future__ import annotations

import math

import numpy as np

from .systems import frame_matrix

STATUS_OK = 0
STATUS_DOMAIN_EXIT = 1
STATUS_BLOWUP = 2
STATUS_PAIR_DOMAIN = 3  # only the compiled kernel reports this; the
# python loop raises DomainError from the pair itself


def record_count(n_steps: int, spe: int, stride: int) -> int:
    """Records produced absent early exit (pre-step samples plus the endpoint)."""
    per_full = (spe + stride - 1) // stride
    n_full, rem = divmod(n_steps, spe)
    return n_full * per_full + (rem + stride - 1) // stride + 1


def run_generic(sys, cost, cfg, n_steps: int, spe: int, stride: int, h: float):
    n, m = sys.n, sys.m
    sel = cfg.sel
    gains = cfg.gains
    pair = cfg.pair
    eps = gains.epsilon
    gamma1 = gains.gamma1
    mu, eta = cfg.sched.mu, cfg.sched.eta
    pin = cfg.pin_x
    y_shift = cfg.y_shift
    lo, hi = sys.domain.lower, sys.domain.upper
    fields = [sys.fields[i - 1] for i in range(1, m + 1)]

    n_s1 = len(sel.s1)
    s1_idx = [i - 1 for i in sel.s1]
    s2_idx = [(a - 1, b - 1) for a, b in sel.s2]
    kappas = list(sel.kappa)
    amp0 = math.sqrt(4.0 * math.pi / eps)

    amp_v = [math.sqrt(4.0 * math.pi * k / mu) / eta for k in cfg.sched.k]
    om_v = [2.0 * math.pi * k / (mu * eta) for k in cfg.sched.k]

    a_s1 = np.zeros(n_s1)
    a_s2 = np.zeros(len(s2_idx))

    def control(t: float) -> np.ndarray:
        u = np.zeros(m)
        for a, i1 in zip(a_s1, s1_idx):
            u[i1] += a
        for a, (i1, i2), kap in zip(a_s2, s2_idx, kappas):
            amp = amp0 * math.sqrt(kap * abs(a))
            phase = 2.0 * math.pi * kap * t / eps
            u[i1] += amp * np.sign(a) * math.cos(phase)
            u[i2] += amp * math.sin(phase)
        return u

    def rhs(t: float, x: np.ndarray, xi: np.ndarray):
        y = cost(xi if pin else x)
        g1v, g2v = pair.values(y - y_shift)
        xidot = np.empty(n)
        for j in range(n):
            xidot[j] = amp_v[j] * (
                g1v * math.cos(om_v[j] * t) + g2v * math.sin(om_v[j] * t)
            )
        if pin:
            return None, xidot
        u = control(t)
        xdot = np.zeros(n)
        for i in range(m):
            xdot += u[i] * np.asarray(fields[i](x), dtype=float)
        return xdot, xidot

    cap = record_count(n_steps, spe, stride) + 1
    times = np.empty(cap)
    xs = np.empty((cap, n))
    xis = np.empty((cap, n))
    ys = np.empty(cap)
    us = np.empty((cap, m))

    x = cfg.x0.astype(float).copy()
    xi = cfg.xi0.astype(float).copy()
    n_rec = 0
    last_rec_step = -1
    status = STATUS_OK
    exit_time = 0.0

    def record(step: int):
        nonlocal n_rec, last_rec_step
        if step == last_rec_step:
            return
        t = step * h
        times[n_rec] = t
        xs[n_rec] = x
        xis[n_rec] = xi
        ys[n_rec] = cost(x)
        us[n_rec] = control(t)
        n_rec += 1
        last_rec_step = step

    for step in range(n_steps):
        t = step * h
        if step % spe == 0 and not pin:
            # hold boundary: refresh the held coefficients from (x, xi)
            F = frame_matrix(sys, sel, x)
            a = -gamma1 * np.linalg.solve(F, x - xi)
            a_s1 = a[:n_s1]
            a_s2 = a[n_s1:]
        if (step % spe) % stride == 0:
            record(step)

        th = t + 0.5 * h
        k1x, k1v = rhs(t, x, xi)
        if pin:
            k2v = rhs(th, x, xi + 0.5 * h * k1v)[1]
            k3v = rhs(th, x, xi + 0.5 * h * k2v)[1]
            k4v = rhs(t + h, x, xi + h * k3v)[1]
            xin = xi + (h / 6.0) * (k1v + 2.0 * k2v + 2.0 * k3v + k4v)
            xn = xin
        else:
            k2x, k2v = rhs(th, x + 0.5 * h * k1x, xi + 0.5 * h * k1v)
            k3x, k3v = rhs(th, x + 0.5 * h * k2x, xi + 0.5 * h * k2v)
            k4x, k4v = rhs(t + h, x + h * k3x, xi + h * k3v)
            xn = x + (h / 6.0) * (k1x + 2.0 * k2x + 2.0 * k3x + k4x)
            xin = xi + (h / 6.0) * (k1v + 2.0 * k2v + 2.0 * k3v + k4v)

        if not (np.all(np.isfinite(xn)) and np.all(np.isfinite(xin))):
            status = STATUS_BLOWUP
            exit_time = (step + 1) * h
            break
        if np.any(xn < lo) or np.any(xn > hi) or np.any(xin < lo) or np.any(xin > hi):
            record(step)
            status = STATUS_DOMAIN_EXIT
            exit_time = (step + 1) * h
            break
        x, xi = xn, xin
    else:
        record(n_steps)

    return (
        times[:n_rec].copy(),
        xs[:n_rec].copy(),
        xis[:n_rec].copy(),
        ys[:n_rec].copy(),
        us[:n_rec].copy(),
        status,
        exit_time,
    )
