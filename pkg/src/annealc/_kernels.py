"""Numba kernels for the samplers.

Models arrive as a dense field vector plus a CSR neighbor list (each coupler
stored in both directions).  Every readout reseeds the generator from
(seed, readout index), so readouts are independent and the whole run is
deterministic for a given seed.  Configurations are returned raw; energies
are recomputed exactly outside the kernel.
"""

import numpy as np
from numba import njit


@njit(cache=True)
def _mix_seed(seed, r):
    return (seed * 2654435761 + r * 40503 + 12345) % 4294967296


@njit(cache=True)
def sa_sample(h, nbr_ptr, nbr_idx, nbr_val, t0, cooling, sweeps_per_temp, steps,
              readouts, seed, out, uphill):
    # single-spin-flip Metropolis with a geometric temperature ladder;
    # uphill[0]/uphill[1] count proposed/accepted increasing moves
    n = h.shape[0]
    for r in range(readouts):
        np.random.seed(_mix_seed(seed, r))
        s = np.empty(n, np.int8)
        for i in range(n):
            s[i] = 1 if np.random.random() < 0.5 else -1
        t = t0
        for _ in range(steps):
            for _ in range(sweeps_per_temp):
                for i in range(n):
                    local = h[i]
                    for p in range(nbr_ptr[i], nbr_ptr[i + 1]):
                        local += nbr_val[p] * s[nbr_idx[p]]
                    delta = -2.0 * s[i] * local
                    if delta <= 0.0:
                        s[i] = -s[i]
                    else:
                        uphill[0] += 1
                        if np.random.random() < np.exp(-delta / t):
                            uphill[1] += 1
                            s[i] = -s[i]
            t *= cooling
        for i in range(n):
            out[r, i] = s[i]


@njit(cache=True)
def sqa_sample(h, nbr_ptr, nbr_idx, nbr_val, slices, gamma0, gamma_final, temp,
               sweeps, readouts, seed, out):
    # path-integral transverse-field annealing: `slices` coupled replicas with
    # periodic boundary; the problem ramps in as B while the replica coupling
    # J_perp weakens from very negative (locked) toward 0 as gamma grows
    n = h.shape[0]
    P = slices
    for r in range(readouts):
        np.random.seed(_mix_seed(seed, r))
        s = np.empty((P, n), np.int8)
        for k in range(P):
            for i in range(n):
                s[k, i] = 1 if np.random.random() < 0.5 else -1
        for m in range(sweeps):
            tau = m / (sweeps - 1.0) if sweeps > 1 else 1.0
            gamma = gamma_final + (gamma0 - gamma_final) * (1.0 - tau)
            b = tau
            jperp = 0.5 * P * temp * np.log(np.tanh(gamma / (P * temp)))
            for k in range(P):
                up = (k + 1) % P
                down = (k - 1) % P
                for i in range(n):
                    local = h[i]
                    for p in range(nbr_ptr[i], nbr_ptr[i + 1]):
                        local += nbr_val[p] * s[k, nbr_idx[p]]
                    delta = (-2.0 * s[k, i]) * (b * local / P
                                                + jperp * (s[up, i] + s[down, i]))
                    if delta <= 0.0 or np.random.random() < np.exp(-delta / temp):
                        s[k, i] = -s[k, i]
        # readout: the replica that scores best under the full problem
        best_k = 0
        best_e = np.inf
        for k in range(P):
            e = 0.0
            for i in range(n):
                e += h[i] * s[k, i]
                for p in range(nbr_ptr[i], nbr_ptr[i + 1]):
                    j = nbr_idx[p]
                    if j > i:
                        e += nbr_val[p] * s[k, i] * s[k, j]
            if e < best_e:
                best_e = e
                best_k = k
        for i in range(n):
            out[r, i] = s[best_k, i]
