"""
Sampling Gamma random measures with honest truncation accounting
================================================================

The Gamma random measure puts infinitely many atoms in every window,
almost all with tiny weights; its total window mass is
Gamma(theta * volume, 1) distributed.  Any finite sampler must truncate.
This script draws from both provided samplers, shows that the truncation
error is reported rather than hidden, and checks the window-mass law
against the closed-form CDF oracle.
"""

import math

import numpy as np

from platocone import (
    EmpiricalSample,
    FiniteProduct,
    TestFunction,
    Window,
    exp_integral_e1,
    expected_truncation_error,
    gamma_cdf,
    ks_statistic,
    sample_gamma,
    sample_gamma_ordered,
    sample_poisson,
)

window = Window((0.0,), (1.0,))
theta = 1.0

########################################################################
# Threshold sampler: keep atoms with mark > epsilon
# -------------------------------------------------
# The report states the mean count above the threshold and the expected
# mass that was discarded below it.

epsilon = 1e-6
eta, report = sample_gamma(theta, window, epsilon, seed=42)
print("atoms above epsilon:", report.atom_count,
      "(mean is theta*vol*E1(eps) =", round(theta * exp_integral_e1(epsilon), 3), ")")
print("total mass:", round(eta.total_mass(), 6))
print("expected discarded mass:", report.expected_discarded_mass,
      "<= theta*vol*eps =", theta * epsilon)
print("same seed, same measure:", sample_gamma(theta, window, epsilon, seed=42)[0] == eta)

# tightening epsilon shrinks the discarded mass linearly
for eps in [1e-2, 1e-4, 1e-8]:
    print(f"  eps={eps:<8g} expected discarded mass = {expected_truncation_error(theta, 1.0, eps):.3e}")

########################################################################
# Largest-jumps-first sampler
# ---------------------------
# Generates the n largest marks directly by inverting the tail mass
# function at unit-rate arrival times; marks come out strictly
# decreasing and the residual tail is reported.

eta_ord, report_ord = sample_gamma_ordered(theta, window, n_jumps=200, seed=42)
weights = sorted((w for _, w in eta_ord.atoms), reverse=True)
print("\nordered sampler: largest / smallest jump:",
      round(weights[0], 4), "/", f"{weights[-1]:.3e}")
print("strictly decreasing:", all(a > b for a, b in zip(weights, weights[1:])))
print("residual tail mass beyond 200 jumps:", f"{report_ord.expected_discarded_mass:.3e}")

########################################################################
# The window-mass law: Gamma(theta * volume, 1)
# ---------------------------------------------
# 2000 seeds are enough to see the law clearly; the acceptance suite
# runs 10^4 seeds at three parameter points against a 0.02 KS bound.

masses = [sample_gamma(theta, window, 1e-8, seed)[0].total_mass() for seed in range(2000)]
ks = ks_statistic(EmpiricalSample(tuple(masses)), lambda x: gamma_cdf(theta, 1.0, max(x, 0.0)))
print(f"\nKS distance of 2000 window masses to Gamma({theta}, 1): {ks:.4f}")
print("for theta*vol = 1 this is the unit exponential law")

########################################################################
# Finite-intensity marked Poisson process
# ---------------------------------------
# Product intensity: an integrable mark density times a homogeneous
# spatial rate; no truncation is needed, so the discarded mass is zero.

density = TestFunction(lambda x: math.exp(-x[0]), Window((0.0,), (40.0,)), None, "space")
spec = FiniteProduct(density)
print("\nmark density total mass:", round(spec.total_mark_mass, 9))
gamma, report_p = sample_poisson(spec, window, seed=7)
print("drawn configuration size:", report_p.atom_count,
      "| discarded mass:", report_p.expected_discarded_mass)
counts = [sample_poisson(spec, window, seed)[1].atom_count for seed in range(2000)]
print("mean count over 2000 seeds:", round(float(np.mean(counts)), 3), "(target 1.0)")
