"""Gaussian validation suite: repeated seeded estimates against the
analytic oracle, for the base benchmark, the permutation null, and the
noise-padded high-dimensional variants.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .estimators import EstimatorConfig, JointSamples, cmi_values_for_ks, jitter, mi_values_for_ks
from .synthgen import GaussianSpec, gaussian_samples, pad_noise_dims, permute_null, reference_spec

SCENARIOS = ("cmi", "mi", "permuted", "padded", "padded_strong")

_PAD_EXTRA = 149  # grows each 1-d block to 150 dimensions
_PAD_SIGMA = 0.05
_PAD_SIGMA_STRONG = 5.0


@dataclass(frozen=True)
class CurvePoint:
    scenario: str
    n: int
    mean: float
    ci_lo: float
    ci_hi: float
    trials: int


def trial_estimates(scenario: str, n: int, trials: int, k: int = 3, seed: int = 0,
                    jitter_intensity: float = 1e-10,
                    spec: GaussianSpec | None = None) -> np.ndarray:
    """One estimate per trial seed for the given benchmark scenario."""
    if scenario not in SCENARIOS:
        raise ValueError(f"unknown scenario {scenario!r}")
    if spec is None:
        spec = reference_spec()
    cfg = EstimatorConfig(k=k, jitter_intensity=jitter_intensity, seed=seed)
    root = np.random.SeedSequence(seed)
    trial_seeds = [int(s.generate_state(1)[0]) for s in root.spawn(3 * trials)]
    values = np.empty(trials)
    for t in range(trials):
        s_data, s_aux, s_jit = trial_seeds[3 * t : 3 * t + 3]
        samples = gaussian_samples(spec, n, seed=s_data)
        if scenario == "permuted":
            samples = permute_null(samples, seed=s_aux)
        elif scenario == "padded":
            samples = pad_noise_dims(samples, _PAD_EXTRA, _PAD_SIGMA, seed=s_aux)
        elif scenario == "padded_strong":
            samples = pad_noise_dims(samples, _PAD_EXTRA, _PAD_SIGMA_STRONG, seed=s_aux)
        jit_cfg = EstimatorConfig(k=k, jitter_intensity=jitter_intensity, seed=s_jit)
        if scenario == "mi":
            samples = jitter(JointSamples(samples.x, samples.y), jit_cfg)
            values[t] = mi_values_for_ks(samples, [k])[k]
        else:
            samples = jitter(samples, jit_cfg)
            values[t] = cmi_values_for_ks(samples, [k])[k]
    return values


def curve_point(scenario: str, n: int, trials: int, k: int = 3, seed: int = 0) -> CurvePoint:
    """Mean and normal-approximation 95% confidence interval over trials."""
    values = trial_estimates(scenario, n, trials, k=k, seed=seed)
    mean = float(values.mean())
    half = 1.96 * float(values.std(ddof=1)) / np.sqrt(trials) if trials > 1 else 0.0
    return CurvePoint(scenario, n, mean, mean - half, mean + half, trials)


def convergence_table(scenarios, ns, trials: int, k: int = 3, seed: int = 0) -> list[CurvePoint]:
    return [curve_point(sc, n, trials, k=k, seed=seed) for sc in scenarios for n in ns]
