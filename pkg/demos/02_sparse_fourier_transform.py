"""The randomized sparse Fourier transform against the dense oracle.

A 6-sparse trigonometric polynomial on a band of one million frequencies is
recovered from a few thousand samples: the spectrum is aliased into a prime
number of buckets along randomly shifted arithmetic progressions, each
bucket's frequency is read off bit by bit from phase differences between
shifted grids, and only frequencies that repeat across independent
repetitions are kept.
"""

import numpy as np

from sparselegendre import PeriodicSampler, SftParams, sft, top_s_oracle

rng = np.random.default_rng(7)
band_limit = 2**19 - 2
freqs = rng.choice(np.arange(-band_limit, band_limit + 1), size=6, replace=False)
coefs = rng.standard_normal(6) + 1j * rng.standard_normal(6)


def f(x):
    out = np.zeros(x.shape, dtype=complex)
    for w, c in zip(freqs, coefs):
        out += c * np.exp(1j * w * x)
    return out


sampler = PeriodicSampler(f, band_limit)
width = sampler.band[1] - sampler.band[0] + 1
outcome = sft(sampler, SftParams(sparsity=6, trials=7, bucket_factor=4.0, seed=1))

print(f"band width: {width} frequencies")
print(f"samples used: {outcome.samples_used} "
      f"({100.0 * outcome.samples_used / width:.2f}% of the band)")
print(f"success: {outcome.success}\n")

print("true spectrum vs recovered:")
for w in sorted(freqs):
    got = outcome.spectrum.coefficient(int(w))
    want = coefs[list(freqs).index(w)]
    print(f"  omega={int(w):8d}: true {want:+.6f}, recovered {got:+.6f}, "
          f"|error| {abs(got - want):.2e}")

oracle = top_s_oracle(sampler, 6)  # dense transform over the whole band
match = outcome.spectrum.support() == oracle.support()
print(f"\nsupport agrees with the dense top-6 oracle: {match}")
