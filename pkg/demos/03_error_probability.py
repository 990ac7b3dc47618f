"""From mutual information to binary classification error.

The residual uncertainty H(C) - I translates into bounds on the error
probability: the Fano inversion gives a guaranteed lower bound, the
f-function inversion gives the error estimate used for comparing
estimators when all MI curves saturate at ln 2.

The second half probes the f-function estimate against the exact Bayes
error on a two-Gaussian family: fed the *true* MI it tracks the Bayes
error closely but dips below it once the classes separate (it inverts the
entropy of a one-sided confusion pattern, which data-level conditioning
can undercut), while fed the pairwise *lower bound* of MI it stays on the
safe side on every tested geometry.
"""

import numpy as np

import mixmi as mx

probs = np.array([0.5, 0.5])
ln2 = float(np.log(2.0))

print("MI (bits)   Fano lower   f-inversion")
for frac in (0.999, 0.9, 0.7, 0.5, 0.3, 0.1, 0.0):
    mi = frac * ln2
    print(f"{frac:9.3f}   {mx.fano_lower_pe(mi, probs):10.6f}   {mx.hu_upper_pe(mi, probs):11.6f}")

print("\nseparation   Bayes err   f(true MI)   f(I_lb)   Fano(true MI)")
for gap in (1.0, 2.0, 3.0, 4.0):
    m = mx.LabeledMixture(
        [mx.GaussianComponent([0.0], [[1.0]]), mx.GaussianComponent([gap], [[1.0]])],
        [0.5, 0.5], [1, 2], 2,
    )
    quad = mx.quadrature_mutual_information(m, 2001).value
    bayes = mx.quadrature_bayes_error(m, 2001)
    lb = mx.lower_bound_mi(m).value
    print(f"{gap:10.1f}   {bayes:9.6f}   {mx.hu_upper_pe(quad, probs):10.6f}   "
          f"{mx.hu_upper_pe(lb, probs):7.6f}   {mx.fano_lower_pe(quad, probs):13.6f}")

print("\nnote: fed the exact MI, the f-inversion can land below the Bayes")
print("error once classes separate; it is the conservative inputs (MI lower")
print("bounds) that make it a usable error ceiling in practice.")
