"""Numerical comparison thresholds, declared once and shared by every module.

Amplitude-level quantities (state vectors, matrix entries) are compared at
``AMPLITUDE_ATOL``; probability-level quantities (populations, branch
weights) at ``PROBABILITY_ATOL``.  Tests and verification suites must not
invent their own thresholds for these two categories.
"""

# |amplitude| and matrix-entry comparisons
AMPLITUDE_ATOL = 1e-12

# probability / population comparisons
PROBABILITY_ATOL = 1e-10

# squared-norm threshold below which an interference branch counts as empty
ZERO_BRANCH_WEIGHT = 1e-24

# roundoff floor: probabilities in [NEGATIVE_PROBABILITY_FLOOR, 0) clamp to 0,
# anything more negative is treated as a real error
NEGATIVE_PROBABILITY_FLOOR = -1e-15
