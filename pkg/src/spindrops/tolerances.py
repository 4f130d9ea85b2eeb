"""Shared numeric tolerance policy.

All modules draw their comparison thresholds from this table so that
the meaning of "equal" is consistent across the code base:

* ``STRUCTURAL`` for identities that hold up to floating-point rounding
  (conjugate symmetry, Kronecker associativity, Condon-Shortley signs).
* ``BASIS`` for quantities assembled through longer derivations
  (Gram matrices of constructed bases, rank extraction).
* ``SIMULATION`` for end-to-end checks of simulated trajectories.
"""

STRUCTURAL = 1e-12
BASIS = 1e-10
SIMULATION = 1e-9

#: Coefficient weight below which a droplet is reported as zero.
ZERO_DROPLET = 1e-12

TOLERANCES = {
    "structural": STRUCTURAL,
    "basis": BASIS,
    "simulation": SIMULATION,
    "zero_droplet": ZERO_DROPLET,
}
