"""
Deciding sphericity
===================

Step 0 brings the jets to the cubic model, then steps 1-3 solve weighted
linear systems.  A spherical surface ends with zero jets and a replayable
certificate; a non-spherical one ends with an inconsistent system.
"""

from fractions import Fraction

from homcr import family, is_spherical
from homcr.sphericity import certificate_text, parse_certificate, replay_certificate, tube_cross_check

spec = family("3.10").instance({"alpha": 2, "beta": 3})
res = is_spherical(spec)
print(spec.label(), "->", res.verdict)
print("system shapes:", res.systems)

text = certificate_text(spec, res)
print(text)
step0, steps = parse_certificate(text)
print("replayed jets vanish:", replay_certificate(spec, step0, steps).is_zero())

# a nearby parameter is not spherical; the witness names the obstruction
other = family("3.10").instance({"alpha": 2, "beta": 4})
res = is_spherical(other)
print(other.label(), "->", res.verdict, "at step", res.stage)
print(res.witness)

# for tubes an independent check agrees
print("tube check:", tube_cross_check(spec), tube_cross_check(other))

# the Heisenberg-type family at gamma = 1/2 sits on the spherical line alpha = 2
print(is_spherical(family("3.3").instance({"alpha": 2, "gamma": Fraction(1, 2)})).verdict)
