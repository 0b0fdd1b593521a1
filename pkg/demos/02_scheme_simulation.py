# ---
# jupyter:
#   jupytext:
#     text_representation:
#       extension: .py
#       format_name: light
#       format_version: '1.5'
#       jupytext_version: 1.16.3
#   kernelspec:
#     display_name: Python 3
#     language: python
#     name: python3
# ---


# # Running a linear scheme
#
# A scheme is a table of actions, one per node per slot per hop.  The engine
# pushes rows of coefficients over `(a, b)` through the network with random
# gains from a large prime field and then asks each destination whether it
# can solve for its own symbols.

# +
from fractions import Fraction

from dofb import simulate
from dofb.engine import decode_check, run_scheme
from dofb.rank import draw_gains
from dofb._seeding import derive_rng
from dofb.ffield import DEFAULT_PRIME
from dofb.schemes import scheme_example1

bundle = scheme_example1()
net, program, space = bundle.network, bundle.program, bundle.space
print(space, program.slot_counts)
# -

# One run with a fixed gain draw.  The second hop contains the interesting
# step: `v3` rebuilds what `v5` heard in slot 1 and sends it again, which lets
# `v5` strip the b-part from its first reception.

gains = draw_gains(net.edges, range(1, 4), DEFAULT_PRIME, derive_rng(0))
run = run_scheme(net, program, space, gains)
run.reconstructions

for d, which in zip(net.destinations, "ab"):
    print(d, len(run.states[d].rows), "rows, decodes", which, decode_check(run.states[d].rows, space, which))

# Over many gain draws the verdict never changes: success depends on the
# support of the network, not on the particular gains.

report = simulate(net, program, space, trials=100, seed=0)
report.to_json()

# Dropping a single forwarded equation leaves `d2` one short every time.

hops = [[dict(s) for s in h] for h in program.hops]
del hops[2][2]["v6"]
from dofb.engine import SchemeProgram

simulate(net, SchemeProgram("short", hops), space, trials=100, seed=0).to_json()

# The achieved point `(2/3, 1)` is exactly the extra corner of the outer
# region from the first demo.

assert report.achieved_dof == (Fraction(2, 3), 1)
