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


# # Finding bottleneck nodes
#
# A relay that sits on every path into `d1` limits how much the two sessions
# can share when transmitters only learn channel gains one slot late.  This
# walk-through builds a small network, finds such relays and turns them into
# linear constraints on the DoF pair `(D1, D2)`.

# +
from dofb import build_region, find_all_bottlenecks, find_omniscient, sum_dof
from dofb.families import fig3d1d2
from dofb.network import parents

net = fig3d1d2()
for i, layer in enumerate(net.layers, 1):
    print(i, layer)
# -

# `v5` has four parents.  `v1` only hears `s1`, so it carries nothing about
# the b-stream and is pruned before the search starts.

sorted(parents(net, "v5"))

# No single node can cut `s2` off from both destinations, so no relay is
# omniscient here.

find_omniscient(net)

# The bottleneck search keeps the parent subset with the smallest generic
# rank among those that do separate `s2` from the destinations.

certs = find_all_bottlenecks(net)
certs

# A certificate with rank `rho` for `d1` gives `rho*D1 + D2 <= rho`.  With
# the unit box that leaves one extra corner at `(2/3, 1)`.

region = build_region(certs)
print([tuple(str(x) for x in v) for v in region.vertices])
print("sum DoF", sum_dof(region))

# Swapping the roles of the two sessions moves the certificate to `d2`.

from dofb.network import flip

[(c.dest_index, c.node, c.rho) for c in find_all_bottlenecks(flip(net))]
