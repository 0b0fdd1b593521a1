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


# # Rank versus set size
#
# A weaker way to bound `D1` counts the nodes in the separating parent set
# instead of taking the rank of their transfer matrix.  This family adds `k`
# parallel relays that enlarge the set without raising its rank.

# +
from dofb.bottleneck import find_bottlenecks, prior_bound
from dofb.families import set_size_to_rank
from dofb.region import HalfPlane, compare_bounds

rows = []
for k in range(6):
    net = set_size_to_rank(k)
    (cert,) = find_bottlenecks(net, 1)
    gap = compare_bounds(HalfPlane.bottleneck(1, cert.rho), prior_bound(cert, net))
    rows.append((k, len(cert.parent_set), cert.rho, str(gap.new_intercept), str(gap.prior_intercept)))
rows
# -

# The rank bound keeps its corner at `D1 = 2/3`; the count bound creeps
# toward the trivial `D1 <= 1`.

# ## Sum DoF values
#
# Stitching two copies of the `m`-relay network back to back yields one
# certificate per destination and a sum DoF of `2 - 2/(m+1)`.

# +
from dofb import build_region, find_all_bottlenecks, in_S, sum_dof
from dofb.families import two_bounds

for m in range(2, 7):
    total = sum_dof(build_region(find_all_bottlenecks(two_bounds(m))))
    print(m, total, in_S(total))
# -

# A region that only caps `D1 + D2` cannot be written with constraints of the
# form `m*Di + Dj <= m`, while the single-certificate region can.

# +
from fractions import Fraction

from dofb.region import expressible_by_bottleneck_bounds, region_from_constraints
from dofb.families import fig3d1d2

print(expressible_by_bottleneck_bounds(region_from_constraints([HalfPlane(1, 1, Fraction(3, 2))])))
print(expressible_by_bottleneck_bounds(build_region(find_all_bottlenecks(fig3d1d2()))))
