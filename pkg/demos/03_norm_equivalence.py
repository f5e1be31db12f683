"""Four routes to the same weighted Sobolev norm.

The dyadic, integral, polar, and Mellin norms are equivalent but not
equal; their pairwise ratios across a family of test fields exhibit the
(unknown) equivalence constants.  At gamma = 0 the integral, polar, and
Mellin values coincide exactly by construction.
"""

import math

from wedgemellin import (SpaceParams, WedgeParams, builtin_test_family,
                         equivalence_report, make_grid)

wedge = WedgeParams(math.pi)
grid = make_grid(-12.0, 12.0, 256, 48, wedge)
family = builtin_test_family(wedge)

for gamma in (0, 1):
    sp = SpaceParams(gamma, 2.0, 2.5, 2.0)
    reports, summary = equivalence_report(family, sp, grid)
    print(f"\ngamma = {gamma}, p = 2, Theta = {sp.Theta}, theta = {sp.theta}")
    print(f"{'field':10s} {'dyadic':>12s} {'integral':>12s} {'polar':>12s} {'mellin':>12s}")
    for rep in reports:
        v = rep.values
        print(f"{rep.field_name:10s} {v['dyadic']:12.6f} {v['integral']:12.6f} "
              f"{v['polar']:12.6f} {v['mellin']:12.6f}")
    print("ratio spreads over the family:")
    for key, spread in summary.items():
        print(f"  {key:22s} in [{spread['min']:.4f}, {spread['max']:.4f}]")
