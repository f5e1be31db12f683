"""Interval resolvent estimate along a Mellin contour.

Sweeps |Im lambda| on an admissible contour offset and again on an offset
1e-3 away from a forbidden value; writes the frontend fixture CSV.
"""

import csv
import math
import sys

import numpy as np

from wedgemellin import WedgeParams, resolvent_estimate_check

wedge = WedgeParams(math.pi)
f = lambda phi: np.sin(phi) + 0.4 * np.sin(2 * phi) + 0.1 * np.sin(5 * phi)

rows = []
for t in np.linspace(0.0, 100.0, 26):
    rows.append(("admissible", 0.1, float(t),
                 resolvent_estimate_check(0.1 + 1j * t, f, 1.0, wedge)))
near_offset = wedge.exponent - 1e-3
for t in (0.0, 1.0, 4.0):
    rows.append(("near_pole", near_offset, float(t),
                 resolvent_estimate_check(near_offset + 1j * t, f, 1.0, wedge)))

out = sys.argv[1] if len(sys.argv) > 1 else "resolvent_sweep.csv"
with open(out, "w", newline="\n") as fh:
    fh.write(f"# kappa={wedge.kappa!r} Theta=1.0 p=2\n")
    writer = csv.writer(fh, lineterminator="\n")
    writer.writerow(["contour", "offset", "im_lambda", "ratio"])
    for row in rows:
        writer.writerow([row[0], repr(row[1]), repr(row[2]), repr(row[3])])
print(f"wrote {out}")
for kind in ("admissible", "near_pole"):
    vals = [r[3] for r in rows if r[0] == kind]
    print(f"  {kind}: ratio in [{min(vals):.3f}, {max(vals):.3f}]")
