#!/usr/bin/env python3
"""The four relations between pivot orderings, with replayable certificates."""

from cyclic_jacobi import (
    PAR_ANCHOR,
    PAR_ANCHOR_MIRROR,
    catalog,
    cyclic_shift,
    format_certificate,
    permute,
    relate,
    replay,
)

entry = {e.index: e for e in catalog()}

print("an ordering is one sweep: six pivot pairs covering every position\n")
o105 = entry[105].ordering
print(f"entry 105:        {o105}")
print(f"shifted by two:   {cyclic_shift(o105, 2)}   <- the parallel anchor")

print("\nsearching for a minimal-shift chain from entry 106 to the anchor:")
cert = relate(entry[106].ordering, PAR_ANCHOR, {"transpose", "shift"})
print(format_certificate(cert))
print(f"shift steps used: {cert.shift_count}")
print(f"replay reaches the target: {replay(cert) == PAR_ANCHOR}")

print("\nthe two parallel anchors are NOT weakly equivalent:")
print("  relate(anchor', anchor, {transpose, shift}) ->",
      relate(PAR_ANCHOR_MIRROR, PAR_ANCHOR, {"transpose", "shift"}))

print("\nbut they are permutation equivalent (swap indices 3 and 4):")
print(f"  permute(anchor, (1,2,4,3)) == anchor' -> "
      f"{permute(PAR_ANCHOR, (1, 2, 4, 3)) == PAR_ANCHOR_MIRROR}")

print("\nevery catalog entry carries its recorded reduction chain, e.g. entry 65:")
print(format_certificate(entry[65].chain))
