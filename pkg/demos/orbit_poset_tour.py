"""The orbit poset of square-zero upper triangular matrices for a small size."""

import sys

from brauerloop.orbit_poset import build_poset, raw_moves, to_dot, verify_poset

N = int(sys.argv[1]) if len(sys.argv) > 1 else 4
P = build_poset(N)
top = max(P.dim.values())
for d in range(top, -1, -1):
    row = [p.cycle_str() for p in P.elements if P.dim[p] == d]
    print(f"dim {d}: {'  '.join(row)}")

peak = max(P.elements, key=lambda p: (P.dim[p], p))
print(f"\nA maximal chain from {peak.cycle_str()}:")
print("  " + " > ".join(p.cycle_str() for p in P.maximal_chain(peak)))

extra = sum(1 for p in P.elements for m in raw_moves(p) if P.dim[m] < P.dim[p] - 1)
print(f"\nMoves that skip a rank: {extra}")
print(verify_poset(N))

with open(f"poset-{N}.dot", "w", encoding="utf-8") as fh:
    fh.write(to_dot(P))
print(f"Hasse diagram written to poset-{N}.dot")
