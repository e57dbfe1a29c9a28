"""Affine permutations as juggling patterns acting on link patterns."""

from brauerloop import affine_sym as af
from brauerloop.linkpat import base_pattern, link_patterns

N = 6
p0 = base_pattern(N)
print("generators:", ", ".join(str(af.generator(i, N)) for i in range(1, N + 1)))
print("rotation:", af.rotation(N), "with", af.rotation(N).balls, "ball")

print(f"\nshortest tadpole-free words from {p0.cycle_str()}:")
for pi in link_patterns(N)[:6]:
    w = af.tadpole_free_word(p0, pi)
    print(f"  {pi.cycle_str():16s} {w}")

print("\nstabilizer elements f_i f_(i+n):", ", ".join(str(g) for g in af.stabilizer_generators(N)))
for i in range(1, 3):
    print(f"T_{i} displacement:", af.T_element(i, N).displacement())
print(af.stabilizer_check(4, 6))
