"""Generic points of the components of the Brauer loop scheme, recovered from their squares."""

from brauerloop import brauer_scheme as bs
from brauerloop.errors import NonGenericError
from brauerloop.linkpat import LinkPattern, link_patterns

pi = LinkPattern.parse("(14)(26)(35)")
M, _ = bs.generic_element(pi, bs.SEED_SETS[0])
print("entries of the generic element:", {k: str(v) for k, v in M.entries.items()})
print("superdiagonal of M^2:", [str(x) for x in bs.superdiagonal(M)])
print("recovered pattern:", bs.link_pattern_of(M).cycle_str())
print(bs.check_compeqns(M, pi))

rejected = [q for q in link_patterns(6) if q != pi and not bs.check_compeqns(M, q).ok]
print(f"rejected by the equations of {len(rejected)} of the {len(link_patterns(6)) - 1} other patterns")

try:
    bs.link_pattern_of(bs.underline(pi))
except NonGenericError as exc:
    print("the 0/1 pattern matrix is not generic:", exc)

# partial maps: the R-part follows the rightward moves
rho = [3, None, 1, 2]
M, promoted = bs.generic_element(rho, bs.SEED_SETS[1])
print("\npartial map", rho, "promoted to", promoted.cycle_str(),
      "; R-part orbit", bs.rightward_involution(rho, 4).cycle_str())
print(bs.generic_element_ranks(rho, bs.SEED_SETS[1]))
