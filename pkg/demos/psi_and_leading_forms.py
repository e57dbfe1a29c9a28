"""Build the size-4 and size-6 Psi tables, check them, and read off the B-leading forms."""

from brauerloop import joseph, qkz
from brauerloop.linkpat import crossings
from brauerloop.polyring import init_B

for N in (4, 6):
    table = qkz.solve(N)
    print(f"N={N}: {len(table)} link patterns, degree {table[table.patterns()[0]].degree()}")
    if N == 4:
        for pi in table.patterns():
            print(f"  Psi{pi.cycle_str()} = {table[pi]}")

    report = qkz.verify_table(table, ("f", "e", "rot", "div", "spec"))
    print(report)

    mel = joseph.melnikov_solve(N)
    for pi in table.patterns()[:4]:
        e, lead = init_B(table[pi])
        same = "matches" if mel[pi] == lead else "DIFFERS from"
        print(f"  {pi.cycle_str()}: B^{e} leading form (crossings {crossings(pi)}) {same} the Melnikov entry")
    print()
