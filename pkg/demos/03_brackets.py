"""Rankin-Cohen brackets, modular and quasimodular.

The order-v bracket of weights (k, l) lands in weight k+l+2v and is a cusp
form once v >= 1.  Since the low-weight cusp spaces are tiny, brackets of
Eisenstein series either vanish or are forced onto the Delta line, with an
exactly computable constant.  E2 joins the game through the depth-shifted
bracket, producing the six weight-12 combinations of E2-derivatives whose
proportionalities are checked below.
"""

from tauforms import (
    delta_product,
    e2_bracket_family,
    eisenstein,
    is_cuspidal,
    quasi_bracket,
    rc_bracket,
)

N = 48
delta = delta_product(N).series
e4 = eisenstein(4, N)
e6 = eisenstein(6, N)
e8 = eisenstein(8, N)

print("brackets of Eisenstein series:")
for (f, g, order) in ((e4, e8, 1), (e4, e6, 2)):
    bracket = rc_bracket(f, g, order)
    print(f"  [E{f.weight},E{g.weight}]_{order} -> weight {bracket.weight}, "
          f"{'identically zero' if bracket.is_zero else 'nonzero'}")

b46 = rc_bracket(e4, e6, 1)
assert b46.series == delta.scale(-3456)
print(f"  [E4,E6]_1 = -3456 * Delta (the constant is pinned by the q^1 coefficient)")

b44 = rc_bracket(e4, e4, 2)
assert b44.series == delta.scale(4800)
print(f"  [E4,E4]_2 = 4800 * Delta")
reduced = e8.series.derive(2).scale(2) - (e4.series.derive(1) * e4.series.derive(1)).scale(9)
assert reduced == delta.scale(960)
print(f"  2*D^2(E8) - 9*D(E4)^2 = 960 * Delta (the bracket divided by 5)")

print()
print("cuspidality: every bracket of order >= 1 kills the constant term")
for order in (1, 2, 3):
    assert is_cuspidal(rc_bracket(e4, e6, order))
print("  checked for [E4,E6]_1..3")

print()
print("the weight-12 family of E2-derivative brackets:")
fam = e2_bracket_family(N)
for key in ("f1", "f2", "f3", "f4", "f5", "f6"):
    form = fam[key]
    print(f"  {key}: weight {form.weight}, depth bound {form.depth}, "
          f"starts {form.series.to_text(max_terms=3)}")
assert fam["f5"].series == delta.scale(24)
assert fam["f6"].series == fam["f5"].series.scale(-2)
assert fam["f4"].series == fam["f2"].series.scale(-3)
print("  f5 = 24*Delta, f6 = -2*f5, f4 = -3*f2 -- all exact")

print()
print("a quasimodular bracket with explicit gradings:")
e2 = eisenstein(2, N)
phi = quasi_bracket(3, e2.derive(1), e2)
print(f"  order-3 bracket of (D(E2), E2): weight {phi.weight}, depth <= {phi.depth}")
