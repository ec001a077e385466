"""Decomposing quasimodular forms over the graded generators.

A weight-k quasimodular form of bounded depth is a unique rational
combination of D^i applied to the modular spaces of weight k-2i, plus one
copy of D^(k/2-1) E2.  The coordinates come from exact Gaussian
elimination with an overdetermination guard, so a wrong claim explodes
instead of fitting approximately.
"""

from tauforms import (
    NotInGradedSpace,
    decompose,
    e2_bracket_family,
    eisenstein,
    graded_generators,
    recompose,
    sigma_series,
    GradedForm,
)

N = 48

print("weight-12 generators:")
for _, element in graded_generators(12, N):
    print(f"  {element.label:10s} starts {element.form.series.to_text(max_terms=2)}")

print()
print("golden decompositions of the E2-bracket family:")
fam = e2_bracket_family(N)
for key in ("f1", "f2", "f3", "f5"):
    record = decompose(fam[key])
    pretty = ", ".join(f"{label}: {c}" for label, c in record.nonzero().items())
    print(f"  {key} = {{{pretty}}}")
    assert recompose(record, N).series == fam[key].series

print()
print("weight-8 products of E2 derivatives:")
e2 = eisenstein(2, N)
for name, form in (("D(E2)^2", e2.derive(1) * e2.derive(1)), ("E2*D^2(E2)", e2 * e2.derive(2))):
    record = decompose(form, 8, 4)
    pretty = ", ".join(f"{label}: {c}" for label, c in record.nonzero().items())
    print(f"  {name} = {{{pretty}}}")

print()
print("the guard at work: a bare sigma3 series is not a weight-8 form")
try:
    decompose(GradedForm(sigma_series(3, N), 8, 4))
except NotInGradedSpace as exc:
    print(f"  rejected: {exc}")
