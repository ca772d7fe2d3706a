"""Centralizers, closures, cohomology, inner reconstruction, scans."""

import random
from fractions import Fraction

import pytest

from wittkit import linalg
from wittkit.derivations import (
    ClosureViolation,
    DerivationSpec,
    DerivationSpecError,
    ScanError,
    SubspaceSpec,
    ad_matrix,
    centralizer,
    h1_dimension,
    h1_report,
    solve_inner,
    stabilization_scan,
    submodule_closure,
    verify_bracket_identities,
)
from wittkit.fields import (
    L_basis,
    TruncationWindow,
    VectorField,
    WindowViolation,
    euler,
    sl_basis,
)
from wittkit.linalg import RowSpace
from wittkit.poly import Monomial, Polynomial
from wittkit.suites import random_field


def span(max_var, lo, hi, mode="strict"):
    return SubspaceSpec.span_window(TruncationWindow(max_var, lo, hi, mode))


def term(i, **kw):
    return VectorField.term(Monomial({int(k[1:]): v for k, v in kw.items()}), i)


# -- SubspaceSpec -------------------------------------------------------------


def test_window_span_coords_roundtrip():
    spec = span(2, -1, 1)
    w = term(1, x1=1) + VectorField.direction(2).scale(Fraction(2, 3))
    vec = spec.coords(w)
    assert spec.field_from_coords(vec) == w
    assert spec.is_full_window
    assert spec.dim == spec.window.dimension()


def test_subspace_rejects_out_of_window_basis():
    with pytest.raises(WindowViolation):
        SubspaceSpec([term(1, x5=1)], TruncationWindow(3, -1, 1, "strict"))


def test_subspace_rejects_dependent_basis():
    e = euler(2)
    with pytest.raises(ValueError):
        SubspaceSpec([e, e.scale(2)], TruncationWindow(2, 0, 0, "strict"))


def test_general_subspace_coords():
    spec = SubspaceSpec([euler(2), term(1, x2=1)], TruncationWindow(2, 0, 0, "strict"))
    w = euler(2).scale(3) - term(1, x2=1)
    assert spec.coords(w) == (3, -1)
    with pytest.raises(WindowViolation):
        spec.coords(term(2, x1=1))  # inside window, outside span
    assert not spec.contains(term(2, x1=1))


# -- ad_matrix ----------------------------------------------------------------


def test_ad_matrix_euler_annihilates_sl():
    dom = span(3, 0, 0)
    assert ad_matrix(euler(3), dom, dom).is_zero()


def test_ad_matrix_zero_field():
    dom = span(2, -1, 0)
    assert ad_matrix(VectorField.zero(), dom, dom).is_zero()


def test_ad_matrix_direction_domain_oracle():
    # oracle: [d1, x1 d2] = d2 and [d2, x1 d2] = 0
    dom = span(2, -1, -1)
    m = ad_matrix(term(2, x1=1), dom, dom)
    d1, d2 = dom.basis
    assert d1.bracket(term(2, x1=1)) == d2
    assert d2.bracket(term(2, x1=1)).is_zero()
    assert m.to_rows() == [[0, 0], [1, 0]]


def test_ad_matrix_escape_raises():
    dom = span(2, 1, 1)
    with pytest.raises(ClosureViolation):
        ad_matrix(VectorField.direction(1), dom, dom)  # lowers degree out of the window


# -- centralizer --------------------------------------------------------------


def test_centralizer_sl3_is_euler_line():
    basis = centralizer(sl_basis(3), span(3, -1, 3))
    assert len(basis) == 1
    c = basis[0]
    assert c == euler(3).scale(c.coeff(Monomial.var(1), 1))


def test_centralizer_sl3_wider_window_dim5():
    basis = centralizer(sl_basis(3), span(4, -1, 1))
    assert len(basis) == 5
    predicted = [
        euler(3),
        euler(3).mul_poly(Polynomial.variable(4)),
        VectorField.direction(4),
        term(4, x4=1),
        term(4, x4=2),
    ]
    amb = span(4, -1, 1)
    computed_space = RowSpace(amb.dim)
    both = RowSpace(amb.dim)
    for f in basis:
        computed_space.add(amb.coords(f))
        both.add(amb.coords(f))
    for f in predicted:
        both.add(amb.coords(f))
    assert computed_space.rank == both.rank == 5


def test_centralizer_L_trivial():
    assert centralizer(L_basis(2), span(2, -1, 3)) == []
    assert centralizer(L_basis(3), span(3, -1, 3)) == []


def test_centralizer_soundness():
    actors = sl_basis(3)
    for c in centralizer(actors, span(4, -1, 1)):
        assert all(s.bracket(c).is_zero() for s in actors)


def test_centralizer_rigidity_positive_degree():
    # direction constraints alone kill all positive-degree coefficients
    for n in (2, 3):
        assert centralizer(L_basis(n), span(n, 1, 3)) == []
        assert centralizer([VectorField.direction(i) for i in range(1, n + 1)], span(n, 1, 3)) == []


def test_centralizer_matches_general_subspace_path():
    # a rescaled basis of the same span must give the same centralizer span
    window = TruncationWindow(2, -1, 1, "strict")
    full = SubspaceSpec.span_window(window)
    scaled = SubspaceSpec([b.scale(Fraction(1, 2)) for b in full.basis], window)
    a = centralizer(sl_basis(2), full)
    b = centralizer(sl_basis(2), scaled)
    assert len(a) == len(b)
    space = RowSpace(full.dim)
    for f in a:
        space.add(full.coords(f))
    assert all(space.contains(full.coords(f)) for f in b)


# -- submodule_closure --------------------------------------------------------


def test_closure_dimensions():
    assert len(submodule_closure(VectorField.direction(1), 3, span(3, -1, -1))) == 3
    assert len(submodule_closure(euler(2), 2, span(2, 0, 0))) == 1
    assert len(submodule_closure(term(1, x1=1), 2, span(2, 0, 0))) == 4


def test_closure_is_invariant_subspace():
    amb = span(2, 0, 0)
    basis = submodule_closure(term(1, x1=1), 2, amb)
    space = RowSpace(amb.dim)
    for f in basis:
        space.add(amb.coords(f))
    for g in sl_basis(2):
        for f in basis:
            assert space.contains(amb.coords(g.bracket(f)))


def test_closure_strict_escape():
    # generators in 3 variables push the orbit out of a 2-variable window
    amb = span(2, 0, 0)
    with pytest.raises(ClosureViolation):
        submodule_closure(term(1, x1=1), 3, amb)


def test_closure_requires_membership():
    with pytest.raises(WindowViolation):
        submodule_closure(term(1, x5=1), 2, span(2, 0, 0))


# -- h1 -----------------------------------------------------------------------


@pytest.mark.parametrize("n", [2, 3])
@pytest.mark.parametrize("k", [-1, 0, 1])
def test_h1_vanishes_on_grid(n, k):
    for m in (n, n + 1):
        assert h1_dimension(n, span(m, k, k)) == 0


def test_h1_trivial_module():
    triv = SubspaceSpec([euler(2)], TruncationWindow(2, 0, 0, "strict"))
    assert h1_dimension(2, triv) == 0


def test_h1_report_invariants():
    report = h1_report(2, span(3, 0, 0), include_bases=True)
    assert report.z1 >= report.b1 >= 0
    assert report.h1 == 0
    space = RowSpace(len(sl_basis(2)) * report.module_dim)
    for vec in report.cocycle_basis:
        space.add(vec)
    assert space.rank == report.z1
    assert all(space.contains(vec) for vec in report.coboundary_vectors)


def test_h1_requires_module_closure():
    bad = SubspaceSpec([term(2, x1=1)], TruncationWindow(2, 0, 0, "strict"))
    with pytest.raises(ClosureViolation):
        h1_dimension(2, bad)


# -- DerivationSpec -----------------------------------------------------------


def test_derivation_spec_from_ad_valid():
    w = term(2, x1=2) + VectorField.direction(1).scale(Fraction(1, 3))
    spec = DerivationSpec.from_ad(w, L_basis(2))
    assert spec.skipped_pairs == ()
    assert spec.values[0] == L_basis(2)[0].bracket(w)


def test_derivation_spec_rejects_cocycle_violation():
    gens = sl_basis(2)
    values = [VectorField.zero(), VectorField.zero(), term(2, x1=2)]
    with pytest.raises(DerivationSpecError):
        DerivationSpec(gens, values)


def test_derivation_spec_rejects_mismatched_lengths():
    with pytest.raises(DerivationSpecError):
        DerivationSpec(sl_basis(2), [VectorField.zero()])


def test_derivation_spec_rejects_dependent_generators():
    with pytest.raises(DerivationSpecError):
        DerivationSpec([euler(2), euler(2).scale(2)], [VectorField.zero()] * 2)


def test_derivation_spec_skips_unexpandable_pairs():
    # the bracket of these two escapes their span, so the pair is skipped
    gens = [VectorField.direction(1), term(1, x1=2)]
    spec = DerivationSpec(gens, [VectorField.zero(), VectorField.zero()])
    assert spec.skipped_pairs == ((0, 1),)


# -- solve_inner --------------------------------------------------------------


def test_solve_inner_round_trip_random():
    rng = random.Random(20250810)
    search = span(3, -1, 2)
    gens = L_basis(3)
    for _ in range(30):
        w = random_field(rng, max_var=3, max_deg=2, terms=4)
        result = solve_inner(DerivationSpec.from_ad(w, gens), search)
        assert result.kind == "unique"
        assert result.field == w


def test_solve_inner_sl_kernel_is_euler_line():
    search = span(3, -1, 2)
    w = term(2, x1=2)
    result = solve_inner(DerivationSpec.from_ad(w, sl_basis(3)), search)
    assert result.kind == "underdetermined"
    assert len(result.kernel) == 1
    k = result.kernel[0]
    assert k == euler(3).scale(k.coeff(Monomial.var(1), 1))
    # the particular solution still satisfies every generator equation
    for g in sl_basis(3):
        assert g.bracket(result.field) == g.bracket(w)


def test_solve_inner_kernel_equals_centralizer():
    # ambiguity law: the solution kernel is exactly the centralizer of the
    # generator set inside the search space, basis for basis
    search = span(3, -1, 2)
    w = term(2, x1=2)
    result = solve_inner(DerivationSpec.from_ad(w, sl_basis(3)), search)
    assert list(result.kernel) == centralizer(sl_basis(3), search)


def test_solve_inner_zero_derivation():
    gens = L_basis(3)
    result = solve_inner(DerivationSpec(gens, [VectorField.zero()] * len(gens)), span(3, -1, 2))
    assert result.kind == "unique" and result.field.is_zero()


def test_solve_inner_euler_recovered():
    result = solve_inner(DerivationSpec.from_ad(euler(2), L_basis(2)), span(2, -1, 2))
    assert result.kind == "unique" and result.field == euler(2)


def test_solve_inner_inconsistency_certificate():
    # the image of ad on the diagonal field never contains the diagonal itself
    gen = term(1, x1=1)
    spec = DerivationSpec([gen], [gen])
    result = solve_inner(spec, span(2, 0, 0))
    assert result.kind == "inconsistent"
    assert result.field is None
    assert result.certificate is not None
    assert result.certificate.generator_index == 0


def test_solve_inner_value_outside_codomain_raises():
    spec = DerivationSpec([VectorField.direction(1)], [term(1, x5=1)])
    with pytest.raises(WindowViolation):
        solve_inner(spec, span(2, -1, 1))


def test_solve_inner_respects_explicit_codomain():
    w = term(2, x1=2)
    spec = DerivationSpec.from_ad(w, L_basis(2))
    tight = TruncationWindow(2, 0, 0, "strict")
    with pytest.raises(WindowViolation):
        solve_inner(spec, span(2, -1, 2), codomain=tight)


def test_solve_inner_general_search_subspace():
    # searching only the Euler line finds the Euler field
    line = SubspaceSpec([euler(2)], TruncationWindow(2, 0, 0, "strict"))
    spec = DerivationSpec.from_ad(euler(2), L_basis(2))
    result = solve_inner(spec, line)
    assert result.kind == "unique" and result.field == euler(2)


# -- verify_bracket_identities ------------------------------------------------


def test_identities_random():
    rng = random.Random(77)
    for _ in range(60):
        w = random_field(rng)
        i = rng.randint(1, 4)
        j = 1 + (i % 4)
        assert verify_bracket_identities(w, i, j)


def test_identities_golden_component():
    # for w = x2 d1 the di-component of [w, x2 d1] is zero, not -x2
    w = term(1, x2=1)
    assert verify_bracket_identities(w, 1, 2)
    lhs = w.bracket(term(1, x2=1))
    assert lhs.component(1).is_zero()


def test_identities_rejects_equal_indices():
    with pytest.raises(ValueError):
        verify_bracket_identities(VectorField.zero(), 2, 2)


# -- stabilization scans ------------------------------------------------------


def test_scan_round_trip_stabilizes():
    w = term(2, x1=2) + term(1, x2=1).scale(2) - term(1, x1=1).scale(Fraction(1, 3))
    report = stabilization_scan("solve-inner", [2, 3, 4], from_field=w, generators="L")
    assert report.all_stabilized
    assert report.limit == w
    assert all(n == 2 for n in report.first_stable_n.values())


def test_scan_sl_normalization_pins_diagonal():
    # with special-linear generators the solution is only defined up to the
    # grading line; the scan pins the x1 d1 coefficient to zero
    w = term(1, x1=1) + term(2, x1=2).scale(2)
    report = stabilization_scan(
        "solve-inner", [2, 3, 4], from_field=w, generators="sl", max_var_offset=0
    )
    t_sq = (Monomial({1: 2}), 2)
    t_x1 = (Monomial.var(1), 1)
    t_x2 = (Monomial.var(2), 2)
    t_x3 = (Monomial.var(3), 3)
    t_x4 = (Monomial.var(4), 4)
    assert report.trajectories[t_sq] == (2, 2, 2)
    assert t_x1 not in report.trajectories  # pinned to zero everywhere
    assert report.trajectories[t_x2] == (-1, -1, -1)
    assert report.trajectories[t_x3] == (0, -1, -1)
    assert report.trajectories[t_x4] == (0, 0, -1)
    assert report.stabilized[t_sq] and report.stabilized[t_x3]
    assert not report.stabilized[t_x4]  # appears only at the last scan point
    assert not report.all_stabilized and report.limit is None


def test_scan_centralizer_dims():
    report = stabilization_scan("centralizer", [3, 4, 5], generators="sl",
                                max_var_offset=0, degree_max=3)
    assert report.dims == (1, 1, 1)
    assert report.all_stabilized  # normalized representative is zero throughout


def test_scan_rejects_bad_ranges():
    with pytest.raises(ValueError):
        stabilization_scan("centralizer", [])
    with pytest.raises(ValueError):
        stabilization_scan("centralizer", [3, 3])
    with pytest.raises(ValueError):
        stabilization_scan("warp", [2, 3])
    with pytest.raises(ValueError):
        stabilization_scan("solve-inner", [2, 3])  # missing from_field


def test_scan_propagates_failures_with_n():
    # the reference field does not fit any scanned window, so n=2 must fail
    w = term(1, x1=5)
    with pytest.raises(ScanError) as err:
        stabilization_scan("solve-inner", [2, 3], from_field=w, generators="L", degree_max=2)
    assert err.value.n == 2


# -- engine parity at the operation level --------------------------------------


@pytest.mark.skipif(linalg._elim_c is None, reason="compiled engine not built")
def test_operations_identical_across_engines():
    previous = linalg._ENGINE
    w = term(2, x1=2) + term(1, x2=1)
    try:
        linalg.set_engine("compiled")
        out_c = (
            centralizer(sl_basis(3), span(4, -1, 1)),
            h1_dimension(2, span(3, 0, 0)),
            solve_inner(DerivationSpec.from_ad(w, L_basis(2)), span(2, -1, 2)),
        )
        linalg.set_engine("pure")
        out_p = (
            centralizer(sl_basis(3), span(4, -1, 1)),
            h1_dimension(2, span(3, 0, 0)),
            solve_inner(DerivationSpec.from_ad(w, L_basis(2)), span(2, -1, 2)),
        )
        assert out_c == out_p
    finally:
        linalg.set_engine(previous)
