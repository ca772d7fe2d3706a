"""Adjoint operators, centralizers, submodule closures, first cohomology of
truncated modules, and reconstruction of the inner element realizing a
derivation given on a generating set.

All computations reduce to exact rational linear algebra over the canonical
term basis of a truncation window.  Generator actions that shift degree
uniformly (the standard families do: linear fields have degree 0 and the
coordinate directions degree -1) split every stacked system into independent
degree blocks, which are solved separately; since the reduced row echelon
form is unique, the assembled answer is identical to the one-big-matrix
computation, just much cheaper.

Strictness follows the ambient window's mode: with a ``strict`` window a
bracket or value that leaves the window raises ClosureViolation /
WindowViolation naming the offending term, while a ``project`` window drops
such terms (exploratory use only).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import linalg
from .fields import (
    L_basis,
    TruncationWindow,
    VectorField,
    WindowViolation,
    euler,
    format_term,
    sl_basis,
    truncate,
)
from .linalg import RationalMatrix, RowSpace
from .poly import Monomial, Polynomial, grlex_key

Term = tuple[Monomial, int]


class ClosureViolation(WindowViolation):
    """An action left the ambient space it was required to preserve."""


class DerivationSpecError(ValueError):
    """A DerivationSpec fails its construction invariants."""


def _term_key(term: Term) -> tuple:
    mono, direction = term
    return (mono.length(), direction, grlex_key(mono))


class SubspaceSpec:
    """A finite ordered basis of vector fields inside a truncation window.

    ``span_window`` builds the full window slice, whose basis is the
    canonical term basis; that case powers all the large computations and
    coordinates are read off directly.  A hand-picked basis is also
    accepted (it must be linearly independent and lie inside the window);
    coordinates are then obtained by exact solving.
    """

    def __init__(self, basis: Sequence[VectorField], window: TruncationWindow):
        self.window = window
        self.basis = tuple(basis)
        for w in self.basis:
            for mono, direction, _ in w.terms():
                if not window.contains_term(mono, direction):
                    raise WindowViolation(
                        f"basis element term {format_term(mono, direction)} lies outside the window",
                        mono,
                        direction,
                    )
        self._terms = window.term_basis()
        self._index = {t: k for k, t in enumerate(self._terms)}
        self._full = self._is_full_window()
        self._coord_matrix: RationalMatrix | None = None
        if not self._full and self.basis:
            cols = [self._term_coords(w) for w in self.basis]
            m = RationalMatrix.from_rows(
                [[cols[b][t] for b in range(len(cols))] for t in range(len(self._terms))]
            )
            self._coord_matrix = m
            if linalg.rank(m) != len(self.basis):
                raise ValueError("basis elements are linearly dependent")

    @staticmethod
    def span_window(window: TruncationWindow) -> SubspaceSpec:
        basis = [VectorField.term(mono, i) for mono, i in window.term_basis()]
        return SubspaceSpec(basis, window)

    def _is_full_window(self) -> bool:
        if len(self.basis) != len(self._terms):
            return False
        for w, term in zip(self.basis, self._terms):
            mono, direction = term
            if w.term_count() != 1 or w.coeff(mono, direction) != 1:
                return False
        return True

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def is_full_window(self) -> bool:
        return self._full

    def terms(self) -> list[Term]:
        return list(self._terms)

    def _term_coords(self, w: VectorField) -> list[Fraction]:
        vec = [Fraction(0)] * len(self._terms)
        for mono, direction, coeff in w.terms():
            k = self._index.get((mono, direction))
            if k is None:
                raise WindowViolation(
                    f"term {format_term(mono, direction)} lies outside the window",
                    mono,
                    direction,
                )
            vec[k] = coeff
        return vec

    def coords(self, w: VectorField) -> tuple[Fraction, ...]:
        """Coordinates of w in this basis; raises if w is not in the span."""
        return self.coords_many([w])[0]

    def coords_many(self, ws: Sequence[VectorField]) -> list[tuple[Fraction, ...]]:
        vecs = [self._term_coords(w) for w in ws]
        if self._full:
            return [tuple(v) for v in vecs]
        if not self.basis:
            for w, v in zip(ws, vecs):
                if any(v):
                    raise ClosureViolation(f"field is outside the (zero) span: {w!r}")
            return [() for _ in ws]
        outcomes = linalg.solve_many(self._coord_matrix, vecs)
        out = []
        for w, outcome in zip(ws, outcomes):
            if outcome.kind == "inconsistent":
                raise ClosureViolation(f"field is outside the span of the basis: {w!r}")
            out.append(outcome.particular)
        return out

    def contains(self, w: VectorField) -> bool:
        try:
            self.coords(w)
        except WindowViolation:
            return False
        return True

    def field_from_coords(self, vec: Sequence[Fraction]) -> VectorField:
        if len(vec) != len(self.basis):
            raise ValueError(f"coordinate length {len(vec)} != dim {len(self.basis)}")
        out = VectorField.zero()
        for c, b in zip(vec, self.basis):
            if c:
                out = out + b.scale(c)
        return out

    def __repr__(self) -> str:
        kind = "window span" if self._full else f"{len(self.basis)}-dim subspace"
        return (
            f"SubspaceSpec({kind}, max_var={self.window.max_var}, "
            f"degrees {self.window.degree_min}..{self.window.degree_max})"
        )


# -- stacked action systems --------------------------------------------------


@dataclass
class _Block:
    """One degree slice of a stacked action system."""

    cols: list[int]                 # global column indices (search basis positions)
    row_labels: list[tuple[int, Term]]   # (generator index, codomain term)
    rows: list[list[Fraction]]


def _generator_degrees(gens: Sequence[VectorField]) -> list[tuple[int, int]] | None:
    """Per-generator homogeneous degree as (deg, deg); None if any is mixed."""
    out = []
    for g in gens:
        d = g.degree()
        if d is None:
            return None
        out.append((d, d))
    return out


def _stacked_blocks(
    gens: Sequence[VectorField],
    search: SubspaceSpec,
    codomain_window: TruncationWindow,
) -> list[_Block]:
    """Build the matrix of w -> ([g_1, w], ..., [g_k, w]) over the search basis,
    split into independent degree blocks when the generators are homogeneous."""
    terms = search.terms()
    degrees = _generator_degrees(gens)
    blockable = search.is_full_window and degrees is not None

    if blockable:
        groups: dict[int, list[int]] = {}
        for col, (mono, _) in enumerate(terms):
            groups.setdefault(mono.length() - 1, []).append(col)
        block_keys = sorted(groups)
    else:
        groups = {0: list(range(search.dim))}
        block_keys = [0]

    blocks = []
    for key in block_keys:
        cols = groups[key]
        entries: dict[tuple[int, Term], dict[int, Fraction]] = {}
        for local, col in enumerate(cols):
            base = search.basis[col]
            for a, g in enumerate(gens):
                image = g.bracket(base)
                for mono, direction, coeff in image.terms():
                    if not codomain_window.contains_term(mono, direction):
                        if codomain_window.mode == "strict":
                            raise ClosureViolation(
                                f"bracket image term {format_term(mono, direction)} escapes "
                                f"the codomain window (max_var={codomain_window.max_var}, "
                                f"degrees {codomain_window.degree_min}..{codomain_window.degree_max})",
                                mono,
                                direction,
                            )
                        continue
                    entries.setdefault((a, (mono, direction)), {})[local] = coeff
        labels = sorted(entries, key=lambda lab: (lab[0], _term_key(lab[1])))
        rows = []
        for lab in labels:
            row = [Fraction(0)] * len(cols)
            for local, coeff in entries[lab].items():
                row[local] = coeff
            rows.append(row)
        blocks.append(_Block(cols, labels, rows))
    return blocks


def _assemble_kernel(blocks: list[_Block], total_cols: int, search: SubspaceSpec) -> list[VectorField]:
    out = []
    for block in blocks:
        m = RationalMatrix.from_rows(block.rows) if block.rows else RationalMatrix.zero(0, len(block.cols))
        for vec in linalg.kernel(m):
            full = [Fraction(0)] * total_cols
            for local, col in enumerate(block.cols):
                full[col] = vec[local]
            out.append(search.field_from_coords(full))
    return out


def ad_matrix(w: VectorField, domain: SubspaceSpec, codomain: SubspaceSpec) -> RationalMatrix:
    """Matrix of x -> [x, w] from domain coordinates to codomain coordinates."""
    images = [b.bracket(w) for b in domain.basis]
    if codomain.window.mode == "project":
        images = [truncate(im, codomain.window) for im in images]
    try:
        cols = codomain.coords_many(images)
    except WindowViolation as exc:
        raise ClosureViolation(
            f"adjoint image escapes the codomain: {exc}", exc.mono, exc.direction
        ) from exc
    return RationalMatrix.from_rows(
        [[cols[b][t] for b in range(domain.dim)] for t in range(codomain.dim)]
    )


def _action_matrix(g: VectorField, module: SubspaceSpec) -> RationalMatrix:
    """Matrix of the module action m -> [g, m] in the module basis."""
    images = [g.bracket(b) for b in module.basis]
    if module.window.mode == "project":
        images = [truncate(im, module.window) for im in images]
    try:
        cols = module.coords_many(images)
    except WindowViolation as exc:
        raise ClosureViolation(
            f"module action escapes the module: {exc}", exc.mono, exc.direction
        ) from exc
    return RationalMatrix.from_rows(
        [[cols[b][t] for b in range(module.dim)] for t in range(module.dim)]
    )


def centralizer(actors: Sequence[VectorField], ambient: SubspaceSpec) -> list[VectorField]:
    """Canonical basis of {w in span(ambient) : [s, w] = 0 for all actors s}.

    The vanishing conditions are imposed in full: constraint rows live in the
    smallest window containing every bracket of an actor with an ambient
    basis element, so returned elements commute with the actors exactly even
    when the actors shift degrees out of the ambient window.
    """
    codomain = _derived_codomain(actors, ambient)
    blocks = _stacked_blocks(actors, ambient, codomain)
    return _assemble_kernel(blocks, ambient.dim, ambient)


def submodule_closure(v: VectorField, n: int, ambient: SubspaceSpec) -> list[VectorField]:
    """Basis of the smallest subspace of the ambient containing v and closed
    under bracketing with the special-linear generators in n variables."""
    gens = sl_basis(n)
    space = RowSpace(ambient.dim)
    space.add(ambient.coords(v))
    frontier = [v]
    while frontier:
        new_frontier = []
        for g in gens:
            for f in frontier:
                image = g.bracket(f)
                if ambient.window.mode == "project":
                    image = truncate(image, ambient.window)
                if image.is_zero():
                    continue
                try:
                    vec = ambient.coords(image)
                except WindowViolation as exc:
                    raise ClosureViolation(
                        f"orbit of {v!r} escapes the ambient: {exc}", exc.mono, exc.direction
                    ) from exc
                if space.add(vec):
                    new_frontier.append(image)
        frontier = new_frontier
    return [ambient.field_from_coords(row) for row in space.basis()]


@dataclass(frozen=True)
class H1Report:
    """Cocycle/coboundary dimension count for one module.

    ``cocycle_basis`` (stacked coordinates of c(g_1), ..., c(g_k) per vector)
    and ``coboundary_vectors`` are populated only when requested; they feed
    the containment rank test coboundaries-inside-cocycles.
    """

    n: int
    module_dim: int
    z1: int
    b1: int
    cocycle_basis: tuple[tuple[Fraction, ...], ...] = ()
    coboundary_vectors: tuple[tuple[Fraction, ...], ...] = ()

    @property
    def h1(self) -> int:
        return self.z1 - self.b1


def h1_dimension(n: int, module: SubspaceSpec) -> int:
    """dim of (1-cocycles modulo 1-coboundaries) for the special-linear
    algebra in n variables acting on the module by bracket."""
    return h1_report(n, module).h1


def h1_report(n: int, module: SubspaceSpec, include_bases: bool = False) -> H1Report:
    if n < 2:
        raise ValueError(f"h1_dimension requires n >= 2, got {n}")
    gens = sl_basis(n)
    G = len(gens)
    M = module.dim
    if M == 0:
        return H1Report(n, 0, 0, 0)

    # module action matrices g.m = [g, m], columns indexed by module basis
    acts = [_action_matrix(g, module) for g in gens]

    # expand pairwise brackets over the generator basis (structure constants)
    deg0 = SubspaceSpec.span_window(TruncationWindow(max_var=n, degree_min=0, degree_max=0, mode="strict"))
    gen_matrix = RationalMatrix.from_rows(
        [[deg0.coords(g)[t] for g in gens] for t in range(deg0.dim)]
    )
    pairs = [(p, q) for p in range(G) for q in range(p + 1, G)]
    bracket_coords = [deg0.coords(gens[p].bracket(gens[q])) for p, q in pairs]
    lambdas = linalg.solve_many(gen_matrix, bracket_coords)

    # cocycle condition: c([a,b]) - a.c(b) + b.c(a) = 0, unknowns c(g_k) stacked
    z_rows: list[list[Fraction]] = []
    for (p, q), lam in zip(pairs, lambdas):
        coeffs = lam.particular
        block = [[Fraction(0)] * (G * M) for _ in range(M)]
        for k in range(G):
            if coeffs[k]:
                for r in range(M):
                    block[r][k * M + r] += coeffs[k]
        for r in range(M):
            row = block[r]
            for t in range(M):
                apt = acts[p].at(r, t)
                if apt:
                    row[q * M + t] -= apt
                aqt = acts[q].at(r, t)
                if aqt:
                    row[p * M + t] += aqt
        z_rows.extend(block)
    z_matrix = RationalMatrix.from_rows(z_rows) if z_rows else RationalMatrix.zero(0, G * M)
    cocycles: tuple[tuple[Fraction, ...], ...] = ()
    if include_bases:
        cocycles = tuple(linalg.kernel(z_matrix))
        z1 = len(cocycles)
    else:
        z1 = G * M - linalg.rank(z_matrix)

    # coboundaries: w -> (g_k -> [g_k, w]) stacked the same way
    b_rows = [
        [acts[k].at(r, t) for t in range(M)]
        for k in range(G)
        for r in range(M)
    ]
    b_matrix = RationalMatrix.from_rows(b_rows)
    b1 = linalg.rank(b_matrix)
    boundaries: tuple[tuple[Fraction, ...], ...] = ()
    if include_bases:
        boundaries = tuple(
            tuple(b_matrix.at(r, t) for r in range(G * M)) for t in range(M)
        )
    return H1Report(n, M, z1, b1, cocycles, boundaries)


@dataclass(frozen=True)
class InnerObstruction:
    """Unsatisfiable coordinate in an inner-element reconstruction."""

    generator_index: int
    mono: Monomial
    direction: int

    def describe(self) -> str:
        return (
            f"coordinate {format_term(self.mono, self.direction)} of the image of "
            f"generator #{self.generator_index + 1} cannot be matched"
        )


@dataclass(frozen=True)
class InnerSolveResult:
    """Outcome of solving [g, w] = d(g) over a search subspace.

    kind is 'unique', 'underdetermined' (field is the canonical particular
    solution, kernel spans the ambiguity - the centralizer of the generators
    in the search space) or 'inconsistent' (certificate set, field None).
    """

    kind: str
    field: VectorField | None
    kernel: tuple[VectorField, ...]
    certificate: InnerObstruction | None = None


class DerivationSpec:
    """Values of a would-be derivation on an ordered generating set.

    Construction validates the cocycle identity d[a,b] = [d a, b] + [a, d b]
    for every generator pair whose bracket re-expands inside the generator
    span; pairs that leave the span are skipped and listed in
    ``skipped_pairs``.
    """

    def __init__(self, generators: Sequence[VectorField], values: Sequence[VectorField]):
        if len(generators) != len(values):
            raise DerivationSpecError(
                f"{len(generators)} generators but {len(values)} values"
            )
        if not generators:
            raise DerivationSpecError("empty generating set")
        self.generators = tuple(generators)
        self.values = tuple(values)
        self.skipped_pairs = self._validate()

    @staticmethod
    def from_ad(w: VectorField, generators: Sequence[VectorField]) -> DerivationSpec:
        """The restriction of the adjoint operator x -> [x, w] to the generators."""
        return DerivationSpec(generators, [g.bracket(w) for g in generators])

    def _validate(self) -> tuple[tuple[int, int], ...]:
        gens = self.generators
        union_terms = sorted(
            {(m, i) for g in gens for m, i, _ in g.terms()}, key=_term_key
        )
        index = {t: k for k, t in enumerate(union_terms)}

        def vec(w: VectorField) -> list[Fraction] | None:
            out = [Fraction(0)] * len(union_terms)
            for m, i, c in w.terms():
                k = index.get((m, i))
                if k is None:
                    return None
                out[k] = c
            return out

        gen_vecs = [vec(g) for g in gens]
        gen_matrix = RationalMatrix.from_rows(
            [[gen_vecs[k][t] for k in range(len(gens))] for t in range(len(union_terms))]
        )
        if linalg.rank(gen_matrix) != len(gens):
            raise DerivationSpecError("generators are linearly dependent")

        pairs = []
        rhs = []
        skipped = []
        for a in range(len(gens)):
            for b in range(a + 1, len(gens)):
                bracket_ab = gens[a].bracket(gens[b])
                v = vec(bracket_ab)
                if v is None:
                    skipped.append((a, b))
                    continue
                pairs.append((a, b))
                rhs.append(v)
        if pairs:
            outcomes = linalg.solve_many(gen_matrix, rhs)
            for (a, b), outcome in zip(pairs, outcomes):
                if outcome.kind == "inconsistent":
                    skipped.append((a, b))
                    continue
                lam = outcome.particular
                expected = VectorField.zero()
                for k, c in enumerate(lam):
                    if c:
                        expected = expected + self.values[k].scale(c)
                actual = self.values[a].bracket(gens[b]) + gens[a].bracket(self.values[b])
                if expected != actual:
                    raise DerivationSpecError(
                        f"cocycle identity fails on generator pair ({a + 1}, {b + 1})"
                    )
        return tuple(sorted(skipped))


def _derived_codomain(gens: Sequence[VectorField], search: SubspaceSpec) -> TruncationWindow:
    max_var = search.window.max_var
    deg_lo = 0
    deg_hi = 0
    for g in gens:
        max_var = max(max_var, g.max_index())
        comps = g.degree_components()
        if comps:
            deg_lo = min(deg_lo, min(comps))
            deg_hi = max(deg_hi, max(comps))
    return TruncationWindow(
        max_var=max_var,
        degree_min=max(-1, search.window.degree_min + deg_lo),
        degree_max=search.window.degree_max + deg_hi,
        mode="strict",
    )


def solve_inner(
    spec: DerivationSpec,
    search: SubspaceSpec,
    codomain: TruncationWindow | None = None,
) -> InnerSolveResult:
    """Solve [g, w] = d(g) for w in span(search), all generators at once.

    The codomain window (defaulting to the smallest window guaranteed to
    contain every bracket of a generator with a search basis element) hosts
    the equations; a strict codomain raises when an image or a value leaves
    it.  The kernel of the system is exactly the centralizer of the
    generators inside the search space.
    """
    gens = spec.generators
    window = codomain or _derived_codomain(gens, search)
    blocks = _stacked_blocks(gens, search, window)

    # right-hand side: coordinates of the prescribed values, block by block
    remaining: dict[tuple[int, Term], Fraction] = {}
    for a, value in enumerate(spec.values):
        for mono, direction, coeff in value.terms():
            if not window.contains_term(mono, direction):
                if window.mode == "strict":
                    raise WindowViolation(
                        f"prescribed value term {format_term(mono, direction)} lies outside "
                        f"the codomain window",
                        mono,
                        direction,
                    )
                continue
            remaining[(a, (mono, direction))] = coeff

    kernel_fields: list[VectorField] = []
    particular = [Fraction(0)] * search.dim
    obstruction: InnerObstruction | None = None

    for block in blocks:
        labels = list(block.row_labels)
        rows = [list(r) for r in block.rows]
        rhs = []
        for lab in labels:
            rhs.append(remaining.pop(lab, Fraction(0)))
        m = RationalMatrix.from_rows(rows) if rows else RationalMatrix.zero(0, len(block.cols))
        outcome = linalg.solve(m, rhs)
        for vec in outcome.kernel_basis:
            full = [Fraction(0)] * search.dim
            for local, col in enumerate(block.cols):
                full[col] = vec[local]
            kernel_fields.append(search.field_from_coords(full))
        if outcome.kind == "inconsistent":
            a, (mono, direction) = labels[outcome.bad_row]
            cand = InnerObstruction(a, mono, direction)
            if obstruction is None or _obstruction_key(cand) < _obstruction_key(obstruction):
                obstruction = cand
        elif outcome.particular is not None:
            for local, col in enumerate(block.cols):
                particular[col] = outcome.particular[local]

    # prescribed values at coordinates no search element can reach
    for (a, (mono, direction)), coeff in sorted(
        remaining.items(), key=lambda kv: (kv[0][0], _term_key(kv[0][1]))
    ):
        if coeff:
            cand = InnerObstruction(a, mono, direction)
            if obstruction is None or _obstruction_key(cand) < _obstruction_key(obstruction):
                obstruction = cand

    if obstruction is not None:
        return InnerSolveResult("inconsistent", None, tuple(kernel_fields), obstruction)
    field = search.field_from_coords(particular)
    if kernel_fields:
        return InnerSolveResult("underdetermined", field, tuple(kernel_fields))
    return InnerSolveResult("unique", field, ())


def _obstruction_key(o: InnerObstruction) -> tuple:
    return (o.generator_index, _term_key((o.mono, o.direction)))


def verify_bracket_identities(w: VectorField, i: int, j: int) -> bool:
    """Check the three closed bracket formulas for [w, x_j di], its di-component,
    and [w, x_i di - x_j dj] against the generic bracket."""
    if i == j:
        raise ValueError("indices must differ")
    xi = VectorField.term(Monomial.var(i), i)
    xj_di = VectorField.term(Monomial.var(j), i)
    xj = VectorField.term(Monomial.var(j), j)
    x_i = Polynomial.variable(i)
    x_j = Polynomial.variable(j)

    lhs2 = w.bracket(xj_di)
    rhs2 = VectorField({i: w.component(j)})
    for l, f_l in w.components():
        rhs2 = rhs2 - VectorField({l: x_j * f_l.partial(i)})
    if lhs2 != rhs2:
        return False

    comp3 = w.component(j) - x_j * w.component(i).partial(i)
    if lhs2.component(i) != comp3:
        return False

    lhs4 = w.bracket(xi - xj)
    rhs4 = VectorField({i: w.component(i)}) - VectorField({j: w.component(j)})
    for l, f_l in w.components():
        rhs4 = rhs4 + VectorField({l: x_j * f_l.partial(j) - x_i * f_l.partial(i)})
    return lhs4 == rhs4


class ScanError(Exception):
    """A scanned task failed; carries the parameter value where it happened."""

    def __init__(self, n: int, message: str):
        super().__init__(f"at n={n}: {message}")
        self.n = n


@dataclass(frozen=True)
class StabilizationReport:
    """Coefficient trajectories of normalized per-n solutions.

    A coefficient counts as stabilized when its trajectory is constant over a
    suffix reaching the end of the range and containing at least the last two
    scan points.  ``limit`` is assembled from the final values when every
    tracked coefficient stabilized.  For the centralizer task ``dims`` tracks
    the per-n dimension; coefficient trajectories are recorded only when the
    dimension stays at most 1 across the whole range.
    """

    task: str
    n_values: tuple[int, ...]
    dims: tuple[int, ...]
    trajectories: dict[Term, tuple[Fraction, ...]]
    stabilized: dict[Term, bool]
    first_stable_n: dict[Term, int | None]
    limit: VectorField | None
    all_stabilized: bool


def stabilization_scan(
    task: str,
    n_values: Sequence[int],
    *,
    generators: str = "L",
    from_field: VectorField | None = None,
    degree_min: int = -1,
    degree_max: int = 2,
    max_var_offset: int = 1,
    mode: str = "strict",
) -> StabilizationReport:
    """Run a task for each n in ascending order, normalize each solution the
    same way (zero the x1 d1 coefficient by subtracting a multiple of the
    grading field whenever that field lies in the solution's ambiguity
    space), and report per-coefficient trajectories."""
    task = task.replace("_", "-")
    if task not in ("centralizer", "solve-inner"):
        raise ValueError(f"unknown scan task {task!r}")
    if generators not in ("sl", "L"):
        raise ValueError(f"unknown generator family {generators!r}")
    ns = list(n_values)
    if not ns:
        raise ValueError("empty n range")
    if any(b <= a for a, b in zip(ns, ns[1:])) or any(n < 1 for n in ns):
        raise ValueError("n range must be ascending positive integers")
    if task == "solve-inner" and from_field is None:
        raise ValueError("solve-inner scans need the reference field (from_field)")

    per_n_fields: list[VectorField | None] = []
    dims: list[int] = []
    for n in ns:
        if generators == "sl" and n < 2:
            raise ScanError(n, "sl generators need n >= 2")
        gens = sl_basis(n) if generators == "sl" else L_basis(n)
        window = TruncationWindow(
            max_var=n + max_var_offset,
            degree_min=degree_min,
            degree_max=degree_max,
            mode=mode,
        )
        space = SubspaceSpec.span_window(window)
        try:
            if task == "solve-inner":
                spec = DerivationSpec.from_ad(from_field, gens)
                result = solve_inner(spec, space)
                if result.kind == "inconsistent":
                    raise ScanError(
                        n, f"inner reconstruction inconsistent: {result.certificate.describe()}"
                    )
                dims.append(len(result.kernel))
                per_n_fields.append(_normalize(result.field, list(result.kernel), n, space))
            else:
                basis = centralizer(gens, space)
                dims.append(len(basis))
                if len(basis) > 1:
                    per_n_fields.append(None)
                else:
                    rep = basis[0] if basis else VectorField.zero()
                    per_n_fields.append(_normalize(rep, basis, n, space))
        except WindowViolation as exc:
            raise ScanError(n, str(exc)) from exc

    trackable = all(f is not None for f in per_n_fields)
    trajectories: dict[Term, tuple[Fraction, ...]] = {}
    stabilized: dict[Term, bool] = {}
    first_stable: dict[Term, int | None] = {}
    if trackable:
        term_universe = sorted(
            {(m, i) for f in per_n_fields for m, i, _ in f.terms()}, key=_term_key
        )
        for term in term_universe:
            mono, direction = term
            traj = tuple(f.coeff(mono, direction) for f in per_n_fields)
            idx = len(traj) - 1
            while idx > 0 and traj[idx - 1] == traj[idx]:
                idx -= 1
            trajectories[term] = traj
            first_stable[term] = ns[idx]
            stabilized[term] = len(ns) == 1 or idx <= len(ns) - 2

    all_stab = trackable and all(stabilized.values())
    limit = None
    if all_stab:
        limit = VectorField.zero()
        for term, traj in trajectories.items():
            if traj[-1]:
                limit = limit + VectorField.term(term[0], term[1], traj[-1])
    return StabilizationReport(
        task=task,
        n_values=tuple(ns),
        dims=tuple(dims),
        trajectories=trajectories,
        stabilized=stabilized,
        first_stable_n=first_stable,
        limit=limit,
        all_stabilized=all_stab,
    )


def _normalize(
    field: VectorField, ambiguity: list[VectorField], n: int, space: SubspaceSpec
) -> VectorField:
    """Zero the x1 d1 coefficient by an Euler-field shift when that shift
    stays within the solution's ambiguity space."""
    coeff = field.coeff(Monomial.var(1), 1)
    if not coeff:
        return field
    e = euler(n)
    if not space.contains(e):
        return field
    rs = RowSpace(space.dim)
    for k in ambiguity:
        rs.add(space.coords(k))
    if rs.contains(space.coords(e)):
        return field - e.scale(coeff)
    return field
