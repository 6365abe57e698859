"""Finite-group representation machinery for symmetry-protected synchronization.

Covers: validated group tables and character tables for a few built-in
groups, unitary representations given extensionally (one matrix per
element), character-theoretic isotypic projectors and multiplicities, the
diagonal isotypic subspace sitting inside a bipartite tensor product, Schur
scalars of equivariant observables, membership in the algebra of
synchronization-preserving Hamiltonians, and the kernel-containment check
that ties irrep-label alignment to the synchronization kernel.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

import numpy as np
import scipy.linalg

from . import opcore
from .clocks import _philox
from .opcore import NumericalError, Subspace

EQUIVAR_TOL = 1e-10
MATCH_TOL = 1e-9            # scalar agreement |alpha - beta| for kernel membership
MULT_ROUND_TOL = 1e-6
SCHUR_TOL = 1e-9
KERNEL_RESIDUAL_TOL = 1e-9  # ||K b|| allowance on matched components
_IDEMPOTENT_TOL = 1e-8
_ASSOC_CHECK_MAX_ORDER = 64
_EXHAUSTIVE_PAIRS_MAX_ORDER = 24


# ---------------------------------------------------------------------------
# groups

@dataclass(frozen=True, eq=False)
class FiniteGroup:
    """Finite group as a validated multiplication table over opaque labels."""

    name: str
    elements: tuple
    mult_table: np.ndarray
    identity_index: int
    inverse_table: np.ndarray
    conjugacy_classes: tuple

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def class_sizes(self) -> tuple:
        return tuple(len(c) for c in self.conjugacy_classes)

    def class_of(self, index: int) -> int:
        """Conjugacy-class index of an element index."""
        for ci, cls in enumerate(self.conjugacy_classes):
            if index in cls:
                return ci
        raise ValueError(f"element index {index} out of range")

    def index_of(self, label) -> int:
        try:
            return self.elements.index(label)
        except ValueError:
            raise ValueError(f"unknown group element {label!r}") from None


def _conjugacy_classes(table: np.ndarray, inverse: np.ndarray, identity: int) -> tuple:
    n = table.shape[0]
    seen = set()
    classes = []
    for g in range(n):
        if g in seen:
            continue
        orbit = sorted({int(table[table[h, g], inverse[h]]) for h in range(n)})
        classes.append(tuple(orbit))
        seen.update(orbit)
    classes.sort(key=lambda c: (0 if identity in c else 1, c[0]))
    return tuple(classes)


def make_group(elements, mult_table, classes=None, name: str = "group") -> FiniteGroup:
    """Validate a multiplication table into a FiniteGroup.

    Checks: Latin square, unique identity, inverses, associativity on all
    triples (orders <= 64), and that any supplied classes are closed under
    conjugation and partition the elements.
    """
    elements = tuple(str(e) for e in elements)
    n = len(elements)
    if n == 0 or len(set(elements)) != n:
        raise ValueError("group elements must be nonempty and distinct")
    table = np.asarray(mult_table, dtype=np.int64)
    if table.shape != (n, n):
        raise ValueError(f"multiplication table shape {table.shape} does not match order {n}")
    if table.min() < 0 or table.max() >= n:
        raise ValueError("multiplication table indices out of range")
    want = np.arange(n)
    for i in range(n):
        if not np.array_equal(np.sort(table[i]), want) or not np.array_equal(np.sort(table[:, i]), want):
            raise ValueError(f"multiplication table is not a Latin square at row/col {i}")

    ids = [e for e in range(n)
           if np.array_equal(table[e], want) and np.array_equal(table[:, e], want)]
    if len(ids) != 1:
        raise ValueError("group must have exactly one identity element")
    identity = ids[0]

    inverse = np.full(n, -1, dtype=np.int64)
    for g in range(n):
        hits = np.nonzero(table[g] == identity)[0]
        if hits.size != 1 or table[hits[0], g] != identity:
            raise ValueError(f"element {elements[g]!r} lacks a two-sided inverse")
        inverse[g] = hits[0]

    if n <= _ASSOC_CHECK_MAX_ORDER:
        left = table[table, :]          # left[a,b,c] = (ab)c
        right = table[:, table]         # right[a,b,c] = a(bc)
        if not np.array_equal(left, right):
            raise ValueError("multiplication table is not associative")

    computed = _conjugacy_classes(table, inverse, identity)
    if classes is not None:
        supplied = tuple(tuple(sorted(int(i) for i in c)) for c in classes)
        if sorted(i for c in supplied for i in c) != list(range(n)):
            raise ValueError("conjugacy classes must partition the elements")
        if set(supplied) != set(computed):
            raise ValueError("supplied conjugacy classes are not closed under conjugation")
        # keep the canonical deterministic order regardless of input order
    return FiniteGroup(name=name, elements=elements, mult_table=table,
                       identity_index=identity, inverse_table=inverse,
                       conjugacy_classes=computed)


def _perm_group(name: str, labels, perms) -> FiniteGroup:
    """Group from permutation tuples; composition (p*q)(x) = p(q(x))."""
    index = {p: i for i, p in enumerate(perms)}
    n = len(perms)
    table = np.zeros((n, n), dtype=np.int64)
    for i, p in enumerate(perms):
        for j, q in enumerate(perms):
            table[i, j] = index[tuple(p[q[x]] for x in range(len(p)))]
    return make_group(labels, table, name=name)


# ---------------------------------------------------------------------------
# character tables

@dataclass(frozen=True, eq=False)
class Irrep:
    name: str
    dim: int
    characters: np.ndarray   # one complex value per conjugacy class


@dataclass(frozen=True, eq=False)
class CharacterTable:
    irreps: tuple

    def __iter__(self):
        return iter(self.irreps)

    def __len__(self):
        return len(self.irreps)


def make_character_table(group: FiniteGroup, rows) -> CharacterTable:
    """Validate (name, dim, chars-per-class) rows against the group."""
    n_classes = len(group.conjugacy_classes)
    irreps = []
    for name, dim, chars in rows:
        chars = np.asarray(chars, dtype=np.complex128)
        if chars.shape != (n_classes,):
            raise ValueError(f"irrep {name!r} needs one character per class ({n_classes})")
        irreps.append(Irrep(name=str(name), dim=int(dim), characters=chars))
    if sum(ir.dim ** 2 for ir in irreps) != group.order:
        raise ValueError("sum of squared irrep dimensions must equal the group order")
    sizes = np.asarray(group.class_sizes, dtype=np.float64)
    for i, a in enumerate(irreps):
        for j, b in enumerate(irreps):
            inner = np.sum(sizes * a.characters * b.characters.conj()) / group.order
            if abs(inner - (1.0 if i == j else 0.0)) > 1e-10:
                raise ValueError(
                    f"character rows {a.name!r}, {b.name!r} violate orthogonality "
                    f"(inner product {inner:.3e})")
    return CharacterTable(irreps=tuple(irreps))


def _cyclic_group(n: int):
    table = (np.arange(n)[:, None] + np.arange(n)[None, :]) % n
    group = make_group([f"g{i}" for i in range(n)], table, name=f"Z{n}")
    omega = np.exp(2j * np.pi / n)
    rows = [(f"chi{k}", 1, [omega ** (k * j) for j in range(n)]) for k in range(n)]
    return group, make_character_table(group, rows)


def _klein_group():
    table = np.bitwise_xor(np.arange(4)[:, None], np.arange(4)[None, :])
    group = make_group(["e", "a", "b", "ab"], table, name="Z2xZ2")
    rows = [
        ("triv", 1, [1, 1, 1, 1]),
        ("chi10", 1, [1, -1, 1, -1]),
        ("chi01", 1, [1, 1, -1, -1]),
        ("chi11", 1, [1, -1, -1, 1]),
    ]
    return group, make_character_table(group, rows)


def _s3_group():
    perms = [(0, 1, 2), (1, 2, 0), (2, 0, 1), (1, 0, 2), (2, 1, 0), (0, 2, 1)]
    group = _perm_group("S3", ["e", "r", "rr", "s", "rs", "rrs"], perms)
    # class order: [e], [r, rr], [s, rs, rrs]
    rows = [
        ("triv", 1, [1, 1, 1]),
        ("sign", 1, [1, 1, -1]),
        ("std", 2, [2, -1, 0]),
    ]
    return group, make_character_table(group, rows)


def _d4_group():
    r = (1, 2, 3, 0)
    s = (0, 3, 2, 1)

    def compose(p, q):
        return tuple(p[q[x]] for x in range(4))

    powers = [(0, 1, 2, 3)]
    for _ in range(3):
        powers.append(compose(r, powers[-1]))
    perms = powers + [compose(p, s) for p in powers]
    group = _perm_group("D4", ["e", "r", "rr", "rrr", "s", "rs", "rrs", "rrrs"], perms)
    # class order: [e], [r, rrr], [rr], [s, rrs], [rs, rrrs]
    rows = [
        ("A1", 1, [1, 1, 1, 1, 1]),
        ("A2", 1, [1, 1, 1, -1, -1]),
        ("B1", 1, [1, -1, 1, 1, -1]),
        ("B2", 1, [1, -1, 1, -1, 1]),
        ("E", 2, [2, 0, -2, 0, 0]),
    ]
    return group, make_character_table(group, rows)


def builtin_group(name: str):
    """Built-in (group, character table) pairs: Zn, Z2xZ2, S3, D4."""
    if name == "Z2xZ2":
        return _klein_group()
    if name == "S3":
        return _s3_group()
    if name == "D4":
        return _d4_group()
    m = re.fullmatch(r"Z(\d+)", name)
    if m:
        n = int(m.group(1))
        if n < 1:
            raise ValueError("cyclic group order must be >= 1")
        return _cyclic_group(n)
    raise ValueError(f"unknown builtin group {name!r}")


# ---------------------------------------------------------------------------
# representations

@dataclass(frozen=True, eq=False)
class Representation:
    """Unitary representation given extensionally: one matrix per element."""

    group: FiniteGroup
    matrices: np.ndarray   # (order, dim, dim)

    @property
    def dim(self) -> int:
        return int(self.matrices.shape[1])

    def __getitem__(self, index: int) -> np.ndarray:
        return self.matrices[index]


def make_representation(group: FiniteGroup, matrices) -> Representation:
    mats = np.asarray(matrices, dtype=np.complex128)
    if mats.ndim != 3 or mats.shape[0] != group.order or mats.shape[1] != mats.shape[2]:
        raise ValueError(f"expected {group.order} square matrices, got shape {mats.shape}")
    dim = mats.shape[1]
    ident_res = opcore.operator_norm(mats[group.identity_index] - np.eye(dim))
    if ident_res > 1e-12 * dim:
        raise ValueError(f"identity element must map to I (residual {ident_res:.3e})")
    for i in range(group.order):
        res = opcore.unitarity_residual(mats[i])
        if res > opcore.UNITARY_TOL * dim:
            raise ValueError(
                f"matrix for element {group.elements[i]!r} is not unitary (residual {res:.3e})")
    return Representation(group=group, matrices=mats)


def trivial_representation(group: FiniteGroup, dim: int = 1) -> Representation:
    mats = np.broadcast_to(np.eye(dim, dtype=np.complex128), (group.order, dim, dim)).copy()
    return make_representation(group, mats)


def regular_representation(group: FiniteGroup) -> Representation:
    """Left regular representation: rho(g)|h> = |gh> as permutation matrices."""
    n = group.order
    mats = np.zeros((n, n, n), dtype=np.complex128)
    for g in range(n):
        mats[g, group.mult_table[g, :], np.arange(n)] = 1.0
    return make_representation(group, mats)


def representation_from_generators(group: FiniteGroup, generators: dict) -> Representation:
    """Expand generator matrices to all elements via the multiplication table."""
    if not generators:
        raise ValueError("at least one generator is required")
    gen_items = [(group.index_of(label), opcore.as_complex_matrix(m))
                 for label, m in generators.items()]
    dim = gen_items[0][1].shape[0]
    if any(m.shape[0] != dim for _, m in gen_items):
        raise ValueError("generator matrices must share one dimension")
    known: dict = {group.identity_index: np.eye(dim, dtype=np.complex128)}
    frontier = [group.identity_index]
    while frontier:
        nxt = []
        for g in frontier:
            for gi, gm in gen_items:
                h = int(group.mult_table[g, gi])
                if h not in known:
                    known[h] = known[g] @ gm
                    nxt.append(h)
        frontier = nxt
    if len(known) != group.order:
        missing = [group.elements[i] for i in range(group.order) if i not in known]
        raise ValueError(f"generators do not generate the group; missing {missing}")
    mats = np.stack([known[i] for i in range(group.order)])
    return make_representation(group, mats)


def tensor_representation(rho_a: Representation, rho_b: Representation) -> Representation:
    """Joint diagonal action g -> rho_A(g) (x) rho_B(g)."""
    _require_same_group(rho_a, rho_b)
    mats = np.stack([np.kron(rho_a[g], rho_b[g]) for g in range(rho_a.group.order)])
    return make_representation(rho_a.group, mats)


def random_equivariant_observable(rho: Representation, seed: int) -> np.ndarray:
    """Hermitian observable commuting with the whole group action (group twirl)."""
    rng = _philox(seed)
    d = rho.dim
    g = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
    r = (g + g.conj().T) / 2.0
    avg = sum(rho[i] @ r @ rho[i].conj().T for i in range(rho.group.order)) / rho.group.order
    return (avg + avg.conj().T) / 2.0


def _require_same_group(rho_a: Representation, rho_b: Representation) -> None:
    if rho_a.group is rho_b.group:
        return
    if not np.array_equal(rho_a.group.mult_table, rho_b.group.mult_table):
        raise ValueError("representations must share one group")


@dataclass(frozen=True)
class RepresentationValidation:
    max_homomorphism_residual: float
    max_unitarity_residual: float
    identity_residual: float
    pairs_checked: int
    exhaustive: bool
    passed: bool


def validate_representation(rho: Representation,
                            homomorphism_tol: float = 1e-10,
                            sample_pairs: int = 500,
                            seed: int = 0) -> RepresentationValidation:
    """Report homomorphism/unitarity residuals; exhaustive pairs for small groups."""
    group = rho.group
    n = group.order
    unit_res = max(opcore.unitarity_residual(rho[i]) for i in range(n))
    ident_res = opcore.operator_norm(rho[group.identity_index] - np.eye(rho.dim))

    if n <= _EXHAUSTIVE_PAIRS_MAX_ORDER:
        pairs = [(g, h) for g in range(n) for h in range(n)]
        exhaustive = True
    else:
        rng = _philox(seed)
        pairs = [(int(g), int(h)) for g, h in rng.integers(0, n, size=(max(sample_pairs, 500), 2))]
        exhaustive = False
    hom_res = 0.0
    for g, h in pairs:
        gh = int(group.mult_table[g, h])
        hom_res = max(hom_res, opcore.operator_norm(rho[g] @ rho[h] - rho[gh]))

    passed = (hom_res <= homomorphism_tol
              and unit_res <= opcore.UNITARY_TOL * rho.dim
              and ident_res <= 1e-12 * rho.dim)
    return RepresentationValidation(
        max_homomorphism_residual=hom_res,
        max_unitarity_residual=unit_res,
        identity_residual=ident_res,
        pairs_checked=len(pairs),
        exhaustive=exhaustive,
        passed=passed,
    )


# ---------------------------------------------------------------------------
# isotypic structure

def _element_characters(group: FiniteGroup, irrep: Irrep) -> np.ndarray:
    """Character value per element index (characters are class functions)."""
    if irrep.characters.shape != (len(group.conjugacy_classes),):
        raise ValueError(
            f"irrep {irrep.name!r} carries {irrep.characters.shape[0]} character values "
            f"but the group has {len(group.conjugacy_classes)} conjugacy classes")
    chars = np.empty(group.order, dtype=np.complex128)
    for ci, cls in enumerate(group.conjugacy_classes):
        chars[list(cls)] = irrep.characters[ci]
    return chars


def multiplicities(rho: Representation, chars: CharacterTable, *,
                   mult_round_tol: float = MULT_ROUND_TOL) -> list:
    """Irrep multiplicities m = (1/|G|) sum_g tr rho(g) chi(g)*, rounded.

    Raises when the rounding error exceeds mult_round_tol (bad table or rep)
    or when the multiplicities fail to add up to the representation dimension.
    """
    items, _ = _multiplicities_with_error(rho, chars, mult_round_tol)
    return items


def _multiplicities_with_error(rho, chars, mult_round_tol):
    group = rho.group
    traces = np.einsum("gii->g", rho.matrices)
    items = []
    worst = 0.0
    for irrep in chars:
        raw = np.sum(traces * _element_characters(group, irrep).conj()) / group.order
        m = int(round(raw.real))
        err = abs(raw - m)
        worst = max(worst, err)
        if err > mult_round_tol or m < 0:
            raise ValueError(
                f"multiplicity of {irrep.name!r} is {raw:.6g}, not a nonnegative integer "
                f"within {mult_round_tol:g}")
        items.append((irrep.name, m))
    total = sum(m * irrep.dim for (_, m), irrep in zip(items, chars))
    if total != rho.dim:
        raise ValueError(f"multiplicities account for dim {total}, expected {rho.dim}")
    return items, worst


@dataclass(frozen=True, eq=False)
class IsotypicComponent:
    irrep: str
    irrep_dim: int
    multiplicity: int
    projector: np.ndarray

    @property
    def isotypic_dim(self) -> int:
        return self.irrep_dim * self.multiplicity


@dataclass(frozen=True, eq=False)
class IsotypicDecomposition:
    components: tuple
    mult_rounding_error: float

    def component(self, name: str) -> IsotypicComponent:
        for c in self.components:
            if c.irrep == name:
                return c
        raise KeyError(name)


def isotypic_projectors(rho: Representation, chars: CharacterTable) -> IsotypicDecomposition:
    """Character projectors P = (d/|G|) sum_g chi(g)* rho(g), one per irrep."""
    group = rho.group
    mults, round_err = _multiplicities_with_error(rho, chars, MULT_ROUND_TOL)
    components = []
    for irrep, (_, m) in zip(chars, mults):
        weights = _element_characters(group, irrep).conj() * (irrep.dim / group.order)
        p = np.einsum("g,gij->ij", weights, rho.matrices)
        idem = opcore.operator_norm(p @ p - p)
        if idem > _IDEMPOTENT_TOL:
            raise NumericalError(
                f"isotypic projector for {irrep.name!r} fails idempotence ({idem:.3e}); "
                "representation and character table are inconsistent")
        rank = int(np.count_nonzero(np.linalg.eigvalsh((p + p.conj().T) / 2.0) > 0.5))
        if rank != m * irrep.dim:
            raise NumericalError(
                f"isotypic projector for {irrep.name!r} has rank {rank}, "
                f"expected {m * irrep.dim}")
        components.append(IsotypicComponent(
            irrep=irrep.name, irrep_dim=irrep.dim, multiplicity=m, projector=p))
    return IsotypicDecomposition(components=tuple(components), mult_rounding_error=round_err)


def _range_basis(p: np.ndarray, rank: int) -> np.ndarray:
    """Orthonormal basis of ran(P) via column-pivoted QR, deterministic phases."""
    q, _, _ = scipy.linalg.qr(p, mode="economic", pivoting=True)
    return opcore._fix_phases(q[:, :rank])


def diagonal_isotypic_subspace(rho_a: Representation, rho_b: Representation,
                               chars: CharacterTable) -> Subspace:
    """Direct sum over shared irreps of V_l^A (x) V_l^B inside the product space.

    Requires multiplicity-free content on both sides; the returned subspace is
    invariant under the joint action (verified before returning).
    """
    _require_same_group(rho_a, rho_b)
    dec_a = isotypic_projectors(rho_a, chars)
    dec_b = isotypic_projectors(rho_b, chars)
    for dec, side in ((dec_a, "A"), (dec_b, "B")):
        bad = [c.irrep for c in dec.components if c.multiplicity > 1]
        if bad:
            raise ValueError(
                f"representation {side} has multiplicity > 1 for {bad}; the diagonal "
                "isotypic subspace is only defined for multiplicity-free content")

    pieces = []
    for comp_a, comp_b in zip(dec_a.components, dec_b.components):
        if comp_a.multiplicity == 1 and comp_b.multiplicity == 1:
            basis_a = _range_basis(comp_a.projector, comp_a.irrep_dim)
            basis_b = _range_basis(comp_b.projector, comp_b.irrep_dim)
            pieces.append(np.kron(basis_a, basis_b))
    ambient = rho_a.dim * rho_b.dim
    if pieces:
        basis = np.hstack(pieces)
    else:
        basis = np.zeros((ambient, 0), dtype=np.complex128)
    subspace = Subspace(ambient_dim=ambient, basis=basis, tol_used=0.0)

    if subspace.dim:
        pi = opcore.projector(subspace)
        eye = np.eye(ambient)
        joint = tensor_representation(rho_a, rho_b)
        for g in range(joint.group.order):
            leak = opcore.operator_norm((eye - pi) @ joint[g] @ pi)
            if leak > 1e-10:
                raise NumericalError(
                    f"diagonal isotypic subspace is not invariant under "
                    f"{joint.group.elements[g]!r} (leakage {leak:.3e})")
    return subspace


# ---------------------------------------------------------------------------
# Schur scalars and synchronization structure

def equivariance_residual(rho: Representation, t) -> float:
    t = opcore.as_complex_matrix(t)
    if t.shape[0] != rho.dim:
        raise ValueError(f"operator dim {t.shape[0]} does not match representation dim {rho.dim}")
    return max(opcore.operator_norm(opcore.commutator(rho[g], t))
               for g in range(rho.group.order))


@dataclass(frozen=True, eq=False)
class SchurEntry:
    irrep: str
    multiplicity: int
    scalar: complex | None
    residual: float | None
    block: np.ndarray | None


@dataclass(frozen=True, eq=False)
class SchurReport:
    entries: tuple
    equivariance_residual: float

    def scalar(self, name: str) -> complex:
        for e in self.entries:
            if e.irrep == name and e.scalar is not None:
                return e.scalar
        raise KeyError(name)


def schur_scalars(t, rho: Representation, decomp: IsotypicDecomposition,
                  equivar_tol: float = EQUIVAR_TOL) -> SchurReport:
    """Per-irrep scalars of an equivariant observable.

    Multiplicity-one components carry a scalar and the residual
    ||T P - scalar P||; higher-multiplicity components report the compressed
    block P T P without a scalar claim.
    """
    t = opcore.as_complex_matrix(t)
    eq_res = equivariance_residual(rho, t)
    if eq_res > equivar_tol:
        raise ValueError(
            f"operator is not equivariant: max ||[rho(g), T]|| = {eq_res:.3e} > {equivar_tol:g}")
    entries = []
    for comp in decomp.components:
        if comp.multiplicity == 0:
            continue
        p = comp.projector
        if comp.multiplicity == 1:
            scalar = complex(np.trace(t @ p) / comp.isotypic_dim)
            residual = opcore.operator_norm(t @ p - scalar * p)
            entries.append(SchurEntry(comp.irrep, 1, scalar, residual, None))
        else:
            entries.append(SchurEntry(comp.irrep, comp.multiplicity, None, None, p @ t @ p))
    return SchurReport(entries=tuple(entries), equivariance_residual=eq_res)


def observable_from_class_function(values, rho: Representation) -> np.ndarray:
    """Central observable T = sum_g f(g) rho(g) from one real value per class.

    Hermiticity needs f(class of g) = f(class of g^-1); violated pairs raise.
    """
    group = rho.group
    values = np.asarray(values, dtype=np.float64)
    if values.shape != (len(group.conjugacy_classes),):
        raise ValueError(
            f"need one value per conjugacy class ({len(group.conjugacy_classes)})")
    if not np.all(np.isfinite(values)):
        raise ValueError("class function values must be finite")
    for ci, cls in enumerate(group.conjugacy_classes):
        inv_class = group.class_of(int(group.inverse_table[cls[0]]))
        if values[ci] != values[inv_class]:
            raise ValueError(
                f"class function must agree on inverse classes: classes {ci} and "
                f"{inv_class} carry {values[ci]!r} vs {values[inv_class]!r}")
    per_element = np.empty(group.order)
    for ci, cls in enumerate(group.conjugacy_classes):
        per_element[list(cls)] = values[ci]
    t = np.einsum("g,gij->ij", per_element.astype(np.complex128), rho.matrices)
    herm = opcore.hermiticity_residual(t)
    if herm > 1e-10:
        raise NumericalError(f"class-function observable is not Hermitian ({herm:.3e})")
    eq = equivariance_residual(rho, t)
    if eq > 1e-10:
        raise NumericalError(f"class-function observable is not equivariant ({eq:.3e})")
    return t


@dataclass(frozen=True)
class HsyncVerdict:
    """Membership in the synchronization-preserving algebra.

    Member iff H commutes with the whole group action and with K.
    """

    equivariance_residual: float
    kernel_commutation_residual: float
    member: bool


def hsync_membership(h, rho: Representation, k,
                     equivar_tol: float = EQUIVAR_TOL,
                     compat_tol: float = 1e-10) -> HsyncVerdict:
    h = opcore.as_complex_matrix(h)
    k = opcore.as_complex_matrix(k)
    eq_res = equivariance_residual(rho, h)
    kern_res = opcore.operator_norm(opcore.commutator(h, k))
    threshold = compat_tol * max(1.0, opcore.operator_norm(h) * opcore.operator_norm(k))
    return HsyncVerdict(
        equivariance_residual=eq_res,
        kernel_commutation_residual=kern_res,
        member=bool(eq_res <= equivar_tol and kern_res <= threshold),
    )


@dataclass(frozen=True)
class ContainmentEntry:
    irrep: str
    alpha: float
    beta: float
    matched: bool
    max_kernel_norm: float
    max_deviation: float
    ok: bool


@dataclass(frozen=True, eq=False)
class ContainmentReport:
    """Per-irrep fate of the diagonal isotypic subspace under K.

    Matched irreps (|alpha - beta| <= match_tol) must be annihilated by K;
    mismatched ones must be scaled by exactly |alpha - beta|. ``contained``
    refers to the matched part only.
    """

    entries: tuple
    contained: bool
    all_matched: bool
    passed: bool


def verify_kernel_containment(rho_a: Representation, rho_b: Representation,
                              t_a, t_b, chars: CharacterTable,
                              match_tol: float = MATCH_TOL,
                              kernel_tol: float = KERNEL_RESIDUAL_TOL) -> ContainmentReport:
    _require_same_group(rho_a, rho_b)
    t_a = opcore.as_complex_matrix(t_a)
    t_b = opcore.as_complex_matrix(t_b)
    dec_a = isotypic_projectors(rho_a, chars)
    dec_b = isotypic_projectors(rho_b, chars)
    schur_a = schur_scalars(t_a, rho_a, dec_a)
    schur_b = schur_scalars(t_b, rho_b, dec_b)
    for dec, side in ((dec_a, "A"), (dec_b, "B")):
        bad = [c.irrep for c in dec.components if c.multiplicity > 1]
        if bad:
            raise ValueError(f"representation {side} is not multiplicity-free ({bad})")

    k = np.kron(t_a, np.eye(rho_b.dim)) - np.kron(np.eye(rho_a.dim), t_b)
    entries = []
    for comp_a, comp_b in zip(dec_a.components, dec_b.components):
        if comp_a.multiplicity != 1 or comp_b.multiplicity != 1:
            continue
        alpha = schur_a.scalar(comp_a.irrep).real
        beta = schur_b.scalar(comp_b.irrep).real
        gap = abs(alpha - beta)
        basis = np.kron(_range_basis(comp_a.projector, comp_a.irrep_dim),
                        _range_basis(comp_b.projector, comp_b.irrep_dim))
        norms = np.linalg.norm(k @ basis, axis=0)
        matched = gap <= match_tol
        if matched:
            ok = bool(np.max(norms) <= kernel_tol)
            deviation = float(np.max(norms))
        else:
            deviation = float(np.max(np.abs(norms - gap)))
            ok = deviation <= kernel_tol
        entries.append(ContainmentEntry(
            irrep=comp_a.irrep, alpha=alpha, beta=beta, matched=matched,
            max_kernel_norm=float(np.max(norms)), max_deviation=deviation, ok=ok))
    contained = all(e.ok for e in entries if e.matched)
    return ContainmentReport(
        entries=tuple(entries),
        contained=contained,
        all_matched=all(e.matched for e in entries),
        passed=all(e.ok for e in entries),
    )


def commutant_dimension(rho: Representation) -> int:
    """dim{M : [M, rho(g)] = 0 for all g} by solving the stacked linear system."""
    d = rho.dim
    eye = np.eye(d)
    rows = [np.kron(rho[g], eye) - np.kron(eye, rho[g].T) for g in range(rho.group.order)]
    stacked = np.vstack(rows)
    s = np.linalg.svd(stacked, compute_uv=False)
    if s.size == 0 or s[0] < 1e-300:
        return d * d
    rank = int(np.count_nonzero(s > 1e-10 * s[0]))
    return d * d - rank
