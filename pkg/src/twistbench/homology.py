"""Integral first homology of a capped ribbon surface, with the
intersection pairing, curve classes, Dehn-twist matrices, and the
distinguished involution on curve classes.

Pipeline (all exact over the integers, every step certified):

1. a spanning tree of the crossing graph identifies the cycle lattice of
   the graph with ``Z^m``, ``m = E - V + 1`` (coordinates = coefficients on
   non-tree arcs);
2. boundary-walk vectors span the face relations; their Smith normal form
   must have all invariant factors 1 (otherwise the quotient has torsion,
   which signals an inconsistent sign assignment) and rank ``F - 1``;
   the quotient projection ``Q`` and a section of it come from the
   unimodular transform and its inverse;
3. curve classes are the ``Q``-images of the curves' cycle vectors; their
   Smith form must again be all ones (the curves generate the lattice);
4. the crossing form (sum of signed shared crossings) is transported to the
   quotient: it must vanish on the kernel of the curve-class matrix, and
   the induced antisymmetric matrix ``J`` must be unimodular and reproduce
   the crossing form exactly.

Failures raise :class:`AdmissibilityError`; the sign search uses these as
its filter.
"""
from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass
from functools import cached_property

from .intlin import (
    IntMatrix,
    IntVector,
    column,
    from_columns,
    identity,
    is_antisymmetric,
    is_unimodular,
    is_zero,
    kernel_basis,
    mat_mul,
    mat_mul_many,
    mat_neg,
    mat_sub,
    mat_vec,
    outer,
    right_inverse,
    smith_normal_form,
    transpose,
)
from .surface import (
    CurveId,
    CurveSystem,
    RibbonGraph,
    curve_edge_vector,
    euler_and_genus,
    face_edge_vectors,
    ribbon_from_system,
    trace_boundary,
)

__all__ = [
    "AdmissibilityError",
    "NotWellDefinedError",
    "HomologyModel",
    "MappingClassMatrix",
    "homology_model",
    "reference_model",
    "dehn_twist",
    "compose",
    "is_symplectic",
    "twist_word_matrix",
    "psi_curve_images",
    "psi_reference",
]


class AdmissibilityError(RuntimeError):
    """The ribbon data does not produce a consistent surface homology."""


class NotWellDefinedError(AdmissibilityError):
    """A map prescribed on curve classes conflicts with their relations."""


@dataclass(frozen=True)
class MappingClassMatrix:
    """Integer matrix action on the homology lattice, tagged with the model
    fingerprint it belongs to and (optionally) the twist word it came from."""

    matrix: IntMatrix
    model_fingerprint: str
    word: tuple[tuple[CurveId, int], ...] | None = None

    def __matmul__(self, other: "MappingClassMatrix") -> "MappingClassMatrix":
        if self.model_fingerprint != other.model_fingerprint:
            raise AdmissibilityError("cannot compose matrices over different models")
        word = None
        if self.word is not None and other.word is not None:
            word = self.word + other.word
        return MappingClassMatrix(
            mat_mul(self.matrix, other.matrix), self.model_fingerprint, word
        )


def _spanning_tree_projection(rg: RibbonGraph) -> tuple[int, ...]:
    """Indices of the non-tree arcs (cycle-lattice coordinates)."""
    tree: set[int] = set()
    reached: set[object] = set()
    adjacency: dict[object, list[tuple[object, int]]] = {v: [] for v in rg.vertices}
    for i, (c, k) in enumerate(rg.edges):
        tail = rg.vertex_of_dart[(c, k, "out")]
        head = rg.vertex_of_dart[rg.partner((c, k, "out"))]
        adjacency[tail].append((head, i))
        adjacency[head].append((tail, i))
    stack = [rg.vertices[0]]
    reached.add(rg.vertices[0])
    while stack:
        v = stack.pop()
        for w, i in adjacency[v]:
            if w not in reached:
                reached.add(w)
                tree.add(i)
                stack.append(w)
    if len(reached) != len(rg.vertices):
        raise AdmissibilityError("crossing graph is disconnected")
    return tuple(i for i in range(len(rg.edges)) if i not in tree)


@dataclass(frozen=True)
class HomologyModel:
    """First homology of the capped surface with its intersection form.

    ``classes`` holds one column per curve (in ``curve_order``); ``form`` is
    the antisymmetric unimodular matrix of the intersection pairing in the
    same lattice basis; ``section`` is an integer right inverse of
    ``classes``; ``kernel`` columns span the relations among curve classes.
    """

    system: CurveSystem
    curve_order: tuple[CurveId, ...]
    genus: int
    classes: IntMatrix  # 2g x N
    form: IntMatrix  # 2g x 2g, antisymmetric, unimodular
    crossing_form: IntMatrix  # N x N, from signed crossings
    section: IntMatrix  # N x 2g with classes @ section = identity
    kernel: IntMatrix  # N x (N - 2g)

    @cached_property
    def rank(self) -> int:
        return 2 * self.genus

    @cached_property
    def curve_index(self) -> dict[CurveId, int]:
        return {c: i for i, c in enumerate(self.curve_order)}

    @cached_property
    def fingerprint(self) -> str:
        payload = json.dumps(
            {
                "curves": [c.label for c in self.curve_order],
                "crossings": [
                    [x.first.label, x.second.label, x.sign]
                    for x in self.system.crossings
                ],
                "classes": [list(row) for row in self.classes],
                "form": [list(row) for row in self.form],
            },
            sort_keys=True,
            separators=(",", ":"),
        )
        return hashlib.sha256(payload.encode()).hexdigest()

    def curve_class(self, c: CurveId) -> IntVector:
        return column(self.classes, self.curve_index[c])

    def intersection(self, x: IntVector, y: IntVector) -> int:
        return sum(a * b for a, b in zip(x, mat_vec(self.form, y)))

    def pairing(self, c1: CurveId, c2: CurveId) -> int:
        return self.intersection(self.curve_class(c1), self.curve_class(c2))

    def identity_matrix(self) -> MappingClassMatrix:
        return MappingClassMatrix(identity(self.rank), self.fingerprint, ())

    def check_fingerprint(self, m: MappingClassMatrix) -> None:
        if m.model_fingerprint != self.fingerprint:
            raise AdmissibilityError(
                "matrix belongs to a different model "
                f"({m.model_fingerprint[:12]}… vs {self.fingerprint[:12]}…)"
            )


def _crossing_form(sys: CurveSystem, order: tuple[CurveId, ...]) -> IntMatrix:
    index = {c: i for i, c in enumerate(order)}
    m = [[0] * len(order) for _ in order]
    for x in sys.crossings:
        i, j = index[x.first], index[x.second]
        m[i][j] += x.sign
        m[j][i] -= x.sign
    return tuple(tuple(row) for row in m)


def homology_model(rg: RibbonGraph) -> HomologyModel:
    sys = rg.system
    _, genus = euler_and_genus(rg)
    walks = trace_boundary(rg)
    free = _spanning_tree_projection(rg)

    def fundamental(vec: tuple[int, ...]) -> IntVector:
        return tuple(vec[i] for i in free)

    m = len(free)
    faces = from_columns([fundamental(v) for v in face_edge_vectors(rg)])
    if not faces:
        faces = tuple((0,) * len(walks) for _ in range(m))
    snf = smith_normal_form(faces)
    if any(f != 1 for f in snf.invariant_factors):
        raise AdmissibilityError(
            f"face quotient has torsion: invariant factors {snf.invariant_factors}"
        )
    if snf.rank != len(walks) - 1:
        raise AdmissibilityError(
            f"face relations have rank {snf.rank}, expected {len(walks) - 1}"
        )
    rank = m - snf.rank
    if rank != 2 * genus:
        raise AdmissibilityError(
            f"lattice rank {rank} does not match 2*genus = {2 * genus}"
        )
    projection = snf.U[snf.rank :]
    section_of_projection = tuple(row[snf.rank :] for row in snf.U_inv)
    assert mat_mul(projection, section_of_projection) == identity(rank)

    order = tuple(sys.curves)
    classes = from_columns(
        [
            mat_vec(projection, fundamental(curve_edge_vector(rg, c)))
            for c in order
        ]
    )
    class_snf = smith_normal_form(classes)
    if class_snf.rank != rank or any(f != 1 for f in class_snf.invariant_factors):
        raise AdmissibilityError(
            "curve classes do not generate the lattice: rank "
            f"{class_snf.rank}/{rank}, factors {class_snf.invariant_factors}"
        )

    crossing_form = _crossing_form(sys, order)
    kernel = from_columns(kernel_basis(classes))
    if kernel and not is_zero(mat_mul(crossing_form, kernel)):
        raise AdmissibilityError(
            "crossing form does not vanish on the relations among curves"
        )
    section = right_inverse(classes)
    form = mat_mul_many(transpose(section), crossing_form, section)
    if not is_antisymmetric(form):
        raise AdmissibilityError("induced pairing is not antisymmetric")
    if mat_mul_many(transpose(classes), form, classes) != crossing_form:
        raise AdmissibilityError("induced pairing does not reproduce the crossings")
    if not is_unimodular(form):
        raise AdmissibilityError("induced pairing is not unimodular")

    return HomologyModel(
        system=sys,
        curve_order=order,
        genus=genus,
        classes=classes,
        form=form,
        crossing_form=crossing_form,
        section=section,
        kernel=kernel,
    )


def reference_model(b: int, sigma_signs="auto") -> HomologyModel:
    from .surface import build_reference_configuration

    return homology_model(ribbon_from_system(build_reference_configuration(b, sigma_signs)))


def dehn_twist(model: HomologyModel, c: CurveId, sign: int = +1) -> MappingClassMatrix:
    """Twist action on homology: ``x -> x - <x, c> c`` for ``sign=+1`` and
    its inverse for ``sign=-1``.  The direction convention is pinned by the
    pair identities T_a T_b(a) = -b, T_b T_a(b) = a for <a, b> = +1."""
    if sign not in (+1, -1):
        raise ValueError(f"twist sign must be ±1, got {sign}")
    if c not in model.curve_index:
        raise KeyError(f"unknown curve {c.label}")
    v = model.curve_class(c)
    jv = mat_vec(model.form, v)
    rank_one = outer(v, jv)
    base = identity(model.rank)
    matrix = mat_sub(base, rank_one) if sign == +1 else mat_sub(base, mat_neg(rank_one))
    return MappingClassMatrix(matrix, model.fingerprint, ((c, sign),))


def compose(ms) -> MappingClassMatrix:
    """Right-to-left composition: the last listed matrix acts first."""
    ms = list(ms)
    if not ms:
        raise ValueError("compose() needs at least one matrix; use identity_matrix()")
    out = ms[0]
    for m in ms[1:]:
        out = out @ m
    return out


def is_symplectic(m: MappingClassMatrix, model: HomologyModel) -> bool:
    model.check_fingerprint(m)
    return (
        mat_mul_many(transpose(m.matrix), model.form, m.matrix) == model.form
    )


def twist_word_matrix(model: HomologyModel, word) -> MappingClassMatrix:
    """Matrix of a twist word ``[l1, ..., lk]`` (the rightmost letter acts
    first, matching the global composition convention)."""
    out = identity(model.rank)
    cache: dict[tuple[CurveId, int], IntMatrix] = {}
    letters = tuple((c, s) for c, s in word)
    for c, s in letters:
        if (c, s) not in cache:
            cache[(c, s)] = dehn_twist(model, c, s).matrix
        out = mat_mul(out, cache[(c, s)])
    return MappingClassMatrix(out, model.fingerprint, letters)


#: the two curve-level descriptions of the gluing involution; both negate
#: sigma and swap the families pairwise.
PSI_PAIRINGS = {
    "alpha-delta": {"alpha": "delta", "delta": "alpha", "beta": "gamma", "gamma": "beta"},
    "alpha-beta": {"alpha": "beta", "beta": "alpha", "gamma": "delta", "delta": "gamma"},
}


def psi_curve_images(
    model: HomologyModel, pairing: str = "alpha-delta"
) -> dict[CurveId, tuple[CurveId, int]]:
    if pairing not in PSI_PAIRINGS:
        raise ValueError(f"unknown pairing {pairing!r}; choose from {sorted(PSI_PAIRINGS)}")
    swap = PSI_PAIRINGS[pairing]
    images: dict[CurveId, tuple[CurveId, int]] = {}
    for c in model.curve_order:
        if c.family == "sigma":
            images[c] = (c, -1)
        else:
            images[c] = (CurveId(swap[c.family], c.index), -1)
    return images


def psi_reference(
    model: HomologyModel, pairing: str = "alpha-delta"
) -> MappingClassMatrix:
    """The lattice involution sending each curve class to minus its partner
    class (alpha_i <-> delta_i and beta_i <-> gamma_i under the default
    pairing; the alternate pairing swaps alpha <-> beta and gamma <-> delta
    instead, a pure relabelling).  Raises if the prescription conflicts with
    the relations among curve classes."""
    images = psi_curve_images(model, pairing)
    n = len(model.curve_order)
    perm = [[0] * n for _ in range(n)]
    for c, (target, s) in images.items():
        perm[model.curve_index[target]][model.curve_index[c]] = s
    perm = tuple(tuple(row) for row in perm)

    moved = mat_mul(model.classes, perm)  # column j = class of psi(curve_j)
    if model.kernel and not is_zero(mat_mul(moved, model.kernel)):
        raise NotWellDefinedError(
            "prescribed curve images violate the relations among curve classes"
        )
    psi = mat_mul(moved, model.section)
    if mat_mul(psi, model.classes) != moved:
        raise NotWellDefinedError("involution does not extend the curve images")
    if mat_mul(psi, psi) != identity(model.rank):
        raise AdmissibilityError("curve-image involution does not square to one")
    out = MappingClassMatrix(psi, model.fingerprint, None)
    if not is_symplectic(out, model):
        raise AdmissibilityError("curve-image involution does not preserve the form")
    return out
