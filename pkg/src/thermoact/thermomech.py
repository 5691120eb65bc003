"""Frame mechanics: from differential arm elongation to jaw-tip sweep.

The U-frame is statically indeterminate to the third degree.  The main
pipeline releases the cold-arm anchor, computes a 3x3 flexibility matrix
of the released cantilever by virtual work (3-point Gauss per member,
exact for the linear moment fields involved), solves the compatibility
system for the redundant anchor actions, and recovers the junction
displacement, junction rotation and tip deflection by a second
application of virtual work.

A completely independent direct-stiffness solution on a refined beam
mesh (``stiffness_oracle``) serves as cross-check; it shares no code
with the flexibility route beyond the thermal closed form.

Geometry convention: the hot arm runs along +x from its anchor A at the
origin to the junction B; the link drops across the gap to C; the cold
arm runs back to its anchor D; the extension continues from B to the
jaw tip J.  Lateral deflections are reported positive toward the cold
arm, the direction the jaw sweeps when driven.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.linalg import cho_solve, cholesky, LinAlgError
from scipy.sparse import coo_matrix
from scipy.sparse.linalg import spsolve

from .electrothermal import (ThermalLoad, arm_elongations, rise_integral,
                             solve_temperature_profile, temperature_at)
from .model import ActuatorSpec, Geometry, Material, validate

# Rotations beyond this invalidate the linear kinematics of the tip
# lever arm, so the solution refuses to report one.
SMALL_ANGLE_LIMIT = 0.1

_GAUSS_POINTS = (0.5 - math.sqrt(15.0) / 10.0, 0.5, 0.5 + math.sqrt(15.0) / 10.0)
_GAUSS_WEIGHTS = (5.0 / 18.0, 8.0 / 18.0, 5.0 / 18.0)


class FrameSingularError(ArithmeticError):
    """The flexibility system is not positive definite or failed to solve."""


class SmallAngleError(RuntimeError):
    """Junction rotation too large for the small-angle tip kinematics."""


@dataclass(frozen=True)
class Member:
    """A straight prismatic segment between two frame nodes."""

    label: str
    start: tuple[float, float]
    end: tuple[float, float]
    length: float
    bending_rigidity: float
    axial_rigidity: float


@dataclass(frozen=True)
class FrameModel:
    """Node map and member list of the U-frame, metres and newtons.

    ``members`` is ordered AB, BC, CD, BJ; the first three form the
    released load path from anchor A to anchor D.  ``nodes`` maps the
    labels A, B, C, D, J to coordinates.  Treat instances as read-only.
    """

    nodes: dict[str, tuple[float, float]]
    members: tuple[Member, ...]
    second_moment: float
    section_area: float


@dataclass(frozen=True)
class ActionField:
    """Internal actions on one member from a unit redundant: the bending
    moment varies linearly start to end, the axial force is constant."""

    moment_start: float
    moment_end: float
    axial: float


@dataclass(frozen=True)
class Redundants:
    """Anchor actions at the released cold-arm support: force x1 along
    the arm (N), transverse force x2 (N), couple x3 (N m)."""

    x1: float
    x2: float
    x3: float

    def as_array(self) -> np.ndarray:
        return np.array([self.x1, self.x2, self.x3])


@dataclass(frozen=True)
class MemberForces:
    moment_start: float
    moment_end: float
    axial: float


@dataclass(frozen=True)
class MomentDistribution:
    """Superposed internal actions per member label (extension included,
    identically zero: it carries no load between junction and free tip)."""

    members: dict[str, MemberForces]


@dataclass(frozen=True)
class FrameSolution:
    """Everything the studies need from one operating point.

    Displacements in metres, rotation in radians, temperatures in C,
    deflections positive toward the cold arm.
    """

    thermal_load: ThermalLoad
    flexibility: np.ndarray
    redundants: Redundants
    moments: MomentDistribution
    junction_deflection: float
    junction_rotation: float
    tip_deflection: float
    peak_temperature: float


@dataclass(frozen=True)
class StiffnessResult:
    """Outputs of the direct-stiffness cross-check, same sign convention
    as FrameSolution.  ``reaction_cold_anchor`` is (fx, fy, moment) that
    the cold-arm support exerts is balanced against, i.e. K u - f at the
    fixed degrees of freedom of anchor D."""

    junction_deflection: float
    junction_rotation: float
    tip_deflection: float
    reaction_cold_anchor: tuple[float, float, float]
    elements_per_member: int


def build_frame(geometry: Geometry, material: Material) -> FrameModel:
    """Assemble the five-node frame for a validated geometry."""
    length1 = geometry.hot_arm_length
    length2 = geometry.cold_arm_length
    gap = geometry.gap
    second_moment = geometry.beam_thickness * geometry.beam_width ** 3 / 12.0
    area = geometry.beam_width * geometry.beam_thickness
    ei = material.young_modulus * second_moment
    ea = material.young_modulus * area

    nodes = {
        "A": (0.0, 0.0),
        "B": (length1, 0.0),
        "C": (length1, -gap),
        "D": (length1 - length2, -gap),
        "J": (length1 + geometry.extension_length, 0.0),
    }

    def member(label, a, b, length):
        # lengths come straight from the geometry instead of re-derived
        # node distances, keeping them exact in floating point
        return Member(label, nodes[a], nodes[b], length, ei, ea)

    members = (member("AB", "A", "B", length1),
               member("BC", "B", "C", gap),
               member("CD", "C", "D", length2),
               member("BJ", "B", "J", geometry.extension_length))
    return FrameModel(nodes=nodes, members=members,
                      second_moment=second_moment, section_area=area)


def _moment_about(point, about, force):
    rx = about[0] - point[0]
    ry = about[1] - point[1]
    return rx * force[1] - ry * force[0]


def unit_redundant_actions(frame: FrameModel, index: int) -> dict[str, ActionField]:
    """Moment and axial fields on the release path for unit redundant
    ``index`` (1: force along x at D, 2: force along y at D, 3: couple
    at D), from statics of the cut segment on the anchor-D side.
    """
    if index not in (1, 2, 3):
        raise ValueError("redundant index must be 1, 2 or 3")
    anchor = frame.nodes["D"]
    force = {1: (1.0, 0.0), 2: (0.0, 1.0), 3: (0.0, 0.0)}[index]
    couple = 1.0 if index == 3 else 0.0
    fields = {}
    for mem in frame.members[:3]:
        tangent_x = (mem.end[0] - mem.start[0]) / mem.length
        tangent_y = (mem.end[1] - mem.start[1]) / mem.length
        fields[mem.label] = ActionField(
            moment_start=_moment_about(mem.start, anchor, force) + couple,
            moment_end=_moment_about(mem.end, anchor, force) + couple,
            axial=force[0] * tangent_x + force[1] * tangent_y,
        )
    return fields


def flexibility_matrix(frame: FrameModel, bending_only: bool = False) -> np.ndarray:
    """3x3 flexibility of the released structure at the cold anchor.

    Entry (i, j) is the virtual-work integral of unit fields i and j
    over the release path, bending plus axial (axial omitted when
    ``bending_only``).  Three-point Gauss per member integrates the
    quadratic moment products exactly.  All nine entries are computed
    independently; symmetry is a property, not an assumption.
    """
    fields = [unit_redundant_actions(frame, i) for i in (1, 2, 3)]
    flex = np.zeros((3, 3))
    for i in range(3):
        for j in range(3):
            total = 0.0
            for mem in frame.members[:3]:
                fi = fields[i][mem.label]
                fj = fields[j][mem.label]
                bend = 0.0
                for t, wgt in zip(_GAUSS_POINTS, _GAUSS_WEIGHTS):
                    mi = fi.moment_start + (fi.moment_end - fi.moment_start) * t
                    mj = fj.moment_start + (fj.moment_end - fj.moment_start) * t
                    bend += wgt * mi * mj
                total += mem.length * bend / mem.bending_rigidity
                if not bending_only:
                    total += mem.length * fi.axial * fj.axial / mem.axial_rigidity
            flex[i, j] = total
    return flex


def solve_redundants(flex: np.ndarray, load: ThermalLoad) -> Redundants:
    """Solve compatibility at the released anchor for the redundants.

    The right-hand side is the differential free elongation of the two
    arms along the release direction; transverse and rotational
    compatibility carry no thermal term.  The matrix mixes units
    (m/N, 1/N, 1/(N m)) and is raw-conditioned around 1e11, so it is
    symmetrically equilibrated to unit diagonal (condition ~1e1) before
    a Cholesky solve plus two steps of iterative refinement.  The
    residual is verified in the equilibrated norm, the scale-invariant
    measure; the raw-norm residual is floor-limited near 1e-10 by the
    float64 representation of the solution itself.
    """
    flex = np.asarray(flex, dtype=float)
    if flex.shape != (3, 3) or not np.all(np.isfinite(flex)):
        raise FrameSingularError("flexibility matrix is not a finite 3x3")
    diag = np.diag(flex)
    if np.any(diag <= 0.0):
        raise FrameSingularError("flexibility matrix has a non-positive diagonal")
    scale = 1.0 / np.sqrt(diag)
    equilibrated = flex * scale[:, None] * scale[None, :]
    try:
        factor = cholesky(equilibrated, lower=True)
    except LinAlgError as exc:
        raise FrameSingularError("flexibility matrix is not positive definite") from exc

    rhs = np.array([load.hot_elongation - load.cold_elongation, 0.0, 0.0])
    x = scale * cho_solve((factor, True), scale * rhs)
    for _ in range(2):
        x = x + scale * cho_solve((factor, True), scale * (rhs - flex @ x))

    rhs_norm = float(np.linalg.norm(scale * rhs))
    if rhs_norm > 0.0:
        residual = float(np.linalg.norm(scale * (rhs - flex @ x))) / rhs_norm
        if not residual <= 1.0e-12:
            raise FrameSingularError(
                f"compatibility solve residual {residual:.3e} exceeds 1e-12")
    return Redundants(float(x[0]), float(x[1]), float(x[2]))


def moment_distribution(frame: FrameModel, redundants: Redundants) -> MomentDistribution:
    """Superpose the unit fields scaled by the solved redundants."""
    fields = [unit_redundant_actions(frame, i) for i in (1, 2, 3)]
    weights = (redundants.x1, redundants.x2, redundants.x3)
    members = {}
    for mem in frame.members[:3]:
        start = end = axial = 0.0
        for weight, field in zip(weights, fields):
            act = field[mem.label]
            start += weight * act.moment_start
            end += weight * act.moment_end
            axial += weight * act.axial
        members[mem.label] = MemberForces(start, end, axial)
    members["BJ"] = MemberForces(0.0, 0.0, 0.0)
    return MomentDistribution(members=members)


def virtual_tip_response(frame: FrameModel, moments: MomentDistribution):
    """Junction deflection (m) and rotation (rad) by unit-load virtual
    work.

    Both virtual systems load the primary cantilever at the junction B,
    so their moment fields live on the hot arm alone: a unit transverse
    force gives a field falling linearly from the anchored end to zero
    at B, a unit couple gives a constant field.  Positive results point
    toward the cold arm.
    """
    hot = frame.members[0]
    acts = moments.members[hot.label]
    deflection = 0.0
    rotation = 0.0
    for t, wgt in zip(_GAUSS_POINTS, _GAUSS_WEIGHTS):
        moment = acts.moment_start + (acts.moment_end - acts.moment_start) * t
        deflection += wgt * moment * (hot.length * (1.0 - t))
        rotation += wgt * moment
    deflection *= hot.length / hot.bending_rigidity
    rotation *= hot.length / hot.bending_rigidity
    return deflection, rotation


def tip_deflection(junction_deflection: float, junction_rotation: float,
                   geometry: Geometry) -> float:
    """Carry the junction motion out along the rigid-lever extension."""
    if not abs(junction_rotation) < SMALL_ANGLE_LIMIT:
        raise SmallAngleError(
            f"junction rotation {junction_rotation:.4f} rad exceeds the "
            f"small-angle limit {SMALL_ANGLE_LIMIT}")
    return junction_deflection + geometry.extension_length * junction_rotation


def simulate(spec: ActuatorSpec, bending_only: bool = False) -> FrameSolution:
    """Full pipeline: temperatures, elongations, redundants, tip sweep."""
    validate(spec)
    profile = solve_temperature_profile(spec)
    load = arm_elongations(profile, spec.geometry, spec.material)
    frame = build_frame(spec.geometry, spec.material)
    flex = flexibility_matrix(frame, bending_only=bending_only)
    redundants = solve_redundants(flex, load)
    moments = moment_distribution(frame, redundants)
    deflection, rotation = virtual_tip_response(frame, moments)
    tip = tip_deflection(deflection, rotation, spec.geometry)
    peak = temperature_at(profile, profile.path_length / 2.0)
    return FrameSolution(
        thermal_load=load,
        flexibility=flex,
        redundants=redundants,
        moments=moments,
        junction_deflection=deflection,
        junction_rotation=rotation,
        tip_deflection=tip,
        peak_temperature=peak,
    )


def _local_stiffness(lengths, ei, ea):
    """(n, 6, 6) local frame-element stiffness blocks for an array of
    element lengths."""
    n = lengths.shape[0]
    k = np.zeros((n, 6, 6))
    ax = ea / lengths
    b12 = 12.0 * ei / lengths ** 3
    b6 = 6.0 * ei / lengths ** 2
    b4 = 4.0 * ei / lengths
    b2 = 2.0 * ei / lengths
    k[:, 0, 0] = k[:, 3, 3] = ax
    k[:, 0, 3] = k[:, 3, 0] = -ax
    k[:, 1, 1] = k[:, 4, 4] = b12
    k[:, 1, 4] = k[:, 4, 1] = -b12
    k[:, 1, 2] = k[:, 2, 1] = k[:, 1, 5] = k[:, 5, 1] = b6
    k[:, 2, 4] = k[:, 4, 2] = k[:, 4, 5] = k[:, 5, 4] = -b6
    k[:, 2, 2] = k[:, 5, 5] = b4
    k[:, 2, 5] = k[:, 5, 2] = b2
    return k


def stiffness_oracle(spec: ActuatorSpec, elements_per_member: int = 64) -> StiffnessResult:
    """Displacement-method solution on a refined mesh of beam elements.

    Meshes all four members with ``elements_per_member`` 6-DOF
    Euler-Bernoulli frame elements, applies each heated element's mean
    temperature rise as an equivalent axial load pair, clamps both
    anchors and solves the sparse global system.  Independent of the
    flexibility route by construction; used for cross-validation and
    never by the studies.
    """
    if elements_per_member < 1:
        raise ValueError("elements_per_member must be at least 1")
    validate(spec)
    geo, mat = spec.geometry, spec.material
    nel = elements_per_member
    profile = solve_temperature_profile(spec)

    second_moment = geo.beam_thickness * geo.beam_width ** 3 / 12.0
    area = geo.beam_width * geo.beam_thickness
    ei = mat.young_modulus * second_moment
    ea = mat.young_modulus * area

    frame = build_frame(geo, mat)
    coords_of = frame.nodes
    # Chain node numbering: A=0 .. B=nel .. C=2nel .. D=3nel, then the
    # extension reuses B and runs to J=4nel.
    idx = {"A": 0, "B": nel, "C": 2 * nel, "D": 3 * nel, "J": 4 * nel}
    n_nodes = 4 * nel + 1
    coords = np.zeros((n_nodes, 2))
    chains = (("A", "B", 0), ("B", "C", nel), ("C", "D", 2 * nel),
              ("B", "J", 3 * nel))
    ends1 = []
    ends2 = []
    for a, b, base in chains:
        pa = np.array(coords_of[a])
        pb = np.array(coords_of[b])
        ts = np.linspace(0.0, 1.0, nel + 1)[:, None]
        pts = pa + ts * (pb - pa)
        ids = np.empty(nel + 1, dtype=np.int64)
        ids[0] = idx[a]
        ids[-1] = idx[b]
        if nel > 1:
            ids[1:-1] = base + 1 + np.arange(nel - 1)
            coords[ids[1:-1]] = pts[1:-1]
        coords[idx[a]] = pa
        coords[idx[b]] = pb
        ends1.append(ids[:-1])
        ends2.append(ids[1:])
    node1 = np.concatenate(ends1)
    node2 = np.concatenate(ends2)

    delta = coords[node2] - coords[node1]
    lengths = np.hypot(delta[:, 0], delta[:, 1])
    cos = delta[:, 0] / lengths
    sin = delta[:, 1] / lengths

    local = _local_stiffness(lengths, ei, ea)
    rot = np.zeros((node1.shape[0], 6, 6))
    for block in (0, 3):
        rot[:, block, block] = cos
        rot[:, block, block + 1] = sin
        rot[:, block + 1, block] = -sin
        rot[:, block + 1, block + 1] = cos
        rot[:, block + 2, block + 2] = 1.0
    kg = np.einsum("eji,ejk,ekl->eil", rot, local, rot)

    dofs = np.empty((node1.shape[0], 6), dtype=np.int64)
    dofs[:, 0:3] = 3 * node1[:, None] + np.arange(3)
    dofs[:, 3:6] = 3 * node2[:, None] + np.arange(3)
    rows = np.repeat(dofs, 6, axis=1).ravel()
    cols = np.tile(dofs, (1, 6)).ravel()
    ndof = 3 * n_nodes
    stiffness = coo_matrix((kg.ravel(), (rows, cols)),
                           shape=(ndof, ndof)).tocsr()

    # Equivalent loads: heated members are the release path AB, BC, CD,
    # whose elements tile the path coordinate [0, path_length] in order.
    heated = 3 * nel
    spans = np.concatenate([
        np.linspace(0.0, geo.hot_arm_length, nel + 1),
        geo.hot_arm_length + np.linspace(0.0, geo.gap, nel + 1)[1:],
        (geo.hot_arm_length + geo.gap)
        + np.linspace(0.0, geo.cold_arm_length, nel + 1)[1:],
    ])
    integrals = rise_integral(profile, spans)
    mean_rise = np.diff(integrals) / np.diff(spans)
    axial_force = ea * mat.expansion_coefficient * mean_rise

    load = np.zeros(ndof)
    hcos, hsin = cos[:heated], sin[:heated]
    np.add.at(load, dofs[:heated, 0], -axial_force * hcos)
    np.add.at(load, dofs[:heated, 1], -axial_force * hsin)
    np.add.at(load, dofs[:heated, 3], axial_force * hcos)
    np.add.at(load, dofs[:heated, 4], axial_force * hsin)

    fixed = np.array([3 * idx["A"], 3 * idx["A"] + 1, 3 * idx["A"] + 2,
                      3 * idx["D"], 3 * idx["D"] + 1, 3 * idx["D"] + 2])
    free = np.setdiff1d(np.arange(ndof), fixed)
    solution = np.zeros(ndof)
    solution[free] = spsolve(stiffness[free][:, free], load[free])
    if not np.all(np.isfinite(solution)):
        raise FrameSingularError("stiffness system did not solve")

    reaction = (stiffness @ solution - load)[3 * idx["D"]: 3 * idx["D"] + 3]
    return StiffnessResult(
        junction_deflection=float(-solution[3 * idx["B"] + 1]),
        junction_rotation=float(-solution[3 * idx["B"] + 2]),
        tip_deflection=float(-solution[3 * idx["J"] + 1]),
        reaction_cold_anchor=(float(reaction[0]), float(reaction[1]),
                              float(reaction[2])),
        elements_per_member=nel,
    )
