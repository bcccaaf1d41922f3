"""Quadratic sphere-to-sphere maps, surface sampling and mesh export."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable

import numpy as np

from .exactlin import p_factor
from .tessellation import face_patch, gamma_transforms, symmetric_embedding

SQRT2 = math.sqrt(2.0)
UNIT_TOL = 1e-12


class NotUnit(ValueError):
    """Input vector is not on the unit sphere."""


class BadAxes(ValueError):
    pass


class IoError(OSError):
    pass


@dataclass
class MeshBuffer:
    """Points in R^d with polygon faces, per-face tags and optional polylines.

    Indices are 0-based here; file writers convert to 1-based.
    """

    vertices: np.ndarray
    faces: list = field(default_factory=list)
    tags: list = field(default_factory=list)
    polylines: list = field(default_factory=list)
    polyline_tags: list = field(default_factory=list)

    def __post_init__(self):
        self.vertices = np.atleast_2d(np.asarray(self.vertices, dtype=float))
        if not self.tags:
            self.tags = [0] * len(self.faces)
        if not self.polyline_tags:
            self.polyline_tags = [""] * len(self.polylines)
        self.validate()

    @property
    def dim(self) -> int:
        return self.vertices.shape[1]

    def validate(self):
        n = len(self.vertices)
        if np.isnan(self.vertices).any():
            raise ValueError("mesh has NaN coordinates")
        if len(self.tags) != len(self.faces):
            raise ValueError("one tag per face required")
        for idx in [*self.faces, *self.polylines]:
            if any(not 0 <= i < n for i in idx):
                raise ValueError(f"index out of range in {idx}")


# ----------------------------------------------------------------- B4 curves

def b4_components() -> dict:
    """The three real components of the B4 cross-ratio curve in RP^2 and their ends.

    Returns ``{"segments": {name: t -> 3-vector}, "points": {name: 3-vector}}``
    where the six points are ``p1, p2, p3`` and their negatives ``-p1..-p3``.
    Following ``A, B, C, -A, -B, -C`` traces a closed hexagon in R^3.
    """
    segs = {
        "A": lambda t: np.stack(np.broadcast_arrays(1.0, t, 1.0 - np.asarray(t, float)), -1),
        "B": lambda t: np.stack(np.broadcast_arrays(1.0 - np.asarray(t, float), 1.0, -np.asarray(t, float)), -1),
        "C": lambda t: np.stack(np.broadcast_arrays(-np.asarray(t, float), 1.0 - np.asarray(t, float), -1.0), -1),
    }
    p = {"p1": np.array([1.0, 0.0, 1.0]), "p2": np.array([1.0, 1.0, 0.0]), "p3": np.array([0.0, 1.0, -1.0])}
    points = dict(p)
    points.update({"-" + k: -v for k, v in p.items()})
    return {"segments": segs, "points": points}


def b4_hexagon(n: int = 64) -> list[tuple[str, np.ndarray]]:
    """Six sampled sides ``A, B, C, -A, -B, -C`` of the closed hexagon, unnormalized."""
    segs = b4_components()["segments"]
    t = np.linspace(0.0, 1.0, n)
    out = [(name, segs[name](t)) for name in "ABC"]
    return out + [("-" + name, -pts) for name, pts in out]


# ----------------------------------------------------------- Veronese maps

def _check_unit(x: np.ndarray, dim: int) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    if x.shape[-1] != dim:
        raise ValueError(f"expected {dim} components, got {x.shape[-1]}")
    norm = np.linalg.norm(x, axis=-1)
    if np.any(np.abs(norm - 1.0) > UNIT_TOL):
        raise NotUnit(f"input norm deviates from 1 by {np.max(np.abs(norm - 1.0)):.3e}")
    return x


def veronese3(x) -> np.ndarray:
    """``(sqrt2 x0x1, sqrt2 x0x2, sqrt2 x1x2, x0^2, x1^2, x2^2)`` for unit ``x``.

    Works on a single vector or on an array of vectors in the last axis.
    """
    x = _check_unit(x, 3)
    x0, x1, x2 = x[..., 0], x[..., 1], x[..., 2]
    return np.stack([SQRT2 * x0 * x1, SQRT2 * x0 * x2, SQRT2 * x1 * x2, x0 * x0, x1 * x1, x2 * x2], -1)


_PAIRS6 = [(i, j) for i in range(6) for j in range(i + 1, 6)]
# r18 uses 2 instead of sqrt2 on the pairs that get folded into the three
# difference-of-squares coordinates
_R18_DOUBLE = {(0, 1), (2, 3), (4, 5)}


def veronese6(r, variant: str = "r21") -> np.ndarray:
    """Quadratic map of the unit sphere S^5 to S^20 (``r21``) or S^17 (``r18``)."""
    r = _check_unit(r, 6)
    cross = []
    for i, j in _PAIRS6:
        c = 2.0 if variant == "r18" and (i, j) in _R18_DOUBLE else SQRT2
        cross.append(c * r[..., i] * r[..., j])
    sq = r * r
    if variant == "r21":
        diag = [sq[..., i] for i in range(6)]
    elif variant == "r18":
        diag = [sq[..., 0] - sq[..., 1], sq[..., 2] - sq[..., 3], sq[..., 4] - sq[..., 5]]
    else:
        raise ValueError(f"unknown variant {variant!r}; use r21 or r18")
    return np.stack(cross + diag, -1)


# ---------------------------------------------------------------- sampling

def _grid(n: int) -> tuple[np.ndarray, np.ndarray, list]:
    s = np.linspace(0.0, 1.0, n)
    U, V = np.meshgrid(s, s, indexing="ij")
    quads = [(a * n + b, (a + 1) * n + b, (a + 1) * n + b + 1, a * n + b + 1)
             for a in range(n - 1) for b in range(n - 1)]
    return U.ravel(), V.ravel(), quads


def _patches(embed: Callable, face_ids, n: int, tags=None) -> MeshBuffer:
    U, V, quads = _grid(n)
    verts, faces, ftags = [], [], []
    for k, fid in enumerate(face_ids):
        off = k * n * n
        verts.append(embed(fid, U, V))
        faces += [tuple(off + i for i in q) for q in quads]
        ftags += [fid if tags is None else tags[k]] * len(quads)
    return MeshBuffer(np.concatenate(verts), faces, ftags)


def _face_embedding(P: np.ndarray):
    def embed(fid, U, V):
        pf = face_patch(fid)
        return symmetric_embedding(pf.region, pf.sign, U, V, P)
    return embed


def _symmetric_embedding(P: np.ndarray):
    gammas = gamma_transforms(P)
    base = face_patch(1)

    def embed(fid, U, V):
        pts = symmetric_embedding(base.region, base.sign, U, V, P)
        return pts @ gammas[fid - 1].T
    return embed


def _cube_sphere(n: int) -> MeshBuffer:
    s = np.linspace(-1.0, 1.0, n)
    A, B = np.meshgrid(s, s, indexing="ij")
    a, b = A.ravel(), B.ravel()
    one = np.ones_like(a)
    sides = [(one, a, b), (-one, b, a), (a, one, b), (b, -one, a), (a, b, one), (b, a, -one)]
    _, _, quads = _grid(n)
    verts, faces, tags = [], [], []
    for k, (x, y, z) in enumerate(sides):
        pts = np.stack([x, y, z], -1)
        verts.append(pts / np.linalg.norm(pts, axis=-1, keepdims=True))
        faces += [tuple(k * n * n + i for i in q) for q in quads]
        tags += [k + 1] * len(quads)
    return MeshBuffer(np.concatenate(verts), faces, tags)


TARGETS = ("single", "double", "symmetric", "veronese21", "veronese18", "b4")


def sample_surface(target: str, n: int, P: np.ndarray | None = None) -> MeshBuffer:
    """Sample ``n x n`` points per face on the unit square and emit quads.

    ``double``: the 24 lifted patches on S^5, tagged by signed face id.
    ``symmetric``: the 24 images ``gamma^{+-}_i`` of the face-1 patch.
    ``single``/``veronese21``/``veronese18``: the 12 projective faces mapped by
    the quadratic map to R^21 or R^18.  ``b4``: the Veronese image of S^2 in
    R^6 with the six sides of the B4 hexagon as polylines.
    """
    if n < 2:
        raise ValueError("need n >= 2")
    if target not in TARGETS:
        raise ValueError(f"unknown target {target!r}; choose from {', '.join(TARGETS)}")
    if P is None:
        P = p_factor()
    if target == "double":
        return _patches(_face_embedding(P), range(1, 25), n)
    if target == "symmetric":
        return _patches(_symmetric_embedding(P), range(1, 25), n)
    if target in ("single", "veronese21", "veronese18"):
        variant = "r18" if target == "veronese18" else "r21"
        base = _face_embedding(P)
        return _patches(lambda fid, U, V: veronese6(base(fid, U, V), variant), range(1, 13), n)
    # b4
    sphere = _cube_sphere(n)
    verts = [veronese3(sphere.vertices)]
    lines, ltags = [], []
    offset = len(sphere.vertices)
    for name, pts in b4_hexagon(n):
        unit = pts / np.linalg.norm(pts, axis=-1, keepdims=True)
        verts.append(veronese3(unit))
        lines.append(list(range(offset, offset + len(pts))))
        ltags.append(name)
        offset += len(pts)
    return MeshBuffer(np.concatenate(verts), sphere.faces, sphere.tags, lines, ltags)


def project(mesh: MeshBuffer, axes) -> MeshBuffer:
    """Keep three coordinates, given 1-based; topology and tags are unchanged."""
    axes = tuple(int(a) for a in axes)
    if len(axes) != 3 or len(set(axes)) != 3:
        raise BadAxes(f"need three distinct axes, got {axes}")
    if any(not 1 <= a <= mesh.dim for a in axes):
        raise BadAxes(f"axes {axes} out of range 1..{mesh.dim}")
    cols = [a - 1 for a in axes]
    return MeshBuffer(mesh.vertices[:, cols].copy(), list(mesh.faces), list(mesh.tags),
                      [list(p) for p in mesh.polylines], list(mesh.polyline_tags))


# ------------------------------------------------------------------- files

def _fmt(x: float) -> str:
    s = f"{x:.9g}"
    return "0" if s == "-0" else s


def _group_name(tag) -> str:
    return f"face_{tag:02d}" if isinstance(tag, (int, np.integer)) else f"face_{tag}"


def write_mesh(mesh: MeshBuffer, fmt: str, path) -> Path:
    """Write an ascii OBJ or PLY file; vertices must be 3-D (see :func:`project`)."""
    if mesh.dim != 3:
        raise ValueError(f"mesh is {mesh.dim}-dimensional; project to 3 axes first")
    mesh.validate()
    if fmt == "obj":
        text = _obj_text(mesh)
    elif fmt == "ply":
        text = _ply_text(mesh)
    else:
        raise ValueError(f"unknown format {fmt!r}; use obj or ply")
    path = Path(path)
    try:
        path.write_text(text)
    except OSError as exc:
        raise IoError(f"cannot write {path}: {exc}") from exc
    return path


def _obj_text(mesh: MeshBuffer) -> str:
    lines = [f"v {_fmt(x)} {_fmt(y)} {_fmt(z)}" for x, y, z in mesh.vertices]
    current = None
    for face, tag in zip(mesh.faces, mesh.tags):
        if tag != current:
            lines.append(f"g {_group_name(tag)}")
            current = tag
        lines.append("f " + " ".join(str(i + 1) for i in face))
    for poly, tag in zip(mesh.polylines, mesh.polyline_tags):
        lines.append(f"g curve_{tag}")
        lines.append("l " + " ".join(str(i + 1) for i in poly))
    return "\n".join(lines) + "\n"


def _ply_text(mesh: MeshBuffer) -> str:
    edges = [(a, b) for poly in mesh.polylines for a, b in zip(poly, poly[1:])]
    head = [
        "ply",
        "format ascii 1.0",
        f"element vertex {len(mesh.vertices)}",
        "property float x",
        "property float y",
        "property float z",
        f"element face {len(mesh.faces)}",
        "property list uchar int vertex_indices",
        "property int face_id",
    ]
    if edges:
        head += [f"element edge {len(edges)}", "property int vertex1", "property int vertex2"]
    head.append("end_header")
    body = [f"{_fmt(x)} {_fmt(y)} {_fmt(z)}" for x, y, z in mesh.vertices]
    for face, tag in zip(mesh.faces, mesh.tags):
        tag = tag if isinstance(tag, (int, np.integer)) else 0
        body.append(f"{len(face)} " + " ".join(map(str, face)) + f" {int(tag)}")
    body += [f"{a} {b}" for a, b in edges]
    return "\n".join(head + body) + "\n"


def read_obj(path) -> MeshBuffer:
    """Parse the OBJ subset written by :func:`write_mesh`."""
    verts, faces, tags, lines, ltags = [], [], [], [], []
    tag = 0
    for raw in Path(path).read_text().splitlines():
        parts = raw.split()
        if not parts:
            continue
        if parts[0] == "v":
            verts.append([float(x) for x in parts[1:4]])
        elif parts[0] == "g":
            name = parts[1]
            tag = name
            if name.startswith("face_") and name[5:].isdigit():
                tag = int(name[5:])
            elif name.startswith("curve_"):
                tag = name[6:]
        elif parts[0] == "f":
            faces.append(tuple(int(p.split("/")[0]) - 1 for p in parts[1:]))
            tags.append(tag)
        elif parts[0] == "l":
            lines.append([int(p) - 1 for p in parts[1:]])
            ltags.append(tag)
    return MeshBuffer(np.array(verts), faces, tags, lines, ltags)
