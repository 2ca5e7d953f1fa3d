"""Serialization of polylines and meshes, plus mesh diagnostics.

All writers are byte-deterministic: fixed 9-fractional-digit text formatting,
fixed attribute order, little-endian binary STL.
"""

from __future__ import annotations

import struct
from dataclasses import dataclass

import numpy as np

from .contour2d import Domain2D, Polyline
from .polygonize3d import TriangleMesh

_FMT = "{:.9f}"


@dataclass(frozen=True)
class MeshStats:
    vertex_count: int
    edge_count: int
    triangle_count: int
    euler_characteristic: int
    watertight: bool
    boundary_edge_count: int
    total_area: float


def mesh_stats(mesh: TriangleMesh) -> MeshStats:
    """Count vertices/undirected edges/faces and sum triangle areas."""
    v_count = len(mesh.vertices)
    t_count = len(mesh.triangles)
    if t_count == 0:
        return MeshStats(v_count, 0, 0, v_count, v_count == 0, 0, 0.0)
    pairs = np.sort(mesh.triangles[:, [0, 1, 1, 2, 2, 0]].reshape(-1, 2), axis=1)
    edges, counts = np.unique(pairs, axis=0, return_counts=True)
    boundary = int((counts == 1).sum())
    watertight = boundary == 0 and bool((counts == 2).all())
    tri = mesh.vertices[mesh.triangles]
    area = float(0.5 * np.linalg.norm(np.cross(tri[:, 1] - tri[:, 0], tri[:, 2] - tri[:, 0]), axis=1).sum())
    return MeshStats(
        vertex_count=v_count,
        edge_count=len(edges),
        triangle_count=t_count,
        euler_characteristic=v_count - len(edges) + t_count,
        watertight=watertight,
        boundary_edge_count=boundary,
        total_area=area,
    )


def write_obj(mesh: TriangleMesh, sink, comment: str = "") -> None:
    """Plain-text OBJ: 9-digit vertex lines, 1-based face indices."""
    lines = ["# squircles mesh export\n", f"# shape: {comment}\n"]
    for x, y, z in mesh.vertices:
        lines.append(f"v {_FMT.format(x)} {_FMT.format(y)} {_FMT.format(z)}\n")
    for a, b, c in mesh.triangles:
        lines.append(f"f {a + 1} {b + 1} {c + 1}\n")
    sink.write("".join(lines).encode("utf-8"))


def write_stl(mesh: TriangleMesh, sink, comment: str = "") -> None:
    """Binary STL: 80-byte header, u32 count, 50 bytes per triangle."""
    header = f"squircles mesh export {comment}".encode("utf-8")[:80]
    sink.write(header.ljust(80, b"\0"))
    sink.write(struct.pack("<I", len(mesh.triangles)))
    if mesh.empty:
        return
    tri = mesh.vertices[mesh.triangles].astype("<f4")
    normals = np.cross(tri[:, 1] - tri[:, 0], tri[:, 2] - tri[:, 0]).astype("<f8")
    lengths = np.linalg.norm(normals, axis=1)
    lengths[lengths == 0] = 1.0
    normals = (normals / lengths[:, None]).astype("<f4")
    record = np.zeros(len(tri), dtype=np.dtype([("n", "<f4", 3), ("v", "<f4", (3, 3)), ("attr", "<u2")]))
    record["n"] = normals
    record["v"] = tri
    sink.write(record.tobytes())


def write_svg(polylines: list[Polyline], domain: Domain2D, sink, stroke_width: float | None = None) -> None:
    """SVG 1.1 subset: one stroked path per polyline, y flipped to screen space."""
    w = domain.xmax - domain.xmin
    h = domain.ymax - domain.ymin
    if stroke_width is None:
        stroke_width = max(w, h) / 400.0
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>\n',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'viewBox="{_FMT.format(domain.xmin)} {_FMT.format(domain.ymin)} {_FMT.format(w)} {_FMT.format(h)}" '
        f'width="640" height="{_FMT.format(640.0 * h / w)}">\n',
    ]
    flip = domain.ymin + domain.ymax
    for pl in polylines:
        cmds = []
        for idx, (x, y) in enumerate(pl.points):
            cmds.append(f"{'M' if idx == 0 else 'L'} {_FMT.format(x)} {_FMT.format(flip - y)}")
        if pl.closed:
            cmds.append("Z")
        out.append(
            f'<path d="{" ".join(cmds)}" fill="none" stroke="black" '
            f'stroke-width="{_FMT.format(stroke_width)}"/>\n'
        )
    out.append("</svg>\n")
    sink.write("".join(out).encode("utf-8"))


def write_csv(polylines: list[Polyline], sink) -> None:
    """CSV columns polyline_id, point_index, x, y, closed with a header row."""
    rows = ["polyline_id,point_index,x,y,closed\n"]
    for pid, pl in enumerate(polylines):
        flag = "true" if pl.closed else "false"
        for idx, (x, y) in enumerate(pl.points):
            rows.append(f"{pid},{idx},{_FMT.format(x)},{_FMT.format(y)},{flag}\n")
    sink.write("".join(rows).encode("utf-8"))
