#!/usr/bin/env python3
"""Writes the small procedural meshes used by the experiments.

Usage: python3 generate_meshes.py [output_dir]
"""
import math
import sys
from pathlib import Path


class MeshBuilder:
    def __init__(self):
        self.vertices = []
        self.faces = []

    def vertex(self, p):
        self.vertices.append(tuple(p))
        return len(self.vertices) - 1

    def tri(self, a, b, c):
        self.faces.append((a, b, c))

    def quad(self, a, b, c, d):
        self.tri(a, b, c)
        self.tri(a, c, d)

    def write(self, path, comment):
        with open(path, "w") as out:
            out.write(f"# {comment}\n")
            for x, y, z in self.vertices:
                out.write(f"v {x:.6f} {y:.6f} {z:.6f}\n")
            for a, b, c in self.faces:
                out.write(f"f {a + 1} {b + 1} {c + 1}\n")


def lathe(mb, profile, segments, axis_frame):
    """Surface of revolution; profile is [(height, radius)] from bottom to top."""
    origin, up, side_a, side_b = axis_frame
    rings = []
    for h, r in profile:
        if r == 0.0:
            p = [origin[k] + h * up[k] for k in range(3)]
            rings.append([mb.vertex(p)])
            continue
        ring = []
        for s in range(segments):
            t = 2.0 * math.pi * s / segments
            p = [origin[k] + h * up[k] + r * (math.cos(t) * side_a[k] + math.sin(t) * side_b[k]) for k in range(3)]
            ring.append(mb.vertex(p))
        rings.append(ring)
    for lo, hi in zip(rings, rings[1:]):
        for s in range(segments):
            n = (s + 1) % segments
            if len(lo) == 1:
                mb.tri(lo[0], hi[n], hi[s])
            elif len(hi) == 1:
                mb.tri(lo[s], lo[n], hi[0])
            else:
                mb.quad(lo[s], lo[n], hi[n], hi[s])


def tube(mb, centers, radii, sides):
    """Open tube along a polyline of centres with per-centre radius."""
    rings = []
    for i, c in enumerate(centers):
        a = centers[min(i + 1, len(centers) - 1)]
        b = centers[max(i - 1, 0)]
        d = [a[k] - b[k] for k in range(3)]
        n = math.sqrt(sum(x * x for x in d))
        d = [x / n for x in d]
        ref = [0.0, 0.0, 1.0] if abs(d[2]) < 0.9 else [1.0, 0.0, 0.0]
        u = [d[1] * ref[2] - d[2] * ref[1], d[2] * ref[0] - d[0] * ref[2], d[0] * ref[1] - d[1] * ref[0]]
        un = math.sqrt(sum(x * x for x in u))
        u = [x / un for x in u]
        w = [d[1] * u[2] - d[2] * u[1], d[2] * u[0] - d[0] * u[2], d[0] * u[1] - d[1] * u[0]]
        ring = []
        for s in range(sides):
            t = 2.0 * math.pi * s / sides
            ring.append(mb.vertex([c[k] + radii[i] * (math.cos(t) * u[k] + math.sin(t) * w[k]) for k in range(3)]))
        rings.append(ring)
    for lo, hi in zip(rings, rings[1:]):
        for s in range(sides):
            n = (s + 1) % sides
            mb.quad(lo[s], lo[n], hi[n], hi[s])


def box(mb, lo, hi):
    x0, y0, z0 = lo
    x1, y1, z1 = hi
    v = [mb.vertex(p) for p in [(x0, y0, z0), (x1, y0, z0), (x1, y1, z0), (x0, y1, z0),
                                (x0, y0, z1), (x1, y0, z1), (x1, y1, z1), (x0, y1, z1)]]
    for a, b, c, d in [(0, 3, 2, 1), (4, 5, 6, 7), (0, 1, 5, 4), (2, 3, 7, 6), (1, 2, 6, 5), (0, 4, 7, 3)]:
        mb.quad(v[a], v[b], v[c], v[d])


Y_AXIS = ((0.0, 0.0, 0.0), (0.0, 1.0, 0.0), (1.0, 0.0, 0.0), (0.0, 0.0, -1.0))
X_AXIS = ((-1.2, 0.0, 0.0), (1.0, 0.0, 0.0), (0.0, 0.0, 1.0), (0.0, 1.0, 0.0))


def teapot():
    mb = MeshBuilder()
    lathe(mb, [(0.0, 0.0), (0.0, 0.55), (0.45, 0.78), (0.9, 0.5), (0.98, 0.0)], 8, Y_AXIS)
    spout = [(0.65, 0.3, 0.0), (1.05, 0.55, 0.0), (1.3, 0.95, 0.0)]
    tube(mb, spout, [0.16, 0.1, 0.07], 4)
    handle = []
    for i in range(4):
        t = math.radians(-70.0 + 140.0 * i / 3)
        handle.append((-0.5 - 0.45 * math.cos(t), 0.4 + 0.3 * math.sin(t), 0.0))
    tube(mb, handle, [0.07] * len(handle), 4)
    return mb


def airplane():
    mb = MeshBuilder()
    lathe(mb, [(0.0, 0.0), (0.25, 0.14), (0.7, 0.2), (1.7, 0.2), (2.2, 0.12), (2.4, 0.0)], 8, X_AXIS)
    box(mb, (-0.35, -0.04, -1.2), (0.05, 0.03, 1.2))
    box(mb, (0.85, -0.02, -0.45), (1.1, 0.02, 0.45))
    box(mb, (0.85, 0.0, -0.02), (1.15, 0.5, 0.02))
    return mb


def cube():
    mb = MeshBuilder()
    box(mb, (-1.0, -1.0, -1.0), (1.0, 1.0, 1.0))
    return mb


def main():
    out = Path(sys.argv[1]) if len(sys.argv) > 1 else Path(__file__).parent
    teapot().write(out / "teapot.obj", "low-poly teapot: lathe body, lid knob, spout and handle tubes")
    airplane().write(out / "airplane.obj", "low-poly airplane: lathe fuselage with box wings and tail")
    cube().write(out / "cube.obj", "axis-aligned cube [-1, 1]^3")


if __name__ == "__main__":
    main()
