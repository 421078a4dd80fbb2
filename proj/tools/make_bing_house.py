#!/usr/bin/env python3
"""Generate the Bing's house fixture: face poset of a triangulated two-room
house plus two incomparable apexes above everything.

The house lives on the unit grid over a 5x3 footprint, z in [0, 2]. The
middle floor (z = 1) splits it into two rooms. A chimney drops from a roof
hole through the upper room into the lower room; a second one rises from a
hole in the ground floor through the lower room into the upper room. Each
chimney is tied to an outer wall by a one-square support wall. Every unit
square is split along one diagonal.
"""
import argparse
import itertools
import json

W, D = 5, 3
HOLE_A = (1, 1)  # chimney through the upper room
HOLE_B = (3, 1)  # chimney through the lower room


def squares():
    out = []
    for z in (0, 1, 2):
        for x, y in itertools.product(range(W), range(D)):
            if z == 0 and (x, y) == HOLE_B:
                continue
            if z == 1 and (x, y) in (HOLE_A, HOLE_B):
                continue
            if z == 2 and (x, y) == HOLE_A:
                continue
            out.append([(x, y, z), (x + 1, y, z), (x + 1, y + 1, z), (x, y + 1, z)])
    for z in (0, 1):
        for x in range(W):
            for y in (0, D):
                out.append([(x, y, z), (x + 1, y, z), (x + 1, y, z + 1), (x, y, z + 1)])
        for y in range(D):
            for x in (0, W):
                out.append([(x, y, z), (x, y + 1, z), (x, y + 1, z + 1), (x, y, z + 1)])

    def tube(cell, z):
        cx, cy = cell
        return [
            [(cx, cy, z), (cx + 1, cy, z), (cx + 1, cy, z + 1), (cx, cy, z + 1)],
            [(cx, cy + 1, z), (cx + 1, cy + 1, z), (cx + 1, cy + 1, z + 1), (cx, cy + 1, z + 1)],
            [(cx, cy, z), (cx, cy + 1, z), (cx, cy + 1, z + 1), (cx, cy, z + 1)],
            [(cx + 1, cy, z), (cx + 1, cy + 1, z), (cx + 1, cy + 1, z + 1), (cx + 1, cy, z + 1)],
        ]

    out += tube(HOLE_A, 1)
    out += tube(HOLE_B, 0)
    # support walls in the plane y = 1
    out.append([(0, 1, 1), (1, 1, 1), (1, 1, 2), (0, 1, 2)])
    out.append([(4, 1, 0), (5, 1, 0), (5, 1, 1), (4, 1, 1)])
    return out


def triangulate(quads):
    tris = set()
    for q in quads:
        tris.add(tuple(sorted((q[0], q[1], q[2]))))
        tris.add(tuple(sorted((q[0], q[2], q[3]))))
    return sorted(tris)


def face_poset(tris):
    verts = sorted({v for t in tris for v in t})
    edges = sorted({e for t in tris for e in itertools.combinations(t, 2)})
    vname = {v: f"p{i}" for i, v in enumerate(verts)}
    ename = {e: f"e{i}" for i, e in enumerate(edges)}
    tname = {t: f"t{i}" for i, t in enumerate(tris)}
    elements = list(vname.values()) + list(ename.values()) + list(tname.values())
    covers = []
    for e, n in ename.items():
        covers += [[vname[e[0]], n], [vname[e[1]], n]]
    for t, n in tname.items():
        covers += [[ename[e], n] for e in itertools.combinations(t, 2)]
    return verts, edges, elements, covers, tname


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--out", default="fixtures/bing_house.json")
    ap.add_argument("--no-apexes", action="store_true")
    args = ap.parse_args()

    tris = triangulate(squares())
    verts, edges, elements, covers, tname = face_poset(tris)
    if not args.no_apexes:
        elements += ["u", "v"]
        for n in tname.values():
            covers += [[n, "u"], [n, "v"]]
    doc = {"field": "Q", "elements": elements, "covers": covers}
    with open(args.out, "w") as fh:
        json.dump(doc, fh, indent=1)
        fh.write("\n")
    print(f"f-vector ({len(verts)}, {len(edges)}, {len(tris)}), "
          f"euler {len(verts) - len(edges) + len(tris)}, poset size {len(elements)}")


if __name__ == "__main__":
    main()
