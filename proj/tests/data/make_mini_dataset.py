#!/usr/bin/env python3
"""Regenerates the bundled synthetic mini-dataset (10 KITTI-style frames).

Layout: mini/label_2 (ground truth), mini/calib, mini/det_2 (hand-built
detections with scores). Output is deterministic for a fixed seed.
"""
import math
import os
import random

ROOT = os.path.join(os.path.dirname(os.path.abspath(__file__)), "mini")
FX, FY, CX, CY = 721.5377, 721.5377, 609.5593, 172.854
CALIB = {
    "P0": [FX, 0, CX, 0, 0, FY, CY, 0, 0, 0, 1, 0],
    "P1": [FX, 0, CX, -387.5744, 0, FY, CY, 0, 0, 0, 1, 0],
    "P2": [FX, 0, CX, 44.85728, 0, FY, CY, 0.2163791, 0, 0, 1, 0.002745884],
    "P3": [FX, 0, CX, -339.5242, 0, FY, CY, 2.199936, 0, 0, 1, 0.002729905],
    "R0_rect": [0.9999239, 0.00983776, -0.007445048, -0.009869795, 0.9999421,
                -0.004278459, 0.007402527, 0.004351614, 0.9999631],
    "Tr_velo_to_cam": [0.007533745, -0.9999714, -0.000616602, -0.004069766,
                       0.01480249, 0.0007280733, -0.9998902, -0.07631618,
                       0.9998621, 0.00752379, 0.01480755, -0.2717806],
    "Tr_imu_to_velo": [0.9999976, 0.0007553071, -0.002035826, -0.8086759,
                       -0.0007854027, 0.9998898, -0.01482298, 0.3195559,
                       0.002024406, 0.01482454, 0.9998881, -0.7997231],
}
DIMS = {"Car": (1.53, 1.63, 3.88), "Pedestrian": (1.76, 0.66, 0.84),
        "Cyclist": (1.74, 0.60, 1.76)}


def corners(x, y, z, h, w, l, ry):
    c, s = math.cos(ry), math.sin(ry)
    out = []
    for dy in (0.0, -h):
        for lx, lz in ((l / 2, w / 2), (l / 2, -w / 2), (-l / 2, -w / 2), (-l / 2, w / 2)):
            out.append((c * lx + s * lz + x, y + dy, -s * lx + c * lz + z))
    return out


def bbox(x, y, z, h, w, l, ry):
    us, vs = [], []
    for px, py, pz in corners(x, y, z, h, w, l, ry):
        us.append(FX * px / pz + CX)
        vs.append(FY * py / pz + CY)
    return min(us), min(vs), max(us), max(vs)


def wrap(a):
    while a > math.pi:
        a -= 2 * math.pi
    while a < -math.pi:
        a += 2 * math.pi
    return a


def line(cls, trunc, occ, x, y, z, h, w, l, ry, score=None):
    l2, t2, r2, b2 = bbox(x, y, z, h, w, l, ry)
    alpha = wrap(ry - math.atan2(x, z))
    vals = [alpha, l2, t2, r2, b2, h, w, l, x, y, z, ry]
    s = f"{cls} {trunc:.2f} {occ} " + " ".join(f"{v:.2f}" for v in vals)
    if score is not None:
        s += f" {score:.4f}"
    return s


def random_object(rng, cls):
    h, w, l = (round(d * rng.uniform(0.9, 1.1), 2) for d in DIMS[cls])
    z = round(rng.uniform(6.0, 60.0), 2)
    x = round(rng.uniform(-0.35, 0.35) * z, 2)
    y = round(rng.uniform(1.4, 1.9), 2)
    ry = round(rng.uniform(-math.pi, math.pi), 2)
    trunc = rng.choice([0.0, 0.0, 0.0, 0.1, 0.2, 0.4])
    occ = rng.choice([0, 0, 0, 1, 1, 2])
    return [cls, trunc, occ, x, y, z, h, w, l, ry]


def main():
    rng = random.Random(20231016)
    for sub in ("label_2", "calib", "det_2"):
        os.makedirs(os.path.join(ROOT, sub), exist_ok=True)
    for frame in range(10):
        fid = f"{frame:06d}"
        with open(os.path.join(ROOT, "calib", fid + ".txt"), "w") as f:
            for name, vals in CALIB.items():
                f.write(name + ": " + " ".join(f"{v:.6e}" for v in vals) + "\n")
        if frame == 0:
            objs = [["Car", 0.0, 0, 5.0, 1.0, 50.0, 1.53, 1.63, 3.88, -1.5]]
        else:
            objs = []
            for _ in range(rng.randint(1, 5)):
                objs.append(random_object(rng, rng.choice(["Car", "Car", "Car", "Pedestrian", "Cyclist"])))
        gt_lines = [line(*o) for o in objs]
        if frame % 3 == 1:
            gt_lines.append("DontCare -1 -1 -10 503.89 169.71 590.61 190.13 -1 -1 -1 -1000 -1000 -1000 -10")
        with open(os.path.join(ROOT, "label_2", fid + ".txt"), "w") as f:
            f.write("\n".join(gt_lines) + "\n")

        dets = []
        for o in objs:
            if rng.random() < 0.15:
                continue  # missed
            cls, trunc, occ, x, y, z, h, w, l, ry = o
            jit = rng.choice([0.0, 0.05, 0.2, 0.6])
            d = [cls, trunc, occ, round(x + rng.uniform(-jit, jit), 2), y,
                 round(z + rng.uniform(-2 * jit, 2 * jit), 2), h, w, l, ry]
            dets.append(line(*d, score=round(rng.uniform(0.3, 0.99), 4)))
        if rng.random() < 0.5:
            fp = random_object(rng, "Car")
            dets.append(line(*fp, score=round(rng.uniform(0.05, 0.6), 4)))
        with open(os.path.join(ROOT, "det_2", fid + ".txt"), "w") as f:
            f.write("".join(d + "\n" for d in dets))


if __name__ == "__main__":
    main()
