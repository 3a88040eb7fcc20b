#!/usr/bin/env python3
"""Regenerates the reference fixtures used by the C++ test suite.

Everything here is written from the published definitions (the canonical
modified head-phantom ellipse table; straight-line frequency sampling) in
plain Python, independent of the library code, so the tests compare two
separate implementations.
"""

import math
import os

HERE = os.path.dirname(os.path.abspath(__file__))

# (a, b, x0, y0, phi_degrees, intensity)
ELLIPSES = [
    (0.69, 0.92, 0.0, 0.0, 0.0, 1.0),
    (0.6624, 0.8740, 0.0, -0.0184, 0.0, -0.8),
    (0.11, 0.31, 0.22, 0.0, -18.0, -0.2),
    (0.16, 0.41, -0.22, 0.0, 18.0, -0.2),
    (0.21, 0.25, 0.0, 0.35, 0.0, 0.1),
    (0.046, 0.046, 0.0, 0.1, 0.0, 0.1),
    (0.046, 0.046, 0.0, -0.1, 0.0, 0.1),
    (0.046, 0.023, -0.08, -0.605, 0.0, 0.1),
    (0.023, 0.023, 0.0, -0.606, 0.0, 0.1),
    (0.023, 0.046, 0.06, -0.605, 0.0, 0.1),
]


def phantom(height, width):
    img = [[0.0] * width for _ in range(height)]
    hx = (width - 1) / 2.0
    hy = (height - 1) / 2.0
    for a, b, x0, y0, phi, val in ELLIPSES:
        asq = a * a
        bsq = b * b
        rad = math.radians(phi)
        ct = math.cos(rad)
        st = math.sin(rad)
        for i in range(height):
            y = -(i - hy) / hy - y0
            for j in range(width):
                x = (j - hx) / hx - x0
                xr = x * ct + y * st
                yr = y * ct - x * st
                if xr * xr / asq + yr * yr / bsq <= 1.0:
                    img[i][j] += val
    return img


def write_phantom_csv(path, height, width):
    img = phantom(height, width)
    with open(path, "w") as f:
        f.write("# head phantom %d %d row-major\n" % (height, width))
        for i in range(height):
            for j in range(width):
                f.write("%.17g\n" % img[i][j])


def lround(x):
    if x >= 0.0:
        return math.floor(x + 0.5)
    return math.ceil(x - 0.5)


def radial_mask(height, width, n_lines):
    mask = [[False] * width for _ in range(height)]
    mask[0][0] = True
    rmax = 0.5 * math.sqrt(float(height) * height + float(width) * width)

    def set_centered(kx, ky):
        ki = lround(ky)
        kj = lround(kx)
        i = int(ki % height)
        j = int(kj % width)
        mask[i][j] = True
        mask[(height - i) % height][(width - j) % width] = True

    for l in range(n_lines):
        theta = math.pi * l / n_lines
        cx = math.cos(theta)
        cy = math.sin(theta)
        for r in range(1, int(rmax) + 1):
            kx = r * cx
            ky = r * cy
            if abs(kx) > width / 2.0 or abs(ky) > height / 2.0:
                continue
            set_centered(kx, ky)
            set_centered(-kx, -ky)
    return mask


def write_pbm(path, mask):
    height = len(mask)
    width = len(mask[0])
    with open(path, "w") as f:
        f.write("P1\n%d %d\n" % (width, height))
        for row in mask:
            f.write(" ".join("1" if v else "0" for v in row) + "\n")


def main():
    write_phantom_csv(os.path.join(HERE, "shepp_logan_256.csv"), 256, 256)
    write_pbm(os.path.join(HERE, "radial_mask_64x64_10.pbm"),
              radial_mask(64, 64, 10))
    write_pbm(os.path.join(HERE, "radial_mask_48x64_7.pbm"),
              radial_mask(48, 64, 7))
    print("fixtures written to", HERE)


if __name__ == "__main__":
    main()
