"""Curve output: SVG path documents and matplotlib figure files."""

import numpy as np

_VIEWPORT = 1000.0


def svg_curve(points, half_width):
    """Closed SVG path for a planar curve, 1000x1000 viewport.

    The square [-half_width, half_width]^2 is mapped onto the viewport with
    the vertical axis flipped so larger ordinates appear higher.
    """
    points = np.asarray(points, dtype=float)
    scale = _VIEWPORT / (2.0 * half_width)
    xs = (points[:, 0] + half_width) * scale
    ys = (half_width - points[:, 1]) * scale
    steps = [f"M {xs[0]:.3f},{ys[0]:.3f}"]
    steps += [f"L {x:.3f},{y:.3f}" for x, y in zip(xs[1:], ys[1:])]
    steps.append("Z")
    path = " ".join(steps)
    return (
        '<svg xmlns="http://www.w3.org/2000/svg" '
        f'viewBox="0 0 {_VIEWPORT:.0f} {_VIEWPORT:.0f}">\n'
        f'  <path d="{path}" fill="none" stroke="black" stroke-width="2"/>\n'
        "</svg>\n"
    )


def save_curve_figure(points, path, half_width, label=""):
    """Write a matplotlib rendering of the curve to an image file."""
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    points = np.asarray(points, dtype=float)
    closed = np.vstack([points, points[:1]])
    fig, ax = plt.subplots(figsize=(6, 6))
    ax.plot(closed[:, 0], closed[:, 1], lw=1.2, color="black")
    ax.set_xlim(-half_width, half_width)
    ax.set_ylim(-half_width, half_width)
    ax.set_aspect("equal")
    if label:
        ax.set_title(label)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
