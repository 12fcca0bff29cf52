"""Report files: delimited data plus a matplotlib figure.

Writes, into the chosen directory:

    det_signs.csv        sign of det G = +-(w_{l-1})^(l^2) for l = 2..lmax,
                         computed symbolically by the block solver
    gram_l<N>.csv        the Gram matrix at the session's l and weights
    gram_blocks_l<N>.png sparsity of G with the basis grouped by grading,
                         showing the block-diagonal structure
"""

from __future__ import annotations

import csv
import os

from .inner import WeightSpec
from .kernels import gram_matrix
from .printing import scalar_text


def write_report(cfg, out_dir: str, lmax: int = 6) -> list[str]:
    os.makedirs(out_dir, exist_ok=True)
    written = []

    signs_path = os.path.join(out_dir, "det_signs.csv")
    with open(signs_path, "w", newline="") as fh:
        wr = csv.writer(fh)
        wr.writerow(["l", "sign", "det"])
        for l in range(2, max(lmax, cfg.l) + 1):
            g = gram_matrix(WeightSpec.symbolic(l))
            sign = g.det_sign("block")
            wr.writerow([l, "+" if sign > 0 else "-", scalar_text(g.det("block"))])
    written.append(signs_path)

    g = gram_matrix(cfg.weight_spec, cfg.ring)
    gram_path = os.path.join(out_dir, f"gram_l{cfg.l}.csv")
    with open(gram_path, "w", newline="") as fh:
        wr = csv.writer(fh)
        wr.writerow(["" ] + [f"({i},{j})" for i, j in g.basis])
        for (i, j), row in zip(g.basis, g.rows):
            wr.writerow([f"({i},{j})"] + [scalar_text(c) for c in row])
    written.append(gram_path)

    written.append(_block_figure(g, out_dir))
    return written


def _block_figure(g, out_dir: str) -> str:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    order = [p for _, positions in g.blocks for p in positions]
    n = len(order)
    grid = [
        [0 if g.rows[order[r]][order[c]].is_zero() else 1 for c in range(n)]
        for r in range(n)
    ]
    fig, ax = plt.subplots(figsize=(5, 5))
    ax.imshow(grid, cmap="Greys", interpolation="none")
    edge = 0
    for _, positions in g.blocks[:-1]:
        edge += len(positions)
        ax.axhline(edge - 0.5, color="tab:red", linewidth=0.8)
        ax.axvline(edge - 0.5, color="tab:red", linewidth=0.8)
    labels = [f"{g.basis[p][0]},{g.basis[p][1]}" for p in order]
    ax.set_xticks(range(n), labels, rotation=90, fontsize=7)
    ax.set_yticks(range(n), labels, fontsize=7)
    ax.set_title(f"Gram matrix blocks by grading, l={g.spec.l}")
    path = os.path.join(out_dir, f"gram_blocks_l{g.spec.l}.png")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path
