"""Optional figure rendering for CLI outputs.

matplotlib is imported lazily and pinned to the Agg backend so the CLI stays
headless-safe; nothing in the computational layer depends on this module.
"""

from __future__ import annotations


def _pyplot():
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
    return plt


def spectrum_figure(rows, path) -> str:
    """Level diagram from (n, l, E_analytic, E_numeric, ...) rows."""
    plt = _pyplot()
    fig, ax = plt.subplots(figsize=(6.0, 4.5))
    by_l: dict = {}
    for row in rows:
        n, l = int(row[0]), int(row[1])
        by_l.setdefault(l, []).append((n, row[2], row[3]))
    for l in sorted(by_l):
        pts = sorted(by_l[l])
        ns = [p[0] for p in pts]
        ea = [p[1] for p in pts if p[1] is not None]
        if len(ea) == len(pts):
            ax.plot(ns, ea, "o-", label=f"l={l} analytic")
        en = [(p[0], p[2]) for p in pts if p[2] is not None]
        if en:
            ax.plot([p[0] for p in en], [p[1] for p in en], "x--",
                    label=f"l={l} numeric")
    ax.set_xlabel("n")
    ax.set_ylabel("E")
    ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return str(path)


def classify_figure(rows, path) -> str:
    """Classification band over the alpha scan."""
    plt = _pyplot()
    order = ["Coulomb", "Oscillator", "NotConstantIndependent"]
    fig, ax = plt.subplots(figsize=(6.0, 2.8))
    xs = [row[0] for row in rows]
    ys = [order.index(row[1]) for row in rows]
    ax.plot(xs, ys, ".", ms=6)
    ax.set_yticks(range(len(order)), order, fontsize=8)
    ax.set_xlabel("alpha")
    ax.set_ylim(-0.5, len(order) - 0.5)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return str(path)


def verify_figure(report, path) -> str:
    """Measured-over-tolerance ratios for every check, log scale."""
    plt = _pyplot()
    names, ratios, colors = [], [], []
    for chk in report["checks"]:
        names.append(chk["name"])
        tol = chk["tolerance"]
        measured = chk["measured"]
        ratios.append(max(measured / tol if tol > 0 else measured + 1e-30, 1e-30))
        colors.append("tab:green" if chk["passed"] else "tab:red")
    fig, ax = plt.subplots(figsize=(6.5, 0.5 * len(names) + 1.2))
    ax.barh(range(len(names)), ratios, color=colors)
    ax.set_yticks(range(len(names)), names, fontsize=8)
    ax.set_xscale("log")
    ax.axvline(1.0, color="k", lw=1, ls=":")
    ax.set_xlabel("measured / tolerance (1 = limit)")
    ax.invert_yaxis()
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return str(path)
