"""Optional figures for classification reports (needs matplotlib)."""

from __future__ import annotations

_STATUS = {"NotSatisfied": 0, "Satisfied": 1, "Exact": 2}


def plot_classification(X, c, path: str) -> str:
    """Level sizes next to the horn-status grid, written as a PNG."""
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
    from matplotlib.colors import ListedColormap

    sizes = X.sizes(c.bound) if X.is_coskeletal else X.sizes()
    fig, (ax0, ax1) = plt.subplots(1, 2, figsize=(9, 3.6))

    ax0.bar(range(len(sizes)), sizes, color="#4c72b0")
    ax0.set_yscale("log")
    ax0.set_xlabel("level n")
    ax0.set_ylabel("|X_n|")
    ax0.set_xticks(range(len(sizes)))
    ax0.set_title("simplices per level")

    n_max = c.bound
    grid = [[float("nan")] * (n_max + 1) for _ in range(n_max)]
    for (n, k), st in c.grid.items():
        grid[n - 1][k] = _STATUS[st.kind]
    cmap = ListedColormap(["#c44e52", "#dd8452", "#55a868"])
    ax1.imshow(grid, cmap=cmap, vmin=0, vmax=2, origin="lower", aspect="auto")
    ax1.set_xlabel("horn index k")
    ax1.set_ylabel("dimension n")
    ax1.set_xticks(range(n_max + 1))
    ax1.set_yticks(range(n_max))
    ax1.set_yticklabels([str(n) for n in range(1, n_max + 1)])
    ax1.set_title(c.describe(), fontsize=9)
    for (n, k), st in c.grid.items():
        ax1.text(k, n - 1, st.kind[0], ha="center", va="center", fontsize=8)

    fig.suptitle(X.name or "simplicial set")
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path
