"""Optional matplotlib rendering of sampled curves (PNG/PDF); the SVG path in
report.py does not depend on this module."""


def render_curve(samples, path, title=None, dpi=150):
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    fig, ax = plt.subplots(figsize=(5, 5))
    run = []
    for s in list(samples) + [None]:
        if s is None or s.skipped:
            if len(run) > 1:
                xs, ys = zip(*run)
                ax.plot(xs, ys, color="black", lw=0.8)
            run = []
            continue
        run.append(s.point())
    ax.set_aspect("equal")
    ax.set_xlabel("Re")
    ax.set_ylabel("Im")
    if title:
        ax.set_title(title)
    fig.tight_layout()
    fig.savefig(path, dpi=dpi)
    plt.close(fig)
    return path
