"""Render sweep and spectrum figures to files next to the delimited output."""

import numpy as np

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402


def save_spectrum_figure(spectrum, path):
    """Complex-plane scatter of the retained eigenvalues, colored by status."""
    fig, ax = plt.subplots(figsize=(5.5, 4.0))
    styles = {"physical": ("o", "tab:blue"), "spurious": (".", "0.7")}
    for status, (marker, color) in styles.items():
        ks = [mo.k for mo in spectrum.modes if mo.status == status and np.isfinite(mo.k)]
        if ks:
            ax.plot([k.real for k in ks], [k.imag for k in ks], marker,
                    color=color, linestyle="none", label=f"{status} ({len(ks)})")
    ax.axhline(0.0, color="0.85", lw=0.8, zorder=0)
    ax.set_xlabel("Re k")
    ax.set_ylabel("Im k")
    ax.set_title(f"spectrum: m={spectrum.problem.get('m')}, "
                 f"omega={spectrum.problem.get('omega')}, {spectrum.problem.get('method')}")
    ax.legend(loc="best", fontsize=8)
    fig.savefig(path, dpi=150, bbox_inches="tight")
    plt.close(fig)


def save_sweep_figure(result, path):
    """Growth-rate curve chi(omega) with the critical point marked."""
    fig, ax = plt.subplots(figsize=(5.5, 4.0))
    ax.plot(result.omega, result.chi, "o-", color="tab:blue")
    ax.plot([result.omega_cr], [result.gr_max], "s", color="tab:red",
            label=f"omega_cr={result.omega_cr:g}, gr_max={result.gr_max:.4g}")
    ax.axhline(0.0, color="0.85", lw=0.8, zorder=0)
    ax.set_xlabel("omega")
    ax.set_ylabel("growth rate  -Im k")
    ax.legend(loc="best", fontsize=8)
    fig.savefig(path, dpi=150, bbox_inches="tight")
    plt.close(fig)


def save_convergence_figure(report, path):
    """omega_cr versus resolution N."""
    fig, ax = plt.subplots(figsize=(5.5, 4.0))
    ax.step(report.N_list, report.omega_cr, "o-", where="post", color="tab:blue")
    if report.N_cr_min is not None:
        ax.axvspan(report.N_cr_min, report.N_cr_max, color="tab:green", alpha=0.12,
                   label=f"plateau at omega_cr={report.modal_omega:g}")
        ax.legend(loc="best", fontsize=8)
    ax.set_xlabel("expansion terms N")
    ax.set_ylabel("omega_cr(N)")
    fig.savefig(path, dpi=150, bbox_inches="tight")
    plt.close(fig)


def save_residual_figure(report, path):
    """Residual growth E_N across the converged interval, log scale."""
    fig, ax = plt.subplots(figsize=(5.5, 4.0))
    if report.E_N:
        ns = [n for n, _ in report.E_N]
        es = [e for _, e in report.E_N]
        ax.semilogy(ns, es, "o-", color="tab:blue")
    ax.set_xlabel("expansion terms N")
    ax.set_ylabel("max retained residual E_N")
    fig.savefig(path, dpi=150, bbox_inches="tight")
    plt.close(fig)
