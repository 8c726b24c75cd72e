"""Two-dimensional grids standing in for tori of complex dimension 1 and 2.

Every chart is a 2-D array of nodes.  The layout says which real
coordinates the two axes carry; fields are invariant in the others:

``plane``  n=1, axes (x1, y1); the whole torus C/Z^2.
``slice``  n=2, axes (x1, y1); fields are invariant in z2.
``tube``   n=2, axes (x1, x2); fields are invariant in y1, y2.
``box``    n=1, axes (x1, y1) over [-L, L]^2, not periodic.

Periodic charts use nodes ``-1/2 + i h`` (h = 1/N), so the origin is a node.
The invariant directions have unit volume, hence torus integrals are plain
midpoint sums ``sum(f) * h^2``.

Complex Hessians ``d^2 f / dz_j dzbar_k`` are computed from Fourier
symbols: ``hess_hat[..., j, k] = sigma[..., j, k] * f_hat``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

LAYOUTS = {"plane": 1, "slice": 2, "tube": 2, "box": 1}


class GridError(ValueError):
    pass


@dataclass(frozen=True)
class GridChart:
    n: int
    resolution: int
    layout: str = ""
    half_width: float = 1.0  # box charts only

    def __post_init__(self):
        layout = self.layout or ("plane" if self.n == 1 else "slice")
        object.__setattr__(self, "layout", layout)
        if layout not in LAYOUTS:
            raise GridError(f"unknown layout {layout!r}")
        if LAYOUTS[layout] != self.n:
            raise GridError(f"layout {layout} is for n={LAYOUTS[layout]}, not n={self.n}")
        r = self.resolution
        if r < 4 or r & (r - 1):
            raise GridError(f"resolution must be a power of two >= 4, got {r}")

    @property
    def periodic(self) -> bool:
        return self.layout != "box"

    @property
    def h(self) -> float:
        if self.periodic:
            return 1.0 / self.resolution
        return 2.0 * self.half_width / self.resolution

    @property
    def cell_area(self) -> float:
        return self.h**2

    @property
    def axes(self):
        N = self.resolution
        if self.periodic:
            a = -0.5 + np.arange(N) / N
        else:
            a = -self.half_width + (np.arange(N) + 0.5) * self.h
        return a, a.copy()

    def mesh(self):
        a, b = self.axes
        return np.meshgrid(a, b, indexing="ij")

    def complex_plane(self):
        """``(z1 real part, z1 imaginary part)`` when the chart carries them."""
        if self.layout == "tube":
            raise GridError("tube charts do not carry a complex coordinate plane")
        return self.mesh()

    def integrate(self, values):
        return float(np.sum(values) * self.cell_area)

    def mean(self, values):
        return float(np.mean(values))

    # -- spectral machinery -------------------------------------------------

    def wavenumbers(self):
        """Angular wavenumbers ``2 pi k`` on both axes; ``first`` has the
        Nyquist mode zeroed (for odd derivatives)."""
        N = self.resolution
        k = 2 * np.pi * np.fft.fftfreq(N, d=1.0 / N)
        k1 = k.copy()
        k1[N // 2] = 0.0
        return k, k1

    def hessian_symbols(self):
        """``sigma`` of shape (N, N, n, n) with Hess f = ifft(sigma * fft f)."""
        if not self.periodic:
            raise GridError("spectral Hessians need a periodic chart")
        k, k1 = self.wavenumbers()
        ka, kb = np.meshgrid(k, k, indexing="ij")
        N = self.resolution
        sig = np.zeros((N, N, self.n, self.n))
        if self.layout in ("plane", "slice"):
            sig[..., 0, 0] = -0.25 * (ka**2 + kb**2)
        else:
            ka1, kb1 = np.meshgrid(k1, k1, indexing="ij")
            sig[..., 0, 0] = -0.25 * ka**2
            sig[..., 1, 1] = -0.25 * kb**2
            sig[..., 0, 1] = sig[..., 1, 0] = -0.25 * ka1 * kb1
        return sig


@dataclass
class GridField:
    """Scalar (N, N) or Hermitian-form (N, N, n, n) values on a chart."""

    chart: GridChart
    values: np.ndarray
    kind: str = "scalar"
    eps: float | None = None
    name: str = ""
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        N = self.chart.resolution
        n = self.chart.n
        want = (N, N) if self.kind == "scalar" else (N, N, n, n)
        if self.kind not in ("scalar", "hermitian"):
            raise GridError(f"unknown field kind {self.kind!r}")
        if self.values.shape != want:
            raise GridError(f"{self.kind} field needs shape {want}, got {self.values.shape}")

    def is_hermitian(self, atol=1e-12) -> bool:
        v = self.values
        return bool(np.allclose(v, np.conj(np.swapaxes(v, -1, -2)), atol=atol, rtol=0))


def constant_form_field(chart, matrix, name=""):
    m = np.asarray(matrix, dtype=complex)
    N = chart.resolution
    return GridField(chart, np.broadcast_to(m, (N, N, chart.n, chart.n)).copy(), "hermitian", name=name)


def complex_hessian(f: GridField, mode="spectral") -> GridField:
    """Pointwise ``d^2 f / dz_j dzbar_k`` as a Hermitian-form field.

    ``spectral``: exact on trigonometric polynomials below Nyquist (periodic
    charts).  ``fd``: second-order central differences; on box charts the
    outermost ring copies its neighbours.
    """
    chart = f.chart
    if f.kind != "scalar":
        raise GridError("Hessian of a non-scalar field")
    v = np.asarray(f.values, dtype=float)
    if mode == "spectral":
        sig = chart.hessian_symbols()
        fh = np.fft.fft2(v)
        out = np.fft.ifft2(sig * fh[..., None, None], axes=(0, 1)).real
    elif mode == "fd":
        out = _fd_hessian(chart, v)
    else:
        raise GridError(f"unknown Hessian mode {mode!r}")
    return GridField(chart, out.astype(complex), "hermitian", eps=f.eps, name=f"hess({f.name})", meta={"mode": mode})


def _fd_hessian(chart, v):
    h = chart.h
    N = chart.resolution
    n = chart.n
    if chart.periodic:

        def d2(axis):
            return (np.roll(v, -1, axis) - 2 * v + np.roll(v, 1, axis)) / h**2

        def dd():
            s = lambda a, b: np.roll(np.roll(v, a, 0), b, 1)  # noqa: E731
            return (s(-1, -1) - s(-1, 1) - s(1, -1) + s(1, 1)) / (4 * h**2)

        faa, fbb, fab = d2(0), d2(1), dd()
    else:
        faa = np.zeros_like(v)
        fbb = np.zeros_like(v)
        fab = np.zeros_like(v)
        faa[1:-1, :] = (v[2:, :] - 2 * v[1:-1, :] + v[:-2, :]) / h**2
        fbb[:, 1:-1] = (v[:, 2:] - 2 * v[:, 1:-1] + v[:, :-2]) / h**2
        fab[1:-1, 1:-1] = (v[2:, 2:] - v[2:, :-2] - v[:-2, 2:] + v[:-2, :-2]) / (4 * h**2)
        for arr in (faa, fbb, fab):
            arr[0, :], arr[-1, :] = arr[1, :], arr[-2, :]
            arr[:, 0], arr[:, -1] = arr[:, 1], arr[:, -2]
    out = np.zeros((N, N, n, n))
    if chart.layout in ("plane", "slice", "box"):
        out[..., 0, 0] = 0.25 * (faa + fbb)
    else:
        out[..., 0, 0] = 0.25 * faa
        out[..., 1, 1] = 0.25 * fbb
        out[..., 0, 1] = out[..., 1, 0] = 0.25 * fab
    return out


def apply_symbol(chart, sym, u):
    """``ifft(sym * fft(u))`` for a real scalar array ``u``."""
    return np.fft.ifft2(sym * np.fft.fft2(u)).real


__all__ = [
    "GridChart",
    "GridError",
    "GridField",
    "LAYOUTS",
    "apply_symbol",
    "complex_hessian",
    "constant_form_field",
]
