"""Numerical Riemann maps onto the unit disk for smooth convex domains.

Circles route to exact maps (plain scaling, or a Mobius transform for an
off-center circle or center); everything else goes through a
boundary-correspondence fixed-point iteration for domains star-like
about the chosen center, conjugated spectrally on a uniform disk-angle
grid.  The map is normalized by phi(center) = 0, phi'(center) > 0.

The numeric representation is the inverse map f = phi^{-1} as a Taylor
series recovered from the converged boundary correspondence; forward
evaluations are Newton solves against that series, so boundary images
having modulus one is a genuine accuracy check, not a construction
artifact.
"""

from dataclasses import dataclass

import numpy as np
from scipy.interpolate import CubicSpline

from .errors import CenterOutside, FlatBoundary, MapConvergenceError, TooCloseToBoundary
from .numerical_range import DomainBoundary, _distance_to_polyline, _point_in_polygon

CIRCLE_TOL = 1e-9
CORRESPONDENCE_TOL = 1e-10
DAMPING = 0.5
MAX_ITERATIONS = 200


def _fourier_coeffs(samples):
    return np.fft.fft(samples) / samples.size


def _conjugate_series(values):
    """Boundary harmonic conjugate with zero mean (Hilbert multiplier)."""
    m = values.size
    spec = np.fft.fft(values)
    mult = np.zeros(m, dtype=complex)
    mult[1 : (m + 1) // 2] = -1j
    mult[m // 2 + 1 :] = 1j
    return np.real(np.fft.ifft(spec * mult))


@dataclass(frozen=True)
class ConformalMap:
    """Map of a plane domain onto the unit disk with boundary correspondence."""

    kind: str  # identity | scale | moebius | numeric
    center: complex
    boundary: DomainBoundary
    solve_center: complex = 0.0 + 0.0j  # deep point the numeric solve ran about
    scale_radius: float = 1.0
    circle_center: complex = 0.0 + 0.0j
    mobius_a: complex = 0.0 + 0.0j  # disk automorphism parameter (exact kinds and numeric gauge)
    rotation: complex = 1.0 + 0.0j  # unimodular post-rotation fixing phi'(center) > 0
    taylor: np.ndarray = None  # series of the solve-centered inverse map, constant term first
    boundary_corr: np.ndarray = None  # boundary points at uniform disk angles
    psi: np.ndarray = None  # polar angles of the correspondence about the solve center
    phi_at_nodes: np.ndarray = None  # forward images of boundary.nodes
    deriv_abs: np.ndarray = None  # |phi'| at boundary.nodes
    analyticity_residual: float = 0.0
    iterations: int = 0

    # -- inverse map: disk -> domain ------------------------------------
    def inverse(self, w):
        w = np.asarray(w, dtype=complex)
        if self.kind == "identity":
            out = w
        elif self.kind == "scale":
            out = w * self.scale_radius
        elif self.kind == "moebius":
            u = (w + self.mobius_a) / (1.0 + np.conj(self.mobius_a) * w)
            out = self.circle_center + self.scale_radius * u
        else:
            # numeric maps are solved about a deep interior point and
            # gauged afterwards: f = f0 o mu_a^{-1} o rotation^{-1}
            v = w * np.conj(self.rotation)
            w0 = (v + self.mobius_a) / (1.0 + np.conj(self.mobius_a) * v)
            out = np.polynomial.polynomial.polyval(w0, self.taylor)
        return out if out.ndim else complex(out)

    def _inverse_deriv(self, w):
        w = np.asarray(w, dtype=complex)
        if self.kind == "identity":
            out = np.ones_like(w)
        elif self.kind == "scale":
            out = np.full_like(w, self.scale_radius)
        elif self.kind == "moebius":
            a = self.mobius_a
            out = self.scale_radius * (1.0 - abs(a) ** 2) / (1.0 + np.conj(a) * w) ** 2
        else:
            a = self.mobius_a
            v = w * np.conj(self.rotation)
            w0 = (v + a) / (1.0 + np.conj(a) * v)
            dcoef = self.taylor[1:] * np.arange(1, self.taylor.size)
            df0 = np.polynomial.polynomial.polyval(w0, dcoef)
            dmu = (1.0 - abs(a) ** 2) / (1.0 + np.conj(a) * v) ** 2
            out = df0 * dmu * np.conj(self.rotation)
        return out if out.ndim else complex(out)

    # -- forward map: domain -> disk ------------------------------------
    def _forward_exact(self, z):
        if self.kind == "identity":
            return z
        if self.kind == "scale":
            return z / self.scale_radius
        u = (z - self.circle_center) / self.scale_radius
        a = self.mobius_a
        return (u - a) / (1.0 - np.conj(a) * u)

    def _forward_newton(self, z, w0, tol=1e-13, maxit=60):
        w = np.asarray(w0, dtype=complex).copy()
        z = np.asarray(z, dtype=complex)
        scale = max(np.max(np.abs(self.boundary.nodes - self.center)), 1e-300)
        for _ in range(maxit):
            resid = self.inverse(w) - z
            if np.max(np.abs(resid)) <= tol * scale:
                break
            w = w - resid / self._inverse_deriv(w)
        return w

    def forward_unchecked(self, z):
        """Forward evaluation without the interior-margin guard."""
        z = np.asarray(z, dtype=complex)
        if self.kind != "numeric":
            out = self._forward_exact(z)
            return out if out.ndim else complex(out)
        flat = np.atleast_1d(z).ravel()
        samples = self._interior_samples()
        idx = np.argmin(np.abs(samples[None, :, 1] - flat[:, None]), axis=1)
        w0 = samples[idx, 0]
        w = self._forward_newton(flat, w0)
        out = w.reshape(np.shape(z))
        return out if out.ndim else complex(out)

    def forward(self, z):
        """Map interior points into the disk (guarded by the node spacing)."""
        z = np.asarray(z, dtype=complex)
        spacing = float(np.max(np.abs(np.diff(np.r_[self.boundary.nodes, self.boundary.nodes[:1]]))))
        for point in np.atleast_1d(z).ravel():
            if not _point_in_polygon(complex(point), self.boundary.nodes):
                raise TooCloseToBoundary(f"{point} is not interior to the domain")
            if _distance_to_polyline(complex(point), self.boundary.nodes) < spacing:
                raise TooCloseToBoundary(f"{point} is within one node spacing of the boundary")
        return self.forward_unchecked(z)

    def boundary_values(self, nodes):
        """phi at arbitrary points of the boundary curve.

        Numeric maps seed the series Newton solve by inverting the
        monotone correspondence about the solve center and composing the
        gauge, so refined sweeps of the same curve can be mapped without
        rebuilding.
        """
        nodes = np.asarray(nodes, dtype=complex)
        if self.kind == "identity":
            return nodes.copy()
        if self.kind == "scale":
            return nodes / self.scale_radius
        if self.kind == "moebius":
            return self._forward_exact(nodes)
        psi = self.psi
        grid_thetas = 2.0 * np.pi * np.arange(psi.size) / psi.size
        gamma = nodes - self.solve_center
        base = psi[0]
        theta_guess = np.interp(
            np.mod(np.angle(gamma) - base, 2.0 * np.pi),
            np.r_[psi - base, 2.0 * np.pi],
            np.r_[grid_thetas, 2.0 * np.pi],
        )
        w0 = np.exp(1j * theta_guess)
        a = self.mobius_a
        seed = self.rotation * (w0 - a) / (1.0 - np.conj(a) * w0)
        return self._forward_newton(nodes, seed)

    def _interior_samples(self):
        """(w, f(w)) table used to seed forward Newton solves."""
        if not hasattr(self, "_samples_cache"):
            radii = np.array([0.0, 0.3, 0.6, 0.8, 0.9, 0.96, 0.99, 1.0])
            angles = np.exp(1j * self.boundary.thetas)
            w = (radii[:, None] * angles[None, :]).ravel()
            vals = self.inverse(w)
            object.__setattr__(self, "_samples_cache", np.column_stack([w, vals]))
        return self._samples_cache


def _detect_circle(boundary):
    nodes = boundary.nodes
    c0 = np.mean(nodes)
    radii = np.abs(nodes - c0)
    r = float(np.mean(radii))
    if np.max(np.abs(radii - r)) <= CIRCLE_TOL * max(r, 1.0):
        return c0, r
    return None


def _build_exact_circle(boundary, center, c0, r):
    center = complex(center)
    if abs(c0) <= CIRCLE_TOL * max(r, 1.0) and abs(center) <= CIRCLE_TOL * max(r, 1.0):
        kind = "identity" if abs(r - 1.0) <= CIRCLE_TOL else "scale"
        phi_nodes = boundary.nodes if kind == "identity" else boundary.nodes / r
        deriv = np.ones(boundary.m) if kind == "identity" else np.full(boundary.m, 1.0 / r)
        corr = np.exp(1j * boundary.thetas) * (1.0 if kind == "identity" else r)
        return ConformalMap(
            kind=kind,
            center=0.0 + 0.0j,
            boundary=boundary,
            scale_radius=1.0 if kind == "identity" else r,
            boundary_corr=corr,
            phi_at_nodes=np.asarray(phi_nodes, dtype=complex),
            deriv_abs=deriv,
        )
    a = (center - c0) / r
    the_map = ConformalMap(
        kind="moebius",
        center=center,
        boundary=boundary,
        scale_radius=r,
        circle_center=complex(c0),
        mobius_a=complex(a),
    )
    phi_nodes = the_map._forward_exact(boundary.nodes)
    u = (boundary.nodes - c0) / r
    deriv = np.abs((1.0 - abs(a) ** 2) / (1.0 - np.conj(a) * u) ** 2) / r
    corr = the_map.inverse(np.exp(1j * boundary.thetas))
    return ConformalMap(
        kind="moebius",
        center=center,
        boundary=boundary,
        scale_radius=r,
        circle_center=complex(c0),
        mobius_a=complex(a),
        boundary_corr=np.asarray(corr, dtype=complex),
        phi_at_nodes=np.asarray(phi_nodes, dtype=complex),
        deriv_abs=np.asarray(deriv, dtype=float),
    )


def _pad_spectrum(spec, target):
    """Zero-pad an FFT spectrum to a longer grid (trig interpolation)."""
    m = spec.size
    centered = np.fft.fftshift(spec)
    out = np.zeros(target, dtype=complex)
    lo = (target - m) // 2
    out[lo : lo + m] = centered
    return np.fft.ifftshift(out)


def _polar_spline(boundary, center, pad=8):
    """Spline evaluators (log R, dlog R/dpsi) of the polar radius about center.

    The curve is upsampled through its trigonometric interpolant (FFT
    zero padding), which clusters samples where the parametrization
    does; the log-radius is then splined against the unwrapped polar
    angle with periodic overlap margins.
    """
    gamma = boundary.nodes - center
    m = gamma.size
    fine = np.fft.ifft(_pad_spectrum(np.fft.fft(gamma), pad * m)) * pad
    psi = np.unwrap(np.angle(fine))
    if psi[-1] <= psi[0] or np.any(np.diff(psi) <= 0.0):
        # under-resolved interpolants of near-corner curves can wiggle;
        # refinement resolves them, genuine flats are rejected earlier
        raise MapConvergenceError("polar angle not monotone about the center at this resolution")
    logr = np.log(np.abs(fine))
    margin = 4 * pad
    x = np.r_[psi[-margin:] - 2.0 * np.pi, psi, psi[:margin] + 2.0 * np.pi]
    y = np.r_[logr[-margin:], logr, logr[:margin]]
    spline = CubicSpline(x, y)
    spline_deriv = spline.derivative()
    base = psi[0]

    def log_r(t):
        return spline(base + np.mod(t - base, 2.0 * np.pi))

    def log_r_deriv(t):
        return spline_deriv(base + np.mod(t - base, 2.0 * np.pi))

    return log_r, log_r_deriv


def _solve_correspondence_adaptive(m0, log_r, log_r_deriv, tail_target=1e-9, max_modes=16384):
    """Correspondence psi(theta) with continuation and grid escalation interleaved.

    Fast path: damped fixed-point iteration (a contraction for mild
    radius variation).  Slivers and near-corners fold the discrete fixed
    point or send the iteration into a limit cycle; the fallback is a
    Newton corrector (Jacobian applied spectrally, solved by GMRES)
    line-searched inside the orientation-preserving cone, continued in a
    homotopy that scales the radius variation.  Whenever progress stops,
    the grid doubles and the partial solution is interpolated across.

    Crowding of interior maps of extreme slivers is exponential in the
    aspect ratio, so a hopeless case would otherwise burn minutes; the
    Newton budget caps the total corrector work before giving up.

    Returns (psi, iteration count); psi.size is the accepted grid.
    """
    from scipy.sparse.linalg import LinearOperator, gmres

    count = [0]
    matvecs = [0]
    solve_found = [False]
    hard_budget = 24000  # absolute corrector cap (hopeless slivers)
    soft_budget = 4000  # once any full solve exists, stop chasing the tail

    def budget_left():
        return matvecs[0] < (soft_budget if solve_found[0] else hard_budget)

    def is_monotone(values):
        return bool(np.all(np.diff(np.r_[values, values[0] + 2.0 * np.pi]) > 0.0))

    def residual_of(thetas, values, scale):
        return float(
            np.max(np.abs(thetas + _conjugate_series(scale * log_r(values)) - values))
        )

    def picard(thetas, start):
        psi = start.copy()
        limit = max(MAX_ITERATIONS, min(thetas.size, 1500))
        residual = np.inf
        for it in range(1, limit + 1):
            count[0] += 1
            update = thetas + _conjugate_series(log_r(psi)) - psi
            residual = float(np.max(np.abs(update)))
            if residual <= CORRESPONDENCE_TOL:
                break
            psi = psi + DAMPING * update
            # cycling or crawling: hand over to the Newton corrector
            if (it == 600 and residual > 1e-4) or (it == 1200 and residual > 1e-8):
                break
        return psi, residual

    def newton(thetas, start, scale, steps=30):
        m = thetas.size
        current = start.copy()
        for _ in range(steps):
            if not budget_left():
                return current, False
            count[0] += 1
            f_val = current - thetas - _conjugate_series(scale * log_r(current))
            res = float(np.max(np.abs(f_val)))
            if res <= CORRESPONDENCE_TOL and is_monotone(current):
                return current, True
            deriv = scale * log_r_deriv(current)

            def matvec(x):
                matvecs[0] += 1
                return x - _conjugate_series(deriv * np.asarray(x, dtype=float))

            op = LinearOperator((m, m), matvec=matvec)
            step, info = gmres(op, -f_val, rtol=1e-12, atol=0.0, maxiter=200)
            if info != 0:
                return current, False
            eta = 1.0
            accepted = False
            while eta > 1e-4:
                trial = current + eta * step
                if is_monotone(trial) and residual_of(thetas, trial, scale) < (1.0 - 0.25 * eta) * res:
                    current = trial
                    accepted = True
                    break
                eta *= 0.5
            if not accepted:
                return current, False
        return (
            current,
            residual_of(thetas, current, scale) <= CORRESPONDENCE_TOL and is_monotone(current),
        )

    def tail_of(psi):
        vals = np.exp(log_r(psi) + 1j * psi)
        spec = np.abs(np.fft.fft(vals)) / psi.size
        half = psi.size // 2
        return float(np.max(spec[half + 1 :]) / max(np.max(spec), 1e-300))

    def onto(values, old_thetas, new_thetas):
        return np.interp(
            new_thetas,
            np.r_[old_thetas, 2.0 * np.pi],
            np.r_[values, values[0] + 2.0 * np.pi],
        )

    grid = int(m0)
    warm = None  # (thetas, psi) of the last full solve
    partial = None  # (thetas, psi, s) homotopy progress
    best = None  # (tail, psi)
    while grid <= max(int(max_modes), int(m0)) and budget_left():
        thetas = 2.0 * np.pi * np.arange(grid) / grid
        solved = None
        start = onto(warm[1], warm[0], thetas) if warm is not None else thetas.copy()
        psi_p, res_p = picard(thetas, start)
        if res_p <= CORRESPONDENCE_TOL and is_monotone(psi_p):
            solved = psi_p
        if solved is None:
            candidates = [psi_p] if is_monotone(psi_p) else []
            if warm is not None:
                candidates.append(start)
            for cand in candidates:
                sol, ok = newton(thetas, cand, 1.0)
                if ok:
                    solved = sol
                    break
        if solved is None:
            if partial is not None:
                s = partial[2]
                cur = onto(partial[1], partial[0], thetas)
            else:
                s = 0.0
                cur = thetas.copy()
            ds = 0.1
            while s < 1.0 - 1e-12 and ds >= 0.005:
                s_try = min(1.0, s + ds)
                sol, ok = newton(thetas, cur, s_try)
                if ok:
                    cur, s = sol, s_try
                    ds = min(0.2, 1.6 * ds)
                else:
                    ds *= 0.5
            if s >= 1.0 - 1e-12:
                solved = cur
            else:
                partial = (thetas, cur, s)
        if solved is not None:
            solve_found[0] = True
            tail = tail_of(solved)
            if best is None or tail < best[0]:
                best = (tail, solved)
            if tail <= tail_target:
                break
            warm = (thetas, solved)
        grid *= 2
    if best is None:
        detail = f" (homotopy reached s={partial[2]:.2f})" if partial is not None else ""
        exc = MapConvergenceError(
            f"correspondence not solved up to {max_modes} modes{detail}"
        )
        # crowding is a property of the domain, not of the curve sample:
        # re-sweeping the boundary finer will not help
        exc.hopeless = True
        raise exc
    return best[1], count[0]


def _polygon_centroid(nodes):
    x, y = nodes.real, nodes.imag
    xn, yn = np.roll(x, -1), np.roll(y, -1)
    cross = x * yn - xn * y
    area = 0.5 * np.sum(cross)
    return complex(np.sum((x + xn) * cross), np.sum((y + yn) * cross)) / (6.0 * area)


def _build_numeric(boundary, center, tail_target=1e-9, max_modes=16384):
    """Numeric map with the correspondence grid escalated independently.

    The boundary curve is usually resolved long before the map is: the
    correspondence crowds near elongations and near-corners, so the
    conjugation grid M doubles (reusing the same polar spline) until the
    recovered series tail clears the target or the cap is reached.

    The solve runs about a deep interior point (the area centroid when
    the requested center hugs the boundary, which wrecks the radius
    variation); a disk automorphism then restores phi(center) = 0 and
    phi'(center) > 0 exactly, so the requested normalization always
    holds regardless of the solve center.
    """
    m = boundary.m
    center = complex(center)
    centroid = _polygon_centroid(boundary.nodes)
    depth_requested = _distance_to_polyline(center, boundary.nodes)
    depth_centroid = _distance_to_polyline(centroid, boundary.nodes)
    solve_center = centroid if depth_centroid > 1.2 * depth_requested else center
    log_r, log_r_deriv = _polar_spline(boundary, solve_center)
    psi, iterations = _solve_correspondence_adaptive(
        m, log_r, log_r_deriv, tail_target=tail_target, max_modes=max_modes
    )
    corr0 = solve_center + np.exp(log_r(psi) + 1j * psi)
    spec = _fourier_coeffs(corr0 - solve_center)
    half = psi.size // 2
    tail = float(np.max(np.abs(spec[half + 1 :]))) / max(
        float(np.max(np.abs(spec))), 1e-300
    )
    taylor = spec[: half + 1].copy()
    taylor[0] += solve_center
    base_map = ConformalMap(
        kind="numeric",
        center=solve_center,
        boundary=boundary,
        solve_center=solve_center,
        taylor=taylor,
        psi=psi,
        analyticity_residual=tail,
        iterations=iterations,
    )
    # gauge: a = phi0(center), rotation makes phi'(center) real positive
    if abs(center - solve_center) < 1e-14:
        a = 0.0 + 0.0j
    else:
        a = complex(base_map.forward_unchecked(center))
    u = 1.0 / (complex(base_map._inverse_deriv(a)) * (1.0 - abs(a) ** 2))
    rotation = complex(np.conj(u) / abs(u))
    grid_thetas = 2.0 * np.pi * np.arange(psi.size) / psi.size
    v = np.exp(1j * grid_thetas) * np.conj(rotation)
    corr = np.polynomial.polynomial.polyval((v + a) / (1.0 + np.conj(a) * v), taylor)
    the_map = ConformalMap(
        kind="numeric",
        center=center,
        boundary=boundary,
        solve_center=solve_center,
        mobius_a=a,
        rotation=rotation,
        taylor=taylor,
        boundary_corr=corr,
        psi=psi,
        analyticity_residual=tail,
        iterations=iterations,
    )
    phi_nodes = the_map.boundary_values(boundary.nodes)
    deriv = 1.0 / np.abs(the_map._inverse_deriv(phi_nodes))
    return ConformalMap(
        kind="numeric",
        center=center,
        boundary=boundary,
        solve_center=solve_center,
        mobius_a=a,
        rotation=rotation,
        taylor=taylor,
        boundary_corr=corr,
        psi=psi,
        phi_at_nodes=phi_nodes,
        deriv_abs=deriv,
        analyticity_residual=tail,
        iterations=iterations,
    )


def build_map(boundary, center=None, kind="auto"):
    """Construct the map of the boundary's interior onto the unit disk.

    kind: 'auto' routes circles to exact maps and everything else to the
    numeric solver; 'identity' and 'scale:<r>' bypass construction
    entirely (bit-exact routing for benchmark domains).
    """
    if kind == "identity":
        return ConformalMap(
            kind="identity",
            center=0.0 + 0.0j,
            boundary=boundary,
            boundary_corr=np.exp(1j * boundary.thetas),
            phi_at_nodes=boundary.nodes.astype(complex),
            deriv_abs=np.ones(boundary.m),
        )
    if isinstance(kind, str) and kind.startswith("scale:"):
        r = float(kind.split(":", 1)[1])
        return ConformalMap(
            kind="scale",
            center=0.0 + 0.0j,
            boundary=boundary,
            scale_radius=r,
            boundary_corr=r * np.exp(1j * boundary.thetas),
            phi_at_nodes=boundary.nodes.astype(complex) / r,
            deriv_abs=np.full(boundary.m, 1.0 / r),
        )
    if kind != "auto":
        raise ValueError(f"unknown map kind {kind!r}")
    if center is None:
        center = complex(np.mean(boundary.nodes))
    if not boundary.strictly_convex:
        raise FlatBoundary("boundary has flat segments or corners; supply a map override")
    if not _point_in_polygon(complex(center), boundary.nodes):
        raise CenterOutside(f"center {center} is not interior")
    circle = _detect_circle(boundary)
    if circle is not None:
        return _build_exact_circle(boundary, center, *circle)
    return _build_numeric(boundary, center)


def range_map(a, m=256, center=None, kind="auto", tail_tol=1e-9, modulus_tol=1e-7, max_m=4096):
    """Numerical-range boundary plus conformal map, refined until resolved.

    Crowded correspondences (elongated ranges, near-corners from close
    eigenvalue crossings) push genuine spectral content of the map past
    the grid Nyquist mode, and can even fold the discrete fixed point;
    the sweep is cheap, so the node count doubles until the recovered
    series tail and boundary modulus clear their thresholds (or max_m is
    hit, with the achieved quality left in the map metadata).

    Returns (boundary, map).  Exact-kind routing never refines.
    """
    from .numerical_range import range_boundary

    a = np.asarray(a, dtype=complex)
    if center is None:
        center = complex(np.trace(a) / a.shape[0])
    current = int(m)
    last_error = None
    while True:
        boundary = range_boundary(a, current)
        try:
            the_map = build_map(boundary, center=center, kind=kind)
        except MapConvergenceError as exc:
            if getattr(exc, "hopeless", False) or current * 2 > max_m:
                raise
            last_error = exc
            current *= 2
            continue
        if the_map.kind != "numeric":
            return boundary, the_map
        modulus_err = float(np.max(np.abs(np.abs(the_map.phi_at_nodes) - 1.0)))
        if (
            the_map.analyticity_residual <= tail_tol and modulus_err <= modulus_tol
        ) or current * 2 > max_m:
            return boundary, the_map
        current *= 2


def map_interior(the_map, z):
    """Forward evaluation with the interior-margin guard."""
    return the_map.forward(z)


def boundary_derivative_abs(the_map):
    """|phi'| sampled at the domain boundary nodes."""
    return the_map.deriv_abs
