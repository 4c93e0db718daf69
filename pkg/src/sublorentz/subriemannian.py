"""Sub-Riemannian geometry of SL(2,C) with the traceless-Hermitian distribution.

Geodesics from the identity are products of two one-parameter subgroups,

  gamma(t) = exp(t(a + b)) exp(-t b),   a traceless Hermitian (|a| = 1),
                                        b skew-Hermitian traceless,

parametrized here by (alpha_vec, beta_vec) = coordinates of a and b.  The
distance from the identity to a positive definite Hermitian target exp(X) is
exactly |X| (one-parameter subgroups tangent to the distribution are metric
lines); the projection to hyperbolic 3-space never increases distance, which
yields the certified lower bound ln(lambda_max(g g*)).  For general targets
the distance is bracketed: hyperbolic lower bound below, best shooting
solution above.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import least_squares, minimize, root

from .algebra import AlgCoords, Mat2C, from_coords
from .expmap import (
    ProductExpParams,
    exp_series,
    polar_decompose,
    su2_exp,
    aligning_rotation,
)

_I2 = np.eye(2, dtype=complex)


@dataclass(frozen=True, eq=False)
class SRGeodesicParams:
    """Geodesic constants: unit alpha_vec in H0 coordinates, free beta_vec in su(2)."""

    alpha_vec: np.ndarray
    beta_vec: np.ndarray

    def __post_init__(self):
        a = np.asarray(self.alpha_vec, dtype=float)
        b = np.asarray(self.beta_vec, dtype=float)
        if a.shape != (3,) or b.shape != (3,):
            raise ValueError("alpha_vec and beta_vec must be 3-vectors")
        if not (np.all(np.isfinite(a)) and np.all(np.isfinite(b))):
            raise ValueError("parameters must be finite")
        if abs(np.dot(a, a) - 1.0) > 1e-12:
            raise ValueError(
                "alpha_vec must be a unit vector: |alpha|^2 - 1 = "
                f"{np.dot(a, a) - 1.0:.3e} exceeds 1e-12"
            )
        a = a.copy(); a.setflags(write=False)
        b = b.copy(); b.setflags(write=False)
        object.__setattr__(self, "alpha_vec", a)
        object.__setattr__(self, "beta_vec", b)

    @classmethod
    def normalized(cls, alpha_vec, beta_vec) -> "SRGeodesicParams":
        """Construct with alpha_vec rescaled to unit length (rejects the zero vector)."""
        a = np.asarray(alpha_vec, dtype=float)
        n = np.linalg.norm(a)
        if n == 0.0:
            raise ValueError("alpha_vec must be nonzero")
        return cls(a / n, np.asarray(beta_vec, dtype=float))

    @property
    def beta(self) -> float:
        return float(np.linalg.norm(self.beta_vec))

    def product_params(self) -> ProductExpParams:
        return ProductExpParams(np.concatenate([[0.0], self.alpha_vec, self.beta_vec]))

    def to_json(self) -> dict:
        return {
            "alpha": [float(x) for x in self.alpha_vec],
            "beta": [float(x) for x in self.beta_vec],
        }


def sr_geodesic(p: SRGeodesicParams, t: float) -> Mat2C:
    """Geodesic point at time t via the closed-form coefficients."""
    return p.product_params().point(t)


def sr_geodesic_two_factor(p: SRGeodesicParams, t: float) -> Mat2C:
    """Independent evaluation as an explicit product of two exponentials."""
    return p.product_params().point_two_factor(t)


def sr_geodesic_control(p: SRGeodesicParams, t: float) -> AlgCoords:
    """Left-logarithmic derivative of the geodesic: the rotated alpha_vec in H0."""
    b = p.beta
    if b == 0.0:
        v = p.alpha_vec
    else:
        from .expmap import axis_angle_rotation

        v = axis_angle_rotation(p.beta_vec / b, t * b) @ p.alpha_vec
    u = np.zeros(8)
    u[1:4] = v
    return AlgCoords(u)


def boost_distance(x: AlgCoords, tol: float = 1e-10) -> float:
    """Distance from the identity to exp(x) for traceless Hermitian x: exactly |x|."""
    if not x.in_H0(tol):
        raise ValueError("boost_distance requires coordinates in H0")
    return float(np.linalg.norm(x.u[1:4]))


def _require_unimodular(g1: Mat2C, tol: float = 1e-9) -> None:
    d = g1.det()
    if abs(d - 1.0) > tol:
        raise ValueError(f"target must be unimodular, det = {d}")


def distance_lower_bound(g1: Mat2C) -> float:
    """Certified lower bound ln(lambda_max(g1 g1*)): hyperbolic distance of the projection.

    Exact on positive definite Hermitian targets, degenerate (zero) on the
    unitary fiber through the identity.
    """
    _require_unimodular(g1)
    q = g1.m @ g1.m.conj().T
    tau = float((q[0, 0] + q[1, 1]).real) / 2.0  # det(q) = 1, eigenvalues lam, 1/lam
    tau = max(tau, 1.0)
    return math.log(tau + math.sqrt(max(tau * tau - 1.0, 0.0)))


def cut_bound(beta: float) -> float:
    """Time 2*pi/sqrt(beta^2 - 1) past which the orthogonal family stops minimizing."""
    if not beta > 1.0:
        raise ValueError("cut_bound requires beta > 1")
    try:
        return 2.0 * math.pi / math.sqrt(beta * beta - 1.0)
    except (OverflowError, ZeroDivisionError):
        return math.inf


@dataclass(frozen=True)
class GeodesicWitness:
    """Shooting witness: geodesic parameters and the time realizing the upper bound."""

    params: SRGeodesicParams
    T: float
    residual: float | None = None

    def to_json(self) -> dict:
        d = self.params.to_json()
        d["T"] = float(self.T)
        return d

    @classmethod
    def from_json(cls, d: dict) -> "GeodesicWitness":
        return cls(
            SRGeodesicParams(np.array(d["alpha"], float), np.array(d["beta"], float)),
            float(d["T"]),
        )


@dataclass(frozen=True)
class DistanceBracket:
    """Two-sided estimate of the sub-Riemannian distance from the identity.

    `lower <= upper` always; `converged` means the bracket width is within the
    requested tolerance.  `near_optimal` lists every feasible candidate found
    within tolerance of the best time (no completeness claim).
    """

    lower: float
    upper: float
    converged: bool
    witness: GeodesicWitness | None
    near_optimal: tuple = field(default=(), compare=False)

    def __post_init__(self):
        if self.upper < self.lower - 1e-12:
            raise ValueError("bracket must satisfy lower <= upper")

    @property
    def width(self) -> float:
        return self.upper - self.lower

    def to_json(self) -> dict:
        return {
            "lower": float(self.lower),
            "upper": float(self.upper) if math.isfinite(self.upper) else "inf",
            "converged": bool(self.converged),
            "witness": self.witness.to_json() if self.witness is not None else None,
        }

    @classmethod
    def from_json(cls, d: dict) -> "DistanceBracket":
        upper = d["upper"]
        upper = math.inf if upper == "inf" else float(upper)
        w = d.get("witness")
        return cls(
            float(d["lower"]),
            upper,
            bool(d["converged"]),
            GeodesicWitness.from_json(w) if w is not None else None,
        )


def _su2_coords(S: np.ndarray) -> np.ndarray:
    """Coordinates (c1,c2,c3) of a traceless skew-Hermitian matrix over e_4..e_6."""
    return np.array(
        [
            (S[0, 1] + S[1, 0]).imag,
            (S[1, 0] - S[0, 1]).real,
            (S[0, 0] - S[1, 1]).imag,
        ]
    )


def _h0_coords(Hm: np.ndarray) -> np.ndarray:
    """Coordinates (x1,x2,x3) of a traceless Hermitian matrix over e_1..e_3."""
    return np.array(
        [
            (Hm[0, 1] + Hm[1, 0]).real,
            (Hm[0, 1] - Hm[1, 0]).imag,
            (Hm[0, 0] - Hm[1, 1]).real,
        ]
    )


def _log_sl2(M: np.ndarray, branch: int) -> np.ndarray | None:
    """Traceless logarithm of a unimodular matrix on the given eigenvalue branch.

    Branch k shifts the eigenvalue logs by +-2 pi i k.  Near-degenerate
    eigenvalues fall back to the principal branch via scipy and reject k != 0.
    """
    tr = M[0, 0] + M[1, 1]
    disc = np.sqrt(complex(tr * tr / 4.0 - 1.0))
    mu_p = tr / 2.0 + disc
    mu_m = tr / 2.0 - disc
    if abs(mu_p) < abs(mu_m):
        mu_p, mu_m = mu_m, mu_p
    if abs(mu_p - mu_m) < 1e-8:
        if branch != 0:
            return None
        from scipy.linalg import logm

        L = logm(np.asarray(M))
        return L - (np.trace(L) / 2.0) * _I2
    proj = (M - mu_m * _I2) / (mu_p - mu_m)
    l_p = np.log(mu_p) + 2j * math.pi * branch
    return l_p * (2.0 * proj - _I2)


def _candidate_from_root(g1m: np.ndarray, c: np.ndarray, branch: int):
    """Turn a fixed-point root c into (T, alpha_vec, beta_vec, residual)."""
    L = _log_sl2(g1m @ su2_exp(c).m, branch)
    if L is None:
        return None
    v = _h0_coords((L + L.conj().T) / 2.0)
    T = float(np.linalg.norm(v))
    if T < 1e-12:
        return None
    av = v / T
    bv = c / T
    p = SRGeodesicParams(av, bv)
    res = float(np.max(np.abs(sr_geodesic(p, T).m - g1m)))
    return T, av, bv, res


def _shooting_starts(rng: np.random.Generator, n: int, scale: float) -> list[np.ndarray]:
    starts = [np.zeros(3)]
    mags = np.linspace(0.15, scale, max(n, 1))
    for k in range(n):
        d = rng.normal(size=3)
        d /= np.linalg.norm(d)
        starts.append(mags[k] * d)
    return starts


def distance_shoot(
    g1: Mat2C,
    tol: float = 1e-7,
    budget: int = 240,
    seed: int = 0,
    beta_cap: float = 8.0,
    t_cap: float | None = None,
) -> DistanceBracket:
    """Bracket the distance from the identity to a unimodular target.

    Strategy: positive definite Hermitian targets (rotation factor of the
    polar decomposition within 1e-10 of I) are exact; otherwise candidate
    geodesics are recovered by solving the 3-dimensional fixed-point equation

        skew_part( log( g1 exp(c) ) ) = c

    over seeded multistarts and logarithm branches, each root giving a
    geodesic hitting g1 exactly at time T = |hermitian_part(log(g1 exp(c)))|.
    Feasible candidates (endpoint residual < tol) are minimized over T; the
    lower end is the hyperbolic projection bound.  Candidates in the
    orthogonal regime (beta > 1, alpha.beta = 0) running past the cut time,
    or beyond the beta/T caps, are provably non-minimal and only used if
    nothing else is found.  Deterministic for a fixed seed.
    """
    _require_unimodular(g1)
    if tol <= 0:
        raise ValueError("tol must be positive")
    lower = distance_lower_bound(g1)

    if float(np.max(np.abs(g1.m - _I2))) <= 1e-12:
        return DistanceBracket(0.0, 0.0, True, None)

    pd = polar_decompose(g1)
    if pd.rotation.distance(Mat2C.identity()) <= 1e-10:
        # Boost target: the one-parameter subgroup through it is a metric line.
        x = pd.boost.u[1:4]
        T = float(np.linalg.norm(x))
        witness = GeodesicWitness(
            SRGeodesicParams(x / T if T > 0 else np.array([1.0, 0.0, 0.0]), np.zeros(3)),
            T,
            residual=float(np.max(np.abs(sr_geodesic(SRGeodesicParams(
                x / T if T > 0 else np.array([1.0, 0.0, 0.0]), np.zeros(3)), T).m - g1.m))),
        )
        return DistanceBracket(lower, max(T, lower), True, witness, (witness,))

    if t_cap is None:
        t_cap = lower + 10.0
    rng = np.random.default_rng(seed)
    branches = (0, 1, -1, 2, -2, 3, -3)
    n_starts = max(4, budget // len(branches))
    starts = _shooting_starts(rng, n_starts - 1, min(13.0, beta_cap * 1.7))
    g1m = g1.m

    feasible: list[tuple] = []
    pruned: list[tuple] = []
    near_misses: list[tuple] = []
    attempts = 0
    seen_roots: set = set()

    def classify_candidate(cand):
        T, av, bv, res = cand
        if res >= tol:
            near_misses.append(cand)
            return
        beta = float(np.linalg.norm(bv))
        orthogonal_cut = (
            beta > 1.0 + 1e-12
            and abs(float(np.dot(av, bv))) <= 1e-9 * max(beta, 1.0)
            and T > cut_bound(beta) + 1e-9
        )
        if orthogonal_cut or beta > beta_cap or T > t_cap:
            pruned.append(cand)
        else:
            feasible.append(cand)

    for branch in branches:
        for c0 in starts:
            if attempts >= budget:
                break
            attempts += 1

            def fixed_point(c, _b=branch):
                L = _log_sl2(g1m @ su2_exp(c).m, _b)
                if L is None:
                    return np.full(3, 1e6)
                return _su2_coords((L - L.conj().T) / 2.0) - c

            sol = root(fixed_point, c0, method="hybr", tol=1e-13)
            if not sol.success:
                continue
            key = (branch,) + tuple(np.round(sol.x, 9))
            if key in seen_roots:
                continue
            seen_roots.add(key)
            cand = _candidate_from_root(g1m, sol.x, branch)
            if cand is not None:
                classify_candidate(cand)
        # A bracket already tight to tolerance cannot improve further.
        if feasible and min(f[0] for f in feasible) <= lower + tol:
            break

    # Polish stage: the fixed-point Jacobian degenerates for targets near the
    # positive definite cone, so near-miss roots (and a polar-seeded start)
    # are refined by least squares on the endpoint residual.  Skipped when the
    # bracket is already tight.
    if not (feasible and min(f[0] for f in feasible) <= lower + tol):
        near_misses.sort(key=lambda cand: (cand[3], cand[0]))
        polish_starts = [np.concatenate([T * av, T * bv]) for T, av, bv, _ in near_misses[:4]]
        x_boost = pd.boost.u[1:4]
        if float(np.linalg.norm(x_boost)) > 1e-6:
            log_k = _log_sl2(pd.rotation.m, 0)
            if log_k is not None:
                c_seed = -_su2_coords((log_k - log_k.conj().T) / 2.0)
                polish_starts.append(np.concatenate([x_boost, c_seed]))
        for x0 in polish_starts:
            polished = _polish_candidate(g1m, x0, tol)
            if polished is not None:
                classify_candidate(polished)

    if not feasible and pruned:
        feasible = pruned  # provably non-minimal, but still a valid upper bound

    if not feasible:
        return DistanceBracket(lower, math.inf, False, None)

    feasible.sort(key=lambda cand: (cand[0], tuple(cand[1]), tuple(cand[2])))
    best_T = feasible[0][0]
    near = tuple(
        GeodesicWitness(SRGeodesicParams(av, bv), T, res)
        for (T, av, bv, res) in feasible
        if T <= best_T + tol
    )
    witness = near[0]
    upper = max(best_T, lower)
    return DistanceBracket(lower, upper, upper - lower <= tol, witness, near)


def _cand_from_packed(g1m: np.ndarray, x: np.ndarray):
    v = x[:3]
    T = float(np.linalg.norm(v))
    if T < 1e-9:
        return None
    p = SRGeodesicParams(v / T, x[3:] / T)
    res = float(np.max(np.abs(sr_geodesic(p, T).m - g1m)))
    return T, v / T, x[3:] / T, res


def _polish_candidate(g1m: np.ndarray, x0: np.ndarray, tol: float):
    """Refine a packed candidate x = (T*alpha, T*beta) on the endpoint residual.

    Levenberg-Marquardt on the 8 real components of the endpoint gap, with a
    simplex fallback; returns a feasible candidate or None.
    """

    def residual_vec(x):
        v = x[:3]
        T = np.linalg.norm(v)
        if T < 1e-9:
            return np.full(8, 1e3)
        p = SRGeodesicParams(v / T, x[3:] / T)
        gap = sr_geodesic(p, float(T)).m - g1m
        return np.concatenate([gap.real.ravel(), gap.imag.ravel()])

    # Keep the solve local: a box around the seed prevents the optimizer from
    # tunnelling into a different (longer) solution basin.
    radius = 0.35 + 0.1 * float(np.linalg.norm(x0))
    try:
        sol = least_squares(residual_vec, x0, method="trf",
                            bounds=(x0 - radius, x0 + radius),
                            xtol=1e-15, ftol=1e-15, gtol=1e-15, max_nfev=400)
        cand = _cand_from_packed(g1m, sol.x)
    except Exception:
        cand = None
    if cand is not None and cand[3] < tol:
        return cand
    best = x0 if cand is None else sol.x
    sol2 = minimize(
        lambda x: float(np.max(np.abs(residual_vec(x)))),
        best,
        method="Nelder-Mead",
        options={"maxiter": 2000, "xatol": 1e-12, "fatol": 1e-15},
    )
    cand = _cand_from_packed(g1m, sol2.x)
    if cand is not None and cand[3] < tol:
        return cand
    return None


# -- Hermitian endpoints of geodesic factors ---------------------------------


@dataclass(frozen=True)
class HermiticityReport:
    """Classification of when exp(a+b) exp(-b) is Hermitian.

    x, y are the real and imaginary parts of
    (1/2) sqrt((a1+i b1)^2 + (a2+i b2)^2 + (a3+i b3)^2); 4xy equals
    alpha.beta.  `residual` is the Hermitian defect of the matrix itself,
    computed through the series oracle for cross-validation.
    """

    x: float
    y: float
    beta: float
    case: str  # collinear | cos-vanishing | proportional-triple | tangent-fixed-point | not-hermitian
    residual: float

    @property
    def hermitian(self) -> bool:
        return self.case != "not-hermitian"

    def to_json(self) -> dict:
        return {
            "x": self.x,
            "y": self.y,
            "beta": self.beta,
            "case": self.case,
            "residual": self.residual,
        }


def _osn_margins(alpha_vec, beta_vec) -> dict:
    """Decision quantities for the Hermitian-endpoint conditions.

    Evaluated in the rotated frame with alpha along the first axis (the
    conjugation is an isometry acting identically on both coordinate
    triples, so x, y, beta and all conditions are unchanged).
    """
    av = np.asarray(alpha_vec, dtype=float)
    bv = np.asarray(beta_vec, dtype=float)
    na = float(np.linalg.norm(av))
    nb = float(np.linalg.norm(bv))
    if na == 0.0 or nb == 0.0:
        raise ValueError("both vectors must be nonzero")
    _, R = aligning_rotation(av)
    a_red = R @ av  # (na, 0, 0) up to rounding
    b_red = R @ bv
    alpha = float(a_red[0])
    w_plus = 0.5 * np.sqrt(complex(alpha * alpha - nb * nb + 2j * alpha * b_red[0]))
    x, y = float(w_plus.real), float(w_plus.imag)
    half = nb / 2.0
    cross = float(np.linalg.norm(np.cross(av, bv))) / (na * nb)
    cos_half = math.cos(half)
    cos_y = math.cos(y)
    margins = {
        "x": x,
        "y": y,
        "beta": nb,
        "collinear": cross,
        "cos_half": abs(cos_half),
        "cos_y": abs(cos_y),
        "tangent": abs(math.tan(half) - half) if abs(cos_half) > 1e-12 else math.inf,
    }
    # 2x2 minors of [[x, y, beta/2], [tanh x, tan y, tan(beta/2)]];
    # meaningful only when the tangents are finite.
    if abs(cos_half) > 1e-12 and abs(cos_y) > 1e-12:
        tx, ty, tb = math.tanh(x), math.tan(y), math.tan(half)
        margins["minors"] = max(
            abs(x * ty - y * tx), abs(x * tb - half * tx), abs(y * tb - half * ty)
        )
    else:
        margins["minors"] = math.inf
    return margins


def hermitian_endpoint_check(alpha_vec, beta_vec, tol: float = 1e-9) -> HermiticityReport:
    """Decide whether exp(a+b) exp(-b) is Hermitian, and which condition applies.

    Exactly one of four regimes makes the endpoint Hermitian: collinear
    vectors; x = cos(beta/2) = cos(y) = 0; proportional triples
    (x, y, beta/2) ~ (tanh x, tan y, tan(beta/2)) with both cosines nonzero
    (tested as vanishing 2x2 minors); or x = y = 0 with tan(beta/2) = beta/2.
    The returned residual is the series-oracle Hermitian defect of the
    endpoint matrix.
    """
    av = np.asarray(alpha_vec, dtype=float)
    bv = np.asarray(beta_vec, dtype=float)
    m = _osn_margins(av, bv)
    x, y = m["x"], m["y"]

    a_mat = from_coords(np.concatenate([[0.0], av, np.zeros(3)]))
    b_mat = from_coords(np.concatenate([[0.0], np.zeros(3), bv]))
    endpoint = exp_series(a_mat + b_mat).m @ exp_series(-1 * b_mat).m
    defect = float(np.linalg.norm(endpoint - endpoint.conj().T))

    # The paired x, y satisfy 4xy = alpha.beta identically; guard the frame math.
    assert abs(4.0 * x * y - float(np.dot(av, bv))) <= 1e-10 * max(
        1.0, abs(float(np.dot(av, bv)))
    )

    if m["collinear"] <= tol:
        case = "collinear"
    elif abs(x) <= tol and abs(y) <= tol:
        case = "tangent-fixed-point" if m["tangent"] <= tol else "not-hermitian"
    elif abs(x) <= tol and m["cos_half"] <= tol and m["cos_y"] <= tol:
        case = "cos-vanishing"
    elif m["cos_half"] > tol and m["cos_y"] > tol and m["minors"] <= tol:
        case = "proportional-triple"
    else:
        case = "not-hermitian"
    return HermiticityReport(x, y, m["beta"], case, defect)
