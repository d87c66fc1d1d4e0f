"""Exact truncated series for the type-refined Catalan system.

The refined system reads, coefficientwise,

    c_t(0) = [t = empty],
    c_t(n) = sum over (t1,t2) with H(t1,t2)=t, sum over m,
             c_{t1}(m) * c_{t2}(n-1-m),

and summing over t recovers the Catalan convolution, so conservation
Sigma_t c_t(n) = Cat_n is the pipeline's fundamental sanity check.

Coefficients are astronomically large (Cat_n ~ 4^n), so the engine runs
one convolution pass in two synchronized lanes:

- a scaled float lane d_t(n) = c_t(n) / 4^n, good to ~1e-12 relative,
  which feeds every estimator and spectral evaluation,
- a battery of 16-bit prime residue lanes whose product exceeds the
  largest coefficient; Chinese-remainder reconstruction then yields the
  exact integers on demand.

Residue arithmetic is done in float64 matrix products, which is exact
here: residues are < 2^16, so products are < 2^32 and inner sums over a
half-range of at most N terms stay below 2^45 << 2^53; sums are reduced
mod p before the (at most |T|^2-term) fiber aggregation, which therefore
stays below 2^30.  Every step is integer-valued and representable, so
the BLAS path computes the same integers big-number arithmetic would.

The per-step product uses the symmetric half-range split: with s = n-1,
E[a,b] = sum_m c_a(m) c_b(s-m) equals G + G^T (+ a middle outer product
for even s) where G only sums m < (s+1)//2.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np
from scipy.special import zeta as _hurwitz_zeta

from .perms import catalan
from .typesystem import TypeSystem, _sccs


class InsufficientSupportError(ValueError):
    """Too few nonzero coefficients to fit a growth rate."""


# ---------- primes and CRT plumbing ----------


def _primes_below_2_16():
    sieve = np.ones(65536, dtype=bool)
    sieve[:2] = False
    for p in range(2, 256):
        if sieve[p]:
            sieve[p * p :: p] = False
    return np.nonzero(sieve)[0][::-1]  # descending


def _pick_primes(bits_needed: int) -> np.ndarray:
    primes = _primes_below_2_16()
    acc = 0.0
    for i, p in enumerate(primes):
        acc += math.log2(float(p))
        if acc >= bits_needed:
            return primes[: i + 1].astype(np.int64)
    raise ValueError(f"cannot cover {bits_needed} bits with 16-bit primes")


class _CRT:
    """Vectorized Chinese-remainder reconstruction.

    Values come back as sum_i a_i * w_i mod M with w_i = (M/p_i) * inv_i.
    The w_i are stored as base-2^16 limb rows; a batch of residue vectors
    then reconstructs via one float64 matrix product (entries < 2^16,
    sums < 2^40: exact), followed by vectorized carry propagation.
    """

    def __init__(self, primes: np.ndarray):
        self.primes = primes
        M = 1
        for p in primes.tolist():
            M *= int(p)
        self.M = M
        nl = (M.bit_length() + 15) // 16
        self.nlimbs = nl + 4  # headroom for pre-reduction carries
        W = np.zeros((len(primes), self.nlimbs), dtype=np.float64)
        for i, p in enumerate(primes.tolist()):
            q = M // int(p)
            w = q * pow(q % int(p), int(p) - 2, int(p))
            limbs = w.to_bytes(self.nlimbs * 2, "little")
            W[i] = np.frombuffer(limbs, dtype="<u2").astype(np.float64)
        self.W = W

    def reconstruct(self, residues: np.ndarray) -> list:
        """(rows, P) residue array -> list of exact ints (one per row)."""
        rows = np.ascontiguousarray(residues, dtype=np.float64)
        S = rows @ self.W  # limb sums, < P * 2^16 * 2^16 < 2^41
        S = S.astype(np.uint64)
        while True:
            carry = S >> np.uint64(16)
            if not carry.any():
                break
            S &= np.uint64(0xFFFF)
            S[:, 1:] += carry[:, :-1]
            if carry[:, -1].any():
                raise AssertionError("limb headroom exhausted")
        packed = S.astype("<u2").tobytes()
        step = self.nlimbs * 2
        return [
            int.from_bytes(packed[i * step : (i + 1) * step], "little") % self.M
            for i in range(S.shape[0])
        ]


# ---------- the coefficient table ----------


def _scaled_catalan(N: int) -> np.ndarray:
    # dcat[n] = Cat_n / 4^n, by the multiplicative recurrence
    out = np.empty(N + 1)
    out[0] = 1.0
    for n in range(N):
        out[n + 1] = out[n] * (2.0 * (2 * n + 1)) / (4.0 * (n + 2))
    return out


@dataclass
class CoeffTable:
    k: int
    N: int
    d: np.ndarray  # (T, N+1) scaled lane, d[t, n] = c_t(n) / 4^n
    res: np.ndarray | None  # (P, T, N+1) uint16 residues, exact lane
    primes: np.ndarray | None
    dcat: np.ndarray  # (N+1,) Cat_n / 4^n

    _crt_cache: _CRT | None = None

    @property
    def exact(self) -> bool:
        return self.res is not None

    @property
    def ntypes(self) -> int:
        return self.d.shape[0]

    def _crt(self) -> _CRT:
        if not self.exact:
            raise ValueError("exact queries need a table built with exact=True")
        if self._crt_cache is None:
            self._crt_cache = _CRT(self.primes)
        return self._crt_cache

    def coeff(self, t: int, n: int) -> int:
        """Exact c_t(n)."""
        return self.coeff_block([(t, n)])[0]

    def coeff_block(self, pairs) -> list:
        crt = self._crt()
        rows = np.stack([self.res[:, t, n] for t, n in pairs])
        return crt.reconstruct(rows)

    def sum_coeff(self, n: int) -> int:
        """Exact Sigma_t c_t(n)."""
        crt = self._crt()
        rs = self.res[:, :, n].astype(np.int64).sum(axis=1) % self.primes
        return crt.reconstruct(rs[None, :])[0]

    def support(self, t: int) -> np.ndarray:
        """Indices n with c_t(n) != 0."""
        if self.exact:
            mask = (self.res[:, t, :] != 0).any(axis=0)
        else:
            mask = self.d[t] > 0.0
        return np.nonzero(mask)[0]

    def lam(self, t: int, n: int) -> float:
        """c_t(n) / Cat_n from the scaled lane."""
        return float(self.d[t, n] / self.dcat[n])


def compute_coefficients(
    ts: TypeSystem, N: int, *, exact: bool = True, margin_bits: int = 64
) -> CoeffTable:
    """Run the refined convolution to order N.

    With ``exact=True`` (the default) residue lanes cover every
    coefficient up to Cat_N with ``margin_bits`` to spare and exact
    integers are available; ``exact=False`` keeps only the scaled float
    lane, which is enough for estimators and spectral work and much
    faster at large N when |T| is big.
    """
    T = ts.ntypes
    if exact:
        bits = catalan(N).bit_length() + margin_bits
        primes = _pick_primes(bits)
    else:
        primes = np.zeros(0, dtype=np.int64)
    P = len(primes)
    S = P + 1  # slot 0 is the scaled float lane

    # group the T^2 composition fibers by target type for the scatter
    H = np.array(ts.H, dtype=np.int64)
    flat = H.reshape(-1)
    order = np.argsort(flat, kind="stable")
    grouped = flat[order]
    starts = np.nonzero(np.r_[True, grouped[1:] != grouped[:-1]])[0]
    targets = grouped[starts]

    pvec = primes.astype(np.float64)[:, None, None] if P else None
    pinv = 1.0 / pvec if P else None

    # two layouts of the same lanes: Dm for the left factor, column n
    # holds slot values at n; R for the right factor, row N-n holds n
    # (so the reversed windows needed by the half-range product are
    # contiguous ascending slices)
    Dm = np.zeros((S, T, N + 1))
    R = np.zeros((S, N + 1, T))
    e = ts.empty_type
    Dm[:, e, 0] = 1.0
    R[:, N, e] = 1.0

    G = np.empty((S, T, T))
    E = np.empty((S, T, T))
    Q = np.empty((P, T, T))
    gathered = np.empty((S, T * T))
    out = np.empty((S, T))

    def _reduce(X, Qb, pv, piv):
        # X mod pv in place via multiply/floor; float q can be off by
        # one in either direction, two conditional passes repair it
        np.multiply(X, piv, out=Qb)
        np.floor(Qb, out=Qb)
        np.multiply(Qb, pv, out=Qb)
        np.subtract(X, Qb, out=X)
        np.add(X, pv, out=X, where=X < 0.0)
        np.subtract(X, pv, out=X, where=X >= pv)

    for n in range(1, N + 1):
        s = n - 1
        L = (s + 1) // 2
        if L:
            np.matmul(Dm[:, :, :L], R[:, N - s : N - s + L, :], out=G)
        else:
            G[:] = 0.0
        np.add(G, G.transpose(0, 2, 1), out=E)
        if s % 2 == 0:
            mid = Dm[:, :, s // 2]
            E += mid[:, :, None] * mid[:, None, :]
        if P:
            _reduce(E[1:], Q, pvec, pinv)
        np.take(E.reshape(S, T * T), order, axis=1, out=gathered)
        agg = np.add.reduceat(gathered, starts, axis=1)
        out[:] = 0.0
        out[:, targets] = agg
        if P:
            _reduce(out[1:], Q[:, :, 0], pvec[:, :, 0], pinv[:, :, 0])
        out[0] *= 0.25
        Dm[:, :, n] = out
        R[:, N - n, :] = out

    res = None
    if P:
        res = np.ascontiguousarray(Dm[1:]).astype(np.uint16)
    table = CoeffTable(
        k=ts.k,
        N=N,
        d=np.ascontiguousarray(Dm[0]),
        res=res,
        primes=primes if P else None,
        dcat=_scaled_catalan(N),
    )
    del Dm, R
    return table


# ---------- conservation ----------


def verify_conservation(ts: TypeSystem, coeffs: CoeffTable, up_to: int | None = None):
    """Exact check of Sigma_t c_t(n) = Cat_n for every n up to the bound.

    Residue identities are verified for every prime lane, and the full
    sums are CRT-reconstructed and compared to Cat_n as integers.  (The
    true sums are below the CRT modulus, so reconstruction equality is
    integer equality.)
    """
    if not coeffs.exact:
        raise ValueError("conservation check needs the exact lanes")
    N = coeffs.N if up_to is None else min(up_to, coeffs.N)
    primes = coeffs.primes
    rsum = coeffs.res[:, :, : N + 1].astype(np.int64).sum(axis=1) % primes[:, None]
    cat_res = np.empty_like(rsum)
    for i, p in enumerate(primes.tolist()):
        c = 1
        cat_res[i, 0] = 1
        for n in range(N):
            c = c * (2 * (2 * n + 1)) % p * pow(n + 2, p - 2, p) % p
            cat_res[i, n + 1] = c
    if not np.array_equal(rsum, cat_res):
        bad = int(np.nonzero((rsum != cat_res).any(axis=0))[0][0])
        raise AssertionError(f"conservation failed in residue lanes at n={bad}")
    values = coeffs._crt().reconstruct(rsum.T)
    for n, v in enumerate(values):
        if v != catalan(n):
            raise AssertionError(f"conservation failed at n={n}")
    return True


# ---------- the Jacobian ----------


@dataclass
class JacobianSeries:
    """M[t][u] = z * (Sigma_{v: H(u,v)=t} C_v + Sigma_{v: H(v,u)=t} C_v),
    held as index lists over the coefficient table (the series themselves
    are huge; entries materialize on demand)."""

    ts: TypeSystem
    coeffs: CoeffTable
    A: dict  # (t,u) -> [v with H(u,v) = t]
    B: dict  # (t,u) -> [v with H(v,u) = t]

    def coeff(self, t: int, u: int, n: int) -> int:
        """Exact [z^n] M_{t,u}."""
        if n == 0:
            return 0
        crt = self.coeffs._crt()
        res = self.coeffs.res
        primes = self.coeffs.primes
        acc = np.zeros(len(primes), dtype=np.int64)
        for v in self.A.get((t, u), ()):
            acc += res[:, v, n - 1]
        for v in self.B.get((t, u), ()):
            acc += res[:, v, n - 1]
        return crt.reconstruct((acc % primes)[None, :])[0]


def jacobian(ts: TypeSystem, coeffs: CoeffTable) -> JacobianSeries:
    A: dict = {}
    B: dict = {}
    T = ts.ntypes
    for u in range(T):
        for v in range(T):
            A.setdefault((ts.H[u][v], u), []).append(v)
            B.setdefault((ts.H[v][u], u), []).append(v)
    return JacobianSeries(ts=ts, coeffs=coeffs, A=A, B=B)


def verify_column_sums(
    ts: TypeSystem, coeffs: CoeffTable, *, literal_up_to: int = 150
) -> bool:
    """Coefficient-exact column-sum identity: for every column u and
    every 1 <= n <= N, Sigma_t [z^n] M_{t,u} = 2 Cat_{n-1}.

    Three layers: (a) for each u, the fibers {v : H(u,v)=t} over all t
    partition the type set (and likewise for H(v,u)), so the column sum
    is literally the sum 2 Sigma_v c_v(n-1) term by term; (b) that sum
    is checked exactly against 2 Cat_{n-1} for all n via the
    conservation lanes; (c) for n up to ``literal_up_to`` the column
    sums are additionally materialized entry by entry as exact integers
    and compared, exercising the same code path jacobian users hit.
    """
    if not coeffs.exact:
        raise ValueError("column-sum check needs the exact lanes")
    jac = jacobian(ts, coeffs)
    T = ts.ntypes
    for u in range(T):
        for lists in (jac.A, jac.B):
            seen: list = []
            for t in range(T):
                seen.extend(lists.get((t, u), ()))
            if sorted(seen) != list(range(T)):
                raise AssertionError(f"H fibers do not partition at column {u}")
    verify_conservation(ts, coeffs)

    # [z^n] of column u sums to 2 Sigma_v c_v(n-1), so materializing the
    # lists term by term must reproduce 2 Cat_{n-1} exactly
    N_lit = min(literal_up_to, coeffs.N)
    crt = coeffs._crt()
    primes = coeffs.primes
    for u in range(T):
        acc = np.zeros((len(primes), N_lit + 1), dtype=np.int64)
        for t in range(T):
            for v in jac.A.get((t, u), ()):
                acc += coeffs.res[:, v, : N_lit + 1]
            for v in jac.B.get((t, u), ()):
                acc += coeffs.res[:, v, : N_lit + 1]
        acc %= primes[:, None]
        values = crt.reconstruct(acc.T)
        for n0, v in enumerate(values):
            if v != 2 * catalan(n0):
                raise AssertionError(f"column {u} sum wrong at order {n0 + 1}")
    return True


def eval_series_at(coeffs: CoeffTable, z0: float) -> np.ndarray:
    """(C_t(z0))_t from the scaled lane: Sigma_n d_t(n) (4 z0)^n."""
    x = 4.0 * z0
    if not 0.0 < x <= 1.0:
        raise ValueError("z0 must lie in (0, 1/4]")
    powers = np.power(x, np.arange(coeffs.N + 1)) if x < 1.0 else np.ones(coeffs.N + 1)
    return coeffs.d @ powers


def eval_jacobian_at(
    ts: TypeSystem,
    coeffs: CoeffTable,
    z0: float,
    *,
    tail_corrected: bool = False,
) -> np.ndarray:
    """M(z0) as a dense float matrix.

    With ``tail_corrected`` the truncated C_u(z0) of star types get the
    estimated tail A_u * Sigma_{n>N} n^{-3/2} added (only meaningful at
    z0 = 1/4); raw truncation otherwise.
    """
    C = eval_series_at(coeffs, z0)
    if tail_corrected:
        tail = float(_hurwitz_zeta(1.5, coeffs.N + 1))
        for u in sorted(ts.star):
            C[u] += estimate_A(coeffs, u) * tail
    T = ts.ntypes
    M = np.zeros((T, T))
    for u in range(T):
        for v in range(T):
            M[ts.H[u][v], u] += C[v]
            M[ts.H[v][u], u] += C[v]
    return z0 * M


def star_block(ts: TypeSystem, M: np.ndarray) -> np.ndarray:
    idx = sorted(ts.star)
    return M[np.ix_(idx, idx)]


def bullet_block(ts: TypeSystem, M: np.ndarray) -> np.ndarray:
    idx = sorted(ts.bullet)
    return M[np.ix_(idx, idx)]


# ---------- spectral radius ----------


@dataclass(frozen=True)
class SpectralEstimate:
    value: float
    converged: bool
    iterations: int
    gap: float


def spectral_radius(
    A: np.ndarray, *, tol: float = 1e-9, max_iter: int = 50000, shift: float = 1e-3
) -> SpectralEstimate:
    """Perron root of a nonnegative matrix by shifted power iteration.

    The shift keeps the iteration positive and breaks rotational ties
    (nilpotent and periodic cases); SR(A + cI) = SR(A) + c.  The running
    estimate is the 1-norm growth factor, which also converges on
    reducible matrices where the Collatz-Wielandt ratio gap never
    closes; the CW ratios still bracket the true value at every step and
    the final bracket width is reported as ``gap``.  The result never
    exceeds the maximal column sum (asserted).
    """
    A = np.asarray(A, dtype=np.float64)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise ValueError("square matrix required")
    if (A < 0).any():
        raise ValueError("nonnegative matrix required")
    n = A.shape[0]
    if n == 0:
        return SpectralEstimate(0.0, True, 0, 0.0)
    v = np.full(n, 1.0 / n)
    lo_best, hi_best = 0.0, float(A.sum(axis=0).max())
    est = math.inf
    it = 0
    stable = 0
    for it in range(1, max_iter + 1):
        w = A @ v + shift * v
        nw = float(w.sum())  # 1-norm: all entries nonnegative
        new = nw - shift  # v had 1-norm 1
        mask = v > 1e-250
        if mask.all():
            ratios = w[mask] / v[mask]
            lo_best = max(lo_best, float(ratios.min()) - shift)
            hi_best = min(hi_best, float(ratios.max()) - shift)
        stable = stable + 1 if abs(new - est) <= tol * max(1.0, abs(new)) else 0
        est = new
        if stable >= 3:
            break
        v = w / nw
    value = min(max(est, lo_best, 0.0), hi_best)
    col_max = float(A.sum(axis=0).max())
    assert value <= col_max + 1e-8 * max(1.0, col_max)
    return SpectralEstimate(
        value=value, converged=stable >= 3, iterations=it, gap=hi_best - lo_best
    )


# ---------- asymptotic estimators ----------


def estimate_lambda(ts: TypeSystem, coeffs: CoeffTable, t: int):
    """(lambda_t, error): the limiting share c_t(n)/Cat_n.

    Star types: first-order Richardson extrapolation in 1/n from n = N
    and N/2, with the error gauged against the N/2-N/4 extrapolant.
    Bullet types decay exponentially; returns 0 with the last observed
    share as the error bound.
    """
    N = coeffs.N
    if t in ts.bullet:
        return 0.0, coeffs.lam(t, N)
    l1, l2, l4 = coeffs.lam(t, N), coeffs.lam(t, N // 2), coeffs.lam(t, N // 4)
    ext = 2.0 * l1 - l2
    prev = 2.0 * l2 - l4
    return ext, abs(ext - prev)


def estimate_A(coeffs: CoeffTable, t: int) -> float:
    """Richardson-refined A_t with c_t(n) ~ A_t 4^n n^{-3/2}."""
    N = coeffs.N
    a1 = float(coeffs.d[t, N]) * N**1.5
    a2 = float(coeffs.d[t, N // 2]) * (N // 2) ** 1.5
    return 2.0 * a1 - a2


def estimate_kappa(coeffs: CoeffTable, t: int, *, window: int = 40) -> float:
    """Growth rate exp(d log c_t(n) / dn) over the top support window.

    Degenerate cases: zero or polynomial series (fewer than 10 support
    points, none in the upper half of the range) report 0.0; otherwise
    fewer than 10 support points is an error.
    """
    sup = coeffs.support(t)
    sup = sup[sup >= 1]
    if len(sup) < 10:
        if len(sup) == 0 or sup.max() <= coeffs.N // 2:
            return 0.0
        raise InsufficientSupportError(f"type {t}: {len(sup)} nonzero coefficients")
    if coeffs.exact:
        pts = sup[-window:]
        ys = [math.log(v) for v in coeffs.coeff_block([(t, int(n)) for n in pts])]
    else:
        # slow-growing series underflow the scaled lane long before N;
        # fit just below the frontier where the lane is still normal
        firm = sup[coeffs.d[t, sup] >= 1e-250]
        if len(firm) < 10:
            raise InsufficientSupportError(f"type {t}: scaled lane underflow")
        pts = firm[-window:]
        ys = [math.log(coeffs.d[t, n]) + n * math.log(4.0) for n in pts]
    slope = np.polyfit(pts.astype(np.float64), np.array(ys), 1)[0]
    return float(math.exp(slope))


# ---------- DLW hypothesis report ----------


@dataclass(frozen=True)
class DLWReport:
    conditions: tuple  # of dicts {condition, pass, detail, residual}

    @property
    def ok(self) -> bool:
        return all(c["pass"] for c in self.conditions)

    def to_json(self) -> str:
        return json.dumps(list(self.conditions), sort_keys=True, indent=1)


def check_dlw_conditions(
    ts: TypeSystem, coeffs: CoeffTable, *, det_tol_per_dim: float = 0.01
) -> DLWReport:
    """The six hypotheses of the square-root-singularity theorem for the
    star subsystem (bullet series seen as known parameters)."""
    star = sorted(ts.star)
    star_set = ts.star
    conds = []

    # (i) nonlinearity: some star equation has a star*star monomial
    found = next(
        (
            (a, b)
            for a in star
            for b in star
            if ts.H[a][b] in star_set
        ),
        None,
    )
    conds.append(
        {
            "condition": "i-nonlinear",
            "pass": found is not None,
            "detail": f"star*star composition landing in star: {found}",
            "residual": 0.0,
        }
    )

    # (ii) no constant term: the empty type is not a star variable
    conds.append(
        {
            "condition": "ii-zero-at-origin",
            "pass": ts.empty_type not in star_set,
            "detail": "empty type sits in the bullet part",
            "residual": 0.0,
        }
    )

    # (iii) inhomogeneity: some star equation has a bullet*bullet term,
    # and everything carries the explicit factor z
    found3 = next(
        (
            (a, b)
            for a in sorted(ts.bullet)
            for b in sorted(ts.bullet)
            if ts.H[a][b] in star_set
        ),
        None,
    )
    conds.append(
        {
            "condition": "iii-inhomogeneous",
            "pass": found3 is not None,
            "detail": f"bullet*bullet composition landing in star: {found3}; all equations carry z",
            "residual": 0.0,
        }
    )

    # (iv) strong connectivity of the star dependency subgraph
    pos = {t: i for i, t in enumerate(star)}
    succ = [[] for _ in star]
    for u, t in sorted(ts.edges):
        if u in star_set and t in star_set and u != t:
            succ[pos[u]].append(pos[t])
    ncomp = len(_sccs(len(star), succ))
    conds.append(
        {
            "condition": "iv-irreducible",
            "pass": ncomp == 1,
            "detail": f"{ncomp} strongly connected component(s) on {len(star)} star types",
            "residual": float(ncomp - 1),
        }
    )

    # (v) the singularity equation at z = 1/4: det(I - M*(1/4)) ~ 0 with
    # tail-corrected series values, and the bullet series all converge
    # past 1/4 (radii 1/kappa > 1/4)
    M = eval_jacobian_at(ts, coeffs, 0.25, tail_corrected=True)
    Ms = star_block(ts, M)
    residual = abs(float(np.linalg.det(np.eye(len(star)) - Ms)))
    tol = det_tol_per_dim * len(star)
    kappas = [estimate_kappa(coeffs, t) for t in sorted(ts.bullet)]
    radii_ok = all(kp <= 3.95 for kp in kappas)
    conds.append(
        {
            "condition": "v-singular-point",
            "pass": residual <= tol and radii_ok,
            "detail": (
                f"|det(I - M*(1/4))| = {residual:.4g} (tol {tol:.3g}); "
                f"max bullet kappa {max(kappas) if kappas else 0.0:.3f}"
            ),
            "residual": residual,
        }
    )

    # (vi) aperiodicity of every star series
    worst = 1
    for t in star:
        sup = coeffs.support(t)
        sup = sup[sup >= 1]
        gaps = np.diff(sup)
        g = 0
        for d in gaps.tolist():
            g = math.gcd(g, d)
        worst = max(worst, g if len(sup) > 1 else 0)
    conds.append(
        {
            "condition": "vi-aperiodic",
            "pass": worst == 1,
            "detail": f"max gcd of support gaps over star types: {worst}",
            "residual": float(worst - 1),
        }
    )

    return DLWReport(conditions=tuple(conds))
