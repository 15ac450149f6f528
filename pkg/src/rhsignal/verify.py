"""The invariant suite run by ``rhsignal verify``.

Each check produces one residual.  Operators are looked up through their
modules at call time (``line_operators.ladder_ops`` rather than a bound
name) so a monkeypatched builder is what gets verified.  Wherever a matrix
is checked entry by entry, the reference is written out here directly from
its closed form, never by calling the builder under test.
"""
from __future__ import annotations

import math
import time
from dataclasses import dataclass

import numpy as np
from numpy.polynomial import hermite as npherm

from . import halfline, line_basis, line_operators, line_transforms, specfun
from .line_operators import SubalgebraIndex, commutator, interior_residual

__all__ = ["Check", "run_checks", "timed_run", "format_table", "all_passed"]

HERMITE_NMAX = 64
SUBLADDER_NMAX = 40
ALPHAS = (-0.5, 0.0, 0.5, 1.0, 2.0)


@dataclass
class Check:
    module: str
    name: str
    residual: float
    threshold: float

    @property
    def passed(self):
        return bool(np.isfinite(self.residual) and self.residual < self.threshold)


def _maxabs(a):
    a = np.asarray(a)
    return float(np.max(np.abs(a))) if a.size else 0.0


def _ladder_ref(n_max):
    return np.diag(np.sqrt(np.arange(1, n_max + 1, dtype=float)), 1)


def _specfun_checks(rng):
    out = []
    gh = specfun.gauss_hermite(128)
    out.append(("gauss_hermite(128) weight sum - sqrt(pi)", abs(gh.weights.sum() - math.sqrt(math.pi))))
    out.append(("gauss_hermite(128) second moment - sqrt(pi)/2",
                abs(gh.weights @ gh.nodes ** 2 - math.sqrt(math.pi) / 2)))
    spec = specfun.BasisSpec.hermite(48)
    gram = specfun.quadrature_rows(spec, gh) @ specfun.hermite_function_batch(48, gh.nodes).T
    out.append(("Hermite Gram n<=48, order 128", _maxabs(gram - np.eye(49))))

    x = np.linspace(-5, 5, 201)
    rows = specfun.hermite_function_batch(12, x)
    worst = 0.0
    for n in range(13):
        coef = np.zeros(n + 1)
        coef[n] = 1.0
        norm = math.sqrt(2.0 ** n * math.factorial(n) * math.sqrt(math.pi))
        direct = np.exp(-x * x / 2) * npherm.hermval(x, coef) / norm
        worst = max(worst, _maxabs(rows[n] - direct) / _maxabs(direct))
    out.append(("recurrence vs explicit polynomial, n<=12 (rel)", worst))

    xs = rng.uniform(-8, 8, 100)
    pos = specfun.hermite_function_batch(30, xs)
    neg = specfun.hermite_function_batch(30, -xs)
    sign = (-1.0) ** np.arange(31)
    out.append(("parity psi_n(-x) = (-1)^n psi_n(x)", _maxabs(neg - sign[:, None] * pos)))

    for a in (-0.5, 0.0, 0.5, 2.0):
        gl = specfun.gauss_laguerre(96, a)
        out.append((f"gauss_laguerre(96, {a:g}) weight sum - Gamma(a+1)",
                    abs(gl.weights.sum() - math.gamma(a + 1)) / math.gamma(a + 1)))
        lspec = specfun.BasisSpec.laguerre(32, a)
        g = specfun.quadrature_rows(lspec, gl) @ specfun.laguerre_function_batch(32, a, gl.nodes).T
        out.append((f"Laguerre Gram alpha={a:g}, n<=32", _maxabs(g - np.eye(33))))
    return out


def _operator_checks(rng):
    out = []
    n_max = HERMITE_NMAX
    lo = line_operators
    a, ad = lo.ladder_ops(n_max)
    ref = _ladder_ref(n_max)
    out.append(("a entries vs sqrt(n) superdiagonal", _maxabs(a.entries - ref)))
    out.append(("a_dag entries vs transpose", _maxabs(ad.entries - ref.T)))

    X, P, D, N, I = lo.canonical_ops(n_max)
    s = 1 / math.sqrt(2)
    refs = {
        "X": s * (ref + ref.T),
        "P": -1j * s * (ref - ref.T),
        "D_x": s * (ref - ref.T),
        "N": np.diag(np.arange(n_max + 1.0)),
        "I": np.eye(n_max + 1),
    }
    for name, M in zip(refs, (X, P, D, N, I)):
        out.append((f"{name} entries vs closed form", _maxabs(M.entries - refs[name])))
    out.append(("X, P, N Hermitian; D_x antisymmetric",
                max(_maxabs(M.entries - M.entries.conj().T) for M in (X, P, N))
                + _maxabs(D.entries + D.entries.T)))
    i, j = np.indices(a.entries.shape)
    out.append(("entries vanish outside declared bandwidth",
                max(_maxabs(M.entries[np.abs(i - j) > M.bandwidth])
                    for M in (a, ad, X, P, D, N))))

    size = n_max - 1
    rel = {
        "[N,a_dag] - a_dag": commutator(N, ad) - ad,
        "[N,a] + a": commutator(N, a) + a,
        "[a,a_dag] - I": commutator(a, ad) - I,
        "[X,P] - iI": commutator(X, P) - I * 1j,
        "[N,X] + iP": commutator(N, X) + P * 1j,
        "[N,P] - iX": commutator(N, P) - X * 1j,
        "D_x^2 - (X^2 - 2N - 1)": D @ D - (X @ X - N * 2 - I),
        "{a,a_dag}/2 - N - 1/2": (a @ ad + ad @ a) * 0.5 - N - I * 0.5,
        "(X^2 - D_x^2)/2 - N - 1/2": (X @ X - D @ D) * 0.5 - N - I * 0.5,
    }
    for name, M in rel.items():
        out.append((f"{name} (interior, n_max={n_max})", interior_residual(M, size)))

    H = ((X @ X + P @ P) * 0.5).entries[:n_max, :n_max]
    ev = np.sort(np.linalg.eigvalsh(H))
    half = n_max // 2
    out.append(("spectrum of (X^2+P^2)/2 vs n+1/2, n<=n_max/2",
                _maxabs(ev[:half + 1] - (np.arange(half + 1) + 0.5))))

    xg = np.linspace(-6, 6, 601)
    worst = 0.0
    for n in range(11):
        p, _, d2 = specfun.hermite_derivatives(n, xg)
        worst = max(worst, _maxabs(0.5 * (xg * xg * p - d2) - (n + 0.5) * p))
    out.append(("Hermite ODE (x^2 - D^2)/2 psi_n = (n+1/2) psi_n, n<=10", worst))

    nm = SUBLADDER_NMAX
    n = np.arange(nm + 1)
    for k in range(1, 6):
        Q, R = lo.index_ops(k, nm)
        out.append((f"index ops k={k}: entries vs n//k, n%k",
                    _maxabs(Q.entries - np.diag(n // k)) + _maxabs(R.entries - np.diag(n % k))))
        for r in range(k):
            idx = SubalgebraIndex(k, r)
            res = lo.verify_io2_subalgebra(idx, nm)
            out.append((f"io_{k},{r}(2) relations + tower leakage",
                        max(res.values())))
            A, Ad = lo.subladder(idx, nm)
            ref_ad = np.zeros((nm + 1, nm + 1))
            for m in range(r, nm - k + 1, k):
                ref_ad[m + k, m] = math.sqrt(m // k + 1)
            _, Fd = lo.subladder_formula(idx, nm)
            tower = np.arange(r, nm + 1, k)
            out.append((f"A_{k},{r} entries vs closed form and operator formula",
                        _maxabs(Ad.entries - ref_ad) + _maxabs(A.entries - ref_ad.T)
                        + _maxabs(Fd.entries[:, tower] - ref_ad[:, tower])))
    return out


def _transform_checks(rng):
    out = []
    lt = line_transforms
    gh = specfun.gauss_hermite(128)
    p = np.linspace(-6, 6, 121)
    rows = specfun.hermite_function_batch(20, p)
    worst = 0.0
    for n in range(21):
        g = lt.fourier_quadrature(lambda x, n=n: specfun.hermite_function_batch(n, x)[n], p, gh)
        target = (1j ** n) * rows[n]
        worst = max(worst, np.linalg.norm(g.values - target) / np.linalg.norm(rows[n]))
    out.append(("FT quadrature of psi_n vs i^n psi_n, n<=20, |p|<=6 (rel)", worst))

    spec = specfun.BasisSpec.hermite(32)
    z = rng.normal(size=33) + 1j * rng.normal(size=33)
    c = line_basis.CoeffVector(spec, z / np.linalg.norm(z))
    f4 = c
    for _ in range(4):
        f4 = lt.fourier_coeff(f4)
    out.append(("FT applied four times = identity", _maxabs(f4.coeffs - c.coeffs)))
    out.append(("FrFT(pi/2) = FT", _maxabs(lt.frft_coeff(c, math.pi / 2).coeffs
                                          - lt.fourier_coeff(c).coeffs)))
    worst = 0.0
    for k in range(1, 7):
        worst = max(worst, _maxabs(lt.frft_composed(c, k).coeffs
                                   - lt.frft_coeff(c, 2 * math.pi / k).coeffs))
    out.append(("FT o exp(2 pi i (1/k-1/4) N) = FrFT(2 pi/k), k<=6", worst))

    gl = un = 0.0
    for _ in range(20):
        al, be = rng.uniform(-math.pi, math.pi, 2)
        gl = max(gl, np.linalg.norm(lt.frft_coeff(lt.frft_coeff(c, al), be).coeffs
                                    - lt.frft_coeff(c, al + be).coeffs))
        un = max(un, abs(lt.frft_coeff(c, al).norm() - c.norm()))
    out.append(("FrFT group law", gl))
    out.append(("FrFT unitarity", un))

    pe = idem = orth = comp = en = 0.0
    for k in range(1, 7):
        total = np.zeros_like(c.coeffs)
        for r in range(k):
            idx = SubalgebraIndex(k, r)
            pr = lt.project(c, idx)
            pe = max(pe, _maxabs(lt.project_via_frft(c, idx).coeffs - pr.coeffs))
            idem = max(idem, _maxabs(lt.project(pr, idx).coeffs - pr.coeffs))
            for r2 in range(k):
                if r2 != r:
                    orth = max(orth, _maxabs(lt.project(pr, SubalgebraIndex(k, r2)).coeffs))
            total += pr.coeffs
        comp = max(comp, _maxabs(total - c.coeffs))
        en = max(en, abs(lt.subspace_energy(c, k).sum() - c.norm() ** 2))
    out.append(("project_via_frft = project, k<=6", pe))
    out.append(("projector idempotence", idem))
    out.append(("projector mutual orthogonality", orth))
    out.append(("projector completeness", comp))
    out.append(("subspace energies sum to |c|^2", en))
    ev = 0.0
    for r in range(4):
        pr = lt.project(c, SubalgebraIndex(4, r))
        ev = max(ev, _maxabs(lt.fourier_coeff(pr).coeffs - (1j ** r) * pr.coeffs))
    out.append(("(4,r) components are FT eigenvectors with eigenvalue i^r", ev))

    grid = np.linspace(-10, 10, 801)
    z = rng.normal(size=17) + 1j * rng.normal(size=17)
    c16 = line_basis.CoeffVector(specfun.BasisSpec.hermite(16), z)
    sig = line_basis.synthesize(c16, grid)
    back = line_basis.analyze(sig, c16.basis)
    back_q = line_basis.analyze(lambda x: line_basis.synthesize(c16, x).values, c16.basis)
    out.append(("line round trip analyze o synthesize (sampled, callable)",
                max(_maxabs(back.coeffs - z), _maxabs(back_q.coeffs - z))))
    energy = line_basis.trapezoid_weights(grid) @ np.abs(sig.values) ** 2
    out.append(("Parseval sum |c_n|^2 = int |f|^2 (rel)",
                abs(np.sum(np.abs(z) ** 2) - energy) / energy))
    return out


def _halfline_checks(rng):
    out = []
    hl = halfline
    for a in ALPHAS:
        jp, jm, j3 = hl.su11_ops(a, 32)
        n = np.arange(32, dtype=float)
        ref = np.diag(np.sqrt((n + 1) * (n + a + 1)), -1)
        out.append((f"J+/J-/J3 entries vs closed form, alpha={a:g}",
                    _maxabs(jp.entries - ref) + _maxabs(jm.entries - ref.T)
                    + _maxabs(j3.entries - np.diag(np.arange(33) + (a + 1) / 2))))
        res = hl.su11_residuals(a, 32)
        out.append((f"su(1,1) relations and Casimir, alpha={a:g}",
                    max(res["[J3,J+]-J+"], res["[J3,J-]+J-"], res["[J+,J-]+2J3"],
                        res["casimir"])))
        out.append((f"Casimir constant - (alpha^2-1)/4, alpha={a:g}",
                    abs(res["casimir_constant"] - (a * a - 1) / 4)))
        y = np.linspace(0.1, 20, 400)
        worst = 0.0
        for m in range(9):
            f, d1, d2 = specfun.laguerre_derivatives(m, a, y)
            lhs = -y * d2 - d1 - (a + 1) / 2 * f + a * a / (4 * y) * f + y / 4 * f
            worst = max(worst, _maxabs(lhs - m * f))
        out.append((f"half-line identity N M_n = n M_n, alpha={a:g}, n<=8", worst))

    x = np.linspace(0.1, 5, 200)
    worst = 0.0
    for n in range(11):
        le, re, lo_, ro = hl.bridge_hermite_laguerre(n, x)
        worst = max(worst, _maxabs(le - re), _maxabs(lo_ - ro))
    out.append(("Hermite-Laguerre bridge relations, n<=10", worst))

    yp = np.linspace(0.1, 20, 200)
    w = line_basis.trapezoid_weights(yp)
    eig = inv = 0.0
    for kind in hl.TransformKind:
        rows = specfun.laguerre_function_batch(8, kind.alpha, yp)
        for n in range(9):
            def f(y, n=n, a=kind.alpha):
                return specfun.laguerre_function_batch(n, a, y)[n]
            g = hl.transform_T(kind, f, yp, m=400).values
            ref = (-1) ** n * rows[n]
            scale = math.sqrt(w @ ref ** 2)
            eig = max(eig, math.sqrt(w @ np.abs(g - ref) ** 2) / scale)
            if n <= 3:
                gg = hl.transform_T(kind, lambda y: hl.transform_T(kind, f, y, m=400).values,
                                    yp, m=400).values
                inv = max(inv, math.sqrt(w @ np.abs(gg - rows[n]) ** 2) / scale)
    out.append(("T+/T- eigenrelation (-1)^n M_n, n<=8 (rel L2)", eig))
    out.append(("T+/T- applied twice = identity (rel L2)", inv))

    spec = specfun.BasisSpec.laguerre(16, 0.5)
    z = rng.normal(size=17) + 1j * rng.normal(size=17)
    c = line_basis.CoeffVector(spec, z)
    worst = 0.0
    for k in range(1, 7):
        got = hl.frt_coeff("plus", c, k).coeffs
        worst = max(worst, _maxabs(got - np.exp(2j * np.pi * np.arange(17) / k) * z))
    out.append(("FrT+ phases = exp(2 pi i n/k), k<=6", worst))
    grid = np.geomspace(1e-3, 160, 3000)
    sig = hl.synthesize_halfline(c, grid)
    back = hl.analyze_halfline(sig, spec)
    back_q = hl.analyze_halfline(lambda y: hl.synthesize_halfline(c, y).values, spec)
    out.append(("half-line round trip analyze o synthesize (sampled, callable)",
                max(_maxabs(back.coeffs - z), _maxabs(back_q.coeffs - z))))
    return out


_GROUPS = (
    ("specfun", _specfun_checks),
    ("line_operators", _operator_checks),
    ("line_transforms", _transform_checks),
    ("halfline", _halfline_checks),
)


def run_checks(tol=1e-9, seed=0):
    """Run every invariant; each residual is compared against ``tol``."""
    if not tol > 0:
        raise ValueError("tolerance must be positive")
    checks = []
    for module, fn in _GROUPS:
        rng = np.random.default_rng(seed)
        try:
            results = fn(rng)
        except Exception as exc:  # a broken builder is a failed check, not a crash
            results = [(f"group aborted: {type(exc).__name__}: {exc}", math.inf)]
        for name, residual in results:
            checks.append(Check(module, name, float(residual), tol))
    return checks


def all_passed(checks):
    return all(c.passed for c in checks)


def format_table(checks, elapsed=None):
    width = max(len(c.name) for c in checks)
    lines = [f"{'module':<16} {'check':<{width}} {'residual':>10}  status"]
    for c in checks:
        status = "ok" if c.passed else "FAIL"
        lines.append(f"{c.module:<16} {c.name:<{width}} {c.residual:>10.3e}  {status}")
    failed = sum(not c.passed for c in checks)
    tail = f"{len(checks) - failed}/{len(checks)} checks under tolerance {checks[0].threshold:g}"
    if elapsed is not None:
        tail += f" ({elapsed:.1f}s)"
    lines.append(tail)
    return "\n".join(lines)


def timed_run(tol=1e-9, seed=0):
    t0 = time.perf_counter()
    checks = run_checks(tol, seed)
    return checks, time.perf_counter() - t0
