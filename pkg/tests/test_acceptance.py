"""Acceptance gate: one test per criterion, each printing a PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py -v -s`` to see the lines.
Oracles on the comparison side use LAPACK (np.linalg.svd / eigvalsh),
which is independent of the package's own Jacobi-based spectral path.
"""

import math
import time
from contextlib import contextmanager

import numpy as np
import pytest

from ncorlicz import (CoshMinusOne, Element, Functional, JumpFunction, PowerFunction,
                      canonical_trace, connes_cocycle, core_luxemburg_norm, dual_action,
                      embed, gns, luxemburg_norm, make_algebra, radon_nikodym_sqrt,
                      rearrangement, registry, relative_modular, standard_form,
                      verify_isometry, young_conjugate)
from ncorlicz.sampling import (SplitMix64, rand_core_element, rand_element,
                               rand_functional, rand_isomorphism)

ALG = make_algebra([2, 3], [1.0, 0.5])
M3 = make_algebra([3], [1.0])
SWAP = make_algebra([2, 2], [1.0, 1.0])


@contextmanager
def criterion(num, name):
    state = {"detail": ""}
    start = time.perf_counter()
    try:
        yield state
    except BaseException:
        print(f"ACCEPTANCE {num:02d} {name}: FAIL")
        raise
    wall = time.perf_counter() - start
    print(f"ACCEPTANCE {num:02d} {name}: PASS ({state['detail']}, {wall:.2f}s)")


def svd_values(x):
    out = []
    for c, b in zip(x.algebra.weights, x.blocks):
        for s in np.linalg.svd(b, compute_uv=False):
            out.append((float(s), c))
    return out


def test_criterion_01_lp_recovery():
    with criterion(1, "Lp recovery") as state:
        rng = SplitMix64(101)
        start = time.perf_counter()
        worst = 0.0
        for _ in range(200):
            x = rand_element(rng, ALG)
            data = svd_values(x)
            for p in (1.0, 1.5, 2.0, 3.0):
                oracle = sum(c * v ** p for v, c in data) ** (1.0 / p)
                got = luxemburg_norm(PowerFunction(p), x)
                worst = max(worst, abs(got - oracle) / max(oracle, 1e-300))
        runtime = time.perf_counter() - start
        assert worst <= 1e-9, worst
        assert runtime < 5.0, runtime
        state["detail"] = f"max rel dev {worst:.2e}"


def test_criterion_02_linf_recovery():
    with criterion(2, "Linf recovery") as state:
        rng = SplitMix64(101)  # same sample set as criterion 1
        worst = 0.0
        for _ in range(200):
            x = rand_element(rng, ALG)
            oracle = max(v for v, _ in svd_values(x))
            got = luxemburg_norm(JumpFunction(1.0), x)
            worst = max(worst, abs(got - oracle) / max(oracle, 1e-300))
        assert worst <= 1e-9, worst
        state["detail"] = f"max rel dev {worst:.2e}"


def test_criterion_03_distribution_identity():
    with criterion(3, "distribution identity") as state:
        rng = SplitMix64(103)
        worst = 0.0
        for _ in range(100):
            x = rand_element(rng, ALG)
            data = svd_values(x)
            mu = rearrangement(x)
            for phi in (PowerFunction(2), CoshMinusOne()):
                oracle = sum(c * phi(v) for v, c in data)
                steps = sum(phi(s.value) * s.length for s in mu.steps)
                worst = max(worst, abs(steps - oracle) / max(abs(oracle), 1e-300))
        assert worst <= 1e-10, worst
        state["detail"] = f"max rel dev {worst:.2e}"


def test_criterion_04_young_calculus():
    with criterion(4, "Young calculus") as state:
        grid = np.arange(0.0, 10.0001, 0.05)
        worst_slack = 0.0
        for phi in (PowerFunction(1.5), PowerFunction(2), PowerFunction(3),
                    CoshMinusOne(), JumpFunction(1.0)):
            conj = young_conjugate(phi)
            fx = phi.eval_array(grid)
            fy = conj.eval_array(grid)
            for i, x in enumerate(grid):
                if not np.isfinite(fx[i]):
                    continue
                mask = np.isfinite(fy)
                slack = x * grid[mask] - fx[i] - fy[mask]
                if slack.size:
                    worst_slack = max(worst_slack, float(np.max(slack)))
        assert worst_slack <= 1e-9, worst_slack
        worst_bi = 0.0
        for phi in (PowerFunction(1.5), PowerFunction(2), PowerFunction(3),
                    CoshMinusOne()):
            bi = young_conjugate(young_conjugate(phi))
            for t in np.geomspace(1e-2, 1e2, 33):
                ref = phi(float(t))
                worst_bi = max(worst_bi, abs(bi(float(t)) - ref) / max(ref, 1e-300))
        assert worst_bi <= 1e-6, worst_bi
        state["detail"] = f"Young slack {worst_slack:.2e}, biconj dev {worst_bi:.2e}"


def test_criterion_05_modular_suite():
    with criterion(5, "modular suite") as state:
        rng = SplitMix64(105)
        start = time.perf_counter()
        sf = standard_form(M3)
        units = [e for _, _, _, e in M3.matrix_units()]
        worst = 0.0
        for _ in range(50):
            phi = rand_functional(rng, M3)
            omega = rand_functional(rng, M3)
            t = 4.0 * rng.uniform() - 2.0
            u = connes_cocycle(phi, omega, t)
            worst = max(worst, (u.adjoint() * u - M3.identity()).frobenius_norm())
            psi = rand_functional(rng, M3)
            lhs = connes_cocycle(phi, psi, t)
            rhs = connes_cocycle(phi, omega, t) * connes_cocycle(omega, psi, t)
            worst = max(worst, (lhs - rhs).frobenius_norm())
            m = relative_modular(phi, psi).matrix(1j * t) @ \
                relative_modular(omega, psi).matrix(-1j * t)
            lm = np.column_stack([np.array([sf.inner(v, u * w) for v in units])
                                  for w in units])
            worst = max(worst, float(np.max(np.abs(m - lm))))
            h = radon_nikodym_sqrt(phi, omega)
            for e in units:
                worst = max(worst, abs(phi(e) - omega(h.adjoint() * e * h)))
        runtime = time.perf_counter() - start
        assert worst <= 1e-9, worst
        assert runtime < 5.0, runtime
        state["detail"] = f"max dev {worst:.2e}"


def test_criterion_06_canonical_trace_scaling():
    with criterion(6, "canonical trace scaling") as state:
        rng = SplitMix64(106)
        worst = 0.0
        for _ in range(20):
            x = rand_core_element(rng, ALG, pieces=3, positive=True)
            base = canonical_trace(x)
            for s in (math.log(2.0), -math.log(2.0), 1.0, -1.0, 3.0):
                lhs = canonical_trace(dual_action(s, x))
                rhs = math.exp(-s) * base
                worst = max(worst, abs(lhs - rhs) / max(abs(rhs), 1e-300))
        assert worst <= 1e-14, worst
        state["detail"] = f"max rel dev {worst:.2e}"


def test_criterion_07_core_embedding_isometry():
    with criterion(7, "core embedding isometry") as state:
        rng = SplitMix64(107)
        worst = 0.0
        for _ in range(50):
            x = rand_element(rng, ALG)
            for phi in registry().values():
                nb = luxemburg_norm(phi, x)
                nc = core_luxemburg_norm(phi, embed(x))
                worst = max(worst, abs(nb - nc) / max(nb, nc, 1e-300))
        assert worst <= 1e-10, worst
        state["detail"] = f"max rel dev {worst:.2e}"


def test_criterion_08_functoriality():
    with criterion(8, "functoriality") as state:
        rng = SplitMix64(108)
        start = time.perf_counter()
        worst = 0.0
        for _ in range(20):
            iso = rand_isomorphism(rng, SWAP)
            assert iso.trace_preserving
            for phi in (PowerFunction(2), CoshMinusOne(), JumpFunction(1.0)):
                rep = verify_isometry(iso, phi, 3, rng, rtol=1e-9)
                assert rep.passed, rep.witness
                assert rep.rearrangement_equal
                worst = max(worst, rep.max_base_deviation, rep.max_core_deviation)
        runtime = time.perf_counter() - start
        assert runtime < 10.0, runtime
        state["detail"] = f"max rel dev {worst:.2e}, {runtime:.1f}s"


def test_criterion_09_norm_axioms():
    with criterion(9, "norm axioms") as state:
        rng = SplitMix64(109)
        worst = 0.0
        fns = list(registry().values())
        for _ in range(200):
            x = rand_element(rng, ALG)
            y = rand_element(rng, ALG)
            alpha = 3.0 * rng.uniform() - 1.5
            for phi in fns:
                nx, ny = luxemburg_norm(phi, x), luxemburg_norm(phi, y)
                worst = max(worst, luxemburg_norm(phi, x + y) - nx - ny)
                worst = max(worst, abs(luxemburg_norm(phi, alpha * x) - abs(alpha) * nx))
                assert nx > 0.0 and ny > 0.0
        for phi in fns:
            assert luxemburg_norm(phi, ALG.zero()) == 0.0
        assert worst <= 1e-9, worst
        state["detail"] = f"max slack {worst:.2e}"


def test_criterion_10_gns_dimension_law():
    with criterion(10, "GNS dimension law") as state:
        rng = SplitMix64(110)
        for _ in range(30):
            ranks = [rng.randint(d) + 1 for d in ALG.block_dims]
            omega = rand_functional(rng, ALG, ranks)
            want = sum(d * r for d, r in zip(ALG.block_dims, ranks))
            got = gns(omega).dimension
            assert got == want, (ranks, got, want)
        state["detail"] = "exact on 30 draws"
