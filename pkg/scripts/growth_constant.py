"""Convergence of the growth-constant estimate for Catalan numbers.

Rows are indices n, columns the depth K of the correction 1 + c_1/n + ... + c_K/n^K;
each cell is the distance of the estimate to 1/sqrt(pi).
"""
import argparse
import time
from decimal import Decimal, localcontext

from halfwalk.asymptotics import AsympExpansion, estimate_constant, poincare_expansion
from halfwalk.config import GrowthConfig
from halfwalk.dfinite import PRec, rec_unroll
from halfwalk.polys import parse_upoly


def reference(precision: int) -> Decimal:
    """1/sqrt(pi), with pi from the series recipe in the decimal module docs."""
    with localcontext() as ctx:
        ctx.prec = precision + 10
        lasts, t, s, n, na, d, da = 0, Decimal(3), 3, 1, 0, 0, 24
        while s != lasts:
            lasts = s
            n, na = n + na, na + 8
            d, da = d + da, da + 32
            t = (t * n) / d
            s += t
        return 1 / Decimal(s).sqrt()


def run(cfg: GrowthConfig) -> None:
    R = PRec((parse_upoly("4 + 2n"), parse_upoly("-4*(1 + 2n)")))
    t0 = time.perf_counter()
    vals = rec_unroll(R, [1], cfg.max_n)
    print(f"unrolled {cfg.max_n} terms in {time.perf_counter() - t0:.2f}s")
    (full,) = poincare_expansion(R, max(cfg.depths))
    target = reference(cfg.precision)
    print(f"expansion: phi={full.phi} alpha={full.alpha} c={[str(c) for c in full.c]}")
    print("n".rjust(7) + "".join(f"{'K=' + str(K):>12}" for K in cfg.depths))
    for n in cfg.n_points:
        row = []
        for K in cfg.depths:
            E = AsympExpansion(full.phi, full.alpha, full.c[:K])
            est = estimate_constant(vals, E, [n], cfg.precision)
            row.append(f"{abs(est.value - target):12.2E}")
        print(f"{n:7d}" + "".join(row))
    E = AsympExpansion(full.phi, full.alpha, full.c[: cfg.depth])
    est = estimate_constant(vals, E, cfg.n_points, cfg.precision)
    print(f"estimate at K={cfg.depth}: {est.value}")
    print(f"bracket: {est.bracket}")
    print(f"1/sqrt(pi): {target}")


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-n", type=int, default=GrowthConfig.max_n)
    ap.add_argument("--depth", type=int, default=GrowthConfig.depth)
    args = ap.parse_args()
    pts = tuple(n for n in (10, 100, 1000, 10_000, 100_000) if n <= args.max_n)
    run(GrowthConfig(max_n=args.max_n, depth=args.depth, n_points=pts))


if __name__ == "__main__":
    main()
