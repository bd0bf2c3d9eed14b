"""Time every solver against the fixpoint iteration at increasing orders."""
import argparse
import time

from halfwalk.closed_forms import METHODS
from halfwalk.config import AgreementConfig
from halfwalk.exact_series import valuation
from halfwalk.walk_engine import SIMPLE, fixpoint_solve


def timed(fn, *args):
    t0 = time.perf_counter()
    out = fn(*args)
    return out, time.perf_counter() - t0


def run(cfg: AgreementConfig) -> bool:
    names = ["fixpoint"] + sorted(METHODS)
    print("order  " + "  ".join(f"{n:>13}" for n in names))
    all_ok = True
    for N in cfg.orders:
        ref, t_ref = timed(fixpoint_solve, SIMPLE, N)
        cells = [f"{t_ref:12.3f}s"]
        for name in names[1:]:
            F, dt = timed(METHODS[name], N)
            ok = F == ref
            all_ok &= ok
            mark = "" if ok else f"!t^{valuation(F - ref)}"
            cells.append(f"{dt:12.3f}s{mark}")
        print(f"{N:5d}  " + "  ".join(cells))
    print("all agree" if all_ok else "DISAGREEMENT")
    return all_ok


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--orders", default="10,25,50,100,150")
    args = ap.parse_args()
    cfg = AgreementConfig(orders=tuple(int(v) for v in args.orders.split(",")))
    raise SystemExit(0 if run(cfg) else 1)


if __name__ == "__main__":
    main()
