"""Nullspace dimension of the guessing ansatz against truncation order, then a certificate."""
import argparse

from halfwalk.guessing import UnderdeterminedSystem, guess_algebraic, kernel_certificate
from halfwalk.walk_engine import SIMPLE, fixpoint_solve


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--degree", type=int, default=2, help="bound on x, t and Y degrees")
    ap.add_argument("--max-order", type=int, default=10)
    ap.add_argument("--check-order", type=int, default=16)
    args = ap.parse_args()
    d = args.degree
    F = fixpoint_solve(SIMPLE, args.max_order)
    print(" N  equations  unknowns  dim")
    last = None
    for N in range(args.max_order + 1):
        try:
            rep = guess_algebraic(F.truncate(N), d, d, d)
        except UnderdeterminedSystem:
            print(f"{N:2d}  underdetermined")
            continue
        print(f"{N:2d}  {rep.equations:9d}  {rep.unknowns:8d}  {rep.nullspace_dim:3d}")
        last = rep
    if last is None or last.candidate is None:
        print("no candidate")
        raise SystemExit(1)
    print(f"candidate: {last.candidate.to_str()} = 0")
    cert = kernel_certificate(last.candidate, args.check_order)
    print(f"certificate ok={cert.ok}  Y-multiplicity={cert.y_multiplicity}  "
          f"separating order={cert.first_separating_order}")
    raise SystemExit(0 if cert.ok else 1)


if __name__ == "__main__":
    main()
