"""Print the s-pair transfer catalog of a graph family across sizes.

Usage: python scripts/catalog_report.py path adj --sizes 2 12
       python scripts/catalog_report.py complete-bipartite lap --sizes 2 10
"""

import argparse

import pstwalk as pw

KINDS = {"adj": pw.ADJACENCY, "lap": pw.LAPLACIAN}


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("family", choices=["path", "cycle", "complete", "complete-bipartite"])
    ap.add_argument("kind", choices=["adj", "lap"])
    ap.add_argument("--sizes", type=int, nargs=2, default=[2, 10],
                    metavar=("LO", "HI"))
    args = ap.parse_args()
    kind = KINDS[args.kind]
    lo, hi = args.sizes

    if args.family == "complete-bipartite":
        combos = [(m, n) for m in range(1, hi + 1) for n in range(m, hi + 1)
                  if lo <= m + n <= hi]
    else:
        combos = [(n,) for n in range(max(lo, 2), hi + 1)]

    for sizes in combos:
        if args.family == "cycle" and sizes[0] < 3:
            continue
        entries = pw.pair_plus_catalog(args.family, kind, *sizes)
        if not entries:
            continue
        label = "x".join(str(s) for s in sizes)
        print(f"{args.family}({label}), {args.kind}:")
        for e in entries:
            if (e.u, e.v) > (e.partner_u, e.partner_v):
                continue  # print each unordered pair once
            sgn = "+" if e.s == 1 else "-"
            psgn = "+" if e.partner_s == 1 else "-"
            print(f"  e{e.u} {sgn} e{e.v}  <->  e{e.partner_u} {psgn} e{e.partner_v}"
                  f"   at {e.tau:.10f} ({e.tau_symbolic})")


if __name__ == "__main__":
    main()
