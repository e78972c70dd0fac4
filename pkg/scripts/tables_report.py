"""Write the comparison report for all five reference tables and summarize it."""

import argparse
from collections import Counter

from cpsehp.cli import run
from cpsehp.reference import comparison_report, flag_counts, ingest_reference_tables, pair_check


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", default="tables_report.csv")
    args = ap.parse_args()
    code = run(["tables", "--table", "all", "--out", args.out])
    tables = ingest_reference_tables()
    rows = comparison_report(tables=tables)
    print(f"wrote {args.out} (exit {code})")
    print("flags:", flag_counts(rows))
    print("per table:", dict(Counter((r.table, r.flag) for r in rows)))
    checks = pair_check(tables[4], tables[5])
    print(f"<p^2> = 2<T> pairs within tolerance: {sum(c.ok for c in checks)}/{len(checks)}")
    for c in checks:
        if not c.ok:
            print(f"  outlier n={c.n} l={c.l} alpha={c.alpha}: T={c.t4} p2={c.t5}")
    for t, table in tables.items():
        for key, reason in sorted(table.misprints.items()):
            if t == 3:
                print(f"  table 3 {key}: {reason}")


if __name__ == "__main__":
    main()
