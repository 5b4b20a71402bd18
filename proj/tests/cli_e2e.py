#!/usr/bin/env python3
"""End-to-end exercise of the tsmom command-line tool.

Covers the file interfaces (synth round trip, loaders), every subcommand,
exit-code conventions (0 success / 1 data error / 2 usage error), the
key=value config file, and byte determinism across worker counts and
repeated invocations.
"""

import csv
import subprocess
import sys
import tempfile
from pathlib import Path

TSMOM = Path(sys.argv[1]) if len(sys.argv) > 1 else Path("build/tools/tsmom")

failures = []


def check(name, cond, detail=""):
    print(f"[{'ok' if cond else 'FAIL'}] {name} {detail}")
    if not cond:
        failures.append(name)


def run(*args, **kw):
    return subprocess.run([str(TSMOM), *args], capture_output=True, text=True, **kw)


def main():
    work = Path(tempfile.mkdtemp(prefix="tsmom_e2e_"))

    # --- synth + round trip ------------------------------------------------
    prices = work / "prices.csv"
    r = run("synth", "--model", "ar1", "--phi", "0.2", "--sigma", "0.05",
            "--T", "300", "--seed", "7", "--asset", "SYN", "--out", str(prices))
    check("synth exit 0", r.returncode == 0, r.stderr.strip())

    rows = list(csv.reader(prices.open()))
    check("synth row count", len(rows) == 302, f"{len(rows)} rows")

    months = [row[1] for row in rows[1:]]
    riskfree = work / "rf.csv"
    with riskfree.open("w") as f:
        f.write("month,rate_monthly\n")
        for m in months:
            f.write(f"{m},0.0\n")

    r_again = run("synth", "--model", "ar1", "--phi", "0.2", "--sigma", "0.05",
                  "--T", "300", "--seed", "7", "--asset", "SYN")
    check("synth deterministic", r_again.stdout == prices.read_text())

    # --- grid: formats, determinism, workers --------------------------------
    base = run("grid", "--prices", str(prices), "--riskfree", str(riskfree), "--method", "hl")
    check("grid exit 0", base.returncode == 0, base.stderr.strip())
    check("grid echoes config", base.stdout.startswith("method=HL lag=K-1"))
    check("grid has 9 J rows", len(base.stdout.strip().splitlines()) == 11)

    for workers in ("2", "8"):
        again = run("grid", "--prices", str(prices), "--riskfree", str(riskfree),
                    "--method", "hl", "--workers", workers)
        check(f"grid byte-identical at {workers} workers", again.stdout == base.stdout)
    repeat = run("grid", "--prices", str(prices), "--riskfree", str(riskfree), "--method", "hl")
    check("grid byte-identical on repeat", repeat.stdout == base.stdout)

    as_csv = run("grid", "--prices", str(prices), "--riskfree", str(riskfree),
                 "--method", "hl", "--format", "csv")
    csv_lines = as_csv.stdout.strip().splitlines()
    check("grid csv echoes config", csv_lines[0] == "# method=HL lag=K-1")
    check("grid csv header",
          csv_lines[1] == "J,K,mean_monthly,annualized_er,t_stat,n_months,stars,class,error")
    check("grid csv 83 lines", len(csv_lines) == 83)

    # --- config file: flags win ---------------------------------------------
    conf = work / "grid.conf"
    conf.write_text("method=hl\nlookbacks=1,3\nholdings=1,3\n")
    with_conf = run("grid", "--prices", str(prices), "--riskfree", str(riskfree),
                    "--config", str(conf))
    check("config applies", with_conf.stdout.startswith("method=HL")
          and len(with_conf.stdout.strip().splitlines()) == 4)
    overridden = run("grid", "--prices", str(prices), "--riskfree", str(riskfree),
                     "--config", str(conf), "--method", "mop")
    check("flags win over config", overridden.stdout.startswith("method=MOP"))

    # --- multi-asset panel for groups / regress / sectors -------------------
    panel_rows = []
    for i in range(6):
        out = run("synth", "--model", "ar1", "--phi", "0.15", "--sigma", "0.05",
                  "--T", "240", "--seed", str(100 + i), "--asset", f"S{i:02d}")
        panel_rows.extend(out.stdout.strip().splitlines()[1:])
    panel = work / "panel.csv"
    panel.write_text("asset,month,close,adj_close\n" + "\n".join(panel_rows) + "\n")

    panel_months = sorted({row.split(",")[1] for row in panel_rows})
    rf2 = work / "rf2.csv"
    with rf2.open("w") as f:
        f.write("month,rate_monthly\n")
        for m in panel_months:
            f.write(f"{m},0.001\n")

    factors = work / "factors.csv"
    with factors.open("w") as f:
        f.write("asset,month,factor,value\n")
        for i in range(6):
            f.write(f"S{i:02d},2000-01,ClosingPrice,{10 * (i + 1)}\n")

    sectors = work / "sectors.csv"
    sectors.write_text(
        "asset,sector\nS00,Energy\nS01,Energy\nS02,Materials\nS03,Materials\n"
        "S04,Technology\nS05,Technology\n")

    groups_args = ("groups", "--prices", str(panel), "--riskfree", str(rf2),
                   "--factors", str(factors), "--factor", "ClosingPrice",
                   "--lookbacks", "1,3,6", "--holdings", "1,3,6")
    g1 = run(*groups_args)
    check("groups exit 0", g1.returncode == 0, g1.stderr.strip())
    check("groups covers G1..G5", all(f"== G{i} " in g1.stdout for i in range(1, 6)))
    check("groups prints proportions", "PosSig" in g1.stdout)
    g2 = run(*groups_args, "--workers", "4")
    check("groups byte-identical across workers", g1.stdout == g2.stdout)

    reg = run("regress", "--prices", str(panel), "--riskfree", str(rf2),
              "--factors", str(factors), "--factor", "ClosingPrice")
    check("regress exit 0", reg.returncode == 0, reg.stderr.strip())
    check("regress reports both methods",
          "\nHL " in "\n" + reg.stdout and "\nMOP " in "\n" + reg.stdout)
    check("regress parenthesized t", "(" in reg.stdout and ")" in reg.stdout)

    for mode in ("index", "within"):
        s1 = run("sectors", "--prices", str(panel), "--riskfree", str(rf2),
                 "--sectors", str(sectors), "--mode", mode,
                 "--lookbacks", "1,3", "--holdings", "1,3")
        check(f"sectors {mode} exit 0", s1.returncode == 0, s1.stderr.strip())
        check(f"sectors {mode} lists sectors",
              "Energy" in s1.stdout and "Technology" in s1.stdout)
        s2 = run("sectors", "--prices", str(panel), "--riskfree", str(rf2),
                 "--sectors", str(sectors), "--mode", mode,
                 "--lookbacks", "1,3", "--holdings", "1,3", "--workers", "8")
        check(f"sectors {mode} byte-identical across workers", s1.stdout == s2.stdout)

    # --- risk-free conversion flag ------------------------------------------
    rf_pct = work / "rf_pct.csv"
    with rf_pct.open("w") as f:
        f.write("month,rate_monthly\n")
        for m in months:
            f.write(f"{m},3.0\n")
    converted = run("grid", "--prices", str(prices), "--riskfree", str(rf_pct),
                    "--rf-annual-pct", "--method", "mop")
    check("rf-annual-pct accepted", converted.returncode == 0, converted.stderr.strip())

    # --- exit codes -----------------------------------------------------------
    usage = run("grid", "--lookbacks", "bogus")
    check("usage error exits 2", usage.returncode == 2)
    missing = run("grid", "--prices", str(work / "nope.csv"), "--riskfree", str(riskfree))
    check("missing file exits 1", missing.returncode == 1)

    gap = work / "gap.csv"
    gap.write_text("asset,month,close,adj_close\nX,2000-01,1,1\nX,2000-03,1,1\n")
    data_err = run("grid", "--prices", str(gap), "--riskfree", str(riskfree))
    check("gap in series exits 1", data_err.returncode == 1,
          data_err.stderr.strip())
    check("data error names the problem", "2000-02" in data_err.stderr)

    unknown_key = work / "bad.conf"
    unknown_key.write_text("bogus=1\n")
    bad_conf = run("grid", "--prices", str(prices), "--riskfree", str(riskfree),
                   "--config", str(unknown_key))
    check("unknown config key exits 2", bad_conf.returncode == 2)

    print(f"{len(failures)} failures")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
