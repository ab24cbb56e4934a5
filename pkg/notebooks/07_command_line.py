"""
The command line
================

Everything above is reachable from ``cubelab`` (or ``python -m cubelab``).
Inputs are JSON descriptors; the sample files used here live in
``tests/data``.  Exit code 0 means a definite answer, 2 an inconclusive
one, 1 an error.
"""

import subprocess
import sys
from pathlib import Path

DATA = Path(__file__).resolve().parent.parent / "tests" / "data"


def cubelab(*args):
    p = subprocess.run([sys.executable, "-m", "cubelab", *args], cwd=DATA,
                       capture_output=True, text=True)
    print("$ cubelab", " ".join(args), f"   [exit {p.returncode}]")
    print(p.stdout[:600] or p.stderr)


# %%
cubelab("verify-median", "--graph", "square.json")
cubelab("cubulate", "--wallspace", "tripod.json", "--format", "dot")

# %%
# ab in F2 is rank one; the certificate can be saved and checked later
cubelab("analyze", "--complex", "f2.json", "--isometry", "f2_ab.json", "rank-one",
        "--L-max", "0", "--depth", "4", "--emit-certificate", "/tmp/ab_cert.json")
cubelab("check-certificate", "--certificate", "/tmp/ab_cert.json")

# %%
# (1, 0) in Z2 has no certificate: inconclusive, with a half-flat as evidence
cubelab("analyze", "--complex", "z2.json", "--isometry", "t10.json", "rank-one",
        "--L-max", "3", "--depth", "8")

# %%
cubelab("raag", "centralizer", "--graph", "p3.json", "--word", "bac")
cubelab("raag", "cross-validate", "--graph", "p4.json", "--word", "ad", "--depth", "5")
