# coding: utf-8

# # The command line tool
#
# `puresep` (or `python -m puresep`) generates, checks and benchmarks state
# files.  Exit codes: 0 separable, 1 entangled, 2 usage or parse error,
# 3 numerical failure or criteria conflict.

# %%
import json
import subprocess
import sys
import tempfile
from pathlib import Path


def cli(*args):
    proc = subprocess.run([sys.executable, "-m", "puresep", *args], capture_output=True, text=True)
    return proc.returncode, proc.stdout + proc.stderr


tmp = Path(tempfile.mkdtemp())
print(cli("gen", "cat", "--n", "3", "--out", str(tmp / "ghz.txt")))
print((tmp / "ghz.txt").read_text())

# %%
code, out = cli("check", "--input", str(tmp / "ghz.txt"), "--criterion", "prop")
print(code)
print(out)

# %%
cli("gen", "random-product", "--dims", "2", "3", "--seed", "5", "--out", str(tmp / "p.txt"))
code, out = cli("check", "--input", str(tmp / "p.txt"), "--machine")
print(code, json.loads(out)["factors"])

# %%
code, out = cli("oracle", "--input", str(tmp / "ghz.txt"))
print(code, out)

# %%
(tmp / "bad.txt").write_text("QSTATE 1\n2\n2 2\n1 0\n")
print(cli("check", "--input", str(tmp / "bad.txt")))
