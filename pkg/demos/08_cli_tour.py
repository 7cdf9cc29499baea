# A tour of the command-line front end.
#
# Each command prints a report with a digest of its inputs, the result, and a
# verification section.  The exit status is 0 when every check passes.

# %%
import subprocess
import sys
import tempfile
from pathlib import Path

from lowdim.linkgeom import hopf_link

tmp = Path(tempfile.mkdtemp())
(tmp / "l3.link").write_text("framedlink n=1\n1 1\n3\n")
(tmp / "rp3.link").write_text("framedlink n=1\n1 1\n2\n")
a, b = hopf_link()
(tmp / "a.curve").write_text(a.to_text())
(tmp / "b.curve").write_text(b.to_text())


def lowdim(*args):
    proc = subprocess.run([sys.executable, "-m", "lowdim", *map(str, args)],
                          capture_output=True, text=True)
    print(f"$ lowdim {' '.join(map(str, args))}   (exit {proc.returncode})")
    print(proc.stdout or proc.stderr)


# %%
lowdim("spin-count", tmp / "rp3.link")
lowdim("evenize", tmp / "l3.link")
lowdim("link", tmp / "a.curve", tmp / "b.curve")
lowdim("surface", "n1", "o2", "--format", "json")
