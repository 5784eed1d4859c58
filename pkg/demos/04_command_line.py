# coding: utf-8

# # The command-line tool
#
# Everything above is also reachable from the shell through ``localcomp``.
# Here we drive it in-process with ``cli.main`` so the script is
# self-contained. From a shell the equivalent is
# ``localcomp marginals model.json --all``.

# In[1]:

import io
import json
import tempfile
from pathlib import Path

from localcomp import cli


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = cli.main(list(argv), out=out, err=err)
    print(f"$ localcomp {' '.join(argv)}   (exit {code})")
    print(out.getvalue() or err.getvalue())


# A triangle of pairwise potentials, which is not a hypertree.

# In[2]:

model = {
    "variables": {"X": ["0", "1"], "Y": ["0", "1"], "Z": ["0", "1"]},
    "algebra": "potential",
    "factors": [
        {"domain": ["X", "Y"], "values": [1, 2, 1, 1]},
        {"domain": ["Y", "Z"], "values": [2, 1, 1, 3]},
        {"domain": ["Z", "X"], "values": [1, 1, 2, 1]},
    ],
}
path = Path(tempfile.mkdtemp()) / "triangle.json"
path.write_text(json.dumps(model))


# In[3]:

run("check", str(path))
run("cover", str(path))


# Without ``--cover`` the marginals command refuses (exit 3). With it, the
# domains are enlarged and the answer is checked against brute force.

# In[4]:

run("marginals", str(path), "--all")
run("marginals", str(path), "--all", "--cover", "--oracle", "--normalize")
