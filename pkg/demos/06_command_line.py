"""Driving the ``latentweight`` command from a script.

The same entry point backs the installed ``latentweight`` executable and
``python3 -m latentweight``. Here it is called in-process: a Markov network
is materialized to a joint table, then decomposed.
"""

from __future__ import annotations

import json
import tempfile
from pathlib import Path

from latentweight.cli import main as cli


def main():
    with tempfile.TemporaryDirectory() as tmp:
        joint = Path(tmp) / "pair.json"
        cli(["from-mrf", "pair_mrf", "-o", str(joint), "--summary"])
        out = Path(tmp) / "decomposition.json"
        cli(["decompose", str(joint), "-o", str(out), "--summary"])
        doc = json.loads(out.read_text())
        print(f"lambda = {doc['lambda']:.6f}, q* = {doc['q_star']}")

        # exit status 1 on bad input, with the failing file named
        status = cli(["certify", str(joint), "--lambda", "0.5", "--q", "0.5,0.5,0.5"])
        print(f"mismatched certificate exits with status {status}")


if __name__ == "__main__":
    main()
