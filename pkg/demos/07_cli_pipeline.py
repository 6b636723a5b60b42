"""The command-line pipeline: generate, process, verify, render.

Every CLI command writes a JSON artifact and exits 0 only after re-checking
its own output.  `verify` re-validates artifacts after the fact (alone, in
pairs with their inputs, or a whole directory at once), so a pipeline can be
audited without trusting the code that produced it.
"""

import json
import pathlib
import tempfile

from blockseq.cli import run

work = pathlib.Path(tempfile.mkdtemp(prefix="blockseq-demo-"))
print(f"working in {work}\n")


def sh(*argv):
    res = run(list(argv))
    line = json.loads(json.dumps(res.log[-1])) if res.log else {}
    print(f"  $ blockseq {' '.join(argv)}")
    print(f"    -> exit {res.exit_code}  {line.get('event', '')}")
    assert res.exit_code == 0, res.log
    return res


seq = str(work / "seq.json")
wit = str(work / "witness.json")
part = str(work / "partition.json")
pts = str(work / "points.json")
avoidw = str(work / "avoid.json")
graph = str(work / "graph.json")
pages = str(work / "pages.json")
svg = str(work / "pages.svg")

print("produce artifacts:")
sh("gen", "--kind", "sequence", "--n", "400", "--seed", "1", "--out", seq)
sh("extract", "--k", "3", "--c", "2", "--in", seq, "--out", wit)
sh("partition", "--k", "2", "--in", seq, "--out", part)
sh("gen", "--kind", "points", "--n", "600", "--seed", "2", "--out", pts)
sh("avoid", "--k", "2", "--in", pts, "--out", avoidw)
sh("gen", "--kind", "graph", "--n", "40", "--m", "150", "--seed", "3",
   "--out", graph)
sh("paginate", "--epsilon", "0.4", "--in", graph, "--out", pages,
   "--svg", svg)

print("\naudit them:")
sh("verify", "--in", wit)                      # self-check
sh("verify", "--witness", wit, "--in", seq)    # against its input
sh("verify", "--witness", pages, "--in", graph, "--oracle")  # brute recount
res = sh("verify", "--all", str(work))
checked = [e for e in res.log if e.get("event") == "verified"]
print(f"    directory sweep verified {len(checked)} artifacts")

print("\nrender:")
sh("render", "--in", pages, "--out", str(work / "diagram.svg"))
sh("render", "--in", wit, "--data", seq, "--out", str(work / "witness.svg"))

print(f"\nartifacts left in {work}:")
for p in sorted(work.iterdir()):
    print(f"  {p.name:14s} {p.stat().st_size:7d} bytes")
