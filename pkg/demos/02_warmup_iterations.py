"""The five warm-up iterations and the constellations they force.

Each recipe iterates a single poset class lambda-many times.  The class
determines which systems get dominated cofinally (pinning them to the
iteration length) and which stay good (pinning them to a small-set
covering system at aleph1).  The derived fact database carries a full
justification for every connection.
"""

from cichon.builtins import builtin
from cichon.diagram import format_constellation

for name in ("cohen", "random", "evdiff", "hechler", "loc"):
    model = builtin(name).derive()
    print(f"=== {name} ===")
    print("rules applied:", ", ".join(model.trace))
    print(format_constellation(model.constellation))

# A closer look at the random model: the first few derivation steps.
model = builtin("random").derive()
print("first derived facts of the random model:")
for line in model.db.trace_lines()[:12]:
    print(" ", line)
