"""Forcing many simultaneous values with bookkept small subforcings.

The mod1 recipe interleaves eventually-different forcing (cofinally)
with all small subforcings of localization, random and Hechler forcing
below three thresholds.  Each threshold pins one system to a small-set
covering; the cofinal slots pin the meager system to the iteration's
cofinality.  Six simultaneous values result.
"""

from cichon.builtins import builtin
from cichon.diagram import format_constellation, to_dot
from cichon.systems import render

model = builtin("mod1").derive()
print("mod1 constellation (six values):")
print(format_constellation(model.constellation))

print("the headline connections, with their justifications:")
for f in model.db.facts:
    if f.rule.startswith("forge:") and f.rule != "forge:preEUB-card":
        print(f"  {render(f.lhs)} <= {render(f.rhs)}   [{f.rule}]")

print()
print("DOT rendering (pipe into `dot -Tpng` to draw):")
print(to_dot(model.constellation))

# mod2/mod3/mod5 trade which systems collapse together.
for name in ("mod2", "mod3", "mod5"):
    model = builtin(name).derive()
    vals = {k: iv.lo for k, iv in model.constellation.items()}
    print(name, "pins:", " ".join(f"{k}={v}" for k, v in vals.items()))
