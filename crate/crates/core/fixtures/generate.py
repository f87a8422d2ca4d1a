"""Regenerates synthetic_log.jsonl (deterministic)."""
import json
import random
from pathlib import Path

DIMS = ["topicality", "reliability", "understandability", "interest", "habit", "scope", "novelty"]
rng = random.Random(20190414)
lines = []


def rec(q, d, clicked=False, sat=False, scores=None):
    if scores is None:
        scores = {k: round(rng.uniform(-2.0, 3.0), 4) for k in DIMS}
    lines.append({"query_id": q, "doc_id": d, "scores": scores, "clicked": clicked, "sat_clicked": sat})


# Exactly two SAT clicks.
for i in range(1, 7):
    q = f"q{i:02d}"
    rec(q, f"{q}-d1", True, True)
    rec(q, f"{q}-d2")
    rec(q, f"{q}-d3", True, True)
    if i % 2 == 0:
        rec(q, f"{q}-d4", True, False)
    rec(q, f"{q}-d5")

# One SAT click with a varying number of unclicked documents.
for i in range(7, 13):
    q = f"q{i:02d}"
    rec(q, f"{q}-d1", True, True)
    for j in range(2, 2 + (i % 3) + 1):
        rec(q, f"{q}-d{j}")
    if i % 2:
        rec(q, f"{q}-d9", True, False)

# Three SAT clicks.
rec("q13", "q13-d1", True, True)
rec("q13", "q13-d2", True, True)
rec("q13", "q13-d3", True, True)
rec("q13", "q13-d4")

# Clicks without SAT.
rec("q14", "q14-d1", True, False)
rec("q14", "q14-d2", True, False)
rec("q14", "q14-d3")
rec("q14", "q14-d4")

# shared-a / shared-b: SAT together twice, unclicked together twice.
for i, together in zip(range(15, 19), [True, True, False, False]):
    q = f"q{i:02d}"
    rec(q, "shared-b", together, together)
    rec(q, "shared-a", together, together)
    rec(q, f"{q}-d1", not together, not together)
    rec(q, f"{q}-d2")

# shared-c / shared-d: always correlated, SAT together three times out of four.
for i, together in zip(range(19, 23), [True, True, True, False]):
    q = f"q{i:02d}"
    rec(q, "shared-c", together, together)
    rec(q, "shared-d", together, together)
    rec(q, f"{q}-d1")

# shared-e / shared-f: one uncorrelated co-occurrence.
rec("q23", "shared-e", True, True)
rec("q23", "shared-f", True, True)
rec("q23", "q23-d1")
rec("q24", "shared-e", True, True)
rec("q24", "shared-f")
rec("q24", "q24-d1")

# Worked order-effect document: reliability amplitude 0.9715, topicality 0.3535.
lo = {k: 0.0 for k in DIMS}
hi = {k: 1.0 for k in DIMS}
mid = {k: 0.5 for k in DIMS}
mid["reliability"] = 0.9715 ** 2
mid["topicality"] = 0.3535 ** 2
rec("q25", "doc-worked", True, True, mid)
rec("q25", "q25-lo", False, False, lo)
rec("q25", "q25-hi", False, False, hi)

out = Path(__file__).with_name("synthetic_log.jsonl")
out.write_text("".join(json.dumps(l) + "\n" for l in lines))
print(f"{len(lines)} records, {len({l['query_id'] for l in lines})} queries")
