"""A filtered certification run and its re-checkable report.

Runs the identity steps, the construction of p, the negative-term audit,
and one boundary slice (everything pinned to 1, leaving only r free), then
prints the report.  The negative-term audit fails by design — the required
closed form disagrees with the computed polynomial — so the overall verdict
is "incomplete"; every other step verifies.
"""
from hurwitzcert.bmvcert import (
    certify_m6n3, format_report, parse_report, recheck_step,
)
from hurwitzcert.idealkit import Budget

report = certify_m6n3(slice_budget=Budget(max_pairs=200_000,
                                          max_seconds=120.0),
                      slices=["x,y,z,u,b"])

text = format_report(report, deterministic=True)
print(text)

# the serialized form round-trips and self-validates its content hash
again = parse_report(text)
assert again.overall == report.overall
assert len(again.steps) == len(report.steps)

# verified steps re-check independently of the driver
for step in report.steps:
    if step.status == "verified" and step.name.startswith("slice:"):
        assert recheck_step(step)
        print(f"re-checked: {step.name}")
