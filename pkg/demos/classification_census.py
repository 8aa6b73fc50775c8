#!/usr/bin/env python3
"""Classify all 720 cyclic pivot orderings and tabulate their bounds."""

from collections import Counter

from cyclic_jacobi import (
    classify,
    enumerate_orderings,
    label_text,
    parse_ordering,
    verify_catalog,
)

census = Counter()
bounds = Counter()
for ordering in enumerate_orderings(4):
    record = classify(ordering)
    census[type(record.label).__name__] += 1
    b = record.bound
    bounds[(b.gamma, b.tau, b.t0)] += 1

print("class census over all 720 orderings:")
for name, count in sorted(census.items()):
    print(f"  {name:18s} {count}")

print("\nassigned contraction bounds (gamma, sweeps tau, start cycle t0):")
for (gamma, tau, t0), count in sorted(bounds.items()):
    print(f"  gamma = {gamma:.10f}  tau = {tau}  t0 = {t0}   x{count}")

print("\nexamples:")
for text in (
    "1 2, 2 3, 1 3, 1 4, 2 4, 3 4",
    "1 2, 1 3, 1 4, 3 4, 2 3, 2 4",
    "1 2, 1 3, 2 4, 1 4, 2 3, 3 4",
):
    record = classify(parse_ordering(text))
    print(f"  {text}  ->  {label_text(record.label)}")

report = verify_catalog()
print(f"\ncatalog verification: {'clean' if report.ok else report.failures}")
print(f"catalog class counts: {dict(report.class_counts)}")
