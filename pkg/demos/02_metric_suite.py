"""Walkthrough of the evaluation metrics on tiny hand-checkable labelings.

The suite scores a predicted clustering (cluster indices) against reference
intents (strings): NMI, ARI, one-to-one accuracy, many-to-one
precision/recall/F1, and example coverage.
"""

from intentbench.metrics import (
    LabelPair,
    ari,
    contingency,
    evaluate,
    many_to_one_map,
    nmi,
)

print("=== identical partitions score 1.0 everywhere ===")
perfect = LabelPair([0, 0, 1, 1], ["refund", "refund", "quote", "quote"])
print(evaluate(perfect).to_dict())

print("\n=== statistically independent partitions ===")
crossed = LabelPair([0, 1, 0, 1], ["a", "a", "b", "b"])
print(f"nmi = {nmi(crossed)}  (no shared information)")
print(f"ari = {ari(crossed)}  (worse than chance pairing: -0.5)")

print("\n=== many-to-one alignment ===")
# two clusters carve up 'refund', a third matches 'quote': both directions
# of the alignment are visible in the contingency table
pair = LabelPair([0, 0, 1, 2, 2], ["refund", "refund", "refund", "quote", "quote"])
table = contingency(pair)
print("contingency rows (clusters) x cols (intents):")
print(table.counts)
print("cluster -> intent map:", many_to_one_map(table))
report = evaluate(pair)
print(f"precision={report.precision:.3f} recall={report.recall:.3f} f1={report.f1:.3f}")

print("\n=== coverage penalizes tiny cluster counts ===")
# one mega-cluster maps to only one of three balanced intents
mega = LabelPair([0] * 9, ["a", "a", "a", "b", "b", "b", "c", "c", "c"])
report = evaluate(mega)
print(f"k_predicted={report.k_predicted}: recall={report.recall:.2f} but coverage={report.example_coverage:.2f}")
print("(high recall alongside low coverage is the signature of under-clustering)")
