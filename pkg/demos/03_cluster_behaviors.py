"""
Letting the data pick the number of behavior groups
===================================================

One automaton over the whole cohort averages careful and chaotic students
into mush. Clustering first, then building one automaton per cluster,
keeps the pictures honest. X-means grows k only while the Bayesian
information criterion rewards the split, so the ceiling we allow barely
matters when the data has a clear shape.
"""

import numpy as np

from tutorlens import (
    build_automaton,
    cluster_logs,
    demo_config,
    error_coefficient,
    feature_matrix,
    synthesize_corpus,
)

config = demo_config()
logs = synthesize_corpus(config, 87, seed=0)

# The "errors" feature is a single weighted fail count per student.
X = feature_matrix(config, logs, "errors")
print(f"errors feature: {X.shape[0]} students x {X.shape[1]} dim")
print(f"  weighted fails: min {X.min():.1f}, median {np.median(X):.1f},"
      f" max {X.max():.1f}")

for k_max in (4, 8, 12):
    result = cluster_logs(config, logs, method="xmeans", feature="errors",
                          k_min=1, k_max=k_max, seed=0)
    print(f"  allowed up to {k_max:>2} clusters -> xmeans chose k={result.k}")

# Clusters come relabeled by ascending center, so cluster 0 is always the
# calmest group; grades tell the same story from the outside.
result = cluster_logs(config, logs, method="xmeans", feature="errors", seed=0)
print()
for c in range(result.k):
    members = [log for log, lab in zip(logs, result.labels) if lab == c]
    automaton = build_automaton(config, members)
    coeff = np.mean([error_coefficient(config, log) for log in members])
    grades = [log.grade for log in members if log.grade is not None]
    print(f"cluster {c}: {len(members):>2} students, {len(automaton.states):>4}"
          f" automaton states, center {result.centers[c][0]:5.1f},"
          f" mean error coefficient {coeff:5.2f}, mean grade {np.mean(grades):.1f}")

# Richer features split finer. Counting events per zone separates cohorts
# by where they spend their time, not just how often they fail.
finer = cluster_logs(config, logs, method="xmeans", feature="zone-events",
                     k_max=4, seed=0)
sizes = np.bincount(finer.labels, minlength=finer.k)
print(f"\nzone-events feature, same corpus: k={finer.k},"
      f" cluster sizes {sizes.tolist()}")
