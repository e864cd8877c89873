"""Dataset handling, synthetic corpora, cross-validation and pipeline runs."""
