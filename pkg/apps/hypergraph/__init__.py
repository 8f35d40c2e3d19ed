"""
Hypergraph Django app.

Arity-indexed relation tensors, node permutations and exhaustive
enumeration of small labeled graphs.
"""
