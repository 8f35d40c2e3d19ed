"""
Tensor core Django app.

Dense float64 tensor helpers, multilayer perceptrons with hand-derived
gradients, and the Adam optimizer.
"""
