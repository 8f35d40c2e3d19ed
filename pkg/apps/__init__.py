"""
Django applications package.

This package contains the lab apps, from tensors up to the command line.
"""
