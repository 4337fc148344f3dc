"""Fault-tolerant connectivity labeling schemes.

Per-vertex labels from which u-v connectivity under a set of vertex (or edge)
failures is decoded from the labels of u, v, and the failed elements alone.
"""

__version__ = "0.1.0"
