"""
cellkey_dp Package

Maximum-entropy perturbation noise design, (epsilon, delta) accounting and
cell-key lookup-table sampling for counting queries.
"""

__version__ = "26.10.35.1"
