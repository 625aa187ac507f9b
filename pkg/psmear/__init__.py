PROJECT = 'psmear'
AUTHOR = 'psmear contributors'
__version__ = '1.0.0-alpha-1'

parallel_scans = True
"""
Evaluate the lattice rows of two-dimensional positivity scans on a thread pool.

Switch it off when the caller already parallelizes on a higher level.
"""

scan_workers = None
"""
Number of threads used for scans. ``None`` uses the number of physical cores as reported by psutil.
"""
