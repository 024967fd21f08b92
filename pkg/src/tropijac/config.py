"""Size caps for the exhaustive searches.

The environment variable ``TROPIJAC_CAP`` overrides the subset-scan cap.
"""
import os

from .errors import CapExceeded

SUBSET_CAP = 20
AUTOMORPHISM_CAP = 8
GENUS_CAP = 3


def subset_cap():
    raw = os.environ.get("TROPIJAC_CAP")
    if raw:
        try:
            return int(raw)
        except ValueError:
            pass
    return SUBSET_CAP


def check_subset_cap(n, what="vertex set"):
    cap = subset_cap()
    if n > cap:
        raise CapExceeded(f"{what} of size {n} exceeds subset-scan cap {cap}")
