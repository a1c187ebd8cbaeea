"""Index statistics of partitions via seaweed meanders, with exact q-series checks."""
