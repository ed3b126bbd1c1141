"""Library-circulation analytics toolkit.

Thin wrapper around the compiled ``circmine._core`` extension: Apriori
association-rule mining with the iterative support-reduction loop, k-means
over nominal attributes, preprocessing helpers (grade levels, LC call-number
parsing, lifespan buckets, academic years), and a seeded synthetic dataset
generator.
"""

from circmine._core import (
    __version__,
    academic_year,
    frequent_itemsets,
    generate_csv,
    grade_level,
    kmeans_nominal,
    lc_table,
    lifespan_bucket,
    mine,
    parse_lc,
    support_count,
)

__all__ = [
    "__version__",
    "academic_year",
    "frequent_itemsets",
    "generate_csv",
    "grade_level",
    "kmeans_nominal",
    "lc_table",
    "lifespan_bucket",
    "mine",
    "parse_lc",
    "support_count",
]
