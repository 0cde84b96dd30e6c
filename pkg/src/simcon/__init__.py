"""Simon's congruence ~n: subword equivalence, rich factorizations, exact
class counts C_k(n) and the bounds relating them."""

from simcon.bounds import (
    CountTable,
    appendix_inequality_check,
    c2_upper,
    kppps_bounds,
    kppps_recurrence_check,
    main_bounds,
    naive_bounds,
    prop3_lower,
    prop6_upper,
)
from simcon.congruence import (
    CongruenceKey,
    SubwordSet,
    congruence_key,
    distinguishing_subword,
    equivalent,
    is_minimal,
    minimal_representative,
    subwords_up_to,
)
from simcon.enumeration import (
    EnumerationConfig,
    EnumerationReport,
    count_classes,
    enumerate_minimal,
    verify_against_oracle,
)
from simcon.richness import (
    RichFactorization,
    is_l_rich,
    is_rich,
    rich_factorization,
    richness,
)
from simcon.words import (
    Alphabet,
    Word,
    capped_letter_counts,
    decompose_by_letter,
    format_word,
    is_subword,
    letter_count,
    parse_word,
)

__version__ = "0.1.0"
