from .builtin import goodman_certificate, mantel_certificate, prove_goodman, prove_mantel
from .certificate import (
    Assumption,
    Block,
    Certificate,
    CertificateError,
    Target,
    Verdict,
    analyze_target,
    expand_block,
    verify_certificate,
)
from .psd import ldl_decompose, psd_check_exact
from .search import search_certificate
