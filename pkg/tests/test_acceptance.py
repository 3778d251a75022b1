"""The release gate: every shipping criterion at its stated tolerance.

One test per criterion; each prints a PASS/FAIL line with the check's
details.  The expected values are re-derived inside
:mod:`bundle_arith.acceptance` from independent oracles (binomials,
exponential sums, exhaustive scans) or frozen desk-checked facts.

The ``small-index-example`` criterion is expected to fail: its asserted
lattice ("feasible c3 over (3,0) are exactly the even ones") contradicts
exact integrality, which every actual bundle satisfies.  Binomial
arithmetic alone certifies this: chi of the split classes (3,0,0) and
(3,0,-4) at twist 1 are 138 and 113, pinning the affine dependence of
chi on c3 to 25/4 per unit, so c3 = 2 would give the non-integer 301/2.
The computed lattice is 4Z and the resulting subgroup index 3.  The
check is kept exactly as stated and reports the mismatch.
"""

import pytest

from bundle_arith import acceptance


@pytest.mark.parametrize("key", list(acceptance.CRITERIA), ids=str)
def test_criterion(key):
    result = acceptance.run(key)
    line = f"[{result.status}] {result.key}: {result.details}"
    print(line)
    assert result.passed, line
