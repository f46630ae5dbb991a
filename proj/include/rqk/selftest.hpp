#pragma once

#include <iosfwd>

namespace rqk {

// Runs the oracle-equivalence and invariant suites that back the toolkit's
// correctness story (closed-form vs gate-level quantum kernel, analytic
// single-qubit kernel, Gram validity, SMO vs reference QP, radar peak
// placement), printing one pass/fail line per check. Returns true when all
// checks pass. quick mode shrinks the randomized sample counts.
bool run_selftest(std::ostream& out, bool quick = false);

}  // namespace rqk
