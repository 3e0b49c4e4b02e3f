#ifndef OSC_ACCEPTANCE_HPP
#define OSC_ACCEPTANCE_HPP

// End-to-end verification suite: fourteen numbered criteria covering exact
// reference eigenvalues, projection-norm growth constants, eigenvalue
// asymptotics, gauge-product identities, pseudomode certificates, resolvent
// bounds, and the per-module property suites.  Each criterion reports one
// pass/fail line; a failure marked `documented` is a known numerical
// limitation recorded in the project notes and does not fail the suite.

#include <iosfwd>
#include <string>
#include <vector>

namespace osc::acceptance {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    bool documented = false;  // known-unattainable sub-check (pass == false)
    std::string detail;
};

// Runs all criteria in order, streaming one line per criterion to `out`.
std::vector<CriterionResult> run_all(std::ostream& out, long threads = 0);

// 0 when every criterion passes or is a documented limitation, 1 otherwise.
int exit_code(const std::vector<CriterionResult>& results);

}  // namespace osc::acceptance

#endif
