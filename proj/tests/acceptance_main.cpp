// Runs the full verification suite and prints one line per criterion.
// Exit status is 0 when every criterion passes or is a documented numerical
// limitation, 1 otherwise.

#include <iostream>

#include "osc/acceptance.hpp"

int main() {
    const auto results = osc::acceptance::run_all(std::cout);
    return osc::acceptance::exit_code(results);
}
