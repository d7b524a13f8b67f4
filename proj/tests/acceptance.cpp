// Acceptance gate: runs every clause of the contract and prints one
// PASS/FAIL line per criterion.  Exit status 0 only if all of them pass.

#include <lagrange/verify.hpp>

#include <iostream>

int main() {
    lagrange::VerifyReport rep = lagrange::run_acceptance(std::cout);
    return rep.all_pass ? 0 : 1;
}
