#include <iostream>

#include "eftlab/acceptance.hpp"

int main() {
    const auto outcomes = eftlab::run_acceptance(std::cout);
    const int failures = eftlab::count_failures(outcomes);
    std::cout << (failures == 0 ? "ALL CRITERIA PASSED" : "FAILURES PRESENT") << " ("
              << outcomes.size() - failures << "/" << outcomes.size() << ")\n";
    return failures == 0 ? 0 : 1;
}
