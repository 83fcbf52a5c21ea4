#include <iostream>

#include "fiberlip/acceptance.hpp"

int main() {
    const auto results = fiberlip::acceptance::run_all();
    const int failed = fiberlip::acceptance::print_results(results, std::cout);
    return failed == 0 ? 0 : 1;
}
