#include <iostream>

#include "teich/acceptance.hpp"

int main() {
    using namespace teich;
    const GridSpec spec = GridSpec::standard();
    int failed = 0;
    for (int id = 1; id <= acceptance::criterion_count; ++id) {
        acceptance::CriterionResult r = acceptance::run_criterion(id, spec);
        std::cout << acceptance::format_line(r) << std::endl;
        if (!r.pass) ++failed;
    }
    std::cout << (failed ? "FAILED " : "ALL PASSED ") << acceptance::criterion_count - failed << "/"
              << acceptance::criterion_count << std::endl;
    return failed ? 1 : 0;
}
