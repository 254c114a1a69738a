// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.
#include <iostream>

#include "suites.hpp"

int main() {
    qorder::verify::SuiteConfig cfg;
    bool all = true;
    cfg.on_result = [&](const qorder::verify::CriterionResult& r) {
        all = all && r.passed;
        std::cout << r.id << ' ' << (r.passed ? "PASS" : "FAIL") << ' ' << r.title << " | " << r.detail << " | "
                  << r.seconds << " s" << std::endl;
    };
    qorder::verify::run_all(cfg);
    return all ? 0 : 1;
}
