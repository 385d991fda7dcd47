// One line per criterion; nonzero exit when any criterion fails.
#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include "polyreg/acceptance.hpp"

int main(int argc, char** argv)
{
    std::vector<int> ids;
    polyreg::acceptance::Options opts;
    if (const char* s = std::getenv("SEED")) opts.seed = std::stoull(s);
    for (int i = 1; i < argc; ++i) ids.push_back(std::stoi(argv[i]));
    int failed = 0;
    polyreg::acceptance::run_all(ids, opts, [&](const polyreg::acceptance::Result& r) {
        std::cout << polyreg::acceptance::line(r) << std::endl;
        failed += !r.pass;
    });
    std::cout << (failed ? "FAILED " : "ALL PASSED ") << failed << " failing" << std::endl;
    return failed ? 1 : 0;
}
