// Acceptance suite: runs every battery criterion at its pinned tolerance and
// prints one pass/fail line per criterion.

#include <cstdio>
#include <vector>

#include "tsharp/battery.hpp"

int main() {
    const std::vector<tsharp::CriterionResult> criteria = tsharp::run_verify_battery(7, 1e-12);
    bool all = true;
    for (const tsharp::CriterionResult& c : criteria) {
        std::printf("%s criterion %2d: %s [%s]\n", c.pass ? "PASS" : "FAIL", c.id,
                    c.name.c_str(), c.detail.c_str());
        all = all && c.pass;
    }
    std::printf("%s\n", all ? "acceptance: all criteria satisfied"
                            : "acceptance: at least one criterion failed");
    return all ? 0 : 1;
}
