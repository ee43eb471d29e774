// Acceptance suite: one line per criterion, nonzero exit on any failure.

#include <cstdio>

#include "wedgecas/validate.hpp"

int main() {
    const auto checks = wedgecas::run_acceptance_checks();
    bool all_pass = true;
    int idx = 0;
    for (const auto& c : checks) {
        ++idx;
        all_pass = all_pass && c.pass;
        std::printf("[%s] %2d. %-32s measured=%-13.6g tol=%-9.3g%s%s\n",
                    c.pass ? "PASS" : "FAIL", idx, c.name.c_str(), c.measured,
                    c.tolerance, c.note.empty() ? "" : "  ", c.note.c_str());
    }
    std::printf("%d/%d criteria passed\n", [&] {
        int n = 0;
        for (const auto& c : checks) n += c.pass ? 1 : 0;
        return n;
    }(), static_cast<int>(checks.size()));
    return all_pass ? 0 : 1;
}
