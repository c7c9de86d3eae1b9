#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "bosonext/verify.hpp"

using namespace bosonext;

namespace {

struct Outcome {
    bool passed = true;
    long checks = 0;
    std::vector<std::string> details;
};

// Runs one suite on one Cartan type and folds the result into the outcome.
void run_on(Outcome& o, const std::string& suite, const std::string& type, SuiteConfig cfg, int height_bound = 6) {
    UqContext ctx(CartanDatum::preset(type), height_bound);
    SuiteResult r = run_suite(suite, ctx, cfg);
    o.checks += r.checks;
    if (!r.passed) {
        o.passed = false;
        for (const auto& m : r.messages) o.details.push_back(type + " " + suite + ": " + m);
    }
    for (const auto& m : r.messages)
        if (m.rfind("failed", 0) != 0) o.details.push_back(type + " " + suite + ": " + m);
}

SuiteConfig config(int trials, std::uint64_t seed) {
    SuiteConfig c;
    c.trials = trials;
    c.seed = seed;
    return c;
}

// Number of operators E(w) L(w') over basis words with ht(w) + ht(w') <= 3 for A2:
// weight-space dimensions by height are 1, 2, 4, 6.
long expected_psi_family() {
    const long dims[] = {1, 2, 4, 6};
    long total = 0;
    for (int a = 0; a <= 3; ++a)
        for (int b = 0; a + b <= 3; ++b) total += dims[a] * dims[b];
    return total;
}

}  // namespace

int main() {
    struct Criterion {
        int number;
        const char* title;
        double budget_seconds;
        std::function<void(Outcome&)> body;
    };
    const std::vector<Criterion> criteria{
        {1, "defining relations on the faithful module (A2, B2, G2, A1(1))", 120,
         [](Outcome& o) {
             for (const char* t : {"A2", "B2", "G2", "A1(1)"}) run_on(o, "relations", t, config(25, 1));
         }},
        {2, "serial decomposition G o F = id, F o G = id", 0,
         [](Outcome& o) {
             for (const char* t : {"A2", "B2"}) run_on(o, "serial", t, config(25, 2));
         }},
        {3, "closed forms of hform, pairform and aform (A2, B2)", 0,
         [](Outcome& o) {
             for (const char* t : {"A2", "B2"}) run_on(o, "closed-forms", t, config(25, 3));
         }},
        {4, "form structure on random homogeneous pairs", 0,
         [](Outcome& o) {
             for (const char* t : {"A2", "B2"}) run_on(o, "forms", t, config(25, 4));
         }},
        {5, "nonzero Gram determinants on A[0,1] bi-weight blocks (A2)", 0,
         [](Outcome& o) { run_on(o, "nondegeneracy", "A2", config(25, 5)); }},
        {6, "quantum boson algebra relations and Psi-independence", 0,
         [](Outcome& o) {
             for (const char* t : {"A2", "B2", "G2"}) run_on(o, "boson", t, config(25, 6));
             std::string want = "Psi family: " + std::to_string(expected_psi_family()) + " operators, rank " + std::to_string(expected_psi_family());
             bool seen = false;
             for (const auto& d : o.details) seen = seen || d == "A2 boson: " + want;
             if (!seen) {
                 o.passed = false;
                 o.details.push_back("A2 Psi family differs from " + want);
             }
         }},
        {7, "upper global basis to height 4 (A2, B2)", 180,
         [](Outcome& o) {
             for (const char* t : {"A2", "B2"}) run_on(o, "gup", t, config(25, 7));
         }},
        {8, "global basis of A2 on levels [-1,1], strong height <= 4", 600,
         [](Outcome& o) { run_on(o, "gb", "A2", config(25, 8)); }},
        {9, "integral form closure and the counterexample", 0,
         [](Outcome& o) {
             for (const char* t : {"A2", "B2"}) run_on(o, "integral", t, config(100, 9));
         }},
        {10, "standard elements unitriangular over the normalized global basis (A2, rw 1,2,1)", 0,
         [](Outcome& o) {
             SuiteConfig c = config(25, 10);
             c.reduced_word = {0, 1, 0};
             run_on(o, "standard", "A2", c);
         }},
    };

    bool all = true;
    for (const auto& c : criteria) {
        Outcome o;
        auto start = std::chrono::steady_clock::now();
        try {
            c.body(o);
        } catch (const std::exception& e) {
            o.passed = false;
            o.details.push_back(std::string("error: ") + e.what());
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (c.budget_seconds > 0 && secs > c.budget_seconds) {
            o.passed = false;
            o.details.push_back("runtime over budget");
        }
        all = all && o.passed;
        std::printf("%s criterion %d: %s (%ld checks, %.1fs)\n", o.passed ? "PASS" : "FAIL", c.number, c.title, o.checks, secs);
        for (const auto& d : o.details) std::printf("    %s\n", d.c_str());
    }
    return all ? 0 : 1;
}
