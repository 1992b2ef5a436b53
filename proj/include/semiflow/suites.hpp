#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "semiflow/hmeasure.hpp"
#include "semiflow/rates.hpp"

namespace semiflow::suites {

struct Check {
    std::string name;
    bool pass;
    std::string detail;
};

struct Options {
    uint64_t seed = 7;
    int64_t walks = 100000;
    double a = 1.0;
    std::string generator_id;  // suite default when empty
    /// Reduced lattices and walk counts; verdict semantics unchanged.
    bool quick = false;
};

struct Report {
    std::string suite;
    uint64_t seed = 0;
    bool pass = false;
    std::vector<Check> checks;
    /// Deterministic JSON payload: same options and seed give identical
    /// bytes. Timestamps are the CLI's business, not the payload's.
    std::string payload;
};

const std::vector<std::string>& suite_names();
bool is_suite(const std::string& name);

/// Runs one named suite: thm1.1, thm4.7, thm5.1, ex4.8, ex5.4, lavrentiev,
/// envelope, subordination. Throws std::invalid_argument for unknown names
/// or bad options.
Report run(const std::string& name, const Options& opts);

}  // namespace semiflow::suites
