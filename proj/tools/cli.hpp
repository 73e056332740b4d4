#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace gtl::cli {

struct RunConfig {
    std::string input;
    std::string command;
    std::string kind;  // check-cocycle only
    std::optional<int> arity;
    std::optional<int> winding;
    int max_faces = 3;
    std::vector<int> turns{1, 2};
    std::optional<std::string> puncture;
    std::optional<std::string> scalars;
    std::string format = "text";
    std::optional<std::string> dot;
    int jobs = 1;
    std::uint64_t seed = 20240601;
    int instances = 100;
    bool timing = false;
};

const std::vector<std::string>& commands();

/// Exit status: 0 all suites pass, 1 some suite failed, 2 bad input or
/// configuration, 3 catalog memory cap hit.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Parses argv and dispatches to run().
int main(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace gtl::cli
