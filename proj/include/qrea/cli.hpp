#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include <json.hpp>

namespace qrea::cli {

struct RunConfig {
    std::string command;
    std::string suite;
    std::string in, out;
    int n = 2;
    double q0 = 0.5;
    double tol = 1e-8;
    int dim = 16;
    std::uint64_t seed = 1;
    bool enumerate = false;
    int rank = -1;  // -1: rank n
    std::size_t limit = 1000;
};

// Exit codes.
inline constexpr int kPass = 0;
inline constexpr int kFail = 1;
inline constexpr int kInputError = 2;

class InputError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

struct CommandResult {
    int exit_code = kPass;
    nlohmann::json report;
};

CommandResult cmd_verify(const RunConfig& cfg);
CommandResult cmd_build(const RunConfig& cfg, const nlohmann::json& spec);
// input is a label document {"shape":…, "central":[…]}; ignored when cfg.enumerate.
CommandResult cmd_classify(const RunConfig& cfg, const nlohmann::json& input);

// Parses argv, dispatches, writes the report; returns the exit code.
int run(int argc, const char* const* argv);

}  // namespace qrea::cli
