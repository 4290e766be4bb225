#pragma once

#include <stdexcept>
#include <string>

namespace covergauge {

// Error codes split into two classes for process exit status mapping:
// operational errors (bad input, budget) and semantic failures (a stated
// hypothesis or property does not hold, with a witness in the message).
enum class Errc {
    // operational
    parse_error,
    validation_error,
    unknown_command,
    budget_exceeded,
    search_budget,
    // semantic
    not_homeomorphism,
    not_development,
    invalid_tunnels,
    not_invariant_gauge,
    hypothesis_fail,
    not_equiregular,
    not_nearly_proper,
    not_separating,
    bad_exhaustion,
};

inline const char* errc_name(Errc c) {
    switch (c) {
        case Errc::parse_error: return "PARSE_ERROR";
        case Errc::validation_error: return "VALIDATION_ERROR";
        case Errc::unknown_command: return "UNKNOWN_COMMAND";
        case Errc::budget_exceeded: return "BUDGET_EXCEEDED";
        case Errc::search_budget: return "SEARCH_BUDGET";
        case Errc::not_homeomorphism: return "NOT_HOMEOMORPHISM";
        case Errc::not_development: return "NOT_DEVELOPMENT";
        case Errc::invalid_tunnels: return "INVALID_TUNNELS";
        case Errc::not_invariant_gauge: return "NOT_INVARIANT_GAUGE";
        case Errc::hypothesis_fail: return "HYPOTHESIS_FAIL";
        case Errc::not_equiregular: return "NOT_EQUIREGULAR";
        case Errc::not_nearly_proper: return "NOT_NEARLY_PROPER";
        case Errc::not_separating: return "NOT_SEPARATING";
        case Errc::bad_exhaustion: return "BAD_EXHAUSTION";
    }
    return "UNKNOWN";
}

inline bool errc_is_operational(Errc c) {
    switch (c) {
        case Errc::parse_error:
        case Errc::validation_error:
        case Errc::unknown_command:
        case Errc::budget_exceeded:
        case Errc::search_budget:
            return true;
        default:
            return false;
    }
}

class Error : public std::runtime_error {
  public:
    Error(Errc code, std::string detail)
        : std::runtime_error(std::string(errc_name(code)) + ": " + detail), code_(code) {}
    Errc code() const { return code_; }

  private:
    Errc code_;
};

}  // namespace covergauge
