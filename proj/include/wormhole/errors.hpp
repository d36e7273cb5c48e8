#pragma once

#include <stdexcept>
#include <string>

namespace wormhole {

// Every failure mode the library can raise, so callers (and the CLI exit-code
// mapping) can dispatch on the condition instead of parsing message text.
enum class ErrorKind {
    InvalidArgument,     // bad parameter values (r <= 0, n < 0, b1 >= r, ...)
    EmptyDomain,         // embedding region empty or degenerate
    OutOfDomain,         // evaluation point outside the valid u-interval
    UnsupportedCoupling, // closed forms need tau = +1/2 or -1/2
    PochhammerPole,      // 2F1 lower parameter hits a nonpositive integer
    RecurrenceBreakdown, // vanishing denominator in a polynomial recurrence
    NoConvergence,       // iteration/quadrature budget exhausted
    ThroatSingularity,   // R(u) -> 0 at the requested point
    BranchCutHit,        // power-factor base lands on its branch cut
    MassShellSingularity,// |E + M| too small to divide by
    RootNotBracketed,    // energy scan found no sign change / |f| minimum
    NoTermination,       // power series cannot terminate (ansatz off-class)
    IoError,             // filesystem failure while writing outputs
};

class Error : public std::runtime_error {
  public:
    Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    ErrorKind kind() const noexcept { return kind_; }

  private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) {
    throw Error(kind, what);
}

inline const char* error_kind_name(ErrorKind k) {
    switch (k) {
        case ErrorKind::InvalidArgument: return "InvalidArgument";
        case ErrorKind::EmptyDomain: return "EmptyDomain";
        case ErrorKind::OutOfDomain: return "OutOfDomain";
        case ErrorKind::UnsupportedCoupling: return "UnsupportedCoupling";
        case ErrorKind::PochhammerPole: return "PochhammerPole";
        case ErrorKind::RecurrenceBreakdown: return "RecurrenceBreakdown";
        case ErrorKind::NoConvergence: return "NoConvergence";
        case ErrorKind::ThroatSingularity: return "ThroatSingularity";
        case ErrorKind::BranchCutHit: return "BranchCutHit";
        case ErrorKind::MassShellSingularity: return "MassShellSingularity";
        case ErrorKind::RootNotBracketed: return "RootNotBracketed";
        case ErrorKind::NoTermination: return "NoTermination";
        case ErrorKind::IoError: return "IoError";
    }
    return "Unknown";
}

} // namespace wormhole
