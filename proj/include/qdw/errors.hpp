#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>

namespace qdw {

// Base for all library errors. `code()` is a stable machine-readable tag
// (used by the CLI for --json-errors and exit-code mapping), what() the
// human-readable message.
class error : public std::runtime_error {
public:
    error(std::string code, const std::string& message)
        : std::runtime_error(message), code_(std::move(code)) {}

    const std::string& code() const noexcept { return code_; }

private:
    std::string code_;
};

// Bad arguments from the caller: non-finite parameters, negative tunneling,
// zero states, malformed grids. Maps to a usage error in the CLI.
struct invalid_input_error : error {
    explicit invalid_input_error(const std::string& m) : error("invalid_input", m) {}
};

// A name lookup failed (preset, figure id). Usage error in the CLI.
struct lookup_error : error {
    explicit lookup_error(const std::string& m) : error("unknown_name", m) {}
};

// State-spec grammar violation; carries the byte offset of the offending
// character in the input string.
struct parse_error : error {
    parse_error(const std::string& m, std::size_t pos)
        : error("parse_error", m), position(pos) {}
    std::size_t position;
};

// An algorithm failed numerically (iteration did not converge, residual too
// large). Maps to a runtime error in the CLI.
struct numeric_error : error {
    explicit numeric_error(const std::string& m) : error("numeric_failure", m) {}
};

// The interference coefficient beta has a vanishing denominator for the
// requested coefficients, so the envelope model cannot be formed.
struct undefined_beta_error : error {
    explicit undefined_beta_error(const std::string& m) : error("undefined_beta", m) {}
};

// A least-squares fit has a (numerically) singular design matrix, e.g. a
// constant basis function.
struct degenerate_fit_error : error {
    explicit degenerate_fit_error(const std::string& m) : error("degenerate_fit", m) {}
};

// The slow gap E4 - E3 vanishes, so the characteristic timescale diverges.
struct infinite_timescale_error : error {
    explicit infinite_timescale_error(const std::string& m) : error("infinite_timescale", m) {}
};

// Filesystem failure while writing an output artifact.
struct io_error : error {
    explicit io_error(const std::string& m) : error("io_failure", m) {}
};

} // namespace qdw
