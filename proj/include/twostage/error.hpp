#pragma once

#include <stdexcept>
#include <string>

namespace twostage {

enum class ErrorCode {
    InvalidArgument,
    Coordinate,  // site outside the lattice
    Domain,      // site outside the active mask, empty regions
    Parse,
    Contract,    // kappa mismatch, non-monotone rule on the frontier path
    Geometry,    // boxes, crosses or squares that do not fit
};

class Error : public std::runtime_error {
  public:
    Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

  private:
    ErrorCode code_;
};

class ParseError : public Error {
  public:
    ParseError(int line, const std::string& what)
        : Error(ErrorCode::Parse, "line " + std::to_string(line) + ": " + what), line_(line) {}

    /// 1-based line of the offending input.
    int line() const noexcept { return line_; }

  private:
    int line_;
};

}  // namespace twostage
