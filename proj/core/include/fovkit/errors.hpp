#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace fov {

enum class ErrorCode {
  InvalidArgument,
  ParseError,
  NotHermitian,
  NoConvergence,
  Singular,
  PoleHit,
  NotOnCircle,
  NotUnimodular,
  BisectionFailure,
  RequiresVanishingAtZero,
  PolesNearSpectrum,
  AlphaOnCircle,
  NegativeT,
  DomainError,
  NegativeRadicand,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Text-format error carrying a 1-based source position.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& what)
      : Error(ErrorCode::ParseError,
              "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what),
        line_(line),
        column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

}  // namespace fov
