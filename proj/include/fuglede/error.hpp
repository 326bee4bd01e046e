#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace fuglede {

enum class Errc {
  InvalidModulus,
  Overflow,
  GroupMismatch,
  InvalidElement,
  NotADivisor,
  InvalidArgument,
  EmptyInput,
  NotTwoDistinctPrimes,
  NotPQShape,
  WrongShape,
  InvalidDirection,
  TooSmall,
  TooLarge,
  NotATilingPair,
  NotASpectralPair,
  TheoremViolation,
  BudgetExhausted,
  Unsupported,
  ParseError,
};

constexpr std::string_view to_string(Errc code) {
  switch (code) {
    case Errc::InvalidModulus: return "InvalidModulus";
    case Errc::Overflow: return "Overflow";
    case Errc::GroupMismatch: return "GroupMismatch";
    case Errc::InvalidElement: return "InvalidElement";
    case Errc::NotADivisor: return "NotADivisor";
    case Errc::InvalidArgument: return "InvalidArgument";
    case Errc::EmptyInput: return "EmptyInput";
    case Errc::NotTwoDistinctPrimes: return "NotTwoDistinctPrimes";
    case Errc::NotPQShape: return "NotPQShape";
    case Errc::WrongShape: return "WrongShape";
    case Errc::InvalidDirection: return "InvalidDirection";
    case Errc::TooSmall: return "TooSmall";
    case Errc::TooLarge: return "TooLarge";
    case Errc::NotATilingPair: return "NotATilingPair";
    case Errc::NotASpectralPair: return "NotASpectralPair";
    case Errc::TheoremViolation: return "TheoremViolation";
    case Errc::BudgetExhausted: return "BudgetExhausted";
    case Errc::Unsupported: return "Unsupported";
    case Errc::ParseError: return "ParseError";
  }
  return "Unknown";
}

/// Every failure raised by the library carries one of the codes above.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) { throw Error(code, what); }

}  // namespace fuglede
