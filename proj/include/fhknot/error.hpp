#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace fhknot {

enum class Errc {
  malformed_token,
  label_count_not_two,
  over_under_mismatch,
  sign_mismatch,
  unknown_label,
  empty_diagram,
  wrong_chord_count,
  invalid_diagram,
  recursion_budget_exceeded,
  degenerate_segment,
  intersecting_inputs,
  quadrature_not_converged,
  malformed_input,
};

constexpr std::string_view errc_name(Errc e) noexcept {
  switch (e) {
    case Errc::malformed_token: return "MalformedToken";
    case Errc::label_count_not_two: return "LabelCountNotTwo";
    case Errc::over_under_mismatch: return "OverUnderMismatch";
    case Errc::sign_mismatch: return "SignMismatch";
    case Errc::unknown_label: return "UnknownLabel";
    case Errc::empty_diagram: return "EmptyDiagram";
    case Errc::wrong_chord_count: return "WrongChordCount";
    case Errc::invalid_diagram: return "InvalidDiagram";
    case Errc::recursion_budget_exceeded: return "RecursionBudgetExceeded";
    case Errc::degenerate_segment: return "DegenerateSegment";
    case Errc::intersecting_inputs: return "IntersectingInputs";
    case Errc::quadrature_not_converged: return "QuadratureNotConverged";
    case Errc::malformed_input: return "MalformedInput";
  }
  return "Unknown";
}

/// Every failure in the library is reported through this exception; `code()`
/// identifies the failure class, `what()` carries the offending input.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& detail)
      : std::runtime_error(std::string(errc_name(code)) + ": " + detail), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace fhknot
