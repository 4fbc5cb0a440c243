#pragma once

#include <stdexcept>
#include <string>

namespace sympcurve {

// Base for all domain errors raised by the library. The CLI maps each
// subclass to one documented error code string.
struct error : std::runtime_error {
  explicit error(const std::string& what) : std::runtime_error(what) {}
  virtual const char* code() const noexcept { return "Error"; }
};

#define SYMPCURVE_ERROR(type, name)                                     \
  struct type : error {                                                 \
    explicit type(const std::string& what) : error(what) {}             \
    const char* code() const noexcept override { return name; }         \
  }

SYMPCURVE_ERROR(out_of_range_error, "OutOfRange");
SYMPCURVE_ERROR(order_too_high, "OrderTooHigh");
SYMPCURVE_ERROR(not_lagrangian, "NotLagrangian");
SYMPCURVE_ERROR(orientation_violation, "OrientationViolation");
SYMPCURVE_ERROR(inflection_point, "InflectionPoint");
SYMPCURVE_ERROR(frame_completion_failed, "FrameCompletionFailed");
SYMPCURVE_ERROR(section_not_transverse, "SectionNotTransverse");
SYMPCURVE_ERROR(profile_singularity, "ProfileSingularity");
SYMPCURVE_ERROR(step_rejected, "StepRejected");
SYMPCURVE_ERROR(not_full, "NotFull");
SYMPCURVE_ERROR(invalid_parameters, "InvalidParameters");
SYMPCURVE_ERROR(unsupported_case, "UnsupportedCase");
SYMPCURVE_ERROR(empty_branch, "EmptyBranch");
SYMPCURVE_ERROR(not_closed, "NotClosed");
SYMPCURVE_ERROR(curvature_window_violated, "CurvatureWindowViolated");
SYMPCURVE_ERROR(variation_not_admissible, "VariationNotAdmissible");
SYMPCURVE_ERROR(lagrangian_violated, "LagrangianViolated");
SYMPCURVE_ERROR(smoothness_insufficient, "SmoothnessInsufficient");
SYMPCURVE_ERROR(io_error, "IoError");
SYMPCURVE_ERROR(nonfinite_input, "NonFiniteInput");

#undef SYMPCURVE_ERROR

struct parse_error : error {
  int line = 0, column = 0;
  parse_error(const std::string& what, int line_, int col_)
      : error(what), line(line_), column(col_) {}
  const char* code() const noexcept override { return "ParseError"; }
};

}  // namespace sympcurve
