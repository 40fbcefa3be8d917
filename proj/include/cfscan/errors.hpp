#pragma once

#include <stdexcept>
#include <string>

namespace cfscan {

// Base for all library errors. Pipeline drivers annotate failures with the
// stage that raised them; the dynamic type is preserved across the rethrow.
class Error : public std::runtime_error {
public:
  explicit Error(std::string msg) : std::runtime_error(msg), message_(std::move(msg)) {}

  const char* what() const noexcept override { return message_.c_str(); }

  void prepend_stage(const std::string& stage) { message_ = stage + ": " + message_; }

private:
  std::string message_;
};

#define CFSCAN_ERROR_CLASS(NAME) \
  class NAME : public Error {    \
  public:                        \
    using Error::Error;          \
  };

CFSCAN_ERROR_CLASS(InvalidArgument)
CFSCAN_ERROR_CLASS(InvalidPath)
CFSCAN_ERROR_CLASS(InvalidLocation)
CFSCAN_ERROR_CLASS(EmptyDataset)
CFSCAN_ERROR_CLASS(MismatchedHorizon)
CFSCAN_ERROR_CLASS(TimeOutOfDomain)
CFSCAN_ERROR_CLASS(InvalidBasisSpec)
CFSCAN_ERROR_CLASS(SingularDesign)
CFSCAN_ERROR_CLASS(NoVariation)
CFSCAN_ERROR_CLASS(DimensionMismatch)
CFSCAN_ERROR_CLASS(TylerNonconvergence)
CFSCAN_ERROR_CLASS(DegenerateScores)
CFSCAN_ERROR_CLASS(DegenerateRanks)
CFSCAN_ERROR_CLASS(NoCandidateWindows)
CFSCAN_ERROR_CLASS(UnknownClusterLocation)
CFSCAN_ERROR_CLASS(MissingDays)
CFSCAN_ERROR_CLASS(DuplicateTimestamps)
CFSCAN_ERROR_CLASS(NegativeValue)
CFSCAN_ERROR_CLASS(ParseError)
CFSCAN_ERROR_CLASS(ConfigError)

#undef CFSCAN_ERROR_CLASS

// Runs a pipeline stage and tags any cfscan::Error escaping it with the
// stage name, keeping the concrete error type intact.
template <typename Fn>
decltype(auto) run_stage(const char* stage, Fn&& fn) {
  try {
    return fn();
  } catch (Error& e) {
    e.prepend_stage(stage);
    throw;
  }
}

}  // namespace cfscan
