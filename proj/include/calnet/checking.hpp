#pragma once

#include <iosfwd>
#include <set>
#include <stdexcept>
#include <vector>

#include "calnet/bits.hpp"
#include "calnet/forecaster.hpp"
#include "calnet/rat.hpp"

namespace calnet {

// Raised when a selection rule or forecaster is still pending on a prefix
// that an exact computation needs.
class PartialityError : public std::runtime_error {
 public:
  PartialityError(const std::string& what, BinarySeq prefix)
      : std::runtime_error(what + " on prefix '" + prefix.str() + "'"),
        prefix_(std::move(prefix)) {}

  const BinarySeq& prefix() const { return prefix_; }

 private:
  BinarySeq prefix_;
};

// An extra edge together with its recorded hard-bit positions (1-based
// positions into `sigma2`).
struct AnnotatedEdge {
  BinarySeq sigma1;
  BinarySeq sigma2;
  std::set<std::size_t> hard;
};

// Outcome-based selection rule over prefixes. Evaluation yields 0/1 or
// pending; a product is pending as soon as any factor is.
class SelectionRule {
 public:
  static SelectionRule always();
  static SelectionRule never();
  // Fires strictly inside an annotated edge, at recorded hard positions.
  static SelectionRule edge_window(std::vector<AnnotatedEdge> edges);
  // Fires on the `side` of 1/2 indicated by the approximated weak pdf.
  static SelectionRule forecast_side(ForecasterProgram prog, int side, long budget);
  static SelectionRule product(std::vector<SelectionRule> factors);

  EvalBit eval(const BinarySeq& prefix) const;

 private:
  enum class Kind { Always, Never, EdgeWindow, ForecastSide, Product };

  SelectionRule() = default;

  Kind kind_ = Kind::Always;
  std::vector<AnnotatedEdge> edges_;
  ForecasterProgram prog_;
  int side_ = 0;
  long budget_ = 0;
  std::vector<SelectionRule> factors_;
};

// Signed calibration deviation (1/n) * sum over selected steps in bucket
// `side` of (outcome - forecast). Throws PartialityError if the rule is
// pending on any needed prefix.
Rat calib_deviation(const BinarySeq& omega, const std::vector<Rat>& forecasts,
                    const SelectionRule& rule, int side);

// One-step evaluations used to assemble rules.
int gamma_rule(const std::vector<AnnotatedEdge>& edges, const BinarySeq& prefix);
EvalBit j_rule(const ForecasterProgram& prog, int side, const BinarySeq& prefix, long budget);

struct OakesResult {
  BinarySeq omega;
  std::vector<Rat> forecasts;
};

// The classical outcome-flip adversary against a total deterministic
// forecaster: emit 1 exactly when the forecast is below 1/2.
OakesResult oakes_sequence(const Forecaster& f, long n);

// CSV trace with columns step,selected,forecast,outcome,term,running_deviation.
void write_deviation_trace(std::ostream& os, const BinarySeq& omega,
                           const std::vector<Rat>& forecasts, const SelectionRule& rule,
                           int side);

}  // namespace calnet
