#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "calnet/bits.hpp"
#include "calnet/rat.hpp"

#include <nlohmann/json_fwd.hpp>

namespace calnet {

// Result of a budgeted evaluation: either a value or "still running".
template <class T>
struct Eval {
  std::optional<T> value;

  static Eval pending() { return {}; }
  static Eval defined(T v) { return {std::move(v)}; }

  bool is_defined() const { return value.has_value(); }
  bool is_pending() const { return !value.has_value(); }
  const T& get() const { return value.value(); }
};

using EvalRat = Eval<Rat>;
using EvalBit = Eval<int>;

// Raised when a forecaster is genuinely undefined on an input, as opposed
// to merely not finished within a budget.
class EvalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A forecasting system over binary prefixes. Deterministic kinds map a
// prefix to one probability; randomized kinds carry an exact finite law.
// Partiality is modeled by an integer step cost per input: an evaluation
// finishes within budget b iff cost(x) <= b. A latency wrapper adds a
// constant to the cost; a cutoff wrapper makes the system undefined on
// prefixes longer than the cutoff.
class Forecaster {
 public:
  enum class Kind { Constant, Laplace, Markov, Parity, TwoPoint };

  static Forecaster constant(Rat p);
  static Forecaster laplace();
  static Forecaster markov(int order);
  static Forecaster parity();
  // Forecasts `a` with probability alpha, `b` with probability 1 - alpha.
  static Forecaster two_point(Rat a, Rat b, Rat alpha);

  Forecaster with_latency(long latency) const;
  Forecaster with_cutoff(long cutoff) const;
  Forecaster named(std::string name) const;

  Kind kind() const { return kind_; }
  const std::string& name() const { return name_; }
  bool deterministic() const { return kind_ != Kind::TwoPoint; }
  long latency() const { return latency_; }
  std::optional<long> cutoff() const { return cutoff_; }

  // Steps needed to evaluate on x; nullopt if the evaluation never finishes.
  std::optional<long> cost(const BinarySeq& x) const;

  // Deterministic forecast value within budget. Throws on randomized kinds.
  EvalRat forecast(const BinarySeq& x, long budget) const;

  // Exact law of the forecast at x as (value, probability) pairs.
  // Throws EvalError if the forecaster is undefined on x.
  std::vector<std::pair<Rat, Rat>> support(const BinarySeq& x) const;

  // Weak probability distribution function Pr{forecast >= 1/2} within budget.
  EvalRat weak_pdf(const BinarySeq& x, long budget) const;

  // One forecast draw; a pure function of (forecaster, x, seed).
  // Throws EvalError if undefined on x.
  Rat sample(const BinarySeq& x, std::uint64_t seed) const;

  nlohmann::json to_json() const;
  static Forecaster from_json(const nlohmann::json& j);

 private:
  Forecaster() = default;

  Rat base_value(const BinarySeq& x) const;  // deterministic kinds only
  std::uint64_t salt() const;

  Kind kind_ = Kind::Constant;
  std::string name_;
  Rat p_;                       // Constant
  int order_ = 0;               // Markov
  Rat a_, b_, alpha_;           // TwoPoint
  long latency_ = 0;
  std::optional<long> cutoff_;
};

// A pool entry under a fixed precision ladder: approximations of the weak
// pdf are taken from below on the grid {0, 1/s, ..., 1}.
struct ForecasterProgram {
  int task = 0;  // pool index
  long s = 1;    // precision denominator, kappa = 1/s
  const Forecaster* forecaster = nullptr;

  Rat kappa() const { return Rat(1, s); }
};

// Rational approximation from below of the weak pdf on the 1/s grid:
// whenever defined with underlying value v, the result r satisfies
// r <= v <= r + 1/s.
EvalRat approx_below(const ForecasterProgram& prog, const BinarySeq& x, long budget);

// Whether bit k of beta (1-based) opposes the side of 1/2 indicated by the
// approximated weak pdf on the preceding prefix.
EvalBit hard_bit(const ForecasterProgram& prog, const BinarySeq& beta, std::size_t k,
                 long budget);

// Immutable registered pool of forecaster programs.
class Pool {
 public:
  Pool() = default;

  int add(Forecaster f, long s);
  long size() const { return static_cast<long>(entries_.size()); }
  bool empty() const { return entries_.empty(); }

  const Forecaster& forecaster(int task) const { return entries_.at(task); }
  long precision_s(int task) const { return svals_.at(task); }
  ForecasterProgram program(int task) const;

  nlohmann::json to_json() const;
  static Pool from_json(const nlohmann::json& j);
  static Pool load_file(const std::string& path);
  void save_file(const std::string& path) const;

 private:
  std::vector<Forecaster> entries_;
  std::vector<long> svals_;
};

}  // namespace calnet
