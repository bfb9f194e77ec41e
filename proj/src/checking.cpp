#include "calnet/checking.hpp"

#include <limits>
#include <ostream>

#include "calnet/indicator.hpp"

namespace calnet {

namespace {

// True iff `prefix` lies strictly inside the edge: sigma1 ⊑ prefix ⊏ sigma2.
bool covers(const AnnotatedEdge& e, const BinarySeq& prefix) {
  return e.sigma1.is_prefix_of(prefix) && prefix.is_proper_prefix_of(e.sigma2);
}

void check_annotation_consistency(const std::vector<AnnotatedEdge>& edges) {
  for (std::size_t a = 0; a < edges.size(); ++a) {
    for (std::size_t b = a + 1; b < edges.size(); ++b) {
      const auto& ea = edges[a];
      const auto& eb = edges[b];
      std::size_t lo = std::max(ea.sigma1.size(), eb.sigma1.size()) + 1;
      std::size_t hi = std::min(ea.sigma2.size(), eb.sigma2.size());
      for (std::size_t j = lo; j <= hi; ++j) {
        // Both edges cover the decision at position j only when they agree
        // on the first j-1 bits.
        if (ea.sigma2.prefix(j - 1) != eb.sigma2.prefix(j - 1)) break;
        bool ha = ea.hard.count(j) > 0;
        bool hb = eb.hard.count(j) > 0;
        if (ea.sigma2.bit1(j) == eb.sigma2.bit1(j)) {
          if (ha != hb)
            throw std::domain_error("edge_window: edges disagree on hardness at position " +
                                    std::to_string(j));
        } else if (ha && hb) {
          throw std::domain_error(
              "edge_window: opposite bits both annotated hard at position " + std::to_string(j));
        }
      }
    }
  }
}

}  // namespace

SelectionRule SelectionRule::always() {
  SelectionRule r;
  r.kind_ = Kind::Always;
  return r;
}

SelectionRule SelectionRule::never() {
  SelectionRule r;
  r.kind_ = Kind::Never;
  return r;
}

SelectionRule SelectionRule::edge_window(std::vector<AnnotatedEdge> edges) {
  for (const auto& e : edges) {
    if (!e.sigma1.is_proper_prefix_of(e.sigma2))
      throw std::domain_error("edge_window: edge start must be a proper prefix of its end");
    for (std::size_t j : e.hard) {
      if (j <= e.sigma1.size() || j > e.sigma2.size())
        throw std::domain_error("edge_window: hard position outside the edge span");
    }
  }
  check_annotation_consistency(edges);
  SelectionRule r;
  r.kind_ = Kind::EdgeWindow;
  r.edges_ = std::move(edges);
  return r;
}

SelectionRule SelectionRule::forecast_side(ForecasterProgram prog, int side, long budget) {
  if (side != 0 && side != 1) throw std::domain_error("forecast_side: side must be 0 or 1");
  SelectionRule r;
  r.kind_ = Kind::ForecastSide;
  r.prog_ = prog;
  r.side_ = side;
  r.budget_ = budget;
  return r;
}

SelectionRule SelectionRule::product(std::vector<SelectionRule> factors) {
  SelectionRule r;
  r.kind_ = Kind::Product;
  r.factors_ = std::move(factors);
  return r;
}

EvalBit SelectionRule::eval(const BinarySeq& prefix) const {
  switch (kind_) {
    case Kind::Always:
      return EvalBit::defined(1);
    case Kind::Never:
      return EvalBit::defined(0);
    case Kind::EdgeWindow:
      return EvalBit::defined(gamma_rule(edges_, prefix));
    case Kind::ForecastSide:
      return j_rule(prog_, side_, prefix, budget_);
    case Kind::Product: {
      int out = 1;
      for (const auto& f : factors_) {
        EvalBit e = f.eval(prefix);
        if (e.is_pending()) return EvalBit::pending();
        out *= e.get();
      }
      return EvalBit::defined(out);
    }
  }
  return EvalBit::pending();
}

int gamma_rule(const std::vector<AnnotatedEdge>& edges, const BinarySeq& prefix) {
  for (const auto& e : edges) {
    if (covers(e, prefix) && e.hard.count(prefix.size() + 1) > 0) return 1;
  }
  return 0;
}

EvalBit j_rule(const ForecasterProgram& prog, int side, const BinarySeq& prefix, long budget) {
  if (side != 0 && side != 1) throw std::domain_error("j_rule: side must be 0 or 1");
  EvalRat r = approx_below(prog, prefix, budget);
  if (r.is_pending()) return EvalBit::pending();
  return EvalBit::defined(r.get() < Rat(1, 2) ? 1 - side : side);
}

Rat calib_deviation(const BinarySeq& omega, const std::vector<Rat>& forecasts,
                    const SelectionRule& rule, int side) {
  std::size_t n = omega.size();
  if (forecasts.size() != n)
    throw std::invalid_argument("calib_deviation: forecasts and outcomes differ in length");
  if (n == 0) return Rat(0);
  Rat sum(0);
  for (std::size_t j = 1; j <= n; ++j) {
    BinarySeq prefix = omega.prefix(j - 1);
    EvalBit sel = rule.eval(prefix);
    if (sel.is_pending()) throw PartialityError("selection rule pending", prefix);
    if (sel.get() == 0) continue;
    const Rat& p = forecasts[j - 1];
    if (interval_indicator(side, p) == 0) continue;
    sum += Rat(omega.bit1(j)) - p;
  }
  return sum / Rat(static_cast<long>(n));
}

OakesResult oakes_sequence(const Forecaster& f, long n) {
  if (!f.deterministic()) throw std::domain_error("oakes_sequence: forecaster must be deterministic");
  constexpr long kAmple = std::numeric_limits<long>::max();
  OakesResult out;
  for (long i = 1; i <= n; ++i) {
    EvalRat p = f.forecast(out.omega, kAmple);
    if (p.is_pending()) throw PartialityError("forecaster undefined", out.omega);
    out.forecasts.push_back(p.get());
    out.omega.push_back(p.get() < Rat(1, 2) ? 1 : 0);
  }
  return out;
}

void write_deviation_trace(std::ostream& os, const BinarySeq& omega,
                           const std::vector<Rat>& forecasts, const SelectionRule& rule,
                           int side) {
  os << "step,selected,forecast,outcome,term,running_deviation\n";
  Rat sum(0);
  for (std::size_t j = 1; j <= omega.size(); ++j) {
    BinarySeq prefix = omega.prefix(j - 1);
    EvalBit sel = rule.eval(prefix);
    if (sel.is_pending()) throw PartialityError("selection rule pending", prefix);
    const Rat& p = forecasts[j - 1];
    int active = sel.get() * interval_indicator(side, p);
    Rat term = active ? Rat(omega.bit1(j)) - p : Rat(0);
    sum += term;
    os << j << ',' << sel.get() << ',' << p.str() << ',' << omega.bit1(j) << ',' << term.str()
       << ',' << (sum / Rat(static_cast<long>(j))).str() << '\n';
  }
}

}  // namespace calnet
