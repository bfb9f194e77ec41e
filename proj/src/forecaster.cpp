#include "calnet/forecaster.hpp"

#include <fstream>

#include <nlohmann/json.hpp>

#include "calnet/rng.hpp"

namespace calnet {

using nlohmann::json;

Forecaster Forecaster::constant(Rat p) {
  if (p < Rat(0) || p > Rat(1)) throw std::domain_error("constant: p outside [0,1]");
  Forecaster f;
  f.kind_ = Kind::Constant;
  f.p_ = std::move(p);
  f.name_ = "constant";
  return f;
}

Forecaster Forecaster::laplace() {
  Forecaster f;
  f.kind_ = Kind::Laplace;
  f.name_ = "laplace";
  return f;
}

Forecaster Forecaster::markov(int order) {
  if (order < 1) throw std::domain_error("markov: order must be >= 1");
  Forecaster f;
  f.kind_ = Kind::Markov;
  f.order_ = order;
  f.name_ = "markov";
  return f;
}

Forecaster Forecaster::parity() {
  Forecaster f;
  f.kind_ = Kind::Parity;
  f.name_ = "parity";
  return f;
}

Forecaster Forecaster::two_point(Rat a, Rat b, Rat alpha) {
  for (const Rat* r : {&a, &b}) {
    if (*r < Rat(0) || *r > Rat(1)) throw std::domain_error("two_point: value outside [0,1]");
  }
  if (alpha < Rat(0) || alpha > Rat(1)) throw std::domain_error("two_point: alpha outside [0,1]");
  Forecaster f;
  f.kind_ = Kind::TwoPoint;
  f.a_ = std::move(a);
  f.b_ = std::move(b);
  f.alpha_ = std::move(alpha);
  f.name_ = "two_point";
  return f;
}

Forecaster Forecaster::with_latency(long latency) const {
  if (latency < 0) throw std::domain_error("with_latency: negative latency");
  Forecaster f = *this;
  f.latency_ += latency;
  return f;
}

Forecaster Forecaster::with_cutoff(long cutoff) const {
  if (cutoff < 0) throw std::domain_error("with_cutoff: negative cutoff");
  Forecaster f = *this;
  f.cutoff_ = f.cutoff_ ? std::min(*f.cutoff_, cutoff) : cutoff;
  return f;
}

Forecaster Forecaster::named(std::string name) const {
  Forecaster f = *this;
  f.name_ = std::move(name);
  return f;
}

std::optional<long> Forecaster::cost(const BinarySeq& x) const {
  if (cutoff_ && static_cast<long>(x.size()) > *cutoff_) return std::nullopt;
  long base = 0;
  switch (kind_) {
    case Kind::Constant:
    case Kind::TwoPoint:
      base = 0;
      break;
    case Kind::Laplace:
    case Kind::Markov:
    case Kind::Parity:
      base = static_cast<long>(x.size());  // one pass over the input
      break;
  }
  return base + latency_;
}

Rat Forecaster::base_value(const BinarySeq& x) const {
  switch (kind_) {
    case Kind::Constant:
      return p_;
    case Kind::Laplace: {
      long ones = 0;
      for (std::size_t i = 0; i < x.size(); ++i) ones += x.bit(i);
      return Rat(ones + 1, static_cast<long>(x.size()) + 2);
    }
    case Kind::Markov: {
      long n = static_cast<long>(x.size());
      if (n < order_) return Rat(1, 2);
      long ones = 0, total = 0;
      // Count continuations of the current length-`order_` context.
      for (long j = order_; j < n; ++j) {
        bool match = true;
        for (long k = 0; k < order_; ++k) {
          if (x.bit(j - order_ + k) != x.bit(n - order_ + k)) {
            match = false;
            break;
          }
        }
        if (match) {
          ++total;
          ones += x.bit(j);
        }
      }
      return Rat(ones + 1, total + 2);
    }
    case Kind::Parity: {
      long ones = 0;
      for (std::size_t i = 0; i < x.size(); ++i) ones += x.bit(i);
      return ones % 2 == 0 ? Rat(3, 4) : Rat(1, 4);
    }
    case Kind::TwoPoint:
      throw std::logic_error("base_value: randomized forecaster has no single value");
  }
  throw std::logic_error("base_value: unreachable");
}

EvalRat Forecaster::forecast(const BinarySeq& x, long budget) const {
  if (!deterministic()) throw std::logic_error("forecast: randomized forecaster");
  auto c = cost(x);
  if (!c || *c > budget) return EvalRat::pending();
  return EvalRat::defined(base_value(x));
}

std::vector<std::pair<Rat, Rat>> Forecaster::support(const BinarySeq& x) const {
  if (!cost(x)) throw EvalError("forecaster '" + name_ + "' undefined on " + x.str());
  if (kind_ == Kind::TwoPoint) {
    std::vector<std::pair<Rat, Rat>> law;
    if (!alpha_.is_zero()) law.emplace_back(a_, alpha_);
    Rat beta = Rat(1) - alpha_;
    if (!beta.is_zero()) law.emplace_back(b_, beta);
    return law;
  }
  return {{base_value(x), Rat(1)}};
}

EvalRat Forecaster::weak_pdf(const BinarySeq& x, long budget) const {
  auto c = cost(x);
  if (!c || *c > budget) return EvalRat::pending();
  Rat mass(0);
  for (const auto& [value, prob] : support(x)) {
    if (value >= Rat(1, 2)) mass += prob;
  }
  return EvalRat::defined(mass);
}

std::uint64_t Forecaster::salt() const {
  std::uint64_t h = 0xCBF29CE484222325ULL;
  auto feed = [&h](const std::string& s) {
    for (char c : s) {
      h ^= static_cast<unsigned char>(c);
      h *= 0x100000001B3ULL;
    }
  };
  feed(name_);
  feed(std::to_string(static_cast<int>(kind_)));
  feed(p_.str());
  feed(a_.str());
  feed(b_.str());
  feed(alpha_.str());
  feed(std::to_string(order_));
  return h;
}

Rat Forecaster::sample(const BinarySeq& x, std::uint64_t seed) const {
  if (!cost(x)) throw EvalError("forecaster '" + name_ + "' undefined on " + x.str());
  if (deterministic()) return base_value(x);
  std::uint64_t xh = 0xCBF29CE484222325ULL;
  for (std::size_t i = 0; i < x.size(); ++i) {
    xh ^= static_cast<unsigned char>('0' + x.bit(i));
    xh *= 0x100000001B3ULL;
  }
  CounterRng rng(seed, derive_seed(salt(), xh));
  return rng.bernoulli(alpha_) ? a_ : b_;
}

json Forecaster::to_json() const {
  json j;
  j["name"] = name_;
  j["latency"] = latency_;
  if (cutoff_)
    j["cutoff"] = *cutoff_;
  else
    j["cutoff"] = nullptr;
  json params = json::object();
  switch (kind_) {
    case Kind::Constant:
      j["kind"] = "constant";
      params["p"] = p_.str();
      break;
    case Kind::Laplace:
      j["kind"] = "laplace";
      break;
    case Kind::Markov:
      j["kind"] = "markov";
      params["order"] = order_;
      break;
    case Kind::Parity:
      j["kind"] = "parity";
      break;
    case Kind::TwoPoint:
      j["kind"] = "two_point";
      params["a"] = a_.str();
      params["b"] = b_.str();
      params["alpha"] = alpha_.str();
      break;
  }
  j["params"] = params;
  return j;
}

Forecaster Forecaster::from_json(const json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  const json params = j.value("params", json::object());
  Forecaster f;
  if (kind == "constant") {
    f = constant(Rat::parse(params.at("p").get<std::string>()));
  } else if (kind == "laplace") {
    f = laplace();
  } else if (kind == "markov") {
    f = markov(params.at("order").get<int>());
  } else if (kind == "parity") {
    f = parity();
  } else if (kind == "two_point") {
    f = two_point(Rat::parse(params.at("a").get<std::string>()),
                  Rat::parse(params.at("b").get<std::string>()),
                  Rat::parse(params.at("alpha").get<std::string>()));
  } else {
    throw std::domain_error("forecaster: unknown kind '" + kind + "'");
  }
  if (j.contains("latency") && !j.at("latency").is_null())
    f = f.with_latency(j.at("latency").get<long>());
  if (j.contains("cutoff") && !j.at("cutoff").is_null())
    f = f.with_cutoff(j.at("cutoff").get<long>());
  if (j.contains("name")) f = f.named(j.at("name").get<std::string>());
  return f;
}

EvalRat approx_below(const ForecasterProgram& prog, const BinarySeq& x, long budget) {
  if (prog.s < 1) throw std::domain_error("approx_below: precision s must be >= 1");
  EvalRat w = prog.forecaster->weak_pdf(x, budget);
  if (w.is_pending()) return EvalRat::pending();
  return EvalRat::defined(floor_to_grid(w.get(), prog.s));
}

EvalBit hard_bit(const ForecasterProgram& prog, const BinarySeq& beta, std::size_t k,
                 long budget) {
  if (k < 1 || k > beta.size()) throw std::out_of_range("hard_bit: position out of range");
  EvalRat r = approx_below(prog, beta.prefix(k - 1), budget);
  if (r.is_pending()) return EvalBit::pending();
  bool upper = r.get() >= Rat(1, 2);
  int expected_hard = upper ? 0 : 1;
  return EvalBit::defined(beta.bit1(k) == expected_hard ? 1 : 0);
}

int Pool::add(Forecaster f, long s) {
  if (s < 1) throw std::domain_error("Pool::add: precision s must be >= 1");
  entries_.push_back(std::move(f));
  svals_.push_back(s);
  return static_cast<int>(entries_.size()) - 1;
}

ForecasterProgram Pool::program(int task) const {
  ForecasterProgram p;
  p.task = task;
  p.s = svals_.at(task);
  p.forecaster = &entries_.at(task);
  return p;
}

json Pool::to_json() const {
  json arr = json::array();
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    json e = entries_[i].to_json();
    e["s"] = svals_[i];
    arr.push_back(e);
  }
  return arr;
}

Pool Pool::from_json(const json& j) {
  if (!j.is_array()) throw std::domain_error("pool: expected a JSON array");
  Pool pool;
  for (const auto& e : j) {
    pool.add(Forecaster::from_json(e), e.at("s").get<long>());
  }
  return pool;
}

Pool Pool::load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("pool: cannot open " + path);
  json j;
  in >> j;
  return from_json(j);
}

void Pool::save_file(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("pool: cannot write " + path);
  out << to_json().dump(2) << "\n";
}

}  // namespace calnet
