#include "calnet/rat.hpp"

#include <ostream>
#include <stdexcept>

namespace calnet {

Rat::Rat(long num, long den) : v_(num, den) {
  if (den == 0) throw std::domain_error("Rat: zero denominator");
  v_.canonicalize();
}

Rat::Rat(const mpz_class& num, const mpz_class& den) : v_(num, den) {
  if (sgn(den) == 0) throw std::domain_error("Rat: zero denominator");
  v_.canonicalize();
}

Rat Rat::parse(const std::string& text) {
  auto slash = text.find('/');
  try {
    if (slash == std::string::npos) {
      return Rat(mpz_class(text), mpz_class(1));
    }
    mpz_class num(text.substr(0, slash));
    mpz_class den(text.substr(slash + 1));
    return Rat(num, den);
  } catch (const std::invalid_argument&) {
    throw std::domain_error("Rat: cannot parse '" + text + "'");
  }
}

std::string Rat::str() const {
  return v_.get_num().get_str() + "/" + v_.get_den().get_str();
}

Rat Rat::operator-() const { return Rat(mpq_class(-v_)); }

Rat& Rat::operator+=(const Rat& o) {
  v_ += o.v_;
  return *this;
}

Rat& Rat::operator-=(const Rat& o) {
  v_ -= o.v_;
  return *this;
}

Rat& Rat::operator*=(const Rat& o) {
  v_ *= o.v_;
  return *this;
}

Rat& Rat::operator/=(const Rat& o) {
  if (o.is_zero()) throw std::domain_error("Rat: division by zero");
  v_ /= o.v_;
  return *this;
}

Rat abs(const Rat& r) { return r.sign() < 0 ? -r : r; }

Rat floor_to_grid(const Rat& r, long s) {
  if (s < 1) throw std::domain_error("floor_to_grid: grid step must be >= 1");
  mpz_class scaled_num = r.num() * s;
  mpz_class q;
  mpz_fdiv_q(q.get_mpz_t(), scaled_num.get_mpz_t(), r.den().get_mpz_t());
  return Rat(q, mpz_class(s));
}

std::ostream& operator<<(std::ostream& os, const Rat& r) { return os << r.str(); }

}  // namespace calnet
