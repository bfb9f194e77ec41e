#include "calnet/bits.hpp"

#include <algorithm>
#include <ostream>
#include <stdexcept>

namespace calnet {

BinarySeq::BinarySeq(std::initializer_list<int> bits) {
  bits_.reserve(bits.size());
  for (int b : bits) {
    if (b != 0 && b != 1) throw std::domain_error("BinarySeq: bit must be 0 or 1");
    bits_.push_back(static_cast<std::uint8_t>(b));
  }
}

BinarySeq BinarySeq::parse(const std::string& text) {
  BinarySeq out;
  out.bits_.reserve(text.size());
  for (char c : text) {
    if (c != '0' && c != '1')
      throw std::domain_error("BinarySeq: invalid character '" + std::string(1, c) + "'");
    out.bits_.push_back(static_cast<std::uint8_t>(c - '0'));
  }
  return out;
}

BinarySeq BinarySeq::prefix(std::size_t len) const {
  if (len > bits_.size()) throw std::out_of_range("BinarySeq: prefix longer than sequence");
  BinarySeq out;
  out.bits_.assign(bits_.begin(), bits_.begin() + static_cast<std::ptrdiff_t>(len));
  return out;
}

BinarySeq BinarySeq::appended(int bit) const {
  BinarySeq out = *this;
  out.push_back(bit);
  return out;
}

void BinarySeq::push_back(int bit) {
  if (bit != 0 && bit != 1) throw std::domain_error("BinarySeq: bit must be 0 or 1");
  bits_.push_back(static_cast<std::uint8_t>(bit));
}

bool BinarySeq::is_prefix_of(const BinarySeq& other) const {
  if (bits_.size() > other.bits_.size()) return false;
  return std::equal(bits_.begin(), bits_.end(), other.bits_.begin());
}

bool BinarySeq::is_proper_prefix_of(const BinarySeq& other) const {
  return bits_.size() < other.bits_.size() && is_prefix_of(other);
}

BinarySeq BinarySeq::concat(const BinarySeq& tail) const {
  BinarySeq out = *this;
  out.bits_.insert(out.bits_.end(), tail.bits_.begin(), tail.bits_.end());
  return out;
}

std::string BinarySeq::str() const {
  std::string s;
  s.reserve(bits_.size());
  for (std::uint8_t b : bits_) s.push_back(static_cast<char>('0' + b));
  return s;
}

std::uint64_t node_index(const BinarySeq& x) {
  if (x.size() > 62) throw std::domain_error("node_index: sequence too long");
  std::uint64_t idx = 1;
  for (std::size_t i = 0; i < x.size(); ++i) idx = 2 * idx + static_cast<std::uint64_t>(x.bit(i));
  return idx;
}

BinarySeq node_seq(std::uint64_t index) {
  if (index == 0) throw std::domain_error("node_seq: index must be >= 1");
  std::vector<int> rev;
  while (index > 1) {
    rev.push_back(static_cast<int>(index & 1));
    index >>= 1;
  }
  BinarySeq out;
  for (auto it = rev.rbegin(); it != rev.rend(); ++it) out.push_back(*it);
  return out;
}

std::ostream& operator<<(std::ostream& os, const BinarySeq& x) { return os << x.str(); }

}  // namespace calnet
