#pragma once

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <iosfwd>
#include <string>
#include <vector>

namespace calnet {

// A finite binary sequence. The empty sequence has size() == 0.
// Bit positions follow the 1-based convention used throughout the
// calibration machinery: bit1(1) is the first bit.
class BinarySeq {
 public:
  BinarySeq() = default;
  BinarySeq(std::initializer_list<int> bits);

  // Parses a string over {0,1}; "" is the empty sequence.
  static BinarySeq parse(const std::string& text);

  std::size_t size() const { return bits_.size(); }
  bool empty() const { return bits_.empty(); }

  int bit(std::size_t idx0) const { return bits_[idx0]; }
  int bit1(std::size_t pos1) const { return bits_[pos1 - 1]; }

  BinarySeq prefix(std::size_t len) const;
  BinarySeq appended(int bit) const;
  void push_back(int bit);

  bool is_prefix_of(const BinarySeq& other) const;           // this ⊑ other
  bool is_proper_prefix_of(const BinarySeq& other) const;    // this ⊏ other

  BinarySeq concat(const BinarySeq& tail) const;

  std::string str() const;

  friend bool operator==(const BinarySeq& a, const BinarySeq& b) {
    return a.bits_ == b.bits_;
  }
  friend bool operator!=(const BinarySeq& a, const BinarySeq& b) {
    return !(a == b);
  }
  // Lexicographic order; shorter strings precede their extensions.
  friend bool operator<(const BinarySeq& a, const BinarySeq& b) {
    return a.bits_ < b.bits_;
  }

 private:
  std::vector<std::uint8_t> bits_;
};

// Heap-style index of a node in the binary tree: index(λ) = 1,
// index(x·b) = 2*index(x) + b. Valid for sequences up to 62 bits.
std::uint64_t node_index(const BinarySeq& x);
BinarySeq node_seq(std::uint64_t index);

std::ostream& operator<<(std::ostream& os, const BinarySeq& x);

}  // namespace calnet
