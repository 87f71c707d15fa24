#ifndef MONLAT_CORE_HPP
#define MONLAT_CORE_HPP

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace monlat {

// Error codes are stable strings; the CLI forwards them verbatim in its
// machine-readable error reports.
class Error : public std::runtime_error {
 public:
  Error(std::string code, std::string const& what, std::vector<long long> witness = {})
      : std::runtime_error(what), code_(std::move(code)), witness_(std::move(witness)) {}

  std::string const& code() const noexcept { return code_; }
  std::vector<long long> const& witness() const noexcept { return witness_; }

 private:
  std::string code_;
  std::vector<long long> witness_;
};

[[noreturn]] inline void raise(std::string code, std::string const& what,
                               std::vector<long long> witness = {}) {
  throw Error(std::move(code), what, std::move(witness));
}

namespace defaults {
// Full associativity validation is O(n^3); above this size from_table falls
// back to seeded spot checks and records the monoid as not fully validated.
inline constexpr int full_validation_bound = 5000;
// Hard cap on monoid sizes produced by builders and direct products.
inline constexpr int size_bound = 5000;
// Brute-force isomorphism search.
inline constexpr int iso_bound = 12;
// Normal-submonoid enumeration: T4 (256 elements) is safe by default,
// T5 (3125) must be requested explicitly.
inline constexpr int norsub_enum_bound = 256;
// Congruence enumeration is quadratic in pairs; default covers T3.
inline constexpr int cong_enum_bound = 130;
// Enumeration of subgroups of the unit group; 24 covers S4.
inline constexpr int unit_group_bound = 24;
// Raised caps selected by --allow-large.
inline constexpr int large_enum_bound = 3125;
}  // namespace defaults

// Fixed-size bitset over element indices. Hot loops in the stability-set
// and closure code work on whole 64-bit words.
class Bitset {
 public:
  Bitset() : size_(0) {}
  explicit Bitset(int size) : size_(size), words_((size + 63) / 64, 0) {}

  int size() const { return size_; }

  bool test(int i) const { return (words_[i >> 6] >> (i & 63)) & 1; }
  void set(int i) { words_[i >> 6] |= std::uint64_t(1) << (i & 63); }
  void reset(int i) { words_[i >> 6] &= ~(std::uint64_t(1) << (i & 63)); }

  void clear() { std::fill(words_.begin(), words_.end(), 0); }

  int count() const {
    int c = 0;
    for (auto w : words_) c += __builtin_popcountll(w);
    return c;
  }

  bool any() const {
    for (auto w : words_)
      if (w) return true;
    return false;
  }

  void operator|=(Bitset const& other) {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= other.words_[i];
  }

  void operator&=(Bitset const& other) {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= other.words_[i];
  }

  // this & ~other nonempty?
  bool intersects_complement(Bitset const& other) const {
    for (std::size_t i = 0; i < words_.size(); ++i)
      if (words_[i] & ~other.words_[i]) return true;
    return false;
  }

  bool operator==(Bitset const& other) const {
    return size_ == other.size_ && words_ == other.words_;
  }

  template <typename F>
  void for_each(F&& f) const {
    for (std::size_t wi = 0; wi < words_.size(); ++wi) {
      std::uint64_t w = words_[wi];
      while (w) {
        int b = __builtin_ctzll(w);
        f(int(wi * 64 + b));
        w &= w - 1;
      }
    }
  }

  std::vector<int> to_sorted_vector() const {
    std::vector<int> out;
    out.reserve(count());
    for_each([&](int i) { out.push_back(i); });
    return out;
  }

 private:
  int size_;
  std::vector<std::uint64_t> words_;
};

// Uniform integer in [0, n) from a seeded engine. std::uniform_int_distribution
// is implementation-defined, which would break byte-identical reports across
// platforms, so we roll our own rejection sampler.
inline std::uint64_t rand_below(std::mt19937_64& rng, std::uint64_t n) {
  if (n == 0) return 0;
  std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                        std::numeric_limits<std::uint64_t>::max() % n;
  std::uint64_t v;
  do {
    v = rng();
  } while (v >= limit);
  return v % n;
}

}  // namespace monlat

#endif  // MONLAT_CORE_HPP
