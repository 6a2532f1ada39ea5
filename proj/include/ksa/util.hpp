#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace ksa {

/******** Rational numbers for gradings ********/

struct Rational {
  long long num = 0;
  long long den = 1;

  Rational() = default;
  Rational(long long n) : num(n), den(1) {}
  Rational(long long n, long long d) : num(n), den(d) { normalize(); }

  void normalize() {
    if (den == 0) throw std::domain_error("rational with zero denominator");
    if (den < 0) {
      num = -num;
      den = -den;
    }
    long long g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) {
      num /= g;
      den /= g;
    }
  }

  friend Rational operator+(Rational a, Rational b) {
    return Rational(a.num * b.den + b.num * a.den, a.den * b.den);
  }
  friend Rational operator-(Rational a, Rational b) {
    return Rational(a.num * b.den - b.num * a.den, a.den * b.den);
  }
  friend Rational operator*(Rational a, Rational b) {
    return Rational(a.num * b.num, a.den * b.den);
  }
  friend Rational operator/(Rational a, Rational b) {
    return Rational(a.num * b.den, a.den * b.num);
  }
  friend bool operator==(const Rational&, const Rational&) = default;
  friend auto operator<=>(Rational a, Rational b) {
    return a.num * b.den <=> b.num * a.den;
  }

  std::string str() const {
    if (den == 1) return std::to_string(num);
    return std::to_string(num) + "/" + std::to_string(den);
  }
};

/******** Dense F2 matrices ********/
//
// Row-major bitset matrix; enough for the window-sized linear algebra in
// the homology and local-model code.

class F2Matrix {
 public:
  F2Matrix() = default;
  F2Matrix(size_t rows, size_t cols)
      : rows_(rows), cols_(cols), words_((cols + 63) / 64),
        bits_(rows * words_, 0) {}

  size_t rows() const { return rows_; }
  size_t cols() const { return cols_; }

  bool get(size_t r, size_t c) const {
    return (bits_[r * words_ + c / 64] >> (c % 64)) & 1ull;
  }
  void set(size_t r, size_t c, bool v) {
    uint64_t& w = bits_[r * words_ + c / 64];
    uint64_t m = 1ull << (c % 64);
    if (v)
      w |= m;
    else
      w &= ~m;
  }
  void flip(size_t r, size_t c) { bits_[r * words_ + c / 64] ^= 1ull << (c % 64); }

  void addRowTo(size_t src, size_t dst) {
    for (size_t w = 0; w < words_; ++w)
      bits_[dst * words_ + w] ^= bits_[src * words_ + w];
  }

  // rank by plain elimination; does not modify *this
  size_t rank() const {
    F2Matrix m = *this;
    size_t rk = 0;
    for (size_t c = 0; c < cols_ && rk < rows_; ++c) {
      size_t piv = SIZE_MAX;
      for (size_t r = rk; r < rows_; ++r)
        if (m.get(r, c)) {
          piv = r;
          break;
        }
      if (piv == SIZE_MAX) continue;
      m.swapRows(piv, rk);
      for (size_t r = 0; r < rows_; ++r)
        if (r != rk && m.get(r, c)) m.addRowTo(rk, r);
      ++rk;
    }
    return rk;
  }

  void swapRows(size_t a, size_t b) {
    if (a == b) return;
    for (size_t w = 0; w < words_; ++w)
      std::swap(bits_[a * words_ + w], bits_[b * words_ + w]);
  }

  // matrix * column-vector, vector as bit rows
  std::vector<uint64_t> mulVec(const std::vector<uint64_t>& v) const;

  // solve M x = b; returns false if inconsistent. x sized cols.
  bool solve(std::vector<uint8_t>& x, const std::vector<uint8_t>& b) const;

 private:
  size_t rows_ = 0, cols_ = 0, words_ = 0;
  std::vector<uint64_t> bits_;
};

// rank of the span of a set of F2 row vectors (each vector = vector<uint8_t>)
size_t spanRank(std::vector<std::vector<uint8_t>> rows);

// dimension of (span A + span B) given as rows
size_t jointRank(const std::vector<std::vector<uint8_t>>& a,
                 const std::vector<std::vector<uint8_t>>& b);

}  // namespace ksa
