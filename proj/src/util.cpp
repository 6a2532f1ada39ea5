#include "ksa/util.hpp"

namespace ksa {

std::vector<uint64_t> F2Matrix::mulVec(const std::vector<uint64_t>& v) const {
  std::vector<uint64_t> out((rows_ + 63) / 64, 0);
  for (size_t r = 0; r < rows_; ++r) {
    uint64_t acc = 0;
    for (size_t w = 0; w < words_; ++w) acc ^= bits_[r * words_ + w] & v[w];
    if (__builtin_parityll(acc)) out[r / 64] |= 1ull << (r % 64);
  }
  return out;
}

bool F2Matrix::solve(std::vector<uint8_t>& x,
                     const std::vector<uint8_t>& b) const {
  // augmented elimination on a copy
  F2Matrix m(rows_, cols_ + 1);
  for (size_t r = 0; r < rows_; ++r) {
    for (size_t c = 0; c < cols_; ++c)
      if (get(r, c)) m.set(r, c, true);
    if (b[r]) m.set(r, cols_, true);
  }
  std::vector<size_t> pivotCol;
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
    pivotCol.push_back(c);
    ++rk;
  }
  for (size_t r = rk; r < rows_; ++r)
    if (m.get(r, cols_)) return false;
  x.assign(cols_, 0);
  for (size_t i = 0; i < rk; ++i) x[pivotCol[i]] = m.get(i, cols_);
  return true;
}

size_t spanRank(std::vector<std::vector<uint8_t>> rows) {
  if (rows.empty()) return 0;
  size_t cols = rows[0].size();
  F2Matrix m(rows.size(), cols);
  for (size_t r = 0; r < rows.size(); ++r)
    for (size_t c = 0; c < cols; ++c)
      if (rows[r][c]) m.set(r, c, true);
  return m.rank();
}

size_t jointRank(const std::vector<std::vector<uint8_t>>& a,
                 const std::vector<std::vector<uint8_t>>& b) {
  std::vector<std::vector<uint8_t>> all = a;
  all.insert(all.end(), b.begin(), b.end());
  return spanRank(std::move(all));
}

}  // namespace ksa
