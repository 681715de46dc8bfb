#include "solenoid_lab/smith.hpp"

#include <cstdlib>
#include <utility>

#include "solenoid_lab/error.hpp"

namespace solenoid_lab {

namespace {

std::int64_t checked_sub_mul(std::int64_t a, std::int64_t q, std::int64_t b) {
  std::int64_t prod = 0;
  std::int64_t out = 0;
  if (__builtin_mul_overflow(q, b, &prod) || __builtin_sub_overflow(a, prod, &out))
    throw LabError(ErrorCode::Overflow, "Smith normal form entry overflow");
  return out;
}

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t out = 0;
  if (__builtin_add_overflow(a, b, &out))
    throw LabError(ErrorCode::Overflow, "Smith normal form entry overflow");
  return out;
}

}  // namespace

std::vector<std::int64_t> smith_invariants(IntMatrix a) {
  const std::size_t rows = a.size();
  const std::size_t cols = rows == 0 ? 0 : a[0].size();
  for (const auto& row : a)
    if (row.size() != cols) throw LabError(ErrorCode::InvalidArgument, "ragged matrix");

  std::vector<std::int64_t> diag;
  for (std::size_t t = 0; t < rows && t < cols; ++t) {
    for (;;) {
      // pivot: smallest non-zero magnitude in the trailing block
      std::size_t pr = rows;
      std::size_t pc = cols;
      for (std::size_t i = t; i < rows; ++i)
        for (std::size_t j = t; j < cols; ++j)
          if (a[i][j] != 0 && (pr == rows || std::llabs(a[i][j]) < std::llabs(a[pr][pc]))) {
            pr = i;
            pc = j;
          }
      if (pr == rows) {
        while (diag.size() < std::min(rows, cols)) diag.push_back(0);
        return diag;
      }
      std::swap(a[t], a[pr]);
      for (auto& row : a) std::swap(row[t], row[pc]);

      const std::int64_t piv = a[t][t];
      bool clean = true;
      for (std::size_t i = t + 1; i < rows; ++i) {
        const std::int64_t q = a[i][t] / piv;
        for (std::size_t j = t; j < cols; ++j) a[i][j] = checked_sub_mul(a[i][j], q, a[t][j]);
        clean = clean && a[i][t] == 0;
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        const std::int64_t q = a[t][j] / piv;
        for (std::size_t i = t; i < rows; ++i) a[i][j] = checked_sub_mul(a[i][j], q, a[i][t]);
        clean = clean && a[t][j] == 0;
      }
      if (!clean) continue;

      // pivot must divide the rest; otherwise fold the offending row in
      std::size_t bad = rows;
      for (std::size_t i = t + 1; i < rows && bad == rows; ++i)
        for (std::size_t j = t + 1; j < cols; ++j)
          if (a[i][j] % piv != 0) {
            bad = i;
            break;
          }
      if (bad == rows) break;
      for (std::size_t j = t; j < cols; ++j) a[t][j] = checked_add(a[t][j], a[bad][j]);
    }
    diag.push_back(std::llabs(a[t][t]));
  }
  return diag;
}

std::int64_t presented_group_order(const IntMatrix& relations) {
  const std::size_t generators = relations.empty() ? 0 : relations[0].size();
  const auto diag = smith_invariants(relations);
  if (diag.size() < generators) return 0;  // free part
  std::int64_t order = 1;
  for (std::int64_t d : diag) {
    if (d == 0) return 0;
    if (__builtin_mul_overflow(order, d, &order))
      throw LabError(ErrorCode::Overflow, "group order overflow");
  }
  return order;
}

}  // namespace solenoid_lab
