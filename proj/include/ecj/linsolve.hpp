#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "ecj/error.hpp"
#include "ecj/rational.hpp"
#include "ecj/ratfunc.hpp"

namespace ecj {

// A field is any type providing
//   Elem zero() const; Elem one() const;
//   Elem add(const Elem&, const Elem&) const; Elem sub(...) const;
//   Elem mul(...) const; Elem div(...) const; bool is_zero(const Elem&) const;
//   Elem constant(const Rational&) const;
// where is_zero is decided by normal forms.

template <class Elem>
class FieldMatrix {
 public:
  FieldMatrix() = default;
  FieldMatrix(std::size_t rows, std::size_t cols, const Elem& zero)
      : rows_(rows), cols_(cols), data_(rows * cols, zero) {}

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  Elem& at(std::size_t r, std::size_t c) { return data_.at(r * cols_ + c); }
  const Elem& at(std::size_t r, std::size_t c) const { return data_.at(r * cols_ + c); }

  std::vector<Elem> row(std::size_t r) const {
    return std::vector<Elem>(data_.begin() + std::ptrdiff_t(r * cols_),
                             data_.begin() + std::ptrdiff_t((r + 1) * cols_));
  }
  void append_row(const std::vector<Elem>& values) {
    if (values.size() != cols_) throw Error(Error::Kind::Internal, "row length mismatch");
    data_.insert(data_.end(), values.begin(), values.end());
    ++rows_;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Elem> data_;
};

template <class Elem>
struct AffineSolution {
  std::vector<Elem> particular;
  std::vector<std::vector<Elem>> kernel;
  std::vector<std::size_t> pivot_columns;
  std::size_t rank = 0;
};

namespace detail {

// Reduced row echelon form of [M | b] with rows processed in input order and
// the pivot taken at the first nonzero column of each reduced row.
template <class Field, class Elem>
struct Echelon {
  std::vector<std::vector<Elem>> rows;  // augmented, pivot entry 1
  std::vector<std::size_t> pivots;
  bool consistent = true;
};

template <class Field, class Elem>
Echelon<Field, Elem> echelon(const Field& F, const FieldMatrix<Elem>& M, const std::vector<Elem>* b) {
  Echelon<Field, Elem> out;
  const std::size_t n = M.cols();
  for (std::size_t i = 0; i < M.rows(); ++i) {
    std::vector<Elem> row = M.row(i);
    row.push_back(b ? (*b)[i] : F.zero());
    for (std::size_t p = 0; p < out.pivots.size(); ++p) {
      std::size_t c = out.pivots[p];
      if (F.is_zero(row[c])) continue;
      Elem f = row[c];
      for (std::size_t j = 0; j <= n; ++j) {
        if (j == c) {
          row[j] = F.zero();
        } else if (!F.is_zero(out.rows[p][j])) {
          row[j] = F.sub(row[j], F.mul(f, out.rows[p][j]));
        }
      }
    }
    std::size_t c = 0;
    while (c < n && F.is_zero(row[c])) ++c;
    if (c == n) {
      if (!F.is_zero(row[n])) out.consistent = false;
      continue;
    }
    Elem inv = F.div(F.one(), row[c]);
    for (std::size_t j = 0; j <= n; ++j) {
      if (j == c) {
        row[j] = F.one();
      } else if (!F.is_zero(row[j])) {
        row[j] = F.mul(row[j], inv);
      }
    }
    for (std::size_t p = 0; p < out.rows.size(); ++p) {
      if (F.is_zero(out.rows[p][c])) continue;
      Elem f = out.rows[p][c];
      for (std::size_t j = 0; j <= n; ++j) {
        if (j == c) {
          out.rows[p][j] = F.zero();
        } else if (!F.is_zero(row[j])) {
          out.rows[p][j] = F.sub(out.rows[p][j], F.mul(f, row[j]));
        }
      }
    }
    out.rows.push_back(std::move(row));
    out.pivots.push_back(c);
  }
  return out;
}

}  // namespace detail

// Full solution set of M x = b: particular solution with free variables 0 and
// one kernel vector per free column (ascending). Throws Error(Infeasible).
template <class Field, class Elem>
AffineSolution<Elem> solve_affine_system(const Field& F, const FieldMatrix<Elem>& M,
                                         const std::vector<Elem>& b) {
  if (b.size() != M.rows()) throw Error(Error::Kind::Internal, "right-hand side length mismatch");
  auto ech = detail::echelon<Field, Elem>(F, M, &b);
  if (!ech.consistent) throw Error(Error::Kind::Infeasible, "linear system is inconsistent");
  const std::size_t n = M.cols();
  AffineSolution<Elem> sol;
  sol.rank = ech.pivots.size();
  sol.pivot_columns = ech.pivots;
  sol.particular.assign(n, F.zero());
  std::vector<bool> is_pivot(n, false);
  for (std::size_t p = 0; p < ech.pivots.size(); ++p) {
    is_pivot[ech.pivots[p]] = true;
    sol.particular[ech.pivots[p]] = ech.rows[p][n];
  }
  for (std::size_t f = 0; f < n; ++f) {
    if (is_pivot[f]) continue;
    std::vector<Elem> v(n, F.zero());
    v[f] = F.one();
    for (std::size_t p = 0; p < ech.pivots.size(); ++p) {
      if (!F.is_zero(ech.rows[p][f])) v[ech.pivots[p]] = F.sub(F.zero(), ech.rows[p][f]);
    }
    sol.kernel.push_back(std::move(v));
  }
  return sol;
}

template <class Field, class Elem>
AffineSolution<Elem> solve_homogeneous(const Field& F, const FieldMatrix<Elem>& M) {
  return solve_affine_system(F, M, std::vector<Elem>(M.rows(), F.zero()));
}

template <class Field, class Elem>
std::size_t matrix_rank(const Field& F, const FieldMatrix<Elem>& M) {
  return detail::echelon<Field, Elem>(F, M, nullptr).pivots.size();
}

struct RationalField {
  using Elem = Rational;
  Rational zero() const { return 0; }
  Rational one() const { return 1; }
  Rational add(const Rational& a, const Rational& b) const { return a + b; }
  Rational sub(const Rational& a, const Rational& b) const { return a - b; }
  Rational mul(const Rational& a, const Rational& b) const { return a * b; }
  Rational div(const Rational& a, const Rational& b) const {
    if (sgn(b) == 0) throw Error(Error::Kind::DivisionByZero, "rational division by zero");
    return a / b;
  }
  bool is_zero(const Rational& a) const { return sgn(a) == 0; }
  Rational constant(const Rational& c) const { return c; }
};

// Q(v1..vn) over a fixed registry.
struct RatFuncField {
  RegistryPtr reg;
  using Elem = RatFunc;
  RatFunc zero() const { return RatFunc::constant(reg, 0); }
  RatFunc one() const { return RatFunc::constant(reg, 1); }
  RatFunc add(const RatFunc& a, const RatFunc& b) const { return a + b; }
  RatFunc sub(const RatFunc& a, const RatFunc& b) const { return a - b; }
  RatFunc mul(const RatFunc& a, const RatFunc& b) const { return a * b; }
  RatFunc div(const RatFunc& a, const RatFunc& b) const { return a / b; }
  bool is_zero(const RatFunc& a) const { return a.is_zero(); }
  RatFunc constant(const Rational& c) const { return RatFunc::constant(reg, c); }
};

}  // namespace ecj
