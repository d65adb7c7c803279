#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "nlie/field.hpp"

namespace nlie {

/// Sparse linear combination of keys with coefficients in a fixed field.
/// Zero coefficients are never stored.
template <class Key>
class LinComb {
 public:
  using Terms = std::map<Key, Scalar>;

  LinComb() = default;
  explicit LinComb(FieldSpec field) : field_(field) {}
  LinComb(FieldSpec field, const Key& k) : field_(field) { terms_.emplace(k, Scalar::one(field)); }
  LinComb(const Key& k, const Scalar& c) : field_(c.field()) {
    if (!c.is_zero()) terms_.emplace(k, c);
  }

  const FieldSpec& field() const { return field_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  auto begin() const { return terms_.begin(); }
  auto end() const { return terms_.end(); }

  Scalar coeff(const Key& k) const {
    auto it = terms_.find(k);
    return it == terms_.end() ? Scalar::zero(field_) : it->second;
  }

  void add_term(const Key& k, const Scalar& c) {
    if (!(c.field() == field_)) throw std::invalid_argument("mixed-field linear combination");
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(k, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  void set(const Key& k, const Scalar& c) {
    if (c.is_zero())
      terms_.erase(k);
    else
      terms_.insert_or_assign(k, c);
  }

  /// this += c * other
  void axpy(const Scalar& c, const LinComb& other) {
    if (c.is_zero()) return;
    for (const auto& [k, v] : other.terms_) add_term(k, c * v);
  }

  LinComb& operator+=(const LinComb& o) {
    for (const auto& [k, v] : o.terms_) add_term(k, v);
    return *this;
  }
  LinComb& operator-=(const LinComb& o) {
    for (const auto& [k, v] : o.terms_) add_term(k, -v);
    return *this;
  }
  LinComb& operator*=(const Scalar& c) {
    if (!(c.field() == field_)) throw std::invalid_argument("mixed-field scaling");
    if (c.is_zero()) {
      terms_.clear();
      return *this;
    }
    for (auto& kv : terms_) kv.second *= c;
    return *this;
  }
  friend LinComb operator+(LinComb a, const LinComb& b) { return a += b; }
  friend LinComb operator-(LinComb a, const LinComb& b) { return a -= b; }
  friend LinComb operator*(const Scalar& c, LinComb a) { return a *= c; }
  LinComb operator-() const {
    LinComb out(field_);
    for (const auto& [k, v] : terms_) out.terms_.emplace(k, -v);
    return out;
  }

  bool operator==(const LinComb& o) const { return field_ == o.field_ && terms_ == o.terms_; }

  /// Key of the first stored term (smallest key).
  const Key& leading_key() const { return terms_.begin()->first; }

 private:
  FieldSpec field_{};
  Terms terms_;
};

using SparseVector = LinComb<int>;

/// Dense-indexed, sparsely stored row-major matrix.
class SparseMatrix {
 public:
  SparseMatrix(FieldSpec field, int rows, int cols);
  static SparseMatrix identity(FieldSpec field, int n);
  static SparseMatrix from_rows(FieldSpec field, int cols, std::vector<SparseVector> rows);
  /// Dense integer literal, convenient for tests.
  static SparseMatrix from_dense(FieldSpec field, const std::vector<std::vector<long>>& a);

  const FieldSpec& field() const { return field_; }
  int rows() const { return static_cast<int>(rows_.size()); }
  int cols() const { return cols_; }
  const SparseVector& row(int i) const { return rows_.at(i); }
  SparseVector& row(int i) { return rows_.at(i); }
  Scalar at(int i, int j) const { return rows_.at(i).coeff(j); }
  void set(int i, int j, const Scalar& v);
  void append_row(SparseVector r);

  SparseMatrix transpose() const;
  SparseVector apply(const SparseVector& x) const;
  SparseMatrix multiply(const SparseMatrix& rhs) const;

  bool operator==(const SparseMatrix& o) const;

 private:
  FieldSpec field_;
  int cols_;
  std::vector<SparseVector> rows_;
};

struct RrefResult {
  SparseMatrix reduced;
  std::vector<int> pivots;
  int rank() const { return static_cast<int>(pivots.size()); }
};

/// Reduced row-echelon form. Pivot choice is the lowest column, and within
/// that column the lowest row not yet used.
RrefResult rref(const SparseMatrix& m);
int rank(const SparseMatrix& m);

/// Incrementally maintained row space in reduced echelon form.
class RowSpan {
 public:
  RowSpan(FieldSpec field, int dim);

  const FieldSpec& field() const { return field_; }
  int dim() const { return dim_; }
  int rank() const { return static_cast<int>(rows_.size()); }

  /// Inserts v; returns true when the rank grew.
  bool insert(const SparseVector& v);
  bool contains(const SparseVector& v) const;
  /// v minus its projection along the stored echelon basis.
  SparseVector reduce(const SparseVector& v) const;
  /// Coordinates of v in the echelon basis (indexed by pivot order), or
  /// nothing when v is outside the span.
  std::optional<std::map<int, Scalar>> coordinates(const SparseVector& v) const;
  /// Echelon basis keyed by pivot column.
  const std::map<int, SparseVector>& basis() const { return rows_; }

 private:
  void check(const SparseVector& v) const;

  FieldSpec field_;
  int dim_;
  std::map<int, SparseVector> rows_;
};

/// Exact solution of A x = b, or nothing when inconsistent. Free variables
/// are set to zero.
std::optional<SparseVector> solve_linear(const SparseMatrix& a, const SparseVector& b);

/// Basis of {x : A x = 0}.
std::vector<SparseVector> nullspace(const SparseMatrix& a);

/// Given vectors v_0..v_{k-1}, a basis of the relations {c : sum c_i v_i = 0}
/// expressed as coefficient vectors indexed by i.
std::vector<SparseVector> relations(FieldSpec field, int dim, const std::vector<SparseVector>& vectors);

std::string to_string(const SparseVector& v);

}  // namespace nlie
