#include "nlie/linalg.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace nlie {

SparseMatrix::SparseMatrix(FieldSpec field, int rows, int cols)
    : field_(field), cols_(cols), rows_(static_cast<std::size_t>(rows), SparseVector(field)) {
  if (rows < 0 || cols < 0) throw std::invalid_argument("negative matrix dimension");
}

SparseMatrix SparseMatrix::identity(FieldSpec field, int n) {
  SparseMatrix m(field, n, n);
  for (int i = 0; i < n; ++i) m.set(i, i, Scalar::one(field));
  return m;
}

SparseMatrix SparseMatrix::from_rows(FieldSpec field, int cols, std::vector<SparseVector> rows) {
  SparseMatrix m(field, 0, cols);
  for (auto& r : rows) m.append_row(std::move(r));
  return m;
}

SparseMatrix SparseMatrix::from_dense(FieldSpec field, const std::vector<std::vector<long>>& a) {
  const int cols = a.empty() ? 0 : static_cast<int>(a.front().size());
  SparseMatrix m(field, static_cast<int>(a.size()), cols);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (static_cast<int>(a[i].size()) != cols) throw std::invalid_argument("ragged dense matrix");
    for (int j = 0; j < cols; ++j) m.set(static_cast<int>(i), j, Scalar(field, a[i][j]));
  }
  return m;
}

void SparseMatrix::set(int i, int j, const Scalar& v) {
  if (j < 0 || j >= cols_) throw std::out_of_range("column index out of range");
  if (!(v.field() == field_)) throw std::invalid_argument("mixed-field matrix entry");
  rows_.at(i).set(j, v);
}

void SparseMatrix::append_row(SparseVector r) {
  if (!(r.field() == field_)) throw std::invalid_argument("mixed-field matrix row");
  if (!r.is_zero() && (r.leading_key() < 0 || r.terms().rbegin()->first >= cols_))
    throw std::out_of_range("row entry outside matrix columns");
  rows_.push_back(std::move(r));
}

SparseMatrix SparseMatrix::transpose() const {
  SparseMatrix t(field_, cols_, rows());
  for (int i = 0; i < rows(); ++i)
    for (const auto& [j, v] : rows_[i]) t.rows_[j].set(i, v);
  return t;
}

SparseVector SparseMatrix::apply(const SparseVector& x) const {
  if (!(x.field() == field_)) throw std::invalid_argument("mixed-field matrix-vector product");
  SparseVector out(field_);
  for (int i = 0; i < rows(); ++i) {
    Scalar acc = Scalar::zero(field_);
    for (const auto& [j, v] : rows_[i]) {
      Scalar xj = x.coeff(j);
      if (!xj.is_zero()) acc += v * xj;
    }
    out.set(i, acc);
  }
  return out;
}

SparseMatrix SparseMatrix::multiply(const SparseMatrix& rhs) const {
  if (!(rhs.field_ == field_)) throw std::invalid_argument("mixed-field matrix product");
  if (cols_ != rhs.rows()) throw std::invalid_argument("matrix product dimension mismatch");
  SparseMatrix out(field_, rows(), rhs.cols_);
  for (int i = 0; i < rows(); ++i)
    for (const auto& [k, v] : rows_[i]) out.rows_[i].axpy(v, rhs.rows_[k]);
  return out;
}

bool SparseMatrix::operator==(const SparseMatrix& o) const {
  return field_ == o.field_ && cols_ == o.cols_ && rows_ == o.rows_;
}

RrefResult rref(const SparseMatrix& m) {
  const FieldSpec field = m.field();
  std::vector<SparseVector> rows;
  for (int i = 0; i < m.rows(); ++i) {
    if (!(m.row(i).field() == field)) throw std::invalid_argument("mixed-field matrix");
    for (const auto& kv : m.row(i))
      if (!(kv.second.field() == field)) throw std::invalid_argument("mixed-field matrix");
    rows.push_back(m.row(i));
  }

  std::vector<SparseVector> pivot_rows;
  std::vector<int> pivots;
  std::set<int> remaining;
  for (int i = 0; i < static_cast<int>(rows.size()); ++i)
    if (!rows[i].is_zero()) remaining.insert(i);

  while (!remaining.empty()) {
    int best_row = -1;
    int best_col = 0;
    for (int i : remaining) {
      const int c = rows[i].leading_key();
      if (best_row < 0 || c < best_col) {
        best_row = i;
        best_col = c;
      }
    }
    remaining.erase(best_row);
    SparseVector prow = rows[best_row];
    prow *= prow.coeff(best_col).inverse();
    std::vector<int> emptied;
    for (int i : remaining) {
      Scalar c = rows[i].coeff(best_col);
      if (c.is_zero()) continue;
      rows[i].axpy(-c, prow);
      if (rows[i].is_zero()) emptied.push_back(i);
    }
    for (int i : emptied) remaining.erase(i);
    for (auto& r : pivot_rows) {
      Scalar c = r.coeff(best_col);
      if (!c.is_zero()) r.axpy(-c, prow);
    }
    pivot_rows.push_back(std::move(prow));
    pivots.push_back(best_col);
  }

  SparseMatrix reduced(field, 0, m.cols());
  for (auto& r : pivot_rows) reduced.append_row(std::move(r));
  while (reduced.rows() < m.rows()) reduced.append_row(SparseVector(field));
  return {std::move(reduced), std::move(pivots)};
}

int rank(const SparseMatrix& m) { return rref(m).rank(); }

RowSpan::RowSpan(FieldSpec field, int dim) : field_(field), dim_(dim) {}

void RowSpan::check(const SparseVector& v) const {
  if (!(v.field() == field_)) throw std::invalid_argument("mixed-field span operation");
  if (!v.is_zero() && (v.leading_key() < 0 || v.terms().rbegin()->first >= dim_))
    throw std::invalid_argument("vector dimension does not match span dimension " + std::to_string(dim_));
}

SparseVector RowSpan::reduce(const SparseVector& v) const {
  check(v);
  SparseVector r = v;
  std::vector<std::pair<int, Scalar>> hits;
  for (const auto& [k, c] : v) {
    if (rows_.count(k)) hits.emplace_back(k, c);
  }
  // Stored rows are fully reduced, so subtracting one never touches another pivot.
  for (const auto& [k, c] : hits) r.axpy(-c, rows_.at(k));
  return r;
}

bool RowSpan::insert(const SparseVector& v) {
  SparseVector r = reduce(v);
  if (r.is_zero()) return false;
  const int lead = r.leading_key();
  r *= r.coeff(lead).inverse();
  for (auto& [p, row] : rows_) {
    Scalar c = row.coeff(lead);
    if (!c.is_zero()) row.axpy(-c, r);
  }
  rows_.emplace(lead, std::move(r));
  return true;
}

bool RowSpan::contains(const SparseVector& v) const { return reduce(v).is_zero(); }

std::optional<std::map<int, Scalar>> RowSpan::coordinates(const SparseVector& v) const {
  if (!contains(v)) return std::nullopt;
  std::map<int, Scalar> out;
  for (const auto& [k, c] : v)
    if (rows_.count(k)) out.emplace(k, c);
  return out;
}

std::optional<SparseVector> solve_linear(const SparseMatrix& a, const SparseVector& b) {
  if (!(b.field() == a.field())) throw std::invalid_argument("mixed-field linear system");
  if (!b.is_zero() && (b.leading_key() < 0 || b.terms().rbegin()->first >= a.rows()))
    throw std::invalid_argument("right-hand side length does not match matrix rows");
  const int n = a.cols();
  SparseMatrix aug(a.field(), 0, n + 1);
  for (int i = 0; i < a.rows(); ++i) {
    SparseVector r = a.row(i);
    r.set(n, b.coeff(i));
    aug.append_row(std::move(r));
  }
  RrefResult res = rref(aug);
  SparseVector x(a.field());
  for (int i = 0; i < res.rank(); ++i) {
    const int p = res.pivots[i];
    if (p == n) return std::nullopt;
    x.set(p, res.reduced.at(i, n));
  }
  return x;
}

std::vector<SparseVector> nullspace(const SparseMatrix& a) {
  RrefResult res = rref(a);
  std::set<int> pivot_set(res.pivots.begin(), res.pivots.end());
  std::vector<SparseVector> out;
  for (int f = 0; f < a.cols(); ++f) {
    if (pivot_set.count(f)) continue;
    SparseVector x(a.field());
    x.set(f, Scalar::one(a.field()));
    for (int i = 0; i < res.rank(); ++i) x.set(res.pivots[i], -res.reduced.at(i, f));
    out.push_back(std::move(x));
  }
  return out;
}

std::vector<SparseVector> relations(FieldSpec field, int dim, const std::vector<SparseVector>& vectors) {
  const int k = static_cast<int>(vectors.size());
  SparseMatrix m(field, 0, dim + k);
  for (int i = 0; i < k; ++i) {
    SparseVector r = vectors[i];
    r.set(dim + i, Scalar::one(field));
    m.append_row(std::move(r));
  }
  RrefResult res = rref(m);
  std::vector<SparseVector> out;
  for (int i = 0; i < res.rank(); ++i) {
    if (res.pivots[i] < dim) continue;
    SparseVector rel(field);
    for (const auto& [j, c] : res.reduced.row(i)) rel.set(j - dim, c);
    out.push_back(std::move(rel));
  }
  return out;
}

std::string to_string(const SparseVector& v) {
  if (v.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [k, c] : v) {
    if (!first) os << " + ";
    first = false;
    os << c << "*[" << k << "]";
  }
  return os.str();
}

}  // namespace nlie
