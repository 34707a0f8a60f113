#include "curlset/lp.hpp"

#include <stdexcept>

namespace curlset {
namespace {

// Dense tableau in standard form: rows are constraints "T x = rhs", x >= 0.
struct Tableau {
  std::vector<std::vector<Rational>> a;  // m rows of width cols
  std::vector<Rational> rhs;
  std::vector<int> basis;                // basic column per row
  int cols = 0;

  void pivot(int row, int col) {
    const Rational inv = Rational(1) / a[row][col];
    for (auto& v : a[row]) v *= inv;
    rhs[row] *= inv;
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (static_cast<int>(i) == row || a[i][col].is_zero()) continue;
      const Rational f = a[i][col];
      for (int j = 0; j < cols; ++j)
        if (!a[row][j].is_zero()) a[i][j] -= f * a[row][j];
      rhs[i] -= f * rhs[row];
    }
    basis[row] = col;
  }

  std::vector<Rational> reducedCosts(const std::vector<Rational>& cost) const {
    std::vector<Rational> r(cost);
    for (std::size_t i = 0; i < a.size(); ++i) {
      const Rational& cb = cost[basis[i]];
      if (cb.is_zero()) continue;
      for (int j = 0; j < cols; ++j)
        if (!a[i][j].is_zero()) r[j] -= cb * a[i][j];
    }
    return r;
  }

  // Maximizes cost·x over columns with allowed[j]; Bland's rule throughout.
  bool optimize(const std::vector<Rational>& cost, const std::vector<bool>& allowed) {
    while (true) {
      const auto r = reducedCosts(cost);
      int enter = -1;
      for (int j = 0; j < cols; ++j)
        if (allowed[j] && r[j] > 0) { enter = j; break; }
      if (enter < 0) return true;
      int leave = -1;
      Rational best;
      for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i][enter] <= 0) continue;
        const Rational ratio = rhs[i] / a[i][enter];
        if (leave < 0 || ratio < best || (ratio == best && basis[i] < basis[leave])) {
          leave = static_cast<int>(i);
          best = ratio;
        }
      }
      if (leave < 0) return false;
      pivot(leave, enter);
    }
  }
};

}  // namespace

LinearProgram::LinearProgram(int numVars)
    : numVars_(numVars), free_(numVars, false), objective_(VectorQ::Zero(numVars)) {}

void LinearProgram::setFree(int var) { free_.at(var) = true; }

void LinearProgram::setObjective(VectorQ c) {
  if (c.size() != numVars_) throw std::invalid_argument("objective size mismatch");
  objective_ = std::move(c);
}

void LinearProgram::addConstraint(VectorQ coeffs, Relation rel, Rational rhs) {
  if (coeffs.size() != numVars_) throw std::invalid_argument("constraint size mismatch");
  rows_.push_back({std::move(coeffs), rel, std::move(rhs)});
}

LpResult LinearProgram::maximize() const {
  // Column layout: structural (free vars split in two), slack/surplus, artificial.
  std::vector<int> posCol(numVars_), negCol(numVars_, -1);
  int cols = 0;
  for (int v = 0; v < numVars_; ++v) {
    posCol[v] = cols++;
    if (free_[v]) negCol[v] = cols++;
  }
  std::vector<int> slackCol(rows_.size(), -1);
  for (std::size_t i = 0; i < rows_.size(); ++i)
    if (rows_[i].rel != Relation::Equal) slackCol[i] = cols++;
  const int beforeArtificial = cols;

  Tableau t;
  const int m = static_cast<int>(rows_.size());
  t.a.assign(m, {});
  t.rhs.assign(m, Rational(0));
  t.basis.assign(m, -1);
  std::vector<int> artificialRows;
  for (int i = 0; i < m; ++i) {
    const Row& row = rows_[i];
    std::vector<Rational> line(beforeArtificial, Rational(0));
    for (int v = 0; v < numVars_; ++v) {
      line[posCol[v]] = row.coeffs(v);
      if (negCol[v] >= 0) line[negCol[v]] = -row.coeffs(v);
    }
    if (row.rel == Relation::LessEqual) line[slackCol[i]] = 1;
    if (row.rel == Relation::GreaterEqual) line[slackCol[i]] = -1;
    Rational rhs = row.rhs;
    if (rhs < 0) {
      for (auto& x : line) x = -x;
      rhs = -rhs;
    }
    t.a[i] = std::move(line);
    t.rhs[i] = rhs;
    if (slackCol[i] >= 0 && t.a[i][slackCol[i]] == 1) t.basis[i] = slackCol[i];
    else artificialRows.push_back(i);
  }
  for (int i : artificialRows) {
    for (auto& line : t.a) line.push_back(Rational(0));
    t.a[i].back() = 1;
    t.basis[i] = cols++;
  }
  t.cols = cols;

  // Phase 1: drive the artificial variables to zero.
  std::vector<bool> allowed(cols, true);
  if (!artificialRows.empty()) {
    std::vector<Rational> cost(cols, Rational(0));
    for (int j = beforeArtificial; j < cols; ++j) cost[j] = -1;
    t.optimize(cost, allowed);
    Rational infeasibility = 0;
    for (int i = 0; i < m; ++i)
      if (t.basis[i] >= beforeArtificial) infeasibility += t.rhs[i];
    if (infeasibility > 0) return {LpStatus::Infeasible, {}, {}};
    for (int i = 0; i < static_cast<int>(t.a.size());) {
      if (t.basis[i] < beforeArtificial) { ++i; continue; }
      int col = -1;
      for (int j = 0; j < beforeArtificial; ++j)
        if (!t.a[i][j].is_zero()) { col = j; break; }
      if (col >= 0) {
        t.pivot(i, col);
        ++i;
      } else {
        t.a.erase(t.a.begin() + i);
        t.rhs.erase(t.rhs.begin() + i);
        t.basis.erase(t.basis.begin() + i);
      }
    }
    for (int j = beforeArtificial; j < cols; ++j) allowed[j] = false;
  }

  // Phase 2.
  std::vector<Rational> cost(cols, Rational(0));
  for (int v = 0; v < numVars_; ++v) {
    cost[posCol[v]] = objective_(v);
    if (negCol[v] >= 0) cost[negCol[v]] = -objective_(v);
  }
  if (!t.optimize(cost, allowed)) return {LpStatus::Unbounded, {}, {}};

  std::vector<Rational> colValue(cols, Rational(0));
  for (std::size_t i = 0; i < t.basis.size(); ++i) colValue[t.basis[i]] = t.rhs[i];
  LpResult out;
  out.status = LpStatus::Optimal;
  out.x = VectorQ::Zero(numVars_);
  for (int v = 0; v < numVars_; ++v) {
    out.x(v) = colValue[posCol[v]];
    if (negCol[v] >= 0) out.x(v) -= colValue[negCol[v]];
  }
  out.objective = 0;
  for (int v = 0; v < numVars_; ++v) out.objective += objective_(v) * out.x(v);
  return out;
}

RelativeInteriorCertificate relativeInteriorOrigin(const MatrixQ& points) {
  const int dim = static_cast<int>(points.rows());
  const int count = static_cast<int>(points.cols());
  if (count == 0) throw std::invalid_argument("relativeInteriorOrigin: empty point set");
  RelativeInteriorCertificate cert;

  // Variables: λ_0..λ_{count-1} >= 0, t free (last).
  LinearProgram primal(count + 1);
  primal.setFree(count);
  VectorQ objective = VectorQ::Zero(count + 1);
  objective(count) = 1;
  primal.setObjective(objective);
  for (int r = 0; r < dim; ++r) {
    VectorQ row = VectorQ::Zero(count + 1);
    for (int i = 0; i < count; ++i) row(i) = points(r, i);
    primal.addConstraint(std::move(row), Relation::Equal, 0);
  }
  {
    VectorQ row = VectorQ::Zero(count + 1);
    for (int i = 0; i < count; ++i) row(i) = 1;
    primal.addConstraint(std::move(row), Relation::Equal, 1);
  }
  for (int i = 0; i < count; ++i) {
    VectorQ row = VectorQ::Zero(count + 1);
    row(i) = 1;
    row(count) = -1;
    primal.addConstraint(std::move(row), Relation::GreaterEqual, 0);
  }
  const LpResult res = primal.maximize();
  if (res.status == LpStatus::Unbounded) throw std::logic_error("relative-interior LP cannot be unbounded");
  if (res.status == LpStatus::Optimal && res.objective > 0) {
    cert.inside = true;
    cert.weights = res.x.head(count);
    return cert;
  }

  // Separator: m free, <p_i, m> >= 0, Σ_i <p_i, m> = 1.
  LinearProgram sep(dim);
  for (int r = 0; r < dim; ++r) sep.setFree(r);
  VectorQ total = VectorQ::Zero(dim);
  for (int i = 0; i < count; ++i) {
    sep.addConstraint(points.col(i), Relation::GreaterEqual, 0);
    total += points.col(i);
  }
  sep.addConstraint(total, Relation::Equal, 1);
  const LpResult s = sep.maximize();
  if (s.status != LpStatus::Optimal) throw std::logic_error("no separator although 0 is not in ri co");
  cert.separator = s.x;
  return cert;
}

bool checkCertificate(const MatrixQ& points, const RelativeInteriorCertificate& cert) {
  if (cert.inside) {
    if (cert.weights.size() != points.cols()) return false;
    Rational sum = 0;
    for (Eigen::Index i = 0; i < cert.weights.size(); ++i) {
      if (cert.weights(i) <= 0) return false;
      sum += cert.weights(i);
    }
    return sum == 1 && isZero(VectorQ(points * cert.weights));
  }
  if (cert.separator.size() != points.rows()) return false;
  bool strict = false;
  for (Eigen::Index i = 0; i < points.cols(); ++i) {
    const Rational v = points.col(i).dot(cert.separator);
    if (v < 0) return false;
    if (v > 0) strict = true;
  }
  return strict;
}

}  // namespace curlset
