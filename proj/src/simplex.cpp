#include "flp/simplex.hpp"

#include <algorithm>
#include <cmath>

namespace flp {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kPivotTol = 1e-9;
constexpr double kDegenTol = 1e-9;
constexpr int kRefactorEvery = 100;
constexpr int kBlandAfterDegen = 1000;
}  // namespace

const char* lp_status_name(LpStatus s) {
  switch (s) {
    case LpStatus::Optimal: return "optimal";
    case LpStatus::Infeasible: return "infeasible";
    case LpStatus::Unbounded: return "unbounded";
    case LpStatus::IterationLimit: return "iteration-limit";
    case LpStatus::NumericalFailure: return "numerical-failure";
  }
  return "?";
}

SimplexSolver::SimplexSolver(const MilpModel& model) {
  n_ = model.num_vars();
  m_ = model.num_rows();
  cols_.assign(n_, {});
  for (int r = 0; r < m_; ++r) {
    const Constraint& c = model.rows()[r];
    rhs_.push_back(c.rhs);
    sense_.push_back(c.sense);
    for (const RowTerm& t : c.terms) cols_[t.var].push_back({r, t.coef});
  }
  model_lb_.resize(n_);
  model_ub_.resize(n_);
  obj_.resize(n_);
  for (int j = 0; j < n_; ++j) {
    const Variable& v = model.vars()[j];
    if (!std::isfinite(v.lb) || !std::isfinite(v.ub))
      throw ModelError("solve_lp requires finite bounds on variable " + v.name);
    model_lb_[j] = v.lb;
    model_ub_[j] = v.ub;
    obj_[j] = model.objective_coef(j);
  }
}

void SimplexSolver::set_objective(const std::vector<double>& obj) {
  if (static_cast<int>(obj.size()) != n_)
    throw ModelError("set_objective: wrong length");
  obj_ = obj;
}

void SimplexSolver::ftran(int col, std::vector<double>& w) const {
  w.assign(m_, 0.0);
  if (col < n_) {
    for (auto [r, a] : cols_[col])
      for (int i = 0; i < m_; ++i) w[i] += binv_[i * m_ + r] * a;
  } else if (col < n_ + m_) {
    int r = col - n_;
    for (int i = 0; i < m_; ++i) w[i] = binv_[i * m_ + r];
  } else {
    int r = col - n_ - m_;
    double s = art_sign_[r];
    for (int i = 0; i < m_; ++i) w[i] = binv_[i * m_ + r] * s;
  }
}

void SimplexSolver::compute_duals() {
  duals_.assign(m_, 0.0);
  for (int k = 0; k < m_; ++k) {
    double cb = column_cost(basis_[k]);
    if (cb == 0.0) continue;
    for (int i = 0; i < m_; ++i) duals_[i] += cb * binv_[k * m_ + i];
  }
}

bool SimplexSolver::price(int& entering, double& direction, bool bland) const {
  entering = -1;
  double best = 0.0;
  for (int j = 0; j < total_; ++j) {
    ColStatus st = status_[j];
    if (st == ColStatus::Basic || st == ColStatus::Fixed) continue;
    double d = column_cost(j);
    if (j < n_) {
      for (auto [r, a] : cols_[j]) d -= duals_[r] * a;
    } else if (j < n_ + m_) {
      d -= duals_[j - n_];
    } else {
      d -= duals_[j - n_ - m_] * art_sign_[j - n_ - m_];
    }
    double viol = 0.0;
    if (st == ColStatus::Lower && d < -kLpTol) viol = -d;
    if (st == ColStatus::Upper && d > kLpTol) viol = d;
    if (viol <= 0.0) continue;
    if (bland) {
      entering = j;
      direction = st == ColStatus::Lower ? 1.0 : -1.0;
      return true;
    }
    if (viol > best) {
      best = viol;
      entering = j;
      direction = st == ColStatus::Lower ? 1.0 : -1.0;
    }
  }
  return entering >= 0;
}

void SimplexSolver::refactorize(bool& ok) {
  // Dense Gauss-Jordan inversion of the basis matrix.
  std::vector<double> a(m_ * m_, 0.0);
  std::vector<double> w;
  for (int k = 0; k < m_; ++k) {
    int col = basis_[k];
    if (col < n_) {
      for (auto [r, v] : cols_[col]) a[r * m_ + k] = v;
    } else if (col < n_ + m_) {
      a[(col - n_) * m_ + k] = 1.0;
    } else {
      a[(col - n_ - m_) * m_ + k] = art_sign_[col - n_ - m_];
    }
  }
  std::vector<double> inv(m_ * m_, 0.0);
  for (int i = 0; i < m_; ++i) inv[i * m_ + i] = 1.0;
  for (int c = 0; c < m_; ++c) {
    int piv = -1;
    double best = kPivotTol;
    for (int r = c; r < m_; ++r)
      if (std::abs(a[r * m_ + c]) > best) {
        best = std::abs(a[r * m_ + c]);
        piv = r;
      }
    if (piv < 0) {
      ok = false;
      return;
    }
    if (piv != c) {
      for (int k = 0; k < m_; ++k) {
        std::swap(a[piv * m_ + k], a[c * m_ + k]);
        std::swap(inv[piv * m_ + k], inv[c * m_ + k]);
      }
    }
    double p = a[c * m_ + c];
    for (int k = 0; k < m_; ++k) {
      a[c * m_ + k] /= p;
      inv[c * m_ + k] /= p;
    }
    for (int r = 0; r < m_; ++r) {
      if (r == c) continue;
      double f = a[r * m_ + c];
      if (f == 0.0) continue;
      for (int k = 0; k < m_; ++k) {
        a[r * m_ + k] -= f * a[c * m_ + k];
        inv[r * m_ + k] -= f * inv[c * m_ + k];
      }
    }
  }
  // binv = inv(B) but our storage maps basis slots: column k of B is the
  // basis_[k] column, so inv rows correspond to slots already.
  binv_ = std::move(inv);
  // Recompute basic values from nonbasic ones.
  std::vector<double> resid = rhs_;
  for (int j = 0; j < total_; ++j) {
    if (status_[j] == ColStatus::Basic) continue;
    double xj = x_[j];
    if (xj == 0.0) continue;
    if (j < n_) {
      for (auto [r, v] : cols_[j]) resid[r] -= v * xj;
    } else if (j < n_ + m_) {
      resid[j - n_] -= xj;
    } else {
      resid[j - n_ - m_] -= art_sign_[j - n_ - m_] * xj;
    }
  }
  for (int k = 0; k < m_; ++k) {
    double v = 0.0;
    for (int i = 0; i < m_; ++i) v += binv_[k * m_ + i] * resid[i];
    x_[basis_[k]] = v;
  }
  ok = true;
}

LpResult SimplexSolver::solve() { return solve(model_lb_, model_ub_); }

LpResult SimplexSolver::solve(const std::vector<double>& lb,
                              const std::vector<double>& ub) {
  LpResult res;
  total_ = n_ + 2 * m_;
  lb_.assign(total_, 0.0);
  ub_.assign(total_, 0.0);
  cost_.assign(total_, 0.0);
  phase1_cost_.assign(total_, 0.0);
  x_.assign(total_, 0.0);
  status_.assign(total_, ColStatus::Lower);
  art_sign_.assign(m_, 1.0);

  for (int j = 0; j < n_; ++j) {
    lb_[j] = lb[j];
    ub_[j] = ub[j];
    cost_[j] = obj_[j];
    if (lb_[j] > ub_[j] + kFeasTol) {
      res.status = LpStatus::Infeasible;
      return res;
    }
    if (lb_[j] > ub_[j]) ub_[j] = lb_[j];
    x_[j] = lb_[j];
    status_[j] = lb_[j] == ub_[j] ? ColStatus::Fixed : ColStatus::Lower;
  }
  for (int i = 0; i < m_; ++i) {
    int s = n_ + i;
    switch (sense_[i]) {
      case Sense::LE: lb_[s] = 0.0; ub_[s] = kInf; break;
      case Sense::GE: lb_[s] = -kInf; ub_[s] = 0.0; break;
      case Sense::EQ: lb_[s] = ub_[s] = 0.0; break;
    }
    x_[s] = 0.0;
    status_[s] = lb_[s] == ub_[s] ? ColStatus::Fixed : ColStatus::Lower;
    if (sense_[i] == Sense::GE) status_[s] = ColStatus::Upper;
    x_[s] = sense_[i] == Sense::GE ? 0.0 : lb_[s] == -kInf ? 0.0 : lb_[s];
  }

  // Start from an all-artificial basis carrying the residuals.
  std::vector<double> resid = rhs_;
  for (int j = 0; j < n_; ++j) {
    if (x_[j] == 0.0) continue;
    for (auto [r, v] : cols_[j]) resid[r] -= v * x_[j];
  }
  basis_.assign(m_, 0);
  basic_slot_.assign(total_, -1);
  for (int i = 0; i < m_; ++i) {
    int a = n_ + m_ + i;
    art_sign_[i] = resid[i] < 0 ? -1.0 : 1.0;
    lb_[a] = 0.0;
    ub_[a] = kInf;
    phase1_cost_[a] = 1.0;
    x_[a] = std::abs(resid[i]);
    status_[a] = ColStatus::Basic;
    basis_[i] = a;
    basic_slot_[a] = i;
  }
  binv_.assign(m_ * m_, 0.0);
  for (int i = 0; i < m_; ++i) binv_[i * m_ + i] = art_sign_[i];

  phase1_ = true;
  bool bland = false;
  int degen_streak = 0;
  int since_refactor = 0;
  long iter = 0;
  const long iter_limit = 20000 + 200L * (n_ + m_);
  std::vector<double> w;

  while (true) {
    if (++iter > iter_limit) {
      res.status = LpStatus::IterationLimit;
      res.iterations = iter;
      return res;
    }
    compute_duals();
    int entering;
    double dir;
    if (!price(entering, dir, bland)) {
      if (phase1_) {
        double infeas = 0.0;
        for (int i = 0; i < m_; ++i) infeas += x_[n_ + m_ + i];
        if (infeas > 1e-7 * (1.0 + std::abs(infeas))) {
          res.status = LpStatus::Infeasible;
          res.iterations = iter;
          return res;
        }
        // Pin artificials at zero and restart pricing with the true costs.
        for (int i = 0; i < m_; ++i) {
          int a = n_ + m_ + i;
          ub_[a] = 0.0;
          if (status_[a] != ColStatus::Basic) {
            status_[a] = ColStatus::Fixed;
            x_[a] = 0.0;
          }
        }
        phase1_ = false;
        bland = false;
        degen_streak = 0;
        continue;
      }
      res.status = LpStatus::Optimal;
      res.x.assign(x_.begin(), x_.begin() + n_);
      res.value = 0.0;
      for (int j = 0; j < n_; ++j) res.value += obj_[j] * res.x[j];
      res.iterations = iter;
      return res;
    }

    ftran(entering, w);

    // Ratio test. t is the movement of the entering variable along dir.
    double theta = kInf;
    int leave_slot = -1;
    bool leave_to_upper = false;
    for (int k = 0; k < m_; ++k) {
      double coef = dir * w[k];
      int bk = basis_[k];
      double t;
      bool to_upper;
      if (coef > kPivotTol) {
        if (!std::isfinite(lb_[bk])) continue;
        t = (x_[bk] - lb_[bk]) / coef;
        to_upper = false;
      } else if (coef < -kPivotTol) {
        if (!std::isfinite(ub_[bk])) continue;
        t = (ub_[bk] - x_[bk]) / -coef;
        to_upper = true;
      } else {
        continue;
      }
      if (t < 0.0) t = 0.0;
      bool better;
      if (leave_slot < 0 || t < theta - 1e-12) {
        better = true;
      } else if (t <= theta + 1e-12) {
        // Tie: prefer the largest pivot magnitude for stability; under
        // Bland's rule prefer the smallest variable index.
        better = bland ? bk < basis_[leave_slot]
                       : std::abs(w[k]) > std::abs(w[leave_slot]);
      } else {
        better = false;
      }
      if (better) {
        theta = std::min(theta, t);
        leave_slot = k;
        leave_to_upper = to_upper;
      }
    }
    double flip_limit = kInf;
    if (std::isfinite(lb_[entering]) && std::isfinite(ub_[entering]))
      flip_limit = ub_[entering] - lb_[entering];
    bool flip = flip_limit <= theta;
    if (flip) theta = flip_limit;
    if (!std::isfinite(theta)) {
      res.status = phase1_ ? LpStatus::NumericalFailure : LpStatus::Unbounded;
      res.iterations = iter;
      return res;
    }

    degen_streak = theta <= kDegenTol ? degen_streak + 1 : 0;
    if (degen_streak > kBlandAfterDegen) bland = true;

    if (flip) {
      // Entering variable jumps to its other bound; basis unchanged.
      double delta = dir * theta;
      for (int k = 0; k < m_; ++k) x_[basis_[k]] -= delta * w[k];
      x_[entering] += delta;
      status_[entering] =
          status_[entering] == ColStatus::Lower ? ColStatus::Upper : ColStatus::Lower;
      continue;
    }

    // Pivot: basis_[leave_slot] leaves, entering becomes basic.
    int leaving = basis_[leave_slot];
    double delta = dir * theta;
    for (int k = 0; k < m_; ++k)
      if (k != leave_slot) x_[basis_[k]] -= delta * w[k];
    x_[entering] += delta;
    x_[leaving] = leave_to_upper ? ub_[leaving] : lb_[leaving];
    status_[leaving] = leave_to_upper ? ColStatus::Upper : ColStatus::Lower;
    if (lb_[leaving] == ub_[leaving]) status_[leaving] = ColStatus::Fixed;
    status_[entering] = ColStatus::Basic;
    basis_[leave_slot] = entering;
    basic_slot_[leaving] = -1;
    basic_slot_[entering] = leave_slot;

    double piv = w[leave_slot];
    if (std::abs(piv) < kPivotTol) {
      bool ok;
      refactorize(ok);
      if (!ok) {
        res.status = LpStatus::NumericalFailure;
        res.iterations = iter;
        return res;
      }
      since_refactor = 0;
      continue;
    }
    for (int i = 0; i < m_; ++i) {
      if (i == leave_slot) continue;
      double f = w[i] / piv;
      if (f == 0.0) continue;
      for (int k = 0; k < m_; ++k) binv_[i * m_ + k] -= f * binv_[leave_slot * m_ + k];
    }
    for (int k = 0; k < m_; ++k) binv_[leave_slot * m_ + k] /= piv;

    if (++since_refactor >= kRefactorEvery) {
      bool ok;
      refactorize(ok);
      if (!ok) {
        res.status = LpStatus::NumericalFailure;
        res.iterations = iter;
        return res;
      }
      since_refactor = 0;
    }
  }
}

}  // namespace flp
