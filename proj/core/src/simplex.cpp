#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "wcfair/error.hpp"
#include "wcfair/lp.hpp"

namespace wcfair {
namespace {

constexpr double kPrimalTol = 1e-9;
constexpr double kPivotTol = 1e-9;
constexpr double kSingularTol = 1e-11;
constexpr std::size_t kDegenerateRunLimit = 100;
constexpr std::size_t kMaxEtas = 64;
constexpr std::size_t kNone = static_cast<std::size_t>(-1);

// Dense LU with partial pivoting, PA = LU.
class DenseLu {
 public:
  void factor(std::vector<double> a, std::size_t m) {
    m_ = m;
    lu_ = std::move(a);
    perm_.resize(m);
    for (std::size_t i = 0; i < m; ++i) perm_[i] = i;
    for (std::size_t c = 0; c < m; ++c) {
      std::size_t piv = c;
      double best = std::abs(lu_[c * m + c]);
      for (std::size_t r = c + 1; r < m; ++r) {
        const double v = std::abs(lu_[r * m + c]);
        if (v > best) {
          best = v;
          piv = r;
        }
      }
      if (best < kSingularTol) throw InternalError("simplex basis is singular");
      if (piv != c) {
        std::swap_ranges(lu_.begin() + c * m, lu_.begin() + (c + 1) * m,
                         lu_.begin() + piv * m);
        std::swap(perm_[c], perm_[piv]);
      }
      const double inv = 1.0 / lu_[c * m + c];
      for (std::size_t r = c + 1; r < m; ++r) {
        double& f = lu_[r * m + c];
        if (f == 0.0) continue;
        f *= inv;
        const double* src = &lu_[c * m];
        double* dst = &lu_[r * m];
        for (std::size_t k = c + 1; k < m; ++k) dst[k] -= f * src[k];
      }
    }
  }

  // x <- A^{-1} x
  void solve(std::vector<double>& x) const {
    std::vector<double> w(m_);
    for (std::size_t i = 0; i < m_; ++i) w[i] = x[perm_[i]];
    for (std::size_t i = 0; i < m_; ++i) {
      double s = w[i];
      const double* row = &lu_[i * m_];
      for (std::size_t k = 0; k < i; ++k) s -= row[k] * w[k];
      w[i] = s;
    }
    for (std::size_t i = m_; i-- > 0;) {
      double s = w[i];
      const double* row = &lu_[i * m_];
      for (std::size_t k = i + 1; k < m_; ++k) s -= row[k] * w[k];
      w[i] = s / row[i];
    }
    x = std::move(w);
  }

  // y <- A^{-T} y
  void solve_transposed(std::vector<double>& y) const {
    std::vector<double> w = y;
    for (std::size_t i = 0; i < m_; ++i) {
      const double v = w[i] / lu_[i * m_ + i];
      w[i] = v;
      if (v == 0.0) continue;
      const double* row = &lu_[i * m_];
      for (std::size_t k = i + 1; k < m_; ++k) w[k] -= row[k] * v;
    }
    for (std::size_t i = m_; i-- > 0;) {
      const double v = w[i];
      if (v == 0.0) continue;
      const double* row = &lu_[i * m_];
      for (std::size_t k = 0; k < i; ++k) w[k] -= row[k] * v;
    }
    for (std::size_t i = 0; i < m_; ++i) y[perm_[i]] = w[i];
  }

 private:
  std::size_t m_ = 0;
  std::vector<double> lu_;
  std::vector<std::size_t> perm_;
};

enum class State : std::uint8_t { kLower, kUpper, kFree, kBasic, kKey };

class Simplex {
 public:
  Simplex(const LPModel& model, const SolverOptions& options)
      : model_(model), options_(options) {
    setup();
  }

  LPResult run() {
    LPResult result;
    bool need_phase1 = false;
    for (std::size_t r = 0; r < m_; ++r) {
      if (upper_[art(r)] > 0.0) need_phase1 = true;
    }
    if (need_phase1) {
      cost_.assign(total_, 0.0);
      for (std::size_t r = 0; r < m_; ++r) cost_[art(r)] = 1.0;
      const SolverStatus s = iterate(result.iterations);
      if (s == SolverStatus::kIterationLimit) return finish(s, result);
      double infeas = 0.0;
      for (std::size_t r = 0; r < m_; ++r) infeas += value_[art(r)];
      if (infeas > 1e-6) return finish(SolverStatus::kInfeasible, result);
      for (std::size_t r = 0; r < m_; ++r) {
        upper_[art(r)] = 0.0;
        if (state_[art(r)] != State::kBasic) {
          state_[art(r)] = State::kLower;
          value_[art(r)] = 0.0;
        }
      }
      refactor();
    }
    cost_.assign(total_, 0.0);
    std::copy(model_.objective.begin(), model_.objective.end(), cost_.begin());
    return finish(iterate(result.iterations), result);
  }

 private:
  std::size_t slack(std::size_t r) const { return nvars_ + r; }
  std::size_t art(std::size_t r) const { return nvars_ + m_ + r; }

  void setup() {
    nvars_ = model_.num_variables();
    if (model_.lower.size() != nvars_ || model_.upper.size() != nvars_) {
      throw UsageError("LP bound vectors do not match the variable count");
    }
    for (std::size_t j = 0; j < nvars_; ++j) {
      if (model_.lower[j] > model_.upper[j]) {
        throw UsageError("variable " + model_.names[j] + " has empty bounds");
      }
    }

    // Detect implicit convexity rows.
    set_of_.assign(nvars_, kNone);
    std::vector<bool> is_gub(model_.rows.size(), false);
    for (std::size_t r = 0; r < model_.rows.size(); ++r) {
      const LinearRow& row = model_.rows[r];
      if (row.index.size() != row.value.size()) {
        throw UsageError("LP row " + std::to_string(r) + " is malformed");
      }
      for (const std::size_t j : row.index) {
        if (j >= nvars_) throw UsageError("LP row refers to a missing variable");
      }
      if (row.sense != RowSense::kEqual || row.rhs != 1.0 || row.index.empty()) {
        continue;
      }
      bool ok = true;
      for (std::size_t e = 0; e < row.index.size() && ok; ++e) {
        const std::size_t j = row.index[e];
        ok = row.value[e] == 1.0 && set_of_[j] == kNone &&
             model_.lower[j] == 0.0 && model_.upper[j] >= 1.0;
        for (std::size_t f = 0; f < e && ok; ++f) ok = row.index[f] != j;
      }
      if (!ok) continue;
      const std::size_t g = members_.size();
      members_.push_back(row.index);
      for (const std::size_t j : row.index) set_of_[j] = g;
      is_gub[r] = true;
    }
    num_sets_ = members_.size();

    // Coupling rows.
    std::vector<std::size_t> coupling;
    for (std::size_t r = 0; r < model_.rows.size(); ++r) {
      if (!is_gub[r]) coupling.push_back(r);
    }
    m_ = coupling.size();
    total_ = nvars_ + 2 * m_;
    set_of_.resize(total_, kNone);

    std::vector<std::vector<std::pair<std::size_t, double>>> cols(total_);
    rhs_.assign(m_, 0.0);
    for (std::size_t c = 0; c < m_; ++c) {
      const LinearRow& row = model_.rows[coupling[c]];
      rhs_[c] = row.rhs;
      for (std::size_t e = 0; e < row.index.size(); ++e) {
        if (row.value[e] != 0.0) cols[row.index[e]].emplace_back(c, row.value[e]);
      }
    }

    lower_.assign(total_, 0.0);
    upper_.assign(total_, 0.0);
    std::copy(model_.lower.begin(), model_.lower.end(), lower_.begin());
    std::copy(model_.upper.begin(), model_.upper.end(), upper_.begin());
    for (std::size_t c = 0; c < m_; ++c) {
      switch (model_.rows[coupling[c]].sense) {
        case RowSense::kLessEqual:
          upper_[slack(c)] = kInfinity;
          break;
        case RowSense::kGreaterEqual:
          lower_[slack(c)] = -kInfinity;
          break;
        case RowSense::kEqual:
          break;
      }
      cols[slack(c)].emplace_back(c, 1.0);
    }

    // Starting point: nonbasic variables at a finite bound (or 0), one key
    // per set.
    value_.assign(total_, 0.0);
    state_.assign(total_, State::kLower);
    for (std::size_t j = 0; j < nvars_; ++j) {
      if (std::isfinite(lower_[j])) {
        value_[j] = lower_[j];
        state_[j] = State::kLower;
      } else if (std::isfinite(upper_[j])) {
        value_[j] = upper_[j];
        state_[j] = State::kUpper;
      } else {
        state_[j] = State::kFree;
      }
    }
    key_.assign(num_sets_, kNone);
    for (const std::size_t j : model_.start_hint) {
      if (j < nvars_ && set_of_[j] != kNone && key_[set_of_[j]] == kNone) {
        key_[set_of_[j]] = j;
      }
    }
    for (std::size_t g = 0; g < num_sets_; ++g) {
      if (key_[g] != kNone) continue;
      std::size_t best = members_[g].front();
      for (const std::size_t j : members_[g]) {
        if (model_.objective[j] < model_.objective[best]) best = j;
      }
      key_[g] = best;
    }
    for (std::size_t g = 0; g < num_sets_; ++g) {
      state_[key_[g]] = State::kKey;
      value_[key_[g]] = 1.0;
    }

    std::vector<double> residual = rhs_;
    for (std::size_t j = 0; j < nvars_; ++j) {
      if (value_[j] == 0.0) continue;
      for (const auto& [r, v] : cols[j]) residual[r] -= v * value_[j];
    }
    basis_.assign(m_, kNone);
    for (std::size_t c = 0; c < m_; ++c) {
      const double res = residual[c];
      if (res >= lower_[slack(c)] && res <= upper_[slack(c)]) {
        basis_[c] = slack(c);
        value_[slack(c)] = res;
        state_[slack(c)] = State::kBasic;
        cols[art(c)].emplace_back(c, 1.0);
        upper_[art(c)] = 0.0;
      } else {
        state_[slack(c)] = State::kLower;
        if (!std::isfinite(lower_[slack(c)])) state_[slack(c)] = State::kUpper;
        basis_[c] = art(c);
        value_[art(c)] = std::abs(res);
        state_[art(c)] = State::kBasic;
        cols[art(c)].emplace_back(c, res > 0.0 ? 1.0 : -1.0);
        upper_[art(c)] = kInfinity;
      }
    }

    col_start_.assign(total_ + 1, 0);
    for (std::size_t j = 0; j < total_; ++j) {
      col_start_[j + 1] = col_start_[j] + cols[j].size();
    }
    col_row_.resize(col_start_.back());
    col_val_.resize(col_start_.back());
    for (std::size_t j = 0; j < total_; ++j) {
      std::size_t at = col_start_[j];
      for (const auto& [r, v] : cols[j]) {
        col_row_[at] = r;
        col_val_[at] = v;
        ++at;
      }
    }

    const double tol = options_.tolerance;
    dual_tol_ = std::max(1e-13, tol / (1.0 + static_cast<double>(num_sets_)));
    refactor();
  }

  // Transformed column: a_j minus the key column of its set.
  void add_column(std::size_t j, double scale, std::vector<double>& out) const {
    for (std::size_t e = col_start_[j]; e < col_start_[j + 1]; ++e) {
      out[col_row_[e]] += scale * col_val_[e];
    }
  }
  void transformed_column(std::size_t j, std::vector<double>& out) const {
    std::fill(out.begin(), out.end(), 0.0);
    add_column(j, 1.0, out);
    if (set_of_[j] != kNone) add_column(key_[set_of_[j]], -1.0, out);
  }
  double dot_column(std::size_t j, const std::vector<double>& y) const {
    double s = 0.0;
    for (std::size_t e = col_start_[j]; e < col_start_[j + 1]; ++e) {
      s += y[col_row_[e]] * col_val_[e];
    }
    return s;
  }

  void refactor() {
    etas_.clear();
    pos_.assign(total_, kNone);
    for (std::size_t p = 0; p < m_; ++p) pos_[basis_[p]] = p;
    if (m_ > 0) {
      std::vector<double> dense(m_ * m_, 0.0);
      std::vector<double> col(m_);
      for (std::size_t p = 0; p < m_; ++p) {
        transformed_column(basis_[p], col);
        for (std::size_t r = 0; r < m_; ++r) dense[r * m_ + p] = col[r];
      }
      lu_.factor(std::move(dense), m_);
    }
    recompute_values();
  }

  void ftran(std::vector<double>& x) const {
    if (m_ == 0) return;
    lu_.solve(x);
    for (const Eta& eta : etas_) {
      const double xp = x[eta.pos] / eta.col[eta.pos];
      if (xp != 0.0) {
        for (std::size_t i = 0; i < m_; ++i) x[i] -= eta.col[i] * xp;
      }
      x[eta.pos] = xp;
    }
  }

  void btran(std::vector<double>& y) const {
    if (m_ == 0) return;
    for (auto it = etas_.rbegin(); it != etas_.rend(); ++it) {
      double s = y[it->pos];
      for (std::size_t i = 0; i < m_; ++i) {
        if (i != it->pos) s -= it->col[i] * y[i];
      }
      y[it->pos] = s / it->col[it->pos];
    }
    lu_.solve_transposed(y);
  }

  void recompute_values() {
    std::vector<double> rhs = rhs_;
    std::vector<double> free_mass(num_sets_, 1.0);
    for (std::size_t j = 0; j < total_; ++j) {
      if (state_[j] == State::kBasic || state_[j] == State::kKey) continue;
      if (set_of_[j] != kNone) free_mass[set_of_[j]] -= value_[j];
      if (value_[j] != 0.0) add_column(j, -value_[j], rhs);
    }
    for (std::size_t g = 0; g < num_sets_; ++g) {
      add_column(key_[g], -free_mass[g], rhs);
    }
    ftran(rhs);
    for (std::size_t p = 0; p < m_; ++p) {
      value_[basis_[p]] = rhs[p];
      if (set_of_[basis_[p]] != kNone) free_mass[set_of_[basis_[p]]] -= rhs[p];
    }
    for (std::size_t g = 0; g < num_sets_; ++g) value_[key_[g]] = free_mass[g];
  }

  SolverStatus iterate(std::size_t& iterations) {
    std::vector<double> y(m_);
    std::vector<double> alpha(m_);
    std::vector<double> key_rate(num_sets_, 0.0);
    std::vector<std::size_t> touched;
    std::vector<bool> is_touched(num_sets_, false);
    std::vector<double> key_price(num_sets_);
    std::size_t degenerate_run = 0;
    bool bland = false;

    while (true) {
      if (iterations >= options_.max_iterations) {
        return SolverStatus::kIterationLimit;
      }
      // Duals.
      for (std::size_t p = 0; p < m_; ++p) {
        const std::size_t j = basis_[p];
        y[p] = cost_[j] - (set_of_[j] != kNone ? cost_[key_[set_of_[j]]] : 0.0);
      }
      btran(y);
      for (std::size_t g = 0; g < num_sets_; ++g) {
        key_price[g] = cost_[key_[g]] - dot_column(key_[g], y);
      }

      // Pricing.
      std::size_t q = kNone;
      double best = 0.0;
      double dir = 0.0;
      for (std::size_t j = 0; j < total_; ++j) {
        const State s = state_[j];
        if (s == State::kBasic || s == State::kKey) continue;
        if (lower_[j] == upper_[j]) continue;
        double d = cost_[j] - dot_column(j, y);
        if (set_of_[j] != kNone) d -= key_price[set_of_[j]];
        double gain = 0.0;
        double dj = 0.0;
        if ((s == State::kLower || s == State::kFree) && d < -dual_tol_) {
          gain = -d;
          dj = 1.0;
        } else if ((s == State::kUpper || s == State::kFree) && d > dual_tol_) {
          gain = d;
          dj = -1.0;
        }
        if (gain == 0.0) continue;
        if (bland) {
          q = j;
          dir = dj;
          break;
        }
        if (gain > best) {
          best = gain;
          q = j;
          dir = dj;
        }
      }
      if (q == kNone) return SolverStatus::kOptimal;

      // Ratio test.
      transformed_column(q, alpha);
      ftran(alpha);
      for (const std::size_t g : touched) {
        key_rate[g] = 0.0;
        is_touched[g] = false;
      }
      touched.clear();
      auto touch = [&](std::size_t g) {
        if (!is_touched[g]) {
          is_touched[g] = true;
          touched.push_back(g);
        }
      };
      if (set_of_[q] != kNone) {
        touch(set_of_[q]);
        key_rate[set_of_[q]] = -dir;
      }
      for (std::size_t p = 0; p < m_; ++p) {
        const std::size_t g = set_of_[basis_[p]];
        if (g == kNone || alpha[p] == 0.0) continue;
        touch(g);
        key_rate[g] += dir * alpha[p];
      }

      // Candidates: working rows (index p), keys (m_ + g), bound flip.
      struct Candidate {
        std::size_t slot;
        double rate;
        double ratio;
      };
      std::vector<Candidate> cands;
      auto consider = [&](std::size_t slot, std::size_t var, double rate) {
        if (std::abs(rate) < kPivotTol) return;
        double room;
        if (rate < 0.0) {
          if (!std::isfinite(lower_[var])) return;
          room = value_[var] - lower_[var];
        } else {
          if (!std::isfinite(upper_[var]) || state_[var] == State::kKey) return;
          room = upper_[var] - value_[var];
        }
        cands.push_back({slot, rate, std::max(0.0, room) / std::abs(rate)});
      };
      for (std::size_t p = 0; p < m_; ++p) {
        consider(p, basis_[p], -dir * alpha[p]);
      }
      for (const std::size_t g : touched) consider(m_ + g, key_[g], key_rate[g]);
      const double flip = upper_[q] - lower_[q];

      std::size_t leave = kNone;
      double theta = flip;
      if (bland) {
        double min_ratio = kInfinity;
        for (const auto& c : cands) min_ratio = std::min(min_ratio, c.ratio);
        if (min_ratio < flip) {
          std::size_t best_var = kNone;
          for (const auto& c : cands) {
            if (c.ratio > min_ratio + 1e-15) continue;
            const std::size_t var = slot_var(c.slot);
            if (best_var == kNone || var < best_var) {
              best_var = var;
              leave = c.slot;
              theta = c.ratio;
            }
          }
        }
      } else {
        // Harris two-pass: bound the step with relaxed bounds, then take the
        // largest pivot among the rows that block within it.
        double relaxed = kInfinity;
        for (const auto& c : cands) {
          relaxed = std::min(relaxed,
                             c.ratio + kPrimalTol / std::abs(c.rate));
        }
        if (flip > relaxed) {
          double biggest = 0.0;
          for (const auto& c : cands) {
            if (c.ratio <= relaxed && std::abs(c.rate) > biggest) {
              biggest = std::abs(c.rate);
              leave = c.slot;
              theta = c.ratio;
            }
          }
        }
      }
      if (!std::isfinite(theta)) return SolverStatus::kUnbounded;

      ++iterations;
      if (theta < 1e-12) {
        if (++degenerate_run >= kDegenerateRunLimit) bland = true;
      } else {
        degenerate_run = 0;
        bland = false;
      }

      // Move.
      if (theta > 0.0) {
        value_[q] += dir * theta;
        for (std::size_t p = 0; p < m_; ++p) {
          value_[basis_[p]] -= dir * theta * alpha[p];
        }
        for (const std::size_t g : touched) {
          value_[key_[g]] += theta * key_rate[g];
        }
      }

      if (leave == kNone) {
        state_[q] = dir > 0.0 ? State::kUpper : State::kLower;
        value_[q] = dir > 0.0 ? upper_[q] : lower_[q];
        continue;
      }

      const std::size_t out = slot_var(leave);
      const bool to_lower = [&] {
        for (const auto& c : cands) {
          if (c.slot == leave) return c.rate < 0.0;
        }
        return true;
      }();
      state_[out] = to_lower ? State::kLower : State::kUpper;
      value_[out] = to_lower ? lower_[out] : upper_[out];

      if (leave < m_) {
        basis_[leave] = q;
        pos_[out] = kNone;
        pos_[q] = leave;
        state_[q] = State::kBasic;
        if (etas_.size() >= kMaxEtas) {
          refactor();
        } else {
          etas_.push_back({leave, alpha});
        }
        continue;
      }

      const std::size_t g = leave - m_;
      bool working_members = false;
      for (std::size_t p = 0; p < m_ && !working_members; ++p) {
        working_members = set_of_[basis_[p]] == g;
      }
      if (set_of_[q] == g) {
        key_[g] = q;
        state_[q] = State::kKey;
        if (working_members) refactor();
        continue;
      }
      // Another basic member of the set becomes its key; q takes its row.
      std::size_t s_pos = kNone;
      double biggest = -1.0;
      for (std::size_t p = 0; p < m_; ++p) {
        if (set_of_[basis_[p]] == g && std::abs(alpha[p]) > biggest) {
          biggest = std::abs(alpha[p]);
          s_pos = p;
        }
      }
      if (s_pos == kNone) throw InternalError("simplex lost a set key");
      const std::size_t s = basis_[s_pos];
      key_[g] = s;
      state_[s] = State::kKey;
      basis_[s_pos] = q;
      state_[q] = State::kBasic;
      refactor();
    }
  }

  std::size_t slot_var(std::size_t slot) const {
    return slot < m_ ? basis_[slot] : key_[slot - m_];
  }

  LPResult finish(SolverStatus status, LPResult& result) {
    if (status == SolverStatus::kOptimal) refactor();
    result.status = status;
    result.values.assign(value_.begin(), value_.begin() + nvars_);
    for (std::size_t j = 0; j < nvars_; ++j) {
      double& v = result.values[j];
      v = std::clamp(v, model_.lower[j], model_.upper[j]);
    }
    result.objective = evaluate_objective(model_, result.values);
    return result;
  }

  struct Eta {
    std::size_t pos;
    std::vector<double> col;
  };

  const LPModel& model_;
  SolverOptions options_;
  std::size_t nvars_ = 0;
  std::size_t m_ = 0;
  std::size_t total_ = 0;
  std::size_t num_sets_ = 0;
  double dual_tol_ = 1e-9;

  std::vector<std::size_t> col_start_;
  std::vector<std::size_t> col_row_;
  std::vector<double> col_val_;
  std::vector<double> rhs_;
  std::vector<double> lower_;
  std::vector<double> upper_;
  std::vector<double> cost_;

  std::vector<std::size_t> set_of_;
  std::vector<std::vector<std::size_t>> members_;
  std::vector<std::size_t> key_;

  std::vector<double> value_;
  std::vector<State> state_;
  std::vector<std::size_t> basis_;
  std::vector<std::size_t> pos_;
  DenseLu lu_;
  std::vector<Eta> etas_;
};

}  // namespace

LPResult SimplexSolver::solve(const LPModel& model,
                              const SolverOptions& options) const {
  Simplex simplex(model, options);
  return simplex.run();
}

}  // namespace wcfair
