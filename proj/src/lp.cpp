// Copyright 2026 The bellkit Authors

// Licensed under the Apache License, Version 2.0 (the License);
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

// http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an AS IS BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#include "bellkit/lp.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "bellkit/error.hpp"

namespace bellkit::lp {

namespace {

class Tableau {
  public:
    Tableau(int rows, int cols)
        : rows_(rows), cols_(cols),
          data_(static_cast<std::size_t>(rows + 1) * (cols + 1), 0.0),
          basis_(static_cast<std::size_t>(rows), -1) {}

    double &at(int r, int c) { return data_[index(r, c)]; }
    double at(int r, int c) const { return data_[index(r, c)]; }
    double &rhs(int r) { return at(r, cols_); }
    double &cost(int c) { return at(rows_, c); }
    double objective_value() const { return at(rows_, cols_); }

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    std::vector<int> &basis() { return basis_; }

    void pivot(int pr, int pc) {
        const double inv = 1.0 / at(pr, pc);
        for (int c = 0; c <= cols_; ++c) {
            at(pr, c) *= inv;
        }
        at(pr, pc) = 1.0;
        for (int r = 0; r <= rows_; ++r) {
            if (r == pr) {
                continue;
            }
            const double f = at(r, pc);
            if (f == 0.0) {
                continue;
            }
            for (int c = 0; c <= cols_; ++c) {
                at(r, c) -= f * at(pr, c);
            }
            at(r, pc) = 0.0;
        }
        basis_[pr] = pc;
    }

    /// Installs the reduced-cost row for maximizing `costs` over the
    /// current basis.
    void price(const std::vector<double> &costs) {
        for (int c = 0; c <= cols_; ++c) {
            cost(c) = c < cols_ ? -costs[c] : 0.0;
        }
        for (int r = 0; r < rows_; ++r) {
            const double cb = costs[basis_[r]];
            if (cb == 0.0) {
                continue;
            }
            for (int c = 0; c <= cols_; ++c) {
                at(rows_, c) += cb * at(r, c);
            }
        }
    }

  private:
    std::size_t index(int r, int c) const {
        return static_cast<std::size_t>(r) * (cols_ + 1) + c;
    }

    int rows_;
    int cols_;
    std::vector<double> data_;
    std::vector<int> basis_;
};

/// Primal simplex on the installed cost row; Bland's rule on entering and
/// leaving variables.
void iterate(Tableau &t, const std::vector<bool> &may_enter,
             const Options &options, int &pivots) {
    for (;;) {
        int enter = -1;
        for (int c = 0; c < t.cols(); ++c) {
            if (may_enter[c] && t.cost(c) < -options.pivot_tolerance) {
                enter = c;
                break;
            }
        }
        if (enter < 0) {
            return;
        }
        int leave = -1;
        double best_ratio = std::numeric_limits<double>::infinity();
        for (int r = 0; r < t.rows(); ++r) {
            const double a = t.at(r, enter);
            if (a <= options.pivot_tolerance) {
                continue;
            }
            const double ratio = t.rhs(r) / a;
            if (ratio < best_ratio - 1e-12 ||
                (std::abs(ratio - best_ratio) <= 1e-12 &&
                 t.basis()[r] < t.basis()[leave])) {
                best_ratio = ratio;
                leave = r;
            }
        }
        if (leave < 0) {
            throw UnboundedError("linear program is unbounded");
        }
        t.pivot(leave, enter);
        if (++pivots > options.max_pivots) {
            throw NumericalError("simplex pivot limit exceeded");
        }
    }
}

} // namespace

Solution solve(const LinearProgram &program, const Options &options) {
    const int n = program.num_vars;
    const int m = static_cast<int>(program.constraints.size());
    if (static_cast<int>(program.objective.size()) != n) {
        throw InputError("objective length does not match num_vars");
    }

    // Column layout: [original | slack/surplus | artificial].
    std::vector<double> flip(static_cast<std::size_t>(m), 1.0);
    std::vector<Sense> sense(static_cast<std::size_t>(m));
    int n_slack = 0;
    int n_art = 0;
    for (int r = 0; r < m; ++r) {
        const auto &con = program.constraints[r];
        if (static_cast<int>(con.coeffs.size()) != n) {
            throw InputError("constraint " + std::to_string(r) +
                             " has the wrong number of coefficients");
        }
        sense[r] = con.sense;
        if (con.rhs < 0.0) {
            flip[r] = -1.0;
            if (con.sense == Sense::LessEqual) {
                sense[r] = Sense::GreaterEqual;
            } else if (con.sense == Sense::GreaterEqual) {
                sense[r] = Sense::LessEqual;
            }
        }
        if (sense[r] != Sense::Equal) {
            ++n_slack;
        }
        if (sense[r] != Sense::LessEqual) {
            ++n_art;
        }
    }
    const int cols = n + n_slack + n_art;
    Tableau t(m, cols);
    std::vector<bool> is_art(static_cast<std::size_t>(cols), false);
    // Column that started as the unit vector of row r.
    std::vector<int> unit_col(static_cast<std::size_t>(m));

    int next_slack = n;
    int next_art = n + n_slack;
    for (int r = 0; r < m; ++r) {
        const auto &con = program.constraints[r];
        for (int c = 0; c < n; ++c) {
            t.at(r, c) = flip[r] * con.coeffs[c];
        }
        t.rhs(r) = flip[r] * con.rhs;
        switch (sense[r]) {
        case Sense::LessEqual:
            t.at(r, next_slack) = 1.0;
            t.basis()[r] = next_slack;
            unit_col[r] = next_slack++;
            break;
        case Sense::GreaterEqual:
            t.at(r, next_slack++) = -1.0;
            [[fallthrough]];
        case Sense::Equal:
            t.at(r, next_art) = 1.0;
            is_art[next_art] = true;
            t.basis()[r] = next_art;
            unit_col[r] = next_art++;
            break;
        }
    }

    int pivots = 0;
    std::vector<bool> may_enter(static_cast<std::size_t>(cols), true);
    if (n_art > 0) {
        std::vector<double> phase1(static_cast<std::size_t>(cols), 0.0);
        for (int c = 0; c < cols; ++c) {
            if (is_art[c]) {
                phase1[c] = -1.0;
            }
        }
        t.price(phase1);
        iterate(t, may_enter, options, pivots);
        if (t.objective_value() < -options.feasibility_tolerance) {
            throw InfeasibleError("linear program is infeasible (residual " +
                                  std::to_string(-t.objective_value()) + ")");
        }
        // Drive zero-valued artificials out of the basis where possible;
        // rows with no usable pivot are redundant and stay inert.
        for (int r = 0; r < m; ++r) {
            if (!is_art[t.basis()[r]]) {
                continue;
            }
            for (int c = 0; c < n + n_slack; ++c) {
                if (std::abs(t.at(r, c)) > 1e-9) {
                    t.pivot(r, c);
                    ++pivots;
                    break;
                }
            }
        }
        for (int c = 0; c < cols; ++c) {
            may_enter[c] = !is_art[c];
        }
    }

    std::vector<double> costs(static_cast<std::size_t>(cols), 0.0);
    for (int c = 0; c < n; ++c) {
        costs[c] = program.objective[c];
    }
    t.price(costs);
    iterate(t, may_enter, options, pivots);

    Solution sol;
    sol.pivots = pivots;
    sol.value = t.objective_value();
    sol.x.assign(static_cast<std::size_t>(n), 0.0);
    for (int r = 0; r < m; ++r) {
        const int b = t.basis()[r];
        if (b < n) {
            sol.x[b] = std::max(0.0, t.rhs(r));
        }
    }
    // Reduced cost of an (originally zero-cost) unit column equals the dual
    // of its row in the standardized problem.
    sol.duals.resize(static_cast<std::size_t>(m));
    for (int r = 0; r < m; ++r) {
        sol.duals[r] = flip[r] * t.cost(unit_col[r]);
    }
    return sol;
}

} // namespace bellkit::lp
