#include "plauset/simplex_lp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace plauset::lp {

const char* to_string(Status status) {
    switch (status) {
    case Status::optimal: return "optimal";
    case Status::infeasible: return "infeasible";
    case Status::unbounded: return "unbounded";
    case Status::iteration_limit: return "iteration limit";
    }
    return "unknown";
}

void LinearProgram::add_constraint(Terms terms, Relation relation, double rhs) {
    for (const auto& [var, coef] : terms) {
        (void)coef;
        if (var >= num_variables()) throw std::out_of_range("constraint refers to an unknown variable");
    }
    constraints_.push_back({std::move(terms), relation, rhs});
}

namespace {

class Tableau {
public:
    Tableau(const LinearProgram& program, const SolverOptions& options) : opt_(options) {
        n_ = program.num_variables();
        m_ = program.constraints().size();

        std::size_t extra = 0;
        std::vector<Relation> rel(m_);
        std::vector<double> sign(m_, 1.0);
        for (std::size_t i = 0; i < m_; ++i) {
            const auto& c = program.constraints()[i];
            rel[i] = c.relation;
            if (c.rhs < 0.0) {
                sign[i] = -1.0;
                if (rel[i] == Relation::less_equal) rel[i] = Relation::greater_equal;
                else if (rel[i] == Relation::greater_equal) rel[i] = Relation::less_equal;
            }
            extra += rel[i] == Relation::greater_equal ? 2 : 1;
        }
        cols_ = n_ + extra;
        width_ = cols_ + 1;
        t_.assign(m_ * width_, 0.0);
        basis_.assign(m_, 0);
        artificial_.assign(cols_, false);

        std::size_t next = n_;
        for (std::size_t i = 0; i < m_; ++i) {
            const auto& c = program.constraints()[i];
            for (const auto& [var, coef] : c.terms) at(i, var) += sign[i] * coef;
            at(i, cols_) = sign[i] * c.rhs;
            switch (rel[i]) {
            case Relation::less_equal:
                at(i, next) = 1.0;
                basis_[i] = next++;
                break;
            case Relation::greater_equal:
                at(i, next++) = -1.0;
                at(i, next) = 1.0;
                artificial_[next] = true;
                basis_[i] = next++;
                break;
            case Relation::equal:
                at(i, next) = 1.0;
                artificial_[next] = true;
                basis_[i] = next++;
                break;
            }
        }
    }

    Result run(const std::vector<double>& objective) {
        Result result;
        result.x.assign(n_, 0.0);

        // phase 1: minimize the sum of artificial variables
        std::vector<double> cost(cols_, 0.0);
        bool any_artificial = false;
        for (std::size_t j = 0; j < cols_; ++j)
            if (artificial_[j]) {
                cost[j] = 1.0;
                any_artificial = true;
            }
        if (any_artificial) {
            const Status s = iterate(cost, false);
            result.pivots = pivots_;
            if (s == Status::iteration_limit) {
                result.status = s;
                return result;
            }
            if (-reduced_[cols_] > opt_.feasibility_tolerance * std::max(1.0, rhs_scale())) {
                result.status = Status::infeasible;
                return result;
            }
            drive_out_artificials();
        }

        std::fill(cost.begin(), cost.end(), 0.0);
        std::copy(objective.begin(), objective.end(), cost.begin());
        const Status s = iterate(cost, true);
        result.pivots = pivots_;
        result.status = s;
        if (s != Status::optimal) return result;

        for (std::size_t i = 0; i < m_; ++i)
            if (basis_[i] < n_) result.x[basis_[i]] = std::max(0.0, at(i, cols_));
        result.objective = 0.0;
        for (std::size_t j = 0; j < n_; ++j) result.objective += objective[j] * result.x[j];
        return result;
    }

private:
    double& at(std::size_t i, std::size_t j) { return t_[i * width_ + j]; }
    double at(std::size_t i, std::size_t j) const { return t_[i * width_ + j]; }

    double rhs_scale() const {
        double s = 0.0;
        for (std::size_t i = 0; i < m_; ++i) s = std::max(s, std::abs(at(i, cols_)));
        return s;
    }

    void price(const std::vector<double>& cost) {
        reduced_.assign(width_, 0.0);
        for (std::size_t j = 0; j < cols_; ++j) reduced_[j] = cost[j];
        for (std::size_t i = 0; i < m_; ++i) {
            const double cb = cost[basis_[i]];
            if (cb == 0.0) continue;
            for (std::size_t j = 0; j < width_; ++j) reduced_[j] -= cb * at(i, j);
        }
    }

    void pivot(std::size_t r, std::size_t c) {
        const double inv = 1.0 / at(r, c);
        double* row = &t_[r * width_];
        for (std::size_t j = 0; j < width_; ++j) row[j] *= inv;
        row[c] = 1.0;
        for (std::size_t i = 0; i < m_; ++i) {
            if (i == r) continue;
            double* other = &t_[i * width_];
            const double f = other[c];
            if (f == 0.0) continue;
            for (std::size_t j = 0; j < width_; ++j) other[j] -= f * row[j];
            other[c] = 0.0;
        }
        const double f = reduced_[c];
        if (f != 0.0) {
            for (std::size_t j = 0; j < width_; ++j) reduced_[j] -= f * row[j];
            reduced_[c] = 0.0;
        }
        basis_[r] = c;
        ++pivots_;
    }

    Status iterate(const std::vector<double>& cost, bool exclude_artificial) {
        price(cost);
        std::size_t degenerate = 0;
        while (true) {
            if (pivots_ >= opt_.max_pivots) return Status::iteration_limit;
            const bool bland = degenerate >= opt_.degenerate_switch;

            std::size_t enter = cols_;
            double most_negative = -opt_.cost_tolerance;
            for (std::size_t j = 0; j < cols_; ++j) {
                if (exclude_artificial && artificial_[j]) continue;
                if (reduced_[j] < most_negative) {
                    enter = j;
                    if (bland) break;
                    most_negative = reduced_[j];
                }
            }
            if (enter == cols_) return Status::optimal;

            std::size_t leave = m_;
            double best_ratio = std::numeric_limits<double>::infinity();
            for (std::size_t i = 0; i < m_; ++i) {
                const double a = at(i, enter);
                if (a <= opt_.pivot_tolerance) continue;
                const double ratio = std::max(0.0, at(i, cols_)) / a;
                if (ratio < best_ratio - 1e-12 ||
                    (ratio <= best_ratio + 1e-12 && leave < m_ && basis_[i] < basis_[leave])) {
                    best_ratio = std::min(ratio, best_ratio);
                    leave = i;
                }
            }
            if (leave == m_) return Status::unbounded;
            degenerate = best_ratio <= 1e-12 ? degenerate + 1 : 0;
            pivot(leave, enter);
        }
    }

    void drive_out_artificials() {
        for (std::size_t i = 0; i < m_;) {
            if (!artificial_[basis_[i]]) {
                ++i;
                continue;
            }
            std::size_t best = cols_;
            double best_abs = opt_.pivot_tolerance;
            for (std::size_t j = 0; j < cols_; ++j) {
                if (artificial_[j]) continue;
                if (std::abs(at(i, j)) > best_abs) {
                    best_abs = std::abs(at(i, j));
                    best = j;
                }
            }
            if (best < cols_) {
                pivot(i, best);
                ++i;
            } else {
                // redundant row
                t_.erase(t_.begin() + static_cast<std::ptrdiff_t>(i * width_),
                         t_.begin() + static_cast<std::ptrdiff_t>((i + 1) * width_));
                basis_.erase(basis_.begin() + static_cast<std::ptrdiff_t>(i));
                --m_;
            }
        }
    }

    SolverOptions opt_;
    std::size_t n_ = 0, m_ = 0, cols_ = 0, width_ = 0;
    std::vector<double> t_;
    std::vector<double> reduced_;
    std::vector<std::size_t> basis_;
    std::vector<bool> artificial_;
    std::size_t pivots_ = 0;
};

}  // namespace

Result solve(const LinearProgram& program, const SolverOptions& options) {
    Tableau tableau(program, options);
    return tableau.run(program.objective());
}

}  // namespace plauset::lp
