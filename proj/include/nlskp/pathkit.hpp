#pragma once

#include <Eigen/Dense>

#include <iosfwd>
#include <optional>
#include <string>

namespace nlskp {

using Vector = Eigen::VectorXd;
using Index = Eigen::Index;

/// Strictly increasing finite sample instants starting at the origin.
class TimeGrid {
public:
    TimeGrid();  // single instant {0}
    explicit TimeGrid(Vector times);

    /// n equally spaced instants on [0, horizon]; n == 1 gives {0}.
    static TimeGrid uniform(Index n, double horizon);

    Index size() const { return times_.size(); }
    double operator[](Index i) const { return times_[i]; }
    const Vector& times() const { return times_; }
    double horizon() const { return times_[times_.size() - 1]; }

    /// Index of an exact grid instant, if present.
    std::optional<Index> find(double t) const;
    /// Largest i with t_i <= t. Throws DomainError for t < 0.
    Index locate(double t) const;

    friend bool operator==(const TimeGrid& a, const TimeGrid& b) {
        return a.times_.size() == b.times_.size() && a.times_ == b.times_;
    }

private:
    Vector times_;
};

/// Right-continuous step path: values[i] on [t_i, t_{i+1}), values[n-1] on [t_{n-1}, inf).
class CadlagPath {
public:
    CadlagPath() : values_(Vector::Zero(1)) {}
    CadlagPath(TimeGrid grid, Vector values);

    static CadlagPath constant(double value) { return CadlagPath(TimeGrid(), Vector::Constant(1, value)); }
    static CadlagPath constant(const TimeGrid& grid, double value) {
        return CadlagPath(grid, Vector::Constant(grid.size(), value));
    }

    const TimeGrid& grid() const { return grid_; }
    const Vector& values() const { return values_; }
    Index size() const { return values_.size(); }
    double operator[](Index i) const { return values_[i]; }
    double time(Index i) const { return grid_[i]; }

    /// Same grid, new values (must match in length).
    CadlagPath with_values(Vector values) const { return CadlagPath(grid_, std::move(values)); }

    friend bool operator==(const CadlagPath& a, const CadlagPath& b) {
        return a.grid_ == b.grid_ && a.values_ == b.values_;
    }

private:
    TimeGrid grid_;
    Vector values_;
};

/// Which value sits just before the origin.
enum class PreOrigin {
    Input,      ///< S_{0-} = S_0
    Regulator,  ///< K_{0-} = 0
};

struct Extrema {
    double min;
    double max;
};

double eval(const CadlagPath& path, double t);
double left_limit(const CadlagPath& path, Index i, PreOrigin convention);
Extrema window_extrema(const CadlagPath& path, Index i, Index j);
double oscillation(const CadlagPath& path, Index i, Index j);

/// (T_d psi)_t = psi_{d+t} - psi_d for a grid instant d.
CadlagPath shift_centered(const CadlagPath& path, double d);
/// (H_d psi)_t = psi_{d+t} for a grid instant d.
CadlagPath shift_plain(const CadlagPath& path, double d);
/// Like shift_plain but d may fall anywhere in [0, inf); the new origin carries eval(path, d).
CadlagPath restrict_from(const CadlagPath& path, double d);

/// Sorted union of both grids' instants.
TimeGrid merge(const TimeGrid& a, const TimeGrid& b);
/// Instants of `grid` that do not exceed `horizon`.
TimeGrid truncate(const TimeGrid& grid, double horizon);
/// Right-continuous lookup of `path` at every instant of `grid`.
CadlagPath resample(const CadlagPath& path, const TimeGrid& grid);

Vector running_max(const Vector& v);
Vector running_min(const Vector& v);

/// Path CSV: header `t,value`, first t is 0, t strictly increasing.
CadlagPath read_path_csv(std::istream& in);
CadlagPath read_path_csv_file(const std::string& filename);
void write_path_csv(std::ostream& out, const CadlagPath& path);
void write_path_csv_file(const std::string& filename, const CadlagPath& path);

}  // namespace nlskp
