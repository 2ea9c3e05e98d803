#include "nlskp/pathkit.hpp"

#include "nlskp/errors.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <vector>

namespace nlskp {

namespace {

void require_index(const CadlagPath& path, Index i) {
    if (i < 0 || i >= path.size()) {
        throw DomainError("index " + std::to_string(i) + " out of range [0, " +
                          std::to_string(path.size()) + ")");
    }
}

void require_window(const CadlagPath& path, Index i, Index j) {
    require_index(path, i);
    require_index(path, j);
    if (i > j) {
        throw DomainError("window start " + std::to_string(i) + " after end " + std::to_string(j));
    }
}

Index require_instant(const CadlagPath& path, double d) {
    const auto idx = path.grid().find(d);
    if (!idx) {
        std::ostringstream msg;
        msg << std::setprecision(17) << "shift " << d << " is not a grid instant";
        throw DomainError(msg.str());
    }
    return *idx;
}

std::string trim(const std::string& s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos) {
        return {};
    }
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

double parse_number(const std::string& field, std::size_t line) {
    const std::string text = trim(field);
    std::size_t used = 0;
    double value = 0.0;
    try {
        value = std::stod(text, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (text.empty() || used != text.size() || !std::isfinite(value)) {
        throw InputError("line " + std::to_string(line) + ": not a finite number: '" + text + "'");
    }
    return value;
}

}  // namespace

TimeGrid::TimeGrid() : times_(Vector::Zero(1)) {}

TimeGrid::TimeGrid(Vector times) : times_(std::move(times)) {
    if (times_.size() < 1) {
        throw InputError("time grid needs at least one instant");
    }
    if (times_[0] != 0.0) {
        throw InputError("time grid must start at 0");
    }
    for (Index i = 0; i < times_.size(); ++i) {
        if (!std::isfinite(times_[i])) {
            throw InputError("time grid has a non-finite instant");
        }
        if (i > 0 && !(times_[i] > times_[i - 1])) {
            throw InputError("time grid must be strictly increasing (index " + std::to_string(i) + ")");
        }
    }
}

TimeGrid TimeGrid::uniform(Index n, double horizon) {
    if (n < 1) {
        throw InputError("uniform grid needs n >= 1");
    }
    if (n == 1) {
        return TimeGrid();
    }
    if (!(horizon > 0.0) || !std::isfinite(horizon)) {
        throw InputError("uniform grid needs a positive finite horizon");
    }
    Vector t(n);
    for (Index i = 0; i < n; ++i) {
        t[i] = horizon * static_cast<double>(i) / static_cast<double>(n - 1);
    }
    return TimeGrid(std::move(t));
}

std::optional<Index> TimeGrid::find(double t) const {
    const double* begin = times_.data();
    const double* end = begin + times_.size();
    const double* it = std::lower_bound(begin, end, t);
    if (it != end && *it == t) {
        return static_cast<Index>(it - begin);
    }
    return std::nullopt;
}

Index TimeGrid::locate(double t) const {
    if (!(t >= 0.0)) {
        throw DomainError("time must be nonnegative");
    }
    const double* begin = times_.data();
    const double* end = begin + times_.size();
    const double* it = std::upper_bound(begin, end, t);
    return static_cast<Index>(it - begin) - 1;
}

CadlagPath::CadlagPath(TimeGrid grid, Vector values) : grid_(std::move(grid)), values_(std::move(values)) {
    if (values_.size() != grid_.size()) {
        throw InputError("path has " + std::to_string(values_.size()) + " values for " +
                         std::to_string(grid_.size()) + " instants");
    }
    if (!values_.allFinite()) {
        throw InputError("path values must be finite");
    }
}

double eval(const CadlagPath& path, double t) {
    return path[path.grid().locate(t)];
}

double left_limit(const CadlagPath& path, Index i, PreOrigin convention) {
    require_index(path, i);
    if (i > 0) {
        return path[i - 1];
    }
    return convention == PreOrigin::Input ? path[0] : 0.0;
}

Extrema window_extrema(const CadlagPath& path, Index i, Index j) {
    require_window(path, i, j);
    const auto segment = path.values().segment(i, j - i + 1);
    return {segment.minCoeff(), segment.maxCoeff()};
}

double oscillation(const CadlagPath& path, Index i, Index j) {
    const Extrema e = window_extrema(path, i, j);
    return e.max - e.min;
}

CadlagPath shift_plain(const CadlagPath& path, double d) {
    const Index start = require_instant(path, d);
    const Index m = path.size() - start;
    Vector times = path.grid().times().tail(m).array() - d;
    times[0] = 0.0;
    return CadlagPath(TimeGrid(std::move(times)), path.values().tail(m));
}

CadlagPath shift_centered(const CadlagPath& path, double d) {
    CadlagPath plain = shift_plain(path, d);
    const double origin = plain[0];
    return plain.with_values(plain.values().array() - origin);
}

CadlagPath restrict_from(const CadlagPath& path, double d) {
    const Index start = path.grid().locate(d);
    const Index m = path.size() - start;
    Vector times = path.grid().times().tail(m).array() - d;
    times[0] = 0.0;
    return CadlagPath(TimeGrid(std::move(times)), path.values().tail(m));
}

TimeGrid merge(const TimeGrid& a, const TimeGrid& b) {
    if (a == b) {
        return a;
    }
    std::vector<double> all;
    all.reserve(static_cast<std::size_t>(a.size() + b.size()));
    std::merge(a.times().data(), a.times().data() + a.size(), b.times().data(), b.times().data() + b.size(),
               std::back_inserter(all));
    all.erase(std::unique(all.begin(), all.end()), all.end());
    return TimeGrid(Eigen::Map<const Vector>(all.data(), static_cast<Index>(all.size())));
}

TimeGrid truncate(const TimeGrid& grid, double horizon) {
    const Index last = grid.locate(horizon);
    if (last == grid.size() - 1) {
        return grid;
    }
    return TimeGrid(grid.times().head(last + 1));
}

CadlagPath resample(const CadlagPath& path, const TimeGrid& grid) {
    if (path.grid() == grid) {
        return path;
    }
    Vector values(grid.size());
    Index k = 0;
    for (Index i = 0; i < grid.size(); ++i) {
        while (k + 1 < path.size() && path.time(k + 1) <= grid[i]) {
            ++k;
        }
        values[i] = path[k];
    }
    return CadlagPath(grid, std::move(values));
}

Vector running_max(const Vector& v) {
    Vector out(v.size());
    for (Index i = 0; i < v.size(); ++i) {
        out[i] = i == 0 ? v[0] : std::max(out[i - 1], v[i]);
    }
    return out;
}

Vector running_min(const Vector& v) {
    Vector out(v.size());
    for (Index i = 0; i < v.size(); ++i) {
        out[i] = i == 0 ? v[0] : std::min(out[i - 1], v[i]);
    }
    return out;
}

CadlagPath read_path_csv(std::istream& in) {
    std::string line;
    std::size_t line_no = 0;
    bool header_seen = false;
    std::vector<double> times;
    std::vector<double> values;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string text = trim(line);
        if (text.empty()) {
            continue;
        }
        if (!header_seen) {
            if (text != "t,value") {
                throw InputError("path CSV must start with header 't,value'");
            }
            header_seen = true;
            continue;
        }
        const auto comma = text.find(',');
        if (comma == std::string::npos || text.find(',', comma + 1) != std::string::npos) {
            throw InputError("line " + std::to_string(line_no) + ": expected two fields");
        }
        times.push_back(parse_number(text.substr(0, comma), line_no));
        values.push_back(parse_number(text.substr(comma + 1), line_no));
    }
    if (!header_seen) {
        throw InputError("path CSV is empty");
    }
    if (times.empty()) {
        throw InputError("path CSV has no samples");
    }
    const auto n = static_cast<Index>(times.size());
    return CadlagPath(TimeGrid(Eigen::Map<const Vector>(times.data(), n)),
                      Eigen::Map<const Vector>(values.data(), n));
}

CadlagPath read_path_csv_file(const std::string& filename) {
    std::ifstream in(filename);
    if (!in) {
        throw InputError("cannot open path file '" + filename + "'");
    }
    return read_path_csv(in);
}

void write_path_csv(std::ostream& out, const CadlagPath& path) {
    out << "t,value\n" << std::setprecision(17);
    for (Index i = 0; i < path.size(); ++i) {
        out << path.time(i) << ',' << path[i] << '\n';
    }
}

void write_path_csv_file(const std::string& filename, const CadlagPath& path) {
    std::ofstream out(filename);
    if (!out) {
        throw InputError("cannot write '" + filename + "'");
    }
    write_path_csv(out, path);
}

}  // namespace nlskp
