#include "flatlab/metric_space.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "flatlab/util.hpp"

namespace flatlab {

FiniteMetricSpace::FiniteMetricSpace(std::vector<std::string> points, std::vector<double> dist)
    : points_(std::move(points)), dist_(std::move(dist)) {
    if (dist_.size() != points_.size() * points_.size())
        throw std::invalid_argument("distance matrix is not square with point count");
    rebuild_index();
}

void FiniteMetricSpace::rebuild_index() {
    index_.clear();
    index_.reserve(points_.size());
    for (std::size_t i = 0; i < points_.size(); ++i) {
        if (!index_.emplace(points_[i], i).second)
            throw std::invalid_argument("duplicate point id: " + points_[i]);
    }
}

void FiniteMetricSpace::set(std::size_t i, std::size_t j, double v) {
    dist_[i * points_.size() + j] = v;
    dist_[j * points_.size() + i] = v;
}

std::size_t FiniteMetricSpace::index_of(const std::string& id) const {
    auto it = index_.find(id);
    if (it == index_.end()) throw std::invalid_argument("unknown point id: " + id);
    return it->second;
}

double FiniteMetricSpace::diameter() const {
    double d = 0.0;
    for (double v : dist_) d = std::max(d, v);
    return d;
}

std::string FiniteMetricSpace::to_csv() const {
    std::ostringstream out;
    for (std::size_t i = 0; i < points_.size(); ++i) {
        if (i) out << ',';
        out << points_[i];
    }
    out << '\n';
    for (std::size_t i = 0; i < points_.size(); ++i) {
        for (std::size_t j = 0; j < points_.size(); ++j) {
            if (j) out << ',';
            out << format_double(at(i, j));
        }
        out << '\n';
    }
    return out.str();
}

FiniteMetricSpace FiniteMetricSpace::from_csv(const std::string& csv) {
    std::istringstream in(csv);
    std::string line;
    if (!std::getline(in, line)) throw std::invalid_argument("empty csv");
    std::vector<std::string> ids = split_csv_line(line);
    std::size_t n = ids.size();
    std::vector<double> dist;
    dist.reserve(n * n);
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        auto fields = split_csv_line(line);
        if (fields.size() != n) throw std::invalid_argument("csv row width mismatch");
        for (const auto& f : fields) dist.push_back(std::stod(f));
    }
    if (dist.size() != n * n) throw std::invalid_argument("csv row count mismatch");
    return FiniteMetricSpace(std::move(ids), std::move(dist));
}

namespace {

template <typename T>
void append_raw(std::vector<unsigned char>& out, const T& v) {
    const unsigned char* p = reinterpret_cast<const unsigned char*>(&v);
    out.insert(out.end(), p, p + sizeof(T));
}

template <typename T>
T read_raw(const std::vector<unsigned char>& in, std::size_t& off) {
    if (off + sizeof(T) > in.size()) throw std::invalid_argument("truncated FMS1 blob");
    T v;
    std::memcpy(&v, in.data() + off, sizeof(T));
    off += sizeof(T);
    return v;
}

} // namespace

std::vector<unsigned char> FiniteMetricSpace::to_fms1() const {
    std::vector<unsigned char> out;
    out.insert(out.end(), {'F', 'M', 'S', '1'});
    append_raw<std::uint32_t>(out, static_cast<std::uint32_t>(size()));
    for (const auto& id : points_) {
        append_raw<std::uint32_t>(out, static_cast<std::uint32_t>(id.size()));
        out.insert(out.end(), id.begin(), id.end());
    }
    for (std::size_t i = 0; i < size(); ++i)
        for (std::size_t j = i + 1; j < size(); ++j) append_raw<double>(out, at(i, j));
    return out;
}

FiniteMetricSpace FiniteMetricSpace::from_fms1(const std::vector<unsigned char>& bytes) {
    if (bytes.size() < 8 || std::memcmp(bytes.data(), "FMS1", 4) != 0)
        throw std::invalid_argument("bad FMS1 magic");
    std::size_t off = 4;
    std::uint32_t n = read_raw<std::uint32_t>(bytes, off);
    std::vector<std::string> ids(n);
    for (auto& id : ids) {
        std::uint32_t len = read_raw<std::uint32_t>(bytes, off);
        if (off + len > bytes.size()) throw std::invalid_argument("truncated FMS1 blob");
        id.assign(reinterpret_cast<const char*>(bytes.data() + off), len);
        off += len;
    }
    std::vector<double> dist(static_cast<std::size_t>(n) * n, 0.0);
    FiniteMetricSpace space(std::move(ids), std::move(dist));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) space.set(i, j, read_raw<double>(bytes, off));
    return space;
}

MetricAxiomReport verify_metric_axioms(const FiniteMetricSpace& space, double tau_metric) {
    const std::size_t n = space.size();
    for (double v : space.data())
        if (!std::isfinite(v)) throw std::invalid_argument("distance matrix contains non-finite entries");

    MetricAxiomReport rep;
    rep.tolerance = tau_metric;
    rep.worst_positivity = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i) {
        rep.worst_diagonal = std::max(rep.worst_diagonal, std::fabs(space.at(i, i)));
        for (std::size_t j = i + 1; j < n; ++j) {
            rep.worst_asymmetry = std::max(rep.worst_asymmetry, std::fabs(space.at(i, j) - space.at(j, i)));
            rep.worst_positivity = std::min(rep.worst_positivity, space.at(i, j));
        }
    }
    if (n < 2) rep.worst_positivity = std::numeric_limits<double>::infinity();

    // Triangle scan: for every (i, j) check all k at once; the inner loop is
    // the hot path for graph-derived spaces with a few thousand points.
    const double* d = space.data().data();
    double worst = -std::numeric_limits<double>::infinity();
    std::size_t wi = 0, wj = 0, wk = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const double* di = d + i * n;
        for (std::size_t j = 0; j < n; ++j) {
            if (j == i) continue;
            const double* dj = d + j * n;
            const double dij = di[j];
            for (std::size_t k = 0; k < n; ++k) {
                double defect = di[k] - dij - dj[k];
                if (defect > worst) {
                    worst = defect;
                    wi = i; wj = j; wk = k;
                }
            }
        }
    }
    if (n >= 2) {
        rep.worst_triangle_defect = worst;
        rep.worst_triple = {space.points()[wi], space.points()[wj], space.points()[wk]};
    }

    bool diag_ok = rep.worst_diagonal <= tau_metric;
    bool sym_ok = rep.worst_asymmetry <= tau_metric;
    bool pos_ok = (n < 2) || rep.worst_positivity > 0.0;
    bool tri_ok = (n < 2) || rep.worst_triangle_defect <= tau_metric;
    rep.pass = diag_ok && sym_ok && pos_ok && tri_ok;
    return rep;
}

BilipschitzReport bilipschitz_compare(const FiniteMetricSpace& d1, const FiniteMetricSpace& d2) {
    if (d1.points() != d2.points())
        throw std::invalid_argument("bilipschitz_compare: point sets differ");
    const std::size_t n = d1.size();
    if (n < 2) throw std::invalid_argument("bilipschitz_compare: need at least two points");

    BilipschitzReport rep;
    rep.c_lower = std::numeric_limits<double>::infinity();
    rep.C_upper = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            double a = d1.at(i, j), b = d2.at(i, j);
            if (a <= 0.0)
                throw std::invalid_argument("bilipschitz_compare: d1 has a non-positive off-diagonal");
            double ratio = b / a;
            rep.c_lower = std::min(rep.c_lower, ratio);
            rep.C_upper = std::max(rep.C_upper, ratio);
            double diff = std::fabs(b - a);
            if (diff >= rep.sup_abs_diff) {
                rep.sup_abs_diff = diff;
                rep.argmax_pair = {d1.points()[i], d1.points()[j]};
            }
        }
    }
    return rep;
}

FiniteMetricSpace pullback_metric(const FiniteMetricSpace& d_target,
                                  const std::unordered_map<std::string, std::string>& F) {
    if (F.size() != d_target.size())
        throw std::invalid_argument("pullback_metric: F is not a bijection onto the target points");
    std::vector<std::string> source_ids;
    source_ids.reserve(F.size());
    std::vector<std::size_t> target_index;
    target_index.reserve(F.size());
    std::vector<bool> hit(d_target.size(), false);
    for (const auto& [src, tgt] : F) {
        std::size_t ti = d_target.index_of(tgt);
        if (hit[ti]) throw std::invalid_argument("pullback_metric: F maps two points to " + tgt);
        hit[ti] = true;
        source_ids.push_back(src);
        target_index.push_back(ti);
    }
    // Deterministic output order: sort source ids (map iteration order is not).
    std::vector<std::size_t> order(source_ids.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return source_ids[a] < source_ids[b]; });

    const std::size_t n = source_ids.size();
    std::vector<std::string> ids(n);
    std::vector<std::size_t> tix(n);
    for (std::size_t i = 0; i < n; ++i) {
        ids[i] = source_ids[order[i]];
        tix[i] = target_index[order[i]];
    }
    std::vector<double> dist(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) dist[i * n + j] = d_target.at(tix[i], tix[j]);
    return FiniteMetricSpace(std::move(ids), std::move(dist));
}

double uniform_distance(const FiniteMetricSpace& d1, const FiniteMetricSpace& d2) {
    if (d1.size() != d2.size())
        throw std::invalid_argument("uniform_distance: point sets differ");
    const std::size_t n = d1.size();
    // Align by id so callers can compare relabeled spaces directly.
    std::vector<std::size_t> remap(n);
    for (std::size_t i = 0; i < n; ++i) remap[i] = d2.index_of(d1.points()[i]);
    double sup = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            sup = std::max(sup, std::fabs(d1.at(i, j) - d2.at(remap[i], remap[j])));
    return sup;
}

} // namespace flatlab
