#include "ztoa/distributions.hpp"

#include "ztoa/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

namespace ztoa {

namespace {
constexpr double kNegKLimit = 1e-6;
constexpr double kEnvelopeCut = 1e-18;
} // namespace

const char* to_string(DistributionKind k) {
    switch (k) {
        case DistributionKind::flux: return "flux";
        case DistributionKind::kijowski: return "kijowski";
        case DistributionKind::zeno_ideal: return "zeno_ideal";
        case DistributionKind::operational: return "operational";
    }
    return "?";
}

FreeReference::FreeReference(std::shared_ptr<const SpatialGrid> grid,
                             std::vector<GaussianSpec> parts)
    : grid_(std::move(grid)), parts_(std::move(parts)) {
    if (parts_.empty()) throw validation_error("FreeReference: need at least one part");
    const auto& g = *grid_;
    renorm_ = superposition_renorm(parts_, g);

    std::vector<cplx> full(g.n_points);
    double peak = 0.0;
    for (int j = 0; j < g.n_points; ++j) {
        cplx a = 0.0;
        for (const auto& p : parts_) a += gaussian_momentum_amplitude(p, g.k_values[j], 0.0);
        full[j] = a / renorm_;
        peak = std::max(peak, std::abs(full[j]));
    }
    double nsum = 0.0, ksum = 0.0, negsum = 0.0;
    for (int j = 0; j < g.n_points; ++j) {
        if (std::abs(full[j]) <= peak * kEnvelopeCut) continue;
        const double k = g.k_values[j];
        const double p = std::norm(full[j]);
        nsum += p;
        ksum += k * p;
        if (k < 0.0) negsum += p;
        k_.push_back(k);
        energy_.push_back(0.5 * k * k);
        sqrtk_.push_back(k > 0.0 ? std::sqrt(k) : 0.0);
        base_.push_back(full[j]);
    }
    k0_ = ksum / nsum;
    neg_k_ = negsum / nsum;
}

FreeReference::Amps FreeReference::amps_at(double t) const {
    cplx a0 = 0.0, a1 = 0.0, ah = 0.0;
    const std::size_t m = base_.size();
    for (std::size_t j = 0; j < m; ++j) {
        const double ph = -energy_[j] * t;
        const cplx a = base_[j] * cplx(std::cos(ph), std::sin(ph));
        a0 += a;
        a1 += k_[j] * a;
        ah += sqrtk_[j] * a;
    }
    const double c = grid_->dk / std::sqrt(2.0 * std::numbers::pi);
    return {a0 * c, a1 * c, ah * c};
}

double FreeReference::flux_at(double t) const {
    const Amps a = amps_at(t);
    return std::real(std::conj(a.at_origin) * a.k_weighted);
}

double FreeReference::kijowski_at(double t) const {
    const Amps a = amps_at(t);
    return std::norm(a.sqrtk_weighted);
}

double FreeReference::zeno_at(double t) const {
    const Amps a = amps_at(t);
    return std::norm(a.k_weighted) / k0_;
}

namespace {

double trapezoid(const std::vector<double>& t, const std::vector<double>& f) {
    double s = 0.0;
    for (std::size_t i = 1; i < t.size(); ++i)
        s += 0.5 * (f[i] + f[i - 1]) * (t[i] - t[i - 1]);
    return s;
}

TimeDistribution make_ideal(const FreeReference& ref, std::vector<double> t_values,
                            DistributionKind kind) {
    TimeDistribution d;
    d.kind = kind;
    d.t_values = std::move(t_values);
    d.density.resize(d.t_values.size());
    for (std::size_t i = 0; i < d.t_values.size(); ++i) {
        const double t = d.t_values[i];
        switch (kind) {
            case DistributionKind::flux: d.density[i] = ref.flux_at(t); break;
            case DistributionKind::kijowski: d.density[i] = ref.kijowski_at(t); break;
            case DistributionKind::zeno_ideal: d.density[i] = ref.zeno_at(t); break;
            default: break;
        }
    }
    d.raw_integral = trapezoid(d.t_values, d.density);
    d.label = to_string(kind);
    return d;
}

} // namespace

TimeDistribution ideal_flux(const FreeReference& ref, std::vector<double> t_values) {
    return make_ideal(ref, std::move(t_values), DistributionKind::flux);
}

TimeDistribution kijowski_distribution(const FreeReference& ref, std::vector<double> t_values) {
    if (ref.neg_k_fraction() >= kNegKLimit)
        throw validation_error("kijowski_distribution: negative-momentum fraction >= 1e-6");
    return make_ideal(ref, std::move(t_values), DistributionKind::kijowski);
}

TimeDistribution zeno_ideal_distribution(const FreeReference& ref, std::vector<double> t_values) {
    if (ref.neg_k_fraction() >= kNegKLimit)
        throw validation_error("zeno_ideal_distribution: negative-momentum fraction >= 1e-6");
    if (!(ref.k0() > 0.0))
        throw validation_error("zeno_ideal_distribution: k0 must be positive");
    return make_ideal(ref, std::move(t_values), DistributionKind::zeno_ideal);
}

TimeDistribution normalize_record(const DetectionRecord& rec) {
    if (!(rec.detected_fraction > 1e-6))
        throw validation_error("normalize_record: nothing detected (fraction <= 1e-6)");
    TimeDistribution d;
    d.kind = DistributionKind::operational;
    d.detected_fraction = rec.detected_fraction;
    const double dt = rec.schedule.delta_t;
    d.t_values.resize(rec.t_bins.size());
    d.density.resize(rec.t_bins.size());
    for (std::size_t i = 0; i < rec.t_bins.size(); ++i) {
        d.t_values[i] = rec.t_bins[i] - 0.5 * dt;
        d.density[i] = rec.removed[i] / (dt * rec.detected_fraction);
    }
    d.raw_integral = std::accumulate(rec.removed.begin(), rec.removed.end(), 0.0) /
                     rec.detected_fraction;
    d.label = std::string("operational ") + to_string(rec.schedule.model);
    return d;
}

TimeDistribution renormalized(const TimeDistribution& d) {
    TimeDistribution out = d;
    const double s = integral(d);
    if (!(std::abs(s) > 0.0)) throw validation_error("renormalized: zero integral");
    for (auto& v : out.density) v /= s;
    out.raw_integral = 1.0;
    out.label += " (renormalized)";
    return out;
}

double integral(const TimeDistribution& d) {
    if (d.kind == DistributionKind::operational) {
        const double dt = d.t_values.size() > 1 ? d.t_values[1] - d.t_values[0] : 1.0;
        double s = 0.0;
        for (double v : d.density) s += v;
        return s * dt;
    }
    return trapezoid(d.t_values, d.density);
}

double mean_arrival(const TimeDistribution& d) {
    if (d.kind == DistributionKind::operational) {
        double s = 0.0, m = 0.0;
        for (std::size_t i = 0; i < d.t_values.size(); ++i) {
            s += d.density[i];
            m += d.t_values[i] * d.density[i];
        }
        return m / s;
    }
    std::vector<double> tf(d.t_values.size());
    for (std::size_t i = 0; i < tf.size(); ++i) tf[i] = d.t_values[i] * d.density[i];
    return trapezoid(d.t_values, tf) / trapezoid(d.t_values, d.density);
}

double stddev_arrival(const TimeDistribution& d) {
    const double mu = mean_arrival(d);
    std::vector<double> tf(d.t_values.size());
    for (std::size_t i = 0; i < tf.size(); ++i) {
        const double dtm = d.t_values[i] - mu;
        tf[i] = dtm * dtm * d.density[i];
    }
    if (d.kind == DistributionKind::operational) {
        double s = 0.0, v = 0.0;
        for (std::size_t i = 0; i < d.t_values.size(); ++i) {
            s += d.density[i];
            v += tf[i];
        }
        return std::sqrt(std::max(v / s, 0.0));
    }
    return std::sqrt(std::max(trapezoid(d.t_values, tf) / trapezoid(d.t_values, d.density), 0.0));
}

double l1_distance(const TimeDistribution& a, const TimeDistribution& b) {
    const double lo = std::max(a.t_values.front(), b.t_values.front());
    const double hi = std::min(a.t_values.back(), b.t_values.back());
    if (!(hi > lo)) throw validation_error("l1_distance: disjoint supports");

    std::vector<double> grid;
    grid.reserve(a.t_values.size() + b.t_values.size());
    for (double t : a.t_values)
        if (t >= lo && t <= hi) grid.push_back(t);
    for (double t : b.t_values)
        if (t >= lo && t <= hi) grid.push_back(t);
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());

    auto interp = [](const TimeDistribution& d, double t) {
        const auto& x = d.t_values;
        auto it = std::lower_bound(x.begin(), x.end(), t);
        if (it == x.begin()) return d.density.front();
        if (it == x.end()) return d.density.back();
        const std::size_t i = static_cast<std::size_t>(it - x.begin());
        const double w = (t - x[i - 1]) / (x[i] - x[i - 1]);
        return d.density[i - 1] * (1.0 - w) + d.density[i] * w;
    };

    std::vector<double> diff(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i)
        diff[i] = std::abs(interp(a, grid[i]) - interp(b, grid[i]));
    return trapezoid(grid, diff);
}

TimeWindow default_time_window(std::span<const GaussianSpec> parts, double n_sigma) {
    TimeWindow w;
    bool first = true;
    for (const auto& p : parts) {
        if (!(p.v_mean > 0.0))
            throw validation_error("default_time_window: parts must move toward the origin (v > 0)");
        const double t_cross = p.t_focus - p.x_focus / p.v_mean;
        const double sk = p.sigma_k();
        const double v2 = p.v_mean * p.v_mean;
        const double veff = std::sqrt(std::max(v2 - sk * sk, 0.09 * v2));
        const double sigma_t = p.spread_at(t_cross) / veff;
        const double lo = t_cross - n_sigma * sigma_t;
        const double hi = t_cross + n_sigma * sigma_t;
        if (first) {
            w = {lo, hi};
            first = false;
        } else {
            w.t_lo = std::min(w.t_lo, lo);
            w.t_hi = std::max(w.t_hi, hi);
        }
    }
    return w;
}

std::vector<double> linspace(double lo, double hi, int n) {
    std::vector<double> v(n);
    for (int i = 0; i < n; ++i)
        v[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
    return v;
}

} // namespace ztoa
