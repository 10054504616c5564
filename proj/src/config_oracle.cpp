#include "enskog/config_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <string>

namespace enskog {

namespace {

struct Accumulator {
    double sum = 0.0;
    double sum2 = 0.0;
    std::size_t n = 0;
    void add(double v) {
        sum += v;
        sum2 += v * v;
        ++n;
    }
    McEstimate finish(std::uint64_t seed) const {
        McEstimate e;
        e.samples = n;
        e.seed = seed;
        if (n == 0) return e;
        e.value = sum / static_cast<double>(n);
        const double var = std::max(0.0, sum2 / static_cast<double>(n) - e.value * e.value);
        e.std_error = n > 1 ? std::sqrt(var / static_cast<double>(n - 1)) : 0.0;
        return e;
    }
};

}  // namespace

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t z = seed + 0x9E3779B97F4A7C15ull * (stream + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

nlohmann::json McEstimate::to_json(const nlohmann::json& inputs) const {
    return {{"inputs", inputs}, {"estimate", value}, {"std_error", std_error}, {"samples", samples}, {"seed", seed}};
}

double ReductionCheck::combined_std_error() const {
    return std::sqrt(lhs_std_error * lhs_std_error + rhs_std_error * rhs_std_error);
}

nlohmann::json ReductionCheck::to_json() const {
    return {{"lhs", lhs},
            {"lhs_std_error", lhs_std_error},
            {"rhs", rhs},
            {"rhs_std_error", rhs_std_error},
            {"combined_std_error", combined_std_error()}};
}

ConfigOracle::ConfigOracle(OracleBox box, SpatialGrid grid, int particles, double sigma, double mass,
                           std::size_t samples, std::uint64_t seed)
    : box_(box), grid_(grid), n_(particles), sigma_(sigma), mass_(mass), samples_(samples), seed_(seed) {
    if (particles < 1) throw std::invalid_argument("oracle needs at least one particle");
    if (!(sigma >= 0.0)) throw std::invalid_argument("oracle diameter must be non-negative");
    if (!(mass > 0.0)) throw std::invalid_argument("oracle mass must be positive");
    if (samples < 2) throw std::invalid_argument("oracle needs at least two samples");
    if (!(box.lx > 0.0 && box.ly > 0.0 && box.lz > 0.0)) throw std::invalid_argument("oracle box must be non-empty");
    if (std::abs(grid.length() - box.lx) > 1e-12 * box.lx)
        throw std::invalid_argument("oracle grid must span the box in x");
    if (box.periodic_transverse && 2.0 * sigma >= std::min(box.ly, box.lz))
        throw std::invalid_argument("periodic cross section must exceed twice the diameter");
}

bool ConfigOracle::contains(const Vec3& x) const {
    if (!(x.x >= 0.0 && x.x <= box_.lx)) return false;
    if (box_.periodic_transverse) return true;
    return x.y >= 0.0 && x.y <= box_.ly && x.z >= 0.0 && x.z <= box_.lz;
}

double ConfigOracle::distance2(const Vec3& a, const Vec3& b) const {
    const double dx = a.x - b.x;
    double dy = a.y - b.y;
    double dz = a.z - b.z;
    if (box_.periodic_transverse) {
        dy -= box_.ly * std::round(dy / box_.ly);
        dz -= box_.lz * std::round(dz / box_.lz);
    }
    return dx * dx + dy * dy + dz * dz;
}

double ConfigOracle::weight(std::span<const double> w_x, const Vec3& x) const {
    if (!contains(x)) return 0.0;
    return make_stencil(grid_, x.x).apply(w_x) / (box_.ly * box_.lz);
}

ConfigOracle::SampleSet ConfigOracle::make_samples(int per_sample, std::uint64_t stream) const {
    SampleSet set;
    set.per_sample = per_sample;
    if (per_sample <= 0) return set;
    std::mt19937_64 rng(mix_seed(seed_, stream * 1000 + static_cast<std::uint64_t>(per_sample)));
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    const std::size_t s = samples_;
    set.points.resize(s * static_cast<std::size_t>(per_sample));
    std::vector<std::size_t> perm(s);
    for (int p = 0; p < per_sample; ++p) {
        std::iota(perm.begin(), perm.end(), std::size_t{0});
        std::shuffle(perm.begin(), perm.end(), rng);
        for (std::size_t i = 0; i < s; ++i) {
            Vec3& v = set.points[i * static_cast<std::size_t>(per_sample) + static_cast<std::size_t>(p)];
            v.x = (static_cast<double>(perm[i]) + u01(rng)) / static_cast<double>(s) * box_.lx;
            v.y = u01(rng) * box_.ly;
            v.z = u01(rng) * box_.lz;
        }
    }
    return set;
}

std::shared_ptr<const ConfigOracle::SampleSet> ConfigOracle::samples_for(int per_sample, std::uint64_t stream) const {
    const std::uint64_t key = stream * 1000 + static_cast<std::uint64_t>(std::max(per_sample, 0));
    std::lock_guard lock(cache_mutex_);
    for (const auto& [k, set] : sample_cache_)
        if (k == key) return set;
    auto set = std::make_shared<SampleSet>(make_samples(per_sample, stream));
    sample_cache_.emplace_back(key, set);
    return set;
}

namespace {

// Importance-weighted hard-core indicator for one sample of free positions,
// given fixed positions that the free ones must avoid.
double sample_value(const ConfigOracle& o, std::span<const double> w_x, std::span<const Vec3> free_pts,
                    std::span<const Vec3> fixed) {
    const double s2 = o.sigma() * o.sigma();
    const double vol = o.box().volume();
    double weight = 1.0;
    for (const Vec3& p : free_pts) {
        weight *= vol * o.weight(w_x, p);
        if (weight == 0.0) return 0.0;
    }
    for (std::size_t i = 0; i < free_pts.size(); ++i) {
        for (const Vec3& f : fixed)
            if (o.distance2(free_pts[i], f) < s2) return 0.0;
        for (std::size_t j = i + 1; j < free_pts.size(); ++j)
            if (o.distance2(free_pts[i], free_pts[j]) < s2) return 0.0;
    }
    return weight;
}

}  // namespace

McEstimate ConfigOracle::config_Y(std::span<const double> w_x, const Vec3& x1) const {
    const int m = n_ - 1;
    const std::uint64_t stream = 1;
    if (m == 0) return {1.0, 0.0, samples_, seed_};
    auto set = samples_for(m, stream);
    Accumulator acc;
    const Vec3 fixed[1] = {x1};
    for (std::size_t i = 0; i < samples_; ++i)
        acc.add(sample_value(*this, w_x, {set->points.data() + i * static_cast<std::size_t>(m), static_cast<std::size_t>(m)},
                             fixed));
    return acc.finish(seed_);
}

McEstimate ConfigOracle::config_phi(std::span<const double> w_x) const {
    auto set = samples_for(n_, 2);
    Accumulator acc;
    for (std::size_t i = 0; i < samples_; ++i)
        acc.add(sample_value(*this, w_x, {set->points.data() + i * static_cast<std::size_t>(n_), static_cast<std::size_t>(n_)},
                             {}));
    return acc.finish(seed_);
}

McEstimate ConfigOracle::config_pair_excluded(std::span<const double> w_x, const Vec3& x1, const Vec3& x2) const {
    const int m = n_ - 2;
    if (m <= 0) return {1.0, 0.0, samples_, seed_};
    auto set = samples_for(m, 3);
    Accumulator acc;
    const Vec3 fixed[2] = {x1, x2};
    for (std::size_t i = 0; i < samples_; ++i)
        acc.add(sample_value(*this, w_x, {set->points.data() + i * static_cast<std::size_t>(m), static_cast<std::size_t>(m)},
                             fixed));
    return acc.finish(seed_);
}

ConfigState ConfigOracle::state_from_w(std::vector<double> w_x) const {
    if (!box_.periodic_transverse)
        throw std::invalid_argument("slab states need a transversely periodic oracle box");
    if (w_x.size() != static_cast<std::size_t>(grid_.cells()))
        throw std::invalid_argument("weight profile must have one entry per cell");
    ConfigState st;
    double norm = 0.0;
    for (double v : w_x) {
        if (!(v >= 0.0) || !std::isfinite(v)) throw std::invalid_argument("weight profile must be non-negative");
        norm += v * grid_.dx();
    }
    if (!(norm > 0.0)) throw std::invalid_argument("weight profile must not vanish identically");
    for (double& v : w_x) v /= norm;
    st.w_x = std::move(w_x);

    const int nx = grid_.cells();
    st.y.resize(static_cast<std::size_t>(nx));
    double phi = 0.0;
    double phi_var = 0.0;
    for (int k = 0; k < nx; ++k) {
        const auto kk = static_cast<std::size_t>(k);
        st.y[kk] = config_Y(st.w_x, {grid_.center(k), 0.5 * box_.ly, 0.5 * box_.lz});
        phi += st.w_x[kk] * st.y[kk].value * grid_.dx();
        const double e = st.w_x[kk] * st.y[kk].std_error * grid_.dx();
        phi_var += e * e;
    }
    st.phi = {phi, std::sqrt(phi_var), samples_, seed_};
    if (!(phi > 0.0)) throw UndefinedCorrelation("configuration integral vanished; packing too dense for the sample size");
    st.rho.resize(static_cast<std::size_t>(nx));
    const double area = box_.ly * box_.lz;
    for (int k = 0; k < nx; ++k) {
        const auto kk = static_cast<std::size_t>(k);
        st.rho[kk] = mass_ * n_ * st.w_x[kk] * st.y[kk].value / (phi * area);
    }
    return st;
}

ConfigState ConfigOracle::invert_density_to_w(std::span<const double> rho, double tol, int max_iterations) const {
    const int nx = grid_.cells();
    if (rho.size() != static_cast<std::size_t>(nx)) throw std::invalid_argument("density must have one entry per cell");
    double total = 0.0;
    for (double r : rho) {
        if (!(r > 0.0) || !std::isfinite(r))
            throw std::invalid_argument("density inversion needs a strictly positive density");
        total += r * grid_.dx();
    }
    total *= box_.ly * box_.lz;
    const double target = mass_ * n_;
    if (std::abs(total - target) > 1e-3 * target)
        throw std::invalid_argument("density integrates to " + std::to_string(total) + " but m N = " +
                                    std::to_string(target));

    std::vector<double> w(rho.begin(), rho.end());
    ConfigState st;
    for (int it = 1; it <= max_iterations; ++it) {
        st = state_from_w(w);
        double res = 0.0;
        for (int k = 0; k < nx; ++k) {
            const auto kk = static_cast<std::size_t>(k);
            const double target_k = rho[kk] * target / total;
            res = std::max(res, std::abs(st.rho[kk] - target_k) / target_k);
            w[kk] = st.w_x[kk] * target_k / st.rho[kk];
        }
        st.iterations = it;
        st.residual = res;
        if (res <= tol) return st;
    }
    throw std::runtime_error("density inversion did not converge to " + std::to_string(tol) + " in " +
                             std::to_string(max_iterations) + " iterations (residual " +
                             std::to_string(st.residual) + ")");
}

McEstimate ConfigOracle::exact_g2(const ConfigState& state, const Vec3& x1, const Vec3& x2) const {
    const double w1 = weight(state.w_x, x1);
    const double w2 = weight(state.w_x, x2);
    if (!(w1 > 0.0) || !(w2 > 0.0)) throw UndefinedCorrelation("g2 requested where the density vanishes");

    // Independent streams so that the error estimates combine in quadrature.
    ConfigOracle y1_oracle(box_, grid_, n_, sigma_, mass_, samples_, mix_seed(seed_, 11));
    ConfigOracle y2_oracle(box_, grid_, n_, sigma_, mass_, samples_, mix_seed(seed_, 12));
    const McEstimate phi = config_phi(state.w_x);
    const McEstimate y1 = y1_oracle.config_Y(state.w_x, x1);
    const McEstimate y2 = y2_oracle.config_Y(state.w_x, x2);
    const McEstimate e12 = config_pair_excluded(state.w_x, x1, x2);
    if (!(y1.value > 0.0) || !(y2.value > 0.0)) throw UndefinedCorrelation("g2 requested where Y vanishes");

    McEstimate g;
    const double nn = static_cast<double>(n_);
    g.value = (nn - 1.0) / nn * phi.value * e12.value / (y1.value * y2.value);
    auto rel = [](const McEstimate& e) { return e.value != 0.0 ? e.std_error / e.value : 0.0; };
    g.std_error = std::abs(g.value) *
                  std::sqrt(rel(phi) * rel(phi) + rel(e12) * rel(e12) + rel(y1) * rel(y1) + rel(y2) * rel(y2));
    g.samples = samples_;
    g.seed = seed_;
    return g;
}

double ConfigOracle::density_at(const ConfigState& state, const Vec3& x, double* std_error) const {
    const double w = weight(state.w_x, x);
    if (w == 0.0) {
        if (std_error) *std_error = 0.0;
        return 0.0;
    }
    const McEstimate y = config_Y(state.w_x, x);
    const double scale = mass_ * n_ * w / state.phi.value;
    if (std_error) *std_error = scale * y.std_error;
    return scale * y.value;
}

ReductionCheck ConfigOracle::verify_reduction_identity(const ConfigState& state, const Vec3& x1, int sphere_order,
                                                       double h) const {
    const double w1 = weight(state.w_x, x1);
    if (!(w1 > 0.0)) throw UndefinedCorrelation("reduction identity requested where the density vanishes");
    if (!(h > 0.0)) throw std::invalid_argument("difference step must be positive");
    const SphereQuadrature sphere(sphere_order);
    const double common = mass_ * n_ * w1 / state.phi.value;
    const double s2 = sigma_ * sigma_;
    const double vol = box_.volume();

    // Left side: (N-1) sigma^2 sum_q w_q n_x w(X1 - sigma n) E12(X1, X1 - sigma n),
    // accumulated sample by sample so that the error includes node correlations.
    std::vector<Vec3> partner(static_cast<std::size_t>(sphere.size()));
    std::vector<double> coef(static_cast<std::size_t>(sphere.size()));
    for (int q = 0; q < sphere.size(); ++q) {
        const Vec3& n = sphere.node(q);
        partner[static_cast<std::size_t>(q)] = x1 - sigma_ * n;
        coef[static_cast<std::size_t>(q)] = sphere.weight(q) * n.x * weight(state.w_x, partner[static_cast<std::size_t>(q)]);
    }
    const int m = n_ - 2;
    Accumulator lhs;
    if (m <= 0) {
        double v = 0.0;
        for (int q = 0; q < sphere.size(); ++q) v += coef[static_cast<std::size_t>(q)];
        lhs.add(v);
        lhs.add(v);
    } else {
        auto set = samples_for(m, 3);
        for (std::size_t i = 0; i < samples_; ++i) {
            std::span<const Vec3> pts{set->points.data() + i * static_cast<std::size_t>(m), static_cast<std::size_t>(m)};
            double wt = 1.0;
            bool free_ok = true;
            for (std::size_t a = 0; a < pts.size() && free_ok; ++a) {
                wt *= vol * weight(state.w_x, pts[a]);
                if (distance2(pts[a], x1) < s2) free_ok = false;
                for (std::size_t b = a + 1; b < pts.size() && free_ok; ++b)
                    if (distance2(pts[a], pts[b]) < s2) free_ok = false;
            }
            double v = 0.0;
            if (free_ok && wt != 0.0) {
                for (int q = 0; q < sphere.size(); ++q) {
                    const auto qq = static_cast<std::size_t>(q);
                    if (coef[qq] == 0.0) continue;
                    bool ok = true;
                    for (const Vec3& p : pts)
                        if (distance2(p, partner[qq]) < s2) { ok = false; break; }
                    if (ok) v += coef[qq];
                }
                v *= wt;
            }
            lhs.add(v);
        }
    }
    const McEstimate l = lhs.finish(seed_);

    // Right side: fourth-order central difference of Y on common samples.
    Accumulator rhs;
    const int mm = n_ - 1;
    if (mm == 0) {
        rhs.add(0.0);
        rhs.add(0.0);
    } else {
        auto set = samples_for(mm, 1);
        const Vec3 at[4] = {x1 + Vec3{2.0 * h, 0.0, 0.0}, x1 + Vec3{h, 0.0, 0.0}, x1 - Vec3{h, 0.0, 0.0},
                            x1 - Vec3{2.0 * h, 0.0, 0.0}};
        const double c[4] = {-1.0, 8.0, -8.0, 1.0};
        for (std::size_t i = 0; i < samples_; ++i) {
            std::span<const Vec3> pts{set->points.data() + i * static_cast<std::size_t>(mm), static_cast<std::size_t>(mm)};
            double d = 0.0;
            for (int s = 0; s < 4; ++s) d += c[s] * sample_value(*this, state.w_x, pts, {at + s, 1});
            rhs.add(d / (12.0 * h));
        }
    }
    const McEstimate r = rhs.finish(seed_);

    ReductionCheck out;
    out.lhs = common * (n_ - 1) * s2 * l.value;
    out.lhs_std_error = common * (n_ - 1) * s2 * l.std_error;
    out.rhs = common * r.value;
    out.rhs_std_error = common * r.std_error;
    return out;
}

}  // namespace enskog
