#include "enskog/collision.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

#include "enskog/parallel.hpp"

namespace enskog {

double moment_weight(Moment psi, const Vec3& xi) {
    switch (psi) {
        case Moment::Mass: return 1.0;
        case Moment::MomentumX: return xi.x;
        case Moment::MomentumY: return xi.y;
        case Moment::MomentumZ: return xi.z;
        case Moment::Energy: return 0.5 * norm2(xi);
    }
    return 0.0;
}

CollisionOperator::CollisionOperator(PhaseSpacePtr ps, GasProperties gas, CorrelationModel model,
                                     CollisionSettings settings)
    : ps_(std::move(ps)), gas_(gas), model_(model), settings_(settings), sphere_(settings.sphere_order) {
    if (!ps_) throw std::invalid_argument("collision operator needs a phase space");
    if (!(gas_.sigma > 0.0) || !(gas_.mass > 0.0) || !(gas_.gas_constant > 0.0))
        throw std::invalid_argument("sigma, mass and gas constant must be positive");
    if (!(settings_.reference_temperature > 0.0))
        throw std::invalid_argument("reference temperature must be positive");
    if (settings_.proposal_temperature == 0.0) settings_.proposal_temperature = settings_.reference_temperature;
    if (!(settings_.proposal_temperature > 0.0))
        throw std::invalid_argument("proposal temperature must be positive");
    if (settings_.mode == CollisionMode::SeededMC && settings_.samples < 1)
        throw std::invalid_argument("SeededMC needs at least one sample per node");

    const auto& vg = ps_->velocity;
    fref_ = unit_maxwellian_nodes(vg, settings_.reference_temperature, gas_.gas_constant);
    projected_ = std::make_unique<ProjectedSphere>(vg, sphere_);
    {
        double m0 = 0.0, m2 = 0.0;
        for (int n = 0; n < vg.size(); ++n) {
            m0 += fref_[static_cast<std::size_t>(n)];
            m2 += fref_[static_cast<std::size_t>(n)] * norm2(vg.node(n));
        }
        grid_temperature_bias_ = m2 / (3.0 * gas_.gas_constant * m0) / settings_.reference_temperature;
    }

    if (settings_.mode == CollisionMode::SeededMC) {
        mc_events_.resize(static_cast<std::size_t>(vg.size()));
        parallel_for(vg.size(), [&](int b, int e) {
            for (int n = b; n < e; ++n) build_events(n, mc_events_[static_cast<std::size_t>(n)]);
        });
    }
}

PairCorrelation CollisionOperator::correlation_for(const Distribution& f) const {
    return PairCorrelation(model_, ps_->space, f.density(), gas_);
}

void CollisionOperator::fill_stencil(const Vec3& v, int& base, double t[3]) const {
    const auto& vg = ps_->velocity;
    const int n = vg.per_axis();
    int idx[3];
    for (int a = 0; a < 3; ++a) {
        double u = (v[a] + vg.xi_max()) / vg.spacing() - 0.5;
        u = std::clamp(u, 0.0, static_cast<double>(n - 1));
        int i = std::min(static_cast<int>(u), n - 2);
        idx[a] = i;
        t[a] = u - i;
    }
    base = vg.index(idx[0], idx[1], idx[2]);
}

double CollisionOperator::interp(std::span<const double> r, int base, const double t[3]) const {
    const int n = ps_->velocity.per_axis();
    const std::size_t sx = static_cast<std::size_t>(n) * static_cast<std::size_t>(n);
    const std::size_t sy = static_cast<std::size_t>(n);
    const double* p = r.data() + base;
    const double c00 = p[0] + t[2] * (p[1] - p[0]);
    const double c01 = p[sy] + t[2] * (p[sy + 1] - p[sy]);
    const double c10 = p[sx] + t[2] * (p[sx + 1] - p[sx]);
    const double c11 = p[sx + sy] + t[2] * (p[sx + sy + 1] - p[sx + sy]);
    const double c0 = c00 + t[1] * (c01 - c00);
    const double c1 = c10 + t[1] * (c11 - c10);
    return c0 + t[0] * (c1 - c0);
}

void CollisionOperator::build_events(int n, std::vector<Event>& out) const {
    out.clear();
    const auto& vg = ps_->velocity;
    const double pref = gas_.sigma * gas_.sigma / gas_.mass;
    const Vec3& xi = vg.node(n);

    auto push = [&](int b, const Vec3& alpha, double v, double coef) {
        Event e;
        e.partner = b;
        e.alpha = alpha;
        e.v = v;
        e.coef = coef;
        e.xp = xi + v * alpha;
        e.xs = vg.node(b) - v * alpha;
        fill_stencil(e.xp, e.base_p, e.tp);
        fill_stencil(e.xs, e.base_s, e.ts);
        out.push_back(e);
    };

    if (settings_.mode == CollisionMode::FullQuadrature) {
        const double w = vg.weight();
        out.reserve(static_cast<std::size_t>(sphere_.size()) * static_cast<std::size_t>(vg.size()) / 2);
        for (int q = 0; q < sphere_.size(); ++q) {
            const Vec3& a = sphere_.node(q);
            for (int b = 0; b < vg.size(); ++b) {
                const double v = dot(vg.node(b) - xi, a);
                if (v <= 0.0) continue;
                push(b, a, v, pref * sphere_.weight(q) * w * v);
            }
        }
        return;
    }

    // SeededMC: xi* drawn from the reference Maxwellian over the nodes, alpha
    // uniform on the sphere and oriented so that V > 0 (the antipode then
    // carries no weight), which halves the sphere measure.
    std::mt19937_64 rng(mix_seed(settings_.seed, static_cast<std::uint64_t>(n)));
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    const std::vector<double> prop =
        unit_maxwellian_nodes(vg, settings_.proposal_temperature, gas_.gas_constant);
    std::vector<double> cdf(prop.size());
    double acc = 0.0;
    for (std::size_t i = 0; i < prop.size(); ++i) {
        acc += prop[i];
        cdf[i] = acc;
    }
    const std::size_t s = settings_.samples;
    out.reserve(s);
    for (std::size_t i = 0; i < s; ++i) {
        const double r = u01(rng) * acc;
        const auto it = std::upper_bound(cdf.begin(), cdf.end(), r);
        const int b = static_cast<int>(std::min<std::size_t>(static_cast<std::size_t>(it - cdf.begin()), cdf.size() - 1));
        const double z = 2.0 * u01(rng) - 1.0;
        const double phi = 2.0 * kPi * u01(rng);
        const double sz = std::sqrt(std::max(0.0, 1.0 - z * z));
        Vec3 a{z, sz * std::cos(phi), sz * std::sin(phi)};
        double v = dot(vg.node(b) - xi, a);
        if (v == 0.0) continue;
        if (v < 0.0) {
            a = -a;
            v = -v;
        }
        const double p_b = prop[static_cast<std::size_t>(b)] / acc;
        const double coef = pref * 2.0 * kPi * vg.weight() / p_b * v / static_cast<double>(s);
        push(b, a, v, coef);
    }
}

CollisionOperator::Workspace CollisionOperator::prepare(const Distribution& f) const {
    const auto& vg = ps_->velocity;
    const int nx = f.cells();
    const auto nv = static_cast<std::size_t>(vg.size());
    const double w = vg.weight();
    const double r = gas_.gas_constant;
    Workspace ws;
    ws.refs.resize(static_cast<std::size_t>(nx));
    ws.ratio.resize(f.data().size());
    for (int k = 0; k < nx; ++k) {
        const auto c = f.cell(k);
        double rho = 0.0, e = 0.0;
        Vec3 mom;
        for (std::size_t n = 0; n < nv; ++n) {
            const Vec3& xi = vg.node(static_cast<int>(n));
            rho += c[n];
            mom += c[n] * xi;
            e += c[n] * norm2(xi);
        }
        rho *= w;
        mom *= w;
        e *= w;
        double t = settings_.reference_temperature;
        Vec3 v;
        if (rho > 0.0) {
            v = mom * (1.0 / rho);
            // Calibrated so that the wall Maxwellian maps exactly onto itself.
            const double tt = (e / rho - norm2(v)) / (3.0 * r) / grid_temperature_bias_;
            if (std::isfinite(tt) && tt > 0.05 * settings_.reference_temperature) t = tt;
            else v = {};
        }
        LocalReference& ref = ws.refs[static_cast<std::size_t>(k)];
        ref.norm = std::pow(2.0 * kPi * r * t, -1.5);
        ref.a = 1.0 / (2.0 * r * t);
        ref.v = v;
        double* rk = ws.ratio.data() + static_cast<std::size_t>(k) * nv;
        for (std::size_t n = 0; n < nv; ++n) {
            const double m = ref(vg.node(static_cast<int>(n)));
            rk[n] = m > 1e-300 ? c[n] / m : 0.0;
        }
    }
    return ws;
}

void CollisionOperator::node_terms(const std::vector<Event>& events, const Workspace& ws, const Distribution& f,
                                   const PairCorrelation& g, int k, double& gain_out, double& rate_out) const {
    const auto& sg = ps_->space;
    const auto nv = static_cast<std::size_t>(ps_->velocity.size());
    const double x = sg.center(k);
    const std::span<const double> rk{ws.ratio.data() + static_cast<std::size_t>(k) * nv, nv};
    const LocalReference& refk = ws.refs[static_cast<std::size_t>(k)];
    double gain = 0.0;
    double rate = 0.0;
    double last_ax = std::numeric_limits<double>::quiet_NaN();
    ShiftStencil plus, minus;
    double gp = 0.0, gm = 0.0;
    for (const Event& e : events) {
        if (e.alpha.x != last_ax) {
            last_ax = e.alpha.x;
            const double s = gas_.sigma * e.alpha.x;
            plus = make_stencil(sg, x + s);
            minus = make_stencil(sg, x - s);
            gp = plus.inside ? g(x + s, x) : 0.0;
            gm = minus.inside ? g(x - s, x) : 0.0;
        }
        if (gp != 0.0) {
            const double fp = refk(e.xp) * interp(rk, e.base_p, e.tp);
            const std::span<const double> rlo{ws.ratio.data() + static_cast<std::size_t>(plus.lo) * nv, nv};
            double fs = plus.w_lo * ws.refs[static_cast<std::size_t>(plus.lo)](e.xs) * interp(rlo, e.base_s, e.ts);
            if (plus.w_hi != 0.0) {
                const std::span<const double> rhi{ws.ratio.data() + static_cast<std::size_t>(plus.hi) * nv, nv};
                fs += plus.w_hi * ws.refs[static_cast<std::size_t>(plus.hi)](e.xs) * interp(rhi, e.base_s, e.ts);
            }
            gain += e.coef * gp * fp * fs;
        }
        if (gm != 0.0) {
            double fb = minus.w_lo * f.at(minus.lo, e.partner);
            if (minus.w_hi != 0.0) fb += minus.w_hi * f.at(minus.hi, e.partner);
            rate += e.coef * gm * fb;
        }
    }
    gain_out = gain;
    rate_out = rate;
}

void CollisionOperator::gain_loss(const Distribution& f, const PairCorrelation& g, std::vector<double>& gain_out,
                                  std::vector<double>& loss_out) const {
    if (f.phase_space_ptr() != ps_ && (&f.phase_space() != ps_.get()))
        throw std::invalid_argument("distribution lives on a different phase space");
    const int nx = f.cells();
    const int nv = f.nodes();
    gain_out.assign(f.data().size(), 0.0);
    loss_out.assign(f.data().size(), 0.0);
    const Workspace ws = prepare(f);
    parallel_for(nv, [&](int b, int e) {
        std::vector<Event> scratch;
        for (int n = b; n < e; ++n) {
            const std::vector<Event>* ev = nullptr;
            if (settings_.mode == CollisionMode::SeededMC) {
                ev = &mc_events_[static_cast<std::size_t>(n)];
            } else {
                build_events(n, scratch);
                ev = &scratch;
            }
            for (int k = 0; k < nx; ++k) {
                double gain = 0.0, rate = 0.0;
                node_terms(*ev, ws, f, g, k, gain, rate);
                const std::size_t i = static_cast<std::size_t>(k) * static_cast<std::size_t>(nv) + static_cast<std::size_t>(n);
                gain_out[i] = gain;
                loss_out[i] = rate * f.data()[i];
            }
        }
    });
}

double CollisionOperator::gain(const Distribution& f, const PairCorrelation& g, int k, int n) const {
    std::vector<Event> scratch;
    const std::vector<Event>* ev = &scratch;
    if (settings_.mode == CollisionMode::SeededMC) ev = &mc_events_.at(static_cast<std::size_t>(n));
    else build_events(n, scratch);
    const Workspace ws = prepare(f);
    double gain = 0.0, rate = 0.0;
    node_terms(*ev, ws, f, g, k, gain, rate);
    return gain;
}

double CollisionOperator::loss(const Distribution& f, const PairCorrelation& g, int k, int n) const {
    std::vector<Event> scratch;
    const std::vector<Event>* ev = &scratch;
    if (settings_.mode == CollisionMode::SeededMC) ev = &mc_events_.at(static_cast<std::size_t>(n));
    else build_events(n, scratch);
    const Workspace ws = prepare(f);
    double gain = 0.0, rate = 0.0;
    node_terms(*ev, ws, f, g, k, gain, rate);
    return rate * f.at(k, n);
}

CollisionResult CollisionOperator::apply(const Distribution& f) const {
    const PairCorrelation g = correlation_for(f);
    std::vector<double> gain, loss;
    gain_loss(f, g, gain, loss);

    const int nx = f.cells();
    const auto nv = static_cast<std::size_t>(f.nodes());
    const double w = ps_->velocity.weight();
    CollisionResult res;
    res.j.resize(gain.size());
    res.frequency.resize(gain.size());
    res.mass_defect.assign(static_cast<std::size_t>(nx), 0.0);
    for (std::size_t i = 0; i < gain.size(); ++i) {
        res.j[i] = gain[i] - loss[i];
        const double fi = f.data()[i];
        res.frequency[i] = fi > 0.0 ? loss[i] / fi : 0.0;
        res.max_frequency = std::max(res.max_frequency, res.frequency[i]);
        res.max_abs_j = std::max(res.max_abs_j, std::abs(res.j[i]));
    }
    double fref_mass = 0.0;
    for (double v : fref_) fref_mass += v;
    fref_mass *= w;
    double max_fref = *std::max_element(fref_.begin(), fref_.end());
    for (int k = 0; k < nx; ++k) {
        double defect = 0.0;
        const std::size_t off = static_cast<std::size_t>(k) * nv;
        for (std::size_t n = 0; n < nv; ++n) defect += res.j[off + n];
        defect *= w;
        res.mass_defect[static_cast<std::size_t>(k)] = defect;
        const double c = -defect / fref_mass;
        for (std::size_t n = 0; n < nv; ++n) res.j[off + n] += c * fref_[n];
        res.max_projection = std::max(res.max_projection, std::abs(c) * max_fref);
    }
    res.projection_warning = res.max_projection > 0.01 * res.max_abs_j;
    return res;
}

std::vector<double> CollisionOperator::loss_post_moment(const Distribution& f, const PairCorrelation& g,
                                                        double (*phi)(const Vec3&)) const {
    const auto& sg = ps_->space;
    const auto& vg = ps_->velocity;
    const int nx = f.cells();
    const int nv = f.nodes();
    std::vector<double> per_node(static_cast<std::size_t>(nx) * static_cast<std::size_t>(nv), 0.0);
    parallel_for(nv, [&](int b, int e) {
        std::vector<Event> scratch;
        for (int n = b; n < e; ++n) {
            const std::vector<Event>* ev = &scratch;
            if (settings_.mode == CollisionMode::SeededMC) ev = &mc_events_[static_cast<std::size_t>(n)];
            else build_events(n, scratch);
            for (int k = 0; k < nx; ++k) {
                const double x = sg.center(k);
                double acc = 0.0;
                for (const Event& ev_i : *ev) {
                    const double s = gas_.sigma * ev_i.alpha.x;
                    const ShiftStencil minus = make_stencil(sg, x - s);
                    if (!minus.inside) continue;
                    const double gm = g(x - s, x);
                    if (gm == 0.0) continue;
                    double fb = minus.w_lo * f.at(minus.lo, ev_i.partner);
                    if (minus.w_hi != 0.0) fb += minus.w_hi * f.at(minus.hi, ev_i.partner);
                    acc += ev_i.coef * gm * fb * phi(vg.node(n) + ev_i.v * ev_i.alpha);
                }
                per_node[static_cast<std::size_t>(k) * static_cast<std::size_t>(nv) + static_cast<std::size_t>(n)] =
                    acc * f.at(k, n);
            }
        }
    });
    std::vector<double> out(static_cast<std::size_t>(nx), 0.0);
    for (int k = 0; k < nx; ++k) {
        double s = 0.0;
        for (int n = 0; n < nv; ++n) s += per_node[static_cast<std::size_t>(k) * static_cast<std::size_t>(nv) + static_cast<std::size_t>(n)];
        out[static_cast<std::size_t>(k)] = s * vg.weight();
    }
    return out;
}

std::vector<double> CollisionOperator::moment_of_J(std::span<const double> j, Moment psi) const {
    const auto& vg = ps_->velocity;
    const int nv = vg.size();
    const int nx = ps_->space.cells();
    if (j.size() != static_cast<std::size_t>(nx) * static_cast<std::size_t>(nv))
        throw std::invalid_argument("J has the wrong size");
    std::vector<double> out(static_cast<std::size_t>(nx), 0.0);
    for (int k = 0; k < nx; ++k) {
        double s = 0.0;
        for (int n = 0; n < nv; ++n)
            s += moment_weight(psi, vg.node(n)) * j[static_cast<std::size_t>(k) * static_cast<std::size_t>(nv) + static_cast<std::size_t>(n)];
        out[static_cast<std::size_t>(k)] = s * vg.weight();
    }
    return out;
}

namespace {

// f(x + s, .) for every node, zero outside the slab.
void shifted_cell(const Distribution& f, double x, std::vector<double>& out) {
    const auto& sg = f.phase_space().space;
    const ShiftStencil st = make_stencil(sg, x);
    out.assign(static_cast<std::size_t>(f.nodes()), 0.0);
    if (!st.inside) return;
    const auto lo = f.cell(st.lo);
    const auto hi = f.cell(st.hi);
    for (std::size_t n = 0; n < out.size(); ++n) out[n] = st.w_lo * lo[n] + st.w_hi * hi[n];
}

}  // namespace

std::vector<double> CollisionOperator::surface_momentum(const Distribution& f, const PairCorrelation& g,
                                                        int component) const {
    const auto& sg = ps_->space;
    const double w2 = ps_->velocity.weight() * ps_->velocity.weight();
    const double pref = gas_.sigma * gas_.sigma / gas_.mass;
    std::vector<double> out(static_cast<std::size_t>(sg.cells()), 0.0);
    parallel_for(sg.cells(), [&](int b, int e) {
        std::vector<double> fa;
        for (int k = b; k < e; ++k) {
            const double x = sg.center(k);
            double acc = 0.0;
            for (int q = 0; q < sphere_.size(); ++q) {
                const Vec3& a = sphere_.node(q);
                const double s = gas_.sigma * a.x;
                const double gv = g(x + s, x);
                if (gv == 0.0) continue;
                shifted_cell(f, x + s, fa);
                const auto sums = projected_->pair_sums(q, fa, f.cell(k));
                acc += sphere_.weight(q) * a[component] * gv * sums.quadratic;
            }
            out[static_cast<std::size_t>(k)] = -pref * w2 * acc;
        }
    });
    return out;
}

std::vector<double> CollisionOperator::surface_energy(const Distribution& f, const PairCorrelation& g) const {
    const auto& sg = ps_->space;
    const double w2 = ps_->velocity.weight() * ps_->velocity.weight();
    const double pref = gas_.sigma * gas_.sigma / (2.0 * gas_.mass);
    std::vector<double> out(static_cast<std::size_t>(sg.cells()), 0.0);
    parallel_for(sg.cells(), [&](int b, int e) {
        std::vector<double> fa;
        for (int k = b; k < e; ++k) {
            const double x = sg.center(k);
            double acc = 0.0;
            for (int q = 0; q < sphere_.size(); ++q) {
                const Vec3& a = sphere_.node(q);
                const double s = gas_.sigma * a.x;
                const double gv = g(x + s, x);
                if (gv == 0.0) continue;
                shifted_cell(f, x + s, fa);
                const auto sums = projected_->pair_sums(q, fa, f.cell(k));
                acc += sphere_.weight(q) * gv * sums.cubic;
            }
            out[static_cast<std::size_t>(k)] = -pref * w2 * acc;
        }
    });
    return out;
}

}  // namespace enskog
