#include "enskog/boundary.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "enskog/distribution.hpp"

namespace enskog {

void validate(const WallSpec& spec) {
    switch (spec.kind) {
        case WallKernelKind::Diffuse:
            break;
        case WallKernelKind::Maxwell:
            if (!(spec.accommodation > 0.0 && spec.accommodation <= 1.0))
                throw std::invalid_argument("Maxwell accommodation must lie in (0, 1], got " +
                                            std::to_string(spec.accommodation));
            break;
        case WallKernelKind::CercignaniLampis:
            if (!(spec.alpha_n > 0.0 && spec.alpha_n <= 1.0))
                throw std::invalid_argument("CL alpha_n must lie in (0, 1], got " + std::to_string(spec.alpha_n));
            if (!(spec.alpha_t > 0.0 && spec.alpha_t < 2.0))
                throw std::invalid_argument("CL alpha_t must lie in (0, 2), got " + std::to_string(spec.alpha_t));
            break;
    }
}

void sinkhorn_balance(std::vector<double>& k, std::span<const double> marginal, int n, double tol,
                      int max_iterations) {
    const auto nn = static_cast<std::size_t>(n);
    std::vector<double> sums(nn);
    for (int it = 0; it < max_iterations; ++it) {
        for (std::size_t e = 0; e < nn; ++e) {
            double s = 0.0;
            for (std::size_t i = 0; i < nn; ++i) s += k[e * nn + i];
            const double scale = s > 0.0 ? marginal[e] / s : 0.0;
            for (std::size_t i = 0; i < nn; ++i) k[e * nn + i] *= scale;
        }
        double err = 0.0;
        std::fill(sums.begin(), sums.end(), 0.0);
        for (std::size_t e = 0; e < nn; ++e)
            for (std::size_t i = 0; i < nn; ++i) sums[i] += k[e * nn + i];
        for (std::size_t i = 0; i < nn; ++i) err = std::max(err, std::abs(sums[i] - marginal[i]) / marginal[i]);
        if (err < tol) return;
        for (std::size_t i = 0; i < nn; ++i) {
            const double scale = sums[i] > 0.0 ? marginal[i] / sums[i] : 0.0;
            for (std::size_t e = 0; e < nn; ++e) k[e * nn + i] *= scale;
        }
    }
    throw std::runtime_error("kernel balancing did not converge");
}

WallKernel::WallKernel(const VelocityGrid& grid, WallSpec spec, double wall_temperature, double gas_constant,
                       WallSide side)
    : grid_(grid), spec_(spec), t_w_(wall_temperature), r_(gas_constant), side_(side) {
    validate(spec_);
    if (!(wall_temperature > 0.0) || !(gas_constant > 0.0))
        throw std::invalid_argument("wall temperature and gas constant must be positive");
    fw_ = unit_maxwellian_nodes(grid_, t_w_, r_);
    for (int n = 0; n < grid_.size(); ++n) {
        if (normal_velocity(n) > 0.0) emitted_.push_back(n);
        else impinging_.push_back(n);
    }
    const double w = grid_.weight();
    double norm = 0.0;
    for (int e : emitted_) norm += normal_velocity(e) * fw_[static_cast<std::size_t>(e)] * w;
    diffuse_profile_.resize(emitted_.size());
    for (std::size_t a = 0; a < emitted_.size(); ++a) {
        const int e = emitted_[a];
        diffuse_profile_[a] = normal_velocity(e) * fw_[static_cast<std::size_t>(e)] * w / norm;
    }

    if (spec_.kind == WallKernelKind::CercignaniLampis) {
        const int n = grid_.per_axis();
        const int half = n / 2;
        const double rt = r_ * t_w_;
        const double an = spec_.alpha_n;
        const double at = spec_.alpha_t;
        // Normal factor: flux marginal c exp(-c^2/2RT) on both sides.
        std::vector<double> c(static_cast<std::size_t>(half));
        std::vector<double> marginal(static_cast<std::size_t>(half));
        for (int h = 0; h < half; ++h) {
            c[static_cast<std::size_t>(h)] = grid_.axis_value(half + h);
            marginal[static_cast<std::size_t>(h)] = c[static_cast<std::size_t>(h)] *
                                                    std::exp(-c[static_cast<std::size_t>(h)] * c[static_cast<std::size_t>(h)] / (2.0 * rt));
        }
        pn_.assign(static_cast<std::size_t>(half * half), 0.0);
        for (int e = 0; e < half; ++e) {
            for (int i = 0; i < half; ++i) {
                const double ce = c[static_cast<std::size_t>(e)];
                const double ci = c[static_cast<std::size_t>(i)];
                const double arg = std::sqrt(1.0 - an) * ce * ci / (an * rt);
                // log of c_e/(a RT) exp(-(c_e^2 + (1-a) c_i^2)/(2 a RT)) I0(arg)
                double log_i0 = arg;
                if (arg < 600.0) log_i0 = std::log(std::cyl_bessel_i(0.0, arg));
                else log_i0 = arg - 0.5 * std::log(2.0 * kPi * arg);
                const double lp = std::log(ce / (an * rt)) - (ce * ce + (1.0 - an) * ci * ci) / (2.0 * an * rt) + log_i0;
                // times the impinging flux marginal, which the balancing keeps fixed
                pn_[static_cast<std::size_t>(e * half + i)] = std::exp(lp) * marginal[static_cast<std::size_t>(i)];
            }
        }
        sinkhorn_balance(pn_, marginal, half);
        for (int e = 0; e < half; ++e)
            for (int i = 0; i < half; ++i) pn_[static_cast<std::size_t>(e * half + i)] /= marginal[static_cast<std::size_t>(i)];

        // Tangential factor: Gaussian with variance a_t (2 - a_t) RT about (1 - a_t) xi_t.
        std::vector<double> tm(static_cast<std::size_t>(n));
        for (int j = 0; j < n; ++j) {
            const double v = grid_.axis_value(j);
            tm[static_cast<std::size_t>(j)] = std::exp(-v * v / (2.0 * rt));
        }
        const double var = at * (2.0 - at) * rt;
        pt_.assign(static_cast<std::size_t>(n * n), 0.0);
        for (int e = 0; e < n; ++e) {
            for (int i = 0; i < n; ++i) {
                const double d = grid_.axis_value(e) - (1.0 - at) * grid_.axis_value(i);
                pt_[static_cast<std::size_t>(e * n + i)] = std::exp(-d * d / (2.0 * var)) * tm[static_cast<std::size_t>(i)];
            }
        }
        sinkhorn_balance(pt_, tm, n);
        for (int e = 0; e < n; ++e)
            for (int i = 0; i < n; ++i) pt_[static_cast<std::size_t>(e * n + i)] /= tm[static_cast<std::size_t>(i)];
    }
}

double WallKernel::normal_velocity(int node) const {
    const double vx = grid_.node(node).x;
    return side_ == WallSide::Left ? vx : -vx;
}

int WallKernel::half_index(int axis_index) const {
    const int half = grid_.per_axis() / 2;
    const double v = grid_.axis_value(axis_index);
    return v > 0.0 ? axis_index - half : half - 1 - axis_index;
}

double WallKernel::reflection_probability(int e, int i) const {
    if (normal_velocity(e) <= 0.0 || normal_velocity(i) >= 0.0)
        throw std::invalid_argument("reflection probability needs an emitted and an impinging node");
    auto diffuse = [&] {
        const auto it = std::lower_bound(emitted_.begin(), emitted_.end(), e);
        return diffuse_profile_[static_cast<std::size_t>(it - emitted_.begin())];
    };
    switch (spec_.kind) {
        case WallKernelKind::Diffuse:
            return diffuse();
        case WallKernelKind::Maxwell: {
            const double spec = grid_.mirror_x(i) == e ? 1.0 : 0.0;
            return spec_.accommodation * diffuse() + (1.0 - spec_.accommodation) * spec;
        }
        case WallKernelKind::CercignaniLampis: {
            const int n = grid_.per_axis();
            const int half = n / 2;
            const auto ie = grid_.indices(e);
            const auto ii = grid_.indices(i);
            const double pn = pn_[static_cast<std::size_t>(half_index(ie[0]) * half + half_index(ii[0]))];
            const double py = pt_[static_cast<std::size_t>(ie[1] * n + ii[1])];
            const double pz = pt_[static_cast<std::size_t>(ie[2] * n + ii[2])];
            return pn * py * pz;
        }
    }
    return 0.0;
}

void WallKernel::reflect(std::span<double> wall) const {
    if (wall.size() != static_cast<std::size_t>(grid_.size()))
        throw std::invalid_argument("wall state must cover every velocity node");
    for (int i : impinging_)
        if (!(wall[static_cast<std::size_t>(i)] >= 0.0))
            throw std::invalid_argument("impinging distribution must be non-negative");

    switch (spec_.kind) {
        case WallKernelKind::Diffuse:
        case WallKernelKind::Maxwell: {
            double flux = 0.0;
            for (int i : impinging_) flux += -normal_velocity(i) * wall[static_cast<std::size_t>(i)];
            flux *= grid_.weight();
            const double a = spec_.kind == WallKernelKind::Diffuse ? 1.0 : spec_.accommodation;
            for (std::size_t k = 0; k < emitted_.size(); ++k) {
                const int e = emitted_[k];
                const double vn = normal_velocity(e);
                const double diffuse = diffuse_profile_[k] * flux / (vn * grid_.weight());
                const double specular = wall[static_cast<std::size_t>(grid_.mirror_x(e))];
                wall[static_cast<std::size_t>(e)] = a == 1.0 ? diffuse : a * diffuse + (1.0 - a) * specular;
            }
            return;
        }
        case WallKernelKind::CercignaniLampis: {
            const int n = grid_.per_axis();
            const int half = n / 2;
            const auto nn = static_cast<std::size_t>(n);
            // Impinging flux on a (normal half index, y, z) tensor.
            std::vector<double> a(static_cast<std::size_t>(half) * nn * nn, 0.0);
            for (int i : impinging_) {
                const auto idx = grid_.indices(i);
                a[(static_cast<std::size_t>(half_index(idx[0])) * nn + static_cast<std::size_t>(idx[1])) * nn +
                  static_cast<std::size_t>(idx[2])] = -normal_velocity(i) * wall[static_cast<std::size_t>(i)];
            }
            std::vector<double> b(a.size(), 0.0);
            // normal
            for (int he = 0; he < half; ++he)
                for (int hi = 0; hi < half; ++hi) {
                    const double p = pn_[static_cast<std::size_t>(he * half + hi)];
                    if (p == 0.0) continue;
                    const double* src = a.data() + static_cast<std::size_t>(hi) * nn * nn;
                    double* dst = b.data() + static_cast<std::size_t>(he) * nn * nn;
                    for (std::size_t q = 0; q < nn * nn; ++q) dst[q] += p * src[q];
                }
            // y
            std::fill(a.begin(), a.end(), 0.0);
            for (int h = 0; h < half; ++h)
                for (std::size_t ye = 0; ye < nn; ++ye)
                    for (std::size_t yi = 0; yi < nn; ++yi) {
                        const double p = pt_[ye * nn + yi];
                        if (p == 0.0) continue;
                        const double* src = b.data() + (static_cast<std::size_t>(h) * nn + yi) * nn;
                        double* dst = a.data() + (static_cast<std::size_t>(h) * nn + ye) * nn;
                        for (std::size_t z = 0; z < nn; ++z) dst[z] += p * src[z];
                    }
            // z
            std::fill(b.begin(), b.end(), 0.0);
            for (std::size_t row = 0; row < static_cast<std::size_t>(half) * nn; ++row)
                for (std::size_t ze = 0; ze < nn; ++ze) {
                    double s = 0.0;
                    for (std::size_t zi = 0; zi < nn; ++zi) s += pt_[ze * nn + zi] * a[row * nn + zi];
                    b[row * nn + ze] = s;
                }
            for (int e : emitted_) {
                const auto idx = grid_.indices(e);
                const double flux = b[(static_cast<std::size_t>(half_index(idx[0])) * nn + static_cast<std::size_t>(idx[1])) * nn +
                                      static_cast<std::size_t>(idx[2])];
                wall[static_cast<std::size_t>(e)] = flux / normal_velocity(e);
            }
            return;
        }
    }
}

std::vector<double> WallKernel::reflect_copy(std::span<const double> wall) const {
    std::vector<double> out(wall.begin(), wall.end());
    reflect(out);
    return out;
}

double WallKernel::normalization_error() const {
    double err = 0.0;
    for (int i : impinging_) {
        double s = 0.0;
        for (int e : emitted_) s += reflection_probability(e, i);
        err = std::max(err, std::abs(s - 1.0));
    }
    return err;
}

double WallKernel::equilibrium_error() const {
    std::vector<double> wall(fw_);
    for (int e : emitted_) wall[static_cast<std::size_t>(e)] = 0.0;
    reflect(wall);
    double err = 0.0;
    for (int e : emitted_) {
        const auto ee = static_cast<std::size_t>(e);
        err = std::max(err, std::abs(wall[ee] - fw_[ee]) / fw_[ee]);
    }
    return err;
}

double dg_boundary_flux(const VelocityGrid& grid, std::span<const double> wall, double wall_temperature,
                        double gas_constant, WallSide side) {
    if (wall.size() != static_cast<std::size_t>(grid.size()))
        throw std::invalid_argument("wall state must cover every velocity node");
    double s = 0.0;
    for (int n = 0; n < grid.size(); ++n) {
        const double f = wall[static_cast<std::size_t>(n)];
        if (!(f >= 0.0)) throw std::invalid_argument("negative distribution at the wall");
        if (f == 0.0) continue;
        const Vec3& xi = grid.node(n);
        const double vn = side == WallSide::Left ? xi.x : -xi.x;
        const double fw = maxwellian(1.0, {}, wall_temperature, gas_constant, xi);
        s += vn * f * std::log(f / fw);
    }
    return s * grid.weight();
}

}  // namespace enskog
