#include "enskog/projection.hpp"

#include <algorithm>
#include <numeric>

namespace enskog {

ProjectedSphere::ProjectedSphere(const VelocityGrid& vgrid, const SphereQuadrature& sphere)
    : sphere_(sphere), nodes_(vgrid.size()) {
    const auto n = static_cast<std::size_t>(nodes_);
    order_.resize(n * static_cast<std::size_t>(sphere.size()));
    u_.resize(order_.size());
    std::vector<double> proj(n);
    std::vector<int> idx(n);
    for (int q = 0; q < sphere.size(); ++q) {
        const Vec3& a = sphere.node(q);
        for (std::size_t i = 0; i < n; ++i) proj[i] = dot(vgrid.node(static_cast<int>(i)), a);
        std::iota(idx.begin(), idx.end(), 0);
        std::stable_sort(idx.begin(), idx.end(),
                         [&](int l, int r) { return proj[static_cast<std::size_t>(l)] < proj[static_cast<std::size_t>(r)]; });
        const std::size_t off = static_cast<std::size_t>(q) * n;
        for (std::size_t i = 0; i < n; ++i) {
            order_[off + i] = idx[i];
            u_[off + i] = proj[static_cast<std::size_t>(idx[i])];
        }
    }
}

ProjectedSphere::PairSums ProjectedSphere::pair_sums(int q, std::span<const double> fa,
                                                     std::span<const double> fb) const {
    const auto n = static_cast<std::size_t>(nodes_);
    const std::size_t off = static_cast<std::size_t>(q) * n;
    const int* ord = order_.data() + off;
    const double* u = u_.data() + off;
    double s0 = 0.0, s1 = 0.0, s2 = 0.0, s3 = 0.0;
    std::size_t p = 0;
    PairSums out;
    for (std::size_t m = 0; m < n; ++m) {
        const double um = u[m];
        while (p < n && u[p] < um) {
            const double a = fa[static_cast<std::size_t>(ord[p])];
            const double up = u[p];
            s0 += a;
            s1 += a * up;
            s2 += a * up * up;
            s3 += a * up * up * up;
            ++p;
        }
        const double b = fb[static_cast<std::size_t>(ord[m])];
        if (b == 0.0) continue;
        const double um2 = um * um;
        out.quadratic += b * (um2 * s0 - 2.0 * um * s1 + s2);
        out.cubic += b * (um2 * um * s0 - um2 * s1 - um * s2 + s3);
    }
    return out;
}

}  // namespace enskog
