#include "heisen/quadrature.hpp"

#include <stdexcept>

namespace heisen {

GaussLegendre::GaussLegendre(int n) {
    if (n < 2) throw std::invalid_argument("GaussLegendre: need n >= 2");
    node.resize(static_cast<size_t>(n));
    weight.resize(static_cast<size_t>(n));
    const int m = (n + 1) / 2;
    for (int i = 0; i < m; ++i) {
        double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            // recurrence for P_n(x) and derivative
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        node[static_cast<size_t>(i)] = -x;
        node[static_cast<size_t>(n - 1 - i)] = x;
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        weight[static_cast<size_t>(i)] = w;
        weight[static_cast<size_t>(n - 1 - i)] = w;
    }
}

}  // namespace heisen
