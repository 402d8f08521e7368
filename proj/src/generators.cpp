#include "graded/generators.hpp"

#include "graded/polynomial.hpp"

#include <cmath>

namespace graded {

ControlField random_bump_control(int k, std::mt19937_64& rng, double a, double b) {
    std::uniform_real_distribution<double> u(-1, 1), pos(0, 1);
    Vec amp(k), freq(k);
    for (int i = 0; i < k; ++i) {
        amp(i) = u(rng);
        freq(i) = 3 * u(rng);
    }
    const double lo = a + 0.3 * (b - a) * pos(rng), hi = b - 0.3 * (b - a) * pos(rng);
    return {[=](double t) {
                Vec g = Vec::Zero(k);
                if (t <= lo || t >= hi) return g;
                const double s = std::pow(std::sin(M_PI * (t - lo) / (hi - lo)), 4);
                for (int i = 0; i < k; ++i) g(i) = amp(i) * s * std::cos(freq(i) * t);
                return g;
            },
            true};
}

Curve random_horizontal_heisenberg(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(-1, 1);
    const Polynomial x({u(rng), 1.0, 0.25 * u(rng)});
    const Polynomial y({u(rng), u(rng), u(rng), 0.5 * u(rng)});
    const Polynomial dt = (x * y.derivative() - y * x.derivative()) * Polynomial({0.5});
    const Polynomial t = dt.antiderivative() + Polynomial({u(rng)});
    return polynomial_curve("random horizontal", {x, y, t}, 0, 1);
}

MetricFn random_spd_metric(int n, std::mt19937_64& rng, double amplitude) {
    std::uniform_real_distribution<double> u(-1, 1);
    Mat base = Mat::Zero(n, n), wave = Mat::Zero(n, n), freq = Mat::Zero(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j <= i; ++j) {
            base(i, j) = amplitude * u(rng);
            wave(i, j) = 0.5 * amplitude * u(rng);
            freq(i, j) = u(rng);
        }
    return [=](const Vec& p) {
        const double s = p.sum();
        Mat l = Mat::Identity(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j <= i; ++j) l(i, j) += base(i, j) + wave(i, j) * std::sin(freq(i, j) * s);
        return Mat(l * l.transpose());
    };
}

}  // namespace graded
