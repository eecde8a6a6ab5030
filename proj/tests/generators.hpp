#pragma once

// Hand-rolled random generators for the property tests. Every suite seeds
// its own engine so failures reproduce.

#include "fcg/coherence.hpp"
#include "fcg/discount.hpp"
#include "fcg/gamble.hpp"
#include "fcg/intertemporal.hpp"
#include "fcg/utility.hpp"
#include "oracles.hpp"

#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

namespace gen {

class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(engine_); }
    int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(engine_); }
    bool coin(double p = 0.5) { return std::bernoulli_distribution(p)(engine_); }
    template <class T>
    const T& pick(const std::vector<T>& v) {
        return v[static_cast<std::size_t>(integer(0, static_cast<int>(v.size()) - 1))];
    }

private:
    std::mt19937_64 engine_;
};

// A utility together with an independent closed form and the reward range
// the generators draw from.
struct ZooEntry {
    std::string name;
    fcg::Utility u;
    std::function<double(double)> oracle; // already wealth-shifted where needed
    double lo;
    double hi;
    double wealth;
};

inline std::vector<ZooEntry> zoo() {
    const double w = 10.0;
    std::vector<ZooEntry> z;
    z.push_back({"linear", fcg::Utility::linear(), oracle::u_linear, -5.0, 5.0, w});
    z.push_back({"log_shift", fcg::Utility::log_shift(), oracle::u_log_shift, -0.9, 5.0, w});
    z.push_back({"sqrt", fcg::Utility::sqrt(), oracle::u_sqrt, 0.0, 5.0, w});
    for (double a : {0.0, 0.3, 0.5, 0.8})
        z.push_back({"power_discounted(" + std::to_string(a) + ")", fcg::Utility::power_discounted(a),
                     [a, w](double x) { return oracle::u_power_wealth(a, w, x); }, -9.0, 10.0, w});
    z.push_back({"composed(signed_power(3), linear)",
                 fcg::Utility::composed(fcg::Transform::signed_power(3.0), fcg::Utility::linear()),
                 [](double x) { return x * x * x; }, -3.0, 3.0, w});
    z.push_back({"composed(y + 0.1y^3, log_shift)",
                 fcg::Utility::composed(fcg::Transform::polynomial({0.0, 1.0, 0.0, 0.1}), fcg::Utility::log_shift()),
                 [](double x) {
                     const double y = std::log1p(x);
                     return y + 0.1 * y * y * y;
                 },
                 -0.9, 5.0, w});
    return z;
}

inline fcg::StateSpace space(std::size_t m) {
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < m; ++i) labels.push_back("s" + std::to_string(i + 1));
    return fcg::StateSpace(labels);
}

inline std::vector<double> rewards(Rng& rng, const ZooEntry& z, std::size_t m) {
    std::vector<double> r(m);
    for (auto& x : r) x = rng.uniform(z.lo, z.hi);
    return r;
}

// Rewards that are not all strictly negative (F1 on a single generator).
inline std::vector<double> generator_rewards(Rng& rng, const ZooEntry& z, std::size_t m) {
    for (;;) {
        auto r = rewards(rng, z, m);
        for (double x : r)
            if (x >= 0.0) return r;
    }
}

inline std::vector<double> oracle_transform(const ZooEntry& z, const std::vector<double>& r) {
    std::vector<double> out;
    for (double x : r) out.push_back(z.oracle(x));
    return out;
}

inline double random_discount_param(Rng& rng) { return rng.uniform(0.01, 1.0); }

// A random discount from every kind except scale/state dependent (those need
// extra arguments) at nesting depth <= 2.
inline fcg::Discount simple_discount(Rng& rng, int depth = 0) {
    switch (rng.integer(0, depth >= 1 ? 3 : 4)) {
    case 0: return fcg::Discount::exponential(rng.uniform(0.0, 1.0));
    case 1: return fcg::Discount::hyperbolic(rng.uniform(0.01, 2.0));
    case 2: return fcg::Discount::quasi_hyperbolic(rng.uniform(0.05, 1.0), rng.uniform(0.5, 0.999));
    case 3: return fcg::Discount::generalized_hyperbolic(rng.uniform(0.01, 2.0), rng.uniform(0.1, 4.0));
    default:
        return fcg::Discount::hybrid(rng.uniform(0.0, 1.0), simple_discount(rng, depth + 1),
                                     simple_discount(rng, depth + 1));
    }
}

inline fcg::PaymentSchedule schedule(Rng& rng, const std::string& label, int max_payments, double max_amount,
                                     double max_time) {
    std::vector<fcg::DatedPayment> pays;
    const int n = rng.integer(1, max_payments);
    for (int i = 0; i < n; ++i) pays.push_back({rng.uniform(1.0, max_amount), rng.uniform(0.0, max_time), {}});
    return fcg::PaymentSchedule(label, pays);
}

// Random strictly increasing phi with phi(0) = 0.
inline fcg::Transform increasing_transform(Rng& rng) {
    switch (rng.integer(0, 2)) {
    case 0: return fcg::Transform::signed_power(rng.uniform(0.2, 4.0));
    case 1:
        return fcg::Transform::polynomial(
            {0.0, rng.uniform(0.1, 3.0), 0.0, rng.uniform(0.0, 1.0), 0.0, rng.uniform(0.0, 0.2)});
    default: {
        std::vector<std::pair<double, double>> knots{{0.0, 0.0}};
        double y = 0.0, v = 0.0;
        for (int i = 0; i < 4; ++i) {
            y += rng.uniform(0.2, 2.0);
            v += rng.uniform(0.1, 3.0);
            knots.emplace_back(y, v);
        }
        y = 0.0;
        v = 0.0;
        for (int i = 0; i < 4; ++i) {
            y -= rng.uniform(0.2, 2.0);
            v -= rng.uniform(0.1, 3.0);
            knots.insert(knots.begin(), {y, v});
        }
        return fcg::Transform::tabulated(knots);
    }
    }
}

} // namespace gen
