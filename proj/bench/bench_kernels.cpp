// Serial vs OpenMP timings for the batch kernels. Each run also checks that
// both paths produce identical bytes.

#include "fcg/coherence.hpp"
#include "fcg/kernels.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cstring>
#include <iomanip>
#include <iostream>
#include <random>

using namespace fcg;

namespace {

template <class T>
bool same_bytes(const std::vector<T>& a, const std::vector<T>& b) {
    return a.size() == b.size() && std::memcmp(a.data(), b.data(), a.size() * sizeof(T)) == 0;
}

template <class F>
double best_ms(int reps, F&& f) {
    double best = 1e300;
    for (int r = 0; r < reps; ++r) {
        const auto t0 = std::chrono::steady_clock::now();
        f();
        best = std::min(best, std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count());
    }
    return best;
}

struct Row {
    std::string name;
    std::size_t n;
    double serial_ms;
    double parallel_ms;
    bool identical;
};

template <class Run>
Row measure(const std::string& name, std::size_t n, int reps, Run run) {
    decltype(run(Exec::Serial)) s, p;
    const double ts = best_ms(reps, [&] { s = run(Exec::Serial); });
    const double tp = best_ms(reps, [&] { p = run(Exec::Parallel); });
    return {name, n, ts, tp, same_bytes(s, p)};
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"benchmark serial vs parallel kernels"};
    std::size_t n = 200000;
    int reps = 3;
    app.add_option("-n,--size", n, "elements per kernel")->check(CLI::PositiveNumber);
    app.add_option("-r,--reps", reps, "repetitions; best time is reported")->check(CLI::PositiveNumber);
    CLI11_PARSE(app, argc, argv);

    std::mt19937_64 rng(42);
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    std::vector<double> times(n);
    for (auto& t : times) t = 50.0 * unit(rng);
    std::vector<double> shifts(n);
    for (std::size_t i = 0; i < n; ++i) shifts[i] = 0.001 * static_cast<double>(i);

    const auto d = Discount::hybrid(0.5, Discount::generalized_hyperbolic(0.2, 2.0),
                                    Discount::scale_dependent(Discount::exponential(0.3), Eta::inverse_log(10.0)));
    const auto u = Utility::power_discounted(0.5);
    const PaymentSchedule a("A", {{1000, 0, {}}, {500, 2, {}}});
    const PaymentSchedule b("B", {{1300, 1, {}}, {700, 4, {}}});

    const StateSpace space({"s1", "s2", "s3", "s4"});
    std::vector<Gamble> accepted;
    for (int i = 0; i < 4; ++i) {
        std::vector<double> r(4);
        for (auto& x : r) x = 20.0 * unit(rng) - 5.0;
        accepted.emplace_back(space, r, 100.0);
    }
    const AssessmentSet set(space, u, accepted);
    const std::size_t gamble_count = std::max<std::size_t>(1, n / 100);
    std::vector<Gamble> gambles;
    for (std::size_t i = 0; i < gamble_count; ++i) {
        std::vector<double> r(4);
        for (auto& x : r) x = 20.0 * unit(rng) - 10.0;
        gambles.emplace_back(space, r, 100.0);
    }
    const Functional ell({0.1, 0.2, 0.3, 0.4});

    std::vector<Row> rows;
    rows.push_back(measure("factor_curve", n, reps, [&](Exec e) {
        return kernels::factor_curve(d, times, 1500.0, std::nullopt, FactorRounding::Exact, e);
    }));
    rows.push_back(measure("scan_values", n, reps, [&](Exec e) {
        std::vector<double> flat;
        for (const auto& [va, vb] : kernels::scan_values(u, d.first(), a, b, shifts, FactorRounding::Exact, e)) {
            flat.push_back(va);
            flat.push_back(vb);
        }
        return flat;
    }));
    std::vector<Gamble> many;
    many.reserve(n);
    for (std::size_t i = 0; i < n; ++i) many.push_back(gambles[i % gambles.size()]);
    rows.push_back(measure("rho_batch", n, reps, [&](Exec e) { return kernels::rho_batch(ell, u, many, e); }));
    rows.push_back(measure("accepts_batch", gamble_count, reps,
                           [&](Exec e) { return kernels::accepts_batch(set, gambles, e); }));

    std::cout << "threads: " << max_threads() << (openmp_enabled() ? " (OpenMP)" : " (OpenMP disabled)") << "\n";
    std::cout << std::left << std::setw(16) << "kernel" << std::right << std::setw(10) << "n" << std::setw(14)
              << "serial_ms" << std::setw(14) << "parallel_ms" << std::setw(10) << "speedup" << "  identical\n";
    bool all_identical = true;
    for (const auto& r : rows) {
        all_identical = all_identical && r.identical;
        std::cout << std::left << std::setw(16) << r.name << std::right << std::setw(10) << r.n << std::fixed
                  << std::setprecision(3) << std::setw(14) << r.serial_ms << std::setw(14) << r.parallel_ms
                  << std::setprecision(2) << std::setw(10) << r.serial_ms / r.parallel_ms << "  "
                  << (r.identical ? "yes" : "NO") << "\n";
    }
    return all_identical ? 0 : 1;
}
