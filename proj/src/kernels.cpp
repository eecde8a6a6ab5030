#include "fcg/kernels.hpp"

namespace fcg::kernels {

std::vector<std::pair<double, double>> scan_values(const Utility& u, const Discount& d, const PaymentSchedule& a0,
                                                   const PaymentSchedule& b0, const std::vector<double>& shifts,
                                                   FactorRounding rounding, Exec exec) {
    std::vector<std::pair<double, double>> out(shifts.size());
    for_each_index(shifts.size(), exec, [&](std::size_t i) {
        out[i].first = schedule_value(u, d, a0.shifted(shifts[i]), rounding);
        out[i].second = schedule_value(u, d, b0.shifted(shifts[i]), rounding);
    });
    return out;
}

std::vector<double> factor_curve(const Discount& d, const std::vector<double>& times, std::optional<double> reward,
                                 std::optional<std::string_view> state, FactorRounding rounding, Exec exec) {
    std::vector<double> out(times.size());
    for_each_index(times.size(), exec, [&](std::size_t i) { out[i] = d.factor(times[i], reward, state, rounding); });
    return out;
}

std::vector<double> rho_batch(const Functional& ell, const Utility& u, const std::vector<Gamble>& fs, Exec exec) {
    std::vector<double> out(fs.size());
    for_each_index(fs.size(), exec, [&](std::size_t i) { out[i] = rho(ell, u, fs[i]); });
    return out;
}

std::vector<std::uint8_t> accepts_batch(const AssessmentSet& a, const std::vector<Gamble>& fs, Exec exec) {
    std::vector<std::uint8_t> out(fs.size());
    for_each_index(fs.size(), exec, [&](std::size_t i) { out[i] = accepts(a, fs[i]) ? 1 : 0; });
    return out;
}

} // namespace fcg::kernels
