#pragma once

#include "fcg/discount.hpp"
#include "fcg/parallel.hpp"
#include "fcg/utility.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace fcg {

struct DatedPayment {
    double amount = 0.0;
    double time = 0.0;
    std::optional<std::string> state;

    friend bool operator==(const DatedPayment&, const DatedPayment&) = default;
};

// Non-empty list of dated payments; evaluation does not depend on order.
class PaymentSchedule {
public:
    PaymentSchedule(std::string label, std::vector<DatedPayment> payments);

    [[nodiscard]] const std::string& label() const noexcept { return label_; }
    [[nodiscard]] const std::vector<DatedPayment>& payments() const noexcept { return payments_; }
    [[nodiscard]] bool has_states() const;

    // Same payments with every time increased by delta >= 0.
    [[nodiscard]] PaymentSchedule shifted(double delta) const;

    friend bool operator==(const PaymentSchedule&, const PaymentSchedule&) = default;

private:
    std::string label_;
    std::vector<DatedPayment> payments_;
};

enum class Preference { A, B, Indifferent };

[[nodiscard]] const char* to_string(Preference p) noexcept;

inline constexpr double kDefaultIndifference = 1e-9;

// v(x, t[, s]) = u(D(t[, x][, s]) x).
[[nodiscard]] double effective_utility(const Utility& u, const Discount& d, double x, double t,
                                       std::optional<std::string_view> state = std::nullopt,
                                       FactorRounding rounding = FactorRounding::Exact);

// Sum of per-payment effective utilities. Terms are summed in a canonical
// (time, amount, state) order so the result is exactly permutation-invariant.
// Errors name the schedule and payment.
[[nodiscard]] double schedule_value(const Utility& u, const Discount& d, const PaymentSchedule& schedule,
                                    FactorRounding rounding = FactorRounding::Exact);

// A when value(a) > value(b) + tol, B when value(b) > value(a) + tol.
[[nodiscard]] Preference compare(const Utility& u, const Discount& d, const PaymentSchedule& a,
                                 const PaymentSchedule& b, double tol = kDefaultIndifference,
                                 FactorRounding rounding = FactorRounding::Exact);

struct ScanRow {
    double delta = 0.0;
    double value_a = 0.0;
    double value_b = 0.0;
    Preference preference = Preference::Indifferent;
};

struct ScanResult {
    std::vector<ScanRow> rows; // ascending delta
    Preference baseline = Preference::Indifferent; // preference at delta = 0
    // Smallest delta whose strict preference is the opposite of the baseline.
    std::optional<double> first_flip;
};

// Shifts every payment of both schedules by each delta (front-end delay)
// and compares. Shifts are evaluated independently; rows are ordered by
// delta regardless of exec.
[[nodiscard]] ScanResult reversal_scan(const Utility& u, const Discount& d, const PaymentSchedule& a0,
                                       const PaymentSchedule& b0, std::vector<double> shifts,
                                       double tol = kDefaultIndifference,
                                       FactorRounding rounding = FactorRounding::Exact,
                                       Exec exec = Exec::Parallel);

} // namespace fcg
