#pragma once

// Data-parallel batch kernels. Each has a serial reference path selected by
// Exec::Serial; the OpenMP path evaluates the same per-element function and
// writes into a preallocated slot, so both paths agree bit for bit.

#include "fcg/coherence.hpp"
#include "fcg/discount.hpp"
#include "fcg/intertemporal.hpp"
#include "fcg/parallel.hpp"

#include <cstdint>
#include <optional>
#include <string_view>
#include <utility>
#include <vector>

namespace fcg::kernels {

// (value_a, value_b) for each shift, in input order.
[[nodiscard]] std::vector<std::pair<double, double>> scan_values(const Utility& u, const Discount& d,
                                                                 const PaymentSchedule& a0,
                                                                 const PaymentSchedule& b0,
                                                                 const std::vector<double>& shifts,
                                                                 FactorRounding rounding, Exec exec);

[[nodiscard]] std::vector<double> factor_curve(const Discount& d, const std::vector<double>& times,
                                               std::optional<double> reward, std::optional<std::string_view> state,
                                               FactorRounding rounding, Exec exec);

[[nodiscard]] std::vector<double> rho_batch(const Functional& ell, const Utility& u,
                                            const std::vector<Gamble>& fs, Exec exec);

// 1 when accepted by the natural extension, else 0.
[[nodiscard]] std::vector<std::uint8_t> accepts_batch(const AssessmentSet& a, const std::vector<Gamble>& fs,
                                                      Exec exec);

} // namespace fcg::kernels
