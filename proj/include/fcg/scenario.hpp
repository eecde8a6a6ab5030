#pragma once

#include "fcg/coherence.hpp"
#include "fcg/config.hpp"
#include "fcg/discount.hpp"
#include "fcg/intertemporal.hpp"
#include "fcg/utility.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace fcg {

inline constexpr double kDefaultWealth = 1.0e6;

struct ScanSpec {
    std::string a;
    std::string b;
    std::vector<double> shifts;
};

struct Units {
    std::string currency;
    std::string time;
};

// Everything a scenario file can declare. Every component is validated when
// the file is loaded; unknown keys are errors.
struct ScenarioConfig {
    std::optional<Utility> utility;
    std::optional<Discount> discount;
    std::vector<PaymentSchedule> schedules;
    std::optional<AssessmentSet> assessments;
    std::optional<double> epsilon;
    std::optional<ScanSpec> scan;
    std::optional<double> wealth; // default wealth floor for gambles
    std::optional<Units> units;

    [[nodiscard]] const PaymentSchedule* find_schedule(std::string_view label) const;
};

// Parse + validate. All failures surface as ParseError with a position.
[[nodiscard]] ScenarioConfig load_scenario(std::string_view text);
[[nodiscard]] ScenarioConfig build_scenario(const config::Block& root);

[[nodiscard]] config::Block to_config(const ScenarioConfig& scenario);
[[nodiscard]] config::Value to_config(const Utility& u);
[[nodiscard]] config::Value to_config(const Discount& d);

[[nodiscard]] Utility utility_from_config(const config::Value& v);
[[nodiscard]] Discount discount_from_config(const config::Value& v);

} // namespace fcg
