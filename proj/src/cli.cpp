#include "fcg/cli.hpp"

#include "fcg/coherence.hpp"
#include "fcg/errors.hpp"
#include "fcg/format.hpp"
#include "fcg/kernels.hpp"
#include "fcg/scenario.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

namespace fcg::cli {

namespace {

// Bad flags or an incomplete config; exit 2.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Options {
    std::string config_path;
    double tol = 1e-9;
    bool paper_rounding = false;
    std::optional<double> epsilon;
    bool dump_lp = false;

    // curves
    std::string regime;
    std::string t = "0:10:1";
    std::string beta, delta, k, p, r, lambda, x;
    std::string log_base = "10";
    std::string state = "s";

    [[nodiscard]] FactorRounding rounding() const {
        return paper_rounding ? FactorRounding::TwoDecimals : FactorRounding::Exact;
    }
};

ScenarioConfig load(const Options& o) {
    if (o.config_path.empty()) throw UsageError("missing --config PATH");
    std::ifstream in(o.config_path, std::ios::binary);
    if (!in) throw UsageError("cannot read config '" + o.config_path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    try {
        return load_scenario(buf.str());
    } catch (const ParseError& e) {
        throw UsageError(o.config_path + ":" + e.what());
    }
}

const Utility& need_utility(const ScenarioConfig& sc) {
    if (!sc.utility) throw UsageError("config has no utility block");
    return *sc.utility;
}

const Discount& need_discount(const ScenarioConfig& sc) {
    if (!sc.discount) throw UsageError("config has no discount block");
    return *sc.discount;
}

void warn_ignored_states(const ScenarioConfig& sc, std::ostream& err) {
    if (!sc.discount || sc.discount->needs_state()) return;
    for (const auto& s : sc.schedules)
        if (s.has_states()) {
            err << "warning: schedule '" << s.label() << "' carries state labels but the discount ignores them\n";
            return;
        }
}

void echo_units(const ScenarioConfig& sc, std::ostream& out) {
    if (sc.units) out << "# units: currency=" << sc.units->currency << ", time=" << sc.units->time << '\n';
}

int cmd_eval(const Options& o, std::ostream& out, std::ostream& err) {
    const ScenarioConfig sc = load(o);
    if (sc.schedules.empty()) throw UsageError("no schedules");
    const Utility& u = need_utility(sc);
    const Discount& d = need_discount(sc);
    warn_ignored_states(sc, err);

    std::vector<double> values;
    for (const auto& s : sc.schedules) values.push_back(schedule_value(u, d, s, o.rounding()));
    out << "schedule,value\n";
    for (std::size_t i = 0; i < values.size(); ++i)
        out << csv_field(sc.schedules[i].label()) << ',' << format_g(values[i], 6) << '\n';
    echo_units(sc, out);
    return kOk;
}

int cmd_scan(const Options& o, std::ostream& out, std::ostream& err) {
    const ScenarioConfig sc = load(o);
    if (sc.schedules.empty()) throw UsageError("no schedules");
    if (!sc.scan) throw UsageError("config has no scan block");
    const Utility& u = need_utility(sc);
    const Discount& d = need_discount(sc);
    warn_ignored_states(sc, err);

    const auto result = reversal_scan(u, d, *sc.find_schedule(sc.scan->a), *sc.find_schedule(sc.scan->b),
                                      sc.scan->shifts, o.tol, o.rounding());
    out << "delta,value_a,value_b,preference\n";
    for (const auto& row : result.rows)
        out << format_g(row.delta, 10) << ',' << format_g(row.value_a, 10) << ',' << format_g(row.value_b, 10)
            << ',' << to_string(row.preference) << '\n';
    if (result.first_flip)
        out << "# first reversal at delta=" << format_g(*result.first_flip, 10) << '\n';
    else
        out << "# no reversal\n";
    echo_units(sc, out);
    return kOk;
}

double epsilon_for(const Options& o, const ScenarioConfig& sc) {
    const double eps = o.epsilon.value_or(sc.epsilon.value_or(kDefaultRejectionMargin));
    if (!(eps > 0.0 && eps <= 1e-2)) throw UsageError("epsilon must lie in (0, 0.01]");
    return eps;
}

lp::SolveOptions lp_options(const Options& o, std::ostream& err) {
    lp::SolveOptions opts;
    if (o.dump_lp) opts.trace = &err;
    return opts;
}

const AssessmentSet& need_assessments(const ScenarioConfig& sc) {
    if (!sc.assessments) throw UsageError("config has no assessments block");
    return *sc.assessments;
}

int cmd_check(const Options& o, std::ostream& out, std::ostream& err) {
    const ScenarioConfig sc = load(o);
    const AssessmentSet& a = need_assessments(sc);
    const AuditReport report = audit(a, epsilon_for(o, sc), lp_options(o, err));

    for (const auto& f : report.findings) out << f.text << '\n';
    out << "avoids_partial_loss: " << (report.partial_loss.avoids ? "true" : "false") << '\n';
    if (report.fit) {
        if (report.fit->feasible)
            out << "representation: weights=" << format_vector(report.fit->functional->weights())
                << " margin=" << format_g(report.fit->margin, 10) << '\n';
        else
            out << "representation: no separating functional at epsilon=" << format_g(report.fit->epsilon) << '\n';
    }
    if (report.coherent()) {
        out << "verdict: coherent\n";
        return kOk;
    }
    out << "verdict: incoherent (" << report.findings.size() << " finding"
        << (report.findings.size() == 1 ? "" : "s") << ")\n";
    return kIncoherent;
}

int cmd_fit(const Options& o, std::ostream& out, std::ostream& err) {
    const ScenarioConfig sc = load(o);
    const AssessmentSet& a = need_assessments(sc);
    const FitResult fit = fit_functional(a, epsilon_for(o, sc), lp_options(o, err));
    if (!fit.feasible) {
        std::vector<double> acc(fit.conflict_accepted.begin(), fit.conflict_accepted.end());
        std::vector<double> rej(fit.conflict_rejected.begin(), fit.conflict_rejected.end());
        out << "# infeasible at epsilon=" << format_g(fit.epsilon) << ": conflicting accepted=" << format_vector(acc)
            << " rejected=" << format_vector(rej) << '\n';
        return kIncoherent;
    }
    out << "state,weight\n";
    const auto& w = fit.functional->weights();
    for (std::size_t i = 0; i < w.size(); ++i)
        out << csv_field(a.space().label(i)) << ',' << format_g(w[i], 10) << '\n';
    out << "# margin=" << format_g(fit.margin, 10) << " epsilon=" << format_g(fit.epsilon) << '\n';
    return kOk;
}

// --- curves -----------------------------------------------------------------

struct Param {
    const char* name;
    std::vector<double> values;
};

std::vector<double> required(const std::string& flag, const std::string& text) {
    if (text.empty()) throw UsageError("--" + flag + " is required for this regime");
    try {
        return parse_range(text);
    } catch (const InvalidArgument& e) {
        throw UsageError("--" + flag + ": " + e.what());
    }
}

int cmd_curves(const Options& o, std::ostream& out) {
    const std::vector<double> times = required("t", o.t);
    for (double t : times)
        if (!(t >= 0.0)) throw UsageError("--t values must be >= 0");

    std::vector<Param> params;
    std::function<Discount(const std::vector<double>&)> make;
    std::optional<std::size_t> reward_index;
    bool stateful = false;

    const std::string& g = o.regime;
    if (g == "quasi") {
        params = {{"beta", required("beta", o.beta)}, {"delta", required("delta", o.delta)}};
        make = [](const auto& v) { return Discount::quasi_hyperbolic(v[0], v[1]); };
    } else if (g == "hyperbolic") {
        params = {{"k", required("k", o.k)}};
        make = [](const auto& v) { return Discount::hyperbolic(v[0]); };
    } else if (g == "exponential") {
        params = {{"r", required("r", o.r)}};
        make = [](const auto& v) { return Discount::exponential(v[0]); };
    } else if (g == "genhyp") {
        params = {{"k", required("k", o.k)}, {"p", required("p", o.p)}};
        make = [](const auto& v) { return Discount::generalized_hyperbolic(v[0], v[1]); };
    } else if (g == "scale") {
        params = {{"r", required("r", o.r)}, {"log_base", required("log-base", o.log_base)}, {"x", required("x", o.x)}};
        make = [](const auto& v) { return Discount::scale_dependent(Discount::exponential(v[0]), Eta::inverse_log(v[1])); };
        reward_index = 2;
    } else if (g == "state") {
        params = {{"r", required("r", o.r)}};
        const std::string label = o.state;
        make = [label](const auto& v) { return Discount::state_dependent({{label, v[0]}}); };
        stateful = true;
    } else if (g == "hybrid") {
        params = {{"lambda", required("lambda", o.lambda)}, {"r", required("r", o.r)}, {"k", required("k", o.k)}};
        make = [](const auto& v) {
            return Discount::hybrid(v[0], Discount::exponential(v[1]), Discount::hyperbolic(v[2]));
        };
    } else {
        throw UsageError("unknown regime '" + g + "'");
    }

    out << "regime,param_set,t,factor\n";
    std::vector<double> current(params.size());
    std::function<void(std::size_t)> emit = [&](std::size_t depth) {
        if (depth < params.size()) {
            for (double v : params[depth].values) {
                current[depth] = v;
                emit(depth + 1);
            }
            return;
        }
        Discount d = [&] {
            try {
                return make(current);
            } catch (const InvalidArgument& e) {
                throw UsageError(e.what());
            }
        }();
        std::string set;
        for (std::size_t i = 0; i < params.size(); ++i) {
            if (i) set += ';';
            set += std::string(params[i].name) + '=' + format_g(current[i], 10);
        }
        if (stateful) set += ";state=" + o.state;
        const std::optional<double> reward = reward_index ? std::optional<double>(current[*reward_index]) : std::nullopt;
        const std::optional<std::string_view> state = stateful ? std::optional<std::string_view>(o.state) : std::nullopt;
        const auto factors = kernels::factor_curve(d, times, reward, state, o.rounding(), Exec::Serial);
        for (std::size_t i = 0; i < times.size(); ++i)
            out << g << ',' << csv_field(set) << ',' << format_g(times[i], 10) << ',' << format_g(factors[i], 10)
                << '\n';
    };
    emit(0);
    return kOk;
}

double parse_number(const std::string& s) {
    if (s.empty()) throw InvalidArgument("empty number in range");
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (end != s.c_str() + s.size() || !std::isfinite(v)) throw InvalidArgument("malformed number '" + s + "'");
    return v;
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> parts;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    parts.push_back(cur);
    return parts;
}

} // namespace

std::vector<double> parse_range(const std::string& text) {
    std::vector<double> out;
    for (const auto& item : split(text, ',')) {
        const auto bits = split(item, ':');
        if (bits.size() == 1) {
            out.push_back(parse_number(bits[0]));
        } else if (bits.size() == 3) {
            const double a = parse_number(bits[0]);
            const double b = parse_number(bits[1]);
            const double step = parse_number(bits[2]);
            if (!(step > 0.0)) throw InvalidArgument("range step must be > 0 in '" + item + "'");
            if (b < a) throw InvalidArgument("range end precedes start in '" + item + "'");
            const double n = std::floor((b - a) / step + 1e-9);
            if (n > 1e6) throw InvalidArgument("range '" + item + "' has too many points");
            for (long i = 0; i <= static_cast<long>(n); ++i) {
                // Snap to a short decimal so 0.1 steps print cleanly.
                const double v = a + step * static_cast<double>(i);
                out.push_back(std::stod(format_g(v, 12)));
            }
        } else {
            throw InvalidArgument("malformed range '" + item + "' (expected a:b:step, a number, or a list)");
        }
    }
    return out;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    Options o;
    CLI::App app{"Function-coherent gambles and generalized discounting toolkit", "fcg"};
    app.require_subcommand(1);
    app.option_defaults()->always_capture_default();

    auto add_globals = [&o](CLI::App* a) {
        a->add_option("--config", o.config_path, "Scenario file");
        a->add_option("--tol", o.tol, "Indifference tolerance for comparisons")->check(CLI::NonNegativeNumber);
        a->add_flag("--paper-rounding", o.paper_rounding, "Round each discount factor to two decimals");
        a->add_option("--epsilon", o.epsilon, "Rejection margin for functional fitting");
        a->add_flag("--dump-lp", o.dump_lp, "Write every LP and pivot to stderr");
    };
    add_globals(&app);

    std::string positional;
    auto add_cmd = [&](const char* name, const char* help) {
        CLI::App* c = app.add_subcommand(name, help);
        add_globals(c);
        c->add_option("path", positional, "Scenario file (same as --config)");
        return c;
    };
    CLI::App* eval = add_cmd("eval", "Value every schedule");
    CLI::App* scan = add_cmd("scan", "Preference-reversal scan over time shifts");
    CLI::App* check = add_cmd("check", "Audit the assessments against F1-F3");
    CLI::App* fit = add_cmd("fit", "Fit a representation functional to the assessments");
    CLI::App* curves = app.add_subcommand("curves", "Emit discount-factor curves as CSV");
    curves->add_option("--regime", o.regime, "quasi|hyperbolic|exponential|genhyp|scale|state|hybrid")->required();
    curves->add_option("--t", o.t, "Times (a:b:step, value, or list)");
    curves->add_option("--beta", o.beta);
    curves->add_option("--delta", o.delta);
    curves->add_option("--k", o.k);
    curves->add_option("--p", o.p);
    curves->add_option("--r", o.r);
    curves->add_option("--lambda", o.lambda);
    curves->add_option("--x", o.x, "Reward sizes for the scale regime");
    curves->add_option("--log-base", o.log_base, "Log base of eta for the scale regime");
    curves->add_option("--state", o.state, "State label for the state regime");
    curves->add_flag("--paper-rounding", o.paper_rounding, "Round each discount factor to two decimals");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kUsage;
    }
    if (!positional.empty()) {
        if (!o.config_path.empty() && o.config_path != positional)
            return err << "error: config given twice ('" << o.config_path << "' and '" << positional << "')\n", kUsage;
        o.config_path = positional;
    }

    try {
        if (*eval) return cmd_eval(o, out, err);
        if (*scan) return cmd_scan(o, out, err);
        if (*check) return cmd_check(o, out, err);
        if (*fit) return cmd_fit(o, out, err);
        return cmd_curves(o, out);
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const InvalidArgument& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const NumericalInstability& e) {
        err << "error: " << e.what() << '\n' << e.dump();
        return kRuntime;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kRuntime;
    }
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    std::vector<const char*> argv;
    argv.reserve(args.size() + 1);
    argv.push_back("fcg");
    for (const auto& a : args) argv.push_back(a.c_str());
    return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

} // namespace fcg::cli
