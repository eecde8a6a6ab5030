#include "fcg/scenario.hpp"

#include "fcg/errors.hpp"

#include <cmath>
#include <map>
#include <set>

namespace fcg {

using config::Block;
using config::Entry;
using config::List;
using config::Value;

namespace {

[[noreturn]] void fail_at(const Value& v, const std::string& message) {
    throw ParseError(message, v.line, v.column);
}

[[noreturn]] void fail_at(const Entry& e, const std::string& message) {
    throw ParseError(message, e.line, e.column);
}

double as_number(const Value& v, const std::string& what) {
    if (!v.is_number()) fail_at(v, what + " must be a number, got " + v.type_name());
    return std::get<double>(v.data);
}

const std::string& as_string(const Value& v, const std::string& what) {
    if (!v.is_string()) fail_at(v, what + " must be a string, got " + v.type_name());
    return std::get<std::string>(v.data);
}

const List& as_list(const Value& v, const std::string& what) {
    if (!v.is_list()) fail_at(v, what + " must be a list, got " + v.type_name());
    return std::get<List>(v.data);
}

const Block& as_block(const Value& v, const std::string& what) {
    if (!v.is_block()) fail_at(v, what + " must be a block, got " + v.type_name());
    return std::get<Block>(v.data);
}

std::vector<double> as_numbers(const Value& v, const std::string& what) {
    std::vector<double> out;
    for (const auto& item : as_list(v, what)) out.push_back(as_number(item, what + " entry"));
    return out;
}

std::vector<std::pair<double, double>> as_pairs(const Value& v, const std::string& what) {
    std::vector<std::pair<double, double>> out;
    for (const auto& item : as_list(v, what)) {
        const auto xy = as_numbers(item, what + " point");
        if (xy.size() != 2) fail_at(item, what + " points must be [x, y] pairs");
        out.emplace_back(xy[0], xy[1]);
    }
    return out;
}

// Reads keys out of one block and rejects anything left unread.
class Reader {
public:
    Reader(const Block& block, const Value& where, std::string context)
        : block_(block), where_(where), context_(std::move(context)) {
        std::set<std::string> seen;
        for (const auto& e : block_.entries) {
            if (e.label) fail_at(e, "unexpected labeled block '" + e.key + "' in " + context_);
            if (!seen.insert(e.key).second) fail_at(e, "duplicate key '" + e.key + "' in " + context_);
        }
    }

    const Value* find(const std::string& key) {
        used_.insert(key);
        for (const auto& e : block_.entries)
            if (e.key == key) return &e.value;
        return nullptr;
    }

    const Value& require(const std::string& key) {
        const Value* v = find(key);
        if (!v) fail_at(where_, context_ + " is missing '" + key + "'");
        return *v;
    }

    double number(const std::string& key) { return as_number(require(key), context_ + "." + key); }

    std::optional<double> optional_number(const std::string& key) {
        const Value* v = find(key);
        if (!v) return std::nullopt;
        return as_number(*v, context_ + "." + key);
    }

    std::string string(const std::string& key) { return as_string(require(key), context_ + "." + key); }

    void finish() const {
        for (const auto& e : block_.entries)
            if (!used_.count(e.key)) fail_at(e, "unknown key '" + e.key + "' in " + context_);
    }

    [[nodiscard]] const Value& where() const { return where_; }

private:
    const Block& block_;
    const Value& where_;
    std::string context_;
    std::set<std::string> used_;
};

template <class F>
auto construct(const Value& where, F&& f) -> decltype(f()) {
    try {
        return f();
    } catch (const InvalidArgument& e) {
        fail_at(where, e.what());
    }
}

Value make(std::string s) { return Value{std::move(s)}; }
Value make(double d) { return Value{d}; }
Value make(List l) { return Value{std::move(l)}; }
Value make(Block b) { return Value{std::move(b)}; }

Value make_numbers(const std::vector<double>& xs) {
    List l;
    for (double x : xs) l.push_back(make(x));
    return make(std::move(l));
}

Value make_pairs(const std::vector<std::pair<double, double>>& pts) {
    List l;
    for (const auto& [x, y] : pts) l.push_back(make_numbers({x, y}));
    return make(std::move(l));
}

void put(Block& b, std::string key, Value v) { b.entries.push_back(Entry{std::move(key), std::nullopt, std::move(v)}); }

Transform transform_from_config(const Value& v) {
    const Block& b = as_block(v, "phi");
    Reader r(b, v, "phi");
    const std::string form = r.string("form");
    Transform t = construct(v, [&] {
        if (form == "polynomial") return Transform::polynomial(as_numbers(r.require("coeffs"), "phi.coeffs"));
        if (form == "signed_power") return Transform::signed_power(r.number("p"));
        if (form == "tabulated") return Transform::tabulated(as_pairs(r.require("points"), "phi.points"));
        fail_at(v, "unknown phi form '" + form + "' (expected polynomial, signed_power or tabulated)");
    });
    r.finish();
    return t;
}

Value transform_to_config(const Transform& t) {
    Block b;
    switch (t.form()) {
    case Transform::Form::Polynomial:
        put(b, "form", make(std::string("polynomial")));
        put(b, "coeffs", make_numbers(t.coeffs()));
        break;
    case Transform::Form::SignedPower:
        put(b, "form", make(std::string("signed_power")));
        put(b, "p", make(t.power()));
        break;
    case Transform::Form::Tabulated:
        put(b, "form", make(std::string("tabulated")));
        put(b, "points", make_pairs(t.knots()));
        break;
    }
    return make(std::move(b));
}

Eta eta_from_config(const Value& v) {
    const Block& b = as_block(v, "eta");
    Reader r(b, v, "eta");
    const std::string form = r.string("form");
    Eta e = construct(v, [&] {
        if (form == "inverse_log") return Eta::inverse_log(r.optional_number("log_base").value_or(10.0));
        if (form == "tabulated") return Eta::tabulated(as_pairs(r.require("points"), "eta.points"));
        fail_at(v, "unknown eta form '" + form + "' (expected inverse_log or tabulated)");
    });
    r.finish();
    return e;
}

Value eta_to_config(const Eta& e) {
    Block b;
    if (e.form() == Eta::Form::InverseLog) {
        put(b, "form", make(std::string("inverse_log")));
        put(b, "log_base", make(e.log_base()));
    } else {
        put(b, "form", make(std::string("tabulated")));
        put(b, "points", make_pairs(e.knots()));
    }
    return make(std::move(b));
}

DatedPayment payment_from_config(const Value& v) {
    const Block& b = as_block(v, "payment");
    Reader r(b, v, "payment");
    DatedPayment p;
    p.amount = r.number("amount");
    p.time = r.number("t");
    if (const Value* s = r.find("state")) p.state = as_string(*s, "payment.state");
    r.finish();
    return p;
}

Gamble gamble_from_config(const Value& v, const StateSpace& space, double default_wealth) {
    std::vector<double> rewards;
    double wealth = default_wealth;
    if (v.is_list()) {
        rewards = as_numbers(v, "gamble");
    } else {
        const Block& b = as_block(v, "gamble");
        Reader r(b, v, "gamble");
        rewards = as_numbers(r.require("rewards"), "gamble.rewards");
        wealth = r.optional_number("wealth").value_or(default_wealth);
        if (const Value* st = r.find("states")) {
            std::vector<std::string> labels;
            for (const auto& s : as_list(*st, "gamble.states")) labels.push_back(as_string(s, "state label"));
            if (labels != space.labels()) fail_at(*st, "gamble states differ from the assessment states");
        }
        r.finish();
    }
    return construct(v, [&] { return Gamble(space, std::move(rewards), wealth); });
}

} // namespace

// ---------------------------------------------------------------------------

Utility utility_from_config(const Value& v) {
    const Block& b = as_block(v, "utility");
    Reader r(b, v, "utility");
    const std::string kind = r.string("kind");
    Utility u = construct(v, [&]() -> Utility {
        if (kind == "linear") return Utility::linear();
        if (kind == "log_shift") return Utility::log_shift();
        if (kind == "sqrt") return Utility::sqrt();
        if (kind == "power_discounted") return Utility::power_discounted(r.number("alpha"));
        if (kind == "composed")
            return Utility::composed(transform_from_config(r.require("phi")), utility_from_config(r.require("base")));
        fail_at(v, "unknown utility kind '" + kind +
                       "' (expected linear, log_shift, sqrt, power_discounted or composed)");
    });
    r.finish();
    return u;
}

Value to_config(const Utility& u) {
    Block b;
    switch (u.kind()) {
    case UtilityKind::Linear: put(b, "kind", make(std::string("linear"))); break;
    case UtilityKind::LogShift: put(b, "kind", make(std::string("log_shift"))); break;
    case UtilityKind::Sqrt: put(b, "kind", make(std::string("sqrt"))); break;
    case UtilityKind::PowerDiscounted:
        put(b, "kind", make(std::string("power_discounted")));
        put(b, "alpha", make(u.alpha()));
        break;
    case UtilityKind::Composed:
        put(b, "kind", make(std::string("composed")));
        put(b, "phi", transform_to_config(u.phi()));
        put(b, "base", to_config(u.base()));
        break;
    }
    return make(std::move(b));
}

Discount discount_from_config(const Value& v) {
    const Block& b = as_block(v, "discount");
    Reader r(b, v, "discount");
    const std::string kind = r.string("kind");
    Discount d = construct(v, [&]() -> Discount {
        if (kind == "exponential") return Discount::exponential(r.number("r"));
        if (kind == "hyperbolic") return Discount::hyperbolic(r.number("k"));
        if (kind == "quasi_hyperbolic") return Discount::quasi_hyperbolic(r.number("beta"), r.number("delta"));
        if (kind == "generalized_hyperbolic") return Discount::generalized_hyperbolic(r.number("k"), r.number("p"));
        if (kind == "scale_dependent") {
            const Value* eta = r.find("eta");
            return Discount::scale_dependent(discount_from_config(r.require("base")),
                                             eta ? eta_from_config(*eta) : Eta::inverse_log(10.0));
        }
        if (kind == "state_dependent") {
            const Value& rates_v = r.require("rates");
            const Block& rates_b = as_block(rates_v, "discount.rates");
            std::map<std::string, double> rates;
            for (const auto& e : rates_b.entries) {
                if (e.label) fail_at(e, "state rates take the form label = number");
                if (!rates.emplace(e.key, as_number(e.value, "rate for state '" + e.key + "'")).second)
                    fail_at(e, "duplicate state '" + e.key + "'");
            }
            return Discount::state_dependent(std::move(rates));
        }
        if (kind == "hybrid")
            return Discount::hybrid(r.number("lambda"), discount_from_config(r.require("d1")),
                                    discount_from_config(r.require("d2")));
        fail_at(v, "unknown discount kind '" + kind + "'");
    });
    r.finish();
    return d;
}

Value to_config(const Discount& d) {
    Block b;
    switch (d.kind()) {
    case DiscountKind::Exponential:
        put(b, "kind", make(std::string("exponential")));
        put(b, "r", make(d.rate()));
        break;
    case DiscountKind::Hyperbolic:
        put(b, "kind", make(std::string("hyperbolic")));
        put(b, "k", make(d.k()));
        break;
    case DiscountKind::QuasiHyperbolic:
        put(b, "kind", make(std::string("quasi_hyperbolic")));
        put(b, "beta", make(d.beta()));
        put(b, "delta", make(d.delta()));
        break;
    case DiscountKind::GeneralizedHyperbolic:
        put(b, "kind", make(std::string("generalized_hyperbolic")));
        put(b, "k", make(d.k()));
        put(b, "p", make(d.p()));
        break;
    case DiscountKind::ScaleDependent:
        put(b, "kind", make(std::string("scale_dependent")));
        put(b, "base", to_config(d.first()));
        put(b, "eta", eta_to_config(d.eta()));
        break;
    case DiscountKind::StateDependent: {
        put(b, "kind", make(std::string("state_dependent")));
        Block rates;
        for (const auto& [label, rate] : d.rates()) put(rates, label, make(rate));
        put(b, "rates", make(std::move(rates)));
        break;
    }
    case DiscountKind::Hybrid:
        put(b, "kind", make(std::string("hybrid")));
        put(b, "lambda", make(d.lambda()));
        put(b, "d1", to_config(d.first()));
        put(b, "d2", to_config(d.second()));
        break;
    }
    return make(std::move(b));
}

// ---------------------------------------------------------------------------

const PaymentSchedule* ScenarioConfig::find_schedule(std::string_view label) const {
    for (const auto& s : schedules)
        if (s.label() == label) return &s;
    return nullptr;
}

ScenarioConfig build_scenario(const Block& root) {
    ScenarioConfig sc;
    std::set<std::string> singletons;
    const Entry* assessments_entry = nullptr;

    // Wealth first: gambles default to it.
    for (const auto& e : root.entries) {
        if (e.key == "wealth" && !e.label) {
            if (sc.wealth) fail_at(e, "duplicate key 'wealth'");
            sc.wealth = as_number(e.value, "wealth");
            if (!(*sc.wealth > 0.0)) fail_at(e.value, "wealth must be > 0");
        }
    }

    for (const auto& e : root.entries) {
        if (e.key == "schedule") {
            if (!e.label) fail_at(e, "schedule blocks need a label, e.g. schedule \"A\" { ... }");
            if (sc.find_schedule(*e.label)) fail_at(e, "duplicate schedule '" + *e.label + "'");
            const Block& b = as_block(e.value, "schedule");
            Reader r(b, e.value, "schedule '" + *e.label + "'");
            std::vector<DatedPayment> pays;
            for (const auto& p : as_list(r.require("pay"), "schedule.pay")) pays.push_back(payment_from_config(p));
            r.finish();
            sc.schedules.push_back(construct(e.value, [&] { return PaymentSchedule(*e.label, std::move(pays)); }));
            continue;
        }
        if (e.label) fail_at(e, "only schedule blocks take a label");
        if (!singletons.insert(e.key).second) fail_at(e, "duplicate key '" + e.key + "'");

        if (e.key == "wealth") {
            continue;
        } else if (e.key == "utility") {
            sc.utility = utility_from_config(e.value);
        } else if (e.key == "discount") {
            sc.discount = discount_from_config(e.value);
        } else if (e.key == "assessments") {
            assessments_entry = &e; // needs the utility, built below
        } else if (e.key == "scan") {
            const Block& b = as_block(e.value, "scan");
            Reader r(b, e.value, "scan");
            ScanSpec scan;
            scan.a = r.string("a");
            scan.b = r.string("b");
            const Value& shifts = r.require("shifts");
            if (shifts.is_block()) {
                Reader rr(std::get<Block>(shifts.data), shifts, "scan.shifts");
                const double from = rr.number("from");
                const double to = rr.number("to");
                const double step = rr.number("step");
                rr.finish();
                if (!(step > 0.0) || !(to >= from)) fail_at(shifts, "scan.shifts needs from <= to and step > 0");
                const auto count = static_cast<std::size_t>(std::floor((to - from) / step + 1e-9)) + 1;
                for (std::size_t i = 0; i < count; ++i) scan.shifts.push_back(from + step * static_cast<double>(i));
            } else {
                scan.shifts = as_numbers(shifts, "scan.shifts");
            }
            if (scan.shifts.empty()) fail_at(shifts, "scan.shifts must not be empty");
            for (double s : scan.shifts)
                if (!(s >= 0.0)) fail_at(shifts, "scan shifts must be >= 0");
            r.finish();
            sc.scan = std::move(scan);
        } else if (e.key == "units") {
            const Block& b = as_block(e.value, "units");
            Reader r(b, e.value, "units");
            Units u;
            if (const Value* c = r.find("currency")) u.currency = as_string(*c, "units.currency");
            if (const Value* t = r.find("time")) u.time = as_string(*t, "units.time");
            r.finish();
            sc.units = std::move(u);
        } else {
            fail_at(e, "unknown key '" + e.key + "'");
        }
    }

    if (assessments_entry) {
        const Value& v = assessments_entry->value;
        if (!sc.utility) fail_at(*assessments_entry, "assessments need a utility block");
        const Block& b = as_block(v, "assessments");
        Reader r(b, v, "assessments");
        std::vector<std::string> labels;
        for (const auto& s : as_list(r.require("states"), "assessments.states"))
            labels.push_back(as_string(s, "state label"));
        const StateSpace space = construct(r.require("states"), [&] { return StateSpace(labels); });
        const double wealth = r.optional_number("wealth").value_or(sc.wealth.value_or(kDefaultWealth));
        std::vector<Gamble> accepted, rejected;
        if (const Value* acc = r.find("accepted"))
            for (const auto& g : as_list(*acc, "assessments.accepted"))
                accepted.push_back(gamble_from_config(g, space, wealth));
        if (const Value* rej = r.find("rejected"))
            for (const auto& g : as_list(*rej, "assessments.rejected"))
                rejected.push_back(gamble_from_config(g, space, wealth));
        sc.epsilon = r.optional_number("epsilon");
        r.finish();
        sc.assessments = construct(v, [&] {
            return AssessmentSet(space, *sc.utility, std::move(accepted), std::move(rejected));
        });
    }

    if (sc.scan) {
        const Value* where = nullptr;
        for (const auto& e : root.entries)
            if (e.key == "scan") where = &e.value;
        if (!sc.find_schedule(sc.scan->a)) fail_at(*where, "scan refers to unknown schedule '" + sc.scan->a + "'");
        if (!sc.find_schedule(sc.scan->b)) fail_at(*where, "scan refers to unknown schedule '" + sc.scan->b + "'");
    }
    return sc;
}

ScenarioConfig load_scenario(std::string_view text) { return build_scenario(config::parse(text)); }

config::Block to_config(const ScenarioConfig& sc) {
    Block root;
    if (sc.wealth) put(root, "wealth", make(*sc.wealth));
    if (sc.units) {
        Block b;
        put(b, "currency", make(sc.units->currency));
        put(b, "time", make(sc.units->time));
        put(root, "units", make(std::move(b)));
    }
    if (sc.utility) put(root, "utility", to_config(*sc.utility));
    if (sc.discount) put(root, "discount", to_config(*sc.discount));
    for (const auto& s : sc.schedules) {
        List pays;
        for (const auto& p : s.payments()) {
            Block pb;
            put(pb, "amount", make(p.amount));
            put(pb, "t", make(p.time));
            if (p.state) put(pb, "state", make(*p.state));
            pays.push_back(make(std::move(pb)));
        }
        Block b;
        put(b, "pay", make(std::move(pays)));
        root.entries.push_back(Entry{"schedule", s.label(), make(std::move(b))});
    }
    if (sc.scan) {
        Block b;
        put(b, "a", make(sc.scan->a));
        put(b, "b", make(sc.scan->b));
        put(b, "shifts", make_numbers(sc.scan->shifts));
        put(root, "scan", make(std::move(b)));
    }
    if (sc.assessments) {
        const auto& a = *sc.assessments;
        Block b;
        List states;
        for (const auto& l : a.space().labels()) states.push_back(make(l));
        put(b, "states", make(std::move(states)));
        auto gambles = [](const std::vector<Gamble>& gs) {
            List out;
            for (const auto& g : gs) {
                Block gb;
                put(gb, "rewards", make_numbers(g.rewards()));
                put(gb, "wealth", make(g.wealth()));
                out.push_back(make(std::move(gb)));
            }
            return make(std::move(out));
        };
        put(b, "accepted", gambles(a.accepted()));
        put(b, "rejected", gambles(a.rejected()));
        if (sc.epsilon) put(b, "epsilon", make(*sc.epsilon));
        put(root, "assessments", make(std::move(b)));
    }
    return root;
}

} // namespace fcg
