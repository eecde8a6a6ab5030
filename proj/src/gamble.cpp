#include "fcg/gamble.hpp"

#include "fcg/errors.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

namespace fcg {

namespace {

void require_same_space(const Gamble& f, const Gamble& g) {
    if (!(f.space() == g.space())) throw SpaceMismatch("gambles are defined over different state spaces");
}

std::string fmt_num(double v) {
    std::ostringstream os;
    os.precision(12);
    os << v;
    return os.str();
}

} // namespace

StateSpace::StateSpace(std::vector<std::string> labels) {
    if (labels.empty()) throw InvalidArgument("state space needs at least one state");
    std::set<std::string> seen;
    for (const auto& l : labels) {
        if (l.empty()) throw InvalidArgument("state labels must be non-empty");
        if (!seen.insert(l).second) throw InvalidArgument("duplicate state label '" + l + "'");
    }
    labels_ = std::make_shared<const std::vector<std::string>>(std::move(labels));
}

Gamble::Gamble(StateSpace space, std::vector<double> rewards, double wealth)
    : space_(std::move(space)), rewards_(std::move(rewards)), wealth_(wealth) {
    if (rewards_.size() != space_.size())
        throw InvalidArgument("gamble has " + std::to_string(rewards_.size()) + " rewards for " +
                              std::to_string(space_.size()) + " states");
    if (!(std::isfinite(wealth_) && wealth_ > 0.0)) throw InvalidArgument("gamble wealth floor must be > 0");
    for (std::size_t i = 0; i < rewards_.size(); ++i) {
        if (!std::isfinite(rewards_[i]))
            throw InvalidArgument("gamble reward in state '" + space_.label(i) + "' is not finite");
        if (rewards_[i] < -wealth_)
            throw InvalidArgument("gamble reward " + fmt_num(rewards_[i]) + " in state '" + space_.label(i) +
                                  "' breaches the wealth floor -" + fmt_num(wealth_));
    }
}

double wealth_utility(const Utility& u, double x, double wealth) {
    if (u.kind() == UtilityKind::Composed && u.requires_wealth_shift())
        return u.phi()(wealth_utility(u.base(), x, wealth));
    if (u.requires_wealth_shift()) return u.eval(wealth + x) - u.eval(wealth);
    return u.eval(x);
}

namespace {

Interval wealth_image(const Utility& u, double wealth) {
    if (u.kind() == UtilityKind::Composed && u.requires_wealth_shift())
        return u.phi().map_interval(wealth_image(u.base(), wealth));
    Interval img = u.image();
    if (u.requires_wealth_shift()) {
        const double offset = u.eval(wealth);
        img.lo -= offset;
        img.hi -= offset;
    }
    return img;
}

} // namespace

double wealth_utility_inverse(const Utility& u, double v, double wealth) {
    if (u.kind() == UtilityKind::Composed && u.requires_wealth_shift()) {
        const Interval inner = wealth_image(u.base(), wealth);
        return wealth_utility_inverse(u.base(), u.phi().inverse(v, inner), wealth);
    }
    if (u.requires_wealth_shift()) return u.inverse(v + u.eval(wealth)) - wealth;
    return u.inverse(v);
}

bool dominates(const Gamble& f, const Gamble& g) {
    require_same_space(f, g);
    for (std::size_t i = 0; i < f.size(); ++i)
        if (!(f[i] >= g[i])) return false;
    return true;
}

bool strictly_dominates(const Gamble& f, const Gamble& g) {
    require_same_space(f, g);
    for (std::size_t i = 0; i < f.size(); ++i)
        if (!(f[i] > g[i])) return false;
    return true;
}

std::vector<double> transform(const Utility& u, const Gamble& f) {
    std::vector<double> out(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) {
        try {
            out[i] = wealth_utility(u, f[i], f.wealth());
        } catch (const DomainError& e) {
            throw DomainError("state '" + f.space().label(i) + "': " + e.what());
        }
    }
    return out;
}

Gamble u_convex_combine(const Utility& u, const Gamble& f, const Gamble& g, double lambda, double mu) {
    require_same_space(f, g);
    if (!(lambda >= 0.0 && mu >= 0.0) || !std::isfinite(lambda) || !std::isfinite(mu))
        throw InvalidArgument("u-convex combination needs finite lambda, mu >= 0");
    if (u.requires_wealth_shift() && f.wealth() != g.wealth())
        throw InvalidArgument("u-convex combination under a wealth-shifted utility needs equal wealth floors");

    const auto uf = transform(u, f);
    const auto ug = transform(u, g);
    std::vector<double> h(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) {
        const double v = lambda * uf[i] + mu * ug[i];
        try {
            h[i] = wealth_utility_inverse(u, v, f.wealth());
        } catch (const ImageError& e) {
            throw ImageError("state '" + f.space().label(i) + "': combination leaves the image of u: " + e.what());
        }
        if (h[i] < -f.wealth())
            throw ImageError("state '" + f.space().label(i) + "': combination " + fmt_num(h[i]) +
                             " falls below the wealth floor");
    }
    return Gamble(f.space(), std::move(h), f.wealth());
}

} // namespace fcg
