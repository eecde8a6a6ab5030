#pragma once

#include "fcg/utility.hpp"

#include <cstddef>
#include <memory>
#include <string>
#include <vector>

namespace fcg {

// Ordered, non-empty list of distinct state labels. Copies share storage.
class StateSpace {
public:
    explicit StateSpace(std::vector<std::string> labels);

    [[nodiscard]] std::size_t size() const noexcept { return labels_->size(); }
    [[nodiscard]] const std::vector<std::string>& labels() const noexcept { return *labels_; }
    [[nodiscard]] const std::string& label(std::size_t i) const { return labels_->at(i); }

    friend bool operator==(const StateSpace& a, const StateSpace& b) {
        return a.labels_ == b.labels_ || *a.labels_ == *b.labels_;
    }

private:
    std::shared_ptr<const std::vector<std::string>> labels_;
};

// A bounded reward vector over a finite state space. Losses are bounded by
// the wealth floor: every reward is >= -wealth.
class Gamble {
public:
    Gamble(StateSpace space, std::vector<double> rewards, double wealth);

    [[nodiscard]] const StateSpace& space() const noexcept { return space_; }
    [[nodiscard]] const std::vector<double>& rewards() const noexcept { return rewards_; }
    [[nodiscard]] double wealth() const noexcept { return wealth_; }
    [[nodiscard]] std::size_t size() const noexcept { return rewards_.size(); }
    [[nodiscard]] double operator[](std::size_t i) const { return rewards_[i]; }

    friend bool operator==(const Gamble&, const Gamble&) = default;

private:
    StateSpace space_;
    std::vector<double> rewards_;
    double wealth_;
};

// u applied to a single reward under the wealth convention: utilities that
// need positive arguments are evaluated as u(w + x) - u(w), everything else
// as u(x). Both routes map 0 to 0 for admissible u.
[[nodiscard]] double wealth_utility(const Utility& u, double x, double wealth);
[[nodiscard]] double wealth_utility_inverse(const Utility& u, double v, double wealth);

// f(s) >= g(s) for every state (weak dominance, ties allowed).
[[nodiscard]] bool dominates(const Gamble& f, const Gamble& g);
// f(s) > g(s) for every state.
[[nodiscard]] bool strictly_dominates(const Gamble& f, const Gamble& g);

// The element u(f) of the transformed set; DomainError names the state.
[[nodiscard]] std::vector<double> transform(const Utility& u, const Gamble& f);

// h = u^{-1}(lambda u(f) + mu u(g)) statewise. ImageError names the first
// state whose combination leaves the image of u.
[[nodiscard]] Gamble u_convex_combine(const Utility& u, const Gamble& f, const Gamble& g, double lambda,
                                      double mu);

} // namespace fcg
