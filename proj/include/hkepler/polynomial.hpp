// hkepler - sparse polynomials in a fixed number of variables
#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <map>

namespace hkepler {

/// Sparse real polynomial in N variables, stored as exponent tuple ->
/// coefficient. Terms with zero coefficient are dropped.
template <std::size_t N>
class Polynomial {
public:
    using Exponents = std::array<int, N>;
    using Terms = std::map<Exponents, double>;

    Polynomial() = default;

    static Polynomial constant(double c) {
        Polynomial p;
        p.add_term({}, c);
        return p;
    }

    static Polynomial variable(std::size_t i, double c = 1.0) {
        Exponents e{};
        e[i] = 1;
        Polynomial p;
        p.add_term(e, c);
        return p;
    }

    void add_term(const Exponents& e, double c) {
        if (c == 0.0) return;
        auto [it, inserted] = terms_.try_emplace(e, c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0.0) terms_.erase(it);
        }
    }

    [[nodiscard]] double coefficient(const Exponents& e) const {
        auto it = terms_.find(e);
        return it == terms_.end() ? 0.0 : it->second;
    }

    [[nodiscard]] const Terms& terms() const { return terms_; }

    [[nodiscard]] int total_degree() const {
        int d = 0;
        for (const auto& [e, c] : terms_) {
            int s = 0;
            for (int v : e) s += v;
            d = std::max(d, s);
        }
        return d;
    }

    [[nodiscard]] double operator()(const std::array<double, N>& x) const {
        double sum = 0.0;
        for (const auto& [e, c] : terms_) {
            double t = c;
            for (std::size_t i = 0; i < N; ++i) {
                for (int k = 0; k < e[i]; ++k) t *= x[i];
            }
            sum += t;
        }
        return sum;
    }

    friend Polynomial operator+(Polynomial a, const Polynomial& b) {
        for (const auto& [e, c] : b.terms_) a.add_term(e, c);
        return a;
    }

    friend Polynomial operator-(Polynomial a, const Polynomial& b) {
        for (const auto& [e, c] : b.terms_) a.add_term(e, -c);
        return a;
    }

    friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
        Polynomial out;
        for (const auto& [ea, ca] : a.terms_) {
            for (const auto& [eb, cb] : b.terms_) {
                Exponents e{};
                for (std::size_t i = 0; i < N; ++i) e[i] = ea[i] + eb[i];
                out.add_term(e, ca * cb);
            }
        }
        return out;
    }

    friend Polynomial operator*(double s, Polynomial a) {
        if (s == 0.0) return {};
        for (auto& [e, c] : a.terms_) c *= s;
        return a;
    }

private:
    Terms terms_;
};

}  // namespace hkepler
