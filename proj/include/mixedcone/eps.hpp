#pragma once

#include <algorithm>
#include <compare>
#include <optional>
#include <string>
#include <vector>

#include "mixedcone/rational.hpp"

namespace mixedcone {

// Polynomials in a positive infinitesimal eps, ordered by sign as eps -> 0+.
// Coefficients are stored lowest degree first; the highest stored coefficient
// is nonzero unless the value is identically zero (empty vector).
class Eps {
public:
    Eps() = default;
    Eps(const Rat& c) { // NOLINT: implicit by design, mirrors Rat -> Eps embedding
        if (c != 0) coeff_.push_back(c);
    }
    Eps(int c) : Eps(Rat(c)) {}

    static Eps variable() { return from_coeffs({Rat(0), Rat(1)}); }

    static Eps from_coeffs(std::vector<Rat> cs) {
        Eps e;
        e.coeff_ = std::move(cs);
        e.trim();
        e.check_degree();
        return e;
    }

    // Degree cap guards against runaway symbolic growth.
    static int& max_degree() {
        static int cap = 32;
        return cap;
    }

    const std::vector<Rat>& coeffs() const { return coeff_; }
    bool is_zero() const { return coeff_.empty(); }
    int degree() const { return coeff_.empty() ? -1 : int(coeff_.size()) - 1; }

    Rat coeff(int k) const {
        if (k < 0 || k >= int(coeff_.size())) return Rat(0);
        return coeff_[size_t(k)];
    }

    // Index of the lowest nonzero coefficient; nullopt when identically zero.
    std::optional<int> order() const {
        for (size_t i = 0; i < coeff_.size(); ++i)
            if (coeff_[i] != 0) return int(i);
        return std::nullopt;
    }

    // Sign for all sufficiently small eps > 0.
    int sign() const {
        auto q = order();
        return q ? sgn(coeff_[size_t(*q)]) : 0;
    }

    Rat limit_at_zero() const { return coeff(0); }

    Rat eval(const Rat& x) const {
        Rat acc(0);
        for (size_t i = coeff_.size(); i-- > 0;) acc = acc * x + coeff_[i];
        return acc;
    }

    Eps operator-() const {
        Eps r = *this;
        for (auto& c : r.coeff_) c = -c;
        return r;
    }

    Eps& operator+=(const Eps& o) {
        if (coeff_.size() < o.coeff_.size()) coeff_.resize(o.coeff_.size(), Rat(0));
        for (size_t i = 0; i < o.coeff_.size(); ++i) coeff_[i] += o.coeff_[i];
        trim();
        return *this;
    }
    Eps& operator-=(const Eps& o) { return *this += -o; }

    friend Eps operator+(Eps a, const Eps& b) { return a += b; }
    friend Eps operator-(Eps a, const Eps& b) { return a -= b; }

    friend Eps operator*(const Eps& a, const Eps& b) {
        if (a.is_zero() || b.is_zero()) return Eps();
        Eps r;
        r.coeff_.assign(a.coeff_.size() + b.coeff_.size() - 1, Rat(0));
        for (size_t i = 0; i < a.coeff_.size(); ++i) {
            if (a.coeff_[i] == 0) continue;
            for (size_t j = 0; j < b.coeff_.size(); ++j)
                r.coeff_[i + j] += a.coeff_[i] * b.coeff_[j];
        }
        r.trim();
        r.check_degree();
        return r;
    }
    Eps& operator*=(const Eps& o) { return *this = *this * o; }

    // Exact division: requires order(divisor) <= order(dividend) and a zero
    // remainder; anything else is a usage bug upstream of the eps pipeline.
    friend Eps operator/(const Eps& a, const Eps& b) {
        require(!b.is_zero(), "DivisionByZero", "eps scalar division by zero");
        if (a.is_zero()) return Eps();
        require(*b.order() <= *a.order(), "EpsDivisionError",
                "divisor vanishes faster than dividend");
        // Long division, highest degree first.
        std::vector<Rat> rem = a.coeff_;
        int db = b.degree();
        const Rat lead = b.coeff_[size_t(db)];
        std::vector<Rat> quot(a.coeff_.size() > b.coeff_.size() - 1
                                  ? a.coeff_.size() - b.coeff_.size() + 1
                                  : 0,
                              Rat(0));
        for (int k = int(rem.size()) - 1; k >= db; --k) {
            if (rem[size_t(k)] == 0) continue;
            Rat q = rem[size_t(k)] / lead;
            quot[size_t(k - db)] = q;
            for (int j = 0; j <= db; ++j) rem[size_t(k - db + j)] -= q * b.coeff_[size_t(j)];
        }
        for (const Rat& c : rem)
            require(c == 0, "EpsDivisionError", "inexact eps scalar division");
        return from_coeffs(std::move(quot));
    }
    Eps& operator/=(const Eps& o) { return *this = *this / o; }

    // Multiply by eps^k (k may be negative; then all orders must allow it).
    Eps shifted(int k) const {
        if (is_zero()) return Eps();
        if (k == 0) return *this;
        if (k > 0) {
            std::vector<Rat> cs(size_t(k), Rat(0));
            cs.insert(cs.end(), coeff_.begin(), coeff_.end());
            return from_coeffs(std::move(cs));
        }
        require(*order() >= -k, "EpsDivisionError", "negative shift below order");
        return from_coeffs({coeff_.begin() + size_t(-k), coeff_.end()});
    }

    friend bool operator==(const Eps& a, const Eps& b) { return a.coeff_ == b.coeff_; }
    friend bool operator!=(const Eps& a, const Eps& b) { return !(a == b); }
    friend bool operator<(const Eps& a, const Eps& b) { return (b - a).sign() > 0; }
    friend bool operator>(const Eps& a, const Eps& b) { return b < a; }
    friend bool operator<=(const Eps& a, const Eps& b) { return !(b < a); }
    friend bool operator>=(const Eps& a, const Eps& b) { return !(a < b); }

    std::string str() const {
        if (is_zero()) return "0";
        std::string s;
        for (size_t i = 0; i < coeff_.size(); ++i) {
            if (coeff_[i] == 0) continue;
            if (!s.empty()) s += " + ";
            s += rat_str(coeff_[i]);
            if (i == 1) s += "*e";
            else if (i > 1) s += "*e^" + std::to_string(i);
        }
        return s;
    }

private:
    void trim() {
        while (!coeff_.empty() && coeff_.back() == 0) coeff_.pop_back();
    }
    void check_degree() const {
        require(degree() <= max_degree(), "EpsDegreeOverflow",
                "eps polynomial degree " + std::to_string(degree()) + " exceeds cap " +
                    std::to_string(max_degree()));
    }

    std::vector<Rat> coeff_;
};

struct EpsAnalysis {
    int sign_at_zero_plus = 0;       // -1, 0, +1
    std::optional<int> vanishing_order; // nullopt encodes infinity (the zero scalar)
    Rat limit_at_zero;               // always finite for polynomials
};

inline EpsAnalysis eps_analyze(const Eps& s) {
    return EpsAnalysis{s.sign(), s.order(), s.limit_at_zero()};
}

// Monic gcd in Q[eps]; gcd(0, 0) = 0.
inline Eps eps_gcd(Eps a, Eps b) {
    while (!b.is_zero()) {
        // Remainder of a by b.
        std::vector<Rat> rem = a.coeffs();
        int db = b.degree();
        const Rat lead = b.coeff(db);
        for (int k = int(rem.size()) - 1; k >= db; --k) {
            if (rem[size_t(k)] == 0) continue;
            Rat q = rem[size_t(k)] / lead;
            for (int j = 0; j <= db; ++j) rem[size_t(k - db + j)] -= q * b.coeff(j);
        }
        a = b;
        b = Eps::from_coeffs(std::move(rem));
    }
    if (!a.is_zero()) a = a / Eps(a.coeff(a.degree()));
    return a;
}

// Exact fraction num/den over Q[eps]; den kept eventually-positive. Used for
// quantities like eps-parametrized measure weights that are genuinely rational
// functions of eps.
class EpsFrac {
public:
    EpsFrac() : num_(), den_(Rat(1)) {}
    EpsFrac(const Eps& n) : num_(n), den_(Rat(1)) {}
    EpsFrac(const Rat& r) : num_(Eps(r)), den_(Rat(1)) {}
    EpsFrac(Eps n, Eps d) : num_(std::move(n)), den_(std::move(d)) {
        require(!den_.is_zero(), "DivisionByZero", "eps fraction with zero denominator");
        normalize();
    }

    const Eps& num() const { return num_; }
    const Eps& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    int sign() const { return num_.sign(); } // den is eventually positive

    // Vanishing order of the value as eps -> 0+ (nullopt = identically zero).
    std::optional<int> order() const {
        auto qn = num_.order();
        if (!qn) return std::nullopt;
        return *qn - *den_.order();
    }

    Rat eval(const Rat& x) const {
        Rat d = den_.eval(x);
        require(d != 0, "DivisionByZero", "eps fraction denominator vanishes at sample");
        return num_.eval(x) / d;
    }

    friend EpsFrac operator+(const EpsFrac& a, const EpsFrac& b) {
        return EpsFrac(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }
    friend EpsFrac operator-(const EpsFrac& a, const EpsFrac& b) {
        return EpsFrac(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
    }
    friend EpsFrac operator*(const EpsFrac& a, const EpsFrac& b) {
        return EpsFrac(a.num_ * b.num_, a.den_ * b.den_);
    }
    friend EpsFrac operator/(const EpsFrac& a, const EpsFrac& b) {
        require(!b.is_zero(), "DivisionByZero", "eps fraction division by zero");
        return EpsFrac(a.num_ * b.den_, a.den_ * b.num_);
    }
    friend bool operator==(const EpsFrac& a, const EpsFrac& b) {
        return (a.num_ * b.den_) == (b.num_ * a.den_);
    }
    friend bool operator!=(const EpsFrac& a, const EpsFrac& b) { return !(a == b); }
    friend bool operator<(const EpsFrac& a, const EpsFrac& b) {
        return (b - a).sign() > 0;
    }

    std::string str() const {
        if (den_ == Eps(Rat(1))) return num_.str();
        return "(" + num_.str() + ")/(" + den_.str() + ")";
    }

private:
    void normalize() {
        if (num_.is_zero()) {
            den_ = Eps(Rat(1));
            return;
        }
        Eps g = eps_gcd(num_, den_);
        if (g.degree() > 0) {
            num_ = num_ / g;
            den_ = den_ / g;
        }
        if (den_.sign() < 0) {
            num_ = -num_;
            den_ = -den_;
        }
        // Scale so the lowest nonzero denominator coefficient is 1.
        Rat c = den_.coeff(*den_.order());
        if (c != 1) {
            Eps inv(Rat(1) / c);
            num_ = num_ * inv;
            den_ = den_ * inv;
        }
    }

    Eps num_, den_;
};

} // namespace mixedcone
