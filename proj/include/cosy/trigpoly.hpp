#pragma once

#include <cosy/rational.hpp>

#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace cosy {

/// A single harmonic: cos(k.x) or sin(k.x) with integer frequency vector k.
/// Canonical keys have the first nonzero entry of k positive (sin flips the
/// coefficient sign under k -> -k) and k = 0 only with the cos phase.
struct FreqKey {
    std::vector<int> k;
    bool sine = false;

    bool operator<(const FreqKey& o) const {
        if (k != o.k) return k < o.k;
        return sine < o.sine;
    }
    bool operator==(const FreqKey& o) const { return k == o.k && sine == o.sine; }

    bool is_constant() const {
        for (int v : k)
            if (v != 0) return false;
        return true;
    }
};

/// Finite Fourier sum with exact rational coefficients, a function on the
/// torus R^m / (2 pi Z)^m.
class TrigPoly {
public:
    TrigPoly() = default;
    explicit TrigPoly(int m) : m_(m) {}

    static TrigPoly constant(int m, const Rational& c) {
        TrigPoly p(m);
        p.add(FreqKey{std::vector<int>(m, 0), false}, c);
        return p;
    }

    static TrigPoly harmonic(int m, std::vector<int> k, bool sine, const Rational& c) {
        if (static_cast<int>(k.size()) != m) throw std::invalid_argument("frequency length mismatch");
        TrigPoly p(m);
        p.add(FreqKey{std::move(k), sine}, c);
        return p;
    }

    int vars() const { return m_; }
    bool is_zero() const { return terms_.empty(); }
    const std::map<FreqKey, Rational>& terms() const { return terms_; }

    /// coefficient of the zero-frequency (constant) part
    Rational constant_part() const {
        auto it = terms_.find(FreqKey{std::vector<int>(m_, 0), false});
        return it == terms_.end() ? Rational(0) : it->second;
    }

    bool is_constant() const {
        return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_constant());
    }

    /// adds c * phase(k . x), canonicalizing the key
    void add(FreqKey key, Rational c) {
        if (c == 0) return;
        int lead = 0;
        for (int v : key.k)
            if (v != 0) {
                lead = v;
                break;
            }
        if (lead == 0) {
            if (key.sine) return;  // sin(0) = 0
        } else if (lead < 0) {
            for (int& v : key.k) v = -v;
            if (key.sine) c = -c;
        }
        auto [it, inserted] = terms_.emplace(std::move(key), c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    bool operator==(const TrigPoly& o) const { return m_ == o.m_ && terms_ == o.terms_; }

    friend TrigPoly operator+(const TrigPoly& a, const TrigPoly& b) {
        TrigPoly r = a;
        for (const auto& [k, c] : b.terms_) r.add(k, c);
        return r;
    }

    friend TrigPoly operator-(const TrigPoly& a, const TrigPoly& b) {
        TrigPoly r = a;
        for (const auto& [k, c] : b.terms_) r.add(k, -c);
        return r;
    }

    friend TrigPoly operator-(const TrigPoly& a) {
        TrigPoly r(a.m_);
        for (const auto& [k, c] : a.terms_) r.terms_.emplace(k, -c);
        return r;
    }

    /// product via the product-to-sum identities; coefficients stay rational
    friend TrigPoly operator*(const TrigPoly& a, const TrigPoly& b) {
        TrigPoly r(a.m_);
        for (const auto& [ka, ca] : a.terms_)
            for (const auto& [kb, cb] : b.terms_) {
                std::vector<int> sum(ka.k.size()), diff(ka.k.size());
                for (std::size_t i = 0; i < ka.k.size(); ++i) {
                    sum[i] = ka.k[i] + kb.k[i];
                    diff[i] = ka.k[i] - kb.k[i];
                }
                Rational half = ca * cb / 2;
                if (!ka.sine && !kb.sine) {  // cos cos
                    r.add(FreqKey{diff, false}, half);
                    r.add(FreqKey{sum, false}, half);
                } else if (ka.sine && kb.sine) {  // sin sin
                    r.add(FreqKey{diff, false}, half);
                    r.add(FreqKey{sum, false}, -half);
                } else if (ka.sine && !kb.sine) {  // sin cos
                    r.add(FreqKey{sum, true}, half);
                    r.add(FreqKey{diff, true}, half);
                } else {  // cos sin
                    r.add(FreqKey{sum, true}, half);
                    r.add(FreqKey{diff, true}, -half);
                }
            }
        return r;
    }

    friend TrigPoly operator*(const Rational& c, const TrigPoly& a) {
        TrigPoly r(a.m_);
        if (c == 0) return r;
        for (const auto& [k, x] : a.terms_) r.terms_.emplace(k, c * x);
        return r;
    }

    /// d/dx_i
    TrigPoly derivative(int i) const {
        TrigPoly r(m_);
        for (const auto& [key, c] : terms_) {
            if (key.k[i] == 0) continue;
            // cos(kx) -> -k_i sin(kx), sin(kx) -> k_i cos(kx)
            r.add(FreqKey{key.k, !key.sine}, key.sine ? Rational(key.k[i]) * c
                                                      : Rational(-key.k[i]) * c);
        }
        return r;
    }

    std::string str() const {
        if (terms_.empty()) return "0";
        std::string out;
        bool first = true;
        for (const auto& [key, c] : terms_) {
            std::string term = to_string(c);
            if (!key.is_constant()) {
                term += "*";
                term += key.sine ? "sin(" : "cos(";
                bool f2 = true;
                for (std::size_t i = 0; i < key.k.size(); ++i) {
                    if (key.k[i] == 0) continue;
                    if (!f2 && key.k[i] > 0) term += "+";
                    if (key.k[i] == -1)
                        term += "-";
                    else if (key.k[i] != 1)
                        term += std::to_string(key.k[i]) + "*";
                    term += "x" + std::to_string(i + 1);
                    f2 = false;
                }
                term += ")";
            }
            if (!first && term[0] != '-') out += "+";
            out += term;
            first = false;
        }
        return out;
    }

private:
    int m_ = 0;
    std::map<FreqKey, Rational> terms_;
};

/// Parser for the CLI literal syntax, e.g. "sin(x1)", "2/3*cos(x1-2*x2)",
/// "-cos(x1)+1/2*sin(2*x2+x3)", plain rational constants.
class TrigParser {
public:
    TrigParser(std::string_view src, int vars) : s_(src), m_(vars) {}

    TrigPoly parse() {
        TrigPoly p = parse_sum();
        skip_ws();
        if (pos_ != s_.size()) fail("trailing input");
        return p;
    }

private:
    std::string_view s_;
    int m_;
    std::size_t pos_ = 0;

    [[noreturn]] void fail(const std::string& why) const {
        throw std::invalid_argument("trig expression error at position " + std::to_string(pos_) +
                                    ": " + why);
    }

    void skip_ws() {
        while (pos_ < s_.size() && (s_[pos_] == ' ' || s_[pos_] == '\t')) ++pos_;
    }

    bool eat(char c) {
        skip_ws();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    bool peek_digit() {
        skip_ws();
        return pos_ < s_.size() && s_[pos_] >= '0' && s_[pos_] <= '9';
    }

    TrigPoly parse_sum() {
        TrigPoly total(m_);
        bool neg = eat('-');
        total = total + parse_term(neg);
        for (;;) {
            if (eat('+'))
                total = total + parse_term(false);
            else if (eat('-'))
                total = total + parse_term(true);
            else
                break;
        }
        return total;
    }

    long parse_int() {
        skip_ws();
        bool neg = eat('-');
        if (!peek_digit()) fail("expected integer");
        long v = 0;
        while (pos_ < s_.size() && s_[pos_] >= '0' && s_[pos_] <= '9') {
            v = v * 10 + (s_[pos_] - '0');
            ++pos_;
        }
        return neg ? -v : v;
    }

    Rational parse_rational() {
        long num = parse_int();
        if (eat('/')) {
            long den = parse_int();
            if (den == 0) fail("zero denominator");
            return Rational(num, den);
        }
        return Rational(num);
    }

    TrigPoly parse_term(bool negated) {
        skip_ws();
        Rational coef = negated ? Rational(-1) : Rational(1);
        if (peek_digit()) {
            coef *= parse_rational();
            if (!eat('*')) {
                return TrigPoly::constant(m_, coef);  // bare rational
            }
        }
        skip_ws();
        bool sine;
        if (s_.substr(pos_, 4) == "sin(")
            sine = true;
        else if (s_.substr(pos_, 4) == "cos(")
            sine = false;
        else
            fail("expected sin( or cos(");
        pos_ += 4;
        std::vector<int> k = parse_linear();
        if (!eat(')')) fail("expected )");
        return TrigPoly::harmonic(m_, std::move(k), sine, coef);
    }

    // integer linear combination of x1..xm, e.g. x1-2*x2+3*x3
    std::vector<int> parse_linear() {
        std::vector<int> k(m_, 0);
        auto term = [&](int sign) {
            long mult = 1;
            if (peek_digit()) {
                mult = parse_int();
                if (!eat('*')) fail("expected * after frequency multiplier");
            }
            skip_ws();
            if (pos_ >= s_.size() || s_[pos_] != 'x') fail("expected x<i>");
            ++pos_;
            if (!peek_digit()) fail("expected coordinate index");
            long idx = parse_int();
            if (idx < 1 || idx > m_) fail("coordinate index out of range");
            k[idx - 1] += static_cast<int>(sign * mult);
        };
        term(eat('-') ? -1 : 1);
        for (;;) {
            if (eat('+'))
                term(1);
            else if (eat('-'))
                term(-1);
            else
                break;
        }
        return k;
    }
};

inline TrigPoly parse_trig_poly(std::string_view src, int vars) {
    return TrigParser(src, vars).parse();
}

}  // namespace cosy
