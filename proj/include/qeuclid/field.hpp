#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "qeuclid/poly.hpp"
#include "qeuclid/qnum.hpp"

namespace qe {

// Scalar factories. The library is written against a scalar type S which is
// either RatFunc (exact, symbolic in s = q^{1/2}) or QNum (exact, at a fixed
// rational q). Scalars<S> produces the powers of s that every constant needs.
template <class S>
class Scalars;

template <>
class Scalars<RatFunc> {
public:
    RatFunc spow(int e) const { return RatFunc::spow(e); }
    RatFunc rational(const mpq_class& v) const { return RatFunc(v); }
    RatFunc bar(const RatFunc& v) const { return v.bar(); }
    std::string label() const { return "symbolic"; }
};

template <>
class Scalars<QNum> {
public:
    explicit Scalars(const mpq_class& q) : pt_(QPoint::make(q)) {}
    QNum spow(int e) const;
    QNum rational(const mpq_class& v) const { return QNum(v); }
    std::string label() const { return "q=" + pt_->q.get_str(); }
    const QPoint* point() const { return pt_.get(); }

private:
    std::shared_ptr<const QPoint> pt_;
};

inline constexpr int kMaxRad = 12;
using RadMono = std::array<int8_t, kMaxRad>;

// Radical symbols gamma adjoined to the scalar field. In Laurent mode the
// symbols are free and invertible; in squared mode each symbol squares to a
// fixed scalar, so exponents stay in {0, 1}.
template <class S>
struct RadicalRules {
    int nsym = 0;
    bool squared = false;
    std::vector<S> square;
    std::vector<int> conj;  // image of each symbol under *, empty if undefined
    std::vector<std::string> names;
};

template <class S>
class Field {
public:
    using Term = std::pair<RadMono, S>;

    Field() = default;
    Field(long v);        // NOLINT
    Field(const S& v);    // NOLINT
    static Field symbol(const RadicalRules<S>* rules, int k, int exp = 1);

    bool is_zero() const { return t_.empty(); }
    bool is_scalar() const;
    bool is_one() const { return is_scalar() && !t_.empty() && t_[0].second == S(1); }
    S scalar() const;  // throws unless is_scalar()
    const std::vector<Term>& terms() const { return t_; }
    const RadicalRules<S>* rules() const { return rules_; }

    Field operator-() const;
    Field& operator+=(const Field& o);
    Field& operator-=(const Field& o);
    Field& operator*=(const Field& o);
    Field& operator/=(const Field& o) { return *this *= o.inv(); }
    friend Field operator+(Field a, const Field& b) { return a += b; }
    friend Field operator-(Field a, const Field& b) { return a -= b; }
    friend Field operator*(const Field& a, const Field& b) { return mul(a, b); }
    friend Field operator/(Field a, const Field& b) { return a /= b; }
    bool operator==(const Field& o) const;
    bool operator!=(const Field& o) const { return !(*this == o); }

    Field inv() const;
    Field star() const;  // q real, symbols permuted by rules->conj
    template <class F>
    Field map_coeffs(F&& f) const {
        Field r;
        r.rules_ = rules_;
        for (const auto& [m, c] : t_) {
            S v = f(c);
            if (!v.is_zero()) r.t_.emplace_back(m, std::move(v));
        }
        return r;
    }
    std::string str() const;
    size_t hash() const;

private:
    static Field mul(const Field& a, const Field& b);
    void canon(std::vector<Term>& v);
    std::vector<Term> t_;
    const RadicalRules<S>* rules_ = nullptr;
};

std::string radmono_str(const RadMono& m, const std::vector<std::string>& names);

}  // namespace qe
