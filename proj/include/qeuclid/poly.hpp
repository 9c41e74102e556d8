#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

namespace qe {

// Dense polynomial in s with integer coefficients. c[i] multiplies s^i;
// no trailing zeros, so the zero polynomial has an empty vector.
class Poly {
public:
    Poly() = default;
    explicit Poly(long v);
    explicit Poly(const mpz_class& v);
    static Poly monomial(const mpz_class& c, int deg);

    bool is_zero() const { return c_.empty(); }
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    int valuation() const;
    const mpz_class& lead() const { return c_.back(); }
    const mpz_class& coeff(int i) const;
    const std::vector<mpz_class>& coeffs() const { return c_; }
    bool is_constant() const { return c_.size() <= 1; }
    bool is_monomial() const;

    Poly operator-() const;
    Poly& operator+=(const Poly& o);
    Poly& operator-=(const Poly& o);
    Poly& operator*=(const mpz_class& k);
    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    friend Poly operator*(const Poly& a, const Poly& b);
    friend Poly operator*(Poly a, const mpz_class& k) { return a *= k; }
    bool operator==(const Poly& o) const { return c_ == o.c_; }
    bool operator!=(const Poly& o) const { return !(c_ == o.c_); }

    Poly shifted(int k) const;  // times s^k, k >= -valuation()
    Poly reversed() const;      // s^deg * p(1/s)
    mpz_class content() const;
    Poly primitive() const;
    Poly divexact(const mpz_class& k) const;
    Poly divexact(const Poly& d) const;  // throws if not exact
    Poly prem(const Poly& d) const;       // pseudo-remainder

    mpq_class eval(const mpq_class& x) const;
    std::string str(const char* var = "s") const;
    size_t hash() const;

    friend Poly gcd(const Poly& a, const Poly& b);

private:
    void trim();
    std::vector<mpz_class> c_;
};

// Element of Q(s): num/den with gcd 1 and positive leading denominator coefficient.
class RatFunc {
public:
    RatFunc() : num_(), den_(1) {}
    RatFunc(long v) : num_(v), den_(1) {}  // NOLINT
    explicit RatFunc(const mpq_class& v);
    RatFunc(Poly n, Poly d);

    static RatFunc spow(int e);  // s^e

    const Poly& num() const { return num_; }
    const Poly& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_one() const;
    bool is_rational() const { return num_.is_constant() && den_.is_constant(); }
    mpq_class rational() const;

    RatFunc operator-() const;
    RatFunc& operator+=(const RatFunc& o);
    RatFunc& operator-=(const RatFunc& o);
    RatFunc& operator*=(const RatFunc& o);
    RatFunc& operator/=(const RatFunc& o);
    friend RatFunc operator+(RatFunc a, const RatFunc& b) { return a += b; }
    friend RatFunc operator-(RatFunc a, const RatFunc& b) { return a -= b; }
    friend RatFunc operator*(RatFunc a, const RatFunc& b) { return a *= b; }
    friend RatFunc operator/(RatFunc a, const RatFunc& b) { return a /= b; }
    bool operator==(const RatFunc& o) const { return num_ == o.num_ && den_ == o.den_; }
    bool operator!=(const RatFunc& o) const { return !(*this == o); }

    RatFunc inv() const;
    RatFunc mul_spow(int e) const;
    RatFunc bar() const;  // s -> 1/s
    mpq_class eval(const mpq_class& s) const;  // throws on pole
    std::string str() const;
    size_t hash() const { return num_.hash() * 31 + den_.hash(); }

private:
    void normalize();
    Poly num_, den_;
};

}  // namespace qe
