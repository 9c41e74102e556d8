#include "qeuclid/poly.hpp"

#include <sstream>
#include <stdexcept>

namespace qe {

namespace {
const mpz_class kZero(0);
}

Poly::Poly(long v) {
    if (v != 0) c_.emplace_back(v);
}

Poly::Poly(const mpz_class& v) {
    if (v != 0) c_.push_back(v);
}

Poly Poly::monomial(const mpz_class& c, int deg) {
    Poly p;
    if (c == 0) return p;
    p.c_.assign(deg + 1, mpz_class(0));
    p.c_[deg] = c;
    return p;
}

void Poly::trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

int Poly::valuation() const {
    for (size_t i = 0; i < c_.size(); ++i)
        if (c_[i] != 0) return static_cast<int>(i);
    return 0;
}

const mpz_class& Poly::coeff(int i) const {
    if (i < 0 || i >= static_cast<int>(c_.size())) return kZero;
    return c_[i];
}

bool Poly::is_monomial() const {
    if (c_.empty()) return false;
    for (size_t i = 0; i + 1 < c_.size(); ++i)
        if (c_[i] != 0) return false;
    return true;
}

Poly Poly::operator-() const {
    Poly r = *this;
    for (auto& x : r.c_) x = -x;
    return r;
}

Poly& Poly::operator+=(const Poly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), mpz_class(0));
    for (size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
    trim();
    return *this;
}

Poly& Poly::operator-=(const Poly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), mpz_class(0));
    for (size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
    trim();
    return *this;
}

Poly& Poly::operator*=(const mpz_class& k) {
    if (k == 0) {
        c_.clear();
        return *this;
    }
    for (auto& x : c_) x *= k;
    return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
    Poly r;
    if (a.is_zero() || b.is_zero()) return r;
    r.c_.assign(a.c_.size() + b.c_.size() - 1, mpz_class(0));
    for (size_t i = 0; i < a.c_.size(); ++i) {
        if (a.c_[i] == 0) continue;
        for (size_t j = 0; j < b.c_.size(); ++j) {
            if (b.c_[j] == 0) continue;
            mpz_addmul(r.c_[i + j].get_mpz_t(), a.c_[i].get_mpz_t(), b.c_[j].get_mpz_t());
        }
    }
    r.trim();
    return r;
}

Poly Poly::shifted(int k) const {
    if (is_zero() || k == 0) return *this;
    Poly r;
    if (k > 0) {
        r.c_.assign(k, mpz_class(0));
        r.c_.insert(r.c_.end(), c_.begin(), c_.end());
    } else {
        if (-k > valuation()) throw std::logic_error("Poly::shifted: negative power");
        r.c_.assign(c_.begin() + (-k), c_.end());
    }
    return r;
}

Poly Poly::reversed() const {
    Poly r;
    r.c_.assign(c_.rbegin(), c_.rend());
    r.trim();
    return r;
}

mpz_class Poly::content() const {
    mpz_class g(0);
    for (const auto& x : c_) {
        if (x == 0) continue;
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
        if (g == 1) break;
    }
    return g;
}

Poly Poly::primitive() const {
    if (is_zero()) return *this;
    mpz_class g = content();
    if (lead() < 0) g = -g;
    return divexact(g);
}

Poly Poly::divexact(const mpz_class& k) const {
    Poly r = *this;
    if (k == 1) return r;
    for (auto& x : r.c_) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), k.get_mpz_t());
    return r;
}

Poly Poly::divexact(const Poly& d) const {
    if (d.is_zero()) throw std::domain_error("Poly::divexact: division by zero");
    if (is_zero()) return *this;
    if (d.is_constant()) {
        for (const auto& x : c_)
            if (!mpz_divisible_p(x.get_mpz_t(), d.c_[0].get_mpz_t()))
                throw std::logic_error("Poly::divexact: inexact");
        return divexact(d.c_[0]);
    }
    int dv = d.valuation();
    if (d.is_monomial()) {
        if (valuation() < dv) throw std::logic_error("Poly::divexact: inexact");
        return shifted(-dv).divexact(Poly(d.lead()));
    }
    std::vector<mpz_class> r = c_;
    int dd = d.degree();
    int qd = degree() - dd;
    if (qd < 0) throw std::logic_error("Poly::divexact: inexact");
    Poly q;
    q.c_.assign(qd + 1, mpz_class(0));
    mpz_class t;
    for (int i = qd; i >= 0; --i) {
        mpz_class& top = r[i + dd];
        if (top == 0) continue;
        if (!mpz_divisible_p(top.get_mpz_t(), d.lead().get_mpz_t()))
            throw std::logic_error("Poly::divexact: inexact");
        mpz_divexact(t.get_mpz_t(), top.get_mpz_t(), d.lead().get_mpz_t());
        q.c_[i] = t;
        for (int j = 0; j <= dd; ++j)
            if (d.c_[j] != 0) mpz_submul(r[i + j].get_mpz_t(), t.get_mpz_t(), d.c_[j].get_mpz_t());
    }
    for (const auto& x : r)
        if (x != 0) throw std::logic_error("Poly::divexact: inexact");
    q.trim();
    return q;
}

Poly Poly::prem(const Poly& d) const {
    Poly r = *this;
    int dd = d.degree();
    const mpz_class& ld = d.lead();
    while (!r.is_zero() && r.degree() >= dd) {
        int shift = r.degree() - dd;
        mpz_class lr = r.lead();
        r *= ld;
        for (int j = 0; j <= dd; ++j)
            if (d.c_[j] != 0) mpz_submul(r.c_[j + shift].get_mpz_t(), lr.get_mpz_t(), d.c_[j].get_mpz_t());
        r.trim();
    }
    return r;
}

Poly gcd(const Poly& a, const Poly& b) {
    if (a.is_zero()) return b.is_zero() ? Poly(1) : b.primitive() * (b.content());
    if (b.is_zero()) return a.primitive() * (a.content());
    mpz_class cg;
    mpz_gcd(cg.get_mpz_t(), a.content().get_mpz_t(), b.content().get_mpz_t());
    int v = std::min(a.valuation(), b.valuation());
    Poly x = a.shifted(-a.valuation()).primitive();
    Poly y = b.shifted(-b.valuation()).primitive();
    if (x.degree() < y.degree()) std::swap(x, y);
    while (!y.is_zero() && y.degree() > 0) {
        Poly r = x.prem(y);
        x = std::move(y);
        y = r.is_zero() ? r : r.primitive();
    }
    // y constant nonzero: coprime; y zero: x is the gcd
    Poly g = y.is_zero() ? x : Poly(1);
    return g.shifted(v) * cg;
}

mpq_class Poly::eval(const mpq_class& x) const {
    mpq_class r(0);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
        r *= x;
        r += mpq_class(*it);
    }
    return r;
}

std::string Poly::str(const char* var) const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int i = degree(); i >= 0; --i) {
        const mpz_class& x = c_[i];
        if (x == 0) continue;
        mpz_class ax = abs(x);
        if (x < 0)
            os << (first ? "-" : "-");
        else if (!first)
            os << "+";
        if (i == 0) {
            os << ax.get_str();
        } else {
            if (ax != 1) os << ax.get_str() << "*";
            os << var;
            if (i > 1) os << "^" << i;
        }
        first = false;
    }
    return os.str();
}

size_t Poly::hash() const {
    size_t h = 1469598103934665603ULL;
    for (const auto& x : c_) {
        h ^= static_cast<size_t>(mpz_get_si(x.get_mpz_t())) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return h;
}

// ---------------------------------------------------------------- RatFunc

RatFunc::RatFunc(const mpq_class& v) : num_(v.get_num()), den_(v.get_den()) {}

RatFunc::RatFunc(Poly n, Poly d) : num_(std::move(n)), den_(std::move(d)) {
    if (den_.is_zero()) throw std::domain_error("RatFunc: zero denominator");
    normalize();
}

RatFunc RatFunc::spow(int e) {
    RatFunc r;
    if (e >= 0) {
        r.num_ = Poly::monomial(1, e);
        r.den_ = Poly(1);
    } else {
        r.num_ = Poly(1);
        r.den_ = Poly::monomial(1, -e);
    }
    return r;
}

void RatFunc::normalize() {
    if (num_.is_zero()) {
        den_ = Poly(1);
        return;
    }
    if (!den_.is_constant() || den_.lead() != 1) {
        Poly g = gcd(num_, den_);
        if (!(g.is_constant() && abs(g.lead()) == 1)) {
            num_ = num_.divexact(g);
            den_ = den_.divexact(g);
        }
    }
    if (den_.lead() < 0) {
        num_ = -num_;
        den_ = -den_;
    }
}

bool RatFunc::is_one() const {
    return num_.is_constant() && den_.is_constant() && num_.lead() == 1 && den_.lead() == 1;
}

mpq_class RatFunc::rational() const {
    if (!is_rational()) throw std::logic_error("RatFunc::rational: not constant");
    if (num_.is_zero()) return mpq_class(0);
    mpq_class r(num_.lead(), den_.lead());
    r.canonicalize();
    return r;
}

RatFunc RatFunc::operator-() const {
    RatFunc r = *this;
    r.num_ = -r.num_;
    return r;
}

RatFunc& RatFunc::operator+=(const RatFunc& o) {
    if (o.is_zero()) return *this;
    if (is_zero()) return *this = o;
    if (den_ == o.den_) {
        num_ += o.num_;
        if (!den_.is_constant() || den_.lead() != 1) normalize();
        else if (num_.is_zero()) den_ = Poly(1);
        return *this;
    }
    Poly g = gcd(den_, o.den_);
    Poly d1 = den_.divexact(g), d2 = o.den_.divexact(g);
    Poly n = num_ * d2 + o.num_ * d1;
    if (n.is_zero()) {
        num_ = Poly();
        den_ = Poly(1);
        return *this;
    }
    Poly h = gcd(n, g);
    den_ = (den_.divexact(h)) * d2;
    num_ = n.divexact(h);
    if (den_.lead() < 0) {
        num_ = -num_;
        den_ = -den_;
    }
    return *this;
}

RatFunc& RatFunc::operator-=(const RatFunc& o) { return *this += -o; }

RatFunc& RatFunc::operator*=(const RatFunc& o) {
    if (is_zero() || o.is_zero()) {
        num_ = Poly();
        den_ = Poly(1);
        return *this;
    }
    Poly g1 = gcd(num_, o.den_);
    Poly g2 = gcd(o.num_, den_);
    num_ = num_.divexact(g1) * o.num_.divexact(g2);
    den_ = den_.divexact(g2) * o.den_.divexact(g1);
    if (den_.lead() < 0) {
        num_ = -num_;
        den_ = -den_;
    }
    return *this;
}

RatFunc RatFunc::inv() const {
    if (is_zero()) throw std::domain_error("RatFunc: inverse of zero");
    RatFunc r;
    r.num_ = den_;
    r.den_ = num_;
    if (r.den_.lead() < 0) {
        r.num_ = -r.num_;
        r.den_ = -r.den_;
    }
    return r;
}

RatFunc& RatFunc::operator/=(const RatFunc& o) { return *this *= o.inv(); }

RatFunc RatFunc::mul_spow(int e) const {
    if (e == 0 || is_zero()) return *this;
    RatFunc r = *this;
    if (e > 0) {
        int dv = std::min(e, r.den_.valuation());
        r.den_ = r.den_.shifted(-dv);
        r.num_ = r.num_.shifted(e - dv);
    } else {
        int nv = std::min(-e, r.num_.valuation());
        r.num_ = r.num_.shifted(-nv);
        r.den_ = r.den_.shifted(-e - nv);
    }
    return r;
}

RatFunc RatFunc::bar() const {
    if (is_zero()) return *this;
    // p(1/s) = s^{-deg p} rev(p), with rev taken after stripping the valuation
    int nv = num_.valuation(), dv = den_.valuation();
    Poly nr = num_.shifted(-nv).reversed();
    Poly dr = den_.shifted(-dv).reversed();
    int e = (den_.degree()) - (num_.degree());
    RatFunc r(nr, dr);
    return r.mul_spow(e);
}

mpq_class RatFunc::eval(const mpq_class& s) const {
    mpq_class d = den_.eval(s);
    if (d == 0) throw std::domain_error("RatFunc::eval: pole at s = " + s.get_str());
    mpq_class r = num_.eval(s) / d;
    r.canonicalize();
    return r;
}

std::string RatFunc::str() const {
    if (den_.is_constant() && den_.lead() == 1) {
        if (num_.is_constant() || num_.is_monomial()) return num_.str();
        return "(" + num_.str() + ")";
    }
    std::string n = (num_.is_constant() || num_.is_monomial()) ? num_.str() : "(" + num_.str() + ")";
    std::string d = (den_.is_constant() || (den_.is_monomial() && den_.lead() == 1)) ? den_.str() : "(" + den_.str() + ")";
    return n + "/" + d;
}

}  // namespace qe
