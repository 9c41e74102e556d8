#include "qeuclid/algebra.hpp"

#include <cstdlib>
#include <mutex>
#include <stdexcept>

namespace qe {

size_t MonoHash::operator()(const Mono& m) const {
    uint64_t h = 1469598103934665603ull;
    for (int8_t v : m.e) {
        h ^= static_cast<uint8_t>(v);
        h *= 1099511628211ull;
    }
    return h;
}

size_t MonoPairHash::operator()(const std::pair<Mono, Mono>& p) const {
    MonoHash mh;
    return mh(p.first) * 31 + mh(p.second);
}

// ---- Elem ----

template <class S>
Elem<S>::Elem(const Coef& c) {
    if (!c.is_zero()) t_.emplace(Mono{}, c);
}

template <class S>
Elem<S>::Elem(const Mono& m, const Coef& c) {
    if (!c.is_zero()) t_.emplace(m, c);
}

template <class S>
typename Elem<S>::Coef Elem<S>::coeff(const Mono& m) const {
    auto it = t_.find(m);
    return it == t_.end() ? Coef() : it->second;
}

template <class S>
typename Elem<S>::Coef Elem<S>::scalar() const {
    if (!is_scalar()) throw std::logic_error("element is not a scalar");
    return t_.empty() ? Coef() : t_.begin()->second;
}

template <class S>
void Elem<S>::add_term(const Mono& m, const Coef& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = t_.emplace(m, c);
    if (inserted) return;
    it->second += c;
    if (it->second.is_zero()) t_.erase(it);
}

template <class S>
Elem<S>& Elem<S>::operator+=(const Elem& o) {
    for (const auto& [m, c] : o.t_) add_term(m, c);
    return *this;
}

template <class S>
Elem<S>& Elem<S>::operator-=(const Elem& o) {
    for (const auto& [m, c] : o.t_) add_term(m, -c);
    return *this;
}

template <class S>
Elem<S>& Elem<S>::operator*=(const Coef& c) {
    if (c.is_zero()) {
        t_.clear();
        return *this;
    }
    for (auto it = t_.begin(); it != t_.end();) {
        it->second *= c;
        it = it->second.is_zero() ? t_.erase(it) : std::next(it);
    }
    return *this;
}

template <class S>
Elem<S> Elem<S>::operator-() const {
    Elem r = *this;
    for (auto& [m, c] : r.t_) c = -c;
    return r;
}

template <class S>
bool Elem<S>::operator==(const Elem& o) const {
    if (t_.size() != o.t_.size()) return false;
    for (auto a = t_.begin(), b = o.t_.begin(); a != t_.end(); ++a, ++b)
        if (a->first != b->first || a->second != b->second) return false;
    return true;
}

// ---- Algebra ----

namespace {

int8_t checked_exp(int v) {
    if (v > 127 || v < -127) throw std::overflow_error("generator exponent out of range");
    return static_cast<int8_t>(v);
}

}  // namespace

template <class S>
Algebra<S>::Algebra(Model<S> m) : m_(std::move(m)) {
    if (num_slots() > kMaxGen) throw std::invalid_argument("N too large for the monomial layout");
    const int n = m_.n();
    phi_.assign(n + 1, E());
    psi_.assign(n + 1, E());
    for (int i = 1; i <= n; ++i) {
        S ci = i == 1 ? (odd() ? m_.h() : S(0)) : m_.k() * m_.omega(i - 1).inv();
        if (!odd() && i == 1) {
            phi_[1] = r2(1) * Coef(m_.rational(mpq_class(1, 2)));
        } else {
            S a = m_.g(i, -i), b = m_.g(-i, i);
            S den = (a + b).inv();
            phi_[i] = r2(i) * Coef(den) + r2(i - 1) * Coef(-(S(1) + a * ci) * den);
        }
        psi_[i] = phi_[i];
        if (!ci.is_zero()) psi_[i] += r2(i - 1) * Coef(ci);
    }
}

template <class S>
bool Algebra<S>::slot_used(int slot) const {
    if (slot < 0 || slot >= num_slots()) return false;
    if (slot == slot_K()) return !odd();
    if (is_x(slot)) {
        int i = x_index(slot);
        if (i == 0) return odd();
        if (i == -1 && !odd()) return false;
    }
    return true;
}

template <class S>
bool Algebra<S>::invertible(int slot) const {
    if (!is_x(slot)) return true;
    int i = x_index(slot);
    return odd() ? i == 0 : i == 1;
}

template <class S>
std::string Algebra<S>::slot_name(int slot) const {
    if (slot == slot_L()) return "L";
    if (slot == slot_K()) return "Kap";
    if (is_r(slot)) return "r{" + std::to_string(r_index(slot)) + "}";
    return "x{" + std::to_string(x_index(slot)) + "}";
}

template <class S>
Elem<S> Algebra<S>::gen(int slot, int e) const {
    if (e == 0) return one();
    if (slot == slot_K() && odd()) throw std::invalid_argument("Kap exists only for N even");
    if (is_x(slot)) return x(x_index(slot), e);
    Mono m;
    m.e[slot] = checked_exp(e);
    return E(m, Coef(1));
}

template <class S>
Elem<S> Algebra<S>::x(int i, int e) const {
    if (!m_.valid(i)) throw std::invalid_argument("x index out of range: " + std::to_string(i));
    if (e == 0) return one();
    int slot = slot_x(i);
    if (e < 0 && !invertible(slot)) throw std::domain_error("x{" + std::to_string(i) + "} is not invertible");
    return mul_gen(Mono{}, slot, e);
}

template <class S>
Elem<S> Algebra<S>::r(int j, int e) const {
    if (j == 0) {
        if (!odd()) throw std::invalid_argument("r{0} exists only for N odd");
        return x(0, e);
    }
    if (j < 0 || j > n()) throw std::invalid_argument("r index out of range: " + std::to_string(j));
    return gen(slot_r(j), e);
}

template <class S>
Elem<S> Algebra<S>::K(int e) const {
    return gen(slot_K(), e);
}

template <class S>
Elem<S> Algebra<S>::r2(int j) const {
    return r(j, 2);
}

template <class S>
int Algebra<S>::chi(int later, int earlier) const {
    if (earlier == slot_L()) return later == slot_K() ? 0 : 1;
    if (earlier == slot_K()) {
        if (is_x(later)) {
            int i = x_index(later);
            if (i == 1) return -1;
            if (i == -1) return 1;
        }
        return 0;
    }
    if (is_r(earlier)) {
        if (is_r(later)) return 0;
        int j = r_index(earlier), m = x_index(later);
        if (std::abs(m) <= j) return 0;
        return m < -j ? 1 : -1;
    }
    if (x_index(later) == -x_index(earlier)) throw std::logic_error("x^i and x^-i do not q-commute");
    return -1;
}

template <class S>
Elem<S> Algebra<S>::mul_gen(const Mono& m, int g, int e) const {
    if (e == 0) return E(m, Coef(1));
    const int ns = num_slots();
    auto q_commute = [&](int power) {
        int c = 0;
        for (int h = g + 1; h < ns; ++h)
            if (m.e[h]) c += chi(h, g) * m.e[h];
        Mono r = m;
        r.e[g] = checked_exp(r.e[g] + power);
        return E(r, Coef(sp(2 * c * power)));
    };
    if (!is_x(g) || invertible(g)) return q_commute(e);
    if (e < 0) throw std::domain_error(slot_name(g) + " is not invertible");
    int i = x_index(g);
    if (!odd() && i == -1) {
        // x^{-1} = r_1^2 (x^1)^{-1} / 2
        E cur(m, Coef(1));
        for (int t = 0; t < e; ++t) {
            cur = mul_elem_gen(cur, slot_r(1), 2);
            cur = mul_elem_gen(cur, slot_x(1), -1);
        }
        S half = m_.rational(mpq_class(1, 2));
        S f(1);
        for (int t = 0; t < e; ++t) f *= half;
        return cur * Coef(f);
    }
    if (e > 1) {
        E cur(m, Coef(1));
        for (int t = 0; t < e; ++t) cur = mul_elem_gen(cur, g, 1);
        return cur;
    }
    int a = std::abs(i);
    int partner = slot_x(-i);
    if (m.e[partner] == 0) return q_commute(1);
    Mono P, M, Q;
    int c = 0;
    if (i < 0) {
        // ... x^a ... * x^{-a}: move x^{-a} left past the tail, then x^a x^{-a} = psi_a
        for (int h = 0; h < ns; ++h) {
            if (h <= partner) P.e[h] = m.e[h];
            else {
                Q.e[h] = m.e[h];
                if (m.e[h]) c += chi(h, g) * m.e[h];
            }
        }
        P.e[partner] -= 1;
        E res = mul(E(P, Coef(1)), psi_[a]);
        res = mul_elem_mono(res, Q);
        return res * Coef(sp(2 * c));
    }
    // ... x^{-a} M Q * x^a: x^a passes Q, then M, then x^{-a} x^a = phi_a
    for (int h = 0; h < ns; ++h) {
        if (h <= partner) P.e[h] = m.e[h];
        else if (h < g) {
            M.e[h] = m.e[h];
            if (m.e[h]) c -= chi(g, h) * m.e[h];
        } else {
            Q.e[h] = m.e[h];
            if (m.e[h]) c += chi(h, g) * m.e[h];
        }
    }
    P.e[partner] -= 1;
    E res = mul(E(P, Coef(1)), phi_[a]);
    res = mul_elem_mono(res, M);
    res = mul_elem_mono(res, Q);
    return res * Coef(sp(2 * c));
}

template <class S>
Elem<S> Algebra<S>::mul_elem_gen(const E& a, int g, int e) const {
    E out;
    for (const auto& [m, c] : a.terms()) {
        Mono b;
        b.e[g] = checked_exp(e);
        out += mul_mono(m, b) * c;
    }
    return out;
}

template <class S>
Elem<S> Algebra<S>::mul_elem_mono(const E& a, const Mono& b) const {
    if (b.is_one()) return a;
    E out;
    for (const auto& [m, c] : a.terms()) out += mul_mono(m, b) * c;
    return out;
}

template <class S>
Elem<S> Algebra<S>::mul_mono(const Mono& a, const Mono& b) const {
    if (b.is_one()) return E(a, Coef(1));
    const auto key = std::make_pair(a, b);
    {
        std::shared_lock lk(mu_);
        auto it = cache_.find(key);
        if (it != cache_.end()) return it->second;
    }
    E cur;
    bool first = true;
    for (int g = 0; g < num_slots(); ++g) {
        if (!b.e[g]) continue;
        if (first) {
            cur = mul_gen(a, g, b.e[g]);
            first = false;
            continue;
        }
        Mono single;
        single.e[g] = b.e[g];
        E next;
        for (const auto& [m, c] : cur.terms()) next += mul_mono(m, single) * c;
        cur = std::move(next);
    }
    std::unique_lock lk(mu_);
    cache_.emplace(key, cur);
    return cur;
}

template <class S>
Elem<S> Algebra<S>::mul(const E& a, const E& b) const {
    E out;
    for (const auto& [ma, ca] : a.terms())
        for (const auto& [mb, cb] : b.terms()) out += mul_mono(ma, mb) * (ca * cb);
    return out;
}

template <class S>
Elem<S> Algebra<S>::pow(const E& a, int e) const {
    if (e < 0) throw std::domain_error("negative power of an element");
    E r = one();
    for (int t = 0; t < e; ++t) r = mul(r, a);
    return r;
}

template <class S>
int Algebra<S>::mono_grading(const Mono& m, int i) const {
    if (i < 1 || i > n()) throw std::invalid_argument("grading index out of range");
    int d = m.e[slot_x(i)];
    if (odd() || i != 1) d -= m.e[slot_x(-i)];
    return d;
}

template <class S>
std::optional<int> Algebra<S>::grading(const E& a, int i) const {
    std::optional<int> d;
    for (const auto& [m, c] : a.terms()) {
        int v = mono_grading(m, i);
        if (d && *d != v) return std::nullopt;
        d = v;
    }
    return d ? d : std::optional<int>(0);
}

template <class S>
Elem<S> Algebra<S>::star_gen(int slot, int e) const {
    if (slot == slot_L()) return L(-e);
    if (!is_x(slot)) return gen(slot, e);
    int i = x_index(slot);
    if (e > 0) return pow(x(-i) * Coef(m_.g(-i, i)), e);
    if (i == 0) return x(0, e);
    // ((x^1)^{-1})^* for N even
    E inv = mul(x(1), r(1, -2)) * Coef(S(2) * m_.g(-1, 1).inv());
    return pow(inv, -e);
}

template <class S>
Elem<S> Algebra<S>::star(const E& a) const {
    E out;
    for (const auto& [m, c] : a.terms()) {
        E r(c.star());
        for (int g = 0; g < num_slots(); ++g)
            if (m.e[g]) r = mul(star_gen(g, m.e[g]), r);
        out += r;
    }
    return out;
}

template <class S>
Elem<S> Algebra<S>::embed_into(const Algebra& big, const E& a) const {
    if (big.odd() != odd() || big.n() < n()) throw std::invalid_argument("embedding needs N' >= N of the same parity");
    E out;
    for (const auto& [m, c] : a.terms()) {
        Mono b;
        for (int g = 0; g < num_slots(); ++g) {
            if (!m.e[g]) continue;
            int t = g;
            if (is_r(g)) t = big.slot_r(r_index(g));
            else if (is_x(g)) t = big.slot_x(x_index(g));
            b.e[t] = m.e[g];
        }
        out.add_term(b, c);
    }
    return out;
}

template <class S>
std::string Algebra<S>::mono_str(const Mono& m) const {
    std::string r;
    for (int g = 0; g < num_slots(); ++g) {
        if (!m.e[g]) continue;
        if (!r.empty()) r += "*";
        r += slot_name(g);
        if (m.e[g] != 1) r += "^" + std::to_string(m.e[g]);
    }
    return r;
}

template <class S>
std::string Algebra<S>::str(const E& a) const {
    if (a.is_zero()) return "0";
    std::string r;
    for (const auto& [m, c] : a.terms()) {
        std::string cs = c.str();
        bool compound = cs.find_first_of("+-", 1) != std::string::npos || cs.find('/') != std::string::npos;
        if (compound && cs.front() != '(') cs = "(" + cs + ")";
        std::string ms = mono_str(m);
        std::string term;
        if (ms.empty()) term = a.size() == 1 ? c.str() : cs;
        else if (cs == "1") term = ms;
        else if (cs == "-1") term = "-" + ms;
        else term = cs + "*" + ms;
        if (!r.empty()) r += term[0] == '-' ? " - " + term.substr(1) : " + " + term;
        else r = term;
    }
    return r;
}

template <class S>
size_t Algebra<S>::cache_size() const {
    std::shared_lock lk(mu_);
    return cache_.size();
}

template class Elem<RatFunc>;
template class Elem<QNum>;
template class Algebra<RatFunc>;
template class Algebra<QNum>;

}  // namespace qe
