#include "qeuclid/calculus.hpp"

#include <stdexcept>

namespace qe {

// ---- OneForm ----

template <class S>
const Elem<S>& OneForm<S>::at(int i) const {
    static const E zero;
    auto it = c_.find(i);
    return it == c_.end() ? zero : it->second;
}

template <class S>
void OneForm<S>::add(int i, const E& v) {
    if (v.is_zero()) return;
    auto [it, inserted] = c_.emplace(i, v);
    if (inserted) return;
    it->second += v;
    if (it->second.is_zero()) c_.erase(it);
}

template <class S>
void OneForm<S>::check(const OneForm& o) const {
    if (o.calc_ != calc_ && !o.c_.empty() && !c_.empty()) throw std::invalid_argument("mixing the two calculi");
}

template <class S>
OneForm<S>& OneForm<S>::operator+=(const OneForm& o) {
    check(o);
    if (c_.empty()) calc_ = o.calc_;
    for (const auto& [i, v] : o.c_) add(i, v);
    return *this;
}

template <class S>
OneForm<S>& OneForm<S>::operator-=(const OneForm& o) {
    check(o);
    if (c_.empty()) calc_ = o.calc_;
    for (const auto& [i, v] : o.c_) add(i, -v);
    return *this;
}

template <class S>
OneForm<S>& OneForm<S>::operator*=(const Field<S>& f) {
    for (auto it = c_.begin(); it != c_.end();) {
        it->second *= f;
        it = it->second.is_zero() ? c_.erase(it) : std::next(it);
    }
    return *this;
}

// ---- TwoForm ----

template <class S>
const Elem<S>& TwoForm<S>::at(int i, int j) const {
    static const E zero;
    auto it = c_.find({i, j});
    return it == c_.end() ? zero : it->second;
}

template <class S>
void TwoForm<S>::add(int i, int j, const E& v) {
    if (v.is_zero()) return;
    auto [it, inserted] = c_.emplace(Key{i, j}, v);
    if (inserted) return;
    it->second += v;
    if (it->second.is_zero()) c_.erase(it);
}

template <class S>
TwoForm<S>& TwoForm<S>::operator+=(const TwoForm& o) {
    if (c_.empty()) calc_ = o.calc_;
    else if (!o.c_.empty() && o.calc_ != calc_) throw std::invalid_argument("mixing the two calculi");
    for (const auto& [k, v] : o.c_) add(k.first, k.second, v);
    return *this;
}

template <class S>
TwoForm<S>& TwoForm<S>::operator-=(const TwoForm& o) {
    if (c_.empty()) calc_ = o.calc_;
    else if (!o.c_.empty() && o.calc_ != calc_) throw std::invalid_argument("mixing the two calculi");
    for (const auto& [k, v] : o.c_) add(k.first, k.second, -v);
    return *this;
}

// ---- Calculus ----

template <class S>
Calculus<S>::Calculus(const Algebra<S>& A, const MatrixData<S>& d, Calc c) : A_(A), d_(d), c_(c), theta_(c) {
    const auto& m = A.model();
    const int n = m.n();
    S pref = c == Calc::unbarred ? m.omega(n) * m.s(m.N()) * m.k().inv()
                                 : -(m.omega(n) * m.s(-m.N()) * m.k().inv());
    E rn = A.r(n, -2);
    for (int i : m.indices()) theta_.add(-i, A.mul(rn, A.x(i)) * Field<S>(pref * m.g(i, -i)));
}

template <class S>
OneForm<S> Calculus<S>::xi(int i) const {
    if (!A_.model().valid(i)) throw std::invalid_argument("xi index out of range: " + std::to_string(i));
    Form w(c_);
    w.add(i, A_.one());
    return w;
}

template <class S>
OneForm<S> Calculus<S>::lmul(const E& f, const Form& w) const {
    Form r(w.calc());
    for (const auto& [i, v] : w.coeffs()) r.add(i, A_.mul(f, v));
    return r;
}

template <class S>
const Frame<S>& Calculus<S>::reference_frame() const {
    std::call_once(ref_once_, [&] {
        auto G = reference_gammas(A_.model());
        ref_ = std::make_shared<Frame<S>>(build_frame(A_, c_, G.of(c_)));
    });
    return *ref_;
}

template <class S>
OneForm<S> Calculus<S>::frame_transport(int l, const E& f) const {
    // xi^l f = e^l_a f theta^a, with theta^a = theta^a_m xi^m commuting with f
    const Frame<S>& F = reference_frame();
    const auto& I = A_.model().indices();
    Form r(c_);
    for (int a : I) {
        const E& e = F.E(l, a);
        if (e.is_zero()) continue;
        E ef = A_.mul(e, f);
        for (int m : I) {
            const E& t = F.Th(a, m);
            if (!t.is_zero()) r.add(m, A_.mul(ef, t));
        }
    }
    return r;
}

template <class S>
const OneForm<S>& Calculus<S>::xi_gen(int l, int g, int e) const {
    auto key = std::make_tuple(l, g, e);
    {
        std::shared_lock lk(mu_);
        auto it = gen_cache_.find(key);
        if (it != gen_cache_.end()) return it->second;
    }
    const auto& m = A_.model();
    Form r(c_);
    if (g == A_.slot_L()) {
        r.add(l, A_.L(e));
    } else if (g == A_.slot_K()) {
        int sgn = l == 1 ? 1 : (l == -1 ? -1 : 0);
        r.add(l, A_.K(e) * Field<S>(m.q(-e * sgn)));
    } else if (A_.is_x(g) && e > 0) {
        int i = A_.x_index(g);
        r.add(l, A_.one());
        for (int t = 0; t < e; ++t) {
            Form next(c_);
            for (const auto& [k, v] : r.coeffs()) {
                // unbarred: xi^k x^i = q^{-1} Rinv^{ki}_{ab} x^a xi^b; barred: q Rhat
                const auto& row = c_ == Calc::unbarred ? d_.rinv.row(k, i) : d_.rhat.row(k, i);
                S f = c_ == Calc::unbarred ? m.q(-1) : m.q();
                for (const auto& en : row) next.add(en.b, A_.mul(v, A_.x(en.a)) * Field<S>(f * en.v));
            }
            r = std::move(next);
        }
    } else {
        r = frame_transport(l, A_.gen(g, e));
    }
    std::unique_lock lk(mu_);
    return gen_cache_.emplace(key, std::move(r)).first->second;
}

template <class S>
OneForm<S> Calculus<S>::xi_mono(int l, const Mono& mono) const {
    auto key = std::make_pair(l, mono);
    {
        std::shared_lock lk(mu_);
        auto it = mono_cache_.find(key);
        if (it != mono_cache_.end()) return it->second;
    }
    Form cur(c_);
    cur.add(l, A_.one());
    for (int g = 0; g < A_.num_slots(); ++g) {
        if (!mono.e[g]) continue;
        Form next(c_);
        for (const auto& [k, v] : cur.coeffs()) next += lmul(v, xi_gen(k, g, mono.e[g]));
        cur = std::move(next);
    }
    std::unique_lock lk(mu_);
    mono_cache_.emplace(key, cur);
    return cur;
}

template <class S>
OneForm<S> Calculus<S>::rmul(const Form& w, const E& f) const {
    Form r(w.calc());
    for (const auto& [l, v] : w.coeffs())
        for (const auto& [mono, c] : f.terms()) r += lmul(v, xi_mono(l, mono)) * c;
    return r;
}

template <class S>
TwoForm<S> Calculus<S>::project(const std::map<std::pair<int, int>, E>& raw) const {
    TwoForm<S> r(c_);
    for (const auto& [ij, v] : raw)
        for (const auto& en : d_.proj.a.row(ij.first, ij.second)) r.add(en.a, en.b, v * Field<S>(en.v));
    return r;
}

template <class S>
TwoForm<S> Calculus<S>::wedge(const Form& a, const Form& b) const {
    if (a.calc() != c_ || b.calc() != c_) {
        if (!a.is_zero() && !b.is_zero()) throw std::invalid_argument("wedge of forms from another calculus");
    }
    std::map<std::pair<int, int>, E> raw;
    for (const auto& [i, ai] : a.coeffs())
        for (const auto& [j, bj] : b.coeffs()) {
            Form moved = rmul(xi(i), bj);
            for (const auto& [k, v] : moved.coeffs()) raw[{k, j}] += A_.mul(ai, v);
        }
    return project(raw);
}

template <class S>
TwoForm<S> Calculus<S>::lmul(const E& f, const TwoForm<S>& w) const {
    TwoForm<S> r(w.calc());
    for (const auto& [k, v] : w.coeffs()) r.add(k.first, k.second, A_.mul(f, v));
    return r;
}

namespace {

std::string coef_prefix(const std::string& c) {
    if (c == "1") return "";
    if (c == "-1") return "-";
    if (c.find(" + ") != std::string::npos || c.find(" - ") != std::string::npos) return "(" + c + ")*";
    return c + "*";
}

void join_term(std::string& r, const std::string& t) {
    if (r.empty()) r = t;
    else if (t[0] == '-') r += " - " + t.substr(1);
    else r += " + " + t;
}

}  // namespace

template <class S>
std::string Calculus<S>::str(const Form& w) const {
    if (w.is_zero()) return "0";
    std::string name = w.calc() == Calc::unbarred ? "xi{" : "bxi{";
    std::string r;
    for (const auto& [i, v] : w.coeffs()) join_term(r, coef_prefix(A_.str(v)) + name + std::to_string(i) + "}");
    return r;
}

template <class S>
std::string Calculus<S>::str(const TwoForm<S>& w) const {
    if (w.is_zero()) return "0";
    std::string name = w.calc() == Calc::unbarred ? "xi{" : "bxi{";
    std::string r;
    for (const auto& [k, v] : w.coeffs())
        join_term(r, coef_prefix(A_.str(v)) + name + std::to_string(k.first) + "}*" + name +
                         std::to_string(k.second) + "}");
    return r;
}

template <class S>
OneForm<S> star_form(const Calculus<S>& from, const Calculus<S>& to, const OneForm<S>& w) {
    if (from.calc() == to.calc()) throw std::invalid_argument("star maps between the two calculi");
    const Algebra<S>& A = from.algebra();
    const auto& m = A.model();
    OneForm<S> r(to.calc());
    for (const auto& [i, f] : w.coeffs()) {
        Elem<S> fs = A.star(f);
        // (f xi^i)^* = xibar^{-i} g_{-i,i} f^*
        r += to.rmul(to.xi(-i), fs) * Field<S>(m.g(-i, i));
    }
    return r;
}

template class OneForm<RatFunc>;
template class OneForm<QNum>;
template class TwoForm<RatFunc>;
template class TwoForm<QNum>;
template class Calculus<RatFunc>;
template class Calculus<QNum>;
template OneForm<RatFunc> star_form(const Calculus<RatFunc>&, const Calculus<RatFunc>&, const OneForm<RatFunc>&);
template OneForm<QNum> star_form(const Calculus<QNum>&, const Calculus<QNum>&, const OneForm<QNum>&);

}  // namespace qe
