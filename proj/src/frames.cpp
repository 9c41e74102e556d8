#include "qeuclid/frames.hpp"

#include <cstdlib>
#include <stdexcept>

namespace qe {

std::string to_string(Calc c) {
    return c == Calc::unbarred ? "unbarred" : "barred";
}

std::string to_string(RadMode m) {
    switch (m) {
        case RadMode::transcendental: return "transcendental";
        case RadMode::theorem3: return "theorem3";
        case RadMode::star_link: return "star-link";
    }
    return "?";
}

template <class S>
S gamma_product(const Model<S>& m, Calc c, int a) {
    bool bar = c == Calc::barred;
    S h = m.h(), k = m.k();
    if (a == 0) {
        if (!m.odd()) throw std::invalid_argument("gamma_0 exists only for N odd");
        return bar ? m.s(1) * h.inv() : -(m.s(-1) * h.inv());
    }
    if (a == 1) {
        if (!m.odd()) return (k * k).inv();
        return bar ? -(m.q() * (h * h).inv()) : -(m.q(-1) * (h * h).inv());
    }
    S w = m.omega(a) * m.omega(a - 1) * (k * k).inv();
    return bar ? -(m.q() * w) : -(m.q(-1) * w);
}

namespace {

template <class S>
void put_negatives(const Model<S>& m, Calc c, std::map<int, Field<S>>& g) {
    for (int a = 1; a <= m.n(); ++a) g[-a] = Field<S>(gamma_product(m, c, a)) * g[a].inv();
}

}  // namespace

template <class S>
Gammas<S> make_gammas(const Model<S>& m, RadMode mode) {
    const int n = m.n();
    Gammas<S> G;
    G.mode = mode;
    auto rules = std::make_shared<RadicalRules<S>>();
    using F = Field<S>;
    switch (mode) {
        case RadMode::transcendental: {
            rules->nsym = 2 * n;
            for (int a = 1; a <= n; ++a) rules->names.push_back("g" + std::to_string(a));
            for (int a = 1; a <= n; ++a) rules->names.push_back("gb" + std::to_string(a));
            G.rules = rules;
            for (int a = 1; a <= n; ++a) {
                G.g[a] = F::symbol(rules.get(), a - 1);
                G.gb[a] = F::symbol(rules.get(), n + a - 1);
            }
            put_negatives(m, Calc::unbarred, G.g);
            put_negatives(m, Calc::barred, G.gb);
            break;
        }
        case RadMode::theorem3: {
            if (!m.odd()) throw std::invalid_argument("theorem3 mode requires N odd");
            rules->nsym = n;
            rules->squared = true;
            for (int a = 1; a <= n; ++a) {
                rules->names.push_back("g" + std::to_string(a));
                // gamma_a^2 = q^{-1} gamma_a gamma_{-a}
                rules->square.push_back(m.q(-1) * gamma_product(m, Calc::unbarred, a));
            }
            G.rules = rules;
            for (int a = 1; a <= n; ++a) {
                G.g[a] = F::symbol(rules.get(), a - 1);
                G.g[-a] = G.g[a] * F(m.q());
            }
            break;
        }
        case RadMode::star_link: {
            rules->nsym = 2 * n;
            for (int a = 1; a <= n; ++a) rules->names.push_back("g" + std::to_string(a));
            for (int a = 1; a <= n; ++a) rules->names.push_back("gs" + std::to_string(a));
            rules->conj.resize(2 * n);
            for (int a = 0; a < n; ++a) {
                rules->conj[a] = a + n;
                rules->conj[a + n] = a;
            }
            G.rules = rules;
            for (int a = 1; a <= n; ++a) G.g[a] = F::symbol(rules.get(), a - 1);
            put_negatives(m, Calc::unbarred, G.g);
            break;
        }
    }
    if (m.odd()) G.g[0] = F(gamma_product(m, Calc::unbarred, 0));
    if (mode == RadMode::theorem3) {
        for (const auto& [a, v] : G.g) G.gb[a] = v * F(-m.q());
    } else if (mode == RadMode::star_link) {
        for (int a : m.indices()) {
            if (a == 0) G.gb[0] = G.g[0] * F(-m.q());
            else if (!m.odd() && std::abs(a) == 1) G.gb[a] = -G.g[-a].star();
            else if (a > 0) G.gb[a] = -G.g[-a].star();
            else G.gb[a] = G.g[-a].star() * F(-m.q(2));
        }
    } else if (m.odd()) {
        G.gb[0] = F(gamma_product(m, Calc::barred, 0));
    }
    return G;
}

template <class S>
Gammas<S> reference_gammas(const Model<S>& m) {
    Gammas<S> G;
    for (int a = 1; a <= m.n(); ++a) {
        G.g[a] = Field<S>(1);
        G.gb[a] = Field<S>(1);
    }
    put_negatives(m, Calc::unbarred, G.g);
    put_negatives(m, Calc::barred, G.gb);
    if (m.odd()) {
        G.g[0] = Field<S>(gamma_product(m, Calc::unbarred, 0));
        G.gb[0] = Field<S>(gamma_product(m, Calc::barred, 0));
    }
    return G;
}

template <class S>
Elem<S> build_lambda(const Algebra<S>& A, Calc c, int a, const Field<S>& gamma) {
    const bool bar = c == Calc::barred;
    const int lam = bar ? -1 : 1;
    Elem<S> w;
    if (A.odd() && a == 0) {
        w = A.mul(A.L(lam), A.x(0, -1));
    } else if (!A.odd() && std::abs(a) == 1) {
        // (x^{-1})^{-1} = 2 x^1 r_1^{-2}
        Elem<S> xinv = a == 1 ? A.x(1, -1) : A.mul(A.x(1), A.r(1, -2)) * Field<S>(S(2));
        w = A.mul(A.mul(A.L(lam), xinv), A.K(bar ? a : -a));
    } else {
        int m = std::abs(a);
        w = A.mul(A.mul(A.mul(A.L(lam), A.r(m, -1)), A.r(m - 1, -1)), A.x(-a));
    }
    return w * gamma;
}

template <class S>
Frame<S> build_frame(const Algebra<S>& A, Calc c, const std::map<int, Field<S>>& gamma) {
    const auto& m = A.model();
    Frame<S> F;
    F.calc = c;
    for (int a : m.indices()) F.lambda[a] = build_lambda(A, c, a, gamma.at(a));
    for (int i : m.indices())
        for (int a : m.indices()) {
            Elem<S> v = A.comm(F.lambda[a], A.x(i));
            if (!v.is_zero()) F.e[{i, a}] = std::move(v);
        }
    // theta^a_l = Lambda^{-+2} g_{a,-a} e^{-l}_{-a} g_{-l,l}
    Elem<S> L2 = A.L(c == Calc::barred ? 2 : -2);
    for (int a : m.indices())
        for (int l : m.indices()) {
            const Elem<S>& e = F.E(-l, -a);
            if (e.is_zero()) continue;
            F.theta[{a, l}] = A.mul(L2, e) * Field<S>(m.g(a, -a) * m.g(-l, l));
        }
    return F;
}

#define QE_INST(S)                                                                  \
    template S gamma_product(const Model<S>&, Calc, int);                           \
    template Gammas<S> make_gammas(const Model<S>&, RadMode);                       \
    template Gammas<S> reference_gammas(const Model<S>&);                           \
    template Elem<S> build_lambda(const Algebra<S>&, Calc, int, const Field<S>&);   \
    template Frame<S> build_frame(const Algebra<S>&, Calc, const std::map<int, Field<S>>&);

QE_INST(RatFunc)
QE_INST(QNum)

}  // namespace qe
